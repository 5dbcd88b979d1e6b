"""Walk through the figure-eight knot, the closure of T applied to τ_{3/2}.

Prints the algebraic and geometric quiver data, the transposition that
relates the two matrices, a few colored invariants, and the colored Jones
data.  Run with ``python3 demos/figure_eight.py``.
"""

from ratlq.evaluator import cross_verify, jones_polynomial, quiver_coefficient, series_equivalent
from ratlq.quiver import apply_transposition, delta_check, jones_data, quiver, transposition_legal
from ratlq.skein import homfly


def show(title, data):
    print(title)
    print("  S =", data.S)
    print("  A =", data.A)
    for row in data.Q:
        print("   ", " ".join(f"{x:3d}" for x in row))


def main():
    # the algebraic route lists the last two indices in the opposite order
    alg = quiver("5/2", corrected=False).permuted((0, 1, 2, 4, 3))
    geo = quiver("5/2", "geometric", corrected=False)
    show("algebraic route", alg)
    show("geometric route", geo)

    pair = ((0, 4), (1, 3))
    print("swap Q_15 with Q_24 legal:", transposition_legal(alg, *pair))
    print("swap turns one matrix into the other:", apply_transposition(alg, *pair).Q == geo.Q)
    print("same series up to color 4:", series_equivalent(alg, geo, 4))

    print("correction terms:", alg.mu, " grading constant:", delta_check(quiver("5/2")))
    for j in range(3):
        print(f"color {j} skein value:", homfly("5/2", j))
    print("color 1 from the corrected quiver:", quiver_coefficient(quiver("5/2"), 1))
    print("framing fits:", cross_verify("5/2", 3)["framing"])

    H, QJ = jones_data(alg)
    print("Jones H =", H)
    print("colored Jones, color 1:", jones_polynomial("5/2", 1))


if __name__ == "__main__":
    main()
