"""Torus knots and links of the form (2n+1)/1 and 2n/1.

For each n the two routes give identical matrices, and the grading
constant of the knot is -2n.
"""

from ratlq.evaluator import quiver_coefficient
from ratlq.quiver import conjectural_poincare_vector, delta_check, quiver
from ratlq.skein import homfly


def main():
    for n in range(1, 6):
        knot = (2 * n + 1, 1)
        alg, geo = quiver(knot), quiver(knot, "geometric")
        same = (alg.S, alg.A, alg.Q) == (geo.S, geo.A, geo.Q)
        print(f"K_{2 * n + 1}/1  size {alg.size}  routes agree {same}  delta {delta_check(alg)}")
        print("   t =", conjectural_poincare_vector(alg))
    for n in range(1, 4):
        link = (2 * n, 1)
        alg = quiver(link, corrected=False)
        geo = quiver(link, "geometric", corrected=False)
        same = (alg.S, alg.A, alg.Q) == (geo.S, geo.A, geo.Q)
        print(f"L_{2 * n}/1  size {alg.size}  routes agree {same}")
        print("   color 1 from the quiver:", quiver_coefficient(alg, 1))
        print("   color 1 from the skein: ", homfly(link, 1))


if __name__ == "__main__":
    main()
