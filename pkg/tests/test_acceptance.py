"""Acceptance suite: one PASS/FAIL line per criterion, with runtime and tolerance.

Every comparison is exact (integer matrices, Laurent polynomials, ratios
compared by cross-multiplication), so the tolerance column always reads 0.
"""

import time

from ratlq.algebra import (
    compositions,
    mono,
    qbinomial,
    qmultinomial,
    qmultinomial_by_division,
    split_index_identity_check,
)
from ratlq.evaluator import (
    cross_verify,
    fit_framing,
    framing_monomial,
    jones_from_homfly,
    jones_polynomial,
    series_equivalent,
)
from ratlq.errors import RatlqError
from ratlq.geometry import build_diagram
from ratlq.quiver import (
    close_knot,
    compress,
    compressible_tangle,
    delta_check,
    jones_data,
    quiver,
)
from ratlq.skein import homfly
from ratlq.tangles import (
    admissible_fractions,
    continued_fraction,
    correction_terms,
    is_knot,
    signature,
    twist_type_counts,
)
from tests import reference as ref


def report(capsys, number, title, checks, elapsed, limit):
    failed = [name for name, ok in checks if not ok]
    within = elapsed < limit
    verdict = "PASS" if not failed and within else "FAIL"
    line = f"criterion {number} {verdict}: {title} [{elapsed:.2f} s, limit {limit} s, tolerance 0 (exact)]"
    if failed:
        line += " failed: " + ", ".join(failed)
    if not within:
        line += " over time limit"
    with capsys.disabled():
        print("\n" + line)
    assert verdict == "PASS", line


def forms(d):
    return (d.S, d.A, d.Q)


def test_criterion_1_tangle_compression(capsys):
    start = time.perf_counter()
    data, pairing = compressible_tangle((6, 1))
    c = compress(data, pairing=pairing)
    checks = [
        ("K", c.K == ref.T61_K),
        ("S", c.S == ref.T61_S),
        ("A", c.A == ref.T61_A),
        ("Q", c.Q == ref.T61_Q),
    ]
    report(capsys, 1, "tau_6/1 compressed data", checks, time.perf_counter() - start, 1)


def test_criterion_2_torus_knot(capsys):
    start = time.perf_counter()
    data, pairing = compressible_tangle((6, 1))
    closed = close_knot(compress(data, pairing=pairing))
    mu = correction_terms(continued_fraction((6, 1)))
    alg, geo = quiver("7/1"), quiver("7/1", "geometric")
    golden = (ref.K71_S, ref.K71_A, ref.K71_Q)
    checks = [
        ("mu", mu == (-6, 0, 0) and alg.mu == mu),
        ("close_knot", tuple(s + mu[0] for s in closed.S) == ref.K71_S),
        ("algebraic", forms(alg) == golden),
        ("geometric", forms(geo) == golden),
    ]
    for n in range(1, 7):
        f = (2 * n + 1, 1)
        checks.append((f"torus n={n}", forms(quiver(f)) == forms(quiver(f, "geometric"))))
    report(capsys, 2, "K_7/1 golden and torus equality n <= 6", checks, time.perf_counter() - start, 5)


def test_criterion_3_figure_eight(capsys):
    start = time.perf_counter()
    alg = quiver("5/2", corrected=False)
    geo = quiver("5/2", "geometric", corrected=False)
    # the printed S|A table matches the algebraic order; the printed Q lists
    # its last two indices the other way round
    printed = alg.permuted((0, 1, 2, 4, 3))
    checks = [
        ("algebraic table S|A", (alg.S, alg.A) == (ref.K52_TABLE_S, ref.K52_TABLE_A)),
        ("algebraic Q", printed.Q == ref.Q52 and (printed.S, printed.A) == (ref.K52_S, ref.K52_A)),
        ("geometric Q^K", geo.Q == ref.Q52K and (geo.S, geo.A) == (ref.K52_S, ref.K52_A)),
        ("mu", alg.mu == ref.K52_MU and geo.mu == ref.K52_MU),
        ("series J=4", series_equivalent(printed, geo, 4)),
    ]
    report(capsys, 3, "K_5/2 goldens and equivalence", checks, time.perf_counter() - start, 5)


def test_criterion_4_links(capsys):
    start = time.perf_counter()
    golden = (ref.L81_S, ref.L81_A, ref.L81_Q)
    l83_geo = quiver("8/3", "geometric", corrected=False)
    l83_alg = quiver("8/3", corrected=False)
    key = lambda d, i: (d.S[i], d.A[i], d.Q[i][i])
    pool, order = list(range(l83_alg.size)), []
    for i in range(l83_geo.size):
        k = next((k for k in pool if key(l83_alg, k) == key(l83_geo, i)), None)
        if k is None:
            break
        pool.remove(k)
        order.append(k)
    checks = [
        ("L_8/1 algebraic", forms(quiver("8/1", corrected=False)) == golden),
        ("L_8/1 geometric", forms(quiver("8/1", "geometric", corrected=False)) == golden),
        ("L_8/3 geometric Q", l83_geo.Q == ref.L83_Q),
        ("L_8/3 mu", l83_geo.mu == ref.L83_MU),
        ("L_8/3 series J=2", len(order) == l83_geo.size and series_equivalent(l83_geo, l83_alg, 2, order=order)),
    ]
    report(capsys, 4, "link goldens L_8/1 and L_8/3", checks, time.perf_counter() - start, 30)


def test_criterion_5_cross_route_sweep(capsys):
    start = time.perf_counter()
    checks = []
    for f in admissible_fractions(10):
        try:
            rep = cross_verify(f, 3)
            ok = all(rep["status"][j] == "pass" for j in range(4))
        except RatlqError as exc:  # a mismatch is a failed criterion, reported by name
            ok = False
            checks.append((f"{f}: {exc}", False))
            continue
        checks.append((str(f), ok))
    checks.append(("non-empty sweep", len(checks) > 0))
    report(capsys, 5, f"skein = algebraic = geometric, u+v <= 10, j <= 3 ({len(checks) - 1} fractions)", checks, time.perf_counter() - start, 120)


def test_criterion_6_delta_grading(capsys):
    start = time.perf_counter()
    checks = []
    for f in admissible_fractions(14):
        if not is_knot(f):
            continue
        counts = twist_type_counts(continued_fraction(f))
        expected = 1 + counts["RRI"] - counts["TUP"]
        for route in ("algebraic", "geometric"):
            try:
                value = delta_check(quiver(f, route))
            except RatlqError:
                value = None
            checks.append((f"{f} {route}", value == expected == signature(f)))
    for n in range(1, 7):
        checks.append((f"torus n={n}", delta_check(quiver((2 * n + 1, 1))) == -2 * n))
    report(capsys, 6, "delta grading for knots with u+v <= 14", checks, time.perf_counter() - start, 10)


def test_criterion_7_jones(capsys):
    start = time.perf_counter()
    printed = quiver("5/2", corrected=False).permuted((0, 1, 2, 4, 3))
    H, QJ = jones_data(printed)
    reference = {j: jones_from_homfly(homfly("5/2", j)) for j in (1, 2)}
    candidate = {j: jones_polynomial("5/2", j) for j in (1, 2)}
    fit = fit_framing(reference, candidate)
    agree = fit is not None and all(
        candidate[j] * framing_monomial(*fit, j) == reference[j] for j in (1, 2)
    )
    v1 = candidate[1]
    lo, hi = v1.q_degree_range()
    checks = [
        ("H", H == ref.JONES52_H),
        ("Q_J", QJ == ref.JONES52_Q),
        ("specialized skein j <= 2", agree),
        ("palindromic j=1", v1.invert_q().shift(lo + hi) == v1),
    ]
    report(capsys, 7, "colored Jones of the figure-eight", checks, time.perf_counter() - start, 5)


def test_criterion_8_algebra_and_symmetry(capsys):
    start = time.perf_counter()
    checks = []
    for x in (mono(1), mono(2), mono(0, 1), mono(1, 1), mono(-1, 2)):
        ok = all(
            split_index_identity_check(x, d)
            for m in range(1, 4)
            for total in range(5)
            for d in compositions(total, m)
        )
        checks.append((f"split identity {x!r}", ok))
    parts_list = [d for m in range(1, 5) for total in range(6) for d in compositions(total, m)]
    checks.append(("multinomial division", all(qmultinomial(d) == qmultinomial_by_division(d) for d in parts_list)))
    pascal = all(
        qbinomial(j, k) == qbinomial(j - 1, k - 1) + qbinomial(j - 1, k).shift(2 * k)
        for j in range(2, 10)
        for k in range(1, j)
    )
    checks.append(("Pascal", pascal))
    for f in admissible_fractions(12):
        S, A, Q = build_diagram(f).forms()
        n = len(S)
        checks.append((f"Q symmetry {f}", all(Q[i][j] == Q[j][i] for i in range(n) for j in range(i))))
    report(capsys, 8, "algebra identities and geometric Q symmetry u+v <= 12", checks, time.perf_counter() - start, 30)
