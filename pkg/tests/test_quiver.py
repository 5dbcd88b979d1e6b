import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratlq.errors import DeltaInhomogeneous, PairingFailed
from ratlq.evaluator import quiver_coefficient, series_equivalent
from ratlq.quiver import (
    apply_corrections,
    apply_transposition,
    close_knot,
    close_link,
    compress,
    compressible_tangle,
    conjectural_poincare_vector,
    delta_check,
    jones_data,
    matrix_twist,
    quiver,
    symmetric_transform,
    tangle_quiver_algebraic,
    transposition_legal,
    trivial_tangle,
)
from ratlq.quiverdata import KNOT, LINK, QuiverData
from ratlq.tangles import OP, admissible_fractions, continued_fraction, correction_terms, is_knot
from tests import reference as ref


def compressed(f):
    data, pairing = compressible_tangle(f)
    return compress(data, pairing=pairing)


def test_top_twist_of_trivial_tangle():
    t = matrix_twist(trivial_tangle(), "T")
    assert t.active == (True, False)
    assert (t.S, t.A, t.diagonal()) == ((1, 0), (0, 0), (0, 0))


@pytest.mark.parametrize("n", range(1, 7))
def test_iterated_top_twists(n):
    data = trivial_tangle()
    for _ in range(n):
        data = matrix_twist(data, "T")
    assert data.S == tuple(range(n, -1, -1))


def test_tangle_seven_over_one():
    # Q_ij = 7 - k where k is the larger one-based index, last row and column 0
    d = tangle_quiver_algebraic((7, 1))
    assert d.S == (7, 6, 5, 4, 3, 2, 1, 0) and d.A == (0,) * 8
    for i in range(8):
        for j in range(8):
            k = max(i, j) + 1
            assert d.Q[i][j] == (7 - k if k <= 7 else 0)


def test_trivial_tangle_data():
    d = trivial_tangle()
    assert (d.size, d.S, d.A, d.Q) == (1, (0,), (0,), ((0,),))


def test_matrix_twist_rejects_closed_data():
    with pytest.raises(ValueError):
        matrix_twist(quiver("3/1"), "T")


def test_compress_six_over_one():
    c = compressed((6, 1))
    assert (c.K, c.S, c.A, c.Q) == (ref.T61_K, ref.T61_S, ref.T61_A, ref.T61_Q)


def test_compress_two_over_one():
    c = compressed((2, 1))
    assert (c.K, c.S, c.A, c.Q) == ((1, 0), (1, 0), (0, 0), ((0, 0), (0, 0)))
    assert c.active == (True, False)


def test_compress_empty_side_is_identity():
    c = compress(trivial_tangle(), side="active")
    assert (c.K, c.S, c.Q) == ((0,), (0,), ((0,),))


def test_compress_rejects_bad_pairing():
    data, pairing = compressible_tangle((6, 1))
    (drop, keep), *rest = pairing
    with pytest.raises(PairingFailed):
        compress(data, pairing=[(keep, drop)] + rest)
    with pytest.raises(PairingFailed):
        compress(data, pairing=rest)


def test_close_knot_seven_over_one():
    out = close_knot(compressed((6, 1)))
    mu = correction_terms(continued_fraction((6, 1)))
    assert mu == (-6, 0, 0)
    out = apply_corrections(out, mu)
    assert (out.S, out.A, out.Q) == (ref.K71_S, ref.K71_A, ref.K71_Q)


def test_close_knot_five_halves():
    out = close_knot(compressed((3, 2)))
    assert out.kind == KNOT and out.size == 5
    assert (out.S, out.A) == (ref.K52_TABLE_S, ref.K52_TABLE_A)
    # the printed matrix lists the last two indices the other way round
    assert out.permuted((0, 1, 2, 4, 3)).Q == ref.Q52


def test_closure_rejects_op_orientation():
    d = tangle_quiver_algebraic((2, 3))
    assert d.orientation == OP
    with pytest.raises(ValueError):
        close_knot(d)
    with pytest.raises(ValueError):
        close_link(d)


def test_close_link_eight_over_one():
    out = close_link(tangle_quiver_algebraic((7, 1)))
    assert out.kind == LINK and out.size == 16
    assert (out.S, out.A, out.Q) == (ref.L81_S, ref.L81_A, ref.L81_Q)


def test_close_link_eight_thirds_is_equivalent_to_print():
    out = close_link(tangle_quiver_algebraic((5, 3)))
    printed = quiver("8/3", "geometric", corrected=False)
    assert printed.Q == ref.L83_Q
    assert sorted(zip(out.S, out.A)) == sorted(zip(printed.S, printed.A))
    for j in range(3):
        assert quiver_coefficient(out, j) == quiver_coefficient(printed, j)


def test_closure_color_zero_is_one():
    for f in ("3/1", "5/2", "8/3"):
        value = quiver_coefficient(quiver(f), 0)
        assert value == quiver_coefficient(quiver("3/1"), 0)


def test_correction_terms_for_the_examples():
    assert correction_terms(continued_fraction((3, 2))) == ref.K52_MU
    assert correction_terms(continued_fraction((5, 3))) == ref.L83_MU
    assert quiver("5/2").mu == ref.K52_MU


def test_delta_check_examples():
    for n in range(1, 7):
        assert delta_check(quiver((2 * n + 1, 1))) == -2 * n
    assert delta_check(quiver("5/2")) == 0
    assert delta_check(quiver("3/1")) == -2


def test_delta_check_flags_the_index():
    data = quiver("5/2")
    Q = [list(r) for r in data.Q]
    Q[3][3] += 1
    with pytest.raises(DeltaInhomogeneous) as info:
        delta_check(data.with_forms(Q=Q))
    assert info.value.index == 3


def test_delta_grading_sweep():
    for f in admissible_fractions(14):
        if is_knot(f):
            for route in ("algebraic", "geometric"):
                delta_check(quiver(f, route))


def figure_eight():
    raw = quiver("5/2", corrected=False).permuted((0, 1, 2, 4, 3))
    assert (raw.S, raw.A, raw.Q) == (ref.K52_S, ref.K52_A, ref.Q52)
    return raw


def test_transposition_of_the_figure_eight():
    data = figure_eight()
    assert transposition_legal(data, (0, 4), (1, 3))
    swapped = apply_transposition(data, (0, 4), (1, 3))
    assert swapped.Q == ref.Q52K
    assert series_equivalent(data, swapped, 4)


def test_transposition_needs_offset_one():
    data = figure_eight()
    pairs = [(i, k) for i in range(5) for k in range(i + 1, 5)]
    equal = [
        (p, r)
        for p in pairs
        for r in pairs
        if len(set(p + r)) == 4 and data.Q[p[0]][p[1]] == data.Q[r[0]][r[1]]
    ]
    assert equal
    for first, second in equal:
        assert not transposition_legal(data, first, second)


def test_transposition_needs_lambda_identity():
    data = figure_eight()
    # A_0 + A_1 = 2 but A_2 + A_3 = 0
    assert not transposition_legal(data, (0, 1), (2, 3))
    with pytest.raises(ValueError):
        transposition_legal(data, (0, 1), (1, 3))


def test_symmetric_transform():
    data = quiver("5/2")
    sym = symmetric_transform(data)
    assert sym.S == tuple(-s for s in data.S) and sym.A == data.A
    assert sym.diagonal() == tuple(-x for x in data.diagonal())
    back = symmetric_transform(sym)
    assert (back.S, back.Q) == (data.S, data.Q)


def test_jones_data_figure_eight():
    H, QJ = jones_data(figure_eight())
    assert H == ref.JONES52_H and QJ == ref.JONES52_Q


def test_jones_data_of_trefoil():
    data = quiver("3/1", corrected=False)
    H, QJ = jones_data(data)
    assert H == tuple(2 * a - s for a, s in zip(data.A, data.S))
    assert QJ == tuple(tuple(-x for x in row) for row in data.Q)
    with pytest.raises(ValueError):
        jones_data(quiver("8/3"))


def test_jones_h_when_a_vanishes():
    d = QuiverData(KNOT, ("x", "y"), (3, -1), (0, 0), ((1, 0), (0, 2)))
    assert jones_data(d)[0] == (-3, 1)


def test_poincare_vector():
    assert conjectural_poincare_vector(quiver("7/1")) == (-6, -4, -2, -3, -1, 1, 0)
    zero = QuiverData(KNOT, ("x", "y"), (0, 0), (0, 0), ((0, 0), (0, 0)))
    assert conjectural_poincare_vector(zero) == (0, 0)


@pytest.mark.parametrize("n", range(1, 7))
def test_torus_knots_agree_across_routes(n):
    f = (2 * n + 1, 1)
    alg, geo = quiver(f), quiver(f, "geometric")
    assert (alg.S, alg.A, alg.Q) == (geo.S, geo.A, geo.Q)


@pytest.mark.parametrize("n", range(1, 5))
def test_torus_links_agree_across_routes(n):
    f = (2 * n, 1)
    alg, geo = quiver(f, corrected=False), quiver(f, "geometric", corrected=False)
    assert (alg.S, alg.A, alg.Q) == (geo.S, geo.A, geo.Q)


def test_quiver_data_invariants():
    with pytest.raises(ValueError):
        QuiverData(KNOT, ("x", "y"), (0, 0), (0, 0), ((0, 1), (0, 0)))
    with pytest.raises(ValueError):
        QuiverData(KNOT, ("x",), (0, 0), (0, 0), ((0, 0), (0, 0)))
    for f in admissible_fractions(11):
        d = quiver(f)
        u = int(str(f).split("/")[0])
        assert d.size == (u if d.kind == KNOT else 2 * u)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["5/2", "7/3", "9/2", "8/3", "4/3", "6/1"]), st.randoms(use_true_random=False))
def test_relabeling_preserves_series(f, rnd):
    data = quiver(f)
    order = list(range(data.size))
    rnd.shuffle(order)
    assert series_equivalent(data, data.permuted(order), 2)
