"""Quiver data for rational tangles, knots and links built by matrix rules.

Tangle data evolves twist by twist.  Each twist keeps the old active block
and copies the inactive one (T), or splits the active block into two copies
(R); the new entries of S, A and Q follow from substituting the skein rule
into the quiver form and splitting quantum multinomials.  On top of that
exact bookkeeping every twist class carries a uniform shift so that the
linear forms follow the winding-number normalization used for the closure
block maps.
"""

from __future__ import annotations

import itertools

from .errors import DeltaInhomogeneous, PairingFailed
from .quiverdata import KNOT, LINK, TANGLE, QuiverData
from .tangles import (
    OP,
    RI,
    UP,
    apply_letter,
    as_tangle_fraction,
    classify_closure,
    companion,
    continued_fraction,
    correction_terms,
    next_state,
    run_state_machine,
    signature,
)

# uniform (S, A, Q) offsets between the exact skein bookkeeping and the
# winding-number normalization, per twist class
CONVENTION_SHIFT = {
    "TUP": (0, 0, 0),
    "TOP+": (-1, -1, 1),
    "TOP-": (-1, 0, 0),
    "TRI": (-1, -1, 1),
    "RUP": (0, 0, 0),
    "ROP+": (0, -1, 1),
    "ROP-": (0, 0, 0),
    "RRI": (-1, 0, -1),
}


# which triangle of the alpha/beta block picks up the multinomial cross term;
# both are valid splittings, the choice fixes how index pairs line up
CROSS_TRIANGLE = {"TUP": "U", "TOP": "U", "TRI": "U", "RUP": "U", "ROP": "U", "RRI": "U"}


def trivial_tangle():
    """τ_{0/1}: one inactive index with S = A = Q = 0."""
    return QuiverData(
        TANGLE,
        ("I0",),
        (0,),
        (0,),
        ((0,),),
        K=(0,),
        orientation=UP,
        active=(False,),
        fraction=(0, 1),
    )


def twist_class(data, letter):
    cls = letter + data.orientation
    if data.orientation == OP:
        u, v = data.fraction
        cls += "+" if u > v else "-"
    return cls


def _state_of(data):
    word = continued_fraction(data.fraction)
    return run_state_machine(word)


def _relabel(active):
    counts = {True: 0, False: 0}
    labels = []
    for flag in active:
        labels.append(("A" if flag else "I") + str(counts[flag]))
        counts[flag] += 1
    return tuple(labels)


def matrix_twist(data, letter, exact=False, split_order=None):
    """Apply T or R to tangle quiver data.

    With ``exact`` the result reproduces the skein rules on the nose;
    otherwise the per-class convention shift is added.
    """
    if data.kind != TANGLE:
        raise ValueError("matrix_twist needs tangle data")
    if data.orientation != _state_of(data).orientation:
        raise ValueError("orientation does not match the twist word of the fraction")
    cls = twist_class(data, letter)
    n = data.size
    old_active = [i for i in range(n) if data.active[i]]
    old_inactive = [i for i in range(n) if not data.active[i]]
    K = data.K or (0,) * n

    # sources and roles of the new indices
    if letter == "T":
        keep, split = old_active, old_inactive
        sources = keep + split + split
        roles = ["P"] * len(keep) + ["alpha"] * len(split) + ["beta"] * len(split)
        active = [True] * (len(keep) + len(split)) + [False] * len(split)
    else:
        keep, split = old_inactive, old_active
        sources = split + split + keep
        roles = ["alpha"] * len(split) + ["beta"] * len(split) + ["N"] * len(keep)
        active = [True] * len(split) + [False] * (len(split) + len(keep))
    size = len(sources)
    S = [data.S[s] for s in sources]
    A = [data.A[s] for s in sources]
    Q = [[data.Q[s][t] for t in sources] for s in sources]
    new_K = [K[s] for s in sources]
    # position of each index inside the split copy, for the triangular term
    rank = {}
    seen = {"alpha": 0, "beta": 0}
    for x, role in enumerate(roles):
        if role in seen:
            rank[x] = seen[role]
            seen[role] += 1

    def bump_S(role_set, amount):
        for x in range(size):
            if roles[x] in role_set:
                S[x] += amount

    def bump_A(role_set, amount):
        for x in range(size):
            if roles[x] in role_set:
                A[x] += amount

    def bump_Q(first, second, amount):
        for x in range(size):
            for y in range(size):
                if (roles[x] == first and roles[y] == second) or (
                    roles[x] == second and roles[y] == first
                ):
                    Q[x][y] += amount

    kind = cls.rstrip("+-")
    if kind == "TUP":
        bump_S({"P", "alpha"}, 1)
        bump_Q("P", "P", 1)
    elif kind == "TOP":
        bump_S({"P", "alpha"}, 1)
        bump_A({"P"}, 1)
        bump_Q("P", "P", -1)
        bump_Q("P", "alpha", -1)
        bump_Q("P", "beta", -1)
    elif kind == "TRI":
        bump_S({"P", "alpha"}, 1)
        bump_A({"P", "alpha"}, 1)
        bump_Q("P", "P", -1)
        bump_Q("P", "alpha", -2)
        bump_Q("alpha", "alpha", -2)
        bump_Q("P", "beta", -1)
        bump_Q("alpha", "beta", -1)
    elif kind == "RUP":
        bump_S({"alpha"}, 1)
        bump_A({"alpha"}, 1)
        bump_Q("alpha", "alpha", -1)
        bump_Q("beta", "beta", 1)
    elif kind == "ROP":
        bump_S({"alpha"}, 1)
        bump_A({"alpha", "beta"}, 1)
        bump_Q("alpha", "alpha", -1)
        bump_Q("beta", "beta", -1)
        bump_Q("alpha", "beta", -1)
        bump_Q("beta", "N", -1)
    elif kind == "RRI":
        bump_S({"alpha"}, 1)
        bump_Q("alpha", "alpha", 1)
        bump_Q("beta", "beta", 1)
        bump_Q("alpha", "beta", 1)
        bump_Q("alpha", "N", 1)
    # cross term between the two copies of the split block
    if split_order is None:
        n_split = len(split)
        split_order = list(range(n_split))
        if CROSS_TRIANGLE[kind] == "L":
            split_order.reverse()
    position = {r: p for p, r in enumerate(split_order)}
    for x in range(size):
        for y in range(size):
            if roles[x] == "alpha" and roles[y] == "beta" and (
                position[rank[x]] < position[rank[y]]
            ):
                Q[x][y] += 1
                Q[y][x] += 1

    if not exact:
        ds, da, dq = CONVENTION_SHIFT[cls]
        S = [s + ds for s in S]
        A = [a + da for a in A]
        Q = [[e + dq for e in row] for row in Q]

    u, v = apply_letter(*data.fraction, letter)
    return QuiverData(
        TANGLE,
        _relabel(active),
        S,
        A,
        Q,
        K=new_K,
        orientation=next_state(_state_of(data), letter).orientation,
        active=active,
        fraction=(u, v),
    )


def split_sizes(f):
    """Size of the block that each applied twist of τ_f duplicates."""
    data = trivial_tangle()
    sizes = []
    for letter in continued_fraction(f).applied():
        sizes.append(sum(1 for a in data.active if a == (letter == "R")))
        data = matrix_twist(data, letter)
    return sizes


def tangle_quiver_algebraic(f, exact=False, split_orders=None):
    """Tangle data by folding matrix_twist over the twist word.

    ``split_orders`` optionally fixes, per twist, the order used for the
    cross terms between the two copies of the duplicated block.
    """
    f = as_tangle_fraction(f)
    data = trivial_tangle()
    for step, letter in enumerate(continued_fraction(f).applied()):
        order = None if split_orders is None else split_orders[step]
        data = matrix_twist(data, letter, exact=exact, split_order=order)
    return data


def compressible_tangle(f, max_tries=20000):
    """Tangle data for τ_f together with a pairing that folds it.

    Every choice of cross-term orders gives an equivalent quiver, but only
    some of them admit a fold.  Orders are tried lazily, identity first,
    with the last twist varying fastest.
    """
    f = as_tangle_fraction(f)
    sizes = split_sizes(f)
    choices = [itertools.permutations(range(k)) for k in sizes]
    for tries, orders in enumerate(itertools.product(*choices)):
        if tries >= max_tries:
            break
        data = tangle_quiver_algebraic(f, split_orders=[list(o) for o in orders])
        want = data.orientation == UP
        side = [i for i in range(data.size) if data.active[i] == want]
        pairing = find_pairing(data, side)
        if pairing is not None:
            return data, pairing
    raise PairingFailed(f"no foldable representative found for τ_{f}")


def _assemble(data, blocks, qspec):
    """Build closed data from copies of tangle blocks.

    ``blocks`` lists (source indices, S offset, A offset); ``qspec[r][c]`` is
    (offset, triangle) for the Q block between output blocks r and c, where
    triangle is "L" (row position > column position), "U" or None.
    """
    S, A, origin = [], [], []
    for b, (src, ds, da) in enumerate(blocks):
        for pos, i in enumerate(src):
            S.append(data.S[i] + ds)
            A.append(data.A[i] + da)
            origin.append((b, pos, i))
    Q = []
    for br, pr, i in origin:
        row = []
        for bc, pc, k in origin:
            offset, tri = qspec[br][bc]
            value = data.Q[i][k] + offset
            if tri == "L" and pr > pc:
                value += 1
            elif tri == "U" and pr < pc:
                value += 1
            row.append(value)
        Q.append(row)
    return S, A, Q, origin


def _sides(data):
    plus = [i for i in range(data.size) if data.active[i]]
    minus = [i for i in range(data.size) if not data.active[i]]
    return plus, minus


KNOT_CLOSURE = {
    UP: (
        [("+", 1, 0), ("+", 2, 2), ("-", 0, 0)],
        [
            [(2, None), (0, "L"), (0, None)],
            [(0, "U"), (-1, None), (-1, None)],
            [(0, None), (-1, None), (0, None)],
        ],
        ("𝔄", "𝔅", "𝔆"),
    ),
    RI: (
        [("+", 0, 0), ("-", -1, -2), ("-", 0, 0)],
        [
            [(0, None), (0, None), (-1, None)],
            [(0, None), (2, None), (0, "L")],
            [(-1, None), (0, "U"), (-1, None)],
        ],
        ("𝔄", "𝔅", "𝔆"),
    ),
}

LINK_CLOSURE = {
    UP: (
        [("+", 2, 2), ("+", 1, 0), ("-", 1, 0), ("-", 0, 0)],
        [
            [(-1, None), (0, "U"), (0, None), (-1, None)],
            [(0, "L"), (2, None), (1, None), (0, None)],
            [(0, None), (1, None), (1, None), (0, "L")],
            [(-1, None), (0, None), (0, "U"), (0, None)],
        ],
        ("𝔄", "𝔅", "𝔆", "𝔇"),
    ),
    RI: (
        [("+", 1, 0), ("+", 0, 0), ("-", 0, 0), ("-", -1, -2)],
        [
            [(1, None), (0, "L"), (0, None), (1, None)],
            [(0, "U"), (0, None), (-1, None), (0, None)],
            [(0, None), (-1, None), (-1, None), (0, "U")],
            [(1, None), (0, None), (0, "L"), (2, None)],
        ],
        ("𝔄", "𝔅", "𝔆", "𝔇"),
    ),
}


def _close(data, table, kind):
    if data.kind != TANGLE:
        raise ValueError("closure needs tangle data")
    if data.orientation not in table:
        raise ValueError(f"cannot close a tangle with {data.orientation} orientation")
    block_spec, qspec, names = table[data.orientation]
    plus, minus = _sides(data)
    if not plus:
        raise ValueError("closure needs a non-empty active block")
    blocks = [(plus if side == "+" else minus, ds, da) for side, ds, da in block_spec]
    S, A, Q, origin = _assemble(data, blocks, qspec)
    labels = tuple(f"{names[b]}{pos}" for b, pos, _ in origin)
    return QuiverData(kind, labels, S, A, Q, fraction=data.fraction)


def pair_is_compressible(data, drop, keep):
    """Local conditions for folding index ``drop`` into ``keep``.

    S and A drop by one step, the diagonal drops by one and the mixed entry
    equals the kept diagonal.  Entries against the remaining indices are not
    constrained pairwise; the fold is certified on the generating function.
    """
    S, A, Q = data.S, data.A, data.Q
    if data.active[drop] != data.active[keep]:
        return False
    if S[drop] != S[keep] + 1 or A[drop] != A[keep]:
        return False
    return Q[drop][drop] == Q[keep][keep] + 1 and Q[drop][keep] == Q[keep][keep]


def _fold(data, pairing):
    dropped = {drop for drop, _ in pairing}
    kept = {keep for _, keep in pairing}
    base_K = data.K or (0,) * data.size
    K = [1 if i in kept else base_K[i] for i in range(data.size)]
    order = [i for i in range(data.size) if i not in dropped]
    out = data.with_forms(K=tuple(K)).permuted(order)
    return out.with_forms(labels=_relabel(out.active))


def fold_preserves_series(data, pairing, max_color=3):
    from .evaluator import tangle_coefficients

    folded = _fold(data, pairing)
    return all(
        tangle_coefficients(folded, j) == tangle_coefficients(data, j)
        for j in range(1, max_color + 1)
    )


def candidate_pairings(data, side_indices):
    """Every perfect matching of the side built from locally compressible pairs."""
    side = list(side_indices)
    options = {i: [k for k in side if k != i and pair_is_compressible(data, i, k)] for i in side}

    def search(remaining):
        if not remaining:
            yield []
            return
        first, rest = remaining[0], remaining[1:]
        for k in options[first]:
            if k in rest:
                for sub in search([x for x in rest if x != k]):
                    yield [(first, k)] + sub
        for i in rest:
            if first in options[i]:
                for sub in search([x for x in rest if x != i]):
                    yield [(i, first)] + sub

    return search(side)


def find_pairing(data, side_indices, max_color=3):
    """First candidate pairing whose fold leaves the series unchanged, or None."""
    for pairing in candidate_pairings(data, side_indices):
        if fold_preserves_series(data, pairing, max_color):
            return pairing
    return None


def compress(data, side=None, pairing=None, validate=True):
    """Fold index pairs of one side into single indices carrying K = 1.

    ``side`` is "active" or "inactive"; by default the side that is paired
    in the closure (active for UP, inactive otherwise).  ``pairing`` gives
    (drop, keep) pairs, e.g. from the geometric construction; without it the
    pairs are found from the algebraic pattern.
    """
    if side is None:
        side = "active" if data.orientation == UP else "inactive"
    want = side == "active"
    side_indices = [i for i in range(data.size) if data.active[i] == want]
    if len(side_indices) % 2:
        raise PairingFailed(f"{side} side has odd size {len(side_indices)}")
    if pairing is None:
        pairing = find_pairing(data, side_indices)
        if pairing is None:
            raise PairingFailed("no pairing of the side folds without changing the series")
    else:
        covered = sorted(x for pair in pairing for x in pair)
        if covered != sorted(side_indices):
            raise PairingFailed("pairing is not a perfect matching of the side")
        for drop, keep in pairing:
            if not pair_is_compressible(data, drop, keep):
                raise PairingFailed(f"pair ({drop}, {keep}) fails the compression pattern")
        if validate and not fold_preserves_series(data, pairing):
            raise PairingFailed("folding the given pairs changes the generating function")
    return _fold(data, pairing)


def close_knot(data):
    """Closure Cl(T-) on compressed tangle data; corrections still pending."""
    out = _close(data, KNOT_CLOSURE, KNOT)
    return out


def close_link(data):
    """Closure Cl(T-) on uncompressed tangle data; corrections still pending."""
    return _close(data, LINK_CLOSURE, LINK)


def apply_corrections(data, mu):
    mu1, mu2, mu3 = mu
    return data.with_forms(
        S=tuple(s + mu1 for s in data.S),
        A=tuple(a + mu2 for a in data.A),
        Q=tuple(tuple(e + mu3 for e in row) for row in data.Q),
        mu=tuple(mu),
        corrected=True,
    )


def knot_quiver_algebraic(f, corrected=True):
    f = as_tangle_fraction(f)
    kind, _ = classify_closure(f)
    if kind != "Knot":
        raise ValueError(f"{f} closes to a link")
    comp = companion(f)
    data, pairing = compressible_tangle(comp)
    tangle = compress(data, pairing=pairing, validate=False)
    out = close_knot(tangle).with_forms(fraction=(f.u, f.v), mu=correction_terms(continued_fraction(comp)))
    return apply_corrections(out, out.mu) if corrected else out


def link_quiver_algebraic(f, corrected=True):
    f = as_tangle_fraction(f)
    kind, _ = classify_closure(f)
    if kind != "Link":
        raise ValueError(f"{f} closes to a knot")
    comp = companion(f)
    out = close_link(tangle_quiver_algebraic(comp))
    out = out.with_forms(fraction=(f.u, f.v), mu=correction_terms(continued_fraction(comp)))
    return apply_corrections(out, out.mu) if corrected else out


def quiver(f, route="algebraic", corrected=True):
    """Knot or link quiver data for the closure of τ_f by either route."""
    f = as_tangle_fraction(f)
    if route == "geometric":
        from .geometry import geometric_quiver

        return geometric_quiver(f, corrected=corrected)
    if route != "algebraic":
        raise ValueError(f"unknown route {route!r}")
    kind, _ = classify_closure(f)
    build = knot_quiver_algebraic if kind == KNOT else link_quiver_algebraic
    return build(f, corrected=corrected)


def delta_check(data, f=None):
    """S_i - Q_ii - 2 A_i, which must be the same for every index and equal the signature."""
    if data.kind != KNOT:
        raise ValueError("the grading check applies to knots")
    f = as_tangle_fraction(f if f is not None else data.fraction)
    expected = signature(f)
    for i in range(data.size):
        value = data.S[i] - data.Q[i][i] - 2 * data.A[i]
        if value != expected:
            raise DeltaInhomogeneous(i, value, expected)
    return expected


def _lambda_key(data, i):
    """Λ_i = (-1)^{Q_ii - S_i} q^{S_i - 1} a^{A_i} as (sign parity, q exponent, a exponent)."""
    return ((data.Q[i][i] - data.S[i]) % 2, data.S[i] - 1, data.A[i])


def transposition_legal(data, first, second):
    """Whether swapping Q_ab with Q_cd (and Q_ba with Q_dc) preserves the generating function.

    Checks the sufficient conditions: Λ_a Λ_b = Λ_c Λ_d, the two entries
    differ by one, and the row sums of the pair holding the smaller entry
    match those of the other pair after removing the diagonal deltas.
    """
    a, b = first
    c, d = second
    if len({a, b, c, d}) != 4:
        raise ValueError("transposition needs four distinct indices")
    la, lb, lc, ld = (_lambda_key(data, i) for i in (a, b, c, d))
    if ((la[0] + lb[0]) % 2, la[1] + lb[1], la[2] + lb[2]) != ((lc[0] + ld[0]) % 2, lc[1] + ld[1], lc[2] + ld[2]):
        return False
    Q = data.Q
    n = data.size

    def rows_match(low, high):
        (p, r), (s, t) = low, high
        return all(
            Q[p][i] + Q[r][i] == Q[s][i] + Q[t][i] - (i == s) - (i == t) for i in range(n)
        )

    if Q[a][b] == Q[c][d] - 1:
        return rows_match((a, b), (c, d))
    if Q[c][d] == Q[a][b] - 1:
        return rows_match((c, d), (a, b))
    return False


def apply_transposition(data, first, second):
    (a, b), (c, d) = first, second
    Q = [list(row) for row in data.Q]
    Q[a][b], Q[c][d] = Q[c][d], Q[a][b]
    Q[b][a], Q[d][c] = Q[d][c], Q[b][a]
    return data.with_forms(Q=Q)


def symmetric_transform(data):
    """Data for the symmetric colorings: S' = -S, A' = A, Q' = -Q - 1 + I."""
    n = data.size
    return data.with_forms(
        S=tuple(-s for s in data.S),
        Q=tuple(tuple(-data.Q[i][k] - 1 + (i == k) for k in range(n)) for i in range(n)),
        notes=data.notes + ("symmetric",),
    )


def jones_data(data):
    """(H, Q_J) for the colored Jones specialization: H = 2A - S and Q_J = -Q."""
    if data.kind != KNOT:
        raise ValueError("colored Jones data is defined here for knots")
    H = tuple(2 * a - s for a, s in zip(data.A, data.S))
    QJ = tuple(tuple(-e for e in row) for row in data.Q)
    return H, QJ


def conjectural_poincare_vector(data):
    """Negated diagonal of Q; conjectural homological degrees, not verified."""
    return tuple(-x for x in data.diagonal())
