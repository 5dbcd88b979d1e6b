"""Curves on the four-punctured pillowcase and the linear forms they determine.

All geometry happens in the branched double cover of the pillowcase: the
plane modulo the group G generated by translations in 2Z^2 and the point
reflection z -> -z.  Lattice points are the cone points.  The corners
(0, 0), (1, 0) and (1, 1) project to the punctures p1, p2, p3 and (0, 1)
to the point at infinity.  Straight segments in the cover are exact
rational data, so winding numbers reduce to signed counts of grid-line
crossings and never touch floating point.

A rational tangle arc of slope v/u is the image of a straight segment
between two lattice points.  The closure band of a knot or link is a
thin neighbourhood of the arc doubled through the point at infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ComponentsCollide, DimensionMismatch, RayDegenerate
from .quiverdata import KNOT, LINK, TANGLE, QuiverData
from .tangles import (
    UP,
    XM,
    XP,
    Y,
    as_tangle_fraction,
    classify_closure,
    companion,
    continued_fraction,
    correction_terms,
    run_state_machine,
)

CORNERS = ((0, 0), (1, 0), (1, 1))  # p1, p2, p3; (0, 1) is infinity


@dataclass(frozen=True)
class Puncture:
    name: str
    corner: tuple
    position: int  # 1, 2 or 3, left to right on the real axis


def _affine(letter, p):
    x, y = p
    if letter == "T":
        return (x + y + 1, y)
    return (x, x + y)


def _corner(p):
    return (p[0] % 2, p[1] % 2)


def arc_endpoints(f):
    """Cover endpoints of the tangle arc, obtained by pushing the 0/1 arc through the twist maps."""
    f = as_tangle_fraction(f)
    p0, p1 = (1, 0), (1, 1)
    for letter in continued_fraction(f).applied():
        p0, p1 = _affine(letter, p0), _affine(letter, p1)
    if (p1[0] - p0[0], p1[1] - p0[1]) != (f.u, f.v):
        raise DimensionMismatch(f"arc of {f} has displacement {p1[0] - p0[0]}, {p1[1] - p0[1]}")
    return p0, p1


def punctures(f):
    """The three finite punctures labelled X-, X+ and Y for the tangle of fraction f."""
    p0, p1 = arc_endpoints(f)
    names = {_corner(p0): XM, _corner(p1): XP}
    rest = [c for c in CORNERS if c not in names]
    names[rest[0]] = Y
    out = tuple(Puncture(names[c], c, k + 1) for k, c in enumerate(CORNERS))
    state = run_state_machine(continued_fraction(f))
    if tuple(p.name for p in out) != state.puncture_order:
        raise DimensionMismatch(f"cover labels {out} disagree with the automaton state {state}")
    return out


# --- winding numbers -----------------------------------------------------

def crossing_counts(a, b):
    """Signed crossings of the segment a -> b with the grid lines, by line class.

    Keys are 'xe', 'xo' (vertical lines with even / odd x) and 'ye', 'yo'.
    A crossing counts +1 when it enters a front square (x + y floor even).
    """
    out = {"xe": 0, "xo": 0, "ye": 0, "yo": 0}
    for axis in (0, 1):
        c0, c1 = a[axis], b[axis]
        if c0 == c1:
            continue
        lo, hi = min(c0, c1), max(c0, c1)
        for k in range(math.floor(lo) + 1, math.ceil(hi)):
            t = Fraction(k - c0) / (c1 - c0)
            other = a[1 - axis] + t * (b[1 - axis] - a[1 - axis])
            if other == math.floor(other):
                raise RayDegenerate(f"segment {a} -> {b} passes through a lattice point")
            m = math.floor(other)
            after = k if c1 > c0 else k - 1
            sign = 1 if (after + m) % 2 == 0 else -1
            key = ("x" if axis == 0 else "y") + ("e" if k % 2 == 0 else "o")
            out[key] += sign
    return out


def corner_windings(counts):
    """Winding numbers around p1, p2, p3 from the crossing counts of a closed loop."""
    return (
        counts["ye"] + counts["xo"] + counts["yo"],
        counts["xo"] + counts["yo"],
        counts["yo"],
    )


def segment_windings(segments):
    total = {"xe": 0, "xo": 0, "ye": 0, "yo": 0}
    for a, b in segments:
        for k, c in crossing_counts(a, b).items():
            total[k] += c
    return corner_windings(total)


def _cross(o, p, q):
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def _signed_crossing(a, b, c, d):
    """Sign of the crossing of segment a->b with ray segment c->d, or 0.

    Raises RayDegenerate when the two touch without crossing transversally.
    """
    d1, d2 = _cross(c, d, a), _cross(c, d, b)
    d3, d4 = _cross(a, b, c), _cross(a, b, d)
    if 0 in (d1, d2, d3, d4):
        if d1 == 0 and d2 == 0:
            return 0
        if (d1 > 0) != (d2 > 0) and (d3 == 0 or d4 == 0):
            raise RayDegenerate("ray touches the loop")
        if (d3 > 0) != (d4 > 0) and (d1 == 0 or d2 == 0):
            raise RayDegenerate("ray touches the loop")
        return 0
    if (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0):
        r = (d[0] - c[0], d[1] - c[1])
        w = (b[0] - a[0], b[1] - a[1])
        return 1 if r[0] * w[1] - r[1] * w[0] > 0 else -1
    return 0


def _to_grid(loop, q):
    """Rescale a loop and a point by a common denominator so all coordinates are integers.

    Returns the scaled loop, the scaled point and the scale factor.
    """
    coords = [c for seg in loop for pt in seg for c in pt] + list(q)
    scale = math.lcm(*(Fraction(c).denominator for c in coords))
    lift = lambda pt: (int(pt[0] * scale), int(pt[1] * scale))
    return [(lift(a), lift(b)) for a, b in loop], lift(q), scale


def _scaled_images(seg, box, scale):
    """G-images of a segment in grid coordinates, restricted to those whose box meets ``box``."""
    c, d = seg
    xmin, xmax, ymin, ymax = box
    two = 2 * scale
    out = []
    for eps in (1, -1):
        cc, dd = (eps * c[0], eps * c[1]), (eps * d[0], eps * d[1])
        lo_x, hi_x = min(cc[0], dd[0]), max(cc[0], dd[0])
        lo_y, hi_y = min(cc[1], dd[1]), max(cc[1], dd[1])
        for i in range(-((hi_x - xmin) // two) - 1, (xmax - lo_x) // two + 2):
            if hi_x + two * i < xmin or lo_x + two * i > xmax:
                continue
            for j in range(-((hi_y - ymin) // two) - 1, (ymax - lo_y) // two + 2):
                if hi_y + two * j < ymin or lo_y + two * j > ymax:
                    continue
                out.append(((cc[0] + two * i, cc[1] + two * j), (dd[0] + two * i, dd[1] + two * j)))
    return out


def _box(a, b):
    return (min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1]))


# rays from a point to nearby lifts of infinity, tried in this order
_RAY_TARGETS = ((0, 1), (2, 1), (0, -1), (2, 3), (-2, 1), (0, 3))


def winding_point(loop, q):
    """Winding number of a closed loop of cover segments around the pillowcase point q.

    Counts signed crossings of the loop with every G-image of a ray from q
    to a lift of infinity.  Rays that graze a vertex are discarded.
    """
    grid, gq, scale = _to_grid(loop, q)
    fx, fy = math.floor(Fraction(q[0]) / 2), math.floor(Fraction(q[1]) / 2)
    for target in _RAY_TARGETS:
        ray = (gq, ((target[0] + 2 * fx) * scale, (target[1] + 2 * fy) * scale))
        try:
            total = 0
            for a, b in grid:
                for img in _scaled_images(ray, _box(a, b), scale):
                    total += _signed_crossing(a, b, img[0], img[1])
            return total
        except RayDegenerate:
            continue
    raise RayDegenerate(f"every test ray from {q} meets a loop vertex")


def _on_segment(p, a, b):
    if _cross(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _touches(loop, q):
    """Whether some G-image of q lies on the loop."""
    grid, gq, scale = _to_grid(loop, q)
    for a, b in grid:
        for img, _ in _scaled_images((gq, gq), _box(a, b), scale):
            if _on_segment(img, a, b):
                return True
    return False


# --- loops ---------------------------------------------------------------

@dataclass(frozen=True)
class LoopM:
    """A closed loop in the pillowcase, stored as consecutive cover segments."""

    start: int
    end: int
    segments: tuple

    def windings(self, names):
        w = segment_windings(self.segments)
        return {names[k]: w[k] for k in range(3)}


@dataclass(frozen=True)
class LoopConf2:
    """A loop in the configuration space of two points.

    The first point travels along ``path`` while the second sits at
    ``parked``.  With ``swap`` set the two points exchange places once,
    contributing a half twist.  ``nudge`` is a point just to the left of
    the parked one, used in that case to resolve the exchange.
    """

    moving: int
    fixed: int
    path: tuple
    parked: tuple
    swap: bool
    nudge: tuple | None = None

    def check_separation(self):
        # during an exchange the parked point steps aside to the nudge
        if _touches(self.path, self.nudge if self.swap else self.parked):
            raise ComponentsCollide(f"point {self.fixed} lies on the path of point {self.moving}")


def phi(loop, sign=-1):
    """Braid abelianization of a two-point loop: two per full turn, one per exchange."""
    loop.check_separation()
    if not loop.swap:
        return sign * 2 * winding_point(loop.path, loop.parked)
    return sign * (2 * winding_point(loop.path, loop.nudge) - 1)


def winding(loop, puncture):
    """Winding number of a LoopM around one Puncture."""
    return segment_windings(loop.segments)[puncture.position - 1]


# --- the tangle arc ------------------------------------------------------

@dataclass(frozen=True)
class Intersection:
    """A point where the tangle arc meets the axis copies l_A or l_I.

    ``t`` is the parameter along the arc, ``height`` the signed distance
    from the middle of the axis segment, and ``lift`` identifies the cover
    line and unit segment the point lies on.
    """

    t: Fraction
    axis: str
    position: tuple
    height: Fraction
    lift: tuple | None

    @property
    def active(self):
        return self.axis == "A"


def _offset(u, v):
    return Fraction(1, 64 * (u + v) ** 3)


def _tangle_points(u, v, p0, delta):
    at = lambda t: (p0[0] + t * u, p0[1] + t * v)
    pts = []
    for xline in range(math.floor(p0[0]) - 1, p0[0] + u + 2):
        if u == 0 or xline % 2:
            continue
        for off in (-delta, delta):
            t = Fraction(xline + off - p0[0], u)
            if 0 < t < 1:
                x, y = at(t)
                n = math.floor((y + 1) / 2)
                rel = y - 2 * n
                pts.append(Intersection(t, "A", (x, y), rel if off > 0 else -rel, ("A", xline, off, n)))
    for yline in range(math.floor(p0[1]) - 1, p0[1] + v + 2):
        if yline % 2 == 0:
            continue
        for off in (-delta, delta):
            t = Fraction(yline + off - p0[1], v)
            if 0 < t < 1:
                x, y = at(t)
                m = math.floor(x / 2)
                c = 2 * m + 1
                pts.append(Intersection(t, "I", (x, y), (c - x) if off < 0 else (x - c), ("I", yline, off, m)))
    if u == 0:
        # the 0/1 arc runs along the right edge; its one point sits near the top
        pts.append(Intersection(1 - delta, "I", at(1 - delta), delta, None))
    pts.sort(key=lambda p: p.t)
    return pts


@dataclass(frozen=True)
class Curve:
    """The arc alpha of a rational tangle together with its axis intersections."""

    fraction: tuple
    start: tuple
    end: tuple
    points: tuple

    def at(self, t):
        u, v = self.fraction
        return (self.start[0] + t * u, self.start[1] + t * v)


def build_arc(f):
    """Arc of the tangle of fraction u/v, meeting l_A u times and l_I v times."""
    f = as_tangle_fraction(f)
    if f.u == 0:
        # the arc of 0/1 runs along an axis line; there is nothing to intersect
        raise ValueError("the arc is only drawn for u >= 1")
    p0, p1 = arc_endpoints(f)
    pts = _tangle_points(f.u, f.v, p0, _offset(f.u, f.v))
    n_active = sum(p.active for p in pts)
    if (n_active, len(pts) - n_active) != (f.u, f.v):
        raise DimensionMismatch(f"arc of {f} meets the axes {n_active}, {len(pts) - n_active} times")
    return Curve((f.u, f.v), p0, p1, tuple(pts))


def _lift_point(pt, h):
    """Cover point at height h on the same axis segment as pt."""
    kind, line, off, k = pt.lift
    if kind == "A":
        return (line + off, 2 * k + h if off > 0 else 2 * k - h)
    c = 2 * k + 1
    return (c - h if off < 0 else c + h, line + off)


class TangleDiagram:
    """Intersection points of a tangle arc with the axes, ordered along the arc."""

    kind = TANGLE

    def __init__(self, f, sign=-1):
        self.fraction = as_tangle_fraction(f)
        self.sign = sign
        self.arc = build_arc(self.fraction)
        self.punctures = punctures(self.fraction)
        self.state = run_state_machine(continued_fraction(self.fraction))
        self.points = self.arc.points
        self.omega = len(self.points) - 1

    @property
    def names(self):
        return tuple(p.name for p in self.punctures)

    def loop(self, i, j):
        """gamma_{i,j}: along the arc from point i to point j, then back along the axes."""
        a, b = self.points[i], self.points[j]
        segs = [(self.arc.at(a.t), self.arc.at(b.t))]
        if a.axis == b.axis:
            segs.append((b.position, _lift_point(b, a.height)))
        else:
            top_b = max((p for p in self.points if p.axis == b.axis), key=lambda p: p.height)
            top_a = max((p for p in self.points if p.axis == a.axis), key=lambda p: p.height)
            segs.append((b.position, _lift_point(b, top_b.height)))
            segs.append((self.arc.at(top_b.t), self.arc.at(top_a.t)))
            segs.append((top_a.position, _lift_point(top_a, a.height)))
        return LoopM(i, j, tuple(segs))

    def psi(self, i, j):
        w = self.loop(i, j).windings(self.names)
        return {k: self.sign * x for k, x in w.items()}

    def linear_forms(self):
        """Per point: (active, S, A, Q_ii), in arc order."""
        om = self.points[self.omega].axis
        zx = 1 if self.state.middle == XP else 0
        rows = []
        for i, p in enumerate(self.points):
            P = self.psi(i, self.omega)
            dA = 1 if (p.axis == "A" and om == "I") else 0
            dI = 1 if (p.axis == "I" and om == "A") else 0
            rows.append((
                p.active,
                P[XP] + P[XM] + P[Y] + dA - dI,
                2 * P[XP] + zx * (dA - dI),
                P[XM] + P[Y] - 3 * P[XP] + 2 * zx * (dI - dA),
            ))
        return rows


def _point_groups(points):
    """Consecutive runs of companion points lying on one cover line."""
    groups = []
    for i, p in enumerate(points):
        key = (p.axis, p.lift[1]) if p.lift else None
        if groups and key is not None and groups[-1][0] == key:
            groups[-1][1].append(i)
        else:
            groups.append((key, [i]))
    return [xs for _, xs in groups]


# --- closed diagrams -----------------------------------------------------

class _ClosedDiagram:
    """Shared machinery for knot and link diagrams built on a closure band.

    The band runs from the arc start through infinity and back, as the
    line ``base + s (u, v)`` for s in (0, 2), pushed off the lattice by a
    tiny normal offset.  Subclasses place the second curve and the base
    point omega.
    """

    def __init__(self, f, sign=-1, fsign=-1):
        self.fraction = as_tangle_fraction(f)
        u, v = self.fraction.u, self.fraction.v
        self.u, self.v, self.sign, self.fsign = u, v, sign, fsign
        self.kind, _ = classify_closure(self.fraction)
        self.punctures = punctures(self.fraction)
        self.state = run_state_machine(continued_fraction(self.fraction))
        p0, p1 = arc_endpoints(self.fraction)
        self.p0, self.p1 = p0, p1
        self.delta = _offset(u, v)
        self.base = (p0[0] - self.delta * v, p0[1] + self.delta * u)

    @property
    def names(self):
        return tuple(p.name for p in self.punctures)

    def at(self, s):
        return (self.base[0] + s * self.u, self.base[1] + s * self.v)

    def band_parameter(self, x):
        return (x - self.base[0]) / self.u

    def _windings(self, segments):
        w = segment_windings(segments)
        return {self.names[k]: self.sign * w[k] for k in range(3)}

    def psi(self, i, j):
        return self._windings(self.loop(i, j).segments)

    def phi(self, a, c):
        return phi(self.conf2_loop(a, c), self.fsign)

    def _conf2(self, a, c, sa, sc_a, sc_own, closing, eps):
        """Two-point loop: point a runs along the band to c's copy and back; c stays put."""
        fwd = sc_a > sa
        swap = (sc_own < sc_a) if fwd else (sc_own > sc_a)
        A, C = self.at(sa), self.at(sc_a)
        path = ((A, C), (C, closing(C)))
        q = self.at(sc_own)
        nudge = None
        if swap:
            d = (self.u, self.v) if fwd else (-self.u, -self.v)
            nudge = (q[0] - d[1] * eps, q[1] + d[0] * eps)
        return LoopConf2(a, c, path, q, swap, nudge)

    def mu(self):
        return correction_terms(continued_fraction(companion(self.fraction)))

    def forms(self, corrected=True):
        """S, A and Q indexed by band order."""
        n = self.size
        mu = self.mu() if corrected else (0, 0, 0)
        S, A, Q = [], [], [[0] * n for _ in range(n)]
        for i in range(n):
            P = self.psi(i, self.omega)
            S.append(P[XP] + P[XM] + P[Y] + mu[0])
            A.append(2 * P[XP] + mu[1])
            Q[i][i] = P[XM] + P[Y] - 3 * P[XP] + mu[2]
        for i in range(n):
            for j in range(n):
                if i != j:
                    Q[i][j] = Q[i][i] + self.phi(j, i) - 2 * self.psi(j, i)[XP]
        return S, A, Q

    def quiver(self, corrected=True, standard=True):
        S, A, Q = self.forms(corrected)
        for i in range(self.size):
            for j in range(i):
                if Q[i][j] != Q[j][i]:
                    raise DimensionMismatch(f"geometric Q is not symmetric at ({i}, {j})")
        data = QuiverData(
            self.kind,
            tuple(range(self.size)),
            S,
            A,
            Q,
            fraction=(self.u, self.v),
            mu=self.mu(),
            corrected=corrected,
        )
        return data.permuted(self.standard_order()) if standard else data

    def _companion_groups(self):
        comp = TangleDiagram(companion(self.fraction))
        return comp, comp.state.orientation == UP, _point_groups(comp.points)


def _bcoord(y):
    r = y % 2
    return r if r <= 1 else 2 - r


def _y_in_segment(k, b):
    return k + b if k % 2 == 0 else k + 1 - b


class KnotDiagram(_ClosedDiagram):
    """A 2-bridge knot: the band meets the straight curve beta in u points kappa.

    beta lifts to the odd vertical lines.  Two copies of beta, shifted by
    a small amount to either side, carry the two points of a Conf^2 loop.
    """

    def __init__(self, f, sign=-1, fsign=-1):
        super().__init__(f, sign, fsign)
        if self.kind != KNOT:
            raise ValueError(f"{self.fraction} closes to a link")
        if self.names[0] != XM:
            raise DimensionMismatch(f"unexpected puncture labels {self.names}")
        u = self.u
        self.eps = self.delta / 16
        params = []
        for xl in range(self.p0[0], self.p0[0] + 2 * u + 1):
            if xl % 2:
                s = self.band_parameter(xl)
                if 0 < s < 2:
                    params.append(s)
        if len(params) != u:
            raise DimensionMismatch(f"band meets beta {len(params)} times, expected {u}")
        self.kappa = sorted(params)
        self.size = u
        # the base point is the crossing next to X+, halfway round the band
        self.omega = min(range(u), key=lambda i: abs(self.kappa[i] - 1))
        self.b = [_bcoord(self.at(s)[1]) for s in self.kappa]

    def _copy_offset(self, i, top):
        k = math.floor(self.at(self.kappa[i])[1])
        o = self.eps if k % 2 else -self.eps
        return o if top else -o

    def _cross_copy(self, i, o):
        return self.band_parameter(self.at(self.kappa[i])[0] + o)

    def _beta_path(self, s, b):
        x, y = self.at(s)
        return (x, _y_in_segment(math.floor(y), b))

    def loop(self, i, j):
        si = self._cross_copy(i, self._copy_offset(i, True))
        sj = self._cross_copy(j, self._copy_offset(j, True))
        end = self.at(sj)
        return LoopM(i, j, ((self.at(si), end), (end, self._beta_path(sj, _bcoord(self.at(si)[1])))))

    def conf2_loop(self, a, c):
        left = a if self.b[a] < self.b[c] else c
        top = {left: True, (c if left == a else a): False}
        sa = self._cross_copy(a, self._copy_offset(a, top[a]))
        sc_own = self._cross_copy(c, self._copy_offset(c, top[c]))
        sc_a = self._cross_copy(c, self._copy_offset(c, top[a]))
        ba = _bcoord(self.at(sa)[1])
        return self._conf2(a, c, sa, sc_a, sc_own, lambda C: (C[0], _y_in_segment(math.floor(C[1]), ba)), self.eps / 64)

    def standard_order(self):
        """Crossing indices in standard order, matched through the companion tangle.

        Each line of companion points corresponds to one pair of crossings
        at mirror positions on the two halves of the band.  A pair on the
        compressed side contributes both crossings to separate blocks; a
        pair on the other side maps point by point.
        """
        comp, up, groups = self._companion_groups()
        by_p = {}
        for i, s in enumerate(self.kappa):
            p = s if s < 1 else 2 - s
            by_p.setdefault(round(p * self.u), []).append(i)
        kgroups = [by_p[k] for k in sorted(by_p)]
        if len(kgroups) != len(groups):
            raise DimensionMismatch("crossing groups do not line up with the companion points")
        side = lambda i: "L" if self.kappa[i] < 1 else "R"
        pick = lambda ks, sd: next(i for i in ks if side(i) == sd)
        block_l, block_r, single = {}, {}, {}
        for xs, ks in zip(groups, kgroups):
            if len(xs) == 1:
                if self.omega not in ks:
                    raise DimensionMismatch("the lone companion point does not meet the base point")
                single[xs[0]] = self.omega
                continue
            compressed = comp.points[xs[0]].active == up
            for x in xs:
                plus = comp.points[x].height > 0
                if compressed:
                    if plus:
                        block_l[x], block_r[x] = pick(ks, "L"), pick(ks, "R")
                else:
                    single[x] = pick(ks, "L" if plus == up else "R")
        plain = [single[x] for x in sorted(single, key=lambda x: comp.points[x].t)]
        left = [block_l[x] for x in sorted(block_l, key=lambda x: comp.points[x].t)]
        right = [block_r[x] for x in sorted(block_r, key=lambda x: comp.points[x].t)]
        order = right + left + plain if up else plain + left + right
        if sorted(order) != list(range(self.u)):
            raise DimensionMismatch(f"standard order {order} is not a permutation")
        return order


class LinkDiagram(_ClosedDiagram):
    """A 2-bridge link: the second component beta' is a closed curve.

    beta' lifts to vertical lines just beside the odd lines, with a hole
    where it passes around the end of the arc.  The band meets it in 2u
    points lambda.
    """

    def __init__(self, f, sign=-1, fsign=-1):
        super().__init__(f, sign, fsign)
        if self.kind != LINK:
            raise ValueError(f"{self.fraction} closes to a knot")
        if self.names[0] != Y:
            raise DimensionMismatch(f"unexpected puncture labels {self.names}")
        u = self.u
        self.d = self.delta * self.v * 4
        self.e = self.d / 64
        lam = []
        lo, hi = self.base[0], self.base[0] + 2 * u
        for m in range(math.floor(lo) - 2, math.ceil(hi) + 3):
            if m % 2 == 0:
                continue
            for sg in (1, -1):
                x = m + sg * self.d
                if lo < x < hi:
                    lam.append((self.band_parameter(x), m, sg))
        if len(lam) != 2 * u:
            raise DimensionMismatch(f"band meets beta' {len(lam)} times, expected {2 * u}")
        self.lam = sorted(lam)
        self.size = 2 * u
        # of the two crossings flanking the middle of the band, the earlier one
        near = sorted(range(2 * u), key=lambda i: abs(self.lam[i][0] - 1))[:2]
        self.omega = min(near, key=lambda i: self.lam[i][0])
        self.arrow = sorted(range(2 * u), key=self._beta_position)

    def is_front(self, i):
        x, y = self.at(self.lam[i][0])
        return (math.floor(x) + math.floor(y)) % 2 == 0

    def _hole_y(self, c):
        """y residue mod 2 of the hole of beta' on the cover line x = c."""
        off = abs(c - round(c))
        hy = self.p1[1] - off * Fraction(self.v, self.u)
        return hy % 2 if c < round(c) else (-hy) % 2

    @staticmethod
    def _lift_y(pt, c):
        """y residue mod 2 of the lifts of the pillowcase point pt on the line x = c."""
        x, y = pt
        same = round(x) % 2 == round(c) % 2 and (x > round(x)) == (c > round(c))
        return y % 2 if same else (-y) % 2

    def _window_target(self, c, y0, ty):
        """Lift of residue ty on line c reached from y0 without crossing the hole."""
        hy = self._hole_y(c)
        lo = hy + 2 * math.floor((y0 - hy) / 2)
        return lo + ((ty - lo) % 2)

    def _beta_position(self, i):
        """Distance along beta' minus its hole, from the end nearer omega."""
        s, m, sg = self.lam[self.omega]
        c = m + sg * self.d
        y_om = self.at(s)[1]
        hy = self._hole_y(c)
        lo = hy + 2 * math.floor((y_om - hy) / 2)
        y = lo + ((self._lift_y(self.at(self.lam[i][0]), c) - lo) % 2)
        return y - lo if y_om - lo < 1 else lo + 2 - y

    def _line(self, i, dd):
        _, m, sg = self.lam[i]
        return m + sg * dd

    def loop(self, i, j):
        a, b = self.at(self.lam[i][0]), self.at(self.lam[j][0])
        c = self._line(j, self.d)
        end = (c, self._window_target(c, b[1], self._lift_y(a, c)))
        return LoopM(i, j, ((a, b), (b, end)))

    def conf2_loop(self, a, c):
        # the point that comes first along beta' rides the outer copy
        pa, pc = self.arrow.index(a), self.arrow.index(c)
        outer_a = pa < pc
        dd_a = self.d + self.e if outer_a else self.d - self.e
        dd_c = self.d - self.e if outer_a else self.d + self.e
        la = self._line(a, dd_a)
        lc_a = self._line(c, dd_a)
        sa = self.band_parameter(la)
        sc_a = self.band_parameter(lc_a)
        sc_own = self.band_parameter(self._line(c, dd_c))
        ty = self._lift_y(self.at(sa), lc_a)
        return self._conf2(a, c, sa, sc_a, sc_own, lambda C: (lc_a, self._window_target(lc_a, C[1], ty)), self.e / 64)

    def standard_order(self):
        """Crossing indices in standard order, matched through the companion tangle.

        Crossings come in groups of four at mirror positions on the two
        halves of the band, one group per line of companion points.  On
        one side each companion point takes a left/right pair of equal
        front/back status, on the other a front/back pair from one half.
        """
        comp, up, groups = self._companion_groups()
        by_p = {}
        for i, (s, _, _) in enumerate(self.lam):
            p = s if s < 1 else 2 - s
            by_p.setdefault(round(p * self.u / 2), []).append(i)
        lgroups = [by_p[k] for k in sorted(by_p)]
        if len(lgroups) != len(groups):
            raise DimensionMismatch("crossing groups do not line up with the companion points")
        side = lambda i: "L" if self.lam[i][0] < 1 else "R"
        pick = lambda ls, sd, front: next(i for i in ls if side(i) == sd and self.is_front(i) == front)
        assign = {}
        for xs, ls in zip(groups, lgroups):
            across = comp.points[xs[0]].active == up
            if len(xs) == 1:
                if across:
                    first = next(i for i in ls if side(i) == "L")
                    second = next(i for i in ls if side(i) == "R")
                else:
                    if self.omega not in ls:
                        raise DimensionMismatch("the end companion point does not meet the base point")
                    first, second = next(i for i in ls if i != self.omega), self.omega
                assign[xs[0]] = (first, second)
                continue
            for x in xs:
                plus = comp.points[x].height > 0
                if across:
                    front = not plus
                    assign[x] = (pick(ls, "L", front), pick(ls, "R", front))
                else:
                    sd = ("L" if up else "R") if plus else ("R" if up else "L")
                    assign[x] = (pick(ls, sd, up), pick(ls, sd, not up))
        active = [x for x, p in enumerate(comp.points) if p.active]
        inactive = [x for x, p in enumerate(comp.points) if not p.active]
        order = [assign[x][0] for x in active] + [assign[x][1] for x in active]
        order += [assign[x][0] for x in inactive] + [assign[x][1] for x in inactive]
        if sorted(order) != list(range(self.size)):
            raise DimensionMismatch(f"standard order {order} is not a permutation")
        return order


def build_diagram(f, kind=None):
    """Diagram for the tangle, or for its closure when kind is 'Knot' or 'Link'."""
    f = as_tangle_fraction(f)
    if kind == TANGLE:
        return TangleDiagram(f)
    closure, _ = classify_closure(f)
    if kind not in (None, closure):
        raise ValueError(f"{f} closes to a {closure.lower()}, not a {kind.lower()}")
    return KnotDiagram(f) if closure == KNOT else LinkDiagram(f)


def build_loops(diagram):
    """All loops gamma_{i,omega}, keyed by i."""
    return {i: diagram.loop(i, diagram.omega) for i in range(diagram.size)}


def geometric_quiver(f, corrected=True):
    """Quiver data of the knot or link closure, from winding numbers, in standard order."""
    return build_diagram(f).quiver(corrected=corrected)


def tangle_linear_forms(f):
    """(active, S, A, Q_ii) rows of the tangle, active points first, each block in arc order."""
    rows = TangleDiagram(f).linear_forms()
    return [r for r in rows if r[0]] + [r for r in rows if not r[0]]
