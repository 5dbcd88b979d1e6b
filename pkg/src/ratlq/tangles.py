"""Rational tangles: fractions, twist words, and the orientation automaton."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction as _Fraction

UP, OP, RI = "UP", "OP", "RI"
XP, XM, Y = "X+", "X-", "Y"

TWIST_CLASSES = ("TUP", "TRI", "TOP+", "TOP-", "RUP", "RRI", "ROP+", "ROP-")


@dataclass(frozen=True)
class TangleFraction:
    u: int
    v: int

    def __post_init__(self):
        if self.u < 0 or self.v < 1:
            raise ValueError(f"{self.u}/{self.v} is not a positive fraction")
        if math.gcd(self.u, self.v) != 1:
            raise ValueError(f"{self.u}/{self.v} is not reduced")

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*(\d+)\s*/\s*(\d+)\s*", str(text))
        if not m:
            raise ValueError(f"cannot parse fraction {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def as_fraction(self):
        return _Fraction(self.u, self.v)

    def __str__(self):
        return f"{self.u}/{self.v}"


def as_tangle_fraction(f):
    if isinstance(f, TangleFraction):
        return f
    if isinstance(f, tuple):
        return TangleFraction(*f)
    if isinstance(f, _Fraction):
        return TangleFraction(f.numerator, f.denominator)
    return TangleFraction.parse(f)


def apply_letter(u, v, letter):
    """T: u/v -> (u+v)/v, R: u/v -> u/(u+v)."""
    if letter == "T":
        return u + v, v
    if letter == "R":
        return u, u + v
    raise ValueError(f"unknown twist {letter!r}")


@dataclass(frozen=True)
class TwistWord:
    """Letters in printed order; the rightmost letter is applied first."""

    letters: tuple

    def applied(self):
        return tuple(reversed(self.letters))

    def fraction(self):
        u, v = 0, 1
        for letter in self.applied():
            u, v = apply_letter(u, v, letter)
        return TangleFraction(u, v)

    def compact(self):
        """Run-length form such as 'T2RT', printed left to right."""
        out = []
        for letter in self.letters:
            if out and out[-1][0] == letter:
                out[-1][1] += 1
            else:
                out.append([letter, 1])
        return "".join(l if n == 1 else f"{l}{n}" for l, n in out)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "".join(self.letters)


def continued_fraction(f):
    """Canonical twist word for u/v (odd-length expansion when u/v >= 1)."""
    f = as_tangle_fraction(f)
    u, v = f.u, f.v
    applied = []
    # undo twists from the outside in: the last applied letter is determined by u > v
    while u != 0:
        if u >= v:
            applied.append("T")
            u -= v
        else:
            applied.append("R")
            v -= u
    if v != 1:
        raise ValueError(f"{f} is not reduced")
    # applied holds letters outermost first, which is the printed order
    return TwistWord(tuple(applied))


@dataclass(frozen=True)
class TangleState:
    orientation: str
    puncture_order: tuple

    @property
    def middle(self):
        return self.puncture_order[1]

    def __str__(self):
        return f"({self.orientation}, {'|'.join(self.puncture_order)})"


INITIAL_STATE = TangleState(UP, (Y, XM, XP))

# The hexagon: T swaps the left and middle punctures, R swaps middle and right.
_STATES = {
    "A": TangleState(UP, (Y, XM, XP)),
    "B": TangleState(UP, (XM, Y, XP)),
    "C": TangleState(OP, (Y, XP, XM)),
    "D": TangleState(OP, (XM, XP, Y)),
    "E": TangleState(RI, (XP, Y, XM)),
    "F": TangleState(RI, (XP, XM, Y)),
}
_NAME = {state: name for name, state in _STATES.items()}
_T_MOVE = {"A": "B", "B": "A", "D": "F", "F": "D", "C": "E", "E": "C"}
_R_MOVE = {"B": "D", "D": "B", "F": "E", "E": "F", "A": "C", "C": "A"}


def next_state(state, letter):
    name = _NAME[state]
    table = _T_MOVE if letter == "T" else _R_MOVE
    return _STATES[table[name]]


def state_label(state):
    """Single-letter name of a hexagon vertex (A is the trivial tangle)."""
    return _NAME[state]


def run_state_machine(word):
    state = INITIAL_STATE
    for letter in word.applied():
        state = next_state(state, letter)
    return state


def twist_sequence(word):
    """Yield (class name, state before, fraction before) for every applied letter."""
    state = INITIAL_STATE
    u, v = 0, 1
    for letter in word.applied():
        cls = letter + state.orientation
        if state.orientation == OP:
            cls += "+" if u > v else "-"
        yield cls, state, (u, v)
        state = next_state(state, letter)
        u, v = apply_letter(u, v, letter)


def twist_type_counts(word):
    counts = dict.fromkeys(TWIST_CLASSES, 0)
    for cls, _, _ in twist_sequence(word):
        counts[cls] += 1
    return counts


def _require_closable(f):
    f = as_tangle_fraction(f)
    if f.u <= f.v:
        raise ValueError(f"closure needs u/v > 1, got {f}")
    if run_state_machine(continued_fraction(f)).orientation == RI:
        raise ValueError(f"τ_{f} has RI orientation; its numerator closure is not oriented compatibly")
    return f


def is_closable(f):
    """u/v > 1 and τ_{u/v} is UP or OP, so the numerator closure is oriented."""
    f = as_tangle_fraction(f)
    return f.u > f.v and run_state_machine(continued_fraction(f)).orientation != RI


def is_knot(f):
    return _require_closable(f).u % 2 == 1


def companion(f):
    """τ_{(u-v)/v}: the tangle whose top twist closes up to the given fraction."""
    f = _require_closable(f)
    return TangleFraction(f.u - f.v, f.v)


def classify_closure(f):
    """('Knot' or 'Link', orientation of the companion tangle)."""
    f = _require_closable(f)
    kind = "Knot" if f.u % 2 else "Link"
    orientation = run_state_machine(continued_fraction(companion(f))).orientation
    return kind, orientation


def signature(f):
    """1 + #RRI - #TUP over the twist word of τ_{u/v}."""
    f = _require_closable(f)
    if f.u % 2 == 0:
        raise ValueError(f"{f} closes to a link, not a knot")
    counts = twist_type_counts(continued_fraction(f))
    return 1 + counts["RRI"] - counts["TUP"]


def correction_terms(word):
    """(mu1, mu2, mu3) from the twist classes of the companion word."""
    c = twist_type_counts(word)
    mu1 = c["TOP+"] + c["TOP-"] + c["TRI"] - c["TUP"] - c["RUP"] - c["ROP+"] - c["ROP-"]
    mu2 = c["TRI"] + c["TOP+"] - c["ROP-"] - c["RUP"]
    mu3 = c["RUP"] + c["ROP-"] - c["TOP+"] - c["TRI"] - c["RRI"]
    return mu1, mu2, mu3


def admissible_fractions(max_sum):
    """All closable reduced u/v > 1 with u + v <= max_sum."""
    out = []
    for total in range(3, max_sum + 1):
        for v in range(1, total):
            u = total - v
            if u > v and math.gcd(u, v) == 1 and is_closable((u, v)):
                out.append(TangleFraction(u, v))
    return out
