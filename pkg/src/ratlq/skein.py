"""Skein evaluation of rational tangles on the UP/OP/RI web bases at t = -1.

A tangle at color j is a vector of coefficients C_0..C_j against the basis
webs X[j, k] of its orientation.  Top and right twists act by the six
triangular rules below; the closure formulas then turn the vector for
τ_{(u-v)/v} into the colored invariant of the numerator closure of
Tτ_{(u-v)/v}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    ONE,
    ZERO,
    QSeriesRatio,
    minus_q_power,
    mono,
    pochhammer,
    q2_pochhammer,
    qbinomial,
    qbinomial_neg,
)
from .errors import NonPolynomialKnotValue
from .tangles import (
    OP,
    RI,
    UP,
    as_tangle_fraction,
    companion,
    continued_fraction,
    is_knot,
)

# orientation reached after each twist
_TARGET = {
    ("T", UP): UP,
    ("T", OP): RI,
    ("T", RI): OP,
    ("R", UP): OP,
    ("R", OP): UP,
    ("R", RI): RI,
}


@dataclass(frozen=True)
class WebVector:
    color: int
    orientation: str
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.color + 1:
            raise ValueError("a color-j web vector has j+1 coefficients")

    def __add__(self, other):
        if (self.color, self.orientation) != (other.color, other.orientation):
            raise ValueError("web vectors live in different spaces")
        return WebVector(
            self.color, self.orientation, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )


def initial_web(j):
    """The trivial tangle: UP[j, 0]."""
    return WebVector(j, UP, (ONE,) + (ZERO,) * j)


def basis_web(j, orientation, k):
    coeffs = [ZERO] * (j + 1)
    coeffs[k] = ONE
    return WebVector(j, orientation, tuple(coeffs))


@lru_cache(maxsize=None)
def twist_coefficient(letter, orientation, j, k, h):
    """Coefficient of the target basis web [j, h] in the twist of X[j, k]."""
    sign_q = minus_q_power(h)
    if letter == "T":
        if h < k:
            return ZERO
        binom = qbinomial(h, k)
        if orientation == UP:
            return sign_q * binom.shift(k * k)
        if orientation == OP:
            return sign_q * binom.shift(k * (k - 2 * j), k)
        return sign_q * binom.shift(k * k - 2 * h * j, h)
    if h > k:
        return ZERO
    binom = qbinomial_neg(j - h, k - h)
    if orientation == UP:
        return sign_q * binom.shift(k * (2 * j - k) - 2 * h * j, h)
    if orientation == OP:
        return sign_q * binom.shift(-k * k, k)
    return sign_q * binom.shift(-k * (k - 2 * j))


def apply_twist(web, letter):
    j = web.color
    target = _TARGET[(letter, web.orientation)]
    new = []
    for h in range(j + 1):
        total = ZERO
        for k, c in enumerate(web.coeffs):
            if not c.is_zero():
                coeff = twist_coefficient(letter, web.orientation, j, k, h)
                if not coeff.is_zero():
                    total = total + c * coeff
        new.append(total)
    return WebVector(j, target, tuple(new))


def evaluate_word(word, j):
    web = initial_web(j)
    for letter in word.applied():
        web = apply_twist(web, letter)
    return web


def evaluate_tangle(f, j):
    return evaluate_word(continued_fraction(f), j)


@lru_cache(maxsize=None)
def closure_term(orientation, j, k):
    """Cl(T X[j, k]) written over the universal denominator (q^2;q^2)_j."""
    if orientation == UP:
        head = minus_q_power(k) * mono(2 * k * k) * qbinomial(j, k)
        poch = pochhammer(mono(2 - 2 * j - 2 * k, 2), mono(2), k)
        free = j - k
    elif orientation == RI:
        m = j - k
        head = minus_q_power(k - j) * mono(2 * m * m, -2 * m) * qbinomial(j, k)
        poch = pochhammer(mono(2 - 2 * j - 2 * m, 2), mono(2), m)
        free = k
    else:
        raise ValueError("closures are only taken of UP or RI tangles")
    # 1/(q^2;q^2)_n = [j; n] (q^2;q^2)_{j-n} / (q^2;q^2)_j with n = j - free
    return head * poch * qbinomial(j, free) * q2_pochhammer(free)


def closure_value(web):
    j = web.color
    total = ZERO
    for k, c in enumerate(web.coeffs):
        if not c.is_zero():
            total = total + c * closure_term(web.orientation, j, k)
    return QSeriesRatio(total, j)


def homfly(f, j):
    """Colored invariant of the numerator closure: a LaurentPoly for knots, a ratio for links."""
    f = as_tangle_fraction(f)
    ratio = closure_value(evaluate_tangle(companion(f), j))
    if not is_knot(f):
        return ratio
    poly = ratio.as_poly()
    if poly is None:
        raise NonPolynomialKnotValue(f"{f} at color {j} did not reduce")
    return poly
