"""Exact Laurent polynomials in q and a, and the q-series pieces built from them.

Everything here is immutable.  Coefficients are Python integers, so there is
no overflow; exponents are kept inside the signed 32-bit range and leaving it
raises ``OverflowError``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

_EXP_MIN = -(2**31)
_EXP_MAX = 2**31 - 1


def _check_exponent(e):
    if e < _EXP_MIN or e > _EXP_MAX:
        raise OverflowError(f"exponent {e} outside the 32-bit range")


class LaurentPoly:
    """Integer Laurent polynomial in q and a, stored as {(e_q, e_a): coeff}."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in dict(terms).items():
                if c:
                    eq, ea = int(key[0]), int(key[1])
                    _check_exponent(eq)
                    _check_exponent(ea)
                    clean[(eq, ea)] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, q_exp=0, a_exp=0, coeff=1):
        return cls({(q_exp, a_exp): coeff})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def single_term(self):
        """Return (e_q, e_a, coeff) of a monomial."""
        if len(self._terms) != 1:
            raise ValueError("not a monomial")
        (key, c), = self._terms.items()
        return key[0], key[1], c

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return LaurentPoly._raw({})
        out = {}
        get = out.get
        for (q1, a1), c1 in self._terms.items():
            for (q2, a2), c2 in other._terms.items():
                key = (q1 + q2, a1 + a2)
                out[key] = get(key, 0) + c1 * c2
        out = {k: c for k, c in out.items() if c}
        if out:
            for eq, ea in (min(out), max(out)):
                _check_exponent(eq)
            ea_all = [k[1] for k in out]
            _check_exponent(min(ea_all))
            _check_exponent(max(ea_all))
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            eq, ea, c = self.single_term()
            if c not in (1, -1):
                raise ValueError("monomial is not a unit")
            return LaurentPoly.monomial(-eq, -ea, c) ** (-n)
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, q_exp=0, a_exp=0, sign=1):
        """Multiply by the monomial sign * q^q_exp * a^a_exp."""
        return LaurentPoly(
            {(eq + q_exp, ea + a_exp): sign * c for (eq, ea), c in self._terms.items()}
        )

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def invert_q(self):
        """Substitute q -> q^-1."""
        return LaurentPoly._raw({(-eq, ea): c for (eq, ea), c in self._terms.items()})

    def specialize_a(self, q_power):
        """Substitute a -> q^q_power; the result has no a."""
        out = {}
        for (eq, ea), c in self._terms.items():
            key = (eq + q_power * ea, 0)
            out[key] = out.get(key, 0) + c
        return LaurentPoly({k: c for k, c in out.items() if c})

    def q_degree_range(self):
        qs = [k[0] for k in self._terms]
        return min(qs), max(qs)

    def q_coefficients(self):
        """Map e_q -> LaurentPoly in a alone (stored with e_q = 0)."""
        by_q = {}
        for (eq, ea), c in self._terms.items():
            by_q.setdefault(eq, {})[(0, ea)] = c
        return {eq: LaurentPoly._raw(t) for eq, t in by_q.items()}

    def divmod_q(self, divisor):
        """Long division in q by a polynomial in q alone with unit leading coefficient.

        Returns (quotient, remainder) with the remainder's q-degree span
        shorter than the divisor's.  Coefficients in a ride along.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if any(ea for _, ea in divisor._terms):
            raise ValueError("divisor must not involve a")
        dlow, dhigh = divisor.q_degree_range()
        lead = divisor._terms[(dhigh, 0)]
        if lead not in (1, -1):
            raise ValueError("divisor leading coefficient must be a unit")
        dterms = [(eq - dhigh, c) for (eq, _), c in divisor._terms.items()]
        rem = dict(self._terms)
        quot = {}
        span = dhigh - dlow
        while rem:
            qs = [k[0] for k in rem]
            top, low = max(qs), min(qs)
            if top - low < span:
                break
            shift = top - dhigh
            for ea in [k[1] for k in rem if k[0] == top]:
                c = rem.get((top, ea), 0)
                if not c:
                    continue
                factor = c * lead  # lead is its own inverse
                quot[(shift, ea)] = quot.get((shift, ea), 0) + factor
                for off, dc in dterms:
                    key = (top + off, ea)
                    v = rem.get(key, 0) - factor * dc
                    if v:
                        rem[key] = v
                    else:
                        rem.pop(key, None)
        return LaurentPoly(quot), LaurentPoly._raw(rem)

    def exact_div_q(self, divisor):
        """Exact division by a q-only polynomial; None when it does not divide."""
        quot, rem = self.divmod_q(divisor)
        if not rem.is_zero():
            return None
        return quot

    def sorted_terms(self):
        return sorted((eq, ea, c) for (eq, ea), c in self._terms.items())

    def to_json(self):
        """Canonical form: [[e_q, e_a, "coeff"], ...] sorted by (e_q, e_a)."""
        return [[eq, ea, str(c)] for eq, ea, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data):
        return cls({(int(eq), int(ea)): int(c) for eq, ea, c in data})

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for eq, ea, c in sorted(self.sorted_terms(), key=lambda t: (t[1], t[0])):
            mono = []
            if ea:
                mono.append("a" if ea == 1 else f"a^{ea}")
            if eq:
                mono.append("q" if eq == 1 else f"q^{eq}")
            body = "*".join(mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()


def mono(q_exp=0, a_exp=0, coeff=1):
    return LaurentPoly.monomial(q_exp, a_exp, coeff)


def minus_q_power(n):
    """(-q)^n."""
    return LaurentPoly.monomial(n, 0, -1 if n % 2 else 1)


def pochhammer(x, y, count):
    """(x; y)_count = prod_{i < count} (1 - x y^i) for monomials x, y."""
    x = LaurentPoly._coerce(x)
    y = LaurentPoly._coerce(y)
    result = ONE
    factor = x
    for _ in range(count):
        result = result * (ONE - factor)
        factor = factor * y
    return result


@lru_cache(maxsize=None)
def q2_pochhammer(n):
    """(q^2; q^2)_n."""
    if n == 0:
        return ONE
    return q2_pochhammer(n - 1) * (ONE - mono(2 * n))


@lru_cache(maxsize=None)
def qbinomial(n, k):
    """[n; k]_+ with the Pascal rule [n;k] = [n-1;k-1] + q^{2k}[n-1;k]."""
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return qbinomial(n - 1, k - 1) + qbinomial(n - 1, k).shift(2 * k)


def qbinomial_neg(n, k):
    """[n; k]_- : the plus binomial with q replaced by q^-1."""
    if k < 0 or k > n:
        raise ValueError(f"binomial lower index {k} outside 0..{n}")
    return qbinomial(n, k).invert_q()


@lru_cache(maxsize=None)
def _qmultinomial(parts):
    total = 0
    result = ONE
    for d in parts:
        total += d
        if d:
            result = result * qbinomial(total, d)
    return result


def qmultinomial(parts):
    """(q^2;q^2)_{sum d} / prod (q^2;q^2)_{d_i}, built as a product of binomials."""
    parts = tuple(int(d) for d in parts)
    if any(d < 0 for d in parts):
        raise ValueError("multinomial parts must be non-negative")
    return _qmultinomial(tuple(d for d in parts if d))


def qmultinomial_by_division(parts):
    """Same value as ``qmultinomial`` but by dividing Pochhammer symbols."""
    parts = tuple(parts)
    num = q2_pochhammer(sum(parts))
    for d in parts:
        num = num.exact_div_q(q2_pochhammer(d))
        if num is None:
            raise ArithmeticError("quantum multinomial division was not exact")
    return num


def compositions(total, parts):
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class QSeriesRatio:
    """numerator / (q^2;q^2)_denom_index, compared by cross-multiplication."""

    __slots__ = ("numerator", "denom_index")

    def __init__(self, numerator, denom_index=0):
        if denom_index < 0:
            raise ValueError("denominator index must be non-negative")
        self.numerator = LaurentPoly._coerce(numerator)
        self.denom_index = int(denom_index)

    def lift(self, n):
        """Equal ratio written over (q^2;q^2)_n, n >= denom_index."""
        if n < self.denom_index:
            raise ValueError("can only lift to a larger denominator")
        factor = ONE
        for i in range(self.denom_index + 1, n + 1):
            factor = factor * (ONE - mono(2 * i))
        return QSeriesRatio(self.numerator * factor, n)

    def __eq__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            other = QSeriesRatio(other)
        if not isinstance(other, QSeriesRatio):
            return NotImplemented
        n = max(self.denom_index, other.denom_index)
        return self.lift(n).numerator == other.lift(n).numerator

    def __hash__(self):
        return hash(self.reduce().numerator) ^ self.reduce().denom_index

    def __add__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            other = QSeriesRatio(other)
        n = max(self.denom_index, other.denom_index)
        return QSeriesRatio(self.lift(n).numerator + other.lift(n).numerator, n)

    __radd__ = __add__

    def __neg__(self):
        return QSeriesRatio(-self.numerator, self.denom_index)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, poly):
        return QSeriesRatio(self.numerator * poly, self.denom_index)

    def __mul__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            return self.scale(LaurentPoly._coerce(other))
        return NotImplemented

    __rmul__ = __mul__

    def reduce(self):
        """Cancel factors (1 - q^{2n}) from the top of the denominator while they divide."""
        num, n = self.numerator, self.denom_index
        while n > 0:
            quot = num.exact_div_q(ONE - mono(2 * n))
            if quot is None:
                break
            num, n = quot, n - 1
        return QSeriesRatio(num, n)

    def as_poly(self):
        """The exact Laurent polynomial value, or None when it is not one."""
        red = self.reduce()
        return red.numerator if red.denom_index == 0 else None

    def invert_q(self):
        # (q^-2;q^-2)_n = (-1)^n q^{-n(n+1)} (q^2;q^2)_n
        n = self.denom_index
        sign = -1 if n % 2 else 1
        return QSeriesRatio(self.numerator.invert_q().shift(n * (n + 1), 0, sign), n)

    def to_json(self):
        return {"numerator": self.numerator.to_json(), "denom_index": self.denom_index}

    def __repr__(self):
        if self.denom_index == 0:
            return repr(self.numerator)
        return f"({self.numerator}) / (q^2;q^2)_{self.denom_index}"


def split_index_identity_check(x, d):
    """Check the index-splitting identity for monomial x and tuple d.

    Both sides are multiplied by prod (q^2;q^2)_{d_i}, which clears every
    denominator on the right because (q^2;q^2)_alpha (q^2;q^2)_beta divides
    (q^2;q^2)_{alpha+beta}.
    """
    x = LaurentPoly._coerce(x)
    d = tuple(d)
    x2 = x * x
    lhs = pochhammer(x2, mono(2), sum(d))
    step = -(x2 * mono(-1))
    rhs = ZERO
    for alphas in itertools.product(*(range(di + 1) for di in d)):
        exponent = sum(al * al for al in alphas)
        prefix = 0
        for i in range(1, len(d)):
            prefix += d[i - 1]
            exponent += 2 * alphas[i] * prefix
        term = step ** sum(alphas) * mono(exponent)
        for di, al in zip(d, alphas):
            term = term * qbinomial(di, al)
        rhs = rhs + term
    return lhs == rhs
