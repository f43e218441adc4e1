"""Exact arithmetic in Q(beta) for rational and real algebraic bases.

A base is given either as a rational number or as a real root of an
integer polynomial together with a rational isolating interval.  The
polynomial is reduced to the irreducible factor carrying the root, so
elements of Q(beta) have a canonical coefficient vector and an element is
zero exactly when every coefficient is zero.  Signs and floors of nonzero
elements are then decided by refining interval enclosures, which always
terminates.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

import sympy

from .errors import AmbiguousFloor, OutOfRange, ParseError
from .highreal import DEFAULT_PREC, HighReal

#: extra precision doublings tried before a sign/floor decision gives up
PRECISION_DOUBLINGS = 4

_POLY_RE = re.compile(r"^\s*poly:\s*\[([^\]]*)\]\s*@\s*\[([^\],]+),([^\]]+)\]\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, an integer or a decimal literal into an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational or decimal literal: {text!r}") from exc


def _bitsize(q: Fraction) -> int:
    return max(q.numerator.bit_length(), q.denominator.bit_length())


class Beta:
    """A real number field generator ``beta > 1`` with exact arithmetic."""

    def __init__(self, poly, lo: Fraction, hi: Fraction, label: str | None = None):
        # poly: monic, ascending, irreducible over Q, single root in [lo, hi]
        self.poly = tuple(Fraction(c) for c in poly)
        self.degree = len(self.poly) - 1
        self._lo = Fraction(lo)
        self._hi = Fraction(hi)
        den = math.lcm(*(c.denominator for c in self.poly))
        self._ipoly = [int(c * den) for c in self.poly]
        self._enc_cache: dict[int, HighReal] = {}
        self.label = label or self._default_label()
        # x^(d+j) reduced to the power basis, for j = 0 .. d-2
        d = self.degree
        red = []
        cur = [-c for c in self.poly[:-1]]
        for _ in range(max(d - 1, 0)):
            red.append(tuple(cur))
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            nxt = [nxt[i] - top * self.poly[i] for i in range(d)]
            cur = nxt
        self._reduce = red
        if self.degree == 1:
            self._rational = -self.poly[0]
        else:
            self._rational = None
        if not self.enclosure(64).certainly_gt(1):
            if self.degree == 1 and self._rational <= 1:
                raise OutOfRange(f"beta must exceed 1, got {self._rational}")
            if self.degree > 1 and self.enclosure(256).certainly_le(1):
                raise OutOfRange("beta must exceed 1")

    # construction
    @classmethod
    def rational(cls, value) -> "Beta":
        q = Fraction(value)
        return cls((-q, Fraction(1)), q, q, label=str(q))

    @classmethod
    def from_poly(cls, coeffs, lo, hi, label=None) -> "Beta":
        """Root of ``sum coeffs[i] x^i`` isolated in ``[lo, hi]``."""
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ParseError("isolating interval has lo > hi")
        x = sympy.Symbol("x")
        expr = sum(sympy.Rational(str(Fraction(c))) * x ** i for i, c in enumerate(coeffs))
        p = sympy.Poly(expr, x, domain="QQ")
        if p.is_zero or p.degree() < 1:
            raise ParseError("polynomial must have positive degree")
        slo, shi = sympy.Rational(str(lo)), sympy.Rational(str(hi))
        candidates = []
        for fac, _ in p.factor_list()[1]:
            fac = sympy.Poly(fac, x, domain="QQ")
            n = fac.count_roots(slo, shi)
            if n:
                candidates.append((fac, n))
        if not candidates:
            raise ParseError(f"no root of the polynomial in [{lo}, {hi}]")
        if len(candidates) > 1 or candidates[0][1] != 1:
            raise ParseError(f"interval [{lo}, {hi}] does not isolate a single root")
        fac = candidates[0][0].monic()
        asc = [Fraction(str(c)) for c in reversed(fac.all_coeffs())]
        if len(asc) == 2:
            return cls.rational(-asc[0])
        return cls(asc, lo, hi, label=label)

    @classmethod
    def parse(cls, spec) -> "Beta":
        """Parse ``p/q``, a decimal literal or ``poly:[c0,...,cn]@[lo,hi]``."""
        if isinstance(spec, Beta):
            return spec
        if isinstance(spec, HighReal):
            # interval input is pinned to its exact midpoint
            return cls.rational(spec.mid_fraction())
        if isinstance(spec, (int, Rational)):
            return cls.rational(spec)
        if isinstance(spec, float):
            return cls.rational(parse_rational(repr(spec)))
        if not isinstance(spec, str):
            raise ParseError(f"cannot interpret {spec!r} as a base")
        m = _POLY_RE.match(spec)
        if m:
            try:
                coeffs = [Fraction(c.strip()) for c in m.group(1).split(",") if c.strip()]
                lo, hi = Fraction(m.group(2).strip()), Fraction(m.group(3).strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad polynomial literal {spec!r}") from exc
            return cls.from_poly(coeffs, lo, hi, label=spec.strip())
        if spec.strip().startswith("poly"):
            raise ParseError(f"bad polynomial literal {spec!r}")
        return cls.rational(parse_rational(spec))

    def _default_label(self):
        if self.degree == 1:
            return str(-self.poly[0])
        coeffs = ",".join(str(c) for c in self.poly)
        return f"poly:[{coeffs}]@[{self._lo},{self._hi}]"

    # numeric views
    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self) -> Fraction:
        if self._rational is None:
            raise ValueError("beta is irrational")
        return self._rational

    def _sign_at(self, x: Fraction) -> int:
        # sign of the integer-scaled polynomial at a rational point
        p, q = x.numerator, x.denominator
        d = self.degree
        total = sum(c * p ** i * q ** (d - i) for i, c in enumerate(self._ipoly))
        return (total > 0) - (total < 0)

    def enclosure(self, prec: int = DEFAULT_PREC) -> HighReal:
        if self._rational is not None:
            return HighReal.exact(self._rational, prec)
        cached = self._enc_cache.get(prec)
        if cached is not None:
            return cached
        target = Fraction(1, 2 ** (prec + 2))
        s_lo = self._sign_at(self._lo)
        if s_lo == 0:
            self._hi = self._lo
        while self._hi - self._lo > target:
            mid = (self._lo + self._hi) / 2
            s = self._sign_at(mid)
            if s == 0:
                self._lo = self._hi = mid
                break
            if s == s_lo:
                self._lo = mid
            else:
                self._hi = mid
        enc = HighReal(self._lo, self._hi, prec)
        self._enc_cache[prec] = enc
        return enc

    def __float__(self):
        return float(self.enclosure(64))

    @property
    def floor(self) -> int:
        return self.gen.floor()

    def same_as(self, other: "Beta") -> bool:
        """Whether ``other`` generates the same field with the same root."""
        if other is self:
            return True
        if other.poly != self.poly:
            return False
        if self.degree == 1:
            return True
        # each isolating interval holds one root; a root inside the overlap is both
        lo, hi = max(self._lo, other._lo), min(self._hi, other._hi)
        if lo > hi:
            return False

        def p(x):
            return sum(c * x ** i for i, c in enumerate(self.poly))

        return p(lo) * p(hi) <= 0

    # field elements
    def elem(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field is self:
                return value
            if not self.same_as(value.field):
                raise ValueError("element belongs to a different field")
            return FieldElem(self, value.c)
        c = [Fraction(0)] * self.degree
        c[0] = Fraction(value)
        return FieldElem(self, tuple(c))

    @property
    def zero(self) -> "FieldElem":
        return self.elem(0)

    @property
    def one(self) -> "FieldElem":
        return self.elem(1)

    @property
    def gen(self) -> "FieldElem":
        if self.degree == 1:
            return self.elem(self._rational)
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return FieldElem(self, tuple(c))

    def _mul(self, a, b):
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for j, coef in enumerate(prod[d:]):
            if coef:
                row = self._reduce[j]
                for i in range(d):
                    out[i] += coef * row[i]
        return tuple(out)

    def _inverse(self, a):
        d = self.degree
        if d == 1:
            return (1 / a[0],)
        # columns: a * x^j in the power basis; solve M y = e0
        cols = []
        cur = a
        xg = self.gen.c
        for _ in range(d):
            cols.append(cur)
            cur = self._mul(cur, xg)
        m = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            pv = m[col][col]
            m[col] = [v / pv for v in m[col]]
            for r in range(d):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [vr - f * vc for vr, vc in zip(m[r], m[col])]
        return tuple(m[i][d] for i in range(d))

    def __repr__(self):
        return f"Beta({self.label})"

    def __str__(self):
        return self.label


class FieldElem:
    """An exact element of Q(beta), stored in the power basis."""

    __slots__ = ("field", "c", "_enc")

    def __init__(self, field: Beta, coeffs):
        self.field = field
        self.c = coeffs
        self._enc = None

    def _lift(self, other):
        if isinstance(other, FieldElem):
            return other
        if isinstance(other, (int, Rational)):
            return self.field.elem(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return FieldElem(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return FieldElem(self.field, tuple(a * other for a in self.c))
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._mul(self.c, o.c))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(beta)")
        return FieldElem(self.field, self.field._inverse(self.c))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return FieldElem(self.field, tuple(a / other for a in self.c))
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is irrational")
        return self.c[0]

    # numeric
    def enclosure(self, prec: int = DEFAULT_PREC) -> HighReal:
        if self.is_rational():
            return HighReal.exact(self.c[0], prec)
        if self._enc is not None and self._enc.prec >= prec:
            return self._enc
        b = self.field.enclosure(prec)
        v = HighReal.exact(self.c[-1], prec)
        for coef in reversed(self.c[:-1]):
            v = v * b + HighReal.exact(coef, prec)
        self._enc = v
        return v

    def _start_prec(self) -> int:
        return DEFAULT_PREC + max(_bitsize(x) for x in self.c)

    def sign(self) -> int:
        if self.is_rational():
            x = self.c[0]
            return (x > 0) - (x < 0)
        prec = self._start_prec()
        for _ in range(PRECISION_DOUBLINGS + 1):
            e = self.enclosure(prec)
            if e.certainly_gt(0):
                return 1
            if e.certainly_lt(0):
                return -1
            prec *= 2
        raise AmbiguousFloor("sign undecided at the precision cap")

    def floor(self) -> int:
        if self.is_rational():
            return math.floor(self.c[0])
        prec = self._start_prec()
        for _ in range(PRECISION_DOUBLINGS + 1):
            e = self.enclosure(prec)
            a, b = math.floor(e.lo_fraction()), math.floor(e.hi_fraction())
            if a == b:
                return a
            if b == a + 1 and (self - b).is_zero():
                return b
            prec *= 2
        raise AmbiguousFloor("floor undecided at the precision cap")

    def _cmp(self, other) -> int:
        o = self._lift(other)
        if self.is_rational() and o.is_rational():
            x, y = self.c[0], o.c[0]
            return (x > y) - (x < y)
        a, b = self.enclosure(64), o.enclosure(64)
        if a.certainly_lt(b):
            return -1
        if a.certainly_gt(b):
            return 1
        return (self - o).sign()

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.c == o.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.enclosure(64))

    def __repr__(self):
        if self.is_rational():
            return f"FieldElem({self.c[0]})"
        return f"FieldElem({self})"

    def __str__(self):
        if self.is_rational():
            return str(self.c[0])
        terms = []
        for i, a in enumerate(self.c):
            if a:
                terms.append(str(a) if i == 0 else f"{a}*b" + (f"^{i}" if i > 1 else ""))
        return " + ".join(terms) or "0"


def as_beta(value) -> Beta:
    return Beta.parse(value)
