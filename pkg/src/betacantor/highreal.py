"""Outward-rounded interval scalars on top of mpmath's binary floats.

A :class:`HighReal` stores a closed interval ``[lo, hi]`` whose endpoints
are raw mpmath floats rounded away from the enclosed value, so every
arithmetic result contains the exact result of the same operation applied
to any points of the operands.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from mpmath import libmp, mp

DEFAULT_PREC = 128

_F = libmp.round_floor
_C = libmp.round_ceiling


def _raw(value, prec, rnd):
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int):
        return libmp.from_int(value, prec, rnd)
    if isinstance(value, Rational):
        return libmp.from_rational(int(value.numerator), int(value.denominator), prec, rnd)
    if isinstance(value, float):
        return libmp.from_float(value, prec, rnd)
    if isinstance(value, str):
        return _raw(Fraction(value), prec, rnd)
    if hasattr(value, "_mpf_"):
        return libmp.mpf_pos(value._mpf_, prec, rnd)
    raise TypeError(f"cannot convert {type(value).__name__} to HighReal")


def _to_fraction(raw) -> Fraction:
    p, q = libmp.to_rational(raw)
    return Fraction(int(p), int(q))


class HighReal:
    """A closed real interval with outward rounding.

    ``mid``, ``rad`` and ``prec`` give the midpoint-radius view; ``lo`` and
    ``hi`` the endpoint view.
    """

    __slots__ = ("_lo", "_hi", "prec")

    def __init__(self, lo, hi=None, prec: int = DEFAULT_PREC):
        if hi is None:
            hi = lo
        self.prec = prec
        self._lo = lo if isinstance(lo, tuple) else _raw(lo, prec, _F)
        self._hi = hi if isinstance(hi, tuple) else _raw(hi, prec, _C)
        if libmp.mpf_gt(self._lo, self._hi):
            raise ValueError("HighReal requires lo <= hi")

    @classmethod
    def exact(cls, value, prec: int = DEFAULT_PREC) -> "HighReal":
        return cls(_raw(value, prec, _F), _raw(value, prec, _C), prec)

    @classmethod
    def from_mid_rad(cls, mid, rad, prec: int = DEFAULT_PREC) -> "HighReal":
        m = HighReal.exact(mid, prec)
        r = abs(_to_fraction(_raw(rad, prec, _C)))
        return cls(libmp.mpf_sub(m._lo, _raw(r, prec, _C), prec, _F),
                   libmp.mpf_add(m._hi, _raw(r, prec, _C), prec, _C), prec)

    def _wrap(self, lo, hi, prec=None) -> "HighReal":
        out = object.__new__(HighReal)
        out._lo, out._hi, out.prec = lo, hi, prec or self.prec
        return out

    # views
    @property
    def lo(self):
        return mp.make_mpf(self._lo)

    @property
    def hi(self):
        return mp.make_mpf(self._hi)

    @property
    def mid(self):
        return mp.make_mpf(libmp.mpf_shift(libmp.mpf_add(self._lo, self._hi, self.prec + 2), -1))

    @property
    def rad(self):
        m = libmp.mpf_shift(libmp.mpf_add(self._lo, self._hi, self.prec + 2), -1)
        a = libmp.mpf_sub(m, self._lo, self.prec, _C)
        b = libmp.mpf_sub(self._hi, m, self.prec, _C)
        return mp.make_mpf(a if libmp.mpf_ge(a, b) else b)

    @property
    def width(self):
        return mp.make_mpf(libmp.mpf_sub(self._hi, self._lo, self.prec, _C))

    def lo_fraction(self) -> Fraction:
        return _to_fraction(self._lo)

    def hi_fraction(self) -> Fraction:
        return _to_fraction(self._hi)

    def mid_fraction(self) -> Fraction:
        return (self.lo_fraction() + self.hi_fraction()) / 2

    def __float__(self) -> float:
        return float(self.mid)

    # arithmetic
    def _coerce(self, other) -> "HighReal":
        if isinstance(other, HighReal):
            return other
        if hasattr(other, "enclosure"):
            return other.enclosure(self.prec)
        return HighReal.exact(other, self.prec)

    def _p(self, other):
        return max(self.prec, other.prec)

    def __add__(self, other):
        o = self._coerce(other)
        p = self._p(o)
        return self._wrap(libmp.mpf_add(self._lo, o._lo, p, _F), libmp.mpf_add(self._hi, o._hi, p, _C), p)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(libmp.mpf_neg(self._hi), libmp.mpf_neg(self._lo))

    def __sub__(self, other):
        o = self._coerce(other)
        p = self._p(o)
        return self._wrap(libmp.mpf_sub(self._lo, o._hi, p, _F), libmp.mpf_sub(self._hi, o._lo, p, _C), p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = self._p(o)
        pairs = [(a, b) for a in (self._lo, self._hi) for b in (o._lo, o._hi)]
        los = [libmp.mpf_mul(a, b, p, _F) for a, b in pairs]
        his = [libmp.mpf_mul(a, b, p, _C) for a, b in pairs]
        return self._wrap(min(los, key=mp.make_mpf), max(his, key=mp.make_mpf), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.contains(0):
            raise ZeroDivisionError("HighReal division by an interval containing 0")
        p = self._p(o)
        pairs = [(a, b) for a in (self._lo, self._hi) for b in (o._lo, o._hi)]
        los = [libmp.mpf_div(a, b, p, _F) for a, b in pairs]
        his = [libmp.mpf_div(a, b, p, _C) for a, b in pairs]
        return self._wrap(min(los, key=mp.make_mpf), max(his, key=mp.make_mpf), p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("HighReal only supports integer powers; use exp/log")
        if n < 0:
            return HighReal.exact(1, self.prec) / (self ** (-n))
        result = HighReal.exact(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result

    def square(self) -> "HighReal":
        if self.contains(0):
            m = max(abs(self.lo), abs(self.hi))
            return self._wrap(libmp.fzero, libmp.mpf_mul(m._mpf_, m._mpf_, self.prec, _C))
        return self * self

    def __abs__(self):
        if libmp.mpf_ge(self._lo, libmp.fzero):
            return self
        if libmp.mpf_le(self._hi, libmp.fzero):
            return -self
        return self._wrap(libmp.fzero, max(self._hi, libmp.mpf_neg(self._lo), key=mp.make_mpf))

    def log(self) -> "HighReal":
        if not libmp.mpf_gt(self._lo, libmp.fzero):
            raise ValueError("log of an interval not contained in (0, inf)")
        return self._wrap(libmp.mpf_log(self._lo, self.prec, _F), libmp.mpf_log(self._hi, self.prec, _C))

    def exp(self) -> "HighReal":
        return self._wrap(libmp.mpf_exp(self._lo, self.prec, _F), libmp.mpf_exp(self._hi, self.prec, _C))

    def sqrt(self) -> "HighReal":
        if libmp.mpf_lt(self._lo, libmp.fzero):
            raise ValueError("sqrt of an interval reaching below 0")
        return self._wrap(libmp.mpf_sqrt(self._lo, self.prec, _F), libmp.mpf_sqrt(self._hi, self.prec, _C))

    def __rpow__(self, base):
        return (self._coerce(base).log() * self).exp()

    def powr(self, s: "HighReal") -> "HighReal":
        """``self ** s`` for a positive interval and a real interval exponent."""
        if libmp.mpf_eq(self._lo, libmp.fzero) and libmp.mpf_eq(self._hi, libmp.fzero):
            return HighReal.exact(0, self.prec)
        return (self.log() * self._coerce(s)).exp()

    # set-like relations
    def contains(self, x) -> bool:
        if isinstance(x, HighReal):
            return libmp.mpf_le(self._lo, x._lo) and libmp.mpf_ge(self._hi, x._hi)
        x = self._coerce(x)
        return libmp.mpf_le(self._lo, x._lo) and libmp.mpf_ge(self._hi, x._hi)

    __contains__ = contains

    def overlaps(self, other) -> bool:
        o = self._coerce(other)
        return libmp.mpf_le(self._lo, o._hi) and libmp.mpf_le(o._lo, self._hi)

    def certainly_lt(self, other) -> bool:
        return libmp.mpf_lt(self._hi, self._coerce(other)._lo)

    def certainly_le(self, other) -> bool:
        return libmp.mpf_le(self._hi, self._coerce(other)._lo)

    def certainly_gt(self, other) -> bool:
        return libmp.mpf_gt(self._lo, self._coerce(other)._hi)

    def certainly_ge(self, other) -> bool:
        return libmp.mpf_ge(self._lo, self._coerce(other)._hi)

    def intersect(self, other) -> "HighReal":
        o = self._coerce(other)
        lo = self._lo if libmp.mpf_ge(self._lo, o._lo) else o._lo
        hi = self._hi if libmp.mpf_le(self._hi, o._hi) else o._hi
        if libmp.mpf_gt(lo, hi):
            raise ValueError("empty intersection")
        return self._wrap(lo, hi, self._p(o))

    def hull(self, other) -> "HighReal":
        o = self._coerce(other)
        lo = self._lo if libmp.mpf_le(self._lo, o._lo) else o._lo
        hi = self._hi if libmp.mpf_ge(self._hi, o._hi) else o._hi
        return self._wrap(lo, hi, self._p(o))

    def max(self, other) -> "HighReal":
        o = self._coerce(other)
        lo = self._lo if libmp.mpf_ge(self._lo, o._lo) else o._lo
        hi = self._hi if libmp.mpf_ge(self._hi, o._hi) else o._hi
        return self._wrap(lo, hi, self._p(o))

    def min(self, other) -> "HighReal":
        o = self._coerce(other)
        lo = self._lo if libmp.mpf_le(self._lo, o._lo) else o._lo
        hi = self._hi if libmp.mpf_le(self._hi, o._hi) else o._hi
        return self._wrap(lo, hi, self._p(o))

    def to_json(self, digits: int = 20) -> dict:
        return {"mid": mp.nstr(self.mid, digits), "rad": mp.nstr(self.rad, 3)}

    def __repr__(self):
        return f"HighReal({mp.nstr(self.mid, 20)} +/- {mp.nstr(self.rad, 3)})"
