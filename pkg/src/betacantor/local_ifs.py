"""The local IFS ``f0(x) = x/beta``, ``f2(x) = (x+2)/beta`` on ``[0, beta-2]`` for 2 < beta <= 3.

Interval unions here carry exact endpoints in Q(beta), so removal
triggers, containment and distances are decided exactly.
"""

from __future__ import annotations

import bisect
import functools
import logging
from dataclasses import dataclass

from .beta_core import OneExpansion, UndecidedAtDepth, is_admissible, value_of_word
from .covers_measure import cover_level
from .errors import NotInQ as NotInQError
from .errors import OutOfRange
from .field import Beta, FieldElem, as_beta
from .highreal import DEFAULT_PREC, HighReal
from .word_automata import iter_admissible

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted disjoint closed intervals; a part with ``lo == hi`` is a point."""

    beta: Beta
    parts: tuple

    @classmethod
    def of(cls, beta: Beta, parts) -> "IntervalUnion":
        parts = sorted(((beta.elem(a), beta.elem(b)) for a, b in parts), key=lambda p: p[0])
        merged: list = []
        for a, b in parts:
            if merged and a <= merged[-1][1]:
                if b > merged[-1][1]:
                    merged[-1] = (merged[-1][0], b)
            else:
                merged.append((a, b))
        return cls(beta, tuple(merged))

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    @functools.cached_property
    def _los(self) -> list:
        return [a for a, _ in self.parts]

    def contains(self, x) -> bool:
        x = self.beta.elem(x)
        i = bisect.bisect_right(self._los, x) - 1
        return i >= 0 and x <= self.parts[i][1]

    __contains__ = contains

    def includes(self, other: "IntervalUnion") -> bool:
        return all(self._part_in(a, b) for a, b in other.parts)

    def _part_in(self, a, b) -> bool:
        i = bisect.bisect_right(self._los, a) - 1
        return i >= 0 and b <= self.parts[i][1]

    def distance_to(self, x) -> FieldElem:
        x = self.beta.elem(x)
        i = bisect.bisect_right(self._los, x) - 1
        if i >= 0 and x <= self.parts[i][1]:
            return self.beta.zero
        cands = []
        if i >= 0:
            cands.append(x - self.parts[i][1])
        if i + 1 < len(self.parts):
            cands.append(self.parts[i + 1][0] - x)
        return min(cands)

    def clip(self, lo, hi) -> "IntervalUnion":
        lo, hi = self.beta.elem(lo), self.beta.elem(hi)
        out = []
        for a, b in self.parts:
            a2, b2 = max(a, lo), min(b, hi)
            if a2 <= b2:
                out.append((a2, b2))
        return IntervalUnion(self.beta, tuple(out))

    def to_fractions(self) -> list:
        return [[a.as_fraction(), b.as_fraction()] for a, b in self.parts]

    def enclosures(self, prec: int = DEFAULT_PREC) -> list:
        return [(a.enclosure(prec), b.enclosure(prec)) for a, b in self.parts]


@dataclass(frozen=True)
class InQ:
    eps: tuple


@dataclass(frozen=True)
class NotInQ:
    position: int
    digit: int


def _check_range(beta: Beta):
    b = beta.gen
    if not (b > 2 and b <= 3):
        raise OutOfRange("the local IFS needs 2 < beta <= 3")


def member_Q(one: OneExpansion):
    """Whether the expansion of 1 is finite with every digit in {0, 2}."""
    _check_range(one.beta)
    for i, d in enumerate(one.eps, 1):
        if d not in (0, 2):
            return NotInQ(i, d)
    if one.is_simple:
        return InQ(one.eps)
    return UndecidedAtDepth(one.depth)


def iter_B_stages(beta, depth: int):
    """Yield the removal stages ``B_1, ..., B_depth``."""
    beta = as_beta(beta)
    _check_range(beta)
    binv = beta.gen.inverse()
    parts = [(beta.zero, beta.one)]
    width = beta.one
    for _ in range(depth):
        width = width * binv
        nxt = []
        for u, v in parts:
            length = v - u
            if length < width or length == width:
                if length == width:
                    log.debug("piece of length exactly beta^-n kept whole")
                nxt.append((u, v))
                continue
            a, b = u + width, u + 2 * width
            nxt.append((u, a))
            # the removed set (a, b) is open: a right piece [b, v] survives
            # when b <= v, shrinking to the point {v} when b == v
            if b <= v:
                nxt.append((b, v))
        parts = nxt
        yield IntervalUnion(beta, tuple(parts))


def build_B(beta, depth: int) -> IntervalUnion:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    *_, last = iter_B_stages(beta, depth)
    return last


def build_C_approx(one: OneExpansion, depth: int, prec: int = DEFAULT_PREC) -> IntervalUnion:
    """Union of the level-``depth`` cover intervals of C over {0, 2}."""
    _check_range(one.beta)
    beta = one.beta
    parts = []
    for _, iv in cover_level(one, (0, 2), depth, prec=prec).items:
        if iv.exact is not None:
            parts.append(iv.exact)
        else:
            parts.append((iv.lo.lo_fraction(), iv.hi.hi_fraction()))
    return IntervalUnion.of(beta, parts)


def _f0(beta: Beta, u: IntervalUnion) -> list:
    binv = beta.gen.inverse()
    return [(a * binv, b * binv) for a, b in u.parts]


def _f2(beta: Beta, u: IntervalUnion) -> list:
    binv = beta.gen.inverse()
    return [((a + 2) * binv, (b + 2) * binv) for a, b in u.parts]


def hausdorff_distance(x: IntervalUnion, y: IntervalUnion, prec: int = DEFAULT_PREC) -> HighReal:
    """Exact Hausdorff distance between two interval unions, as an enclosure."""

    def one_sided(p: IntervalUnion, q: IntervalUnion):
        # sup over p of dist(., q) is attained at an endpoint of p or at the
        # midpoint of a gap of q lying inside p
        cands = [e for part in p.parts for e in part]
        for (_, b1), (a2, _) in zip(q.parts, q.parts[1:]):
            m = (b1 + a2) / 2
            if m in p:
                cands.append(m)
        return max(q.distance_to(c) for c in cands)

    if not x.parts or not y.parts:
        raise ValueError("distance to an empty set")
    return max(one_sided(x, y), one_sided(y, x)).enclosure(prec)


def invariance_check(a: IntervalUnion, beta=None, prec: int = DEFAULT_PREC) -> HighReal:
    """Hausdorff distance between ``A`` and ``f0(A) U f2(A n [0, beta-2])``."""
    beta = a.beta if beta is None else as_beta(beta)
    clipped = a.clip(0, beta.gen - 2)
    image = _f0(beta, a) + (_f2(beta, clipped) if clipped.parts else [])
    return hausdorff_distance(a, IntervalUnion.of(beta, image), prec)


def difference_points(one: OneExpansion, depth: int) -> list[FieldElem]:
    """Points of B not in C: 1 and ``(0.a_1...a_{j}1)_beta`` with a_i in {0,2}, j < depth."""
    status = member_Q(one)
    if not isinstance(status, InQ):
        raise NotInQError(f"beta is not in Q: {status}")
    beta = one.beta
    points = []
    for j in range(depth):
        for w in iter_admissible(one, j, (0, 2)):
            word = w + (1,)
            if is_admissible(one, word):
                points.append(value_of_word(beta, word))
    points.append(beta.one)
    return sorted(points)


def extended_ifs_attractor(beta, depth: int) -> IntervalUnion:
    """Stages of ``f0`` and the clamped ``f2(x) = min((x+2)/beta, 1)`` from [0, 1]."""
    beta = as_beta(beta)
    _check_range(beta)
    cur = IntervalUnion(beta, ((beta.zero, beta.one),))
    binv = beta.gen.inverse()
    one = beta.one
    for _ in range(depth):
        f2 = [(min((a + 2) * binv, one), min((b + 2) * binv, one)) for a, b in cur.parts]
        cur = IntervalUnion.of(beta, _f0(beta, cur) + f2)
    return cur
