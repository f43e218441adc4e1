"""Canonical covers of digit-restricted sets, pre-measures and box counts.

The level-k cover of C has one closed interval per admissible restricted
word w of length k: from the smallest point with prefix w (w followed by
theta_0 forever) to the largest (w followed by the greedy maximal
continuation from w's suffix state).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .beta_core import OneExpansion, UndecidedAtDepth, Word, evaluate, value_of_word
from .cantor_dim import (DEFAULT_TOL, DigitSet, greedy_continuation, hausdorff_dimension,
                         periodic_value)
from .highreal import DEFAULT_PREC, HighReal
from .word_automata import count_admissible, enumerate_restricted


@dataclass(frozen=True)
class Interval:
    """Closed interval with enclosure endpoints.

    ``exact`` keeps the endpoints as elements of Q(beta) when both are
    known exactly.
    """

    lo: HighReal
    hi: HighReal
    exact: tuple | None = field(default=None, compare=False)

    @property
    def length(self) -> HighReal:
        if self.exact is not None:
            return (self.exact[1] - self.exact[0]).enclosure(self.lo.prec)
        d = self.hi - self.lo
        if d.certainly_ge(0):
            return d
        return HighReal(0, max(d.hi_fraction(), Fraction(0)), d.prec)

    def contains(self, other: "Interval") -> bool:
        return not (self.lo.certainly_gt(other.lo) or self.hi.certainly_lt(other.hi))


@dataclass(frozen=True)
class CoverLevel:
    k: int
    items: list

    def __len__(self):
        return len(self.items)

    @property
    def intervals(self) -> list[Interval]:
        return [iv for _, iv in self.items]


@dataclass(frozen=True)
class Separated:
    gap: HighReal


@dataclass(frozen=True)
class Violated:
    pair: tuple
    point: HighReal | None = None


@dataclass(frozen=True)
class BoxCountTable:
    rows: list
    s: HighReal
    alpha: HighReal | None
    log_beta: HighReal

    def band(self, k: int) -> HighReal:
        """``(log alpha - log(alpha - 1)) / (k log beta)``."""
        a = self.alpha
        return (a.log() - (a - 1).log()) / (self.log_beta * k)

    def within_band(self, k: int) -> bool:
        row = next(r for r in self.rows if r[0] == k)
        d = row[2] - self.s
        return not d.certainly_lt(0) and not d.certainly_gt(self.band(k))

    def count_ratio(self, k: int) -> HighReal:
        """``N_k * alpha^-k``, which lies in ``[1, alpha/(alpha-1)]``."""
        row = next(r for r in self.rows if r[0] == k)
        return self.alpha ** (-k) * row[1]


def _interval_for(one: OneExpansion, theta: DigitSet, w: Word, state: int, cont_depth: int,
                  prec: int) -> Interval:
    beta = one.beta
    k = len(w)
    binv = beta.gen.inverse()
    head = value_of_word(beta, w)
    lo_exact = head + binv ** k * theta.low / (beta.gen - 1)
    cont, period = greedy_continuation(one, theta, state, cont_depth, partial=True)
    lo = lo_exact.enclosure(prec)
    if period is not None:
        t, p = period
        hi_exact = head + binv ** k * periodic_value(beta, cont[:t], cont[t:t + p])
        return Interval(lo, hi_exact.enclosure(prec), (lo_exact, hi_exact))
    b = beta.enclosure(prec)
    v = evaluate(beta, w + cont, prec)
    pad = HighReal.exact(theta.high, prec) * b ** (-(k + len(cont))) / (b - 1)
    return Interval(lo, HighReal(v.lo, (v + pad).hi, prec))


def cover_level(one: OneExpansion, theta, k: int, cont_depth: int = 64,
                prec: int = DEFAULT_PREC) -> CoverLevel:
    """Level-``k`` canonical cover of the restricted set.

    Words are admissible when followed by ``theta_0`` forever, which is
    exactly the condition for being a prefix of a point of C.
    """
    theta = DigitSet.parse(theta)
    words = enumerate_restricted(one, theta.thetas, k, pad=theta.low)
    items = [(w, _interval_for(one, theta, w, one.state_of(w), cont_depth, prec)) for w in words]
    return CoverLevel(k, items)


def _pow_nonneg(x: HighReal, s: HighReal) -> HighReal:
    if x.certainly_gt(0):
        return x.powr(s)
    if s.certainly_gt(0):
        hi = HighReal(x.hi, x.hi, x.prec).powr(s) if x.hi > 0 else HighReal.exact(0, x.prec)
        return HighReal(0, hi.hi, x.prec)
    return HighReal.exact(1, x.prec)  # 0 ** 0


def premeasure_sum(cover: CoverLevel, s) -> HighReal:
    """Enclosure of ``sum |I|^s`` over the cover."""
    prec = cover.items[0][1].lo.prec if cover.items else DEFAULT_PREC
    s = s if isinstance(s, HighReal) else HighReal.exact(s, prec)
    total = HighReal.exact(0, prec)
    if s.contains(0) and s.certainly_le(0):
        return total + len(cover.items)
    for _, iv in cover.items:
        total = total + _pow_nonneg(iv.length, s)
    return total


def box_dimension_estimate(one: OneExpansion, theta, k_max: int, tol=DEFAULT_TOL,
                           prec: int = DEFAULT_PREC) -> BoxCountTable:
    """``s_k = log N_k / (k log beta)`` with N_k the restricted word counts."""
    theta = DigitSet.parse(theta)
    dim = hausdorff_dimension(one.beta, theta, tol, prec)
    lb = one.beta.enclosure(prec).log()
    rows = []
    for k in range(1, k_max + 1):
        n = count_admissible(one, k, theta.thetas, pad=theta.low)
        sk = HighReal.exact(n, prec).log() / (lb * k) if n > 0 else HighReal.exact(0, prec)
        rows.append((k, n, sk))
    return BoxCountTable(rows, dim.s, dim.alpha.alpha, lb)


def _images(cover: CoverLevel, beta, d: int):
    b = beta.gen
    out = []
    for _, iv in cover.items:
        if iv.exact is not None:
            lo, hi = ((x + d) / b for x in iv.exact)
            out.append(Interval(lo.enclosure(iv.lo.prec), hi.enclosure(iv.lo.prec), (lo, hi)))
        else:
            be = beta.enclosure(iv.lo.prec)
            out.append(Interval((iv.lo + d) / be, (iv.hi + d) / be))
    return out


def separation_check(one: OneExpansion, theta, k: int, cont_depth: int = 64,
                     prec: int = DEFAULT_PREC):
    """Pairwise disjointness of the images ``f_i(C)``, ``f_i(x) = (x + theta_i)/beta``.

    Each image is outer-approximated by the image of the level-``k``
    cover.  A pair sharing an exact endpoint that is a point of C (both
    endpoints of a cover interval are) is reported as violated.
    """
    theta = DigitSet.parse(theta)
    cover = cover_level(one, theta, k, cont_depth, prec)
    images = {d: _images(cover, one.beta, d) for d in theta}
    gap = None
    touching = []
    for a, b in itertools.combinations(theta.thetas, 2):
        for I in images[a]:
            for J in images[b]:
                if I.hi.certainly_lt(J.lo):
                    g = J.lo - I.hi
                elif J.hi.certainly_lt(I.lo):
                    g = I.lo - J.hi
                else:
                    touching.append((a, b, I, J))
                    continue
                gap = g if gap is None else gap.min(g)
    if not touching:
        return Separated(HighReal(gap.lo, gap.lo, prec))
    for a, b, I, J in touching:
        if I.exact is None or J.exact is None:
            continue
        common = set(I.exact) & set(J.exact)
        if common:
            p = next(iter(common))
            return Violated((a, b), p.enclosure(prec))
    return UndecidedAtDepth(k)
