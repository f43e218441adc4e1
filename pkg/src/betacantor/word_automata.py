"""Counting and enumerating admissible words; transfer matrices.

Two independent routes exist on purpose.  :func:`count_admissible` runs a
memoised depth-first search over suffix states (see
:meth:`OneExpansion.next_state`), while :func:`iter_admissible` walks the
word tree tracking every open tail against e explicitly.  Tests pit them
against each other.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from mpmath import libmp, mp, mpf

from .beta_core import OneExpansion, Word
from .errors import DepthExhausted, NoConvergence, NotSimple, Reducible
from .highreal import DEFAULT_PREC, HighReal


@dataclass(frozen=True)
class WordCountTable:
    beta: object
    counts: dict = field(default_factory=dict)

    def growth_bounds(self, k: int, prec: int = DEFAULT_PREC) -> tuple[HighReal, HighReal]:
        b = self.beta.enclosure(prec)
        return b ** k, b ** (k + 1) / (b - 1)

    def within_bounds(self, k: int) -> bool:
        """``beta^k <= N_k <= beta^(k+1)/(beta-1)``, failing only when certainly violated."""
        lower, upper = self.growth_bounds(k)
        n = self.counts[k]
        return not lower.certainly_gt(n) and not upper.certainly_lt(n)


@dataclass(frozen=True)
class CountingAutomaton:
    states: int
    matrix: tuple

    def path_count(self, k: int, start: int = 0) -> int:
        row = [int(i == start) for i in range(self.states)]
        for _ in range(k):
            row = [sum(row[i] * self.matrix[i][j] for i in range(self.states)) for j in range(self.states)]
        return sum(row)


def _digits(one: OneExpansion, digits) -> tuple:
    return tuple(range(one.floor_beta + 1)) if digits is None else tuple(sorted(digits))


def count_admissible(one: OneExpansion, k: int, digits: Sequence[int] | None = None, pad: int = 0) -> int:
    """Exact number of admissible words of length ``k``.

    ``digits`` restricts the alphabet (default ``0..floor(beta)``); ``pad``
    is the continuation used to decide admissibility of a finite word.
    """
    alphabet = _digits(one, digits)

    @functools.lru_cache(maxsize=None)
    def count(state: int, remaining: int) -> int:
        if remaining == 0:
            return int(one.pad_extendable(state, pad))
        total = 0
        for d in alphabet:
            nxt = one.next_state(state, d)
            if nxt is not None:
                total += count(nxt, remaining - 1)
        return total

    if k < 0:
        raise ValueError("k must be non-negative")
    if pad > 0 and not one.pad_extendable(0, pad):
        return 0
    return count(0, k)


def _pad_below_shift(one: OneExpansion, offset: int, pad: int) -> bool:
    # pad^inf < (e_{offset+1}, e_{offset+2}, ...)
    j = offset + 1
    limit = offset + one.simple + 1 if one.simple is not None else one.depth + 1
    while j < limit:
        ej = one.e(j)
        if ej != pad:
            return pad < ej
        j += 1
    if one.simple is not None:
        return False
    raise DepthExhausted(f"padding comparison undecided within depth {one.depth}")


def iter_admissible(one: OneExpansion, k: int, digits: Sequence[int] | None = None,
                    pad: int = 0) -> Iterator[Word]:
    """Yield admissible words of length ``k`` in lexicographic order.

    Every tail still equal to a prefix of e is tracked separately; no
    state collapsing is assumed.
    """
    alphabet = _digits(one, digits)
    word: list[int] = []

    def walk(open_tails: tuple):
        if len(word) == k:
            if all(_pad_below_shift(one, m, pad) for m in open_tails + (0,)):
                yield tuple(word)
            return
        for d in alphabet:
            nxt = []
            for m in open_tails + (0,):
                em = one.e(m + 1)
                if d > em:
                    break
                if d == em:
                    nxt.append(m + 1)
            else:
                word.append(d)
                yield from walk(tuple(nxt))
                word.pop()

    yield from walk(())


def enumerate_restricted(one: OneExpansion, theta, k: int, pad: int = 0) -> list[Word]:
    """All admissible length-``k`` words over the digit set ``theta``, sorted."""
    digits = tuple(theta)
    if digits and digits[-1] > one.floor_beta:
        raise ValueError("largest digit exceeds floor(beta)")
    return list(iter_admissible(one, k, digits, pad))


def word_count_table(one: OneExpansion, k_max: int) -> WordCountTable:
    return WordCountTable(one.beta, {k: count_admissible(one, k) for k in range(1, k_max + 1)})


def build_automaton(one: OneExpansion) -> CountingAutomaton:
    """Follower-set automaton of a simple beta.

    State ``L`` is the length of the longest suffix matching a prefix of
    e; from ``L`` the digits below ``e_{L+1}`` lead to state 0 and the
    digit ``e_{L+1}`` to ``L+1`` (wrapping at the period).
    """
    if not one.is_simple:
        raise NotSimple(f"beta has status {one.status}")
    n = one.simple
    m = [[0] * n for _ in range(n)]
    for state in range(n):
        for d in range(one.floor_beta + 1):
            nxt = one.next_state(state, d)
            if nxt is not None:
                m[state][nxt] += 1
    return CountingAutomaton(n, tuple(tuple(r) for r in m))


def _strongly_connected(m) -> bool:
    n = len(m)

    def reach(adj):
        seen, stack = {0}, [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if adj(i, j) and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == n

    return reach(lambda i, j: m[i][j] > 0) and reach(lambda i, j: m[j][i] > 0)


def perron_eigenvalue(m, tol=Fraction(1, 10 ** 12), max_iter: int = 100_000,
                      prec: int = DEFAULT_PREC) -> HighReal:
    """Enclosure of the spectral radius of a non-negative irreducible matrix.

    Power iteration runs on ``M + I`` (primitive, same Perron vector); the
    enclosure comes from exact Collatz-Wielandt quotients min/max
    ``(Mv)_i / v_i`` of the final positive iterate.
    """
    rows = [[Fraction(x) for x in r] for r in m]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and non-empty")
    if any(x < 0 for r in rows for x in r):
        raise ValueError("matrix must be non-negative")
    if not _strongly_connected(rows):
        raise Reducible("matrix is reducible")
    tol = Fraction(tol) if not isinstance(tol, HighReal) else tol.hi_fraction()
    fm = [[mpf(x.numerator) / x.denominator for x in r] for r in rows]

    def bounds(v):
        q = [Fraction(*map(int, libmp.to_rational(x._mpf_))) for x in v]
        ratios = [sum(rows[i][j] * q[j] for j in range(n)) / q[i] for i in range(n)]
        return min(ratios), max(ratios)

    with mp.workprec(prec):
        v = [mpf(1)] * n
        for it in range(max_iter):
            if it % 8 == 0 and all(x > 0 for x in v):
                lo, hi = bounds(v)
                if hi - lo <= tol:
                    return HighReal(lo, hi, prec)
            w = [v[i] + sum(fm[i][j] * v[j] for j in range(n)) for i in range(n)]
            s = max(w)
            v = [x / s for x in w]
    raise NoConvergence(f"Collatz-Wielandt bounds not within {tol} after {max_iter} steps")


def dimension_from_matrix(m, r, block_len: int = 1, tol=Fraction(1, 10 ** 12),
                          prec: int = DEFAULT_PREC) -> HighReal:
    """Solve ``rho(M) * r^(s*block_len) = 1`` for ``s``."""
    if block_len < 1:
        raise ValueError("block_len must be >= 1")
    r = r if isinstance(r, HighReal) else HighReal.exact(Fraction(r), prec)
    if not (r.certainly_gt(0) and r.certainly_lt(1)):
        raise ValueError("contraction ratio must lie in (0, 1)")
    rho = perron_eigenvalue(m, tol, prec=prec)
    return rho.log() / (-(r.log()) * block_len)
