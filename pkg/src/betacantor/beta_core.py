"""Greedy beta-expansions, the expansion of 1 and Parry admissibility.

Digits are plain ``int`` and words are ``tuple[int, ...]``.  Exact inputs
(ints, Fractions, :class:`~betacantor.field.FieldElem`) are iterated in
Q(beta), so floors are always decided; :class:`HighReal` inputs are
iterated in interval arithmetic and may raise :class:`AmbiguousFloor`.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import AmbiguousFloor, DepthExhausted, OutOfRange
from .field import Beta, FieldElem, as_beta
from .highreal import DEFAULT_PREC, HighReal

Word = tuple


class Order(enum.Enum):
    LESS = -1
    EQUAL_TO_DEPTH = 0
    GREATER = 1


@dataclass(frozen=True)
class UndecidedAtDepth:
    depth: int


def lex_compare(a: Iterable[int], b: Iterable[int], depth: int) -> Order:
    """Compare the first ``depth`` digits of two digit sequences."""
    for x, y in itertools.islice(zip(a, b), depth):
        if x < y:
            return Order.LESS
        if x > y:
            return Order.GREATER
    return Order.EQUAL_TO_DEPTH


def t_beta_step(beta, x, prec: int = DEFAULT_PREC):
    """One step of the beta-transformation: ``(floor(beta*x), beta*x - floor(beta*x))``."""
    beta = as_beta(beta)
    if isinstance(x, HighReal):
        if x.certainly_lt(0) or x.certainly_ge(1):
            raise OutOfRange("t_beta_step needs 0 <= x < 1")
        y = beta.enclosure(max(prec, x.prec)) * x
        a, b = math.floor(y.lo_fraction()), math.floor(y.hi_fraction())
        if a != b:
            raise AmbiguousFloor(f"beta*x = {y!r} straddles the integer {b}")
        return a, y - a
    x = beta.elem(x)
    if x < 0 or x >= 1:
        raise OutOfRange("t_beta_step needs 0 <= x < 1")
    y = beta.gen * x
    digit = y.floor()
    return digit, y - digit


def expand(beta, x, n: int, prec: int = DEFAULT_PREC) -> Word:
    """The first ``n`` greedy digits of ``x`` in base ``beta``."""
    if n < 1:
        raise ValueError("n must be positive")
    beta = as_beta(beta)
    digits = []
    for i in range(n):
        try:
            d, x = t_beta_step(beta, x, prec)
        except AmbiguousFloor as exc:
            raise AmbiguousFloor(str(exc), position=i + 1) from exc
        digits.append(d)
    return tuple(digits)


def evaluate(beta, w: Sequence[int], prec: int = DEFAULT_PREC) -> HighReal:
    """Enclosure of ``sum w_i beta^-i``."""
    beta = as_beta(beta)
    b = beta.enclosure(prec)
    v = HighReal.exact(0, prec)
    for d in reversed(w):
        v = (v + d) / b
    return v


def value_of_word(beta, w: Sequence[int]) -> FieldElem:
    """Exact value of ``sum w_i beta^-i`` in Q(beta)."""
    beta = as_beta(beta)
    inv = beta.gen.inverse()
    v = beta.zero
    for d in reversed(w):
        v = (v + d) * inv
    return v


@dataclass(frozen=True)
class OneExpansion:
    """Greedy digits of 1 in base ``beta`` plus the quasi-greedy sequence.

    ``simple`` is ``n`` when the expansion terminates with its last nonzero
    digit at position ``n``; then ``eps`` holds exactly those ``n`` digits.
    Otherwise ``eps`` holds ``depth`` digits and more can be obtained with
    :meth:`deepen`.
    """

    beta: Beta
    eps: Word
    simple: int | None
    depth: int
    _residual: FieldElem | None = field(default=None, repr=False, compare=False)

    @property
    def status(self) -> str:
        if self.simple is not None:
            return f"Simple({self.simple})"
        return f"NotSimpleWithinDepth({self.depth})"

    @property
    def is_simple(self) -> bool:
        return self.simple is not None

    @property
    def floor_beta(self) -> int:
        return self.eps[0]

    def greedy_digit(self, i: int) -> int:
        """``eps_i`` (1-based)."""
        if i <= len(self.eps):
            return self.eps[i - 1]
        if self.simple is not None:
            return 0
        raise DepthExhausted(f"expansion of 1 computed to depth {self.depth}, digit {i} requested")

    def e(self, i: int) -> int:
        """Quasi-greedy digit ``e_i`` (1-based)."""
        n = self.simple
        if n is None:
            if i > self.depth:
                raise DepthExhausted(f"expansion of 1 computed to depth {self.depth}, digit {i} requested")
            return self.eps[i - 1]
        j = (i - 1) % n + 1
        return self.eps[n - 1] - 1 if j == n else self.eps[j - 1]

    def quasi_greedy(self, n: int) -> Word:
        return tuple(self.e(i) for i in range(1, n + 1))

    def deepen(self, depth: int) -> "OneExpansion":
        if self.simple is not None or depth <= self.depth:
            return self
        return _continue_expansion(self.beta, list(self.eps), self._residual, depth)

    # suffix-state view of the beta-shift language
    #
    # The state of a word is the length L of its longest suffix equal to a
    # prefix of e; every other tail is already strictly below e.  Because
    # every shift of e is <= e, reading d < e_{L+1} closes all open tails
    # (state 0) and d == e_{L+1} keeps them all open (state L+1).
    def next_state(self, state: int, d: int) -> int | None:
        ed = self.e(state + 1)
        if d < ed:
            return 0
        if d > ed:
            return None
        state += 1
        if self.simple is not None and state == self.simple:
            state = 0
        return state

    def pad_extendable(self, state: int, pad: int = 0) -> bool:
        """Whether a word in ``state`` followed by ``pad`` forever stays admissible.

        Only the longest open tail matters: shorter open tails compare
        against a shift of e that is at least the one the longest faces.
        """
        if self.simple is not None:
            for j in range(state + 1, state + self.simple + 1):
                ej = self.e(j)
                if ej != pad:
                    return pad < ej
            return False
        for j in range(state + 1, self.depth + 1):
            ej = self.eps[j - 1]
            if ej != pad:
                return pad < ej
        raise DepthExhausted(f"padding comparison undecided within depth {self.depth}")

    def state_of(self, w: Sequence[int]) -> int | None:
        s = 0
        for d in w:
            s = self.next_state(s, d)
            if s is None:
                return None
        return s


def _continue_expansion(beta: Beta, digits: list, residual, depth: int) -> OneExpansion:
    b = beta.gen
    while len(digits) < depth:
        y = b * residual
        try:
            a = y.floor()
        except AmbiguousFloor as exc:
            raise AmbiguousFloor(str(exc), position=len(digits) + 1) from exc
        residual = y - a
        digits.append(a)
        if residual.is_zero():
            while digits and digits[-1] == 0:
                digits.pop()
            return OneExpansion(beta, tuple(digits), len(digits), len(digits))
    return OneExpansion(beta, tuple(digits), None, depth, residual)


def expansion_of_one(beta, depth: int = 64) -> OneExpansion:
    """Greedy expansion of 1 to ``depth`` digits, with certified simplicity.

    Arithmetic is exact in Q(beta), so ``Simple(n)`` is reported exactly
    when the residual orbit reaches 0 at step ``n``.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    beta = as_beta(beta)
    b = beta.gen
    e1 = b.floor()
    residual = b - e1
    if residual.is_zero():
        return OneExpansion(beta, (e1,), 1, 1)
    return _continue_expansion(beta, [e1], residual, depth)


def _tail_order(one: OneExpansion, w: Sequence[int], start: int, pad: int) -> Order:
    # (w_start, ..., w_m, pad, pad, ...) against (e_1, e_2, ...)
    i = 1
    for d in w[start:]:
        ei = one.e(i)
        if d != ei:
            return Order.LESS if d < ei else Order.GREATER
        i += 1
    stop = i + one.simple if one.simple is not None else one.depth + 1
    while i < stop:
        ei = one.e(i)
        if pad != ei:
            return Order.LESS if pad < ei else Order.GREATER
        i += 1
    if one.simple is not None:
        return Order.EQUAL_TO_DEPTH
    raise DepthExhausted(f"tail comparison undecided within depth {one.depth}")


def is_admissible(one: OneExpansion, w: Sequence[int], pad: int = 0) -> bool:
    """Parry test: every tail of ``w`` followed by ``pad`` forever is below e.

    Raises :class:`DepthExhausted` when the stored prefix of e cannot
    separate some tail from e.
    """
    if any(d < 0 or d > one.floor_beta for d in w):
        return False
    if pad > 0 and _tail_order(one, (), 0, pad) is not Order.LESS:
        return False
    return all(_tail_order(one, w, p, pad) is Order.LESS for p in range(len(w)))


def admissibility_depth(w: Sequence[int], guard: int | None = None) -> int:
    """Expansion depth used for checking ``w``: ``|w|`` plus a guard of ``2|w|``."""
    g = 2 * len(w) if guard is None else guard
    return max(len(w) + g, 1)
