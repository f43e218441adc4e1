"""Hausdorff dimension of digit-restricted beta Cantor sets.

Pipeline: expansion of 1 -> maximal restricted sequence z -> index
recoding omega -> base alpha solving ``1 = sum omega_i alpha^-i`` ->
``s = log(alpha) / log(beta)``.  Root finding is bisection in exact
rational arithmetic, so every bracket decision is exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .beta_core import (OneExpansion, UndecidedAtDepth, Word, evaluate, expansion_of_one,
                        value_of_word)
from .errors import (Degenerate, DepthExhausted, DigitIndexOutOfRange, DigitNotInTheta,
                     InvalidMarkerWord, OutOfRange, ParseError, TolUnreachable)
from .field import Beta, as_beta
from .highreal import DEFAULT_PREC, HighReal

log = logging.getLogger(__name__)

DEFAULT_TOL = Fraction(1, 10 ** 12)
MAX_DEPTH = 4096


@dataclass(frozen=True)
class DigitSet:
    thetas: tuple

    def __post_init__(self):
        t = tuple(int(x) for x in self.thetas)
        if len(t) < 2:
            raise ValueError("a digit set needs at least two digits")
        if t[0] < 0 or any(a >= b for a, b in zip(t, t[1:])):
            raise ValueError("digits must be strictly increasing and non-negative")
        object.__setattr__(self, "thetas", t)

    @classmethod
    def parse(cls, spec) -> "DigitSet":
        if isinstance(spec, DigitSet):
            return spec
        if isinstance(spec, str):
            try:
                spec = [int(x) for x in spec.replace(" ", "").split(",") if x]
            except ValueError as exc:
                raise ParseError(f"bad digit list {spec!r}") from exc
        try:
            return cls(tuple(spec))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    @property
    def q(self) -> int:
        return len(self.thetas)

    @property
    def low(self) -> int:
        return self.thetas[0]

    @property
    def high(self) -> int:
        return self.thetas[-1]

    def index(self, digit: int) -> int:
        try:
            return self.thetas.index(digit)
        except ValueError:
            raise DigitNotInTheta(f"digit {digit} not in {self.thetas}") from None

    def __iter__(self):
        return iter(self.thetas)

    def __str__(self):
        return ",".join(map(str, self.thetas))


@dataclass(frozen=True)
class MaxSequence:
    """Prefix of the maximal sequence z of the restricted shift.

    ``period`` is ``(preperiod, period)`` when the greedy construction
    revisited a suffix state, which proves z eventually periodic.
    """

    z: Word
    value: HighReal
    certified_depth: int
    period: tuple | None = None

    def digits(self, n: int) -> Word:
        if n <= len(self.z):
            return self.z[:n]
        if self.period is None:
            raise DepthExhausted(f"z known to depth {len(self.z)} only")
        t, p = self.period
        block = self.z[t:t + p]
        out = list(self.z)
        while len(out) < n:
            out.append(block[(len(out) - t) % p])
        return tuple(out)


@dataclass(frozen=True)
class OmegaSequence:
    omega: tuple
    periodic: tuple | None = None
    detected_period: int | None = None

    @property
    def is_zero(self) -> bool:
        if self.periodic is not None:
            t, p = self.periodic
            return not any(self.omega[: t + p])
        return not any(self.omega)


@dataclass(frozen=True)
class AlphaResult:
    alpha: HighReal | None
    residual: HighReal | None
    truncation: int
    degenerate: bool = False


@dataclass(frozen=True)
class DimensionResult:
    s: HighReal
    alpha: AlphaResult
    beta: Beta
    theta: DigitSet | None = None
    z: MaxSequence | None = None
    omega: OmegaSequence | None = None

    @property
    def degenerate(self) -> bool:
        return self.alpha.degenerate


@dataclass(frozen=True)
class PlateauInterval:
    word: Word
    beta_l: HighReal
    beta_r: HighReal
    alpha: HighReal


@dataclass(frozen=True)
class InV:
    pass


@dataclass(frozen=True)
class NotInV:
    position: int


# maximal sequence

def _greedy_step(one: OneExpansion, theta: DigitSet, state: int):
    for d in reversed(theta.thetas):
        if d > one.floor_beta:
            continue
        nxt = one.next_state(state, d)
        if nxt is not None and one.pad_extendable(nxt, theta.low):
            return d, nxt
    raise OutOfRange(f"no digit of {theta.thetas} extends the restricted shift")


def greedy_continuation(one: OneExpansion, theta: DigitSet, state: int, n: int,
                        partial: bool = False):
    """Largest restricted continuation of ``n`` digits from a suffix state.

    Returns ``(digits, period)`` where ``period`` is ``(t, p)`` if a state
    repeated, meaning ``digits[t:t+p]`` repeats forever after ``digits[:t]``.
    With ``partial`` the digits found before the expansion of 1 runs out
    are returned instead of raising :class:`DepthExhausted`.
    """
    seen = {state: 0}
    out = []
    for i in range(n):
        try:
            d, state = _greedy_step(one, theta, state)
        except DepthExhausted:
            if partial:
                return tuple(out), None
            raise
        out.append(d)
        if state in seen:
            return tuple(out), (seen[state], i + 1 - seen[state])
        seen[state] = i + 1
    return tuple(out), None


def periodic_value(beta: Beta, pre: Sequence[int], block: Sequence[int]):
    """Exact value of ``pre`` followed by ``block`` repeated forever."""
    binv = beta.gen.inverse()
    head = value_of_word(beta, pre)
    cyc = value_of_word(beta, block) / (1 - binv ** len(block))
    return head + cyc * binv ** len(pre)


def max_sequence(one: OneExpansion, theta, depth: int, prec: int = DEFAULT_PREC) -> MaxSequence:
    """Greedy maximal sequence of the shift restricted to ``theta``.

    A digit is taken when the prefix followed by ``theta_0`` forever stays
    admissible.  ``theta_0 < e_1`` always, so only tails overlapping the
    prefix can fail.
    """
    theta = DigitSet.parse(theta)
    beta = one.beta
    digits, period = greedy_continuation(one, theta, 0, depth)
    if period is not None:
        t, p = period
        z = MaxSequence(digits, HighReal.exact(0), depth, period)
        digits = z.digits(depth)
        value = periodic_value(beta, digits[:t], digits[t:t + p]).enclosure(prec)
        return MaxSequence(digits, value, depth, period)
    b = beta.enclosure(prec)
    head = evaluate(beta, digits, prec)
    tail = HighReal.exact(theta.high, prec) * b ** (-len(digits)) / (b - 1)
    return MaxSequence(digits, HighReal(head.lo, (head + tail).hi, prec), depth, None)


def _detect_period(seq: Sequence[int]) -> int | None:
    n = len(seq)
    start = n // 3
    for p in range(1, (n - start) // 2 + 1):
        if all(seq[i] == seq[i + p] for i in range(start, n - p)):
            return p
    return None


def recode_omega(z: MaxSequence, theta) -> OmegaSequence:
    theta = DigitSet.parse(theta)
    omega = tuple(theta.index(d) for d in z.z)
    if z.period is not None:
        return OmegaSequence(omega, z.period, z.period[1])
    return OmegaSequence(omega, None, _detect_period(omega))


# root finding

def _bisect(pred: Callable[[Fraction], bool], lo: Fraction, hi: Fraction, tol: Fraction):
    """Shrink ``[lo, hi]`` keeping ``pred(lo)`` true and ``pred(hi)`` false."""
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def _series(coeffs: Sequence[int], x: Fraction) -> Fraction:
    v = Fraction(0)
    for c in reversed(coeffs):
        v = (v + c) / x
    return v


def _periodic_series(pre: Sequence[int], block: Sequence[int], x: Fraction) -> Fraction:
    xp = x ** len(block)
    cyc = _series(block, x) * xp / (xp - 1)
    return _series(pre, x) + cyc / x ** len(pre)


def _solve_truncated(coeffs, top_digit, lo, hi, tol):
    """Enclose the root of ``sum c_i x^-i = 1`` for an unknown tail.

    The tail is bracketed between all zeros and ``top_digit`` forever.
    """
    n = len(coeffs)

    def lower(x):
        return _series(coeffs, x) >= 1

    def upper(x):
        return _series(coeffs, x) + Fraction(top_digit) / (x ** n * (x - 1)) > 1

    step = tol / 64
    a, _ = _bisect(lower, lo, hi, step)
    _, b = _bisect(upper, a, hi, step)
    return a, b


def _tol_fraction(tol) -> Fraction:
    if isinstance(tol, HighReal):
        return tol.hi_fraction()
    return Fraction(tol) if not isinstance(tol, str) else Fraction(tol)


def solve_alpha(omega: OmegaSequence, q: int, tol=DEFAULT_TOL, prec: int = DEFAULT_PREC) -> AlphaResult:
    """Rigorous enclosure of alpha with ``1 = sum omega_i alpha^-i``."""
    tol = _tol_fraction(tol)
    if omega.is_zero:
        raise Degenerate("recoded sequence is identically zero")
    w = omega.omega
    n = len(w)
    a, b = _solve_truncated(w, q - 1, Fraction(1), Fraction(q), tol)
    if omega.periodic is not None:
        t, p = omega.periodic
        pre, block = w[:t], w[t:t + p]
        pa, pb = _bisect(lambda x: _periodic_series(pre, block, x) >= 1, Fraction(1), Fraction(q),
                         min(tol / 64, Fraction(1, 2 ** prec)))
        if pb >= a and pa <= b:
            a, b = max(a, pa), min(b, pb)
        else:
            log.warning("periodic root %s outside truncation enclosure", float(pa))
    if b - a > tol:
        raise TolUnreachable(f"truncation {n} gives width {float(b - a):.3g} > {float(tol):.3g}")
    alpha = HighReal(a, b, prec)
    res = HighReal(1 - _series(w, a), 1 - _series(w, b), prec)
    return AlphaResult(alpha, res, n, False)


def _check_digits(beta: Beta, theta: DigitSet):
    fb = beta.gen.floor()
    if theta.high > fb:
        raise OutOfRange(f"largest digit {theta.high} exceeds floor(beta) = {fb}")


def hausdorff_dimension(beta, theta, tol=DEFAULT_TOL, prec: int = DEFAULT_PREC,
                        max_depth: int = MAX_DEPTH) -> DimensionResult:
    """``dim_H C_{beta;theta} = log(alpha) / log(beta)``, degenerate sets giving 0."""
    beta = as_beta(beta)
    theta = DigitSet.parse(theta)
    _check_digits(beta, theta)
    tol = _tol_fraction(tol)
    depth, n = 64, 64
    one = expansion_of_one(beta, depth)
    while True:
        try:
            z = max_sequence(one, theta, n, prec)
            omega = recode_omega(z, theta)
            alpha = solve_alpha(omega, theta.q, tol, prec)
            break
        except DepthExhausted:
            depth *= 2
            if depth > max_depth:
                raise
            one = one.deepen(depth)
        except Degenerate:
            if z.period is None and n * 2 <= max_depth:
                n *= 2
                continue
            ar = AlphaResult(None, None, n, True)
            return DimensionResult(HighReal.exact(0, prec), ar, beta, theta, z, omega)
        except TolUnreachable:
            n *= 2
            if n > max_depth:
                raise
    s = alpha.alpha.log() / beta.enclosure(prec).log()
    return DimensionResult(s, alpha, beta, theta, z, omega)


def inverse_beta_for_alpha(alpha, theta, tol=DEFAULT_TOL, prec: int = DEFAULT_PREC,
                           depth: int = 256) -> HighReal:
    """The base beta whose restricted set has the given alpha.

    Uses the quasi-greedy expansion of 1 in base alpha so every digit is
    at most ``q - 1``, then solves ``1 = sum theta[e_i] beta^-i``.
    """
    alpha = as_beta(alpha)
    theta = DigitSet.parse(theta)
    tol = _tol_fraction(tol)
    q = theta.q
    a = alpha.gen
    if not (a > q - 1 and a <= q):
        raise OutOfRange(f"alpha must lie in ({q - 1}, {q}]")
    one = expansion_of_one(alpha, depth)
    hi = Fraction(theta.high + 1)
    lo = Fraction(theta.high)

    def mapped(e):
        try:
            return [theta.thetas[d] for d in e]
        except IndexError:
            raise DigitIndexOutOfRange(f"quasi-greedy digit exceeds {q - 1}") from None

    if one.is_simple:
        block = mapped(one.quasi_greedy(one.simple))
        x, y = _bisect(lambda b: _periodic_series((), block, b) >= 1, lo, hi,
                       min(tol / 64, Fraction(1, 2 ** prec)))
    else:
        x, y = _solve_truncated(mapped(one.quasi_greedy(one.depth)), theta.high, lo, hi, tol)
        if y - x > tol:
            raise TolUnreachable("expansion of alpha too short for the requested tolerance")
    return HighReal(x, y, prec)


# the 0,1,3 family

_MARKER_DIGITS = {0, 1, 3}
_RECODE_013 = {0: 0, 1: 1, 3: 2}


def _expansion_of_one_valid(digits: Sequence[int]) -> bool:
    # every proper shift of digits+0^inf is strictly below it
    n = len(digits)
    for i in range(1, n):
        for j in range(n):
            a = digits[i + j] if i + j < n else 0
            if a != digits[j]:
                if a > digits[j]:
                    return False
                break
        else:
            return False
    return True


def plateau_from_word(word: Sequence[int], tol=DEFAULT_TOL, prec: int = DEFAULT_PREC) -> PlateauInterval:
    """Plateau ``[beta_l, beta_r]`` of constant alpha for Theta = {0,1,3}.

    ``word`` is ``(a_2, ..., a_m)``; ``beta_l`` and ``beta_r`` have
    expansions of 1 equal to ``(3, a_2, ..., a_m, 2)`` and
    ``(3, a_2, ..., a_m, 3)``.
    """
    word = tuple(int(a) for a in word)
    tol = _tol_fraction(tol)
    if any(a not in _MARKER_DIGITS for a in word):
        raise InvalidMarkerWord(f"marker digits must lie in {{0,1,3}}: {word}")
    if not _expansion_of_one_valid((3,) + word + (3,)):
        raise InvalidMarkerWord(f"(3,{word},3) violates the shift condition")
    step = min(tol / 64, Fraction(1, 2 ** prec))

    def root(coeffs, lo, hi):
        x, y = _bisect(lambda b: _series(coeffs, b) >= 1, Fraction(lo), Fraction(hi), step)
        return HighReal(x, y, prec)

    beta_l = root((3,) + word + (2,), 3, 4)
    beta_r = root((3,) + word + (3,), 3, 4)
    alpha = root((2,) + tuple(_RECODE_013[a] for a in word) + (2,), 2, 3)
    return PlateauInterval(word, beta_l, beta_r, alpha)


def classify_V_013(one: OneExpansion, depth: int | None = None):
    """Membership of beta in the exceptional set V for Theta = {0,1,3}."""
    b = one.beta.gen
    if not (b > 3 and b <= 4):
        raise OutOfRange("classify_V_013 needs beta in (3, 4]")
    if depth is not None and not one.is_simple:
        one = one.deepen(depth)
    eps = one.eps
    if one.is_simple:
        n = one.simple
        if all(d in _MARKER_DIGITS for d in eps):
            return InV()
        if all(d in _MARKER_DIGITS for d in eps[:-1]) and eps[-1] == 2:
            return InV()
        if all(d in _MARKER_DIGITS for d in one.quasi_greedy(n)):
            return InV()
    for i, d in enumerate(eps, 1):
        if d == 2 and (not one.is_simple or i < one.simple):
            return NotInV(i)
    return UndecidedAtDepth(one.depth)


@dataclass(frozen=True)
class CurveRow:
    beta: Fraction
    result: DimensionResult | None
    error: str | None = None
    plateau: int | None = None


def dimension_curve(theta, lo, hi, samples: int, tol=DEFAULT_TOL, prec: int = DEFAULT_PREC,
                    include_lo: bool = True) -> list[CurveRow]:
    """Evaluate the dimension on a uniform grid and flag runs of equal alpha.

    With ``include_lo=False`` the grid is ``lo + i*(hi-lo)/samples`` for
    ``i = 1..samples`` (half-open interval).
    """
    theta = DigitSet.parse(theta)
    lo, hi = Fraction(lo), Fraction(hi)
    if samples < 1 or lo > hi:
        raise ValueError("need samples >= 1 and lo <= hi")
    if include_lo:
        grid = [lo] if samples == 1 else [lo + (hi - lo) * i / (samples - 1) for i in range(samples)]
    else:
        grid = [lo + (hi - lo) * i / samples for i in range(1, samples + 1)]
    rows = []
    for b in grid:
        try:
            rows.append(CurveRow(b, hausdorff_dimension(Beta.rational(b), theta, tol, prec)))
        except Exception as exc:  # per-sample failures are recorded, not fatal
            rows.append(CurveRow(b, None, f"{type(exc).__name__}: {exc}"))
    return _flag_plateaus(rows, _tol_fraction(tol))


def _same_alpha(r1: CurveRow, r2: CurveRow, tol: Fraction) -> bool:
    if r1.result is None or r2.result is None or r1.result.degenerate or r2.result.degenerate:
        return False
    a1, a2 = r1.result.alpha.alpha, r2.result.alpha.alpha
    return a1.overlaps(a2) and a1.hi_fraction() - a1.lo_fraction() <= tol \
        and a2.hi_fraction() - a2.lo_fraction() <= tol


def _flag_plateaus(rows: list[CurveRow], tol: Fraction) -> list[CurveRow]:
    out = list(rows)
    label = 0
    i = 0
    while i < len(rows):
        j = i
        while j + 1 < len(rows) and rows[j + 1].beta != rows[j].beta and _same_alpha(rows[j], rows[j + 1], tol):
            j += 1
        if j > i:
            for k in range(i, j + 1):
                out[k] = CurveRow(rows[k].beta, rows[k].result, rows[k].error, label)
            label += 1
        i = j + 1
    return out
