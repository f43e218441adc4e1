from fractions import Fraction

from mpmath import mp, mpf


def near(h, value, tol) -> bool:
    """Every point of the enclosure ``h`` lies within ``tol`` of ``value``."""
    with mp.workprec(256):
        if isinstance(value, Fraction):
            v = mpf(value.numerator) / value.denominator
        else:
            v = mpf(value)
        return abs(h.lo - v) <= tol and abs(h.hi - v) <= tol


# (criterion number, passed, detail) for the acceptance summary
ACCEPTANCE: list = []
