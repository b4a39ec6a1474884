"""Capacity sequences of singular ellipsoids.

N(n,m; a,b) is the multiset {a*k1 + b*k2 : k1,k2 >= 0, k1 + m*k2 = 0 mod n}
sorted in nondecreasing order with repetitions, indexed from k = 0.  For
n = 1 the congruence is vacuous and the classical sequence is recovered.
"""

from __future__ import annotations

from fractions import Fraction

from .domains import Frame
from .geometry import exact

DEFAULT_COUNT_BUDGET = 10**6


class SpectrumBudgetError(RuntimeError):
    """Enumeration would exceed the configured budget."""


def _admissible_values_up_to(n: int, m: int, a, b, cap, budget: int) -> list:
    """All values a*k1 + b*k2 over admissible pairs with value <= cap."""
    values = []
    k2 = 0
    while b * k2 <= cap:
        k1 = (-m * k2) % n
        while a * k1 + b * k2 <= cap:
            values.append(a * k1 + b * k2)
            if len(values) > 4 * budget:
                raise SpectrumBudgetError("spectrum enumeration budget exceeded")
            k1 += n
        k2 += 1
    return values


def singular_ellipsoid_spectrum(frame, a, b, count: int, budget: int = DEFAULT_COUNT_BUDGET):
    """First `count` values of N(n,m; a,b), exactly."""
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    a, b = exact(a), exact(b)
    if a <= 0 or b <= 0:
        raise ValueError("ellipsoid periods must be positive")
    if not isinstance(count, int) or count < 1:
        raise ValueError("count must be a positive integer")
    if count > budget:
        raise SpectrumBudgetError(f"count {count} exceeds budget {budget}")
    cap = a + b
    while True:
        values = _admissible_values_up_to(frame.n, frame.m, a, b, cap, budget)
        if len(values) >= count:
            values.sort()
            return tuple(values[:count])
        cap *= 2


def classical_spectrum(a, b, count: int, budget: int = DEFAULT_COUNT_BUDGET):
    """Sorted nonnegative integer combinations of a and b; frame (1,0) case."""
    return singular_ellipsoid_spectrum(Frame(1, 0), a, b, count, budget)
