"""Exact integer and rational primitives shared by every exact computation.

Rationals are plain :class:`fractions.Fraction` values: arbitrary precision,
reduced on construction, denominator kept positive, so `==` is canonical-form
equality. No floating point enters this module.
"""

from __future__ import annotations

import math
from fractions import Fraction

RationalLike = Fraction | int

__all__ = ["RationalLike", "binomial", "pochhammer"]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) as an exact integer.

    Returns 0 when k < 0 or k > n. Requires n >= 0.
    """
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def pochhammer(a: RationalLike, n: int) -> Fraction:
    """Rising factorial a (a+1) ... (a+n-1); the empty product (n = 0) is 1."""
    if n < 0:
        raise ValueError(f"pochhammer requires n >= 0, got n={n}")
    a = Fraction(a)
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out
