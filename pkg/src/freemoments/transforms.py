"""Free-probability calculus on exact moment sequences.

Moments and free cumulants are linked through the defining relation of the
R-transform, R(z M(z)) + 1 = M(z) with M(z) = sum s_n z^n. Coefficient
extraction gives, for every n >= 1,

    s_n = sum_{k=1..n} kappa_k * [z^(n-k)] M(z)^k,

and the k = n term is kappa_n alone, so the relation can be solved in either
direction one index at a time. [z^m] M^k only involves s_0..s_m, which makes
the forward direction (moments from cumulants) a well-founded recursion.

The S-transform is built from the compositional inverse T of M - 1:
S(z) = (1+z) T(z) / z. Additive free convolution adds cumulants; the
multiplicative one multiplies S-transforms; Mellin convolution multiplies
moments coefficientwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .measures import MomentSequence
from .series import TruncatedSeries

__all__ = [
    "FreeCumulants",
    "NotNormalized",
    "ZeroMean",
    "moments_to_cumulants",
    "cumulants_to_moments",
    "free_add_convolve",
    "s_transform",
    "free_mult_convolve",
    "mellin_convolve",
]


class NotNormalized(ValueError):
    """Moment sequence does not start with s_0 = 1."""


class ZeroMean(ValueError):
    """S-transform calculus requires a nonzero mean s_1."""


@dataclass(frozen=True)
class FreeCumulants:
    """Exact free cumulants kappa_1..kappa_N."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def of(cls, values: Iterable[Fraction | int]) -> "FreeCumulants":
        return cls(tuple(Fraction(v) for v in values))

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> Fraction:
        """kappa_n, 1-indexed to match the transform coefficients."""
        if n < 1 or n > len(self.values):
            raise IndexError(f"kappa_{n} not available")
        return self.values[n - 1]

    def __len__(self) -> int:
        return len(self.values)

    def __add__(self, other: "FreeCumulants") -> "FreeCumulants":
        if len(self.values) != len(other.values):
            raise ValueError("cumulant sequences must have equal length")
        return FreeCumulants(tuple(a + b for a, b in zip(self.values, other.values)))

    def as_series(self, order: int | None = None) -> TruncatedSeries:
        """The R-transform series sum kappa_n z^n (zero constant term)."""
        order = len(self.values) if order is None else order
        return TruncatedSeries.from_coefficients(
            [Fraction(0), *self.values], order=order
        )


def _power_rows(s: Sequence[Fraction], n_max: int) -> list[list[Fraction]]:
    """rows[k-1][m] = [z^m] M(z)^k for k = 1..n_max, m = 0..n_max-k."""
    rows: list[list[Fraction]] = [list(s[:n_max])]
    for k in range(2, n_max + 1):
        prev = rows[-1]
        width = n_max - k + 1
        row = [
            sum((s[j] * prev[m - j] for j in range(m + 1)), Fraction(0))
            for m in range(width)
        ]
        rows.append(row)
    return rows


def moments_to_cumulants(s: MomentSequence) -> FreeCumulants:
    """Free cumulants kappa_1..kappa_N of a normalized moment sequence."""
    if s[0] != 1:
        raise NotNormalized("free cumulants need s_0 = 1")
    n_max = s.order
    if n_max == 0:
        return FreeCumulants(())
    rows = _power_rows(s.values, n_max)
    kappa: list[Fraction] = []
    for n in range(1, n_max + 1):
        acc = s[n]
        for k in range(1, n):
            acc -= kappa[k - 1] * rows[k - 1][n - k]
        kappa.append(acc)
    return FreeCumulants(tuple(kappa))


def cumulants_to_moments(kappa: FreeCumulants) -> MomentSequence:
    """Moments s_0..s_N from free cumulants kappa_1..kappa_N."""
    ks = kappa.values
    n_max = len(ks)
    s: list[Fraction] = [Fraction(1)]
    # rows[k-2] accumulates [z^m] M^k for k >= 2; each outer step appends the
    # one new entry per row that becomes computable once s_(n-1) is known.
    rows: list[list[Fraction]] = []
    for n in range(1, n_max + 1):
        for k in range(2, n + 1):
            m = n - k
            prev = s if k == 2 else rows[k - 3]
            val = sum((s[j] * prev[m - j] for j in range(m + 1)), Fraction(0))
            if k - 2 == len(rows):
                rows.append([val])
            else:
                rows[k - 2].append(val)
        acc = Fraction(0)
        for k in range(1, n + 1):
            row = s if k == 1 else rows[k - 2]
            acc += ks[k - 1] * row[n - k]
        s.append(acc)
    return MomentSequence(tuple(s))


def free_add_convolve(a: MomentSequence, b: MomentSequence) -> MomentSequence:
    """Additive free convolution at the moment level: cumulants add."""
    if a.order != b.order:
        raise ValueError("additive free convolution needs equal moment orders")
    return cumulants_to_moments(moments_to_cumulants(a) + moments_to_cumulants(b))


def s_transform(s: MomentSequence, order: int) -> TruncatedSeries:
    """Coefficients S_0..S_order of the S-transform.

    Needs moments through s_(order+1): S is read off from the compositional
    inverse T of M - 1 via S(z) = (1+z) T(z) / z, which shifts indices by one.
    """
    if s[0] != 1:
        raise NotNormalized("S-transform needs s_0 = 1")
    if s.order < 1 or s[1] == 0:
        raise ZeroMean("S-transform is undefined for zero-mean sequences")
    if s.order < order + 1:
        raise ValueError(
            f"S-transform to order {order} needs moments through s_{order + 1}"
        )
    m_minus_1 = TruncatedSeries.from_coefficients(
        [Fraction(0), *s.values[1 : order + 2]]
    )
    t = m_minus_1.comp_inverse()
    one_plus_z = TruncatedSeries.from_coefficients([1, 1], order=order + 1)
    numer = one_plus_z * t
    # divide by z: valuation of T is exactly 1
    return TruncatedSeries(numer.coefficients[1:])


def free_mult_convolve(a: MomentSequence, b: MomentSequence) -> MomentSequence:
    """Multiplicative free convolution at the moment level: S-transforms multiply."""
    order = min(a.order, b.order)
    if order < 1:
        raise ValueError("multiplicative free convolution needs order >= 1")
    s_prod = s_transform(a.truncated(order), order - 1) * s_transform(
        b.truncated(order), order - 1
    )
    one_plus_z = TruncatedSeries.from_coefficients([1, 1], order=order - 1)
    ratio = s_prod * one_plus_z.reciprocal()
    t = TruncatedSeries.from_coefficients([Fraction(0), *ratio.coefficients])
    m_minus_1 = t.comp_inverse()
    return MomentSequence((Fraction(1), *m_minus_1.coefficients[1:]))


def mellin_convolve(a: MomentSequence, b: MomentSequence) -> MomentSequence:
    """Mellin convolution: the moments of a product of independent nonnegative
    variables multiply coefficientwise."""
    if a.order != b.order:
        raise ValueError("Mellin convolution needs equal moment orders")
    return MomentSequence(tuple(x * y for x, y in zip(a.values, b.values)))
