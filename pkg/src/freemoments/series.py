"""Truncated formal power series over exact rationals.

A :class:`TruncatedSeries` stores coefficients c_0..c_N for a fixed inclusive
truncation order N. Binary operations truncate to the smaller operand order;
nothing ever extends precision silently, which keeps exactness audits simple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[Fraction, int]

__all__ = [
    "TruncatedSeries",
    "ZeroConstantTerm",
    "InnerConstantNonzero",
    "NotInvertible",
]


class ZeroConstantTerm(ValueError):
    """Reciprocal requested for a series whose constant term is zero."""


class InnerConstantNonzero(ValueError):
    """Composition requested with an inner series whose constant term is nonzero."""


class NotInvertible(ValueError):
    """Compositional inverse requires f[0] = 0 and f[1] != 0."""


@dataclass(frozen=True)
class TruncatedSeries:
    """Formal power series with exact rational coefficients c_0..c_N."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in self.coefficients)
        )

    # -- construction ---------------------------------------------------

    @classmethod
    def from_coefficients(
        cls, values: Iterable[Scalar], order: int | None = None
    ) -> "TruncatedSeries":
        """Build a series from c_0, c_1, ...; pad with zeros / truncate to `order`."""
        coeffs = [Fraction(v) for v in values]
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            coeffs = coeffs[: order + 1]
            coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "TruncatedSeries":
        return cls.from_coefficients([value], order=order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls.constant(0, order)

    @classmethod
    def identity(cls, order: int) -> "TruncatedSeries":
        """The series z, truncated at `order` (order >= 1)."""
        if order < 1:
            raise ValueError("identity needs order >= 1")
        return cls.from_coefficients([0, 1], order=order)

    # -- basic queries ---------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)

    def truncated(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("truncation cannot extend precision")
        return TruncatedSeries(self.coefficients[: order + 1])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other: "TruncatedSeries | Scalar") -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(other, self.order)

    def __add__(self, other: "TruncatedSeries | Scalar") -> "TruncatedSeries":
        other = self._coerce(other)
        n = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coefficients[k] + other.coefficients[k] for k in range(n + 1))
        )

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "TruncatedSeries | Scalar") -> "TruncatedSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "TruncatedSeries":
        return self._coerce(other) - self

    def scale(self, factor: Scalar) -> "TruncatedSeries":
        factor = Fraction(factor)
        return TruncatedSeries(tuple(factor * c for c in self.coefficients))

    def __mul__(self, other: "TruncatedSeries | Scalar") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, ci in enumerate(self.coefficients[: n + 1]):
            if ci == 0:
                continue
            for j in range(n + 1 - i):
                cj = other.coefficients[j]
                if cj != 0:
                    out[i + j] += ci * cj
        return TruncatedSeries(tuple(out))

    def __rmul__(self, other: Scalar) -> "TruncatedSeries":
        return self.scale(other)

    def reciprocal(self) -> "TruncatedSeries":
        """Series b with self * b = 1 up to the truncation order."""
        a = self.coefficients
        if a[0] == 0:
            raise ZeroConstantTerm("cannot invert a series with zero constant term")
        inv0 = Fraction(1) / a[0]
        out = [inv0]
        for m in range(1, self.order + 1):
            acc = Fraction(0)
            for k in range(1, min(m, self.order) + 1):
                acc += a[k] * out[m - k]
            out.append(-inv0 * acc)
        return TruncatedSeries(tuple(out))

    # -- composition ---------------------------------------------------

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(z)), truncated to min(orders); inner must have no constant term."""
        if inner.coefficients[0] != 0:
            raise InnerConstantNonzero(
                "composition needs an inner series with zero constant term"
            )
        n = min(self.order, inner.order)
        inner_t = inner.truncated(n)
        acc = TruncatedSeries.zero(n)
        # Horner on series: coefficients of self beyond degree n cannot reach
        # degrees <= n because inner has valuation >= 1.
        for k in range(n, -1, -1):
            acc = acc * inner_t + self.coefficients[k]
        return acc

    def comp_inverse(self) -> "TruncatedSeries":
        """Compositional inverse g with self(g(z)) = z up to the order.

        Solved degree by degree: once g is correct through degree n-1, the
        z^n coefficient of self(g) is linear in the unknown g_n with slope
        self[1], so each step fixes exactly one coefficient.
        """
        f = self.coefficients
        if f[0] != 0 or len(f) < 2 or f[1] == 0:
            raise NotInvertible("compositional inverse needs f[0] = 0 and f[1] != 0")
        n_max = self.order
        inv_f1 = Fraction(1) / f[1]
        g = [Fraction(0), inv_f1] + [Fraction(0)] * (n_max - 1)
        for n in range(2, n_max + 1):
            partial = TruncatedSeries(tuple(g[: n + 1]))
            residual = self.truncated(n).compose(partial).coefficients[n]
            g[n] = -inv_f1 * residual
        return TruncatedSeries(tuple(g))

    # -- presentation ---------------------------------------------------

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coefficients) + "]"
