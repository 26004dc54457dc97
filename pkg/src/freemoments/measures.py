"""Symbolic measure catalog and exact moment generation.

Every catalog measure has exact rational moments:

* ``Dirac(c)``              s_n = c^n
* ``Beta(a, b)``            s_n = prod_{i<n} (a+i)/(a+b+i)
* ``MarchenkoPastur(t)``    s_n = sum_{k=1..n} C(n,k) C(n,k-1) t^k / n, s_0 = 1
* ``Dilation(c, inner)``    s_n = c^n * s_n(inner)
* ``Mix(weights, parts)``   s_n = sum_i w_i * s_n(part_i)

Named measures: ``mu0`` has the closed-form moments C(3n,n)/(n+1), ``mu1``
is the dilation by 2 of the parameter-1/2 Marchenko-Pastur law (moments are
the little Schroeder numbers), ``mu2`` is the even mixture of a point mass
at 0 with the parameter-1 Marchenko-Pastur law, ``arcsine`` is the law on
(0,4) with moments C(2n,n), and ``bernoulli_half`` is the fair two-point
measure on {0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exactmath import RationalLike, binomial
from .series import TruncatedSeries

__all__ = [
    "InvalidParameter",
    "MeasureSpec",
    "Dirac",
    "Beta",
    "MarchenkoPastur",
    "Dilation",
    "Mix",
    "Named",
    "MU0",
    "MU1",
    "MU2",
    "ARCSINE",
    "BERNOULLI_HALF",
    "MomentSequence",
    "moments",
    "mu0_moment",
    "named_coefficient",
    "coefficient_series",
    "resolve",
]


class InvalidParameter(ValueError):
    """Measure parameter outside its admissible range."""


class MeasureSpec:
    """Base class for the symbolic measure descriptions below."""

    __slots__ = ()


@dataclass(frozen=True)
class Dirac(MeasureSpec):
    location: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "location", Fraction(self.location))
        if self.location < 0:
            raise InvalidParameter("Dirac location must be >= 0")


@dataclass(frozen=True)
class Beta(MeasureSpec):
    alpha: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.alpha <= 0 or self.beta <= 0:
            raise InvalidParameter("Beta parameters must be > 0")


@dataclass(frozen=True)
class MarchenkoPastur(MeasureSpec):
    t: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", Fraction(self.t))
        if self.t <= 0:
            raise InvalidParameter("Marchenko-Pastur parameter must be > 0")


@dataclass(frozen=True)
class Dilation(MeasureSpec):
    factor: Fraction
    inner: MeasureSpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "factor", Fraction(self.factor))
        if self.factor <= 0:
            raise InvalidParameter("dilation factor must be > 0")


@dataclass(frozen=True)
class Mix(MeasureSpec):
    weights: tuple[Fraction, ...]
    parts: tuple[MeasureSpec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.weights) != len(self.parts) or not self.parts:
            raise InvalidParameter("mixture needs matching, nonempty weights/parts")
        if any(w < 0 for w in self.weights):
            raise InvalidParameter("mixture weights must be nonnegative")
        if sum(self.weights) != 1:
            raise InvalidParameter("mixture weights must sum to exactly 1")


_NAMED = ("mu0", "mu1", "mu2", "arcsine", "bernoulli_half")


@dataclass(frozen=True)
class Named(MeasureSpec):
    name: str

    def __post_init__(self) -> None:
        if self.name not in _NAMED:
            raise InvalidParameter(f"unknown named measure {self.name!r}")


MU0 = Named("mu0")
MU1 = Named("mu1")
MU2 = Named("mu2")
ARCSINE = Named("arcsine")
BERNOULLI_HALF = Named("bernoulli_half")


@dataclass(frozen=True)
class MomentSequence:
    """Exact moments s_0..s_N of a compactly supported measure."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("a moment sequence needs at least s_0")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def of(cls, values: Iterable[RationalLike]) -> "MomentSequence":
        return cls(tuple(Fraction(v) for v in values))

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def truncated(self, order: int) -> "MomentSequence":
        if order > self.order:
            raise ValueError("cannot extend a moment sequence by truncation")
        return MomentSequence(self.values[: order + 1])


def mu0_moment(n: int) -> Fraction:
    """n-th moment C(3n,n)/(n+1) of the central catalog measure."""
    return Fraction(binomial(3 * n, n), n + 1)


def named_coefficient(family: str, n: int) -> Fraction:
    """Closed-form coefficient of the named generating sequences.

    ``b3``          C(3n+1,n)/(3n+1)   (Fuss-Catalan, ternary trees)
    ``b3_squared``  C(3n+2,n)*2/(3n+2)
    ``g``           C(3n,n)*2/(n+1)
    ``mu0_moment``  C(3n,n)/(n+1)
    """
    if n < 0:
        raise ValueError("coefficient index must be >= 0")
    if family == "b3":
        return Fraction(binomial(3 * n + 1, n), 3 * n + 1)
    if family == "b3_squared":
        return Fraction(2 * binomial(3 * n + 2, n), 3 * n + 2)
    if family == "g":
        return Fraction(2 * binomial(3 * n, n), n + 1)
    if family == "mu0_moment":
        return mu0_moment(n)
    raise ValueError(f"unknown coefficient family {family!r}")


def coefficient_series(family: str, order: int) -> TruncatedSeries:
    """The named coefficient family as a TruncatedSeries of the given order."""
    return TruncatedSeries.from_coefficients(
        [named_coefficient(family, n) for n in range(order + 1)]
    )


def resolve(spec: MeasureSpec) -> MeasureSpec:
    """Rewrite named measures into their defining parametric form.

    ``mu0`` and ``arcsine`` are moment-defined and resolve to themselves.
    """
    if not isinstance(spec, Named):
        raise ValueError("resolve expects a Named measure")
    if spec.name == "mu1":
        return Dilation(Fraction(2), MarchenkoPastur(Fraction(1, 2)))
    if spec.name == "mu2":
        return Mix(
            (Fraction(1, 2), Fraction(1, 2)),
            (Dirac(Fraction(0)), MarchenkoPastur(Fraction(1))),
        )
    if spec.name == "bernoulli_half":
        return Mix(
            (Fraction(1, 2), Fraction(1, 2)),
            (Dirac(Fraction(0)), Dirac(Fraction(1))),
        )
    return spec


def _marchenko_pastur_moment(t: Fraction, n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    acc = Fraction(0)
    tk = Fraction(1)
    for k in range(1, n + 1):
        tk *= t
        acc += Fraction(binomial(n, k) * binomial(n, k - 1), n) * tk
    return acc


def moments(spec: MeasureSpec, order: int) -> MomentSequence:
    """Exact moments s_0..s_order of a catalog measure."""
    if order < 0:
        raise ValueError("moment order must be >= 0")
    if isinstance(spec, Dirac):
        c = spec.location
        vals = [c**n for n in range(order + 1)]
    elif isinstance(spec, Beta):
        vals = [Fraction(1)]
        prod = Fraction(1)
        for i in range(order):
            prod *= Fraction(spec.alpha + i, spec.alpha + spec.beta + i)
            vals.append(prod)
    elif isinstance(spec, MarchenkoPastur):
        vals = [_marchenko_pastur_moment(spec.t, n) for n in range(order + 1)]
    elif isinstance(spec, Dilation):
        inner = moments(spec.inner, order)
        vals = [inner[n] * spec.factor**n for n in range(order + 1)]
    elif isinstance(spec, Mix):
        part_moments = [moments(p, order) for p in spec.parts]
        vals = [
            sum(
                (w * pm[n] for w, pm in zip(spec.weights, part_moments)),
                Fraction(0),
            )
            for n in range(order + 1)
        ]
    elif isinstance(spec, Named):
        if spec.name == "mu0":
            vals = [mu0_moment(n) for n in range(order + 1)]
        elif spec.name == "arcsine":
            vals = [Fraction(binomial(2 * n, n)) for n in range(order + 1)]
        else:
            return moments(resolve(spec), order)
    else:
        raise ValueError(f"unknown measure spec {spec!r}")
    return MomentSequence(tuple(vals))
