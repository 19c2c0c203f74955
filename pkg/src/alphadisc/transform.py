"""The alpha-approximation: first-order s <-> z maps and the rational substitution

    s = (1/T) * (z - 1) / (alpha*z + 1 - alpha)

alpha = 0.5 is Tustin (bilinear), alpha = 1 is the backward difference
``s = (z - 1)/(T z)``.  Values of alpha outside [0.5, 1] are accepted and
flagged through ``AlphaParam.stable_range``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import (
    AlphaZero,
    DegenerateDenominator,
    InvalidInput,
    MapSingularity,
    MissingParam,
    ParamOutOfRange,
    UnexpectedParam,
)
from .poly import Polynomial, RationalFunction, poly_add, poly_mul, poly_pow

__all__ = [
    "AlphaParam",
    "SampleSpec",
    "ContinuousTransferFunction",
    "DiscreteTransferFunction",
    "StabilityDisk",
    "Method",
    "s_to_z_point",
    "z_to_s_point",
    "alpha_substitute",
    "stability_disk",
    "disk_within_unit_circle",
    "to_alpha",
]

_SINGULAR = 1e-300


@dataclass(frozen=True)
class AlphaParam:
    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a):
            raise InvalidInput(f"alpha must be finite, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def stable_range(self) -> bool:
        return self.alpha >= 0.5

    def __float__(self):
        return self.alpha


def _alpha(a) -> AlphaParam:
    return a if isinstance(a, AlphaParam) else AlphaParam(a)


@dataclass(frozen=True)
class SampleSpec:
    T: float

    def __post_init__(self):
        T = float(self.T)
        if not (math.isfinite(T) and T > 0):
            raise InvalidInput(f"sample period must be positive and finite, got {self.T!r}")
        object.__setattr__(self, "T", T)

    @classmethod
    def from_fs(cls, fs: float) -> "SampleSpec":
        fs = float(fs)
        if not (math.isfinite(fs) and fs > 0):
            raise InvalidInput(f"sampling frequency must be positive and finite, got {fs!r}")
        return cls(1.0 / fs)

    @property
    def fs(self) -> float:
        return 1.0 / self.T

    @property
    def f_nyquist(self) -> float:
        return 0.5 / self.T


def _sample(s) -> SampleSpec:
    return s if isinstance(s, SampleSpec) else SampleSpec(s)


@dataclass(frozen=True)
class ContinuousTransferFunction(RationalFunction):
    """H(s) = num(s) / den(s). Improper forms (PI, PR) are allowed."""


@dataclass(frozen=True)
class DiscreteTransferFunction(RationalFunction):
    """H(z) = num(z) / den(z) bound to a sample period."""

    sample: SampleSpec = field(default=None)
    alpha_used: AlphaParam | None = None

    def __post_init__(self):
        super().__post_init__()
        if self.sample is None:
            raise InvalidInput("a discrete transfer function needs a sample period")
        object.__setattr__(self, "sample", _sample(self.sample))
        if self.alpha_used is not None:
            object.__setattr__(self, "alpha_used", _alpha(self.alpha_used))


@dataclass(frozen=True)
class StabilityDisk:
    """Image of the closed left half s-plane under the alpha map.

    For alpha > 0 that image is the disk |z - center| <= radius.  For alpha < 0
    the inequality flips and the image is the *exterior* of the same circle.
    """

    center: float
    radius: float
    exterior: bool = False

    @property
    def crossings(self) -> tuple[float, float]:
        """Real-axis crossings (sigma_z1, sigma_z2); sigma_z1 is always 1."""
        r = -self.radius if self.exterior else self.radius
        return self.center + r, self.center - r


class Method(str, enum.Enum):
    EULER = "euler"
    TUSTIN = "tustin"
    KIM = "kim"
    AL_ALAOUI = "al_alaoui"
    GBT = "gbt"


def s_to_z_point(s, alpha, sample) -> complex:
    """z = (1 + s(1 - alpha)T) / (1 - s alpha T)."""
    a = _alpha(alpha).alpha
    T = _sample(sample).T
    s = complex(s)
    den = 1.0 - s * a * T
    if abs(den) < _SINGULAR:
        raise MapSingularity(f"s = {s} is the pole of the s->z map for alpha={a}, T={T}")
    return (1.0 + s * (1.0 - a) * T) / den


def z_to_s_point(z, alpha, sample) -> complex:
    """s = (1/T)(z - 1) / (alpha z + 1 - alpha)."""
    a = _alpha(alpha).alpha
    T = _sample(sample).T
    z = complex(z)
    den = a * z + 1.0 - a
    if abs(den) < _SINGULAR:
        raise MapSingularity(f"z = {z} is the pole of the z->s map for alpha={a}")
    return (z - 1.0) / (T * den)


def alpha_substitute(h, alpha, sample) -> DiscreteTransferFunction:
    """Discretise ``h`` by substituting the alpha map for s.

    With n = max(deg num, deg den), numerator and denominator are each
    multiplied by (T(alpha z + 1 - alpha))**n, so every term
    c_k s**k becomes c_k (z - 1)**k (T(alpha z + 1 - alpha))**(n - k).
    """
    a = _alpha(alpha)
    smp = _sample(sample)
    if not isinstance(h, RationalFunction):
        h = ContinuousTransferFunction(*h)
    T = smp.T
    n = max(h.num.degree(), h.den.degree())
    diff = Polynomial([-1.0, 1.0])
    hold = Polynomial([T * (1.0 - a.alpha), T * a.alpha])
    diff_pows = [poly_pow(diff, k) for k in range(n + 1)]
    hold_pows = [poly_pow(hold, k) for k in range(n + 1)]

    def expand(p: Polynomial) -> Polynomial:
        out = Polynomial([0.0])
        for k, ck in enumerate(p.coeffs):
            if ck != 0.0:
                out = poly_add(out, poly_mul(diff_pows[k], hold_pows[n - k]), ck)
        return out

    den = expand(h.den)
    if den.is_zero:
        raise DegenerateDenominator("substitution produced a zero z-denominator")
    return DiscreteTransferFunction(expand(h.num), den, sample=smp, alpha_used=a)


def stability_disk(alpha) -> StabilityDisk:
    a = _alpha(alpha).alpha
    if abs(a) < _SINGULAR:
        raise AlphaZero("alpha = 0 maps the left half-plane onto a half-plane, not a disk")
    r = 0.5 / a
    # 1 - r is exact or rounds so that (1 - r) + r == 1 still holds
    return StabilityDisk(center=1.0 - r, radius=abs(r), exterior=a < 0)


def disk_within_unit_circle(d: StabilityDisk) -> bool:
    if d.exterior:
        return False
    return abs(d.center) + d.radius <= 1.0 + 1e-12


def to_alpha(method, param: float | None = None) -> AlphaParam:
    """Convert an equivalent method's parameter into alpha.

    euler -> 1, tustin -> 0.5, kim -> 1/(1 + a_p), al_alaoui -> (1 + a)/2,
    gbt -> a_g.
    """
    try:
        m = Method(method)
    except ValueError:
        raise InvalidInput(f"unknown method {method!r}") from None
    if m in (Method.EULER, Method.TUSTIN):
        if param is not None:
            raise UnexpectedParam(f"{m.value} takes no parameter")
        return AlphaParam(1.0 if m is Method.EULER else 0.5)
    if param is None:
        raise MissingParam(f"{m.value} needs a parameter")
    p = float(param)
    if not math.isfinite(p):
        raise ParamOutOfRange(f"{m.value} parameter must be finite, got {param!r}")
    if m is Method.GBT:
        return AlphaParam(p)
    if not 0.0 <= p <= 1.0:
        raise ParamOutOfRange(f"{m.value} parameter must lie in [0, 1], got {p}")
    if m is Method.KIM:
        return AlphaParam(1.0 / (1.0 + p))
    return AlphaParam((1.0 + p) / 2.0)


def discretize(h, alpha, sample) -> DiscreteTransferFunction:
    """Alias of :func:`alpha_substitute`."""
    return alpha_substitute(h, alpha, sample)
