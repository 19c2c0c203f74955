"""Numerical-integration view of the alpha map.

Each step integrates over one sample interval with a mix of a forward
rectangle (height ``e(n-1)``, weight ``1 - alpha``) and a backward rectangle
(height ``e(n)``, weight ``alpha``)::

    u(n) = (1 - alpha) e(n-1) T + alpha e(n) T + u(n-1)

alpha = 1 is the rectangular rule, alpha = 0.5 the trapezoid.  Before the
first sample ``e(-1)`` is taken as 0 so the fold agrees with a zero-state
difference equation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidInput, NonCausalSystem, SampleRateMismatch
from .transform import AlphaParam, DiscreteTransferFunction, SampleSpec

__all__ = [
    "SampledSignal",
    "hexagonal_step",
    "integrate_sequence",
    "rectangular_rule",
    "trapezoidal_rule",
    "simulate_dtf",
]


@dataclass(frozen=True)
class SampledSignal:
    samples: np.ndarray
    sample: SampleSpec
    start_index: int = 0

    def __post_init__(self):
        x = np.array(self.samples, dtype=np.float64, ndmin=1)
        if x.ndim != 1 or x.size == 0:
            raise InvalidInput("a sampled signal needs at least one real sample")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)
        if not isinstance(self.sample, SampleSpec):
            object.__setattr__(self, "sample", SampleSpec(self.sample))

    def __len__(self):
        return self.samples.size

    @property
    def t(self) -> np.ndarray:
        return (self.start_index + np.arange(self.samples.size)) * self.sample.T


def _alpha(a) -> float:
    return a.alpha if isinstance(a, AlphaParam) else AlphaParam(a).alpha


def hexagonal_step(u_prev, e_prev, e_now, alpha, sample) -> float:
    a = _alpha(alpha)
    T = sample.T if isinstance(sample, SampleSpec) else SampleSpec(sample).T
    return (1.0 - a) * e_prev * T + a * e_now * T + u_prev


def integrate_sequence(e: SampledSignal, alpha, u0: float = 0.0) -> SampledSignal:
    u = _kernels.hexagonal_fold(e.samples, _alpha(alpha), e.sample.T, float(u0), 0.0)
    return SampledSignal(u, e.sample, e.start_index)


def rectangular_rule(e: SampledSignal, u0: float = 0.0) -> SampledSignal:
    return integrate_sequence(e, 1.0, u0)


def trapezoidal_rule(e: SampledSignal, u0: float = 0.0) -> SampledSignal:
    return integrate_sequence(e, 0.5, u0)


def _delay_form(h: DiscreteTransferFunction):
    """(b, a) in powers of z^-1, normalised so a[0] == 1."""
    num = h.num.coeffs
    den = h.den.coeffs
    n = den.size - 1
    if num.size - 1 > n:
        raise NonCausalSystem(
            f"numerator degree {num.size - 1} exceeds denominator degree {n}"
        )
    # coefficient of z^-(n-k) is num[k]
    b = np.zeros(n + 1)
    b[n - np.arange(num.size)] = num
    a = den[::-1].copy()
    lead = a[0]
    return b / lead, a / lead


def simulate_dtf(h: DiscreteTransferFunction, x: SampledSignal) -> SampledSignal:
    """Zero-state response of ``h`` to ``x`` via its direct-form recursion."""
    if not np.isclose(h.sample.T, x.sample.T, rtol=1e-12, atol=0.0):
        raise SampleRateMismatch(
            f"signal period {x.sample.T} does not match system period {h.sample.T}"
        )
    b, a = _delay_form(h)
    y = _kernels.direct_form(b, a, x.samples)
    return SampledSignal(y, x.sample, x.start_index)
