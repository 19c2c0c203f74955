"""Canonical analog plants: first-order low-pass, PI, ideal PR and notch."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidInput, NonPositiveFrequency, NonPositiveQ
from .poly import Polynomial, poly_add, poly_mul
from .transform import ContinuousTransferFunction

__all__ = [
    "PlantSpec",
    "DEFAULTS",
    "make_lpf",
    "make_pi",
    "make_pr",
    "make_notch",
    "make_plant",
]

# Conventional grid-control values; every one is overridable from the CLI.
DEFAULTS = {
    "lpf": {"fc": 2400.0},
    "pi": {"kp": 1.0, "ki": 100.0},
    "pr": {"kp": 1.0, "kr": 100.0, "f0": 50.0},
    "notch": {"f0": 50.0, "q": 2.0},
}


def _positive_freq(name, f):
    f = float(f)
    if not (math.isfinite(f) and f > 0):
        raise NonPositiveFrequency(f"{name} must be a positive frequency in Hz, got {f!r}")
    return f


def _finite(name, x):
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInput(f"{name} must be finite, got {x!r}")
    return x


def make_lpf(fc: float) -> ContinuousTransferFunction:
    """wc / (s + wc) with wc = 2 pi fc."""
    wc = 2.0 * math.pi * _positive_freq("fc", fc)
    return ContinuousTransferFunction(Polynomial([wc]), Polynomial([wc, 1.0]))


def make_pi(kp: float, ki: float) -> ContinuousTransferFunction:
    kp, ki = _finite("kp", kp), _finite("ki", ki)
    return ContinuousTransferFunction(Polynomial([ki, kp]), Polynomial([0.0, 1.0]))


def make_pr(kp: float, kr: float, f0: float) -> ContinuousTransferFunction:
    """Ideal (undamped) resonant controller kp + kr s / (s^2 + w0^2)."""
    kp, kr = _finite("kp", kp), _finite("kr", kr)
    w0 = 2.0 * math.pi * _positive_freq("f0", f0)
    den = Polynomial([w0 * w0, 0.0, 1.0])
    num = poly_add(poly_mul([kp], den), Polynomial([0.0, kr]))
    return ContinuousTransferFunction(num, den)


def make_notch(f0: float, q: float) -> ContinuousTransferFunction:
    """(s^2 + w0^2) / (s^2 + (w0/Q) s + w0^2)."""
    w0 = 2.0 * math.pi * _positive_freq("f0", f0)
    q = float(q)
    if not (math.isfinite(q) and q > 0):
        raise NonPositiveQ(f"Q must be positive, got {q!r}")
    return ContinuousTransferFunction(
        Polynomial([w0 * w0, 0.0, 1.0]), Polynomial([w0 * w0, w0 / q, 1.0])
    )


_BUILDERS = {"lpf": make_lpf, "pi": make_pi, "pr": make_pr, "notch": make_notch}


@dataclass(frozen=True)
class PlantSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _BUILDERS:
            raise InvalidInput(f"unknown plant kind {self.kind!r}")
        merged = dict(DEFAULTS[self.kind])
        unknown = set(self.params) - set(merged)
        if unknown:
            raise InvalidInput(f"{self.kind} does not take {sorted(unknown)}")
        merged.update({k: float(v) for k, v in self.params.items()})
        object.__setattr__(self, "params", merged)

    def build(self) -> ContinuousTransferFunction:
        return _BUILDERS[self.kind](**self.params)


def make_plant(kind: str, **params) -> ContinuousTransferFunction:
    return PlantSpec(kind, params).build()
