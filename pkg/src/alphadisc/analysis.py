"""Frequency responses, distortion profiles, alpha search, the per-frequency
exclusion scan and pole-based stability verdicts.

Sign conventions: every error is *discrete minus analog*, amplitude in dB and
phase in degrees.  Phase is unwrapped along ascending frequency.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConstantPolynomial,
    FrequencyOutOfRange,
    InvalidInput,
    PoleOnAxis,
    PoleOnCircle,
)
from .poly import RationalFunction, poly_eval, poly_roots
from .transform import (
    AlphaParam,
    ContinuousTransferFunction,
    DiscreteTransferFunction,
    SampleSpec,
    alpha_substitute,
    s_to_z_point,
)

__all__ = [
    "Objective",
    "Metric",
    "Stability",
    "FrequencyGrid",
    "default_grid",
    "DistortionProfile",
    "AlphaSearchResult",
    "ExclusionRecord",
    "ExclusionReport",
    "SchurVerdict",
    "continuous_response",
    "discrete_response",
    "distortion_profile",
    "aggregate",
    "search_alpha",
    "exclusion_scan",
    "hurwitz_stable",
    "discretization_stable",
    "map_poles",
]

_SINGULAR = 1e-300


class Objective(str, enum.Enum):
    AMPLITUDE = "amplitude"
    PHASE = "phase"


class Metric(str, enum.Enum):
    MAX_ABS = "max_abs"
    RMS = "rms"


class Stability(str, enum.Enum):
    STABLE = "stable"
    MARGINAL = "marginal"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing frequencies in Hz, all positive."""

    points: np.ndarray

    def __post_init__(self):
        p = np.array(self.points, dtype=np.float64, ndmin=1)
        if p.ndim != 1 or p.size < 2:
            raise InvalidInput("a frequency grid needs at least 2 points")
        if not np.all(np.isfinite(p)) or p[0] <= 0 or np.any(np.diff(p) <= 0):
            raise InvalidInput("grid frequencies must be finite, positive and strictly increasing")
        p.setflags(write=False)
        object.__setattr__(self, "points", p)

    @classmethod
    def log(cls, f_min, f_max, n):
        return cls(np.geomspace(f_min, f_max, int(n)))

    @classmethod
    def linear(cls, f_min, f_max, n):
        return cls(np.linspace(f_min, f_max, int(n)))

    def check(self, sample: SampleSpec):
        if self.points[-1] >= sample.f_nyquist:
            raise FrequencyOutOfRange(
                f"grid reaches {self.points[-1]} Hz, Nyquist is {sample.f_nyquist} Hz"
            )

    def __len__(self):
        return self.points.size


def default_grid(sample: SampleSpec, n: int = 500) -> FrequencyGrid:
    """500 log-spaced points from 10 Hz to 0.98 of Nyquist."""
    return FrequencyGrid.log(10.0, 0.98 * sample.f_nyquist, n)


def _grid(g) -> FrequencyGrid:
    return g if isinstance(g, FrequencyGrid) else FrequencyGrid(g)


def _eval_ratio(h: RationalFunction, x: np.ndarray):
    num = poly_eval(h.num, x)
    den = poly_eval(h.den, x)
    singular = np.abs(den) < _SINGULAR
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = num / den
    out[singular] = np.nan
    return out, singular


def continuous_response(h, f):
    """H(j 2 pi f) for a scalar or array of frequencies."""
    scalar = np.ndim(f) == 0
    fa = np.atleast_1d(np.asarray(f, dtype=np.float64))
    out, singular = _eval_ratio(h, 2j * np.pi * fa)
    if singular.any():
        raise PoleOnAxis(f"H(s) has a pole on the imaginary axis at f = {fa[singular][0]} Hz")
    return complex(out[0]) if scalar else out


def discrete_response(h: DiscreteTransferFunction, f):
    """H(z) on the unit circle, z = exp(j 2 pi f T), for 0 < f < f_nyquist."""
    scalar = np.ndim(f) == 0
    fa = np.atleast_1d(np.asarray(f, dtype=np.float64))
    if np.any(fa <= 0) or np.any(fa >= h.sample.f_nyquist):
        raise FrequencyOutOfRange(f"frequencies must lie in (0, {h.sample.f_nyquist}) Hz")
    out, singular = _eval_ratio(h, np.exp(2j * np.pi * fa * h.sample.T))
    if singular.any():
        raise PoleOnCircle(f"H(z) has a pole on the unit circle at f = {fa[singular][0]} Hz")
    return complex(out[0]) if scalar else out


def _unwrap_rad(phase: np.ndarray) -> np.ndarray:
    """np.unwrap over the finite entries only; NaNs stay in place."""
    out = phase.copy()
    ok = np.isfinite(phase)
    if ok.any():
        out[ok] = np.unwrap(phase[ok])
    return out


def _wrap(x):
    return (x + np.pi) % (2 * np.pi) - np.pi


def _errors(ha: np.ndarray, hd: np.ndarray):
    """Amplitude (dB) and phase (deg) columns for one discretisation."""
    with np.errstate(divide="ignore", invalid="ignore"):
        amp_a = 20.0 * np.log10(np.abs(ha))
        amp_d = 20.0 * np.log10(np.abs(hd))
        amp_err = amp_d - amp_a
    ph_a = np.where(np.abs(ha) > 0, np.angle(ha), np.nan)
    ph_d = np.where(np.abs(hd) > 0, np.angle(hd), np.nan)
    phase_a = _unwrap_rad(ph_a)
    phase_err = _unwrap_rad(_wrap(ph_d - ph_a))
    return amp_a, amp_d, amp_err, np.degrees(phase_a), np.degrees(phase_err)


@dataclass(frozen=True)
class DistortionProfile:
    f: np.ndarray
    amp_analog_db: np.ndarray
    amp_discrete_db: np.ndarray
    amp_err_db: np.ndarray
    phase_analog_deg: np.ndarray
    phase_discrete_deg: np.ndarray
    phase_err_deg: np.ndarray
    alpha: AlphaParam
    sample: SampleSpec

    COLUMNS = (
        "f_hz",
        "amp_analog_db",
        "amp_discrete_db",
        "amp_err_db",
        "phase_analog_deg",
        "phase_discrete_deg",
        "phase_err_deg",
    )

    def rows(self):
        cols = (
            self.f,
            self.amp_analog_db,
            self.amp_discrete_db,
            self.amp_err_db,
            self.phase_analog_deg,
            self.phase_discrete_deg,
            self.phase_err_deg,
        )
        return [tuple(float(c[i]) for c in cols) for i in range(self.f.size)]

    def errors(self, objective) -> np.ndarray:
        obj = Objective(objective)
        return self.amp_err_db if obj is Objective.AMPLITUDE else self.phase_err_deg


class _Evaluator:
    """Caches the analog response and unit-circle points across alpha values."""

    def __init__(self, h, sample: SampleSpec, grid: FrequencyGrid, strict: bool = True):
        if not isinstance(h, RationalFunction):
            h = ContinuousTransferFunction(*h)
        grid.check(sample)
        self.h = h
        self.sample = sample
        self.f = grid.points
        self.z = np.exp(2j * np.pi * self.f * sample.T)
        self.ha, self.sing_a = _eval_ratio(h, 2j * np.pi * self.f)
        self.strict = strict
        if strict and self.sing_a.any():
            raise PoleOnAxis(
                f"H(s) has a pole on the imaginary axis at f = {self.f[self.sing_a][0]} Hz"
            )

    def discrete(self, alpha):
        hd = alpha_substitute(self.h, alpha, self.sample)
        vals, singular = _eval_ratio(hd, self.z)
        if self.strict and singular.any():
            raise PoleOnCircle(
                f"H(z) has a pole on the unit circle at f = {self.f[singular][0]} Hz"
            )
        return vals, singular

    def profile(self, alpha) -> DistortionProfile:
        a = alpha if isinstance(alpha, AlphaParam) else AlphaParam(alpha)
        hd, _ = self.discrete(a)
        amp_a, amp_d, amp_err, ph_a, ph_err = _errors(self.ha, hd)
        return DistortionProfile(
            f=self.f,
            amp_analog_db=amp_a,
            amp_discrete_db=amp_d,
            amp_err_db=amp_err,
            phase_analog_deg=ph_a,
            phase_discrete_deg=ph_a + ph_err,
            phase_err_deg=ph_err,
            alpha=a,
            sample=self.sample,
        )


def distortion_profile(h, alpha, sample, grid) -> DistortionProfile:
    """Discretise ``h`` with ``alpha`` and tabulate its errors on ``grid``."""
    sample = sample if isinstance(sample, SampleSpec) else SampleSpec(sample)
    return _Evaluator(h, sample, _grid(grid)).profile(alpha)


def aggregate(profile: DistortionProfile, objective="amplitude", metric="max_abs") -> float:
    """Scalar summary of one error column; NaN entries (undefined phase) are skipped."""
    err = profile.errors(objective)
    err = err[~np.isnan(err)]
    if err.size == 0:
        return math.nan
    if Metric(metric) is Metric.MAX_ABS:
        return float(np.max(np.abs(err)))
    return float(np.sqrt(np.mean(err * err)))


def _alpha_grid(lo: float, hi: float, step: float) -> np.ndarray:
    if not lo < hi:
        raise InvalidInput(f"alpha interval must satisfy lo < hi, got [{lo}, {hi}]")
    if not step > 0:
        raise InvalidInput(f"alpha step must be positive, got {step}")
    n = int(math.floor((hi - lo) / step + 1e-9))
    grid = lo + step * np.arange(n + 1)
    if hi - grid[-1] > 1e-9 * step:
        grid = np.append(grid, hi)
    else:
        grid[-1] = hi
    return grid


@dataclass(frozen=True)
class AlphaSearchResult:
    alpha_star: AlphaParam
    objective_value: float
    metric: Metric
    objective: Objective
    trace: list = field(default_factory=list)
    degenerate: bool = False
    interval: tuple = (0.5, 1.0)

    @property
    def interval_stable(self) -> bool:
        return self.interval[0] >= 0.5


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def search_alpha(
    h,
    sample,
    grid,
    objective="amplitude",
    metric="max_abs",
    interval=(0.5, 1.0),
    coarse_step: float = 0.01,
    tol: float = 1e-4,
) -> AlphaSearchResult:
    """Coarse scan followed by golden-section refinement of one distortion metric.

    The coarse scan runs at ``coarse_step`` over the closed interval; the
    golden-section stage brackets the best coarse point by one step on each
    side and stops once the bracket is narrower than ``tol``.  When the coarse
    values are flat to 1e-12 the search is reported as degenerate and returns
    the lower bound.
    """
    objective = Objective(objective)
    metric = Metric(metric)
    lo, hi = (float(v) for v in interval)
    sample = sample if isinstance(sample, SampleSpec) else SampleSpec(sample)
    ev = _Evaluator(h, sample, _grid(grid))
    cache: dict[float, float] = {}

    def J(a: float) -> float:
        if a not in cache:
            cache[a] = aggregate(ev.profile(a), objective, metric)
        return cache[a]

    alphas = _alpha_grid(lo, hi, coarse_step)
    values = np.array([J(float(a)) for a in alphas])
    trace = [(float(a), float(v)) for a, v in zip(alphas, values)]
    if np.ptp(values) < 1e-12:
        return AlphaSearchResult(
            AlphaParam(lo), J(lo), metric, objective, trace, True, (lo, hi)
        )

    k = int(np.argmin(values))
    a = float(alphas[max(k - 1, 0)])
    b = float(alphas[min(k + 1, alphas.size - 1)])
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = J(c), J(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = J(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = J(d)
    candidates = sorted({a, b, c, d, float(alphas[k])})
    best = min(candidates, key=lambda x: (J(x), x))
    return AlphaSearchResult(
        AlphaParam(best), J(best), metric, objective, trace, False, (lo, hi)
    )


@dataclass(frozen=True)
class ExclusionRecord:
    f: float
    alpha_amp_argmin: float
    alpha_phase_argmin: float
    amp_min: float
    phase_min: float
    coincident: bool
    degenerate: bool = False


@dataclass(frozen=True)
class ExclusionReport:
    records: list
    alphas: np.ndarray
    alpha_step: float
    n_coincident: int
    n_total: int
    n_degenerate: int
    hypothesis_consistent: bool | None
    # global-over-frequency reading: argmin of max_f |err| over the alpha grid
    alpha_amp_global: float
    alpha_phase_global: float
    global_coincident: bool | None

    def summary(self) -> dict:
        hc = self.hypothesis_consistent
        gc = self.global_coincident
        return {
            "n_coincident": self.n_coincident,
            "n_total": self.n_total,
            "n_degenerate": self.n_degenerate,
            "hypothesis_consistent": "not_applicable" if hc is None else hc,
            "alpha_amp_global": self.alpha_amp_global,
            "alpha_phase_global": self.alpha_phase_global,
            "global_coincident": "not_applicable" if gc is None else gc,
        }


def exclusion_scan(
    h,
    sample,
    freq_grid,
    alpha_lo: float = 0.5,
    alpha_hi: float = 1.0,
    alpha_step: float = 0.005,
) -> ExclusionReport:
    """Per-frequency argmin over an alpha grid of |amp_err| and |phase_err|.

    A frequency is degenerate when either response is singular there or when
    either error is flat (to 1e-12) across the alpha grid; degenerate
    frequencies are reported but left out of the summary counts.  Ties pick
    the smallest alpha.
    """
    sample = sample if isinstance(sample, SampleSpec) else SampleSpec(sample)
    grid = _grid(freq_grid)
    alphas = _alpha_grid(float(alpha_lo), float(alpha_hi), float(alpha_step))
    ev = _Evaluator(h, sample, grid, strict=False)
    nf = grid.points.size
    amp = np.empty((alphas.size, nf))
    ph = np.empty((alphas.size, nf))
    bad = ev.sing_a.copy()
    for i, a in enumerate(alphas):
        hd, sing = ev.discrete(float(a))
        bad |= sing
        _, _, amp_err, _, ph_err = _errors(ev.ha, hd)
        amp[i] = np.abs(amp_err)
        ph[i] = np.abs(ph_err)
    bad |= ~np.all(np.isfinite(amp), axis=0) | ~np.all(np.isfinite(ph), axis=0)
    with np.errstate(invalid="ignore"):
        bad |= (np.ptp(amp, axis=0) < 1e-12) | (np.ptp(ph, axis=0) < 1e-12)

    amp_filled = np.where(np.isnan(amp), np.inf, amp)
    ph_filled = np.where(np.isnan(ph), np.inf, ph)
    ia = np.argmin(amp_filled, axis=0)
    ip = np.argmin(ph_filled, axis=0)
    coin_tol = alpha_step * (1 + 1e-9)
    records = []
    for j in range(nf):
        a_amp = float(alphas[ia[j]])
        a_ph = float(alphas[ip[j]])
        degenerate = bool(bad[j])
        records.append(
            ExclusionRecord(
                f=float(grid.points[j]),
                alpha_amp_argmin=a_amp,
                alpha_phase_argmin=a_ph,
                amp_min=float(amp[ia[j], j]),
                phase_min=float(ph[ip[j], j]),
                coincident=(not degenerate) and abs(a_amp - a_ph) <= coin_tol,
                degenerate=degenerate,
            )
        )
    good = ~bad
    n_total = int(good.sum())
    n_coincident = sum(r.coincident for r in records)
    if n_total:
        ga = float(alphas[np.argmin(amp[:, good].max(axis=1))])
        gp = float(alphas[np.argmin(ph[:, good].max(axis=1))])
        gc = abs(ga - gp) <= coin_tol
    else:
        ga = gp = math.nan
        gc = None
    return ExclusionReport(
        records=records,
        alphas=alphas,
        alpha_step=float(alpha_step),
        n_coincident=n_coincident,
        n_total=n_total,
        n_degenerate=nf - n_total,
        hypothesis_consistent=None if n_total == 0 else n_coincident == 0,
        alpha_amp_global=ga,
        alpha_phase_global=gp,
        global_coincident=gc,
    )


def hurwitz_stable(h) -> Stability:
    """Classify continuous poles: stable, marginal (on the axis) or unstable."""
    try:
        poles = poly_roots(h.den)
    except ConstantPolynomial:
        return Stability.STABLE
    scale = max(1.0, float(np.max(np.abs(poles))))
    tol = 1e-9 * scale
    re = poles.real
    if np.any(re > tol):
        return Stability.UNSTABLE
    if np.any(re >= -tol):
        return Stability.MARGINAL
    return Stability.STABLE


@dataclass(frozen=True)
class SchurVerdict:
    schur_stable: bool
    pole_moduli: list
    poles: np.ndarray


def discretization_stable(h, alpha, sample) -> SchurVerdict:
    hd = h if isinstance(h, DiscreteTransferFunction) else alpha_substitute(h, alpha, sample)
    try:
        poles = poly_roots(hd.den)
    except ConstantPolynomial:
        poles = np.zeros(0, dtype=np.complex128)
    moduli = np.abs(poles)
    order = np.argsort(-moduli, kind="stable")
    return SchurVerdict(
        schur_stable=bool(np.all(moduli < 1.0 - 1e-9)),
        pole_moduli=[float(m) for m in moduli[order]],
        poles=poles[order],
    )


def map_poles(h, alpha, sample) -> np.ndarray:
    """Continuous poles pushed through the s->z point map."""
    try:
        poles = poly_roots(h.den)
    except ConstantPolynomial:
        return np.zeros(0, dtype=np.complex128)
    return np.array([s_to_z_point(p, alpha, sample) for p in poles], dtype=np.complex128)
