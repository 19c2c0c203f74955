"""Shared oracles and random families for the test-suite."""
import math

import numpy as np
from numpy.polynomial import polynomial as npoly

from alphadisc.transform import ContinuousTransferFunction, z_to_s_point


def random_hurwitz(rng, order, re_range=(1.0, 1e5), im_max=1e5):
    """Random plant with all poles in the open left half-plane."""
    poles = []
    while len(poles) < order:
        re = -rng.uniform(*re_range)
        if order - len(poles) >= 2 and rng.random() < 0.5:
            im = rng.uniform(0.0, im_max)
            poles += [complex(re, im), complex(re, -im)]
        else:
            poles.append(complex(re, 0.0))
    den = np.real(npoly.polyfromroots(poles))
    num = rng.normal(size=int(rng.integers(1, order + 2)))
    return ContinuousTransferFunction(num, den), np.array(poles)


def pointmap_response(h, alpha, sample, f):
    """Discrete response computed without any polynomial substitution:
    evaluate H(s) at the pre-image s of z = exp(j 2 pi f T)."""
    z = np.exp(2j * np.pi * np.asarray(f) * sample.T)
    s = np.array([z_to_s_point(zi, alpha, sample) for zi in np.atleast_1d(z)])
    return np.polyval(h.num.coeffs[::-1], s) / np.polyval(h.den.coeffs[::-1], s)


def distortion_pointwise(h, alpha, sample, f):
    """(amp_err_db, phase_err_deg) at single frequencies via the point map."""
    f = np.atleast_1d(f)
    hd = pointmap_response(h, alpha, sample, f)
    s = 2j * np.pi * f
    ha = np.polyval(h.num.coeffs[::-1], s) / np.polyval(h.den.coeffs[::-1], s)
    amp = 20 * np.log10(np.abs(hd)) - 20 * np.log10(np.abs(ha))
    ph = np.degrees(np.angle(hd / ha))
    return amp, ph


def match_sets(a, b):
    """Largest distance from any element of one set to its nearest in the other."""
    a = np.asarray(a)
    b = np.asarray(b)
    d = np.abs(a[:, None] - b[None, :])
    return max(d.min(axis=1).max(), d.min(axis=0).max())


def sin_partial_error(alpha, n, integrate):
    """Max |u(n) - exact| for e = sin(2 pi t) on [0, 1] with n steps."""
    T = 1.0 / n
    t = np.arange(n + 1) * T
    u = integrate(np.sin(2 * math.pi * t), alpha, T)
    exact = (1 - np.cos(2 * math.pi * t)) / (2 * math.pi)
    return float(np.max(np.abs(u - exact)))


def read_csv(path):
    """Data rows of an alphadisc CSV: comments and the column header dropped."""
    rows = []
    header_seen = False
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if not header_seen:
                header_seen = True
                continue
            rows.append(line.split(","))
    return rows


def smooth_integrand(A, B, C, w, v):
    """f(t) = A sin(wt) + B t^2 + C t cos(vt), which vanishes at t = 0, and its exact
    antiderivative F with F(0) = 0."""
    f = lambda t: A * np.sin(w * t) + B * t**2 + C * t * np.cos(v * t)  # noqa: E731
    F = lambda t: (  # noqa: E731
        A * (1 - np.cos(w * t)) / w
        + B * t**3 / 3
        + C * (np.cos(v * t) - 1 + v * t * np.sin(v * t)) / v**2
    )
    return f, F


def empirical_order(alpha, f, F, integrate, n=1000):
    """log2 of the max-error ratio when the step on [0, 1] is halved."""
    errs = []
    for m in (n, 2 * n):
        T = 1.0 / m
        t = np.arange(m + 1) * T
        u = integrate(f(t), alpha, T)
        errs.append(np.max(np.abs(u - F(t))))
    return math.log2(errs[0] / errs[1])
