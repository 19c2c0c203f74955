"""Inner loops: complex Horner evaluation, the hexagonal fold and a
direct-form difference equation.

Each kernel exists twice, ``*_numba`` and ``*_numpy``. The public names
(``horner``, ``hexagonal_fold``, ``direct_form``) point at whichever backend
``_accel`` selected at import time.
"""
import numpy as np

from ._accel import USE_NUMBA, njit


# -- Horner ------------------------------------------------------------------

def horner_numpy(coeffs, x):
    # coeffs ascending float64, x complex128 1-D
    acc = np.full(x.shape, coeffs[-1], dtype=np.complex128)
    for k in range(coeffs.shape[0] - 2, -1, -1):
        acc = acc * x + coeffs[k]
    return acc


@njit
def horner_numba(coeffs, x):
    n = coeffs.shape[0]
    out = np.empty(x.shape[0], dtype=np.complex128)
    for i in range(x.shape[0]):
        xi = x[i]
        acc = complex(coeffs[n - 1])
        for k in range(n - 2, -1, -1):
            acc = acc * xi + coeffs[k]
        out[i] = acc
    return out


# -- hexagonal integration fold ------------------------------------------------

def hexagonal_fold_numpy(e, alpha, T, u0, e_prev0):
    e_prev = np.empty_like(e)
    e_prev[0] = e_prev0
    e_prev[1:] = e[:-1]
    inc = (1.0 - alpha) * e_prev * T + alpha * e * T
    # add.accumulate is sequential, so rounding matches the scalar fold
    acc = np.empty(e.shape[0] + 1)
    acc[0] = u0
    acc[1:] = inc
    return np.add.accumulate(acc)[1:]


@njit
def hexagonal_fold_numba(e, alpha, T, u0, e_prev0):
    out = np.empty(e.shape[0])
    u = u0
    ep = e_prev0
    for n in range(e.shape[0]):
        u = (1.0 - alpha) * ep * T + alpha * e[n] * T + u
        out[n] = u
        ep = e[n]
    return out


# -- direct-form difference equation -------------------------------------------
# b, a are in powers of z^-1 with a[0] == 1 already enforced by the caller.

def direct_form_numpy(b, a, x):
    nb = b.shape[0]
    na = a.shape[0]
    y = np.zeros(x.shape[0])
    xpad = np.concatenate((np.zeros(nb - 1), x))
    for i in range(x.shape[0]):
        acc = np.dot(b, xpad[i + nb - 1::-1][:nb]) if nb > 1 else b[0] * x[i]
        for j in range(1, min(na, i + 1)):
            acc -= a[j] * y[i - j]
        y[i] = acc
    return y


@njit
def direct_form_numba(b, a, x):
    nb = b.shape[0]
    na = a.shape[0]
    y = np.zeros(x.shape[0])
    for i in range(x.shape[0]):
        acc = 0.0
        for j in range(min(nb, i + 1)):
            acc += b[j] * x[i - j]
        for j in range(1, min(na, i + 1)):
            acc -= a[j] * y[i - j]
        y[i] = acc
    return y


if USE_NUMBA:
    horner = horner_numba
    hexagonal_fold = hexagonal_fold_numba
    direct_form = direct_form_numba
else:
    horner = horner_numpy
    hexagonal_fold = hexagonal_fold_numpy
    direct_form = direct_form_numpy
