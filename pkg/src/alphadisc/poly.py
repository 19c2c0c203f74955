"""Real-coefficient polynomials and rational functions.

Coefficients are stored in ascending order: ``coeffs[k]`` multiplies ``x**k``.
Trailing zeros are trimmed on construction (exact zeros only), so the last
stored coefficient is nonzero unless the polynomial is the zero polynomial,
which is represented as ``[0.0]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConstantPolynomial, InvalidInput, ZeroDenominator, ZeroPolynomial

__all__ = [
    "Polynomial",
    "RationalFunction",
    "poly_eval",
    "poly_mul",
    "poly_add",
    "poly_pow",
    "poly_roots",
    "balance",
    "companion",
]


class Polynomial:
    """Immutable real polynomial in one indeterminate."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        if isinstance(coeffs, Polynomial):
            self._c = coeffs._c
            return
        c = np.array(coeffs, dtype=np.float64, ndmin=1)
        if c.ndim != 1 or c.size == 0:
            raise InvalidInput("polynomial needs a non-empty 1-D coefficient sequence")
        if not np.all(np.isfinite(c)):
            raise InvalidInput("polynomial coefficients must be finite")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1)
        c = c + 0.0  # normalise -0.0
        c.setflags(write=False)
        self._c = c

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def degree(self) -> int:
        return self._c.size - 1

    @property
    def is_zero(self) -> bool:
        return self._c.size == 1 and self._c[0] == 0.0

    def tolist(self) -> list[float]:
        return self._c.tolist()

    def __call__(self, x):
        return poly_eval(self, x)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return f"Polynomial({self._c.tolist()!r})"

    def __len__(self):
        return self._c.size

    def __neg__(self):
        return Polynomial(-self._c)

    def __add__(self, other):
        return poly_add(self, _as_poly(other))

    __radd__ = __add__

    def __sub__(self, other):
        return poly_add(self, _as_poly(other), -1.0)

    def __rsub__(self, other):
        return poly_add(_as_poly(other), self, -1.0)

    def __mul__(self, other):
        return poly_mul(self, _as_poly(other))

    __rmul__ = __mul__

    def __pow__(self, k):
        return poly_pow(self, k)


def _as_poly(p) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial(p)


def poly_eval(p, x):
    """Horner evaluation at a scalar or an array of (complex) points."""
    c = _as_poly(p).coeffs
    if np.ndim(x) == 0:
        acc = complex(c[-1])
        xc = complex(x)
        for k in range(c.size - 2, -1, -1):
            acc = acc * xc + c[k]
        return acc
    xs = np.asarray(x, dtype=np.complex128)
    return _kernels.horner(c, xs.ravel()).reshape(xs.shape)


def poly_mul(a, b) -> Polynomial:
    return Polynomial(np.convolve(_as_poly(a).coeffs, _as_poly(b).coeffs))


def poly_add(a, b, scale: float = 1.0) -> Polynomial:
    """``a + scale * b``."""
    ca = _as_poly(a).coeffs
    cb = _as_poly(b).coeffs
    out = np.zeros(max(ca.size, cb.size))
    out[: ca.size] += ca
    out[: cb.size] += scale * cb
    return Polynomial(out)


def poly_pow(p, k: int) -> Polynomial:
    if int(k) != k or k < 0:
        raise InvalidInput(f"power must be a nonnegative integer, got {k!r}")
    out = Polynomial([1.0])
    p = _as_poly(p)
    for _ in range(int(k)):
        out = poly_mul(out, p)
    return out


def companion(p) -> np.ndarray:
    """Companion matrix (subdiagonal ones, last column) of the monic ``p``."""
    c = _as_poly(p).coeffs
    n = c.size - 1
    mat = np.zeros((n, n))
    if n > 1:
        mat[np.arange(1, n), np.arange(n - 1)] = 1.0
    mat[:, -1] = -c[:-1] / c[-1]
    return mat


def balance(mat: np.ndarray) -> np.ndarray:
    """Parlett-Reinsch diagonal similarity balancing with radix-2 scaling.

    Returns a new matrix with the same eigenvalues whose row and column norms
    are roughly equal, which tames the huge dynamic range of companion
    matrices built from physically scaled coefficients.
    """
    a = np.array(mat, dtype=np.float64)
    n = a.shape[0]
    radix = 2.0
    sqrdx = radix * radix
    done = False
    while not done:
        done = True
        for i in range(n):
            c = np.abs(a[:, i]).sum() - abs(a[i, i])
            r = np.abs(a[i, :]).sum() - abs(a[i, i])
            if c == 0.0 or r == 0.0:
                continue
            g = r / radix
            f = 1.0
            s = c + r
            while c < g:
                f *= radix
                c *= sqrdx
            g = r * radix
            while c > g:
                f /= radix
                c /= sqrdx
            if (c + r) / f < 0.95 * s:
                done = False
                a[i, :] /= f
                a[:, i] *= f
    return a


def poly_roots(p) -> np.ndarray:
    """All roots of ``p`` with multiplicity, as a complex array.

    Exact zero roots (vanishing low-order coefficients) are split off and
    returned exactly; the rest come from the eigenvalues of the balanced
    companion matrix.
    """
    p = _as_poly(p)
    if p.is_zero:
        raise ZeroPolynomial("the zero polynomial has no finite root set")
    if p.degree() == 0:
        raise ConstantPolynomial("a nonzero constant has no roots")
    c = p.coeffs
    nzeros = int(np.flatnonzero(c)[0])
    core = c[nzeros:]
    roots = [np.zeros(nzeros, dtype=np.complex128)]
    m = core.size - 1
    if m == 1:
        roots.append(np.array([-core[0] / core[1]], dtype=np.complex128))
    elif m > 1:
        eig = np.linalg.eigvals(balance(companion(core)))
        roots.append(eig.astype(np.complex128))
    return np.concatenate(roots)


@dataclass(frozen=True)
class RationalFunction:
    """``num(x) / den(x)``; no pole-zero cancellation is ever performed."""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        object.__setattr__(self, "num", _as_poly(self.num))
        object.__setattr__(self, "den", _as_poly(self.den))
        if self.den.is_zero:
            raise ZeroDenominator("denominator is the zero polynomial")

    def __call__(self, x):
        return poly_eval(self.num, x) / poly_eval(self.den, x)

    @property
    def is_proper(self) -> bool:
        return self.num.degree() <= self.den.degree()

    def poles(self) -> np.ndarray:
        return poly_roots(self.den)

    def zeros(self) -> np.ndarray:
        return poly_roots(self.num)
