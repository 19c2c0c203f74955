"""Time the numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 100000]

Both backends are imported directly from ``alphadisc._kernels``, so the
ALPHADISC_DISABLE_NUMBA flag does not matter here. The first numba call is
made before timing so compilation is not counted.
"""
import argparse
import timeit

import numpy as np

from alphadisc import _kernels
from alphadisc._accel import NUMBA_AVAILABLE


def cases(n, rng):
    coeffs = rng.normal(size=6)
    z = np.exp(2j * np.pi * rng.random(n))
    e = rng.normal(size=n)
    b = np.array([0.2, 0.1, 0.05])
    a = np.array([1.0, -0.5, 0.1])
    x = rng.normal(size=n // 10)  # the numpy recursion is a python loop
    return {
        "horner": (_kernels.horner_numpy, _kernels.horner_numba, (coeffs, z)),
        "hexagonal_fold": (_kernels.hexagonal_fold_numpy, _kernels.hexagonal_fold_numba,
                           (e, 0.7, 1e-4, 0.0, 0.0)),
        "direct_form": (_kernels.direct_form_numpy, _kernels.direct_form_numba, (b, a, x)),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--size", type=int, default=100_000)
    args = p.parse_args(argv)
    if not NUMBA_AVAILABLE:
        print("numba is not installed; only the numpy timings are meaningful")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<16}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}  max |diff|")
    for name, (f_np, f_nb, fargs) in cases(args.size, rng).items():
        f_nb(*fargs)  # compile
        t_np = min(timeit.repeat(lambda: f_np(*fargs), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: f_nb(*fargs), number=1, repeat=args.repeat))
        diff = np.max(np.abs(f_np(*fargs) - f_nb(*fargs)))
        print(f"{name:<16}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>9.1f}x  {diff:.2g}")


if __name__ == "__main__":
    main()
