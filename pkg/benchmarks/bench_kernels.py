"""Time every kernel on its numba path and its numpy path.

    python3 benchmarks/bench_kernels.py [--repeat N] [--size N]

The first numba call compiles; it is made once before timing and reported
separately. Results are the best of ``--repeat`` runs of an inner loop.
"""

import argparse
import timeit

import numpy as np

from matfun import _kernels


def crand(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def cases(rng, n):
    p = crand(rng, n + 1)
    # nodes with multiplicity 3 each, as the interpolation code calls it
    z = np.repeat(crand(rng, (n + 2) // 3), 3)[:n]
    taylor = np.zeros((n, n), dtype=np.complex128)
    taylor[:, :3] = crand(rng, n, 3)
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    monic = np.poly(roots)[::-1].astype(np.complex128)
    seeds = 1.1 * np.exp(2j * np.pi * (np.arange(n) + 0.25) / n)
    return {
        "horner": (p, 0.3 + 0.2j),
        "taylor_coeffs": (p, 0.3 + 0.2j, 4),
        "series_mul": (crand(rng, n), crand(rng, n)),
        "series_div": (crand(rng, n), crand(rng, n) + 3.0),
        "series_exp": (crand(rng, n),),
        "series_sincos": (crand(rng, n),),
        "confluent_dd": (z, taylor),
        "newton_to_monomial": (crand(rng, n), z),
        "aberth": (monic, seeds, 500, True),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=12, help="polynomial degree / series length")
    args = ap.parse_args()
    if not _kernels.JIT:
        raise SystemExit("numba is not installed; only the numpy path exists")

    rng = np.random.default_rng(0)
    print(f"size {args.size}, best of {args.repeat}")
    print(f"{'kernel':<20}{'compile ms':>12}{'numba us':>12}{'numpy us':>12}{'speedup':>10}")
    for name, call_args in cases(rng, args.size).items():
        jit, ref = _kernels.JIT[name], _kernels.NUMPY[name]
        t0 = timeit.default_timer()
        jit(*call_args)
        compile_ms = (timeit.default_timer() - t0) * 1e3
        timings = []
        for fn in (jit, ref):
            timer = timeit.Timer(lambda fn=fn: fn(*call_args))
            loops, _ = timer.autorange()
            best = min(timer.repeat(repeat=args.repeat, number=loops)) / loops
            timings.append(best * 1e6)
        print(f"{name:<20}{compile_ms:>12.1f}{timings[0]:>12.2f}{timings[1]:>12.2f}"
              f"{timings[1] / timings[0]:>9.1f}x")


if __name__ == "__main__":
    main()
