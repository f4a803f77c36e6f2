"""Compare the numba and numpy kernels on transfer blocks and batched Newton.

    python benchmarks/bench_kernels.py [--L 8] [--repeat 5]

The numba path is compiled (and cached) once before timing.  Set
BORELQ_DISABLE_NUMBA=1 to confirm the library falls back to numpy.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from borelq.bethe import _kernels, random_inhomogeneous_chain
from borelq.bethe.bae import _kernel_data
from borelq.bethe.transfer import sector_states


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--L", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--starts", type=int, default=400)
    args = ap.parse_args()

    ch = random_inhomogeneous_chain(args.L, seed=1)
    bs = np.array(ch.inhomogeneities(1))
    N = args.L // 2
    st = sector_states(args.L, N)
    u, q, p = 0.4 + 0.3j, ch.q, ch.p(1)

    gexp, qi, bmat, bcnt, pvec = _kernel_data(ch)
    M = min(3, args.L)
    rng = np.random.default_rng(0)
    starts = rng.normal(size=(args.starts, M)) + 1j * rng.normal(size=(args.starts, M))
    node = np.zeros(M, np.int64)

    print(f"backend available: {_kernels.backend()}")
    rows = []
    block = lambda force: _kernels.sector_block(u, q, bs, p, st, force_numpy=force)  # noqa: E731
    newton = lambda force: _kernels.newton_batch(starts, node, gexp, q, qi, bmat, bcnt, pvec, force_numpy=force)  # noqa: E731
    for name, fn in ((f"sector block L={args.L} N={N} ({len(st)}x{len(st)})", block),
                     (f"Newton batch {args.starts} starts, M={M}", newton)):
        t_np = best_of(lambda: fn(True), args.repeat)
        if _kernels.HAVE_NUMBA:
            fn(False)  # compile
            t_nb = best_of(lambda: fn(False), args.repeat)
            rows.append((name, t_np, t_nb))
        else:
            rows.append((name, t_np, float("nan")))

    if _kernels.HAVE_NUMBA:
        a, b = block(False), block(True)
        print(f"sector block max |numba - numpy| = {np.abs(a - b).max():.1e}")
    print(f"{'kernel':48s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for name, t_np, t_nb in rows:
        print(f"{name:48s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}")


if __name__ == "__main__":
    main()
