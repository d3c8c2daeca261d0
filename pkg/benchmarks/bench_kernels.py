"""Compare the numba kernels against the numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Kernel timings call both implementations directly on identical inputs and
check that they agree. ``--end-to-end`` also times ``stmod report thm33``
in two subprocesses, one with STMOD_DISABLE_NUMBA=1.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from stmod import _kernels as K


def _best(fn, make_args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        args = make_args()
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def bench_rref(p, shape, repeat, rng):
    A = rng.integers(0, p, size=shape).astype(np.int64)
    inv = K.inverse_table(p)
    t_np, (r_np, piv_np) = _best(K.rref_modp_np, lambda: (A.copy(), p, inv), repeat)
    K.rref_modp_nb(A.copy(), p, inv)  # compile
    t_nb, (r_nb, piv_nb) = _best(K.rref_modp_nb, lambda: (A.copy(), p, inv), repeat)
    assert r_np == r_nb and np.array_equal(piv_np, piv_nb)
    return f"rref mod {p} {shape}", t_np, t_nb


def bench_gf2(shape, repeat, rng):
    A = rng.integers(0, 2, size=shape)
    W = K.pack_gf2(A)
    t_np, (r_np, _) = _best(K.rref_gf2_np, lambda: (W.copy(), shape[1]), repeat)
    K.rref_gf2_nb(W.copy(), shape[1])
    t_nb, (r_nb, _) = _best(K.rref_gf2_nb, lambda: (W.copy(), shape[1]), repeat)
    assert r_np == r_nb
    return f"rref gf2 packed {shape}", t_np, t_nb


def bench_batch(p, batch, n, repeat, rng):
    X = rng.integers(0, p, size=(batch, n, n)).astype(np.int64)
    inv = K.inverse_table(p)
    t_np, a = _best(K.batch_full_rank_np, lambda: (X.copy(), p, inv), repeat)
    K.batch_full_rank_nb(X[:1].copy(), p, inv)
    t_nb, b = _best(K.batch_full_rank_nb, lambda: (X.copy(), p, inv), repeat)
    assert np.array_equal(a, b)
    return f"batch rank mod {p} ({batch}x{n}x{n})", t_np, t_nb


def end_to_end():
    rows = []
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, STMOD_DISABLE_NUMBA=flag)
        t = time.perf_counter()
        subprocess.run([sys.executable, "-m", "stmod", "report", "thm33"], env=env, check=True, capture_output=True)
        rows.append((label, time.perf_counter() - t))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    if K.rref_modp_nb is None:
        sys.exit("numba is not installed")
    rng = np.random.default_rng(args.seed)
    results = [
        bench_rref(3, (60, 80), args.repeat, rng),
        bench_rref(5, (200, 240), args.repeat, rng),
        bench_gf2((300, 400), args.repeat, rng),
        bench_gf2((1000, 1200), args.repeat, rng),
        bench_batch(2, 4096, 6, args.repeat, rng),
        bench_batch(5, 2048, 8, args.repeat, rng),
    ]
    print(f"{'kernel':<36}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, a, b in results:
        print(f"{name:<36}{a * 1e3:>12.2f}{b * 1e3:>12.2f}{a / b:>10.1f}")
    if args.end_to_end:
        for label, t in end_to_end():
            print(f"report thm33 [{label}]: {t:.2f} s")


if __name__ == "__main__":
    main()
