"""Compare the numba and numpy kernels on the workloads the package runs.

    python benchmarks/bench_kernels.py [--bound 40] [--repeat 5]

mu_grid: weight maxima of a 28-monomial sextic support over a bounded grid of
one-parameter subgroups (the brute-force stability oracle).
quad_forms: norms of random short vectors under the rank-17 2E8+A1 Gram.
"""

import argparse
import time

import numpy as np

from k3tk import _kernels
from k3tk.forms import all_monomials
from k3tk.lattice import from_blocks


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=40)
    ap.add_argument("--vectors", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    exps = np.array(all_monomials(3, 6), dtype=np.int64)
    lams = _kernels.sum_zero_grid(args.bound)
    gram = np.array(from_blocks(["E8", "E8", "A1"]).gram, dtype=np.int64)
    vecs = np.random.default_rng(0).integers(-3, 4, size=(args.vectors, gram.shape[0]), dtype=np.int64)

    cases = {
        f"mu_grid ({len(lams)} weights x {len(exps)} monomials)": (_kernels.mu_grid, exps, lams),
        f"quad_forms ({len(vecs)} vectors, rank {gram.shape[0]})": (_kernels.quad_forms, vecs, gram),
    }
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    print(f"{'kernel':<48} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for name, (fn, a, b) in cases.items():
        ref = fn(a, b, backend="numpy")
        row = []
        for backend in backends:
            out = fn(a, b, backend=backend)  # also warms up the JIT
            assert np.array_equal(out, ref), f"{backend} disagrees on {name}"
            row.append(best_of(lambda: fn(a, b, backend=backend), args.repeat))
        speed = f"{row[0] / row[1]:8.1f}x" if len(row) == 2 else "       n/a"
        print(f"{name:<48} " + " ".join(f"{t * 1000:8.2f}ms" for t in row) + f"  {speed}")


if __name__ == "__main__":
    main()
