"""Batched integer kernels with a numba path and a pure-numpy fallback.

Set ``K3TK_NO_NUMBA=1`` to force the numpy implementations.  ``K3TK_THREADS``
caps the numba thread pool.  All kernels work on ``int64`` arrays and return
exact integers; callers keep entries small (weights and exponents of sextics,
short lattice vectors).
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("K3TK_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
    if "NUMBA_THREADING_LAYER" not in os.environ:
        # avoid probing an outdated TBB; the workqueue layer is always present
        numba.config.THREADING_LAYER = "workqueue"
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False


def _configure_threads() -> None:
    cap = os.environ.get("K3TK_THREADS")
    if not (HAVE_NUMBA and cap):
        return
    try:
        n = max(1, min(int(cap), numba.config.NUMBA_NUM_THREADS))
    except ValueError:
        return
    numba.set_num_threads(n)


def mu_grid_numpy(exps: np.ndarray, lams: np.ndarray) -> np.ndarray:
    """For each row λ of ``lams``, max over rows m of ``exps`` of ⟨λ, m⟩."""
    return (lams @ exps.T).max(axis=1)


def quad_forms_numpy(vecs: np.ndarray, gram: np.ndarray) -> np.ndarray:
    """vᵀ G v for each row v of ``vecs``."""
    return np.einsum("ij,jk,ik->i", vecs, gram, vecs)


if HAVE_NUMBA:

    @njit(parallel=True, cache=True)
    def _mu_grid_jit(exps, lams):
        n, k = lams.shape
        out = np.empty(n, dtype=np.int64)
        for i in prange(n):
            best = np.iinfo(np.int64).min
            for r in range(exps.shape[0]):
                s = 0
                for c in range(k):
                    s += lams[i, c] * exps[r, c]
                if s > best:
                    best = s
            out[i] = best
        return out

    @njit(parallel=True, cache=True)
    def _quad_forms_jit(vecs, gram):
        n, k = vecs.shape
        out = np.empty(n, dtype=np.int64)
        for i in prange(n):
            s = 0
            for a in range(k):
                va = vecs[i, a]
                if va == 0:
                    continue
                t = 0
                for b in range(k):
                    t += gram[a, b] * vecs[i, b]
                s += va * t
            out[i] = s
        return out

    _configure_threads()


def _as_i64(a) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(a, dtype=np.int64))


def mu_grid(exps, lams, *, backend: str | None = None) -> np.ndarray:
    """Weight maxima of one support against many one-parameter subgroups."""
    exps, lams = _as_i64(exps), _as_i64(lams)
    if exps.ndim != 2 or lams.ndim != 2 or exps.shape[1] != lams.shape[1]:
        raise ValueError("shape mismatch between exponents and weights")
    if exps.shape[0] == 0:
        raise ValueError("empty support")
    if _pick(backend) == "numba":
        return _mu_grid_jit(exps, lams)
    return mu_grid_numpy(exps, lams)


def quad_forms(vecs, gram, *, backend: str | None = None) -> np.ndarray:
    vecs, gram = _as_i64(vecs), _as_i64(gram)
    if vecs.ndim != 2 or gram.shape != (vecs.shape[1], vecs.shape[1]):
        raise ValueError("shape mismatch between vectors and Gram matrix")
    if _pick(backend) == "numba":
        return _quad_forms_jit(vecs, gram)
    return quad_forms_numpy(vecs, gram)


def _pick(backend: str | None) -> str:
    if backend is None:
        return "numba" if HAVE_NUMBA else "numpy"
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but unavailable")
    if backend not in {"numba", "numpy"}:
        raise ValueError(f"unknown backend {backend!r}")
    return backend


def sum_zero_grid(bound: int, dim: int = 3) -> np.ndarray:
    """All nonzero integer vectors with Σ = 0 and entries in [−bound, bound]."""
    if dim == 2:
        t = np.arange(-bound, bound + 1, dtype=np.int64)
        t = t[t != 0]
        return np.stack([t, -t], axis=1)
    if dim != 3:
        raise ValueError("only 2 or 3 variables are supported")
    a, b = np.meshgrid(np.arange(-bound, bound + 1), np.arange(-bound, bound + 1), indexing="ij")
    a, b = a.ravel(), b.ravel()
    c = -(a + b)
    keep = (np.abs(c) <= bound) & ~((a == 0) & (b == 0))
    return np.stack([a[keep], b[keep], c[keep]], axis=1).astype(np.int64)
