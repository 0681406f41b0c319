import os
import subprocess
import sys

import numpy as np
import pytest

from k3tk import _kernels


def test_sum_zero_grid_shapes():
    g = _kernels.sum_zero_grid(3)
    assert (g.sum(axis=1) == 0).all()
    assert not (g == 0).all(axis=1).any()
    assert len({tuple(r) for r in g}) == len(g)
    assert _kernels.sum_zero_grid(2, dim=2).shape == (4, 2)
    with pytest.raises(ValueError):
        _kernels.sum_zero_grid(2, dim=4)


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")
def test_backends_agree():
    rng = np.random.default_rng(7)
    exps = rng.integers(0, 7, size=(12, 3))
    lams = _kernels.sum_zero_grid(6)
    assert np.array_equal(_kernels.mu_grid(exps, lams, backend="numba"), _kernels.mu_grid(exps, lams, backend="numpy"))
    vecs = rng.integers(-3, 4, size=(50, 5))
    a = rng.integers(-2, 3, size=(5, 5))
    gram = a + a.T
    assert np.array_equal(
        _kernels.quad_forms(vecs, gram, backend="numba"), _kernels.quad_forms(vecs, gram, backend="numpy")
    )


def test_bad_inputs():
    with pytest.raises(ValueError):
        _kernels.mu_grid(np.zeros((0, 3)), np.zeros((1, 3)))
    with pytest.raises(ValueError):
        _kernels.mu_grid(np.zeros((2, 3)), np.zeros((1, 2)))
    with pytest.raises(ValueError):
        _kernels.quad_forms(np.zeros((2, 3)), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        _kernels.mu_grid(np.zeros((1, 3)), np.zeros((1, 3)), backend="cuda")


def test_env_flag_forces_numpy():
    env = dict(os.environ, K3TK_NO_NUMBA="1")
    code = "from k3tk import _kernels as k; print(k.HAVE_NUMBA, k._pick(None))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "numpy"]
