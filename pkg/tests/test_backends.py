import subprocess
import sys

import numpy as np
import pytest

from petzaug.backends import load_backend

from conftest import random_density


def _problem(n=5, d=4, seed=0):
    rng = np.random.default_rng(seed)
    # density matrices double as the "powered" stack; any PSD stack works
    wa = np.stack([random_density(d, seed=seed + j) for j in range(n)])
    p = rng.dirichlet(np.ones(n))
    return np.ascontiguousarray(wa), p


@pytest.fixture(scope="module")
def numpy_backend():
    return load_backend("numpy")


@pytest.fixture(scope="module")
def numba_backend():
    return load_backend("numba")


class TestEquivalence:
    def test_weighted_state_sum(self, numpy_backend, numba_backend):
        wa, p = _problem()
        a = numpy_backend.weighted_state_sum(wa, p)
        b = numba_backend.weighted_state_sum(wa, p)
        assert np.max(np.abs(a - b)) <= 1e-14
        assert np.max(np.abs(a - np.tensordot(p, wa, axes=1))) <= 1e-14

    def test_pair_traces(self, numpy_backend, numba_backend):
        wa, _ = _problem()
        x = np.ascontiguousarray(random_density(4, seed=99))
        a = numpy_backend.pair_traces(wa, x)
        b = numba_backend.pair_traces(wa, x)
        assert np.max(np.abs(a - b)) <= 1e-14
        want = [np.trace(w @ x).real for w in wa]
        assert np.allclose(a, want, atol=1e-14)

    @pytest.mark.parametrize("alpha", [0.6, 0.9, 2.0])
    def test_fixed_point_loop(self, numpy_backend, numba_backend, alpha):
        wa, p = _problem(seed=3)
        out_np = numpy_backend.fixed_point_loop(wa, p, alpha, 1e-11, 10_000)
        out_nb = numba_backend.fixed_point_loop(wa, p, alpha, 1e-11, 10_000)
        q_np, qp_np, it_np, b_np, s_np = out_np
        q_nb, qp_nb, it_nb, b_nb, s_nb = out_nb
        assert s_np == s_nb == 0
        assert it_np == it_nb
        assert np.max(np.abs(q_np - q_nb)) <= 1e-12
        assert np.max(np.abs(qp_np - qp_nb)) <= 1e-12
        assert np.allclose(b_np[:it_np], b_nb[:it_nb], atol=1e-12)


class TestSelection:
    def test_unknown_backend_rejected(self):
        with pytest.raises(ValueError, match="unknown backend"):
            load_backend("gpu")

    def test_cache_returns_same_namespace(self):
        assert load_backend("numpy") is load_backend("numpy")

    @pytest.mark.parametrize("flag", ["numpy", "numba", "auto"])
    def test_env_flag_selects_backend(self, flag):
        expected = "numpy" if flag == "numpy" else "numba"
        code = (
            "from petzaug.backends import active_backend; "
            "print(active_backend().name)"
        )
        out = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True,
            text=True,
            env={"PETZAUG_BACKEND": flag, "PATH": "/usr/bin:/bin"},
            check=True,
        )
        assert out.stdout.strip() == expected

    def test_numpy_backend_solves_capacity(self, monkeypatch):
        # route the whole solver stack through the fallback kernels
        monkeypatch.setenv("PETZAUG_BACKEND", "numpy")
        from petzaug.channel import random_channel
        from petzaug.solvers import SolverConfig, fgm_capacity

        ch = random_channel(4, 3, seed=21)
        res_np = fgm_capacity(ch, SolverConfig(alpha=0.6, iters=60))
        monkeypatch.setenv("PETZAUG_BACKEND", "numba")
        res_nb = fgm_capacity(ch, SolverConfig(alpha=0.6, iters=60))
        assert res_np.capacity == pytest.approx(res_nb.capacity, abs=1e-12)
