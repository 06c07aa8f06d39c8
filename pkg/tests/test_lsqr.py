import numpy as np
import pytest

from wreath_observable.lsqr import lsqr


def run(a, b, **kw):
    return lsqr(lambda v: a @ v, lambda u: a.T @ u, b, a.shape[1], **kw)


@pytest.mark.parametrize("shape", [(30, 10), (10, 30), (40, 40)])
def test_matches_lstsq_residual(shape):
    rng = np.random.default_rng(sum(shape))
    a = rng.standard_normal(shape)
    b = rng.standard_normal(shape[0])
    res = run(a, b, tol=1e-13, max_iters=500)
    x_ref = np.linalg.lstsq(a, b, rcond=None)[0]
    assert res.converged
    assert np.linalg.norm(a @ res.x - b) == pytest.approx(np.linalg.norm(a @ x_ref - b), abs=1e-9)


def test_rank_deficient():
    rng = np.random.default_rng(1)
    u = rng.standard_normal((50, 5))
    a = u @ rng.standard_normal((5, 20))  # rank 5
    b = rng.standard_normal(50)
    res = run(a, b, tol=1e-13, max_iters=500)
    proj = u @ np.linalg.lstsq(u, b, rcond=None)[0]
    assert np.allclose(a @ res.x, proj, atol=1e-8)


def test_consistent_system_reaches_zero_residual():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((20, 30))
    b = a @ rng.standard_normal(30)
    res = run(a, b, tol=1e-12, max_iters=500)
    assert res.converged
    assert np.linalg.norm(a @ res.x - b) <= 1e-9 * np.linalg.norm(b)


def test_zero_rhs_and_orthogonal_rhs():
    a = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    assert run(a, np.zeros(3)).iterations == 0
    res = run(a, np.array([0.0, 0.0, 1.0]))
    assert res.converged and not res.x.any()


def test_iteration_limit_flag():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((60, 40))
    res = run(a, rng.standard_normal(60), tol=1e-15, max_iters=2)
    assert not res.converged and res.iterations == 2


def test_agrees_with_scipy():
    sla = pytest.importorskip("scipy.sparse.linalg")
    rng = np.random.default_rng(4)
    a = rng.standard_normal((35, 25))
    b = rng.standard_normal(35)
    ours = run(a, b, tol=1e-14, max_iters=1000)
    ref = sla.lsqr(a, b, atol=1e-14, btol=1e-14, iter_lim=1000)[0]
    assert np.allclose(ours.x, ref, atol=1e-8)
