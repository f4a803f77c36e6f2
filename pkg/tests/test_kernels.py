import numpy as np
import pytest

from borelq.bethe import _kernels, default_chain, random_inhomogeneous_chain
from borelq.bethe.bae import _kernel_data, bae_lhs
from borelq.bethe.transfer import sector_states

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba backend disabled")


def test_r_matrix_unitarity_at_special_point():
    R = _kernels.r_matrix(1.0, 0.8)
    # at x = 1 the R-matrix is proportional to the permutation
    P = np.eye(4)[[0, 2, 1, 3]]
    k = R[0, 0]
    assert np.allclose(R, k * P)


@needs_numba
@pytest.mark.parametrize("L", [1, 3, 6])
def test_sector_block_backends(L):
    rng = np.random.default_rng(L)
    bs = 1 + 0.3 * (rng.normal(size=L) + 1j * rng.normal(size=L))
    for N in range(L + 1):
        st = sector_states(L, N)
        a = _kernels.sector_block(0.3 + 0.8j, 0.8, bs, 0.6 + 0.5j, st)
        b = _kernels.sector_block(0.3 + 0.8j, 0.8, bs, 0.6 + 0.5j, st, force_numpy=True)
        assert a.shape == (len(st), len(st))
        assert np.abs(a - b).max() < 1e-12 * max(1.0, np.abs(b).max())


@needs_numba
def test_newton_backends():
    ch = random_inhomogeneous_chain(4, seed=1)
    gexp, qi, bmat, bcnt, pvec = _kernel_data(ch)
    rng = np.random.default_rng(0)
    starts = rng.normal(size=(30, 2)) + 1j * rng.normal(size=(30, 2))
    node = np.zeros(2, np.int64)
    r1, ok1 = _kernels.newton_batch(starts, node, gexp, ch.q, qi, bmat, bcnt, pvec)
    r2, ok2 = _kernels.newton_batch(starts, node, gexp, ch.q, qi, bmat, bcnt, pvec, force_numpy=True)
    assert (ok1 == ok2).all() and ok1.any()
    assert np.abs(r1[ok1] - r2[ok2]).max() < 1e-9


def test_newton_converged_rows_solve_bae():
    ch = default_chain(3)
    gexp, qi, bmat, bcnt, pvec = _kernel_data(ch)
    rng = np.random.default_rng(2)
    starts = rng.normal(size=(20, 1)) + 1j * rng.normal(size=(20, 1))
    roots, ok = _kernels.newton_batch(starts, np.zeros(1, np.int64), gexp, ch.q, qi, bmat, bcnt, pvec,
                                      force_numpy=True)
    assert ok.any()
    for z in roots[ok]:
        assert abs(bae_lhs(ch, np.array([1]), z)[0] + 1) < 1e-10


def test_backend_name():
    assert _kernels.backend() in ("numba", "numpy")
