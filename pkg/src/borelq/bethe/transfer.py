"""Twisted six-vertex transfer matrices of ``A1`` chains and their spectra."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels
from .chain import ChainError, ChainSpec, ad_polynomials
from .poly import PolyU

MAX_L = 12


class TransferError(RuntimeError):
    pass


def _check_a1(chain: ChainSpec) -> None:
    if not chain.is_a1():
        raise ChainError("numeric transfer matrices are built for A1 chains only")
    if chain.L < 1:
        raise ChainError("the chain has no sites")
    if chain.L > MAX_L:
        raise ChainError(f"L = {chain.L} exceeds {MAX_L}")


def sector_states(L: int, N: int) -> np.ndarray:
    """Basis indices with ``N`` down spins, increasing."""
    return np.array(sorted(sum(1 << k for k in c) for c in combinations(range(L), N)), dtype=np.int64)


def magnon_numbers(L: int) -> np.ndarray:
    return np.array([bin(s).count("1") for s in range(1 << L)])


def _pole_check(chain: ChainSpec, u: complex) -> None:
    # R(x) is polynomial in x = u/(q b); only u -> infinity is excluded
    if not np.isfinite(u):
        raise TransferError(f"spectral parameter {u} is not finite")


def transfer_block(chain: ChainSpec, u: complex, N: int, force_numpy: bool = False) -> np.ndarray:
    """Block of ``T(u)`` on the ``N``-magnon sector, basis :func:`sector_states`.

    ``T(u) = prod_k (q b_k) [q^-N A(u) + p q^N D(u)]`` where ``A``, ``D`` are
    the diagonal auxiliary blocks of ``R_{0L}(u/(q b_L)) ... R_{01}(u/(q b_1))``.
    Relative to the twist ``diag(p~^-1, p~)`` this carries the extra factor
    ``p~ q^{-/+N}``, fixed so that the all-up eigenvalue is ``a(u) + p d(u)``.
    """
    _check_a1(chain)
    _pole_check(chain, u)
    bs = [b for _, b in chain.factors]
    return _kernels.sector_block(u, chain.q, bs, chain.p(1), sector_states(chain.L, N), force_numpy)


def build_transfer_matrix_sl2(chain: ChainSpec, u: complex, force_numpy: bool = False) -> np.ndarray:
    """Full ``2^L x 2^L`` transfer matrix (block diagonal in the magnon number)."""
    _check_a1(chain)
    L = chain.L
    T = np.zeros((1 << L, 1 << L), complex)
    for N in range(L + 1):
        st = sector_states(L, N)
        T[np.ix_(st, st)] = transfer_block(chain, u, N, force_numpy)
    return T


@dataclass
class Eigenline:
    sector: int
    index: int
    vector: np.ndarray
    lam: PolyU
    holdout_residual: float


def _sample_points(rng: np.random.Generator, n: int) -> np.ndarray:
    r = 0.6 + 0.8 * rng.random(n)
    th = 2 * np.pi * rng.random(n)
    return r * np.exp(1j * th)


def diagonalize_sector(chain: ChainSpec, N: int, rng: np.random.Generator, attempts: int = 5,
                       n_holdout: int = 1) -> list[Eigenline]:
    L = chain.L
    deg = L
    for _ in range(attempts):
        base = _sample_points(rng, 1)[0]
        Tb = transfer_block(chain, base, N)
        w, V = np.linalg.eig(Tb)
        if w.size > 1:
            gaps = np.where(np.eye(w.size, dtype=bool), np.inf, np.abs(w[:, None] - w[None, :]))
            if gaps.min() < 1e-7 * max(1.0, np.abs(w).max()):
                continue
        Vi = np.linalg.inv(V)
        pts = _sample_points(rng, deg + 1 + n_holdout)
        samples = np.array([np.diag(Vi @ transfer_block(chain, u, N) @ V) for u in pts])
        fit_pts = pts[: deg + 1]
        vand = np.vander(fit_pts, deg + 1, increasing=True)
        coeffs = np.linalg.solve(vand, samples[: deg + 1])
        out = []
        for k in range(w.size):
            lam = PolyU(coeffs[:, k])
            pred = lam(pts[deg + 1:])
            ref = samples[deg + 1:, k]
            scale = max(np.abs(ref).max(), 1e-300)
            out.append(Eigenline(N, k, V[:, k], lam, float(np.abs(pred - ref).max() / scale)))
        return out
    raise TransferError(f"eigenvalue collision in sector {N} after {attempts} attempts")


def diagonalize_and_interpolate(chain: ChainSpec, n_holdout: int = 1) -> list[Eigenline]:
    """Eigenvalue polynomials of ``T(u)`` for every eigenvector, sector by sector."""
    _check_a1(chain)
    rng = np.random.default_rng(chain.seed)
    out: list[Eigenline] = []
    for N in range(chain.L + 1):
        out.extend(diagonalize_sector(chain, N, rng, n_holdout=n_holdout))
    return out


def vacuum_eigenvalue(chain: ChainSpec) -> PolyU:
    a, d = ad_polynomials(chain, 1)
    return a + d * chain.p(1)
