"""Baxter Q recovery, Bethe equations and eigenvalues from Q."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from . import _kernels
from .chain import ChainSpec, ad_polynomials
from .poly import PolyU

RECOVER_TOL = 1e-8
DEDUP_TOL = 1e-6


class BAEError(RuntimeError):
    pass


@dataclass
class BetheState:
    sector: tuple[int, ...]
    roots: dict[int, np.ndarray]
    residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))
    q_polys: dict[int, PolyU] = field(default_factory=dict)

    def flat_roots(self) -> tuple[np.ndarray, np.ndarray]:
        nodes = [i for i in sorted(self.roots) for _ in range(len(self.roots[i]))]
        vals = [z for i in sorted(self.roots) for z in self.roots[i]]
        return np.array(nodes, np.int64), np.array(vals, complex)


# ------------------------------------------------------------------ TQ for A1

def recover_q(lam: PolyU, a: PolyU, d: PolyU, p: complex, N: int, q: complex) -> tuple[PolyU, float]:
    """Solve ``lam Q = a Q(q^-2 u) + p d Q(q^2 u)`` for ``Q = 1 + c1 u + .. + cN u^N``.

    Least squares over the coefficients of ``u^0 .. u^(L+N)``; the residual
    is relative to the size of the three polynomials."""
    L = max(a.degree, d.degree)
    if N > L:
        raise BAEError(f"sector N = {N} exceeds chain length {L}")
    if lam.degree > L:
        raise BAEError("eigenvalue polynomial exceeds the degree bound")
    rows = L + N + 1

    def column(n: int) -> np.ndarray:
        e = PolyU(np.eye(n + 1)[n])
        col = lam * e - a * e.scaled_arg(q ** -2) - d * e.scaled_arg(q ** 2) * p
        return col.padded(rows)

    rhs = -column(0)
    scale = lam.norm() + a.norm() + abs(p) * d.norm()
    if N == 0:
        return PolyU.one(), float(np.linalg.norm(rhs) / scale)
    mat = np.stack([column(n) for n in range(1, N + 1)], axis=1)
    x, *_ = np.linalg.lstsq(mat, rhs, rcond=None)
    res = float(np.linalg.norm(mat @ x - rhs) / scale)
    return PolyU(np.concatenate([[1.0], x])), res


# ------------------------------------------------------------------ BAE

def _kernel_data(chain: ChainSpec):
    rd = chain.rd
    n = rd.rank
    gexp = np.array([[rd.B(j, i) for i in rd.nodes] for j in rd.nodes], np.int64)
    qi = np.array([chain.qi(i) for i in rd.nodes], complex)
    lens = [len(chain.inhomogeneities(i)) for i in rd.nodes]
    bmat = np.zeros((n, max(1, max(lens))), complex)
    for i in rd.nodes:
        bs = chain.inhomogeneities(i)
        bmat[i - 1, : len(bs)] = bs
    pvec = np.array([chain.p(i) for i in rd.nodes], complex)
    return gexp, qi, bmat, np.array(lens, np.int64), pvec


def bae_lhs(chain: ChainSpec, nodes: np.ndarray, z: np.ndarray, form: str = "printed") -> np.ndarray:
    """Left-hand sides of the Bethe equations (``nodes`` 1-based).

    ``printed`` includes the ``mu = nu`` factor and equals ``-1`` on solutions;
    ``conventional`` omits it and equals ``q_i^-2``."""
    out = np.zeros(len(z), complex)
    for k in range(len(z)):
        i = int(nodes[k])
        a, d = ad_polynomials(chain, i)
        val = chain.p(i) * d(z[k]) / a(z[k])
        for l in range(len(z)):
            if l == k and form == "conventional":
                continue
            g = chain.qji(int(nodes[l]), i)
            x = z[k] / z[l]
            val *= (1 - g * x) / (1 - x / g)
        out[k] = val
    return out


def check_bae(state: BetheState, chain: ChainSpec, form: str = "printed") -> np.ndarray:
    """Per-root ``|LHS + 1|`` (or ``|LHS - q_i^-2|`` in the conventional form);
    ``inf`` at a pole."""
    nodes, z = state.flat_roots()
    if z.size == 0:
        return np.zeros(0)
    with np.errstate(all="ignore"):
        lhs = bae_lhs(chain, nodes, z, form)
    if form == "printed":
        res = np.abs(lhs + 1)
    else:
        target = np.array([chain.qi(int(i)) ** -2 for i in nodes])
        res = np.abs(lhs - target)
    res[~np.isfinite(res)] = np.inf
    return res


def _same_solution(x: dict[int, np.ndarray], y: dict[int, np.ndarray], tol: float) -> bool:
    for i in x:
        a, b = x[i], y[i]
        if a.size and min(np.abs(a - b[list(p)]).max() for p in permutations(range(b.size))) > tol:
            return False
    return True


def _valid(chain: ChainSpec, roots: dict[int, np.ndarray], scale: float) -> bool:
    for i, zs in roots.items():
        if np.any(np.abs(zs) < 1e-10 * scale) or not np.all(np.isfinite(zs)):
            return False
        a, _ = ad_polynomials(chain, i)
        if np.any(np.abs(a(zs)) < 1e-10 * scale ** max(a.degree, 1)):
            return False
        if zs.size > 1:
            gaps = np.where(np.eye(zs.size, dtype=bool), np.inf, np.abs(zs[:, None] - zs[None, :]))
            if gaps.min() < DEDUP_TOL * scale:
                return False
    return True


def solve_bae(
    chain: ChainSpec,
    sector: tuple[int, ...] | int,
    n_starts: int = 200,
    extra_seeds: list | None = None,
    form: str = "printed",
    maxit: int = 80,
    seed: int | None = None,
    force_numpy: bool = False,
) -> list[BetheState]:
    """Multi-start damped Newton on the logarithmic Bethe equations.

    Random starts are drawn from an annulus around the zeros ``b / q_i`` of
    ``a_i``; ``extra_seeds`` (lists of root arrays in node order) are tried
    first.  Solutions are deduplicated up to permutation within each node."""
    rd = chain.rd
    if isinstance(sector, int):
        sector = (sector,)
    sector = tuple(int(n) for n in sector)
    if len(sector) != rd.rank:
        raise BAEError(f"sector needs {rd.rank} magnon numbers")
    nodes = np.array([i for i in rd.nodes for _ in range(sector[i - 1])], np.int64)
    M = nodes.size
    if M == 0:
        return [BetheState(sector, {i: np.zeros(0, complex) for i in rd.nodes}, np.zeros(0),
                           {i: PolyU.one() for i in rd.nodes})]
    scale = max([abs(b) for _, b in chain.factors] + [1.0])
    rng = np.random.default_rng(chain.seed if seed is None else seed)
    centres = {i: [b / chain.qi(i) for b in chain.inhomogeneities(i)] or [1.0] for i in rd.nodes}
    starts = []
    for s in extra_seeds or []:
        starts.append(np.asarray(s, complex).ravel())
    for _ in range(n_starts):
        row = []
        for i in nodes:
            c = centres[int(i)][rng.integers(len(centres[int(i)]))]
            rad = abs(c) * (0.1 + 0.9 * rng.random())
            row.append(c + rad * np.exp(2j * np.pi * rng.random()))
        starts.append(np.array(row))
    starts = np.array([s for s in starts if s.size == M])
    gexp, qi, bmat, bcnt, pvec = _kernel_data(chain)
    roots, ok = _kernels.newton_batch(starts, nodes - 1, gexp, chain.q, qi, bmat, bcnt, pvec,
                                      form == "printed", maxit, 1e-13, force_numpy)
    found: list[BetheState] = []
    for z, good in zip(roots, ok):
        if not good:
            continue
        split = {i: np.sort_complex(z[nodes == i]) for i in rd.nodes}
        if not _valid(chain, split, scale):
            continue
        if any(_same_solution(split, f.roots, DEDUP_TOL * scale) for f in found):
            continue
        state = BetheState(sector, split, q_polys={i: PolyU.from_roots_normalized(split[i]) for i in rd.nodes})
        state.residuals = check_bae(state, chain)
        if np.all(state.residuals < 1e-10):
            found.append(state)
    found.sort(key=lambda s: tuple((round(v.real, 8), round(v.imag, 8)) for v in s.flat_roots()[1]))
    return found


# ------------------------------------------------------------------ eigenvalue from Q

def tq_numerator(q_polys: dict[int, PolyU], chain: ChainSpec, i: int) -> PolyU:
    """``a_i prod_j Q_j(q_{j,i}^-1 u) + p_i d_i prod_j Q_j(q_{j,i} u)``."""
    a, d = ad_polynomials(chain, i)
    lo, hi = a, d * chain.p(i)
    for j in chain.rd.nodes:
        if chain.rd.C(j, i):
            g = chain.qji(j, i)
            lo = lo * q_polys[j].scaled_arg(1 / g)
            hi = hi * q_polys[j].scaled_arg(g)
    return lo + hi


def eigenvalue_poly_from_q(q_polys: dict[int, PolyU], chain: ChainSpec, i: int, tol: float = 1e-8) -> PolyU:
    """Divide the TQ numerator by ``Q_i``; a remainder signals a BAE violation."""
    num = tq_numerator(q_polys, chain, i)
    quo, rem = num.divmod(q_polys[i])
    if rem.norm() > tol * max(num.norm(), 1.0):
        raise BAEError(f"nonzero remainder {rem.norm():.3e} in the TQ division")
    return quo


def eigenvalue_from_q(q_polys: dict[int, PolyU], chain: ChainSpec, i: int, u: complex) -> complex:
    return complex(eigenvalue_poly_from_q(q_polys, chain, i)(u))
