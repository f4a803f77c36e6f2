"""Hot numeric kernels: numba-compiled when available, pure numpy otherwise.

Set ``BORELQ_DISABLE_NUMBA=1`` to force the numpy path.  Both paths compute
the same quantities and are cross-checked in the test suite.
"""
from __future__ import annotations

import importlib.util
import os

import numpy as np

_DISABLED = os.environ.get("BORELQ_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    # numba's np.linalg support is backed by scipy's LAPACK bindings
    if _DISABLED or importlib.util.find_spec("scipy") is None:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# ------------------------------------------------------------------ six-vertex R
#
# R(x) on aux (x) site, basis uu, ud, du, dd (0 = up, 1 = down):
#   R[uu,uu] = R[dd,dd] = q x - 1/q,   R[ud,ud] = R[du,du] = x - 1,
#   R[ud,du] = q - 1/q,                R[du,ud] = (q - 1/q) x.

def r_matrix(x: complex, q: complex) -> np.ndarray:
    w = q - 1 / q
    m = np.zeros((4, 4), complex)
    m[0, 0] = m[3, 3] = q * x - 1 / q
    m[1, 1] = m[2, 2] = x - 1
    m[1, 2] = w
    m[2, 1] = w * x
    return m


def sector_block_numpy(u, q, bs, p, states):
    """Transfer matrix restricted to the span of ``states`` (one magnon sector).

    Basis index ``sum s_k 2^k`` with ``s_k = 1`` for a down spin at site k.
    """
    L = len(bs)
    D = 1 << L
    C = len(states)
    nmag = bin(int(states[0])).count("1") if C else 0
    # columns: (aux in, state); tensor axes (aux, W, column)
    t = np.zeros((2, D, 2 * C), complex)
    for c, s in enumerate(states):
        t[0, s, c] = 1.0
        t[1, s, C + c] = 1.0
    for k in range(L):
        r4 = r_matrix(u / (q * bs[k]), q).reshape(2, 2, 2, 2)
        t = t.reshape(2, D >> (k + 1), 2, 1 << k, 2 * C)
        t = np.einsum("asbt,bhtlc->ahslc", r4, t)
    t = t.reshape(2, D, 2 * C)
    norm = np.prod([q * b for b in bs])
    up = t[0][np.asarray(states)][:, :C]
    dn = t[1][np.asarray(states)][:, C:]
    return norm * (q ** (-nmag) * up + p * q ** nmag * dn)


def _sector_block_paths(u, q, bs, p, states, pos):
    L = bs.shape[0]
    C = states.shape[0]
    out = np.zeros((C, C), np.complex128)
    w = q - 1.0 / q
    norm = 1.0 + 0j
    for k in range(L):
        norm *= q * bs[k]
    nmag = 0
    s0 = states[0]
    while s0:
        nmag += s0 & 1
        s0 >>= 1
    for c in range(C):
        win = states[c]
        for a0 in range(2):
            tw = q ** (-nmag) if a0 == 0 else p * q ** nmag
            for mask in range(1 << L):
                aux = a0
                weight = tw * norm
                wout = win
                ok = True
                for k in range(L):
                    x = u / (q * bs[k])
                    s = (win >> k) & 1
                    swap = (mask >> k) & 1
                    if aux == s:
                        if swap:
                            ok = False
                            break
                        weight *= q * x - 1.0 / q
                    elif swap:
                        # aux and site exchange their spins
                        weight *= w * x if aux == 0 else w
                        if aux == 1:
                            wout |= 1 << k
                        else:
                            wout &= ~(1 << k)
                        aux = s
                    else:
                        weight *= x - 1.0
                if ok and aux == a0:
                    r = pos[wout]
                    if r >= 0:
                        out[r, c] += weight
    return out


if HAVE_NUMBA:
    _sector_block_paths_jit = njit(cache=True)(_sector_block_paths)


def sector_block(u, q, bs, p, states, force_numpy: bool = False):
    states = np.asarray(states, dtype=np.int64)
    if HAVE_NUMBA and not force_numpy:
        L = len(bs)
        pos = -np.ones(1 << L, np.int64)
        pos[states] = np.arange(states.size)
        return _sector_block_paths_jit(
            complex(u), complex(q), np.asarray(bs, np.complex128), complex(p), states, pos
        )
    return sector_block_numpy(complex(u), complex(q), np.asarray(bs, complex), complex(p), states)


# ------------------------------------------------------------------ BAE Newton
#
# Unknowns z[k] with node[k].  Equation k (printed form):
#   p_i d_i(z_k)/a_i(z_k) prod_{l} (1 - g_{kl} z_k/z_l)/(1 - z_k/(g_{kl} z_l)) = -1
# with g_{kl} = q^{B(node_l, node_k)}; pairs with g = 1 contribute 1.
# Residual F_k = log(-LHS_k); Newton on F with step halving.

def _bae_f_j(z, node, gexp, q, qi, bmat, bcnt, pvec, self_factor):
    M = z.shape[0]
    F = np.zeros(M, np.complex128)
    J = np.zeros((M, M), np.complex128)
    for k in range(M):
        i = node[k]
        g_i = qi[i]
        val = pvec[i] * (1.0 + 0j)
        for t in range(bcnt[i]):
            b = bmat[i, t]
            val *= (z[k] - g_i * b) / (g_i * z[k] - b)
            J[k, k] += 1.0 / (z[k] - g_i * b) - g_i / (g_i * z[k] - b)
        for l in range(M):
            e = gexp[node[l], i]
            if e == 0:
                continue
            if l == k:
                if self_factor:
                    g = q ** e
                    val *= (1.0 - g) / (1.0 - 1.0 / g)
                else:
                    val *= -(g_i * g_i)
                continue
            g = q ** e
            x = z[k] / z[l]
            val *= (1.0 - g * x) / (1.0 - x / g)
            h = -g / (1.0 - g * x) + (1.0 / g) / (1.0 - x / g)
            J[k, k] += h / z[l]
            J[k, l] += -z[k] * h / (z[l] * z[l])
        F[k] = np.log(-val)
    return F, J


def _newton_batch_numpy(starts, node, gexp, q, qi, bmat, bcnt, pvec, self_factor, maxit, tol):
    """Vectorized over starts; same iteration as the compiled kernel."""
    S, M = starts.shape
    z = starts.copy()

    def fj(z):
        F = np.zeros((z.shape[0], M), complex)
        J = np.zeros((z.shape[0], M, M), complex)
        logval = np.zeros((z.shape[0], M), complex)
        with np.errstate(all="ignore"):
            for k in range(M):
                i = node[k]
                g_i = qi[i]
                val = np.full(z.shape[0], pvec[i], complex)
                for t in range(bcnt[i]):
                    b = bmat[i, t]
                    val = val * (z[:, k] - g_i * b) / (g_i * z[:, k] - b)
                    J[:, k, k] += 1.0 / (z[:, k] - g_i * b) - g_i / (g_i * z[:, k] - b)
                for l in range(M):
                    e = gexp[node[l], i]
                    if e == 0:
                        continue
                    g = q ** e
                    if l == k:
                        val = val * ((1.0 - g) / (1.0 - 1.0 / g) if self_factor else -(g_i * g_i))
                        continue
                    x = z[:, k] / z[:, l]
                    val = val * (1.0 - g * x) / (1.0 - x / g)
                    h = -g / (1.0 - g * x) + (1.0 / g) / (1.0 - x / g)
                    J[:, k, k] += h / z[:, l]
                    J[:, k, l] += -z[:, k] * h / z[:, l] ** 2
                logval[:, k] = np.log(-val)
        F[:] = logval
        return F, J

    F, J = fj(z)
    fn = np.max(np.abs(F), axis=1)
    active = np.isfinite(fn) & (fn >= tol)
    for _ in range(maxit):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        Ja, Fa = J[idx], F[idx]
        ok = np.isfinite(Ja).all(axis=(1, 2))
        with np.errstate(all="ignore"):
            ok[ok] = np.abs(np.linalg.det(Ja[ok])) > 0
        step = np.zeros((idx.size, M), complex)
        if ok.any():
            step[ok] = np.linalg.solve(Ja[ok], -Fa[ok][..., None])[..., 0]
        lam = np.ones(idx.size)
        pending = ok.copy()
        improved = np.zeros(idx.size, bool)
        for _h in range(30):
            if not pending.any():
                break
            sub = np.nonzero(pending)[0]
            zn = z[idx[sub]] + lam[sub, None] * step[sub]
            Fn, Jn = fj(zn)
            fnn = np.max(np.abs(Fn), axis=1)
            good = np.isfinite(fnn) & (fnn < fn[idx[sub]]) & np.all(zn != 0, axis=1)
            gi = sub[good]
            z[idx[gi]] = zn[good]
            F[idx[gi]] = Fn[good]
            J[idx[gi]] = Jn[good]
            fn[idx[gi]] = fnn[good]
            improved[gi] = True
            pending[gi] = False
            lam[sub[~good]] *= 0.5
        stop = ~improved | (fn[idx] < tol)
        active[idx[stop]] = False
    status = (np.isfinite(fn) & (fn < tol)).astype(np.int64)
    return z, status


if HAVE_NUMBA:
    _bae_f_j_jit = njit(cache=True)(_bae_f_j)

    @njit(cache=True)
    def _newton_batch_jit(starts, node, gexp, q, qi, bmat, bcnt, pvec, self_factor, maxit, tol):
        S, M = starts.shape
        roots = starts.copy()
        status = np.zeros(S, np.int64)
        for s in range(S):
            z = starts[s].copy()
            F, J = _bae_f_j_jit(z, node, gexp, q, qi, bmat, bcnt, pvec, self_factor)
            fn = np.max(np.abs(F))
            for _ in range(maxit):
                if not np.isfinite(fn) or fn < tol:
                    break
                if not np.all(np.isfinite(J)):
                    break
                if np.abs(np.linalg.det(J)) == 0:
                    break
                step = np.linalg.solve(J, -F)
                lam = 1.0
                improved = False
                for _h in range(30):
                    zn = z + lam * step
                    if np.all(zn != 0):
                        Fn, Jn = _bae_f_j_jit(zn, node, gexp, q, qi, bmat, bcnt, pvec, self_factor)
                        fnn = np.max(np.abs(Fn))
                        if np.isfinite(fnn) and fnn < fn:
                            z = zn
                            F = Fn
                            J = Jn
                            fn = fnn
                            improved = True
                            break
                    lam *= 0.5
                if not improved:
                    break
            if np.isfinite(fn) and fn < tol:
                status[s] = 1
            roots[s] = z
        return roots, status


def newton_batch(starts, node, gexp, q, qi, bmat, bcnt, pvec, self_factor=True, maxit=80, tol=1e-13,
                 force_numpy: bool = False):
    """Damped Newton from each row of ``starts``; returns ``(roots, converged)``."""
    args = (
        np.ascontiguousarray(starts, np.complex128),
        np.asarray(node, np.int64),
        np.asarray(gexp, np.int64),
        complex(q),
        np.asarray(qi, np.complex128),
        np.asarray(bmat, np.complex128),
        np.asarray(bcnt, np.int64),
        np.asarray(pvec, np.complex128),
        bool(self_factor),
        int(maxit),
        float(tol),
    )
    if HAVE_NUMBA and not force_numpy:
        roots, status = _newton_batch_jit(*args)
    else:
        roots, status = _newton_batch_numpy(*args)
    return roots, status.astype(bool)
