"""Cartan eigenvalues ``<h_{i,r}>``, the series ``f_{V,W}`` and the identity
``d_i / a_i = q^{d_i m_i} prod_j f_j(q_{j,i} u) / f_j(q_{j,i}^-1 u)``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..charalg import SpectralPoint
from ..qcharlib import nplus_char
from .chain import ChainSpec, ad_polynomials
from .poly import PolyU


def qnum(n: int, q: complex) -> complex:
    """``[n]_q``."""
    return (q ** n - q ** -n) / (q - 1 / q)


@dataclass(frozen=True)
class ModuleDescriptor:
    """``kind`` is ``"fundamental"`` (``L(Y_{i,b})``) or ``"mplus"`` (``M+_{i,a}``)."""

    kind: str
    i: int
    param: complex = 1.0


def hr_eigenvalue(desc: ModuleDescriptor, r: int, q: complex, d_i: int = 1, node: int | None = None) -> complex:
    """Eigenvalue of ``h_{node,r}`` on the highest vector of ``desc``."""
    if r == 0:
        raise ValueError("r must be nonzero")
    if node is not None and node != desc.i:
        return 0j
    qi = q ** d_i
    x = complex(desc.param)
    if desc.kind == "fundamental":
        if r > 0:
            return x ** r * qnum(r, qi) / r
        return qnum(-r, qi) / (-r * x ** (-r))
    if desc.kind == "mplus":
        if r < 0:
            raise ValueError("only positive modes are available on M+")
        return -(x ** r) / (r * (qi - 1 / qi))
    raise ValueError(f"unknown module kind {desc.kind!r}")


def btilde(chain: ChainSpec, r: int) -> np.ndarray:
    """Inverse of ``[d_i C_{i,j}]_{q^r}``."""
    rd = chain.rd
    qr = chain.q ** r
    mat = np.array([[qnum(rd.B(i, j), qr) if rd.B(i, j) else 0.0 for j in rd.nodes] for i in rd.nodes], complex)
    return np.linalg.inv(mat)


def _w_modes(chain: ChainSpec, r: int) -> np.ndarray:
    """``<h_{j,-r}>_W`` per node, summed over the factors."""
    out = np.zeros(chain.rd.rank, complex)
    for j, b in chain.factors:
        out[j - 1] += hr_eigenvalue(ModuleDescriptor("fundamental", j, b), -r, chain.q, chain.rd.d(j))
    return out


def f_exponent(desc: ModuleDescriptor, chain: ChainSpec, depth: int) -> np.ndarray:
    """Coefficients ``e_0..e_depth`` of ``log f_{V,W}(u)`` without the weight prefactor."""
    rd = chain.rd
    q = chain.q
    out = np.zeros(depth + 1, complex)
    for r in range(1, depth + 1):
        bt = btilde(chain, r)
        hw = _w_modes(chain, r)
        hv = np.array([hr_eigenvalue(desc, r, q, rd.d(k), node=k) for k in rd.nodes])
        dq = np.array([chain.qi(k) - 1 / chain.qi(k) for k in rd.nodes])
        tot = np.einsum("k,kj,j->", hv * dq, bt, hw * dq)
        out[r] = -r * tot / (q ** r - q ** -r)
    return out


def series_exp(e: np.ndarray) -> np.ndarray:
    """``exp`` of a power series with ``e[0] = 0``, truncated to ``len(e)``."""
    n = e.size
    out = np.zeros(n, complex)
    out[0] = np.exp(e[0])
    for k in range(1, n):
        out[k] = sum(j * e[j] * out[k - j] for j in range(1, k + 1)) / k
    return out


def f_series(desc: ModuleDescriptor, chain: ChainSpec, depth: int) -> tuple[np.ndarray, str]:
    """Truncated ``f_{V,W}(u)``: coefficients of ``exp(...)`` through ``u^depth``
    and the symbolic weight prefactor."""
    return series_exp(f_exponent(desc, chain, depth)), "q^{-(wt v0, wt w0)}"


def series_div(num: np.ndarray, den: np.ndarray, n: int) -> np.ndarray:
    num = np.concatenate([num, np.zeros(max(0, n - num.size))])[:n]
    den = np.concatenate([den, np.zeros(max(0, n - den.size))])[:n]
    out = np.zeros(n, complex)
    for k in range(n):
        out[k] = (num[k] - sum(den[j] * out[k - j] for j in range(1, k + 1))) / den[0]
    return out


def weight_constant(chain: ChainSpec, i: int) -> complex:
    """``q^{(alpha_i, wt w0)} = q^{d_i m_i}`` with ``m_i`` factors at node ``i``."""
    return chain.q ** (chain.rd.d(i) * len(chain.inhomogeneities(i)))


def verify_f_identity(chain: ChainSpec, i: int, depth: int) -> float:
    """Max coefficient error of ``d_i/a_i`` against the ``f``-series ratio."""
    a, d = ad_polynomials(chain, i)
    lhs = series_div(d.coeffs, a.coeffs, depth + 1)
    expo = np.zeros(depth + 1, complex)
    r = np.arange(depth + 1)
    for j in chain.rd.nodes:
        if chain.rd.C(j, i):
            e = f_exponent(ModuleDescriptor("mplus", j, 1.0), chain, depth)
            g = chain.qji(j, i)
            expo += e * (g ** r - g ** (-r))
    rhs = weight_constant(chain, i) * series_exp(expo)
    return float(np.abs(lhs - rhs).max())


def f_closed_form_a1(chain: ChainSpec, u: complex, terms: int = 400) -> complex:
    """``exp`` part of ``f_{M+_{1,1},W}(u)`` for an ``A1`` chain, as the product
    ``prod_b prod_k (1 - q^{2k+1} u / b)^{(-1)^{k+1}}`` (``|q| < 1``; the
    exponent is symmetric under ``q -> 1/q``)."""
    q = chain.q if abs(chain.q) < 1 else 1 / chain.q
    out = 1.0 + 0j
    for _, b in chain.factors:
        for k in range(terms):
            out *= (1 - q ** (2 * k + 1) * u / b) ** (-1 if k % 2 == 0 else 1)
    return out


def substitution_eigenvalue(chain: ChainSpec, qpoly: PolyU, u: complex) -> complex:
    """Eigenvalue of ``a(u) T_{N+,W}(u)`` from ``chi_q(N+_{1,u})``.

    Each ``X_{1,u q^k}`` becomes ``F(u q^k) Q(u q^k)``; a term with ``k``
    factors ``A^-1`` carries ``(p q^{m_1})^k`` from the twist and weight
    prefactors, and the head's ``F`` part is divided out."""
    from ..rootdata import build_root_data

    rd = build_root_data("A1")
    ch = nplus_char(1, SpectralPoint("u", 0), rd, None)
    a, _ = ad_polynomials(chain, 1)
    dress = chain.p(1) * weight_constant(chain, 1)
    q = chain.q

    def fpart(m, with_q: bool) -> complex:
        val = 1.0 + 0j
        for (_, pt), e in m.x_items():
            x = u * q ** pt.qexp
            v = f_closed_form_a1(chain, x)
            if with_q:
                v *= qpoly(x)
            val *= v ** e
        return val

    head_f = fpart(ch.head, False)
    total = 0j
    for m, c in ch.terms.items():
        total += c * dress ** ch.degree(m) * fpart(m, True)
    return complex(a(u) * total / head_f)
