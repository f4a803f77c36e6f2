"""End-to-end comparison of the Bethe ansatz with exact diagonalization."""
from __future__ import annotations

from math import comb

import numpy as np

from .bae import BetheState, check_bae, eigenvalue_poly_from_q, recover_q, solve_bae, _same_solution
from .chain import ChainSpec, ad_polynomials
from .fseries import substitution_eigenvalue
from .transfer import diagonalize_and_interpolate

TOL = 1e-8


def spectrum_report(chain: ChainSpec, n_starts: int = 200) -> dict:
    """One row per eigenvector plus per-sector completeness of the BAE solutions."""
    lines = diagonalize_and_interpolate(chain)
    a, d = ad_polynomials(chain, 1)
    p = chain.p(1)
    rng = np.random.default_rng(chain.seed + 7919)
    held = 0.5 + rng.random(3) + 1j * (rng.random(3) - 0.5)
    rows = []
    by_sector: dict[int, list[BetheState]] = {}
    for line in lines:
        Q, res = recover_q(line.lam, a, d, p, line.sector, chain.q)
        roots = np.sort_complex(Q.roots())
        state = BetheState((line.sector,), {1: roots}, q_polys={1: Q})
        bres = check_bae(state, chain)
        try:
            lam_q = eigenvalue_poly_from_q({1: Q}, chain, 1)
            mismatch = float(np.abs(lam_q(held) - line.lam(held)).max() / np.abs(line.lam(held)).max())
        except Exception:
            mismatch = float("inf")
        sub = max(abs(substitution_eigenvalue(chain, Q, u) - line.lam(u)) / abs(line.lam(u)) for u in held)
        by_sector.setdefault(line.sector, []).append(state)
        rows.append({
            "sector": line.sector,
            "Q_coeffs": [[c.real, c.imag] for c in Q.coeffs],
            "Q_degree": Q.degree,
            "tq_residual": res,
            "holdout_residual": line.holdout_residual,
            "roots": [[z.real, z.imag] for z in roots],
            "bae_residuals": [float(r) for r in bres],
            "lambda_mismatch": mismatch,
            "substitution_mismatch": float(sub),
        })
    completeness = {}
    for N, states in sorted(by_sector.items()):
        seeds = [s.roots[1] for s in states if s.roots[1].size == N]
        sols = solve_bae(chain, N, n_starts=n_starts, extra_seeds=seeds)
        matched = sum(any(_same_solution(s.roots, t.roots, 1e-6) for t in sols) for s in states) if N else len(states)
        completeness[N] = {"dimension": comb(chain.L, N), "solutions": len(sols), "matched": matched}
    ok = all(
        r["Q_degree"] == r["sector"]
        and r["tq_residual"] < TOL
        and r["holdout_residual"] < TOL
        and all(x < TOL for x in r["bae_residuals"])
        and r["lambda_mismatch"] < TOL
        and r["substitution_mismatch"] < TOL
        for r in rows
    ) and all(c["solutions"] == c["dimension"] == c["matched"] for c in completeness.values())
    return {
        "L": chain.L,
        "seed": chain.seed,
        "rows": rows,
        "sector_counts": [sum(1 for r in rows if r["sector"] == N) for N in range(chain.L + 1)],
        "completeness": {str(k): v for k, v in completeness.items()},
        "ok": bool(ok),
    }
