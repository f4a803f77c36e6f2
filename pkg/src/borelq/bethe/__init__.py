"""Numeric Bethe ansatz for chains of fundamental modules."""
from .bae import BetheState, check_bae, eigenvalue_from_q, eigenvalue_poly_from_q, recover_q, solve_bae
from .chain import ChainSpec, ad_polynomials, default_chain, random_inhomogeneous_chain
from .fseries import ModuleDescriptor, f_series, hr_eigenvalue, substitution_eigenvalue, verify_f_identity
from .poly import PolyU
from .spectrum import spectrum_report
from .transfer import build_transfer_matrix_sl2, diagonalize_and_interpolate, transfer_block

__all__ = [
    "BetheState", "ChainSpec", "ModuleDescriptor", "PolyU",
    "ad_polynomials", "build_transfer_matrix_sl2", "check_bae", "default_chain",
    "diagonalize_and_interpolate", "eigenvalue_from_q", "eigenvalue_poly_from_q",
    "f_series", "hr_eigenvalue", "random_inhomogeneous_chain", "recover_q", "solve_bae",
    "spectrum_report", "substitution_eigenvalue", "transfer_block", "verify_f_identity",
]
