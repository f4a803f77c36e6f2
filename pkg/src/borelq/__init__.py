"""Exact q-character algebra for Borel subalgebras of quantum affine algebras,
with a numeric Bethe ansatz for twisted XXZ chains."""
from .charalg import (
    CharacterError,
    LMonomial,
    QChar,
    SpectralPoint,
    A,
    X,
    Y,
    canonicalize,
    d_degree,
    dimension,
    is_dominant,
    multiply,
    qalpha,
    weight_collapse,
    ypow,
)
from .grothendieck import tensor_irreducible_sufficient, verify_tq_identity
from .qcharlib import (
    Partition,
    barchi,
    eval_module_char_slN,
    fundamental_top_terms,
    lift_example_char,
    mminus_char,
    mplus_char,
    nplus_char,
    parabolic_verma_char_slN,
    sl2_factor,
    sl2_string_char,
)
from .rootdata import RootData, RootDataError, build_root_data, coweight_pairing

__version__ = "0.1.0"
