"""Spectra of Toeplitz matrices T_n(f) and their flipped (Hankel) counterparts
H_n(f) = Y_n T_n(f): construction, Cantoni-Butler pairing, perfect grids,
homotopy ordering of non-monotone symbols and matrix-less prediction."""

from .catalog import get_symbol
from .eig import SpectralDecomposition, dst_matrix, singular_values, sym_eig, sym_eigvals
from .exceptions import *  # noqa: F401,F403
from .grid import Grid, au_deviation
from .matrices import (
    TauParams,
    flip,
    gram,
    hankel,
    tau_basis,
    tau_generator,
    tau_grid,
    tau_matrix,
    toeplitz,
)
from .matrixless import (
    ExpansionModel,
    MatrixLessEigensolver,
    extract_expansion,
    predict_eigenvalues,
    predict_flipped,
)
from .ordering import (
    HomotopyConfig,
    HomotopyOrdering,
    HomotopyTrace,
    crossing_gamma,
    crossing_point,
    homotopy_order,
)
from .spectral import (
    PairingReport,
    SymbolPermutation,
    Symmetry,
    cantoni_butler_order,
    classify_symmetry,
    ergodic_gap,
    perfect_grid,
    repair_sign_mismatches,
    sign_match,
    smoothed_indicator,
    symbol_sort_permutation,
)
from .symbols import (
    Piece,
    Piecewise,
    RearrangedSymbol,
    Symbol,
    TrigPoly,
    absolute,
    evaluate,
    fourier_coefficient,
    modulus_squared_symbol,
    monotone_rearrangement,
    parse_symbol,
    psi_extension,
)

__version__ = "0.1.0"
