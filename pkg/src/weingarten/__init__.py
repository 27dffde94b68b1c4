"""Exact Weingarten calculus for U(d), O(d) and Sp(d), with a Monte Carlo cross-check."""
from .algebra import D, PoleError, Poly, RationalFunction, rf_eval
from .brauer import coset_type, enumerate_pairings, gram_matrix, pairing_distance, z_eigenvalue
from .errors import CapExceededError
from .orthogonal import (
    OrthoMomentQuery,
    moment_orthogonal,
    moment_symplectic,
    wg_orthogonal,
    wg_orthogonal_regularized,
    wg_symplectic,
)
from .symmetric import catalan, character, partitions_of, schur_dim
from .unitary import UnitaryMomentQuery, moment_unitary, wg_unitary

__version__ = "0.1.0"

__all__ = [
    "D", "PoleError", "Poly", "RationalFunction", "rf_eval", "CapExceededError",
    "coset_type", "enumerate_pairings", "gram_matrix", "pairing_distance", "z_eigenvalue",
    "OrthoMomentQuery", "moment_orthogonal", "moment_symplectic", "wg_orthogonal",
    "wg_orthogonal_regularized", "wg_symplectic",
    "catalan", "character", "partitions_of", "schur_dim",
    "UnitaryMomentQuery", "moment_unitary", "wg_unitary",
]
