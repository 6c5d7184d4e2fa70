"""Symmetric multisets of permutations: descent statistics, quasisymmetric
expansions, promotion bijections and exhaustive verification."""

from .permcore import (
    PermMultiset, conjugacy_class, d_class, delta, descent_set, equivalent,
    inverse_j_class, multiply, multiset_product, rho, sigma,
)
from .qsym import QVector, classify, f_to_m, m_to_s, q_of, to_m_basis
from .verifier import check_theorem

__version__ = "0.1.0"

__all__ = [
    "PermMultiset", "QVector", "check_theorem", "classify", "conjugacy_class", "d_class",
    "delta", "descent_set", "equivalent", "f_to_m", "inverse_j_class", "m_to_s", "multiply",
    "multiset_product", "q_of", "rho", "sigma", "to_m_basis",
]
