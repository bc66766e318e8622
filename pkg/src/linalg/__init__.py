"""
矩阵核心模块
"""

from .matrix_core import (
    DEFAULT_TOLERANCES,
    IwasawaFactors,
    Subgroup,
    as_matrix,
    identity,
    frobenius_deviation,
    max_entry_deviation,
    mat_mul,
    mat_inv,
    iwasawa_factor,
    iwasawa_factor_gram_schmidt,
    k_map,
    d_map,
    is_member,
    coset_residual_GB,
    coset_equal_GB,
    coset_residual_KT,
    coset_equal_KT
)

__all__ = [
    "DEFAULT_TOLERANCES",
    "IwasawaFactors",
    "Subgroup",
    "as_matrix",
    "identity",
    "frobenius_deviation",
    "max_entry_deviation",
    "mat_mul",
    "mat_inv",
    "iwasawa_factor",
    "iwasawa_factor_gram_schmidt",
    "k_map",
    "d_map",
    "is_member",
    "coset_residual_GB",
    "coset_equal_GB",
    "coset_residual_KT",
    "coset_equal_KT"
]
