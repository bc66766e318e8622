"""
分解（resolution）模块
"""

from .tuples import (
    Flavor,
    ActionKind,
    GroupTuple,
    ActionTuple,
    identity_action,
    compose_actions,
    act,
    tuple_coset_residual_D,
    tuple_coset_equal_D,
    tuple_coset_residual_BS,
    tuple_coset_equal_BS
)
from .factorization import (
    beta,
    beta_inv,
    phi,
    include,
    rho,
    rho_K,
    equivariance_witness,
    theorem_witness
)

__all__ = [
    "Flavor",
    "ActionKind",
    "GroupTuple",
    "ActionTuple",
    "identity_action",
    "compose_actions",
    "act",
    "tuple_coset_residual_D",
    "tuple_coset_equal_D",
    "tuple_coset_residual_BS",
    "tuple_coset_equal_BS",
    "beta",
    "beta_inv",
    "phi",
    "include",
    "rho",
    "rho_K",
    "equivariance_witness",
    "theorem_witness"
]
