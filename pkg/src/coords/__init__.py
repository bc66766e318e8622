"""
坐标模块 - Schubert 胞腔坐标卡与换元
"""

from .charts import (
    ChartPoint,
    a_of,
    lu_k_closed,
    lu_d_closed,
    chart_h,
    chart_j,
    big_product_M,
    n_w_support,
    u_from_zeta
)
from .change import (
    zeta_to_z,
    bruhat_factor_Ps,
    z_to_zeta,
    closed_form_len2,
    closed_form_sl3,
    lu_F_map,
    coordinate_derivatives,
    len2_conjugate_derivative
)
from .identities import (
    torus_conjugation_identity,
    commutator_exchange_identity,
    reflection_conjugation_identity
)

__all__ = [
    "ChartPoint",
    "a_of",
    "lu_k_closed",
    "lu_d_closed",
    "chart_h",
    "chart_j",
    "big_product_M",
    "n_w_support",
    "u_from_zeta",
    "zeta_to_z",
    "bruhat_factor_Ps",
    "z_to_zeta",
    "closed_form_len2",
    "closed_form_sl3",
    "lu_F_map",
    "coordinate_derivatives",
    "len2_conjugate_derivative",
    "torus_conjugation_identity",
    "commutator_exchange_identity",
    "reflection_conjugation_identity"
]
