"""
分解映射 - Demazure 与 Bott-Samelson 分解之间的显式等价

    q₁ = p₁，q_k = d(q_{k−1})·p_k           (β_ℓ)
    φ_ℓ(p) = (k(q₁), …, k(q_ℓ))
    ι: K_𝐰 → P_𝐰 为典范包含

φ_ℓ 与 B^ℓ / T^ℓ 作用相容，下降为 𝒟_𝐰 → ℬ𝒮_𝐰 的映射，其逆为 ι。
"""

from functools import reduce

import numpy as np
from loguru import logger

from ..linalg.matrix_core import DEFAULT_TOLERANCES, d_map, identity, k_map, mat_inv
from ..utils.config import Tolerances
from .tuples import ActionKind, ActionTuple, Flavor, GroupTuple


def _require(p: GroupTuple, flavor: Flavor):
    if p.flavor != flavor:
        raise ValueError(f"需要 {flavor.value} 元组，得到 {p.flavor.value}")


def beta(p: GroupTuple, tolerances: Tolerances = DEFAULT_TOLERANCES) -> GroupTuple:
    """
    β_ℓ: P_𝐰 → P_𝐰

    Args:
        p: parabolic 元组
        tolerances: 容差

    Returns:
        (q₁, …, q_ℓ)，q_k 仍属于 P_{s_k}（D ⊂ B ⊂ P_{s_k}）
    """
    _require(p, Flavor.PARABOLIC)

    q_slots = []
    for slot in p.slots:
        if q_slots:
            slot = d_map(q_slots[-1], tolerances) @ slot
        q_slots.append(slot)

    return GroupTuple(p.word, tuple(q_slots), Flavor.PARABOLIC)


def beta_inv(q: GroupTuple, tolerances: Tolerances = DEFAULT_TOLERANCES) -> GroupTuple:
    """β_ℓ⁻¹：p₁ = q₁，p_k = d(q_{k−1})⁻¹·q_k"""
    _require(q, Flavor.PARABOLIC)

    p_slots = [q.slots[0]] if len(q) else []
    for previous, current in zip(q.slots, q.slots[1:]):
        p_slots.append(mat_inv(d_map(previous, tolerances), tolerances) @ current)

    return GroupTuple(q.word, tuple(p_slots), Flavor.PARABOLIC)


def phi(p: GroupTuple, tolerances: Tolerances = DEFAULT_TOLERANCES) -> GroupTuple:
    """φ_ℓ(p) = (k(q₁), …, k(q_ℓ))，结果为 compact 元组"""
    q = beta(p, tolerances)
    slots = tuple(k_map(slot, tolerances) for slot in q.slots)
    logger.debug(f"[Resolution] φ_ℓ 完成，ℓ={len(slots)}")
    return GroupTuple(p.word, slots, Flavor.COMPACT).validate(tolerances)


def include(k: GroupTuple) -> GroupTuple:
    """典范包含 ι: K_𝐰 → P_𝐰（矩阵不变，只改类型标记）"""
    _require(k, Flavor.COMPACT)
    return GroupTuple(k.word, k.slots, Flavor.PARABOLIC)


def _ordered_product(t: GroupTuple) -> np.ndarray:
    return reduce(lambda acc, slot: acc @ slot, t.slots, identity(t.word.n))


def rho(p: GroupTuple) -> np.ndarray:
    """乘法映射 ρ_𝐰: P_𝐰 → G"""
    _require(p, Flavor.PARABOLIC)
    return _ordered_product(p)


def rho_K(k: GroupTuple) -> np.ndarray:
    """乘法映射 ρ^K_𝐰: K_𝐰 → K"""
    _require(k, Flavor.COMPACT)
    return _ordered_product(k)


def equivariance_witness(b: ActionTuple,
                         tolerances: Tolerances = DEFAULT_TOLERANCES) -> ActionTuple:
    """φ_ℓ 相容性的见证：t_j = k(b_j)"""
    if b.kind != ActionKind.BOREL:
        raise ValueError("见证需要 B 作用元组")
    slots = tuple(k_map(slot, tolerances) for slot in b.slots)
    return ActionTuple(b.word, slots, ActionKind.TORUS)


def theorem_witness(p: GroupTuple,
                    tolerances: Tolerances = DEFAULT_TOLERANCES) -> ActionTuple:
    """b_j = d(q_j)⁻¹，满足 ι(φ_ℓ(p)) = p.(b₁, …, b_ℓ)"""
    q = beta(p, tolerances)
    slots = tuple(mat_inv(d_map(slot, tolerances), tolerances) for slot in q.slots)
    return ActionTuple(p.word, slots, ActionKind.BOREL)
