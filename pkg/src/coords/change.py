"""
坐标变换 - 全纯坐标 ζ 与 Lu 坐标 z 之间的双向换元

正向算法：
1. 计算 q = β(h_ẇ(ζ))
2. k(q_k) = k(n_{z_k}ṡ_k)，由 Lemma 闭式可知第 (i,i)/(i,i+1) 元之比恰为 z_k，
   分母 ia(z_k) 永不为零

反向算法：把 ι(j_ẇ(z)) 逐槽位化为 h_ẇ 的标准形 n_ζṡ·b。
这里存在真正的一般位置条件（大胞腔），越界时抛出 NonGenericPointError。
"""

from functools import reduce
from typing import Callable, Tuple

import numpy as np
from loguru import logger

from ..linalg.matrix_core import (
    DEFAULT_TOLERANCES,
    Subgroup,
    as_matrix,
    is_member,
    k_map,
    max_entry_deviation,
)
from ..resolution.factorization import beta
from ..utils.config import Tolerances
from ..utils.errors import FactorizationError, MembershipError, NonGenericPointError
from ..weyl.weyl_sl import pairing_ratio, simple_refl_rep, unipotent_param, word_rep
from .charts import ChartPoint, big_product_M, chart_h, lu_k_closed


def zeta_to_z(pt: ChartPoint, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ChartPoint:
    """
    全纯坐标 → Lu 坐标

    Args:
        pt: ζ 坐标点
        tolerances: 容差

    Returns:
        z 坐标点（同一个字）
    """
    q = beta(chart_h(pt), tolerances)

    values = []
    for letter, slot in zip(pt.word, q.slots):
        k = k_map(slot, tolerances)
        values.append(k[letter - 1, letter - 1] / k[letter - 1, letter])

    logger.debug(f"[Coords] ζ→z 完成，ℓ={len(values)}")
    return ChartPoint(pt.word, tuple(values))


def bruhat_factor_Ps(m: np.ndarray, i: int,
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[complex, np.ndarray]:
    """
    P_{s_i} 内的一般胞腔分解 m = n_ζṡ_i·b

    Args:
        m: P_{s_i} 中的矩阵
        i: 单根下标
        tolerances: 容差

    Returns:
        (ζ, b)，b 为上三角矩阵
    """
    m = as_matrix(m)
    if not is_member(m, Subgroup.P_S, i, tolerances):
        raise MembershipError(f"矩阵不属于 P_s({i})")

    pivot = m[i, i - 1]
    if abs(pivot) <= tolerances.tol_coset * float(np.linalg.norm(m)):
        raise NonGenericPointError(f"({i + 1},{i}) 元接近零，点位于大胞腔之外")

    zeta = complex(m[i - 1, i - 1] / pivot)
    n = m.shape[0]
    # (n_ζṡ)⁻¹ = ṡ⁻¹·n_{−ζ}，ṡ 是酉矩阵
    b = simple_refl_rep(i, n).conj().T @ unipotent_param(i, -zeta, n) @ m

    if not is_member(b, Subgroup.B, tolerances=tolerances):
        raise MembershipError("b 不是上三角矩阵")

    return zeta, b


def z_to_zeta(pt: ChartPoint, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ChartPoint:
    """
    Lu 坐标 → 全纯坐标

    b₀ = I；对 k = 1..ℓ：m_k = b_{k−1}·k(n_{z_k}ṡ_k)，(ζ_k, b_k) = bruhat_factor_Ps(m_k)

    Args:
        pt: z 坐标点
        tolerances: 容差

    Returns:
        ζ 坐标点
    """
    n = pt.word.n
    b = np.eye(n, dtype=np.complex128)
    values = []

    for position, (letter, z) in enumerate(zip(pt.word, pt.coords), start=1):
        m = b @ lu_k_closed(letter, z, n)
        try:
            zeta, b = bruhat_factor_Ps(m, letter, tolerances)
        except NonGenericPointError as e:
            logger.warning(f"[Coords] 第 {position} 个槽位不在大胞腔内")
            raise NonGenericPointError(f"槽位 {position}: {e}", slot=position) from e
        values.append(zeta)

    logger.debug(f"[Coords] z→ζ 完成，ℓ={len(values)}")
    return ChartPoint(pt.word, tuple(values))


def closed_form_len2(pt: ChartPoint) -> ChartPoint:
    """长度2的闭式：z₁ = ζ₁，z₂ = (1+|ζ₁|²)^{⟨⟨γ₁,γ₂⟩⟩/⟨⟨γ₁,γ₁⟩⟩}·ζ₂"""
    if len(pt.word) != 2:
        raise ValueError(f"需要长度为2的字，得到长度 {len(pt.word)}")

    zeta1, zeta2 = pt.coords
    ratio = pairing_ratio(pt.word[0], pt.word[1], pt.word.n)
    z2 = (1.0 + abs(zeta1) ** 2) ** float(ratio) * zeta2
    return ChartPoint(pt.word, (zeta1, z2))


def closed_form_sl3(pt: ChartPoint) -> ChartPoint:
    """
    SL(3) 最长元 (1,2,1) 的闭式换元

        z₁ = ζ₁
        z₂ = ζ₂ / √(1+|ζ₁|²)
        z₃ = (iζ̄₁ζ₂ + ζ₃(1+|ζ₁|²)) / √(1+|ζ₁|²+|ζ₂|²)
    """
    if pt.word.n != 3 or pt.word.letters != (1, 2, 1):
        raise ValueError("闭式只对 SL(3) 的字 (1,2,1) 成立")

    zeta1, zeta2, zeta3 = pt.coords
    s1 = 1.0 + abs(zeta1) ** 2
    z2 = zeta2 / np.sqrt(s1)
    z3 = (1j * np.conj(zeta1) * zeta2 + zeta3 * s1) / np.sqrt(s1 + abs(zeta2) ** 2)
    return ChartPoint(pt.word, (zeta1, z2, z3))


def lu_F_map(pt: ChartPoint,
             tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Lu 的 F_ẇ：满足 k(F·ẇ) = k(n_{z₁}ṡ₁)⋯k(n_{z_ℓ}ṡ_ℓ)

    通过 F = M_ẇ(z_to_zeta(z)) 计算，并逐元素校验上述等式。

    Args:
        pt: z 坐标点
        tolerances: 容差

    Returns:
        N_w 中的矩阵 F
    """
    f = big_product_M(z_to_zeta(pt, tolerances), tolerances)

    n = pt.word.n
    expected = reduce(
        lambda acc, item: acc @ lu_k_closed(item[0], item[1], n),
        zip(pt.word, pt.coords),
        np.eye(n, dtype=np.complex128)
    )
    deviation = max_entry_deviation(k_map(f @ word_rep(pt.word), tolerances), expected)
    if deviation > tolerances.tol_value * max(1.0, float(np.linalg.norm(f))):
        raise FactorizationError(f"k(F·ẇ) 与闭式乘积不一致: 偏差 {deviation:.3e}")

    return f


def coordinate_derivatives(
    func: Callable[[ChartPoint], ChartPoint],
    pt: ChartPoint,
    index: int,
    component: int,
    step: float = 1e-5
) -> Tuple[complex, complex]:
    """
    Wirtinger 导数 (∂f/∂ζ, ∂f/∂ζ̄) 的中心差分近似

    Args:
        func: 坐标变换
        pt: 求导点
        index: 自变量下标（从0开始）
        component: 输出分量下标（从0开始）
        step: 差分步长

    Returns:
        (∂f_c/∂ζ_i, ∂f_c/∂ζ̄_i)
    """
    def shifted(delta: complex) -> complex:
        values = list(pt.coords)
        values[index] += delta
        return func(ChartPoint(pt.word, tuple(values)))[component]

    d_real = (shifted(step) - shifted(-step)) / (2 * step)
    d_imag = (shifted(1j * step) - shifted(-1j * step)) / (2 * step)

    holomorphic = 0.5 * (d_real - 1j * d_imag)
    antiholomorphic = 0.5 * (d_real + 1j * d_imag)
    return complex(holomorphic), complex(antiholomorphic)


def len2_conjugate_derivative(pt: ChartPoint) -> complex:
    """长度2闭式的解析导数 ∂z₂/∂ζ̄₁ = r·ζ₁·ζ₂·(1+|ζ₁|²)^{r−1}"""
    if len(pt.word) != 2:
        raise ValueError(f"需要长度为2的字，得到长度 {len(pt.word)}")

    zeta1, zeta2 = pt.coords
    ratio = float(pairing_ratio(pt.word[0], pt.word[1], pt.word.n))
    return complex(ratio * zeta1 * zeta2 * (1.0 + abs(zeta1) ** 2) ** (ratio - 1.0))
