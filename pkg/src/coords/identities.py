"""
换元算法所依赖的三条矩阵恒等式

每个函数返回 (左边, 右边) 两个矩阵，由调用方比较偏差。
指数映射统一用 scipy.linalg.expm 计算，与 weyl_sl 中的精确闭式相互独立。
"""

from typing import Tuple

import numpy as np
from scipy.linalg import expm

from ..weyl.weyl_sl import (
    Root,
    coroot,
    reflect_root,
    root_length_ratio,
    root_pairing_ratio,
    root_vector,
    simple_refl_rep,
)
from .charts import a_of


def _torus(alpha: Root, a: float, exponent: float, n: int) -> np.ndarray:
    """a^{exponent·Ȟ_α} = exp(exponent·log(a)·Ȟ_α)"""
    if a <= 0:
        raise ValueError(f"a 必须为正数，得到 {a}")
    return expm(exponent * np.log(a) * coroot(alpha, n))


def torus_conjugation_identity(alpha: Root, beta: Root, u: complex, a: float,
                               n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    环面共轭恒等式

        a^{−Ȟ_α}·exp(uĚ_β) = exp(a^{−2⟨⟨α,β⟩⟩/⟨⟨α,α⟩⟩}·uĚ_β)·a^{−Ȟ_α}

    Args:
        alpha, beta: 根
        u: 复参数
        a: 正实参数
        n: 矩阵阶数

    Returns:
        (左边, 右边)
    """
    ratio = float(root_pairing_ratio(alpha, beta))
    torus = _torus(alpha, a, -1.0, n)
    e_beta = root_vector(beta, n)

    lhs = torus @ expm(u * e_beta)
    rhs = expm(a ** (-2.0 * ratio) * u * e_beta) @ torus
    return lhs, rhs


def commutator_exchange_identity(alpha: Root, beta: Root, u1: complex, u2: complex,
                                 n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    交换恒等式（α+β 为根、2α+β 与 α+2β 不是根时成立，例如相邻单根）

        exp(u₁E_α)·exp(u₂E_β) = exp(u₂E_β)·exp(u₁u₂[E_α,E_β])·exp(u₁E_α)
    """
    e_alpha = root_vector(alpha, n)
    e_beta = root_vector(beta, n)
    bracket = e_alpha @ e_beta - e_beta @ e_alpha

    lhs = expm(u1 * e_alpha) @ expm(u2 * e_beta)
    rhs = expm(u2 * e_beta) @ expm(u1 * u2 * bracket) @ expm(u1 * e_alpha)
    return lhs, rhs


def reflection_conjugation_identity(i: int, alpha: Root, u: complex,
                                    n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    单反射共轭恒等式

        ṡ_i⁻¹·a(u)^{−Ȟ_α}·ṡ_i = a(u)^{−(⟨⟨s_i.α,s_i.α⟩⟩/⟨⟨α,α⟩⟩)·Ȟ_{s_i.α}}

    Args:
        i: 单反射下标
        alpha: 任意根（s_i.α 可以是负根）
        u: 复参数，a(u) = (1+|u|²)^{−1/2}
        n: 矩阵阶数

    Returns:
        (左边, 右边)
    """
    s_dot = simple_refl_rep(i, n)
    a = a_of(u)

    reflected = reflect_root(i, alpha)
    ratio = float(root_length_ratio(alpha, reflected))

    lhs = s_dot.conj().T @ _torus(alpha, a, -1.0, n) @ s_dot
    rhs = _torus(reflected, a, -ratio, n)
    return lhs, rhs
