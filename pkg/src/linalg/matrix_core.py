"""
矩阵核心模块 - SL(n,C) 上的 Iwasawa 分解 g = k(g)·a(g)·n(g)

功能：
1. 复方阵运算（乘法、求逆）
2. Iwasawa 分解（Householder QR + 对角相位校正）
3. 独立的 Gram-Schmidt 分解路径（用于唯一性校验）
4. 子群成员判定与陪集相等判定（G/B 与 K/T）
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from loguru import logger

from ..utils.config import Tolerances
from ..utils.errors import (
    DimensionMismatchError,
    FactorizationError,
    IllConditionedError,
    NotUnitaryError,
    SingularMatrixError,
)


DEFAULT_TOLERANCES = Tolerances()

# 条件数上限，超过则拒绝分解
MAX_CONDITION = 1e12


def as_matrix(x) -> np.ndarray:
    """
    转换为复方阵（complex128）

    Args:
        x: 任意可转换为二维数组的对象

    Returns:
        n×n complex128 数组
    """
    arr = np.array(x, dtype=np.complex128)

    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionMismatchError(f"需要非空方阵，得到形状 {arr.shape}")

    if not np.all(np.isfinite(arr)):
        raise ValueError("矩阵包含 NaN 或 Inf")

    return arr


def identity(n: int) -> np.ndarray:
    """n 阶单位矩阵"""
    return np.eye(n, dtype=np.complex128)


def frobenius_deviation(x: np.ndarray, y: np.ndarray, relative: bool = False) -> float:
    """‖x − y‖_F，relative=True 时除以 max(‖y‖_F, 1)"""
    diff = float(np.linalg.norm(np.asarray(x) - np.asarray(y)))
    if relative:
        return diff / max(float(np.linalg.norm(y)), 1.0)
    return diff


def max_entry_deviation(x: np.ndarray, y: np.ndarray) -> float:
    """逐元素最大偏差"""
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y))))


def mat_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """矩阵乘法（要求同阶）"""
    x = as_matrix(x)
    y = as_matrix(y)

    if x.shape != y.shape:
        raise DimensionMismatchError(f"维度不匹配: {x.shape} 与 {y.shape}")

    return x @ y


def mat_inv(x: np.ndarray, tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    矩阵求逆

    Args:
        x: 可逆方阵
        tolerances: 容差

    Returns:
        x 的逆矩阵
    """
    x = as_matrix(x)

    if abs(np.linalg.det(x)) < tolerances.tol_det:
        raise SingularMatrixError("矩阵行列式过小，无法求逆")

    try:
        inverse = np.linalg.inv(x)
    except np.linalg.LinAlgError as e:
        raise SingularMatrixError(f"求逆失败: {e}") from e

    defect = frobenius_deviation(x @ inverse, identity(x.shape[0]))
    if defect > tolerances.tol_recon:
        raise SingularMatrixError(f"求逆精度不足: ‖x·x⁻¹ − I‖ = {defect:.3e}")

    return inverse


@dataclass(frozen=True)
class IwasawaFactors:
    """
    Iwasawa 分解 g = k·a·n

    k: 酉矩阵（行列式1）
    a: 正实对角矩阵（行列式1）
    n: 单位上三角矩阵
    """
    k: np.ndarray
    a: np.ndarray
    n: np.ndarray

    @property
    def d(self) -> np.ndarray:
        """D = AN 分量 d(g) = a·n"""
        return self.a @ self.n

    def reconstruct(self) -> np.ndarray:
        """k·a·n"""
        return self.k @ self.a @ self.n


def _check_special_linear(g: np.ndarray, tolerances: Tolerances, max_condition: float):
    """检查 g ∈ SL(n,C) 且条件数在允许范围内"""
    det = np.linalg.det(g)
    if abs(det - 1) > tolerances.tol_det:
        raise FactorizationError(f"矩阵不在 SL(n) 中: det = {complex(det)}")

    cond = float(np.linalg.cond(g))
    if not np.isfinite(cond) or cond > max_condition:
        logger.warning(f"[Iwasawa] 条件数 {cond:.3e} 超过上限 {max_condition:.1e}")
        raise IllConditionedError(f"条件数 {cond:.3e} 超过上限 {max_condition:.1e}")


def _split_triangular(q: np.ndarray, r: np.ndarray) -> IwasawaFactors:
    """把 g = q·r 调整为正对角，再拆成 k, a, n"""
    diag = np.diag(r)
    magnitudes = np.abs(diag)
    if np.any(magnitudes == 0):
        raise SingularMatrixError("三角因子对角线为零")

    # 对角酉矩阵相位校正：q·P, P⁻¹·r
    phases = diag / magnitudes
    k = q * phases[np.newaxis, :]
    r = np.conj(phases)[:, np.newaxis] * r

    a = np.diag(magnitudes).astype(np.complex128)
    n = np.triu(r / magnitudes[:, np.newaxis])
    np.fill_diagonal(n, 1.0)

    return IwasawaFactors(k=k, a=a, n=n)


def _validate_factors(g: np.ndarray, factors: IwasawaFactors, tolerances: Tolerances):
    """校验分解满足全部类型不变量"""
    size = g.shape[0]
    eye = identity(size)

    unitary_defect = frobenius_deviation(factors.k.conj().T @ factors.k, eye)
    if unitary_defect > tolerances.tol_unitary:
        raise FactorizationError(f"k 不是酉矩阵: 偏差 {unitary_defect:.3e}")

    if abs(np.linalg.det(factors.k) - 1) > tolerances.tol_det:
        raise FactorizationError("det k ≠ 1")

    if abs(np.prod(np.diag(factors.a).real) - 1) > tolerances.tol_det:
        raise FactorizationError("det a ≠ 1")

    recon_defect = frobenius_deviation(factors.reconstruct(), g)
    if recon_defect > tolerances.tol_recon * float(np.linalg.norm(g)):
        raise FactorizationError(f"重构误差过大: {recon_defect:.3e}")


def iwasawa_factor(
    g: np.ndarray,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    max_condition: float = MAX_CONDITION
) -> IwasawaFactors:
    """
    Iwasawa 分解（核心接口）

    Householder QR 后做对角相位校正，使三角因子对角线为正实数，
    再拆分为 a = diag 部分，n = a⁻¹·(三角因子)。
    det g = 1 时 det a = det k = 1 自动成立，这里只做断言不做归一化。

    Args:
        g: SL(n,C) 中的矩阵
        tolerances: 容差
        max_condition: 条件数上限

    Returns:
        IwasawaFactors(k, a, n)
    """
    g = as_matrix(g)
    _check_special_linear(g, tolerances, max_condition)

    q, r = np.linalg.qr(g)
    factors = _split_triangular(q, r)
    _validate_factors(g, factors, tolerances)

    return factors


def iwasawa_factor_gram_schmidt(
    g: np.ndarray,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    max_condition: float = MAX_CONDITION
) -> IwasawaFactors:
    """
    独立分解路径：逐列修正 Gram-Schmidt（带一次重正交化）

    Args:
        g: SL(n,C) 中的矩阵
        tolerances: 容差
        max_condition: 条件数上限

    Returns:
        IwasawaFactors(k, a, n)
    """
    g = as_matrix(g)
    _check_special_linear(g, tolerances, max_condition)

    size = g.shape[0]
    q = np.zeros_like(g)
    r = np.zeros_like(g)

    for j in range(size):
        v = g[:, j].copy()
        # 两遍正交化
        for _ in range(2):
            for i in range(j):
                coeff = np.vdot(q[:, i], v)
                r[i, j] += coeff
                v = v - coeff * q[:, i]
        norm = np.linalg.norm(v)
        if norm == 0:
            raise SingularMatrixError("列向量线性相关")
        r[j, j] = norm
        q[:, j] = v / norm

    factors = _split_triangular(q, r)
    _validate_factors(g, factors, tolerances)

    return factors


def k_map(g: np.ndarray, tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """酉因子 k(g)"""
    return iwasawa_factor(g, tolerances).k


def d_map(g: np.ndarray, tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """D = AN 因子 d(g) = a(g)·n(g)"""
    return iwasawa_factor(g, tolerances).d


class Subgroup(str, Enum):
    """SL(n,C) 的标准子群"""
    K = "K"        # SU(n)
    T = "T"        # 对角酉矩阵
    A = "A"        # 正实对角矩阵
    N = "N"        # 单位上三角矩阵
    B = "B"        # 上三角矩阵
    D = "D"        # 正实对角的上三角矩阵 (AN)
    P_S = "P_s"    # 极小抛物子群 P_{s_i}
    K_S = "K_s"    # K ∩ P_{s_i}


def _parabolic_mask(size: int, index: Optional[int]) -> np.ndarray:
    """下三角中必须为零的位置；P_{s_i} 额外允许 (i+1, i)"""
    mask = np.tril(np.ones((size, size), dtype=bool), k=-1)
    if index is not None:
        mask[index, index - 1] = False
    return mask


def is_member(
    g: np.ndarray,
    subgroup: Subgroup,
    index: Optional[int] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """
    子群成员判定（基于容差的结构检查）

    Args:
        g: 方阵
        subgroup: 子群类型
        index: P_s / K_s 的单反射下标 i（1 ≤ i ≤ n−1）
        tolerances: 容差

    Returns:
        是否属于该子群；含 NaN 时返回 False
    """
    g = np.asarray(g, dtype=np.complex128)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or not np.all(np.isfinite(g)):
        return False

    size = g.shape[0]
    subgroup = Subgroup(subgroup)
    zero_tol = tolerances.tol_coset * max(1.0, float(np.linalg.norm(g)))

    if subgroup in (Subgroup.P_S, Subgroup.K_S):
        if index is None or not 1 <= index <= size - 1:
            raise ValueError(f"P_s/K_s 需要下标 1 ≤ i ≤ {size - 1}")
        mask = _parabolic_mask(size, index)
    elif subgroup in (Subgroup.T, Subgroup.A):
        mask = ~np.eye(size, dtype=bool)
    elif subgroup == Subgroup.K:
        mask = np.zeros((size, size), dtype=bool)
    else:
        mask = _parabolic_mask(size, None)

    if np.any(np.abs(g[mask]) > zero_tol):
        return False

    diag = np.diag(g)

    if subgroup in (Subgroup.K, Subgroup.T, Subgroup.K_S):
        unitary_defect = frobenius_deviation(g.conj().T @ g, identity(size))
        if unitary_defect > tolerances.tol_unitary * max(1.0, size ** 0.5):
            return False
        return bool(abs(np.linalg.det(g) - 1) <= tolerances.tol_det * size)

    if subgroup == Subgroup.N:
        return bool(np.all(np.abs(diag - 1) <= zero_tol))

    if subgroup in (Subgroup.A, Subgroup.D):
        positive = np.all(diag.real > 0) and np.all(np.abs(diag.imag) <= zero_tol)
        return bool(positive and abs(np.prod(diag) - 1) <= tolerances.tol_det * size)

    # B 与 P_s 只检查零结构
    return True


def coset_residual_GB(g1: np.ndarray, g2: np.ndarray,
                      tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """
    G/B 陪集偏差：g1⁻¹g2 严格下三角部分的最大模 / ‖g1⁻¹g2‖_F

    Args:
        g1, g2: SL(n,C) 中的矩阵

    Returns:
        归一化偏差
    """
    g1 = as_matrix(g1)
    g2 = as_matrix(g2)
    if g1.shape != g2.shape:
        raise DimensionMismatchError(f"维度不匹配: {g1.shape} 与 {g2.shape}")
    if abs(np.linalg.det(g1)) < tolerances.tol_det:
        raise SingularMatrixError("g1 奇异")

    h = np.linalg.solve(g1, g2)
    lower = np.tril(h, k=-1)
    return float(np.max(np.abs(lower), initial=0.0) / np.linalg.norm(h))


def coset_equal_GB(g1: np.ndarray, g2: np.ndarray,
                   tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """判断 [g1] = [g2] ∈ G/B，即 g1⁻¹g2 ∈ B"""
    return coset_residual_GB(g1, g2, tolerances) <= tolerances.tol_coset


def _require_unitary(k: np.ndarray, tolerances: Tolerances, name: str):
    defect = frobenius_deviation(k.conj().T @ k, identity(k.shape[0]))
    if defect > tolerances.tol_unitary * max(1.0, k.shape[0] ** 0.5):
        raise NotUnitaryError(f"{name} 不是酉矩阵: 偏差 {defect:.3e}")


def coset_residual_KT(k1: np.ndarray, k2: np.ndarray,
                      tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """K/T 陪集偏差：k1⁻¹k2 非对角元的最大模"""
    k1 = as_matrix(k1)
    k2 = as_matrix(k2)
    if k1.shape != k2.shape:
        raise DimensionMismatchError(f"维度不匹配: {k1.shape} 与 {k2.shape}")
    _require_unitary(k1, tolerances, "k1")
    _require_unitary(k2, tolerances, "k2")

    h = k1.conj().T @ k2
    off = h - np.diag(np.diag(h))
    return float(np.max(np.abs(off), initial=0.0))


def coset_equal_KT(k1: np.ndarray, k2: np.ndarray,
                   tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """判断 [k1] = [k2] ∈ K/T，即 k1⁻¹k2 ∈ T"""
    return coset_residual_KT(k1, k2, tolerances) <= tolerances.tol_coset
