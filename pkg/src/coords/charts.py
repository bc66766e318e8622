"""
坐标卡 - Schubert 胞腔上的全纯坐标与 Lu 坐标

    h_ẇ(ζ) = [n_{ζ₁}ṡ₁, …, n_{ζ_ℓ}ṡ_ℓ] ∈ 𝒟_𝐰
    j_ẇ(z) = [k(n_{z₁}ṡ₁), …, k(n_{z_ℓ}ṡ_ℓ)] ∈ ℬ𝒮_𝐰

k(n_zṡ) 与 d(n_zṡ) 有闭式表达，a(z) = (1+|z|²)^{-1/2}。
"""

from dataclasses import dataclass
from typing import Iterable, Set, Tuple

import numpy as np

from ..linalg.matrix_core import (
    DEFAULT_TOLERANCES,
    Subgroup,
    is_member,
)
from ..resolution.factorization import rho
from ..resolution.tuples import Flavor, GroupTuple
from ..utils.config import Tolerances
from ..utils.errors import MembershipError, NonReducedWordError
from ..weyl.weyl_sl import (
    Word,
    is_reduced,
    psi_embed,
    simple_refl_rep,
    torus_param,
    unipotent_param,
    word_rep,
    word_to_permutation,
)


@dataclass(frozen=True)
class ChartPoint:
    """既约字上的坐标点 (ζ₁, …, ζ_ℓ) 或 (z₁, …, z_ℓ)"""
    word: Word
    coords: Tuple[complex, ...]

    def __post_init__(self):
        values = tuple(complex(c) for c in self.coords)
        object.__setattr__(self, "coords", values)

        if len(values) != len(self.word):
            raise ValueError(f"坐标个数 {len(values)} 与字长 {len(self.word)} 不符")
        if not all(np.isfinite(c.real) and np.isfinite(c.imag) for c in values):
            raise ValueError("坐标包含 NaN 或 Inf")
        if not is_reduced(self.word):
            raise NonReducedWordError(f"字 {self.word.letters} 不是既约字")

    @classmethod
    def from_values(cls, word: Word, values: Iterable[complex]) -> "ChartPoint":
        return cls(word, tuple(values))

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.complex128)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, position: int) -> complex:
        return self.coords[position]


def a_of(z: complex) -> float:
    """a(z) = (1+|z|²)^{-1/2}"""
    return float((1.0 + abs(z) ** 2) ** -0.5)


def lu_k_closed(i: int, z: complex, n: int) -> np.ndarray:
    """k(n_zṡ_i) = Ψ_{s_i}([[iza, ia], [ia, −iz̄a]])"""
    a = a_of(z)
    block = np.array([
        [1j * z * a, 1j * a],
        [1j * a, -1j * np.conj(z) * a]
    ], dtype=np.complex128)
    return psi_embed(i, block, n)


def lu_d_closed(i: int, z: complex, n: int) -> np.ndarray:
    """d(n_zṡ_i) = exp(z̄Ě_{γ_i})·a(z)^{−Ȟ_{γ_i}}"""
    return unipotent_param(i, np.conj(z), n) @ torus_param(i, 1.0 / a_of(z), n)


def chart_h(pt: ChartPoint) -> GroupTuple:
    """h_ẇ(ζ)：第 j 个槽位为 n_{ζ_j}ṡ_j"""
    n = pt.word.n
    slots = tuple(
        unipotent_param(letter, zeta, n) @ simple_refl_rep(letter, n)
        for letter, zeta in zip(pt.word, pt.coords)
    )
    return GroupTuple(pt.word, slots, Flavor.PARABOLIC)


def chart_j(pt: ChartPoint) -> GroupTuple:
    """j_ẇ(z)：第 j 个槽位为 k(n_{z_j}ṡ_j)"""
    n = pt.word.n
    slots = tuple(lu_k_closed(letter, z, n) for letter, z in zip(pt.word, pt.coords))
    return GroupTuple(pt.word, slots, Flavor.COMPACT)


def big_product_M(pt: ChartPoint,
                  tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    M_ẇ = (n_{ζ₁}ṡ₁⋯n_{ζ_ℓ}ṡ_ℓ)·ẇ⁻¹

    既约字保证结果落在 N_w 中（单位上三角）。

    Args:
        pt: ζ 坐标点
        tolerances: 容差

    Returns:
        单位上三角矩阵 M
    """
    w_dot = word_rep(pt.word)
    m = rho(chart_h(pt)) @ w_dot.conj().T

    if not is_member(m, Subgroup.N, tolerances=tolerances):
        raise MembershipError("M_ẇ 不是单位上三角矩阵")

    return m


def n_w_support(word: Word) -> Set[Tuple[int, int]]:
    """
    N_w = N ∩ wN⁻w⁻¹ 的非零上三角位置

    (r, c) 满足 r < c 且 w⁻¹(r) > w⁻¹(c)。
    """
    inverse = word_to_permutation(word).inverse()
    n = word.n
    return {
        (r, c)
        for r in range(1, n + 1)
        for c in range(r + 1, n + 1)
        if inverse(r) > inverse(c)
    }


def u_from_zeta(pt: ChartPoint) -> ChartPoint:
    """
    SL(3) 最长元 (1,2,1) 上的 u 坐标：u₁=ζ₁, u₂=ζ₃, u₃=iζ₂+ζ₁ζ₃

    u 坐标读取 M_ẇ 的 (1,2)、(2,3)、(1,3) 元，作为 ChartPoint 返回。
    """
    if pt.word.n != 3 or pt.word.letters != (1, 2, 1):
        raise ValueError("u 坐标只对 SL(3) 的字 (1,2,1) 定义")
    zeta1, zeta2, zeta3 = pt.coords
    return ChartPoint(pt.word, (zeta1, zeta3, 1j * zeta2 + zeta1 * zeta3))
