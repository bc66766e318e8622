"""
A型根系与 Weyl 群模块

功能：
1. Weyl 字（单反射序列）与置换、长度、既约性
2. SL(2,C) 嵌入 Ψ_s、单反射代表元 ṡ 与 ẇ
3. 单参数子群 n_z、a^{Ȟ}
4. 根、余根、根向量与对偶配对比值

约定：置换和矩阵行列下标都从 1 开始。
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, List, NamedTuple, Set, Tuple

import numpy as np

from ..linalg.matrix_core import DEFAULT_TOLERANCES, as_matrix, identity
from ..utils.config import Tolerances


# SL(2,C) Weyl 群非平凡元的代表元
SIGMA = np.array([[0, 1j], [1j, 0]], dtype=np.complex128)


@dataclass(frozen=True)
class Word:
    """
    Weyl 字 𝐰 = (s₁, …, s_ℓ)

    n 是矩阵阶数，字母取值于 [1, n−1]。非既约字也可以表示。
    """
    n: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"矩阵阶数至少为2，得到 {self.n}")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for letter in self.letters:
            if not 1 <= letter <= self.n - 1:
                raise ValueError(f"字母 {letter} 超出范围 [1, {self.n - 1}]")

    @classmethod
    def parse(cls, text: str, n: int) -> "Word":
        """解析 "1,2,1" 形式的字"""
        letters = [int(item) for item in text.split(",") if item.strip()]
        return cls(n=n, letters=tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, position: int) -> int:
        return self.letters[position]

    def __add__(self, other: "Word") -> "Word":
        if self.n != other.n:
            raise ValueError("不同阶数的字不能拼接")
        return Word(n=self.n, letters=self.letters + other.letters)


@dataclass(frozen=True)
class Permutation:
    """一行记号的置换 (w(1), …, w(n))"""
    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"不是 1..n 上的置换: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """(self ∘ other)(x) = self(other(x))"""
        return Permutation(tuple(self(other(x)) for x in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        result = [0] * self.n
        for x, image in enumerate(self.images, start=1):
            result[image - 1] = x
        return Permutation(tuple(result))


class Root(NamedTuple):
    """根 λ_p − λ_q（p ≠ q），p < q 时为正根"""
    p: int
    q: int

    @property
    def is_positive(self) -> bool:
        return self.p < self.q

    def negate(self) -> "Root":
        return Root(self.q, self.p)


def simple_root(i: int) -> Root:
    """单根 γ_i = λ_i − λ_{i+1}"""
    return Root(i, i + 1)


def positive_roots(n: int) -> List[Root]:
    """SL(n) 的全部正根"""
    return [Root(p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]


def reflect_root(i: int, alpha: Root) -> Root:
    """单反射 s_i 作用在根上（交换下标 i 与 i+1）"""
    swap = {i: i + 1, i + 1: i}
    return Root(swap.get(alpha.p, alpha.p), swap.get(alpha.q, alpha.q))


def _root_inner(alpha: Root, beta: Root) -> int:
    """(e_p − e_q)·(e_r − e_s)"""
    return ((alpha.p == beta.p) - (alpha.p == beta.q)
            - (alpha.q == beta.p) + (alpha.q == beta.q))


def root_pairing_ratio(alpha: Root, beta: Root) -> Fraction:
    """⟨⟨α,β⟩⟩/⟨⟨α,α⟩⟩，与 Killing 形式的归一化无关"""
    return Fraction(_root_inner(alpha, beta), _root_inner(alpha, alpha))


def root_length_ratio(alpha: Root, beta: Root) -> Fraction:
    """⟨⟨β,β⟩⟩/⟨⟨α,α⟩⟩"""
    return Fraction(_root_inner(beta, beta), _root_inner(alpha, alpha))


def pairing_ratio(i: int, j: int, n: int = None) -> Fraction:
    """
    单根配对比值 ⟨⟨γ_i,γ_j⟩⟩/⟨⟨γ_i,γ_i⟩⟩

    Args:
        i, j: 单根下标
        n: 矩阵阶数（给出时检查下标范围）

    Returns:
        i=j 时为 1，|i−j|=1 时为 −1/2，否则为 0
    """
    upper = (n - 1) if n is not None else None
    for index in (i, j):
        if index < 1 or (upper is not None and index > upper):
            raise ValueError(f"单根下标 {index} 超出范围")
    return root_pairing_ratio(simple_root(i), simple_root(j))


def coroot(alpha: Root, n: int) -> np.ndarray:
    """余根 Ȟ_α = E_pp − E_qq"""
    h = np.zeros((n, n), dtype=np.complex128)
    h[alpha.p - 1, alpha.p - 1] = 1
    h[alpha.q - 1, alpha.q - 1] = -1
    return h


def root_vector(alpha: Root, n: int) -> np.ndarray:
    """根向量 E_α = E_pq"""
    e = np.zeros((n, n), dtype=np.complex128)
    e[alpha.p - 1, alpha.q - 1] = 1
    return e


def torus_exp(alpha: Root, a: float, exponent: float, n: int) -> np.ndarray:
    """a^{exponent·Ȟ_α}（精确对角矩阵）"""
    if a <= 0:
        raise ValueError(f"a 必须为正数，得到 {a}")
    diag = np.ones(n, dtype=np.complex128)
    diag[alpha.p - 1] = a ** exponent
    diag[alpha.q - 1] = a ** (-exponent)
    return np.diag(diag)


def _simple_transposition(i: int, n: int) -> Permutation:
    images = list(range(1, n + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def word_to_permutation(word: Word) -> Permutation:
    """w = s₁s₂⋯s_ℓ（按字母顺序复合相邻对换）"""
    return reduce(
        lambda perm, letter: perm.compose(_simple_transposition(letter, word.n)),
        word.letters,
        Permutation.identity(word.n)
    )


def inversion_set(perm: Permutation) -> Set[Tuple[int, int]]:
    """逆序对 {(i, j): i < j, w(i) > w(j)}"""
    return {
        (i, j)
        for i in range(1, perm.n + 1)
        for j in range(i + 1, perm.n + 1)
        if perm(i) > perm(j)
    }


def length(perm: Permutation) -> int:
    """ℓ(w) = 逆序数"""
    return len(inversion_set(perm))


def is_reduced(word: Word) -> bool:
    """字母数等于 ℓ(w)"""
    return len(word) == length(word_to_permutation(word))


def longest_word(n: int) -> Word:
    """最长元的阶梯既约字 (1)(2,1)(3,2,1)…"""
    letters = [j for top in range(1, n) for j in range(top, 0, -1)]
    return Word(n=n, letters=tuple(letters))


def permutation_matrix(perm: Permutation) -> np.ndarray:
    """置换矩阵，第 j 列为 e_{w(j)}"""
    mat = np.zeros((perm.n, perm.n), dtype=np.complex128)
    for j in range(1, perm.n + 1):
        mat[perm(j) - 1, j - 1] = 1
    return mat


def psi_embed(i: int, m: np.ndarray, n: int,
              tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Ψ_{s_i}: SL(2,C) → SL(n,C)，把 m 放到第 (i, i+1) 行列

    Args:
        i: 单根下标
        m: 2×2 行列式为1的矩阵
        n: 矩阵阶数
        tolerances: 容差

    Returns:
        嵌入后的 n×n 矩阵
    """
    if not 1 <= i <= n - 1:
        raise ValueError(f"单根下标 {i} 超出范围 [1, {n - 1}]")
    m = as_matrix(m)
    if m.shape != (2, 2):
        raise ValueError(f"Ψ 需要 2×2 矩阵，得到 {m.shape}")
    if abs(np.linalg.det(m) - 1) > tolerances.tol_det:
        raise ValueError(f"Ψ 需要行列式为1的矩阵: det = {complex(np.linalg.det(m))}")

    result = identity(n)
    result[i - 1:i + 1, i - 1:i + 1] = m
    return result


def simple_refl_rep(i: int, n: int) -> np.ndarray:
    """ṡ_i = Ψ_{s_i}(σ)"""
    return psi_embed(i, SIGMA, n)


def word_rep(word: Word) -> np.ndarray:
    """ẇ = ṡ₁ṡ₂⋯ṡ_ℓ"""
    return reduce(
        lambda acc, letter: acc @ simple_refl_rep(letter, word.n),
        word.letters,
        identity(word.n)
    )


def unipotent_param(i: int, z: complex, n: int) -> np.ndarray:
    """n_z = exp(z·Ě_{γ_i}) = I + z·E_{i,i+1}"""
    if not 1 <= i <= n - 1:
        raise ValueError(f"单根下标 {i} 超出范围 [1, {n - 1}]")
    result = identity(n)
    result[i - 1, i] = z
    return result


def torus_param(i: int, a: float, n: int) -> np.ndarray:
    """a^{Ȟ_{γ_i}} = Ψ_{s_i}(diag(a, a⁻¹))"""
    if not 1 <= i <= n - 1:
        raise ValueError(f"单根下标 {i} 超出范围 [1, {n - 1}]")
    return torus_exp(simple_root(i), a, 1.0, n)
