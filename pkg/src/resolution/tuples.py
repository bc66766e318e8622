"""
元组与群作用

P_𝐰 = P_{s₁}×⋯×P_{s_ℓ} 与 K_𝐰 = K_{s₁}×⋯×K_{s_ℓ} 中的元组，
B^ℓ（或 T^ℓ）的右作用
    (p₁b₁, b₁⁻¹p₂b₂, …, b_{ℓ−1}⁻¹p_ℓ b_ℓ)
以及商空间 𝒟_𝐰 = P_𝐰/B^ℓ、ℬ𝒮_𝐰 = K_𝐰/T^ℓ 中的相等判定。
商空间本身不构造，只用代表元加判定过程处理。
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence, Tuple

import numpy as np
from loguru import logger

from ..linalg.matrix_core import (
    DEFAULT_TOLERANCES,
    Subgroup,
    as_matrix,
    identity,
    is_member,
)
from ..utils.config import Tolerances
from ..utils.errors import (
    DimensionMismatchError,
    MembershipError,
    NotUnitaryError,
    SingularMatrixError,
)
from ..weyl.weyl_sl import Word


class Flavor(str, Enum):
    """元组类型"""
    PARABOLIC = "parabolic"   # P_𝐰
    COMPACT = "compact"       # K_𝐰


class ActionKind(str, Enum):
    """作用群"""
    BOREL = "B"   # B^ℓ 作用在 P_𝐰 上
    TORUS = "T"   # T^ℓ 作用在 K_𝐰 上


def _freeze(slots: Sequence[np.ndarray], n: int) -> Tuple[np.ndarray, ...]:
    frozen = []
    for slot in slots:
        mat = as_matrix(slot)
        if mat.shape != (n, n):
            raise DimensionMismatchError(f"槽位维度 {mat.shape} 与 n={n} 不符")
        mat.setflags(write=False)
        frozen.append(mat)
    return tuple(frozen)


@dataclass(frozen=True, eq=False)
class GroupTuple:
    """P_𝐰 或 K_𝐰 中的元组（第 j 个槽位属于 P_{s_j} 或 K_{s_j}）"""
    word: Word
    slots: Tuple[np.ndarray, ...]
    flavor: Flavor = Flavor.PARABOLIC

    def __post_init__(self):
        if len(self.slots) != len(self.word):
            raise DimensionMismatchError(
                f"槽位数 {len(self.slots)} 与字长 {len(self.word)} 不符"
            )
        object.__setattr__(self, "slots", _freeze(self.slots, self.word.n))
        object.__setattr__(self, "flavor", Flavor(self.flavor))

    def __len__(self) -> int:
        return len(self.slots)

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.slots)

    def __getitem__(self, position: int) -> np.ndarray:
        return self.slots[position]

    def membership_failures(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> list:
        """返回不满足成员条件的槽位编号（从1开始）"""
        subgroup = Subgroup.P_S if self.flavor == Flavor.PARABOLIC else Subgroup.K_S
        return [
            position
            for position, (letter, slot) in enumerate(zip(self.word, self.slots), start=1)
            if not is_member(slot, subgroup, letter, tolerances)
        ]

    def validate(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> "GroupTuple":
        """检查槽位成员条件，不满足时抛出 MembershipError"""
        failures = self.membership_failures(tolerances)
        if failures:
            raise MembershipError(f"{self.flavor.value} 元组的槽位 {failures} 不属于对应子群")
        return self


@dataclass(frozen=True, eq=False)
class ActionTuple:
    """B^ℓ 或 T^ℓ 中的元组"""
    word: Word
    slots: Tuple[np.ndarray, ...]
    kind: ActionKind = ActionKind.BOREL

    def __post_init__(self):
        if len(self.slots) != len(self.word):
            raise DimensionMismatchError(
                f"槽位数 {len(self.slots)} 与字长 {len(self.word)} 不符"
            )
        object.__setattr__(self, "slots", _freeze(self.slots, self.word.n))
        object.__setattr__(self, "kind", ActionKind(self.kind))

    def __len__(self) -> int:
        return len(self.slots)

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.slots)

    def __getitem__(self, position: int) -> np.ndarray:
        return self.slots[position]

    def validate(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> "ActionTuple":
        subgroup = Subgroup.B if self.kind == ActionKind.BOREL else Subgroup.T
        failures = [
            position
            for position, slot in enumerate(self.slots, start=1)
            if not is_member(slot, subgroup, tolerances=tolerances)
        ]
        if failures:
            raise MembershipError(f"作用元组的槽位 {failures} 不属于 {subgroup.value}")
        return self


def identity_action(word: Word, kind: ActionKind = ActionKind.BOREL) -> ActionTuple:
    """单位作用元组"""
    return ActionTuple(word, tuple(identity(word.n) for _ in word), kind)


def compose_actions(first: ActionTuple, second: ActionTuple) -> ActionTuple:
    """逐槽位乘积，满足 act(act(p, b), b′) = act(p, b·b′)"""
    if first.word != second.word or first.kind != second.kind:
        raise ValueError("作用元组的字或类型不一致")
    slots = tuple(x @ y for x, y in zip(first.slots, second.slots))
    return ActionTuple(first.word, slots, first.kind)


def _inverse(mat: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.inv(mat)
    except np.linalg.LinAlgError as e:
        raise SingularMatrixError(f"槽位不可逆: {e}") from e


def act(p: GroupTuple, b: ActionTuple,
        tolerances: Tolerances = DEFAULT_TOLERANCES) -> GroupTuple:
    """
    右作用 (p₁b₁, b₁⁻¹p₂b₂, …, b_{ℓ−1}⁻¹p_ℓ b_ℓ)

    Args:
        p: P_𝐰（配 B 作用）或 K_𝐰（配 T 作用）中的元组
        b: 作用元组
        tolerances: 容差

    Returns:
        作用后的元组（同一类型）
    """
    if p.word != b.word:
        raise ValueError("元组与作用元组的字不一致")

    expected = ActionKind.BOREL if p.flavor == Flavor.PARABOLIC else ActionKind.TORUS
    if b.kind != expected:
        raise ValueError(f"{p.flavor.value} 元组需要 {expected.value} 作用")

    previous_inv = identity(p.word.n)
    slots = []
    for slot, b_slot in zip(p.slots, b.slots):
        slots.append(previous_inv @ slot @ b_slot)
        previous_inv = _inverse(b_slot)

    return GroupTuple(p.word, tuple(slots), p.flavor).validate(tolerances)


def _coset_witnesses(p1: GroupTuple, p2: GroupTuple) -> list:
    """
    求解唯一候选作用元组：b₁ = p1₁⁻¹p2₁，b_k = p1_k⁻¹·b_{k−1}·p2_k

    作用是自由的，所以见证元组逐槽位确定。
    """
    if p1.word != p2.word:
        raise ValueError("两个元组的字不一致")

    witnesses = []
    previous = identity(p1.word.n)
    for position, (slot1, slot2) in enumerate(zip(p1.slots, p2.slots), start=1):
        try:
            current = np.linalg.solve(slot1, previous @ slot2)
        except np.linalg.LinAlgError as e:
            raise SingularMatrixError(f"槽位 {position} 奇异，无法判定陪集") from e
        witnesses.append(current)
        previous = current
    return witnesses


def tuple_coset_residual_D(p1: GroupTuple, p2: GroupTuple) -> float:
    """𝒟_𝐰 中的陪集偏差：各见证矩阵严格下三角部分的最大相对模"""
    if p1.flavor != Flavor.PARABOLIC or p2.flavor != Flavor.PARABOLIC:
        raise ValueError("𝒟_𝐰 判定需要 parabolic 元组")

    residual = 0.0
    for witness in _coset_witnesses(p1, p2):
        lower = np.abs(np.tril(witness, k=-1))
        residual = max(residual, float(np.max(lower, initial=0.0) / np.linalg.norm(witness)))
    return residual


def tuple_coset_equal_D(p1: GroupTuple, p2: GroupTuple,
                        tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """判断 [p1] = [p2] ∈ 𝒟_𝐰"""
    residual = tuple_coset_residual_D(p1, p2)
    logger.debug(f"[Resolution] 𝒟_𝐰 陪集偏差 {residual:.3e}")
    return residual <= tolerances.tol_coset


def tuple_coset_residual_BS(k1: GroupTuple, k2: GroupTuple,
                            tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """ℬ𝒮_𝐰 中的陪集偏差：各见证矩阵非对角元的最大模"""
    if k1.flavor != Flavor.COMPACT or k2.flavor != Flavor.COMPACT:
        raise ValueError("ℬ𝒮_𝐰 判定需要 compact 元组")

    size = k1.word.n
    for position, slot in enumerate(k1.slots + k2.slots, start=1):
        defect = float(np.linalg.norm(slot.conj().T @ slot - identity(size)))
        if defect > tolerances.tol_unitary * max(1.0, size ** 0.5):
            raise NotUnitaryError(f"槽位 {position} 不是酉矩阵: 偏差 {defect:.3e}")

    residual = 0.0
    for witness in _coset_witnesses(k1, k2):
        off = witness - np.diag(np.diag(witness))
        residual = max(residual, float(np.max(np.abs(off), initial=0.0)))
    return residual


def tuple_coset_equal_BS(k1: GroupTuple, k2: GroupTuple,
                         tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """判断 [k1] = [k2] ∈ ℬ𝒮_𝐰"""
    residual = tuple_coset_residual_BS(k1, k2, tolerances)
    logger.debug(f"[Resolution] ℬ𝒮_𝐰 陪集偏差 {residual:.3e}")
    return residual <= tolerances.tol_coset
