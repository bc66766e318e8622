"""
数值验证套件

功能：
1. 带种子的随机采样器（PCG64，每个套件独立的随机流）
2. 各套件逐样本计算偏差并与容差比较
3. 记录第一个失败样本（JSON，可直接重放）
4. 多个套件通过 asyncio 并发执行，报告按请求顺序输出
"""

import asyncio
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd
from loguru import logger
from tqdm import tqdm

from ..coords.change import (
    closed_form_len2,
    closed_form_sl3,
    coordinate_derivatives,
    len2_conjugate_derivative,
    lu_F_map,
    z_to_zeta,
    zeta_to_z,
)
from ..coords.charts import (
    ChartPoint,
    big_product_M,
    chart_h,
    chart_j,
    lu_d_closed,
    lu_k_closed,
    n_w_support,
    u_from_zeta,
)
from ..coords.identities import (
    commutator_exchange_identity,
    reflection_conjugation_identity,
    torus_conjugation_identity,
)
from ..linalg.matrix_core import (
    coset_residual_KT,
    d_map,
    frobenius_deviation,
    identity,
    iwasawa_factor,
    iwasawa_factor_gram_schmidt,
    k_map,
    max_entry_deviation,
    mat_inv,
)
from ..resolution.factorization import (
    beta,
    beta_inv,
    equivariance_witness,
    include,
    phi,
    rho,
    rho_K,
    theorem_witness,
)
from ..resolution.tuples import (
    ActionKind,
    ActionTuple,
    Flavor,
    GroupTuple,
    act,
    compose_actions,
    tuple_coset_residual_D,
)
from ..storage.serialization import (
    chart_point_to_json,
    dumps,
    group_tuple_to_json,
    matrix_to_json,
    word_to_json,
)
from ..utils.config import NumericsConfig, RunConfig
from ..utils.errors import FactorizationError, LieComputationError, NonReducedWordError
from ..utils.helpers import format_float
from ..weyl.weyl_sl import (
    Word,
    is_reduced,
    positive_roots,
    psi_embed,
    simple_refl_rep,
    simple_root,
    unipotent_param,
)


# 有限差分导数的相对容差（与步长 1e-5 的截断误差同阶）
FD_TOLERANCE = 1e-6

SUITE_NAMES = [
    "iwasawa",
    "theorem33",
    "lemma32",
    "diagram",
    "lemmas44to46",
    "sl3",
    "len2",
    "lemma43",
    "roundtrip",
    "ucoords",
    "charts",
]

SL3_WORD = Word(n=3, letters=(1, 2, 1))


class Sampler:
    """
    随机采样器

    每个套件使用 SeedSequence(seed, spawn_key=(套件序号,)) 派生的独立随机流，
    报告与线程调度无关。
    """

    def __init__(self, seed: int, stream: int = 0,
                 numerics: NumericsConfig = NumericsConfig()):
        """
        初始化采样器

        Args:
            seed: 64位无符号种子
            stream: 随机流编号
            numerics: 数值参数（采样条件数上限、坐标半径）
        """
        sequence = np.random.SeedSequence(seed, spawn_key=(stream,))
        self.rng = np.random.Generator(np.random.PCG64(sequence))
        self.numerics = numerics

    def complex_normal(self, shape=None):
        re = self.rng.standard_normal(shape)
        im = self.rng.standard_normal(shape)
        return (re + 1j * im) / np.sqrt(2)

    def complex_disk(self, radius: Optional[float] = None) -> complex:
        """圆盘 |z| ≤ R 内的均匀分布"""
        radius = self.numerics.sample_radius if radius is None else radius
        r = radius * np.sqrt(self.rng.uniform())
        theta = self.rng.uniform(0.0, 2 * np.pi)
        return complex(r * np.exp(1j * theta))

    def positive(self, spread: float = 1.0) -> float:
        return float(np.exp(self.rng.uniform(-spread, spread)))

    @staticmethod
    def _normalize_det(mat: np.ndarray) -> np.ndarray:
        # c^n = det，除以 c 后行列式为1
        size = mat.shape[0]
        c = np.exp(np.log(np.linalg.det(mat)) / size)
        return mat / c

    def det_one_matrix(self, size: int) -> np.ndarray:
        """条件数受控的 SL(n,C) 随机矩阵"""
        for _ in range(100):
            mat = self.complex_normal((size, size))
            if np.linalg.cond(mat) <= self.numerics.sample_condition_limit:
                return self._normalize_det(mat)
        raise FactorizationError("无法采样到条件数合格的矩阵")

    def special_unitary(self, size: int) -> np.ndarray:
        """SU(n) 中的 Haar 随机矩阵"""
        q, r = np.linalg.qr(self.complex_normal((size, size)))
        diag = np.diag(r)
        q = q * (diag / np.abs(diag))
        return self._normalize_det(q)

    def torus(self, size: int) -> np.ndarray:
        """T 中的随机元素"""
        phases = np.exp(1j * self.rng.uniform(0.0, 2 * np.pi, size))
        return self._normalize_det(np.diag(phases))

    def _triangular(self, size: int, phases: bool) -> np.ndarray:
        diag = np.exp(self.rng.uniform(-0.5, 0.5, size)).astype(np.complex128)
        if phases:
            diag = diag * np.exp(1j * self.rng.uniform(0.0, 2 * np.pi, size))
        upper = np.triu(0.5 * self.complex_normal((size, size)), k=1)
        return self._normalize_det(np.diag(diag) + upper)

    def borel(self, size: int) -> np.ndarray:
        """B 中的随机元素（对角元模长 e^{±0.5}）"""
        return self._triangular(size, phases=True)

    def d_element(self, size: int) -> np.ndarray:
        """D = AN 中的随机元素"""
        return self._triangular(size, phases=False)

    def su2(self) -> np.ndarray:
        v = self.rng.standard_normal(4)
        v = v / np.linalg.norm(v)
        a = complex(v[0], v[1])
        b = complex(v[2], v[3])
        return np.array([[a, -np.conj(b)], [b, np.conj(a)]], dtype=np.complex128)

    def parabolic_slot(self, i: int, size: int) -> np.ndarray:
        """P_{s_i} 中的随机元素 b₁·Ψ(SU(2))·b₂"""
        return self.borel(size) @ psi_embed(i, self.su2(), size) @ self.borel(size)

    def compact_slot(self, i: int, size: int) -> np.ndarray:
        """K_{s_i} 中的随机元素 Ψ(SU(2))·t"""
        return psi_embed(i, self.su2(), size) @ self.torus(size)

    def parabolic_tuple(self, word: Word) -> GroupTuple:
        slots = tuple(self.parabolic_slot(letter, word.n) for letter in word)
        return GroupTuple(word, slots, Flavor.PARABOLIC)

    def compact_tuple(self, word: Word) -> GroupTuple:
        slots = tuple(self.compact_slot(letter, word.n) for letter in word)
        return GroupTuple(word, slots, Flavor.COMPACT)

    def borel_action(self, word: Word) -> ActionTuple:
        return ActionTuple(word, tuple(self.borel(word.n) for _ in word), ActionKind.BOREL)

    def chart_point(self, word: Word) -> ChartPoint:
        return ChartPoint(word, tuple(self.complex_disk() for _ in word))


@dataclass
class CheckResult:
    """单项检查结果"""
    name: str
    tolerance: float
    samples: int = 0
    max_deviation: float = 0.0
    failing_sample: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.max_deviation)) and self.max_deviation <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        deviation = self.max_deviation if np.isfinite(self.max_deviation) else None
        return {
            "name": self.name,
            "samples": self.samples,
            "max_deviation": deviation,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "failing_sample": self.failing_sample
        }


@dataclass
class SuiteReport:
    """套件报告"""
    suite: str
    checks: Dict[str, CheckResult] = field(default_factory=dict)
    errors: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.errors and all(check.passed for check in self.checks.values())

    def check(self, name: str, tolerance: float) -> CheckResult:
        if name not in self.checks:
            self.checks[name] = CheckResult(name=name, tolerance=tolerance)
        return self.checks[name]

    def record(self, name: str, tolerance: float, deviation: float,
               sample: Dict[str, Any]):
        """
        记录一次偏差

        Args:
            name: 检查名
            tolerance: 容差
            deviation: 本样本偏差
            sample: 样本 JSON（只保留第一次失败的样本）
        """
        result = self.check(name, tolerance)
        result.samples += 1
        deviation = float(deviation) if np.isfinite(deviation) else float("inf")
        if deviation > result.max_deviation or not np.isfinite(deviation):
            result.max_deviation = deviation
        if result.failing_sample is None and not deviation <= tolerance:
            result.failing_sample = sample
            logger.warning(f"[Verify] {self.suite}/{name} 失败: 偏差 {deviation:.3e}")

    def record_error(self, index: int, error: Exception, sample: Dict[str, Any]):
        if not self.errors:
            logger.warning(f"[Verify] {self.suite} 样本 {index} 抛出异常: {error}")
        self.errors.append({
            "index": index,
            "error": type(error).__name__,
            "message": str(error),
            "sample": sample
        })

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks.values()],
            "errors": self.errors[:1],
            "error_count": len(self.errors)
        }


@dataclass
class SuiteContext:
    """套件运行上下文"""
    run: RunConfig
    numerics: NumericsConfig
    sampler: Sampler
    report: SuiteReport
    show_progress: bool = False
    position: int = 0

    @property
    def word(self) -> Word:
        return Word(n=self.run.n, letters=tuple(self.run.word))

    @property
    def tol(self):
        return self.run.tolerances

    def limit(self, base: float, name: str) -> float:
        """检查项容差：min(基础容差, thresholds 中的上限)"""
        return min(base, getattr(self.run.thresholds, name))

    def indices(self) -> Iterable[int]:
        return tqdm(
            range(self.run.samples),
            desc=self.report.suite,
            file=sys.stderr,
            disable=not self.show_progress,
            position=self.position,
            leave=False
        )


def _relative(x, y) -> float:
    """逐元素最大偏差 / max(1, max|y|)"""
    y = np.asarray(y)
    return max_entry_deviation(x, y) / max(1.0, float(np.max(np.abs(y), initial=0.0)))


def _tuple_deviation(t1: GroupTuple, t2: GroupTuple) -> float:
    return max(max_entry_deviation(a, b) for a, b in zip(t1.slots, t2.slots))


def _require_reduced(word: Word):
    if not is_reduced(word):
        raise NonReducedWordError(f"字 {word.letters} 不是既约字")


def suite_iwasawa(ctx: SuiteContext):
    """Iwasawa 分解：酉性、重构、D 结构、唯一性以及 k/d 的等变性"""
    tol = ctx.tol
    for index in ctx.indices():
        size = 2 + index % (ctx.run.n - 1)
        g = ctx.sampler.det_one_matrix(size)
        u = ctx.sampler.special_unitary(size)
        b = ctx.sampler.d_element(size)
        t = ctx.sampler.torus(size)
        sample = {"index": index, "g": matrix_to_json(g), "u": matrix_to_json(u),
                  "b": matrix_to_json(b), "t": matrix_to_json(t)}
        try:
            factors = iwasawa_factor(g, tol)
            k, d = factors.k, factors.d
            ctx.report.record("unitarity", tol.tol_unitary,
                              frobenius_deviation(k.conj().T @ k, identity(size)), sample)
            ctx.report.record("reconstruction", tol.tol_recon,
                              frobenius_deviation(factors.reconstruct(), g) / float(np.linalg.norm(g)),
                              sample)

            diag = np.diag(d)
            structure = max(
                float(np.max(np.abs(np.tril(d, k=-1)), initial=0.0)),
                float(np.max(np.abs(diag.imag))),
                float(max(0.0, -np.min(diag.real)))
            )
            ctx.report.record("d_structure", tol.tol_value, structure, sample)

            other = iwasawa_factor_gram_schmidt(g, tol)
            ctx.report.record("uniqueness", tol.tol_value,
                              max(_relative(other.k, k), _relative(other.d, d)), sample)

            limit = ctx.limit(tol.tol_value, "iwasawa_equivariance")
            ctx.report.record("k_left_equivariance", limit,
                              _relative(k_map(u @ g, tol), u @ k), sample)
            ctx.report.record("d_left_invariance", limit,
                              _relative(d_map(u @ g, tol), d), sample)
            ctx.report.record("k_right_invariance", limit,
                              _relative(k_map(g @ b, tol), k), sample)
            ctx.report.record("d_right_equivariance", limit,
                              _relative(d_map(g @ b, tol), d @ b), sample)
            # k(g·t) = k(g)·t，d(g·t) = t⁻¹·d(g)·t
            ctx.report.record("k_torus_equivariance", limit,
                              _relative(k_map(g @ t, tol), k @ t), sample)
            ctx.report.record("d_torus_conjugation", limit,
                              _relative(d_map(g @ t, tol), t.conj().T @ d @ t), sample)
        except LieComputationError as e:
            ctx.report.record_error(index, e, sample)


def suite_theorem33(ctx: SuiteContext):
    """φ∘ι = id，以及 [ι(φ(p))] = [p] ∈ 𝒟_𝐰"""
    tol = ctx.tol
    for index in ctx.indices():
        p = ctx.sampler.parabolic_tuple(ctx.word)
        sample = {"index": index, "p": group_tuple_to_json(p)}
        try:
            k = phi(p, tol)
            ctx.report.record("phi_include_identity",
                              ctx.limit(tol.tol_value, "phi_include_identity"),
                              _tuple_deviation(phi(include(k), tol), k), sample)
            ctx.report.record("coset_D", tol.tol_coset,
                              tuple_coset_residual_D(include(k), p), sample)

            witnessed = act(p, theorem_witness(p, tol), tol)
            ctx.report.record("theorem_witness", tol.tol_value,
                              _tuple_deviation(witnessed, include(k)), sample)
            ctx.report.record("beta_roundtrip", tol.tol_value,
                              _tuple_deviation(beta_inv(beta(p, tol), tol), p), sample)
        except LieComputationError as e:
            ctx.report.record_error(index, e, sample)


def suite_lemma32(ctx: SuiteContext):
    """φ(p.b) = φ(p).t，t_j = k(b_j)，以及逐槽位的 d 恒等式"""
    tol = ctx.tol
    word = ctx.word
    for index in ctx.indices():
        p = ctx.sampler.parabolic_tuple(word)
        b = ctx.sampler.borel_action(word)
        b2 = ctx.sampler.borel_action(word)
        sample = {
            "index": index,
            "p": group_tuple_to_json(p),
            "b": [matrix_to_json(slot) for slot in b.slots]
        }
        try:
            t = equivariance_witness(b, tol)
            acted = act(p, b, tol)
            ctx.report.record("equivariance", ctx.limit(tol.tol_value, "equivariance"),
                              _tuple_deviation(phi(acted, tol), act(phi(p, tol), t, tol)), sample)

            q = beta(p, tol)
            q_acted = beta(acted, tol)
            # q'_k = t_{k−1}⁻¹·q_k·b_k，d(q'_k) = t_k⁻¹·d(q_k)·b_k
            previous_t = identity(word.n)
            q_deviation = 0.0
            d_deviation = 0.0
            for q_k, q_acted_k, b_k, t_k in zip(q.slots, q_acted.slots, b.slots, t.slots):
                q_expected = mat_inv(previous_t, tol) @ q_k @ b_k
                q_deviation = max(q_deviation, _relative(q_acted_k, q_expected))
                d_expected = mat_inv(t_k, tol) @ d_map(q_k, tol) @ b_k
                d_deviation = max(d_deviation, _relative(d_map(q_acted_k, tol), d_expected))
                previous_t = t_k
            ctx.report.record("q_slot_identity", tol.tol_value, q_deviation, sample)
            ctx.report.record("d_slot_identity", tol.tol_value, d_deviation, sample)

            ctx.report.record("action_composition", tol.tol_value,
                              _tuple_deviation(act(acted, b2, tol),
                                               act(p, compose_actions(b, b2), tol)),
                              sample)
            ctx.report.record("coset_D_orbit", tol.tol_coset,
                              tuple_coset_residual_D(acted, p), sample)
        except LieComputationError as e:
            ctx.report.record_error(index, e, sample)


def suite_diagram(ctx: SuiteContext):
    """[k(ρ(p))] = [ρ^K(φ(p))] ∈ K/T，以及 ρ(p) = ρ^K(φ(p))·d(q_ℓ)"""
    tol = ctx.tol
    for index in ctx.indices():
        p = ctx.sampler.parabolic_tuple(ctx.word)
        sample = {"index": index, "p": group_tuple_to_json(p)}
        try:
            product = rho(p)
            compact = rho_K(phi(p, tol))
            ctx.report.record("coset_KT", tol.tol_coset,
                              coset_residual_KT(k_map(product, tol), compact, tol), sample)

            last = beta(p, tol).slots[-1] if len(p) else identity(p.word.n)
            ctx.report.record("telescoping", tol.tol_value,
                              _relative(compact @ d_map(last, tol), product), sample)
        except LieComputationError as e:
            ctx.report.record_error(index, e, sample)


def suite_lemmas44to46(ctx: SuiteContext):
    """环面共轭、交换子、单反射共轭三条矩阵恒等式"""
    tol = ctx.tol
    size = max(ctx.run.n, 3)
    roots = positive_roots(size)
    all_roots = roots + [root.negate() for root in roots]

    for index in ctx.indices():
        u = ctx.sampler.complex_disk()
        u2 = ctx.sampler.complex_disk()
        a = ctx.sampler.positive()
        sample = {"index": index, "n": size, "u": [u.real, u.imag],
                          "u2": [u2.real, u2.imag], "a": a}

        limit = ctx.limit(tol.tol_value, "matrix_identities")
        try:
            deviation = 0.0
            for alpha in roots:
                for beta_root in roots:
                    lhs, rhs = torus_conjugation_identity(alpha, beta_root, u, a, size)
                    deviation = max(deviation, _relative(lhs, rhs))
            ctx.report.record("torus_conjugation", limit, deviation, sample)

            deviation = 0.0
            for i in range(1, size - 1):
                for alpha, beta_root in ((simple_root(i), simple_root(i + 1)),
                                         (simple_root(i + 1), simple_root(i))):
                    lhs, rhs = commutator_exchange_identity(alpha, beta_root, u, u2, size)
                    deviation = max(deviation, _relative(lhs, rhs))
            ctx.report.record("commutator_exchange", limit, deviation, sample)

            deviation = 0.0
            for i in range(1, size):
                for alpha in all_roots:
                    lhs, rhs = reflection_conjugation_identity(i, alpha, u, size)
                    deviation = max(deviation, _relative(lhs, rhs))
            ctx.report.record("reflection_conjugation", limit, deviation, sample)
        except LieComputationError as e:
            ctx.report.record_error(index, e, sample)


def suite_sl3(ctx: SuiteContext):
    """SL(3) 字 (1,2,1) 上数值换元与闭式一致"""
    tol = ctx.tol
    for index in ctx.indices():
        pt = ctx.sampler.chart_point(SL3_WORD)
        sample = {"index": index, "zeta": chart_point_to_json(pt)}
        try:
            z = zeta_to_z(pt, tol)
            ctx.report.record("closed_form", ctx.limit(tol.tol_value, "closed_form_sl3"),
                              _relative(z.as_array(), closed_form_sl3(pt).as_array()), sample)
        except LieComputationError as e:
            ctx.report.record_error(index, e, sample)


def _length_two_words(size: int) -> List[Word]:
    return [
        Word(n=size, letters=(i, j))
        for i in range(1, size)
        for j in range(1, size)
        if i != j
    ]


def suite_len2(ctx: SuiteContext):
    """长度2的字：数值换元与闭式一致；正交字母对给出恒等映射"""
    tol = ctx.tol
    words = _length_two_words(max(ctx.run.n, 3))
    for index in ctx.indices():
        word = words[index % len(words)]
        pt = ctx.sampler.chart_point(word)
        sample = {"index": index, "zeta": chart_point_to_json(pt)}
        try:
            z = zeta_to_z(pt, tol)
            ctx.report.record("closed_form", ctx.limit(tol.tol_value, "closed_form_len2"),
                              _relative(z.as_array(), closed_form_len2(pt).as_array()), sample)
            if abs(word[0] - word[1]) > 1:
                ctx.report.record("orthogonal_identity",
                                  ctx.limit(tol.tol_value, "orthogonal_identity"),
                                  _relative(z.as_array(), pt.as_array()), sample)
        except LieComputationError as e:
            ctx.report.record_error(index, e, sample)


def suite_lemma43(ctx: SuiteContext):
    """k(n_zṡ) 与 d(n_zṡ) 的闭式与数值分解一致"""
    tol = ctx.tol
    size = ctx.run.n
    for index in ctx.indices():
        z = ctx.sampler.complex_disk()
        letter = 1 + index % (size - 1)
        sample = {"index": index, "n": size, "i": letter, "z": [z.real, z.imag]}
        try:
            g = unipotent_param(letter, z, size) @ simple_refl_rep(letter, size)
            factors = iwasawa_factor(g, tol)
            limit = ctx.limit(tol.tol_value, "closed_form_factorization")
            ctx.report.record("k_closed_form", limit,
                              _relative(factors.k, lu_k_closed(letter, z, size)), sample)
            ctx.report.record("d_closed_form", limit,
                              _relative(factors.d, lu_d_closed(letter, z, size)), sample)
        except LieComputationError as e:
            ctx.report.record_error(index, e, sample)


def suite_roundtrip(ctx: SuiteContext):
    """两个方向的换元互逆"""
    tol = ctx.tol
    word = ctx.word
    _require_reduced(word)

    for index in ctx.indices():
        zeta = ctx.sampler.chart_point(word)
        z = ctx.sampler.chart_point(word)
        sample = {"index": index, "zeta": chart_point_to_json(zeta),
                          "z": chart_point_to_json(z)}
        try:
            back = z_to_zeta(zeta_to_z(zeta, tol), tol)
            limit = ctx.limit(tol.tol_coset, "roundtrip")
            ctx.report.record("zeta_z_zeta", limit,
                              _relative(back.as_array(), zeta.as_array()), sample)
            forth = zeta_to_z(z_to_zeta(z, tol), tol)
            ctx.report.record("z_zeta_z", limit,
                              _relative(forth.as_array(), z.as_array()), sample)
        except LieComputationError as e:
            ctx.report.record_error(index, e, sample)

    point = ChartPoint(SL3_WORD, (1.0, 2 ** -0.5, (2 + 1j) / np.sqrt(3)))
    sample = {"index": ctx.run.samples, "z": chart_point_to_json(point)}
    try:
        zeta = z_to_zeta(point, tol)
        ctx.report.record("sl3_inverse_point", ctx.limit(tol.tol_value, "sl3_inverse_point"),
                          _relative(zeta.as_array(), np.ones(3)), sample)
    except LieComputationError as e:
        ctx.report.record_error(ctx.run.samples, e, sample)


def suite_ucoords(ctx: SuiteContext):
    """SL(3) 上 M_ẇ 的 (1,2)、(2,3)、(1,3) 元即 u 坐标"""
    tol = ctx.tol
    for index in ctx.indices():
        pt = ctx.sampler.chart_point(SL3_WORD)
        sample = {"index": index, "zeta": chart_point_to_json(pt)}
        try:
            m = big_product_M(pt, tol)
            entries = np.array([m[0, 1], m[1, 2], m[0, 2]])
            ctx.report.record("u_entries", ctx.limit(tol.tol_value, "u_entries"),
                              _relative(entries, u_from_zeta(pt).as_array()), sample)
        except LieComputationError as e:
            ctx.report.record_error(index, e, sample)


def suite_charts(ctx: SuiteContext):
    """坐标卡一致性、换元正确性、伸缩乘积、F_ẇ 与非全纯性"""
    tol = ctx.tol
    word = ctx.word
    _require_reduced(word)
    support = n_w_support(word)
    outside = [
        (r, c)
        for r in range(1, word.n + 1)
        for c in range(r + 1, word.n + 1)
        if (r, c) not in support
    ]
    prefix = Word(n=word.n, letters=word.letters[:2]) if len(word) >= 2 else None

    for index in ctx.indices():
        pt = ctx.sampler.chart_point(word)
        sample = {"index": index, "zeta": chart_point_to_json(pt)}
        try:
            z = zeta_to_z(pt, tol)
            h = chart_h(pt)
            j = chart_j(z)
            ctx.report.record("change_of_variables", tol.tol_value,
                              _tuple_deviation(phi(h, tol), j), sample)

            last = beta(h, tol).slots[-1] if len(h) else identity(word.n)
            ctx.report.record("telescoping", tol.tol_value,
                              _relative(rho_K(j) @ d_map(last, tol), rho(h)), sample)

            m = big_product_M(pt, tol)
            ctx.report.record("n_w_support", tol.tol_value,
                              max((abs(m[r - 1, c - 1]) for r, c in outside), default=0.0),
                              sample)

            try:
                f = lu_F_map(z, tol)
                ctx.report.record("lu_F_map", tol.tol_coset, _relative(f, m), sample)
            except FactorizationError:
                ctx.report.record("lu_F_map", tol.tol_coset, float("inf"), sample)

            if prefix is not None:
                head = ChartPoint(prefix, pt.coords[:2])
                _, numeric = coordinate_derivatives(
                    zeta_to_z, head, 0, 1, ctx.numerics.finite_difference_step
                )
                analytic = len2_conjugate_derivative(head)
                ctx.report.record("conjugate_derivative", FD_TOLERANCE,
                                  abs(numeric - analytic) / max(1.0, abs(analytic)), sample)
        except LieComputationError as e:
            ctx.report.record_error(index, e, sample)


SUITES: Dict[str, Callable[[SuiteContext], None]] = {
    "iwasawa": suite_iwasawa,
    "theorem33": suite_theorem33,
    "lemma32": suite_lemma32,
    "diagram": suite_diagram,
    "lemmas44to46": suite_lemmas44to46,
    "sl3": suite_sl3,
    "len2": suite_len2,
    "lemma43": suite_lemma43,
    "roundtrip": suite_roundtrip,
    "ucoords": suite_ucoords,
    "charts": suite_charts,
}


def expand_suites(names: Iterable[str]) -> List[str]:
    """展开 "all" 并去重（保持顺序）"""
    expanded = []
    for name in names:
        candidates = SUITE_NAMES if name == "all" else [name]
        for candidate in candidates:
            if candidate not in SUITES:
                raise ValueError(f"未知的验证套件: {candidate}")
            if candidate not in expanded:
                expanded.append(candidate)
    return expanded


def run_suite(name: str, run: RunConfig, numerics: NumericsConfig = NumericsConfig(),
              show_progress: bool = False) -> SuiteReport:
    """
    运行单个套件

    Args:
        name: 套件名
        run: 运行参数（种子、样本数、字、容差）
        numerics: 数值参数
        show_progress: 是否在 stderr 显示进度条

    Returns:
        SuiteReport
    """
    stream = SUITE_NAMES.index(name)
    report = SuiteReport(suite=name)
    ctx = SuiteContext(
        run=run,
        numerics=numerics,
        sampler=Sampler(run.seed, stream, numerics),
        report=report,
        show_progress=show_progress,
        position=stream
    )

    logger.info(f"[Verify] 开始套件 {name}（{run.samples} 个样本）")
    SUITES[name](ctx)
    logger.info(f"[Verify] 套件 {name} {'通过' if report.passed else '失败'}")
    return report


async def run_suites(names: Iterable[str], run: RunConfig,
                     numerics: NumericsConfig = NumericsConfig(),
                     show_progress: bool = False) -> List[SuiteReport]:
    """并发运行多个套件，结果按请求顺序返回"""
    names = expand_suites(names)
    tasks = [
        asyncio.to_thread(run_suite, name, run, numerics, show_progress)
        for name in names
    ]
    return list(await asyncio.gather(*tasks))


def reports_to_json(reports: List[SuiteReport], run: RunConfig) -> Dict[str, Any]:
    payload = word_to_json(Word(n=run.n, letters=tuple(run.word)))
    payload.update({
        "seed": run.seed,
        "samples": run.samples,
        "passed": all(report.passed for report in reports),
        "suites": [report.to_dict() for report in reports]
    })
    return payload


def render_human(reports: List[SuiteReport]) -> str:
    """人类可读的报告表格"""
    rows = []
    for report in reports:
        for check in report.checks.values():
            rows.append({
                "suite": report.suite,
                "check": check.name,
                "samples": check.samples,
                "max_deviation": f"{check.max_deviation:.3e}",
                "tolerance": format_float(check.tolerance),
                "status": "PASS" if check.passed else "FAIL"
            })
        if report.errors:
            rows.append({
                "suite": report.suite,
                "check": "exceptions",
                "samples": len(report.errors),
                "max_deviation": "-",
                "tolerance": "-",
                "status": "FAIL"
            })

    columns = ["suite", "check", "samples", "max_deviation", "tolerance", "status"]
    lines = [pd.DataFrame(rows, columns=columns).to_string(index=False)]

    for report in reports:
        for check in report.checks.values():
            if check.failing_sample is not None:
                lines.append("")
                lines.append(f"[{report.suite}/{check.name}] 第一个失败样本:")
                lines.append(dumps(check.failing_sample))
        if report.errors:
            lines.append("")
            lines.append(f"[{report.suite}] 第一个异常样本:")
            lines.append(dumps(report.errors[0]))

    overall = all(report.passed for report in reports)
    lines.append("")
    lines.append(f"总体结果: {'PASS' if overall else 'FAIL'}")
    return "\n".join(lines)
