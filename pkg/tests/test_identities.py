"""
矩阵恒等式（环面共轭、交换子、单反射共轭）单元测试
"""

import pytest
import numpy as np
from pathlib import Path
import sys

# 添加项目根目录到路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.coords.identities import (
    commutator_exchange_identity,
    reflection_conjugation_identity,
    torus_conjugation_identity,
)
from src.weyl.weyl_sl import Root, positive_roots, simple_root


def relative_gap(lhs, rhs):
    return np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs)))


class TestTorusConjugation:
    """环面共轭恒等式测试类"""

    @pytest.mark.parametrize("n", [3, 4])
    def test_all_positive_root_pairs(self, sampler, n):
        roots = positive_roots(n)
        for _ in range(20):
            u = sampler.complex_disk()
            a = sampler.positive()
            for alpha in roots:
                for beta in roots:
                    lhs, rhs = torus_conjugation_identity(alpha, beta, u, a, n)
                    assert relative_gap(lhs, rhs) <= 1e-10

    def test_wrong_exponent_fails(self):
        """相邻单根的配对比值为 −1/2，换成 0 后等式不成立"""
        alpha, beta = simple_root(1), simple_root(2)
        lhs, _ = torus_conjugation_identity(alpha, beta, 1.0, 2.0, 3)
        unchanged = np.eye(3, dtype=complex)
        unchanged[1, 2] = 1.0
        assert relative_gap(lhs, unchanged @ np.diag([0.5, 2.0, 1.0])) > 1e-3

    def test_rejects_non_positive_a(self):
        with pytest.raises(ValueError):
            torus_conjugation_identity(simple_root(1), simple_root(2), 1.0, -1.0, 3)


class TestCommutatorExchange:
    """交换恒等式测试类"""

    @pytest.mark.parametrize("n", [3, 4])
    def test_adjacent_simple_roots(self, sampler, n):
        for _ in range(20):
            u1, u2 = sampler.complex_disk(), sampler.complex_disk()
            for i in range(1, n - 1):
                for alpha, beta in ((simple_root(i), simple_root(i + 1)),
                                    (simple_root(i + 1), simple_root(i))):
                    lhs, rhs = commutator_exchange_identity(alpha, beta, u1, u2, n)
                    assert relative_gap(lhs, rhs) <= 1e-10

    def test_orthogonal_roots_commute(self):
        lhs, rhs = commutator_exchange_identity(simple_root(1), simple_root(3), 2.0, 3j, 4)
        np.testing.assert_allclose(lhs, rhs, atol=1e-14)


class TestReflectionConjugation:
    """单反射共轭恒等式测试类"""

    @pytest.mark.parametrize("n", [3, 4])
    def test_all_roots(self, sampler, n):
        roots = positive_roots(n)
        all_roots = roots + [root.negate() for root in roots]
        for _ in range(20):
            u = sampler.complex_disk()
            for i in range(1, n):
                for alpha in all_roots:
                    lhs, rhs = reflection_conjugation_identity(i, alpha, u, n)
                    assert relative_gap(lhs, rhs) <= 1e-10

    def test_simple_root_flips_sign(self):
        lhs, _ = reflection_conjugation_identity(1, simple_root(1), 1.0, 3)
        # a = 2^{−1/2}，s₁.γ₁ = −γ₁
        np.testing.assert_allclose(np.diag(lhs), [2 ** -0.5, 2 ** 0.5, 1.0], atol=1e-14)
        _, rhs = reflection_conjugation_identity(1, Root(2, 1), 1.0, 3)
        np.testing.assert_allclose(np.diag(rhs), [2 ** 0.5, 2 ** -0.5, 1.0], atol=1e-14)
