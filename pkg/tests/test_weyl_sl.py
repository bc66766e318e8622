"""
Weyl 群与根系模块单元测试
"""

import pytest
import numpy as np
from collections import deque
from fractions import Fraction
from itertools import permutations
from pathlib import Path
import sys

# 添加项目根目录到路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.linalg.matrix_core import Subgroup, coset_equal_GB, coset_equal_KT, is_member
from src.weyl.weyl_sl import (
    SIGMA,
    Permutation,
    Root,
    Word,
    coroot,
    inversion_set,
    is_reduced,
    length,
    longest_word,
    pairing_ratio,
    permutation_matrix,
    positive_roots,
    psi_embed,
    reflect_root,
    root_length_ratio,
    root_pairing_ratio,
    root_vector,
    simple_refl_rep,
    simple_root,
    torus_exp,
    torus_param,
    unipotent_param,
    word_rep,
    word_to_permutation,
)


def bfs_lengths(n):
    """在单反射生成的 Cayley 图上做 BFS，得到每个置换的最短字长（对照实现）"""
    start = tuple(range(1, n + 1))
    distances = {start: 0}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for i in range(1, n):
            images = list(current)
            # 右乘 s_i：交换位置 i 与 i+1 上的像
            images[i - 1], images[i] = images[i], images[i - 1]
            neighbor = tuple(images)
            if neighbor not in distances:
                distances[neighbor] = distances[current] + 1
                queue.append(neighbor)
    return distances


class TestWord:
    """Weyl 字测试类"""

    def test_parse(self):
        word = Word.parse("1,2,1", 3)
        assert word.letters == (1, 2, 1)
        assert len(word) == 3
        assert list(word) == [1, 2, 1]

    def test_letter_out_of_range(self):
        with pytest.raises(ValueError):
            Word(n=3, letters=(3,))

    def test_rank_too_small(self):
        with pytest.raises(ValueError):
            Word(n=1)

    def test_concatenation(self):
        assert (Word(4, (1, 2)) + Word(4, (3,))).letters == (1, 2, 3)
        with pytest.raises(ValueError):
            Word(3, (1,)) + Word(4, (1,))


class TestPermutations:
    """置换与长度测试类"""

    def test_empty_word(self):
        assert word_to_permutation(Word(3)) == Permutation.identity(3)

    def test_involution(self):
        assert word_to_permutation(Word(3, (1, 1))) == Permutation.identity(3)

    def test_longest_element_sl3(self):
        perm = word_to_permutation(Word(3, (1, 2, 1)))
        assert perm.images == (3, 2, 1)
        assert length(perm) == 3

    def test_inversion_set(self):
        perm = word_to_permutation(Word(3, (1, 2)))
        assert inversion_set(perm) == {(1, 3), (2, 3)}
        assert inversion_set(Permutation.identity(3)) == set()

    def test_is_reduced(self):
        assert is_reduced(Word(3, (1, 2, 1)))
        assert is_reduced(Word(4, (1, 3)))
        assert not is_reduced(Word(3, (1, 1)))
        assert not is_reduced(Word(3, (1, 2, 1, 2)))

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_longest_word(self, n):
        word = longest_word(n)
        assert len(word) == n * (n - 1) // 2
        assert is_reduced(word)
        assert word_to_permutation(word).images == tuple(range(n, 0, -1))

    def test_length_matches_bfs(self):
        distances = bfs_lengths(4)
        for images in permutations(range(1, 5)):
            assert length(Permutation(images)) == distances[images]

    @pytest.mark.parametrize("first, second", [((1, 2), (1,)), ((2, 1), (3, 2)), ((), (1, 3)), ((3,), ())])
    def test_concatenation_composes(self, first, second):
        w1, w2 = Word(4, first), Word(4, second)
        expected = word_to_permutation(w1).compose(word_to_permutation(w2))
        assert word_to_permutation(w1 + w2) == expected

    def test_compose_and_inverse(self):
        p = Permutation((2, 3, 1))
        assert p.compose(p.inverse()) == Permutation.identity(3)
        assert p.compose(Permutation.identity(3)) == p

    def test_permutation_matrix_support(self):
        word = Word(4, (1, 2, 3, 1))
        expected = permutation_matrix(word_to_permutation(word))
        np.testing.assert_allclose(np.abs(word_rep(word)), expected.real, atol=1e-15)


class TestRoots:
    """根系测试类"""

    def test_positive_roots(self):
        roots = positive_roots(4)
        assert len(roots) == 6
        assert all(root.is_positive for root in roots)

    def test_pairing_ratio_values(self):
        assert pairing_ratio(1, 1) == Fraction(1)
        assert pairing_ratio(1, 2) == Fraction(-1, 2)
        assert pairing_ratio(2, 1) == Fraction(-1, 2)
        assert pairing_ratio(1, 3) == Fraction(0)

    def test_pairing_ratio_range(self):
        with pytest.raises(ValueError):
            pairing_ratio(0, 1)
        with pytest.raises(ValueError):
            pairing_ratio(1, 3, n=3)

    def test_root_pairing_ratio_non_simple(self):
        assert root_pairing_ratio(Root(1, 3), simple_root(1)) == Fraction(1, 2)
        assert root_pairing_ratio(Root(1, 2), Root(2, 1)) == Fraction(-1)

    def test_root_length_ratio(self):
        # A 型所有根等长，反射保持长度
        for alpha in positive_roots(4):
            for i in range(1, 4):
                assert root_length_ratio(alpha, reflect_root(i, alpha)) == Fraction(1)
        assert root_length_ratio(Root(1, 2), Root(3, 1)) == Fraction(1)

    def test_reflect_root(self):
        assert reflect_root(1, simple_root(1)) == Root(2, 1)
        assert reflect_root(1, simple_root(2)) == Root(1, 3)
        assert reflect_root(1, Root(3, 4)) == Root(3, 4)

    def test_coroot_is_bracket(self):
        alpha = Root(1, 3)
        e, f = root_vector(alpha, 3), root_vector(alpha.negate(), 3)
        np.testing.assert_allclose(e @ f - f @ e, coroot(alpha, 3))

    def test_torus_exp(self):
        t = torus_exp(Root(1, 3), 2.0, -1.0, 3)
        np.testing.assert_allclose(np.diag(t), [0.5, 1.0, 2.0])
        with pytest.raises(ValueError):
            torus_exp(Root(1, 2), 0.0, 1.0, 2)


class TestEmbeddings:
    """SL(2) 嵌入与单参数子群测试类"""

    def test_psi_embed_block(self):
        m = np.array([[2, 1], [1, 1]])
        g = psi_embed(2, m, 4)
        np.testing.assert_allclose(g[1:3, 1:3], m)
        assert g[0, 0] == 1 and g[3, 3] == 1
        assert np.count_nonzero(g) == 6

    def test_psi_homomorphism(self, sampler):
        m1, m2 = sampler.su2(), sampler.su2()
        np.testing.assert_allclose(
            psi_embed(1, m1 @ m2, 3), psi_embed(1, m1, 3) @ psi_embed(1, m2, 3), atol=1e-14
        )

    def test_psi_rejects_bad_input(self):
        with pytest.raises(ValueError):
            psi_embed(1, 2 * np.eye(2), 3)
        with pytest.raises(ValueError):
            psi_embed(3, np.eye(2), 3)
        with pytest.raises(ValueError):
            psi_embed(1, np.eye(3), 3)

    def test_simple_reflection_square(self):
        s = simple_refl_rep(1, 3)
        np.testing.assert_allclose(s @ s, np.diag([-1, -1, 1]))
        np.testing.assert_allclose(s[0:2, 0:2], SIGMA)

    def test_unipotent_param(self):
        n_z = unipotent_param(2, 1 + 2j, 3)
        assert n_z[1, 2] == 1 + 2j
        np.testing.assert_allclose(np.diag(n_z), np.ones(3))

    def test_torus_param(self):
        np.testing.assert_allclose(np.diag(torus_param(1, 3.0, 3)), [3.0, 1 / 3.0, 1.0])

    def test_psi_preserves_diagonal(self):
        g = psi_embed(2, np.diag([2.0, 0.5]), 4)
        np.testing.assert_allclose(g, np.diag(np.diag(g)))
        assert is_member(psi_embed(1, np.diag([1j, -1j]), 3), Subgroup.T)

    def test_psi_maps_unipotent_into_n(self):
        for i in range(1, 4):
            g = psi_embed(i, np.array([[1, 0.3 - 2j], [0, 1]]), 4)
            assert is_member(g, Subgroup.N)


class TestRelations:
    """单反射代表元的辫关系与交换关系测试类"""

    def test_braid_relation(self):
        for i in (1, 2):
            lhs = word_rep(Word(4, (i, i + 1, i)))
            rhs = word_rep(Word(4, (i + 1, i, i + 1)))
            assert coset_equal_GB(lhs, rhs)
            assert coset_equal_KT(lhs, rhs)
            # 两者相差 T 中的元素
            diff = lhs.conj().T @ rhs
            np.testing.assert_allclose(diff, np.diag(np.diag(diff)), atol=1e-14)

    def test_commutation_relation(self):
        lhs = word_rep(Word(4, (1, 3)))
        rhs = word_rep(Word(4, (3, 1)))
        np.testing.assert_allclose(lhs, rhs, atol=1e-15)
        assert coset_equal_GB(lhs, rhs)
        assert coset_equal_KT(lhs, rhs)

    def test_distinct_reflections_differ(self):
        assert not coset_equal_KT(simple_refl_rep(1, 3), simple_refl_rep(2, 3))
        assert not coset_equal_GB(simple_refl_rep(1, 3), simple_refl_rep(2, 3))

    @pytest.mark.parametrize("n", [4, 5])
    def test_reduced_words_of_same_element(self, n):
        staircase = longest_word(n)
        reversed_word = Word(n, tuple(reversed(staircase.letters)))
        assert staircase.letters != reversed_word.letters
        assert is_reduced(reversed_word)
        assert word_to_permutation(staircase) == word_to_permutation(reversed_word)
        assert coset_equal_KT(word_rep(staircase), word_rep(reversed_word))
        assert coset_equal_GB(word_rep(staircase), word_rep(reversed_word))
