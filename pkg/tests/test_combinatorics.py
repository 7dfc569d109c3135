import itertools
import math

import pytest

from loopseries.combinatorics import (
    LEAF,
    all_compositions,
    bit_sequences,
    bit_sign,
    catalan,
    compositions,
    d_cache_rows,
    d_recurrence_check,
    is_m_sequence,
    lagrange_d,
    lagrange_d_labeled,
    m_sequences,
    m_sequences_labeled,
    prime_d_cache,
    tree_leaves,
    tree_of_msequence,
    tree_to_parens,
    weak_compositions,
)
from loopseries.errors import StructuralError


def brute_m_sequences(length):
    """Independent enumeration: filter all tuples with entries <= length."""
    out = []
    for t in itertools.product(range(length + 1), repeat=length):
        if sum(t) != length:
            continue
        if all(sum(t[:j]) >= j for j in range(1, length)):
            out.append(t)
    return out


def brute_d(ns):
    return sum(
        math.prod(math.comb(n + 1, m) for n, m in zip(ns, mseq))
        for mseq in brute_m_sequences(len(ns))
    ) if ns else 1


class TestCompositions:
    def test_display_values(self):
        assert compositions(3, 2) == [(2, 1), (1, 2)]
        assert compositions(3, 3) == [(1, 1, 1)]
        assert compositions(1, 1) == [(1,)]
        assert compositions(2, 2) == [(1, 1)]

    def test_count_is_binomial(self):
        for n in range(1, 13):
            for ell in range(1, n + 1):
                got = compositions(n, ell)
                assert len(got) == math.comb(n - 1, ell - 1)
                assert len(set(got)) == len(got)
                assert all(sum(c) == n and min(c) >= 1 for c in got)
        assert len(compositions(10, 4)) == 84

    def test_out_of_range(self):
        assert compositions(3, 4) == []
        assert compositions(3, 0) == []
        assert compositions(0, 1) == []

    def test_all_compositions(self):
        assert len(all_compositions(6)) == 2 ** 5

    def test_weak_compositions(self):
        assert list(weak_compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
        assert list(weak_compositions(0, 0)) == [()]
        assert len(list(weak_compositions(5, 3))) == math.comb(7, 2)


class TestMSequences:
    def test_display_values(self):
        assert m_sequences(2) == [(2, 0), (1, 1)]
        assert m_sequences(3) == [(3, 0, 0), (2, 1, 0), (2, 0, 1),
                                  (1, 2, 0), (1, 1, 1)]

    def test_counts_are_catalan(self):
        assert len(m_sequences(4)) == 14
        assert set(m_sequences(4)) == set(brute_m_sequences(4))
        for ell in range(1, 9):
            assert len(m_sequences(ell)) == catalan(ell)

    def test_length_zero_is_empty_set(self):
        assert m_sequences(0) == []
        assert lagrange_d(()) == 1

    def test_labeled_subsets(self):
        assert m_sequences_labeled(2, (1, 2)) == [(2, 0)]
        assert m_sequences_labeled(3, (1, 2, 1)) == [(3, 0, 0), (2, 0, 1)]
        assert m_sequences_labeled(3, (2, 1, 1)) == []
        assert m_sequences_labeled(3, (1, 1, 1)) == m_sequences(3)
        assert m_sequences_labeled(3, (1, 1, 2)) == [(3, 0, 0), (2, 1, 0),
                                                     (1, 2, 0)]

    def test_labeled_validation(self):
        with pytest.raises(StructuralError):
            m_sequences_labeled(3, (1, 2))
        with pytest.raises(StructuralError):
            m_sequences_labeled(2, (1, 3))


class TestLagrangeCoefficients:
    def test_reference_values(self):
        assert lagrange_d((2,)) == 3
        assert lagrange_d((1, 2)) == 7
        assert lagrange_d((2, 1)) == 9
        assert lagrange_d((1, 1, 1, 1)) == 42

    def test_all_ones_gives_catalan(self):
        assert [lagrange_d((1,) * ell) for ell in range(1, 6)] == \
            [2, 5, 14, 42, 132]

    def test_against_brute_force(self):
        for ns in itertools.chain.from_iterable(
                itertools.product(range(1, 4), repeat=ell)
                for ell in range(0, 5)):
            assert lagrange_d(ns) == brute_d(ns)

    def test_labeled_values(self):
        assert lagrange_d_labeled((1, 2), (1, 1)) == 1
        # d_3^(1,2,2) = binom(n_1 + 1, 3)
        for ns in itertools.product(range(1, 5), repeat=3):
            assert lagrange_d_labeled((1, 2, 2), ns) == math.comb(ns[0] + 1, 3)
        assert lagrange_d_labeled((1, 2, 2), (2, 1, 1)) == 1
        assert lagrange_d_labeled((2, 1), (5, 7)) == 0

    def test_labeled_bounds(self):
        for ell in range(1, 5):
            for ns in itertools.product(range(1, 4), repeat=ell):
                full = lagrange_d(ns)
                for e in bit_sequences(ell):
                    de = lagrange_d_labeled(e, ns)
                    assert 0 <= de <= full
                    if e == (1,) * ell:
                        assert de == full
                    if e[0] == 2:
                        assert de == 0

    def test_bit_sign(self):
        assert bit_sign((1, 1)) == 1
        assert bit_sign((1, 2)) == -1
        assert bit_sign((2, 2)) == 1
        assert bit_sign(()) == 1

    def test_positive_degree_validation(self):
        with pytest.raises(StructuralError):
            lagrange_d((0, 1))


class TestRecurrences:
    def test_alt_sign_example(self):
        # d_2(1,1) = -binom(2,2) + binom(3,1) d_1(1) = -1 + 6 = 5
        assert lagrange_d((1, 1)) == 5
        assert d_recurrence_check("alt-sign", (1, 1))

    def test_product_single_term(self):
        for n in range(1, 11):
            assert lagrange_d((n,)) == math.comb(n + 1, 1)
            assert d_recurrence_check("product", (n,))

    def test_shift_example(self):
        assert lagrange_d((1, 1, 1)) == 14
        assert d_recurrence_check("shift", (1, 1, 1))

    def test_all_variants_all_compositions(self):
        for n in range(1, 11):
            for comp in all_compositions(n):
                for variant in ("alt-sign", "product", "shift"):
                    assert d_recurrence_check(variant, comp), (variant, comp)

    def test_unknown_variant(self):
        with pytest.raises(StructuralError):
            d_recurrence_check("nope", (1,))


def enumerate_trees(leaves):
    if leaves == 1:
        return [LEAF]
    out = []
    for k in range(1, leaves):
        for left in enumerate_trees(k):
            for right in enumerate_trees(leaves - k):
                out.append((left, right))
    return out


class TestTreeBijection:
    def test_base_cases(self):
        assert tree_of_msequence(()) == LEAF
        assert tree_of_msequence((1,)) == (LEAF, LEAF)
        t20 = tree_of_msequence((2, 0))
        t11 = tree_of_msequence((1, 1))
        assert {t20, t11} == {((LEAF, LEAF), LEAF), (LEAF, (LEAF, LEAF))}
        assert t20 != t11

    @pytest.mark.parametrize("ell", range(1, 8))
    def test_bijection_onto_trees(self, ell):
        images = [tree_of_msequence(m) for m in m_sequences(ell)]
        assert len(set(images)) == len(images)
        assert all(tree_leaves(t) == ell + 1 for t in images)
        if ell <= 5:
            assert set(images) == set(enumerate_trees(ell + 1))
        else:
            assert len(images) == catalan(ell)

    def test_m3_gives_five_trees(self):
        assert len({tree_of_msequence(m) for m in m_sequences(3)}) == 5

    def test_m5_gives_42_trees(self):
        images = {tree_of_msequence(m) for m in m_sequences(5)}
        assert len(images) == 42
        assert images == set(enumerate_trees(6))

    def test_invalid_sequence(self):
        assert not is_m_sequence((0, 2))
        with pytest.raises(StructuralError):
            tree_of_msequence((0, 2))
        with pytest.raises(StructuralError):
            tree_of_msequence((1, 2))

    def test_parens(self):
        assert tree_to_parens(LEAF) == "."
        assert tree_to_parens((LEAF, LEAF)) == "(..)"


class TestCache:
    def test_round_trip(self):
        lagrange_d((3, 2, 1))
        rows = d_cache_rows()
        assert any(r[0] == "3,2,1" for r in rows)
        prime_d_cache(rows)  # idempotent

    def test_conflict_detected(self):
        lagrange_d((2,))
        with pytest.raises(StructuralError):
            prime_d_cache([("2", "999")])
