"""Tests for constructions and the exact capacity search."""

import random

import pytest

from sephash.hypergraph import find_rainbow_cycle, is_linear_hypergraph, matrix_to_hypergraph
from sephash.matrix import Matrix
from sephash.search import (
    CapacityResult,
    cyclic_overlap_matrix,
    exact_capacity,
    identity_construction,
    rainbow_free_extremal_search,
    random_shf_alteration,
    reed_solomon_frameproof,
)
from sephash.verification import PreconditionError, find_violation, is_linear_shf

from helpers import naive_is_separating


class TestIdentityConstruction:
    def test_four_rows(self):
        m = identity_construction(4, 3)
        assert m.entries == (
            (1, 0, 0, 0),
            (0, 1, 0, 0),
            (0, 0, 1, 0),
            (0, 0, 0, 1),
        )
        assert find_violation(m, [1, 3]) is None

    def test_two_rows(self):
        m = identity_construction(2, 1)
        assert find_violation(m, [1, 1]) is None

    def test_rejects_oversized_w(self):
        with pytest.raises(PreconditionError):
            identity_construction(3, 3)


class TestReedSolomon:
    def test_3_3_2(self):
        m = reed_solomon_frameproof(3, 3, 2)
        assert (m.rows, m.cols, m.q) == (3, 9, 3)
        assert find_violation(m, [1, 2]) is None

    def test_size_law(self):
        for q, n_rows, w in ((3, 3, 2), (5, 4, 2), (5, 5, 4), (7, 3, 3)):
            k = -(-n_rows // w)
            assert reed_solomon_frameproof(q, n_rows, w).cols == q**k

    def test_agreement_below_degree(self):
        m = reed_solomon_frameproof(5, 5, 4)
        cols = m.columns()
        for i in range(len(cols)):
            for j in range(i + 1, len(cols)):
                agree = sum(1 for a, b in zip(cols[i], cols[j]) if a == b)
                assert agree <= 1  # k = 2: distinct polynomials of degree < 2

    def test_constant_columns_when_w_covers(self):
        m = reed_solomon_frameproof(5, 3, 4)
        assert m.cols == 5
        assert all(len(set(col)) == 1 for col in m.columns())

    def test_rejects_composite(self):
        with pytest.raises(PreconditionError, match="prime"):
            reed_solomon_frameproof(4, 3, 2)

    def test_rejects_long_code(self):
        with pytest.raises(PreconditionError):
            reed_solomon_frameproof(3, 4, 2)


class TestCyclicOverlap:
    def test_shape_and_linearity(self):
        m = cyclic_overlap_matrix(4, 3)
        assert (m.rows, m.cols) == (4, 4)
        assert is_linear_shf(m)

    def test_adjacent_columns_agree_once(self):
        m = cyclic_overlap_matrix(6, 5)
        cols = m.columns()
        k = 6
        for i in range(k):
            j = (i + 1) % k
            agree = sum(1 for a, b in zip(cols[i], cols[j]) if a == b)
            assert agree == 1

    def test_needs_room_for_fillers(self):
        with pytest.raises(ValueError):
            cyclic_overlap_matrix(4, 2)


class TestExactCapacity:
    def test_all_columns_for_two_singletons(self):
        r = exact_capacity(2, 2, [1, 1])
        assert r.value == 4 and r.exact

    def test_single_row_ternary(self):
        r = exact_capacity(1, 3, [1, 2])
        assert r.value == 3 and r.exact

    def test_binary_two_frameproof_length3(self):
        # The even-weight code achieves 4; nothing achieves 5.
        r = exact_capacity(3, 2, [1, 2])
        assert r.value == 4 and r.exact
        assert naive_is_separating(r.witness, [1, 2])

    def test_witness_verified_and_sized(self):
        r = exact_capacity(2, 3, [1, 1])
        assert r.value == 9
        assert r.witness.cols == 9
        assert find_violation(r.witness, [1, 1]) is None

    def test_vacuous_regime_duplicates(self):
        # Only q**N = 2 distinct columns, but u-1 = 3 duplicates still count.
        r = exact_capacity(1, 2, [2, 2])
        assert r.value == 3
        assert r.witness.cols == 3

    def test_budget_flag(self):
        r = exact_capacity(2, 3, [1, 1], node_budget=3)
        assert not r.exact
        assert find_violation(r.witness, [1, 1]) is None

    def test_monotone_in_rows_and_alphabet(self):
        grid = {}
        for n_rows in (1, 2, 3):
            for q in (2, 3):
                grid[(n_rows, q)] = exact_capacity(n_rows, q, [1, 2]).value
        for (n_rows, q), val in grid.items():
            if (n_rows + 1, q) in grid:
                assert grid[(n_rows + 1, q)] >= val
            if (n_rows, q + 1) in grid:
                assert grid[(n_rows, q + 1)] >= val

    def test_matches_naive_maximum_tiny(self):
        # Cross-check the canonical search against unreduced subset search.
        from itertools import combinations, product

        n_rows, q, weights = 2, 2, [1, 1]
        cols = list(product(range(q), repeat=n_rows))
        best = 0
        for size in range(1, len(cols) + 1):
            for sub in combinations(cols, size):
                m = Matrix(tuple(zip(*sub)), q)
                if naive_is_separating(m, weights):
                    best = max(best, size)
        assert exact_capacity(n_rows, q, weights).value == best

    def test_rejects_oversized_space(self):
        with pytest.raises(ValueError, match="too large"):
            exact_capacity(10, 10, [1, 1])

    def test_json_shape(self):
        d = exact_capacity(1, 2, [1, 1]).as_json_dict()
        assert set(d) == {
            "N",
            "q",
            "weights",
            "value",
            "exact",
            "nodes",
            "elapsed_seconds",
            "witness",
        }


class TestAlteration:
    def test_distinct_columns_survive_pairs(self):
        m = random_shf_alteration(3, 4, [1, 1], seed=0)
        assert len(set(m.columns())) == m.cols
        assert find_violation(m, [1, 1]) is None

    def test_seed_determinism(self):
        a = random_shf_alteration(4, 3, [2, 2], seed=1)
        b = random_shf_alteration(4, 3, [2, 2], seed=1)
        assert a == b
        assert find_violation(a, [2, 2]) is None

    def test_different_seeds_allowed_to_differ(self):
        outs = {random_shf_alteration(3, 3, [1, 1], seed=s).cols for s in range(4)}
        assert all(isinstance(c, int) for c in outs)

    def test_trials_keep_best(self):
        single = random_shf_alteration(4, 4, [2, 2], seed=7, trials=1)
        multi = random_shf_alteration(4, 4, [2, 2], seed=7, trials=4)
        assert multi.cols >= single.cols

    def test_rejects_too_few_symbols(self):
        with pytest.raises(PreconditionError):
            random_shf_alteration(2, 1, [1, 2], seed=0)


class TestRainbowFreeSearch:
    def test_triangle_free_max(self):
        r = rainbow_free_extremal_search(3, 2, [3])
        assert r.certified
        assert r.edge_count == 2  # matching is optimal at q = 2

    def test_four_parts(self):
        r = rainbow_free_extremal_search(4, 2, [3, 4])
        assert r.certified
        assert r.edge_count == 2

    def test_at_least_matching(self):
        for parts, q in ((3, 3), (4, 3)):
            r = rainbow_free_extremal_search(parts, q, [3], node_budget=20_000)
            assert r.edge_count >= q

    def test_result_recertified(self):
        r = rainbow_free_extremal_search(4, 3, [3, 4], node_budget=20_000)
        assert is_linear_hypergraph(r.hypergraph)
        if r.edge_count >= 3:
            for k in (3, 4):
                assert find_rainbow_cycle(r.hypergraph, k) is None

    def test_budget_flag(self):
        r = rainbow_free_extremal_search(4, 3, [3], node_budget=5)
        assert not r.certified
        assert r.edge_count >= 3  # seeded matching survives

    def test_rejects_large_instances(self):
        with pytest.raises(ValueError):
            rainbow_free_extremal_search(7, 2, [3])

    def test_rejects_bad_lengths(self):
        with pytest.raises(ValueError):
            rainbow_free_extremal_search(4, 2, [2])


class TestCapacityLaws:
    def test_two_singletons_fill_the_cube(self):
        # C(N, q, {1,1}) = q**N whenever distinct columns exist.
        for n_rows, q in ((1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (1, 5), (2, 9)):
            assert exact_capacity(n_rows, q, [1, 1]).value == q**n_rows
