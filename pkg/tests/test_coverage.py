"""Tuple universe and coverage-table tests."""

import itertools
import math
import random

import pytest

from beecover import (SpecSemanticError, TestCase, build_universe,
                      coverage_weight, enumerate_combinations, mark_covered,
                      parse_spec, tuple_assignment, tuple_index)
from beecover.coverage import ColumnCombination


class TestEnumerateCombinations:
    def test_pairs_of_four(self):
        combos = enumerate_combinations(4, 2)
        assert [c.columns for c in combos] == [
            (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

    def test_full_strength(self):
        combos = enumerate_combinations(7, 7)
        assert len(combos) == 1
        assert combos[0].columns == tuple(range(7))

    def test_count_12_choose_2(self):
        assert len(enumerate_combinations(12, 2)) == 66

    def test_strength_above_parameters(self):
        with pytest.raises(SpecSemanticError):
            enumerate_combinations(4, 5)


class TestBuildUniverse:
    def test_pairwise_ternary_total(self):
        u = build_universe(*parse_spec("CA(N;2,3^4)"))
        assert u.total == 54
        assert u.uncovered_total == 54

    def test_mixed_total(self):
        u = build_universe(*parse_spec("MCA(N;2,3^1 2^2)"))
        assert u.total == 3 * 2 + 3 * 2 + 2 * 2

    def test_vsca_total(self):
        u = build_universe(*parse_spec("VSCA(N;2,3^4,{CA(3,3^3)})"))
        assert u.total == 54 + 27

    def test_duplicate_column_sets_stored_once(self):
        # a sub at main strength over columns already covered adds nothing
        u = build_universe(*parse_spec("VSCA(N;2,3^4,{CA(2,3^2)})"))
        assert len(u.combinations) == 6
        assert u.total == 54

    def test_closed_form_totals_random_specs(self):
        rng = random.Random(2024)
        for _ in range(100):
            p = rng.randint(2, 7)
            cards = [rng.randint(2, 4) for _ in range(p)]
            t = rng.randint(2, min(3, p))
            params = " ".join(f"{v}^1" for v in cards)
            system, spec = parse_spec(f"MCA(N;{t},{params})")
            u = build_universe(system, spec)
            expected = sum(
                math.prod(cards[j] for j in cols)
                for cols in itertools.combinations(range(p), t))
            assert u.total == expected


class TestCoverageWeight:
    def test_fresh_universe_row_covers_one_per_pair(self):
        u = build_universe(*parse_spec("CA(N;2,3^4)"))
        assert coverage_weight(TestCase((0, 1, 2, 0)), u) == 6

    def test_fully_covered_universe(self):
        u = build_universe(*parse_spec("CA(N;2,3^4)"))
        for row in itertools.product(range(3), repeat=4):
            mark_covered(TestCase(row), u)
        assert u.uncovered_total == 0
        assert coverage_weight(TestCase((1, 1, 1, 1)), u) == 0

    def test_read_only(self):
        u = build_universe(*parse_spec("CA(N;2,3^4)"))
        coverage_weight(TestCase((0, 0, 0, 0)), u)
        assert u.uncovered_total == 54


class TestMarkCovered:
    def test_idempotent(self):
        u = build_universe(*parse_spec("CA(N;2,3^4)"))
        tc = TestCase((0, 0, 0, 0))
        assert mark_covered(tc, u) == 6
        assert mark_covered(tc, u) == 0
        assert u.uncovered_total == 48

    def test_disjoint_rows(self):
        u = build_universe(*parse_spec("CA(N;2,3^4)"))
        assert mark_covered(TestCase((0, 0, 0, 0)), u) == 6
        assert mark_covered(TestCase((1, 1, 1, 1)), u) == 6

    def test_orthogonal_array_completes(self, oa9):
        u = build_universe(*parse_spec("CA(N;2,3^4)"))
        marked = sum(mark_covered(TestCase(row), u) for row in oa9)
        assert marked == 54
        assert u.uncovered_total == 0

    def test_conservation(self):
        rng = random.Random(31)
        u = build_universe(*parse_spec("MCA(N;2,4^2 3^2 2^1)"))
        total_marked = 0
        for _ in range(40):
            row = tuple(rng.randrange(v) for v in u.system.cardinalities)
            total_marked += mark_covered(TestCase(row), u)
            assert u.uncovered_total + total_marked == u.total


class TestTupleIndex:
    def test_first_and_last(self):
        system, _ = parse_spec("CA(N;2,3^4)")
        comb = ColumnCombination(columns=(0, 1))
        assert tuple_index(comb, (0, 0), system) == 0
        assert tuple_index(comb, (2, 2), system) == 8

    def test_mixed_radix(self):
        system, _ = parse_spec("MCA(N;2,3^1 4^1 2^1)")
        comb = ColumnCombination(columns=(0, 2))
        assert tuple_index(comb, (1, 1), system) == 3  # 1*2 + 1

    def test_out_of_range_value(self):
        system, _ = parse_spec("CA(N;2,3^4)")
        with pytest.raises(ValueError):
            tuple_index(ColumnCombination(columns=(0, 1)), (0, 3), system)

    def test_bijection(self):
        for text in ["CA(N;2,3^4)", "MCA(N;3,4^2 3^2 2^2)", "CA(N;2,10^2)"]:
            system, spec = parse_spec(text)
            u = build_universe(system, spec)
            for comb in u.combinations:
                size = math.prod(system.cardinalities[j] for j in comb.columns)
                assert size <= 10_000
                for idx in range(size):
                    vals = tuple_assignment(comb, idx, system)
                    assert tuple_index(comb, vals, system) == idx
