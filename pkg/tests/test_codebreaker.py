import math
import random

import numpy as np
import pytest

from distmind.codebreaker import (
    OracleInconsistencyError,
    choose_strategy,
    plan_l2,
    plan_linf,
    plan_naive,
    plan_separable,
    run_strategy,
    solve_l2_direct,
    solve_linf,
    solve_naive_basis,
    solve_separable,
)
from distmind.codemaker import HiddenVector, make_honest_oracle, wrap_counting
from distmind.detecting import RadixProfile, construct, plan_size
from distmind.measures import CHEBYSHEV, build_odd_profile, eval_distance, make_measure, parse_measure


def honest(y, k, measure):
    return make_honest_oracle(HiddenVector.from_values(y, k), measure)


def random_vector(rng, n, k):
    return [rng.randint(-k, k) for _ in range(n)]


class TestSolveSeparable:
    def test_exhaustive_lp15(self):
        m = make_measure("lp", p=1.5)
        for y0 in (-1, 0, 1):
            for y1 in (-1, 0, 1):
                result = solve_separable(m, 2, 1, honest([y0, y1], 1, m))
                assert result.recovered == (y0, y1)

    def test_zero_vector_symmetry(self):
        m = make_measure("lp", p=3)
        oracle, transcript = wrap_counting(honest([0, 0, 0], 2, m))
        result = solve_separable(m, 3, 2, oracle)
        assert result.recovered == (0, 0, 0)
        # centering answers coincide when y = 0
        roles = plan_separable(3, 2, construct(RadixProfile((6,) * 3))).roles
        plus = transcript.entries[roles.index("all-plus")].answer
        minus = transcript.entries[roles.index("all-minus")].answer
        assert plus == minus

    def test_n64_budget_and_recovery(self):
        m = make_measure("lp", p=2)
        rng = random.Random(42)
        profile = build_odd_profile(m, 4)
        s = 1 << plan_size(RadixProfile(profile.radices(64)))
        for _ in range(5):
            y = random_vector(rng, 64, 4)
            oracle, transcript = wrap_counting(honest(y, 4, m))
            result = solve_separable(m, 64, 4, oracle)
            assert result.recovered == tuple(y)
            assert result.queries_used == s + 2 == transcript.count

    def test_power_restoration_consistency(self):
        # reported lp answers are p-th roots: report^p recovers the sum
        rng = random.Random(3)
        for p in (1.5, 2.0, 3.0, 4.0):
            m = make_measure("lp", p=p)
            u = random_vector(rng, 10, 5)
            report = eval_distance(m, u)
            total = sum(abs(v) ** p for v in u)
            assert abs(report**p - total) <= 1e-9 * max(1.0, total)

    def test_l1_identity_diagnostic(self):
        m = make_measure("lp", p=1)
        rng = random.Random(9)
        y = random_vector(rng, 12, 3)
        result = solve_separable(m, 12, 3, honest(y, 3, m), check_l1_identity=True)
        assert result.recovered == tuple(y)

    def test_matrix_mismatch_rejected(self):
        m = make_measure("lp", p=2)
        wrong = construct(RadixProfile((3, 3)))
        with pytest.raises(ValueError):
            solve_separable(m, 2, 2, honest([0, 0], 2, m), matrix=wrong)

    def test_supplied_matrix_used(self):
        m = make_measure("lp", p=2)
        profile = build_odd_profile(m, 2)
        matrix = construct(RadixProfile(profile.radices(3)))
        y = [2, -1, 0]
        result = solve_separable(m, 3, 2, honest(y, 2, m), matrix=matrix)
        assert result.recovered == tuple(y)

    def test_smoothmax_wide_digits_fall_back(self):
        # n * log2(radix) beyond the double-precision digit budget: the
        # matrix path is refused and the basis strategy answers instead
        m = make_measure("smoothmax")
        n, k = 120, 27
        profile = build_odd_profile(m, k)
        assert n * math.log2(profile.radix) > 4096
        assert choose_strategy(m, n, k) == "naive"
        rng = random.Random(1)
        y = random_vector(rng, n, k)
        result = solve_separable(m, n, k, honest(y, k, m))
        assert result.strategy == "naive"
        assert result.recovered == tuple(y)
        assert result.queries_used == n + 2


class TestSolveNaive:
    def test_exhaustive_huber(self):
        m = make_measure("huber", tau=1.0)
        for y0 in range(-2, 3):
            for y1 in range(-2, 3):
                result = solve_naive_basis(m, 2, 2, honest([y0, y1], 2, m))
                assert result.recovered == (y0, y1)
                assert result.queries_used == 4

    def test_smoothmax_random(self):
        m = make_measure("smoothmax")
        rng = random.Random(17)
        for _ in range(100):
            y = random_vector(rng, 5, 10)
            result = solve_naive_basis(m, 5, 10, honest(y, 10, m))
            assert result.recovered == tuple(y)
            assert result.queries_used == 7


class TestSolveL2:
    def test_worked_example(self):
        # k=3, y=(2,-1): query e_1 answers sqrt(2); the inner-product
        # identity gives (1 + 5 - 2)/2 = 2 = y_1
        m = make_measure("lp", p=2)
        oracle = honest([2, -1], 3, m)
        assert oracle([1, 0]) == pytest.approx(math.sqrt(2.0))
        result = solve_l2_direct(2, 3, oracle)
        assert result.recovered == (2, -1)
        assert result.queries_used == 3

    def test_zero_vector_uses_full_budget(self):
        m = make_measure("lp", p=2)
        oracle, transcript = wrap_counting(honest([0] * 6, 2, m))
        result = solve_l2_direct(6, 2, oracle)
        assert result.recovered == (0,) * 6
        assert transcript.count == 7  # no early exit on the zero answer

    def test_matrix_mode(self):
        m = make_measure("lp", p=2)
        rng = random.Random(5)
        for _ in range(20):
            y = random_vector(rng, 12, 1)
            result = solve_l2_direct(12, 1, honest(y, 1, m), mode="matrix")
            assert result.recovered == tuple(y)
            assert result.strategy == "l2-matrix"

    def test_auto_prefers_matrix_when_smaller(self):
        m = make_measure("lp", p=2)
        n, k = 100, 1
        s = 1 << plan_size(RadixProfile((2 * k + 1,) * n))
        assert s < n
        rng = random.Random(6)
        y = random_vector(rng, n, k)
        result = solve_l2_direct(n, k, honest(y, k, m), mode="auto")
        assert result.strategy == "l2-matrix"
        assert result.recovered == tuple(y)
        assert result.queries_used == s + 1

    def test_inconsistent_oracle_detected(self):
        with pytest.raises(OracleInconsistencyError):
            solve_l2_direct(2, 2, lambda q: 0.3)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            solve_l2_direct(2, 2, lambda q: 0.0, mode="nope")


class TestSolveLinf:
    def test_worked_example(self):
        oracle = honest([2, -1], 3, CHEBYSHEV)
        assert oracle([-3, 0]) == 5.0  # minus query on coordinate 1
        result = solve_linf(2, 3, oracle)
        assert result.recovered == (2, -1)
        assert result.queries_used == 4

    def test_zero_coordinate_answers_k(self):
        oracle = honest([0, 2], 2, CHEBYSHEV)
        assert oracle([2, 0]) == 2.0
        assert oracle([-2, 0]) == 2.0
        assert solve_linf(2, 2, oracle).recovered == (0, 2)

    def test_exhaustive_small(self):
        for y0 in range(-2, 3):
            for y1 in range(-2, 3):
                result = solve_linf(2, 2, honest([y0, y1], 2, CHEBYSHEV))
                assert result.recovered == (y0, y1)

    def test_inconsistent_oracle_detected(self):
        with pytest.raises(OracleInconsistencyError):
            solve_linf(1, 2, lambda q: 5.0)


class TestNonadaptivity:
    def test_plans_need_no_oracle(self):
        # planning functions run to completion with no oracle in sight
        matrix = construct(RadixProfile((5,) * 4))
        plans = [
            plan_separable(4, 2, matrix),
            plan_naive(4, 2),
            plan_l2(4, 2),
            plan_linf(4, 2),
        ]
        assert all(len(p.queries) == len(p.roles) for p in plans)

    @pytest.mark.parametrize("solver,budget", [
        ("separable", None), ("naive", 6), ("l2", 5), ("linf", 8)])
    def test_issued_queries_match_plan(self, solver, budget):
        m = make_measure("lp", p=2) if solver != "linf" else CHEBYSHEV
        y = [1, -2, 0, 2]
        oracle, transcript = wrap_counting(honest(y, 2, m))
        if solver == "separable":
            measure = make_measure("lp", p=2)
            matrix = construct(RadixProfile(build_odd_profile(measure, 2).radices(4)))
            plan = plan_separable(4, 2, matrix)
            solve_separable(measure, 4, 2, oracle)
        elif solver == "naive":
            plan = plan_naive(4, 2)
            solve_naive_basis(make_measure("lp", p=2), 4, 2, oracle)
        elif solver == "l2":
            plan = plan_l2(4, 2)
            solve_l2_direct(4, 2, oracle)
        else:
            plan = plan_linf(4, 2)
            solve_linf(4, 2, oracle)
        issued = tuple(e.query for e in transcript.entries)
        assert issued == plan.queries
        if budget is not None:
            assert transcript.count == budget

    def test_query_plan_validates_alphabet(self):
        from distmind.codebreaker import QueryPlan

        with pytest.raises(ValueError):
            QueryPlan(n=2, k=1, queries=((2, 0),), roles=("basis",))


class TestChooseStrategy:
    def test_small_n_large_k_prefers_naive(self):
        assert choose_strategy(make_measure("lp", p=2), 8, 64) == "naive"

    def test_large_n_small_k_prefers_matrix(self):
        assert choose_strategy(make_measure("lp", p=2), 1024, 2) == "separable"

    def test_single_coordinate_prefers_naive(self):
        assert choose_strategy(make_measure("lp", p=2), 1, 4) == "naive"

    def test_run_strategy_dispatch(self):
        m = make_measure("lp", p=2)
        y = [1, -1]
        for label in ("auto", "separable", "naive", "l2"):
            result = run_strategy(m, 2, 1, honest(y, 1, m), label)
            assert result.recovered == (1, -1)
        result = run_strategy(None, 2, 1, honest(y, 1, CHEBYSHEV), "linf")
        assert result.recovered == (1, -1)
        with pytest.raises(ValueError):
            run_strategy(m, 2, 1, honest(y, 1, m), "nope")
