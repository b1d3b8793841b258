"""
Tests for FastDrSub+: the threshold schedule, candidate dominance, disjointness
of x and y, the acceptance trace and the ratio certificate.
"""

import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from drsub.core.errors import InvalidParameterError
from drsub.core.lattice import LatticeVector, ProblemInstance
from drsub.objectives.synthetic import ModularObjective, random_concave_quadratic
from drsub.oracle.counting import CallableObjective, with_counting
from drsub.solvers.bounds import OPTIMAL_ALPHA, fast_dr_sub_plus_ratio, threshold_rounds
from drsub.solvers.fast_dr_sub import fast_dr_sub
from drsub.solvers.fast_dr_sub_plus import fast_dr_sub_plus

EPSILON = 0.1

# fast_dr_sub_plus never exceeds C2 * (n / eps) * ln(4 / eps) * ceil(log2(k + 1)) queries
C2 = 10


class TestHandTrace:

    def test_single_element_modular(self):
        f = ModularObjective([1.0])
        report = fast_dr_sub_plus(f, ProblemInstance.uniform(1, 3), alpha=0.5, epsilon=EPSILON, record_trace=True)
        assert report.gamma == 78.0
        assert report.value == 3.0
        assert report.s == LatticeVector.unit(0, 3)
        assert report.chosen == "s_prime"
        assert report.rounds == threshold_rounds(EPSILON) == 36

        first = report.acceptance_trace[0]
        assert first.round == 18
        assert first.units == 3
        assert first.theta == pytest.approx(6.5 * 0.9 ** 18)
        assert first.theta < 1.0 <= first.theta / 0.9
        assert len(report.acceptance_trace) == 1

        values = {c.label: c.value for c in report.candidates}
        assert values == {"s_prime": 3.0, "x": 3.0, "y": 0.0, "z": 3.0}

    def test_zero_objective_skips_loop(self):
        f = with_counting(CallableObjective(lambda x: 0.0))
        report = fast_dr_sub_plus(f, ProblemInstance.uniform(3, 4), alpha=0.5)
        assert report.gamma == 0.0
        assert report.rounds == 0
        assert report.value == 0.0
        assert report.chosen == "s_prime"
        assert report.query_count == report.seed_output.query_count + 1

    def test_zero_budget(self):
        report = fast_dr_sub_plus(ModularObjective([1.0]), ProblemInstance(n=1, k=0))
        assert report.s.is_zero()
        assert report.rounds == 0

    @pytest.mark.parametrize("epsilon", [0.0, 1.0, -0.1])
    def test_invalid_epsilon(self, epsilon):
        with pytest.raises(InvalidParameterError):
            fast_dr_sub_plus(ModularObjective([1.0]), ProblemInstance.uniform(1, 3), epsilon=epsilon)


class TestThresholdSchedule:

    def test_round_count(self):
        assert threshold_rounds(0.1) == 36
        assert fast_dr_sub_plus_ratio(0.1) == pytest.approx(0.15)

    def test_rounds_match_schedule(self, solved_micro_suite):
        for instance, objective, _ in solved_micro_suite[:30]:
            report = fast_dr_sub_plus(objective, instance, alpha=OPTIMAL_ALPHA, epsilon=EPSILON)
            if report.gamma > 0:
                assert report.rounds == threshold_rounds(EPSILON)


class TestApproximation:

    def test_ratio_certificate(self, solved_micro_suite):
        for instance, objective, opt in solved_micro_suite:
            report = fast_dr_sub_plus(objective, instance, alpha=OPTIMAL_ALPHA, epsilon=EPSILON)
            assert report.value >= 0.15 * opt - 1e-12, (instance, opt, report.value)

    def test_dominates_fast_dr_sub(self, solved_micro_suite):
        for instance, objective, _ in solved_micro_suite:
            plain = fast_dr_sub(objective, instance, alpha=OPTIMAL_ALPHA)
            report = fast_dr_sub_plus(objective, instance, alpha=OPTIMAL_ALPHA, epsilon=EPSILON)
            assert report.value >= plain.value
            assert report.seed_output.value == plain.value

    def test_candidates_feasible_and_disjoint(self, solved_micro_suite):
        for instance, objective, _ in solved_micro_suite:
            report = fast_dr_sub_plus(objective, instance, epsilon=EPSILON)
            if report.gamma > 0:
                vectors = {c.label: c.vector for c in report.candidates}
                assert vectors["x"].meet(vectors["y"]).is_zero()
            for candidate in report.candidates:
                assert instance.is_feasible(candidate.vector)
                assert candidate.value == objective.evaluate(candidate.vector)
            assert report.value == max(c.value for c in report.candidates)

    def test_bounded_coordinates(self):
        instance = ProblemInstance(n=4, k=6, bounds=(1, 2, 3, 6))
        for seed in range(20):
            f = random_concave_quadratic(instance, seed=seed)
            report = fast_dr_sub_plus(f, instance, alpha=0.5)
            for candidate in report.candidates:
                assert instance.is_feasible(candidate.vector)

    def test_bounds_below_singleton_range(self):
        instance = ProblemInstance(n=3, k=4, bounds=(2, 2, 2))
        f = ModularObjective([1.0, 2.0, 3.0])
        report = fast_dr_sub_plus(f, instance, alpha=0.5)
        assert "singleton" not in [c.label for c in report.seed_output.candidates]
        assert instance.is_feasible(report.s)
        assert report.value == 10.0


class TestAcceptanceTrace:

    def test_every_accepted_chunk_cleared_its_threshold(self, solved_micro_suite):
        accepted = 0
        for instance, objective, _ in solved_micro_suite[:80]:
            report = fast_dr_sub_plus(objective, instance, epsilon=EPSILON, record_trace=True)
            for record in report.acceptance_trace:
                accepted += 1
                top = objective.evaluate(record.base.add_units(record.element, record.units))
                below = objective.evaluate(record.base.add_units(record.element, record.units - 1))
                assert top - below >= record.theta
                assert record.base.norm1 + record.units <= instance.k
        assert accepted > 0

    def test_trace_off_by_default(self):
        report = fast_dr_sub_plus(ModularObjective([1.0, 2.0]), ProblemInstance.uniform(2, 3))
        assert report.acceptance_trace is None


class TestQueries:

    def test_counter_matches_report(self):
        instance = ProblemInstance.uniform(5, 8)
        oracle = with_counting(random_concave_quadratic(instance, seed=2))
        report = fast_dr_sub_plus(oracle, instance)
        assert report.query_count == oracle.query_count

    @pytest.mark.parametrize("epsilon", [0.05, 0.1, 0.3])
    def test_query_bound(self, solved_micro_suite, epsilon):
        for instance, objective, _ in solved_micro_suite[:50]:
            report = fast_dr_sub_plus(objective, instance, epsilon=epsilon)
            scale = (instance.n / epsilon) * math.log(4 / epsilon) * math.ceil(math.log2(instance.k + 1))
            assert report.query_count <= C2 * scale

    def _normalized_queries(self, n, budgets):
        ratios = []
        for k in budgets:
            instance = ProblemInstance.uniform(n, k)
            f = random_concave_quadratic(instance, terms=3, seed=k)
            report = fast_dr_sub_plus(f, instance, epsilon=EPSILON)
            scale = (n / EPSILON) * math.log(4 / EPSILON) * math.ceil(math.log2(k + 1))
            ratios.append(report.query_count / scale)
        return ratios

    def test_query_scaling_band(self):
        ratios = self._normalized_queries(200, [16, 32, 64, 128, 256])
        assert max(ratios) <= 4 * min(ratios)
        assert max(ratios) <= C2

    @pytest.mark.slow
    def test_query_scaling_band_full(self):
        ratios = self._normalized_queries(1000, [16, 32, 64, 128, 256, 512, 1024])
        assert max(ratios) <= 4 * min(ratios)

    def test_deterministic(self):
        instance = ProblemInstance.uniform(20, 10)
        f = random_concave_quadratic(instance, terms=3, seed=5)
        a = fast_dr_sub_plus(f, instance, record_trace=True)
        b = fast_dr_sub_plus(f, instance, record_trace=True)
        assert a.s == b.s
        assert a.query_count == b.query_count
        assert [(r.element, r.units) for r in a.acceptance_trace] == [
            (r.element, r.units) for r in b.acceptance_trace
        ]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
