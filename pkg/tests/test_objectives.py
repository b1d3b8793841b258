"""
Tests for the revenue objective and the synthetic families, including the
structural checks the solvers depend on.
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from drsub.core.errors import InvalidParameterError
from drsub.core.lattice import LatticeVector, ProblemInstance
from drsub.objectives.revenue import RevenueInstance, build_revenue_instance, revenue_evaluate
from drsub.objectives.synthetic import (
    ModularObjective,
    SquareObjective,
    SyntheticConcaveQuadratic,
    random_concave_quadratic,
    synthetic_evaluate,
)
from drsub.oracle.properties import (
    check_cross_lemmas,
    check_dr_submodularity,
    check_lattice_submodularity,
    sample_vector,
)
from drsub.services.ingest import random_graph

U, V = 0, 1


def two_node_path(alpha: float = 0.5) -> RevenueInstance:
    return RevenueInstance(2, [(U, V, 1.0)], [alpha, alpha])


def random_revenue(n: int = 30, p: float = 0.15, seed: int = 3) -> RevenueInstance:
    graph = random_graph(n, p, seed=seed)
    return build_revenue_instance(graph.edges, seed=seed, node_count=graph.node_count)


class TestRevenueEvaluate:

    def test_zero_vector(self):
        assert revenue_evaluate(random_revenue(), LatticeVector.zero()) == 0.0

    def test_full_support_is_zero(self):
        inst = two_node_path()
        assert revenue_evaluate(inst, LatticeVector({U: 3, V: 1})) == 0.0

    def test_two_node_example(self):
        value = revenue_evaluate(two_node_path(0.5), LatticeVector.unit(U, 2))
        assert value == pytest.approx(0.881374, abs=1e-6)

    def test_matches_direct_formula(self):
        inst = random_revenue(12, 0.4, seed=1)
        rng = np.random.default_rng(0)
        instance = ProblemInstance.uniform(inst.n, 6)
        for _ in range(50):
            x = sample_vector(rng, instance, 6)
            expected = 0.0
            for u in range(inst.n):
                if u in x:
                    continue
                t = sum(w * x[v] for v, w in inst.neighbors(u))
                expected += math.log(1.0 + t ** inst.exponents[u])
            assert revenue_evaluate(inst, x) == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_non_negative_on_samples(self):
        inst = random_revenue()
        instance = ProblemInstance.uniform(inst.n, 8)
        rng = np.random.default_rng(11)
        for _ in range(300):
            assert revenue_evaluate(inst, sample_vector(rng, instance, 8)) >= 0.0

    def test_intensifying_support_never_hurts(self):
        # extra units on a support node leave the excluded set unchanged
        inst = random_revenue()
        instance = ProblemInstance.uniform(inst.n, 8)
        rng = np.random.default_rng(5)
        for _ in range(200):
            x = sample_vector(rng, instance, 7)
            for e in x:
                assert inst.evaluate(x.add_units(e, 1)) >= inst.evaluate(x)

    def test_non_monotone(self):
        inst = two_node_path()
        assert inst.evaluate(LatticeVector({U: 1, V: 1})) < inst.evaluate(LatticeVector.unit(U, 1))


class TestRevenueStructure:
    """The revenue objective is not DR-submodular in general; checks must say so."""

    def test_dr_witness_on_path(self):
        f = two_node_path()
        x = LatticeVector.unit(U, 1)
        y = LatticeVector({U: 1, V: 1})
        gain_x = f.evaluate(x.add_units(V, 1)) - f.evaluate(x)
        gain_y = f.evaluate(y.add_units(V, 1)) - f.evaluate(y)
        assert gain_x == pytest.approx(-math.log(2))
        assert gain_y == 0.0
        assert gain_x < gain_y

    def test_dr_checker_reports_witnesses(self):
        report = check_dr_submodularity(two_node_path(), ProblemInstance.uniform(2, 3), samples=500, seed=0)
        assert not report.passed
        assert report.max_violation_magnitude > 0.5
        assert {"x", "y", "e"} <= set(report.violations[0].witness)

    def test_repeated_units_witness_on_path(self):
        f = two_node_path()
        x = LatticeVector.unit(U, 1)
        single = f.evaluate(x.add_units(V, 1)) - f.evaluate(x)
        repeated = f.evaluate(x.add_units(V, 2)) - f.evaluate(x)
        assert 2 * single == pytest.approx(-1.386294, abs=1e-6)
        assert repeated == pytest.approx(-0.693147, abs=1e-6)
        assert 2 * single < repeated

    def test_disjoint_join_holds(self):
        inst = random_revenue(25, 0.2, seed=8)
        report = check_cross_lemmas(inst, ProblemInstance.uniform(inst.n, 8), samples=2000, seed=2)
        assert report.disjoint_join.passed
        assert report.disjoint_join.samples_tested == 2000


class TestBuildRevenueInstance:

    def test_deterministic(self):
        graph = random_graph(20, 0.3, seed=4)
        a = build_revenue_instance(graph.edges, seed=9, node_count=graph.node_count)
        b = build_revenue_instance(graph.edges, seed=9, node_count=graph.node_count)
        assert a.edges == b.edges
        assert np.array_equal(a.exponents, b.exponents)

    def test_seed_changes_draws(self):
        graph = random_graph(20, 0.3, seed=4)
        a = build_revenue_instance(graph.edges, seed=1, node_count=graph.node_count)
        b = build_revenue_instance(graph.edges, seed=2, node_count=graph.node_count)
        assert a.edges != b.edges

    def test_inverse_degree_triangle(self):
        inst = build_revenue_instance([(0, 1), (1, 2), (0, 2)], weight_model="inverse_degree")
        assert [w for _, _, w in inst.edges] == [0.5, 0.5, 0.5]

    def test_uniform_ranges(self):
        graph = random_graph(40, 0.2, seed=6)
        inst = build_revenue_instance(graph.edges, seed=6, node_count=graph.node_count)
        weights = np.array([w for _, _, w in inst.edges])
        assert np.all((weights >= 0.0) & (weights <= 1.0))
        assert np.all((inst.exponents > 0.0) & (inst.exponents < 1.0))

    def test_fixed_exponent(self):
        inst = build_revenue_instance([(0, 1)], exponent_model="fixed")
        assert inst.exponents.tolist() == [0.5, 0.5]

    def test_duplicates_collapse(self):
        inst = build_revenue_instance([(0, 1), (1, 0), (0, 1)])
        assert len(inst.edges) == 1
        assert inst.neighbors(0) == [(1, inst.edges[0][2])]

    def test_symmetric_adjacency(self):
        inst = random_revenue(15, 0.3, seed=2)
        assert (inst.adjacency != inst.adjacency.T).nnz == 0

    def test_empty_graph(self):
        with pytest.raises(InvalidParameterError):
            build_revenue_instance([])

    def test_node_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            build_revenue_instance([(0, 5)], node_count=3)

    def test_self_loop(self):
        with pytest.raises(InvalidParameterError):
            build_revenue_instance([(0, 1), (2, 2)])

    @pytest.mark.parametrize("edges", [[(0, 1, 0.6), (1, 0, 0.6)], [(0, 1, 0.6), (0, 1, 0.5)]])
    def test_constructor_rejects_duplicate_edges(self, edges):
        with pytest.raises(InvalidParameterError, match="duplicate edge"):
            RevenueInstance(2, edges, [0.5, 0.5])


class TestSyntheticConcaveQuadratic:

    def test_zero(self):
        f = SyntheticConcaveQuadratic([1.0], [4.0])
        assert synthetic_evaluate(f, LatticeVector.zero()) == 0.0

    def test_vertex_of_parabola(self):
        f = SyntheticConcaveQuadratic([1.0], [4.0])
        assert f.evaluate(LatticeVector.unit(0, 2)) == 1.0

    def test_non_monotone(self):
        f = SyntheticConcaveQuadratic([1.0], [4.0])
        assert f.evaluate(LatticeVector.unit(0, 4)) == 0.0 < f.evaluate(LatticeVector.unit(0, 2))

    def test_rejects_negative_weights(self):
        with pytest.raises(InvalidParameterError):
            SyntheticConcaveQuadratic([1.0, -0.5], [3.0])

    def test_random_member_covers_box(self):
        instance = ProblemInstance.uniform(5, 7)
        f = random_concave_quadratic(instance, terms=4, seed=3)
        f.validate_for(instance)
        rng = np.random.default_rng(3)
        for _ in range(300):
            assert f.evaluate(sample_vector(rng, instance, 7)) >= 0.0

    def test_cap_below_projection_rejected(self):
        f = SyntheticConcaveQuadratic([1.0, 1.0], [2.0])
        with pytest.raises(InvalidParameterError):
            f.validate_for(ProblemInstance.uniform(2, 5))

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_zero_violations(self, seed):
        instance = ProblemInstance.uniform(5, 8)
        f = random_concave_quadratic(instance, terms=3, seed=seed)
        assert check_dr_submodularity(f, instance, samples=3000, seed=seed, tolerance=1e-9).passed
        assert check_lattice_submodularity(f, instance, samples=3000, seed=seed, tolerance=1e-9).passed
        assert check_cross_lemmas(f, instance, samples=3000, seed=seed, tolerance=1e-9).passed

    def test_every_term_keeps_a_weight(self):
        # n = 2 at density 0.7 masks a whole row out in about 9% of draws
        instance = ProblemInstance.uniform(2, 3)
        for seed in range(200):
            f = random_concave_quadratic(instance, terms=3, seed=seed)
            assert f.direction_weights.any(axis=1).all()
            assert max(f.evaluate(LatticeVector.unit(e, 1)) for e in range(2)) > 0.0

    @pytest.mark.slow
    def test_zero_violations_full_scale(self):
        instance = ProblemInstance.uniform(5, 8)
        f = random_concave_quadratic(instance, terms=3, seed=0)
        assert check_dr_submodularity(f, instance, samples=100_000, seed=0, tolerance=1e-9).passed
        assert check_lattice_submodularity(f, instance, samples=100_000, seed=0, tolerance=1e-9).passed
        assert check_cross_lemmas(f, instance, samples=100_000, seed=0, tolerance=1e-9).passed


class TestPlantedObjectives:

    def test_modular(self):
        f = ModularObjective([2.0, 0.5])
        assert f.evaluate(LatticeVector({0: 3, 1: 2})) == 7.0

    def test_square(self):
        assert SquareObjective().evaluate(LatticeVector({0: 3, 1: 1})) == 10.0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
