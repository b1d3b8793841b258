import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from drsub.core.lattice import ProblemInstance
from drsub.objectives.synthetic import random_concave_quadratic
from drsub.reduction.exact import brute_force_opt


def micro_suite(count: int = 200):
    """Seeded (instance, objective) pairs with n in 2..5, k in 2..8 and B = k * 1."""
    suite = []
    for seed in range(count):
        n = 2 + seed % 4
        k = 2 + (seed // 4) % 7
        instance = ProblemInstance.uniform(n, k)
        objective = random_concave_quadratic(instance, terms=1 + seed % 3, seed=seed)
        suite.append((instance, objective))
    return suite


@pytest.fixture(scope="session")
def solved_micro_suite():
    """micro_suite() with the exact optimum of every instance."""
    return [
        (instance, objective, brute_force_opt(objective, instance).opt_value)
        for instance, objective in micro_suite()
    ]
