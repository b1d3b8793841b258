"""
Revenue maximization on a weighted social graph.

    f(x) = sum_{u not in {x}} log(1 + t_u ** alpha_u),
    t_u  = sum_{v in {x}} w_uv * x(v)

Users receiving investment (the support {x}) drop out of the outer sum, which
makes f non-monotone. Evaluation only walks adjacency rows of support nodes.
"""

import logging
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from drsub.core.errors import InvalidParameterError
from drsub.core.lattice import LatticeVector

logger = logging.getLogger(__name__)

WeightModel = Literal["uniform01", "inverse_degree"]
ExponentModel = Literal["uniform01", "fixed"]

FIXED_EXPONENT = 0.5


class RevenueInstance:
    """Immutable weighted undirected graph with per-user saturation exponents."""

    def __init__(
        self,
        node_count: int,
        edges: Sequence[Tuple[int, int, float]],
        exponents: Sequence[float],
    ):
        if node_count < 1:
            raise InvalidParameterError("revenue instance needs at least one node")
        exponents = np.array(exponents, dtype=float)
        if exponents.shape != (node_count,):
            raise InvalidParameterError(
                f"expected {node_count} exponents, got {exponents.shape[0]}"
            )
        if np.any(exponents <= 0.0) or np.any(exponents >= 1.0):
            raise InvalidParameterError("every exponent must lie strictly inside (0, 1)")

        rows: List[int] = []
        cols: List[int] = []
        weights: List[float] = []
        seen = set()
        for u, v, w in edges:
            if u == v:
                raise InvalidParameterError(f"self-loop on node {u}")
            # the CSR build sums repeated entries
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise InvalidParameterError(f"duplicate edge ({u}, {v})")
            seen.add(pair)
            if not 0.0 <= w <= 1.0:
                raise InvalidParameterError(f"edge ({u}, {v}) weight {w} outside [0, 1]")
            rows.extend((u, v))
            cols.extend((v, u))
            weights.extend((w, w))

        self.node_count = node_count
        self.edges: Tuple[Tuple[int, int, float], ...] = tuple(
            (int(u), int(v), float(w)) for u, v, w in edges
        )
        self.exponents = exponents
        self.exponents.setflags(write=False)
        self.adjacency = sparse.csr_matrix(
            (np.asarray(weights, dtype=float), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
            shape=(node_count, node_count),
        )
        self.adjacency.sort_indices()

    @property
    def n(self) -> int:
        return self.node_count

    def neighbors(self, u: int) -> List[Tuple[int, float]]:
        start, end = self.adjacency.indptr[u], self.adjacency.indptr[u + 1]
        return list(
            zip(self.adjacency.indices[start:end].tolist(), self.adjacency.data[start:end].tolist())
        )

    def evaluate(self, x: LatticeVector) -> float:
        return revenue_evaluate(self, x)

    def __repr__(self) -> str:
        return f"RevenueInstance(nodes={self.node_count}, edges={len(self.edges)})"


def revenue_evaluate(inst: RevenueInstance, x: LatticeVector) -> float:
    if x.is_zero():
        return 0.0
    items = x.items()
    support = np.fromiter((e for e, _ in items), dtype=np.int64, count=len(items))
    counts = np.fromiter((c for _, c in items), dtype=float, count=len(items))

    rows = inst.adjacency[support]
    degrees = np.diff(rows.indptr)
    targets = rows.indices
    influence = rows.data * np.repeat(counts, degrees)

    outside = ~np.isin(targets, support, assume_unique=False)
    if not outside.any():
        return 0.0
    touched, slot = np.unique(targets[outside], return_inverse=True)
    t = np.bincount(slot, weights=influence[outside])
    return float(np.sum(np.log1p(t ** inst.exponents[touched])))


def _degrees(node_count: int, edges: Sequence[Tuple[int, int]]) -> np.ndarray:
    degree = np.zeros(node_count, dtype=np.int64)
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    return degree


def build_revenue_instance(
    edges: Sequence[Tuple[int, int]],
    weight_model: WeightModel = "uniform01",
    exponent_model: ExponentModel = "uniform01",
    seed: int = 0,
    node_count: Optional[int] = None,
) -> RevenueInstance:
    """
    Draw edge weights and user exponents for an undirected simple graph.

    Weights are drawn first (in edge order), then exponents (in node order),
    from one generator seeded with `seed`.
    """
    if not edges:
        raise InvalidParameterError("revenue graph has no edges")
    highest = max(max(u, v) for u, v in edges)
    if node_count is None:
        node_count = highest + 1
    seen = set()
    simple: List[Tuple[int, int]] = []
    for u, v in edges:
        if u < 0 or v < 0 or u >= node_count or v >= node_count:
            raise InvalidParameterError(f"edge ({u}, {v}) outside nodes 0..{node_count - 1}")
        if u == v:
            raise InvalidParameterError(f"self-loop on node {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        simple.append((int(u), int(v)))

    rng = np.random.default_rng(seed)
    if weight_model == "uniform01":
        weights = rng.uniform(0.0, 1.0, size=len(simple))
    elif weight_model == "inverse_degree":
        degree = _degrees(node_count, simple)
        weights = np.array([1.0 / max(degree[u], degree[v]) for u, v in simple])
    else:
        raise InvalidParameterError(f"unknown weight model {weight_model!r}")

    if exponent_model == "uniform01":
        # uniform draws land in [low, 1); low > 0 keeps exponents inside (0, 1)
        exponents = rng.uniform(np.nextafter(0.0, 1.0), 1.0, size=node_count)
    elif exponent_model == "fixed":
        exponents = np.full(node_count, FIXED_EXPONENT)
    else:
        raise InvalidParameterError(f"unknown exponent model {exponent_model!r}")

    logger.debug(
        f"[REVENUE] built {node_count} nodes, {len(simple)} edges "
        f"({weight_model}/{exponent_model}, seed={seed})"
    )
    return RevenueInstance(
        node_count,
        [(u, v, float(w)) for (u, v), w in zip(simple, weights)],
        exponents,
    )
