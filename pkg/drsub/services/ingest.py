"""
Graph ingestion: SNAP edge-list files and seeded random graphs.

Node labels are re-indexed densely in first-appearance order, so element ids
of a revenue instance are stable for a given file.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import networkx as nx
from pydantic import BaseModel

from drsub.core.errors import IngestionError

logger = logging.getLogger(__name__)


class DatasetInfo(BaseModel):
    name: str
    filename: str
    nodes: int
    edges: int


# Expected sizes of the undirected SNAP graphs used in the experiments
DATASETS: Dict[str, DatasetInfo] = {
    "facebook": DatasetInfo(name="facebook", filename="facebook_combined.txt", nodes=4039, edges=88234),
    "astroph": DatasetInfo(name="astroph", filename="CA-AstroPh.txt", nodes=18772, edges=198110),
    "enron": DatasetInfo(name="enron", filename="Email-Enron.txt", nodes=36692, edges=183831),
}


class EdgeList(BaseModel):
    """A simple undirected graph over nodes 0..node_count-1."""

    name: str
    node_count: int
    edges: List[Tuple[int, int]]
    labels: List[str]

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def _from_graph(graph: nx.Graph, name: str) -> EdgeList:
    if graph.number_of_edges() == 0:
        raise IngestionError(f"{name}: no edges")
    labels = [str(node) for node in graph.nodes]
    indexed = nx.convert_node_labels_to_integers(graph, ordering="default")
    edges = sorted((min(u, v), max(u, v)) for u, v in indexed.edges())
    return EdgeList(name=name, node_count=indexed.number_of_nodes(), edges=edges, labels=labels)


def identify_dataset(path: Union[str, Path]) -> Optional[DatasetInfo]:
    filename = Path(path).name
    for info in DATASETS.values():
        if info.filename == filename:
            return info
    return None


def parse_snap_edge_list(path: Union[str, Path]) -> EdgeList:
    """
    Read a whitespace-separated edge list. Lines starting with '#' and blank
    lines are skipped; self-loops are dropped (the node itself is kept);
    repeated undirected edges collapse into one.
    """
    path = Path(path)
    graph = nx.Graph()
    self_loops = 0
    try:
        with path.open("rb") as handle:
            for line_number, raw in enumerate(handle, start=1):
                try:
                    stripped = raw.decode("utf-8").strip()
                except UnicodeDecodeError as e:
                    raise IngestionError(f"{path.name}:{line_number}: not valid UTF-8 ({e.reason})") from e
                if not stripped or stripped.startswith("#"):
                    continue
                tokens = stripped.split()
                if len(tokens) != 2:
                    raise IngestionError(
                        f"{path.name}:{line_number}: expected 2 node labels, got {len(tokens)}"
                    )
                u, v = tokens
                if u == v:
                    graph.add_node(u)
                    self_loops += 1
                    continue
                graph.add_edge(u, v)
    except OSError as e:
        raise IngestionError(f"cannot read {path}: {e}") from e

    edge_list = _from_graph(graph, path.stem)
    logger.info(
        f"[INGEST] {path.name}: {edge_list.node_count} nodes, {edge_list.edge_count} edges"
        + (f" ({self_loops} self-loops dropped)" if self_loops else "")
    )

    expected = identify_dataset(path)
    if expected and (expected.nodes, expected.edges) != (edge_list.node_count, edge_list.edge_count):
        logger.warning(
            f"[INGEST] {path.name} looks like {expected.name} but has "
            f"{edge_list.node_count}/{edge_list.edge_count} nodes/edges, "
            f"expected {expected.nodes}/{expected.edges}"
        )
    return edge_list


def random_graph(n: int, edge_prob: float, seed: int = 0) -> EdgeList:
    """Erdos-Renyi G(n, p) with integer labels 0..n-1."""
    graph = nx.gnp_random_graph(n, edge_prob, seed=seed)
    return _from_graph(graph, f"gnp_{n}_{edge_prob:g}")
