"""
Tests for SNAP edge-list ingestion and seeded random graphs.
"""

import logging
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from drsub.core.config import settings
from drsub.core.errors import IngestionError
from drsub.core.lattice import ProblemInstance
from drsub.objectives.revenue import build_revenue_instance
from drsub.services.ingest import DATASETS, identify_dataset, parse_snap_edge_list, random_graph
from drsub.solvers.fast_dr_sub import fast_dr_sub


def write(tmp_path: Path, text: str, name: str = "graph.txt") -> Path:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestParseSnapEdgeList:

    def test_dedupe_and_self_loop(self, tmp_path):
        graph = parse_snap_edge_list(write(tmp_path, "# c\n1 2\n2 1\n1 1\n"))
        assert graph.node_count == 2
        assert graph.edges == [(0, 1)]

    def test_first_appearance_order(self, tmp_path):
        graph = parse_snap_edge_list(write(tmp_path, "30 10\n10 20\n20 30\n"))
        assert graph.labels == ["30", "10", "20"]
        assert graph.edges == [(0, 1), (0, 2), (1, 2)]

    def test_tabs_and_blank_lines(self, tmp_path):
        graph = parse_snap_edge_list(write(tmp_path, "# FromNodeId\tToNodeId\n\n0\t1\n1\t2\n"))
        assert graph.edge_count == 2

    def test_empty_file(self, tmp_path):
        with pytest.raises(IngestionError, match="no edges"):
            parse_snap_edge_list(write(tmp_path, ""))

    def test_only_self_loops(self, tmp_path):
        with pytest.raises(IngestionError, match="no edges"):
            parse_snap_edge_list(write(tmp_path, "1 1\n2 2\n"))

    def test_malformed_line_number(self, tmp_path):
        with pytest.raises(IngestionError, match=":3:"):
            parse_snap_edge_list(write(tmp_path, "# header\n1 2\n3 4 5\n"))

    def test_unreadable(self, tmp_path):
        with pytest.raises(IngestionError, match="cannot read"):
            parse_snap_edge_list(tmp_path / "missing.txt")

    def test_invalid_utf8_names_line(self, tmp_path):
        path = tmp_path / "graph.txt"
        path.write_bytes(b"1 2\n\xff\xfe 3\n")
        with pytest.raises(IngestionError, match="graph.txt:2: not valid UTF-8"):
            parse_snap_edge_list(path)

    def test_registered_size_mismatch_warns(self, tmp_path, caplog):
        path = write(tmp_path, "1 2\n2 3\n", name="facebook_combined.txt")
        with caplog.at_level(logging.WARNING):
            parse_snap_edge_list(path)
        assert "looks like facebook" in caplog.text


class TestDatasets:

    def test_registry(self):
        assert (DATASETS["facebook"].nodes, DATASETS["facebook"].edges) == (4039, 88234)
        assert (DATASETS["astroph"].nodes, DATASETS["astroph"].edges) == (18772, 198110)
        assert (DATASETS["enron"].nodes, DATASETS["enron"].edges) == (36692, 183831)

    def test_identify(self):
        assert identify_dataset("/data/Email-Enron.txt").name == "enron"
        assert identify_dataset("other.txt") is None


class TestRandomGraph:

    def test_seeded(self):
        assert random_graph(30, 0.2, seed=1).edges == random_graph(30, 0.2, seed=1).edges

    def test_feeds_revenue_instance(self):
        graph = random_graph(30, 0.2, seed=1)
        inst = build_revenue_instance(graph.edges, node_count=graph.node_count)
        assert inst.n == 30
        assert len(inst.edges) == graph.edge_count


@pytest.mark.slow
@pytest.mark.skipif(
    not settings.facebook_edge_list or not Path(settings.facebook_edge_list).is_file(),
    reason="set DRSUB_FACEBOOK_EDGE_LIST to facebook_combined.txt",
)
class TestFacebook:

    def test_counts_and_solver_run(self):
        graph = parse_snap_edge_list(settings.facebook_edge_list)
        assert (graph.node_count, graph.edge_count) == (4039, 88234)

        inst = build_revenue_instance(graph.edges, seed=0, node_count=graph.node_count)
        instance = ProblemInstance.uniform(graph.node_count, 202)
        out = fast_dr_sub(inst, instance)
        assert instance.is_feasible(out.z)
        assert out.value >= 0.0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
