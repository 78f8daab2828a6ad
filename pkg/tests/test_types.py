"""
Tests for type definitions and response type mappings.

These tests verify that tool outputs carry exactly the fields of the
TypedDict documenting them.
"""

import json

import pytest

from graphmanifold_mcp import types
from graphmanifold_mcp.api.census import run_census
from graphmanifold_mcp.api.certificates import check_certificate
from graphmanifold_mcp.api.classify import classify_graph
from graphmanifold_mcp.config import Settings
from tests.sample_graphs import CHARGED_LOOP_DOC, HALF_HALF_DOC, ONE_ONE_DOC, VF_CERTIFICATE_DOC

FAST = Settings(search_budget=500, grid_denominator=4)


def fields(typed_dict) -> set[str]:
    return set(typed_dict.__annotations__)


@pytest.fixture
def classification():
    return classify_graph(HALF_HALF_DOC, settings=FAST).data


# =============================================================================
# Classification Output
# =============================================================================


class TestClassifyOutputTypes:
    """Tests for ClassifyOutput conformance."""

    def test_top_level_fields(self, classification) -> None:
        """The output has exactly the ClassifyOutput fields."""
        assert set(classification) == fields(types.ClassifyOutput)

    def test_graph_document(self, classification) -> None:
        """The echoed graph is a GraphDocument."""
        graph = classification["graph"]
        assert set(graph) == fields(types.GraphDocument)
        for vertex in graph["vertices"]:
            assert set(vertex) == fields(types.VertexEntry)
            assert isinstance(vertex["charge"], str)
        for edge in graph["edges"]:
            assert set(edge) == fields(types.EdgeEntry)
            assert isinstance(edge["b"], int)

    def test_verdict_records(self, classification) -> None:
        """Every verdict, witness and certificate record is complete."""
        for verdict in classification["verdicts"].values():
            assert set(verdict) == fields(types.VerdictRecord)
            if verdict["witness"] is not None:
                assert set(verdict["witness"]) == fields(types.WitnessRecord)
            if verdict["certificate"] is not None:
                assert set(verdict["certificate"]) == fields(types.CertificateDocument)

    def test_matrices_are_string_tables(self, classification) -> None:
        """Matrix entries are rational strings."""
        matrices = classification["matrices"]
        assert set(matrices) == fields(types.MatricesRecord)
        for name in ("A", "A_plus", "H"):
            assert all(isinstance(x, str) for row in matrices[name] for x in row)

    def test_components_and_implications(self, classification) -> None:
        """Signed components and the implication report are complete."""
        assert set(classification["signed_components"]) == fields(types.SignedComponentsRecord)
        assert set(classification["implications"]) == fields(types.ImplicationsRecord)

    def test_output_is_json_ready(self) -> None:
        """A flagged classification survives a JSON round trip unchanged."""
        data = classify_graph(CHARGED_LOOP_DOC, settings=FAST).data
        assert json.loads(json.dumps(data)) == data


# =============================================================================
# Certificate Check Output
# =============================================================================


class TestCheckOutputTypes:
    """Tests for CheckOutput conformance."""

    def test_check_output_fields(self) -> None:
        """A check report has the CheckOutput fields."""
        data = check_certificate(ONE_ONE_DOC, VF_CERTIFICATE_DOC).data
        assert set(data) == fields(types.CheckOutput)
        assert all(isinstance(r, str) for r in data["residuals"].values())


# =============================================================================
# Census Output
# =============================================================================


class TestCensusTypes:
    """Tests for census row and summary conformance."""

    def test_rows_and_summary(self, clean_cache) -> None:
        """Census rows, discrepancies and the summary are complete."""
        result = run_census(max_vertices=1, charges=["2"], indices=[1], max_edges=1, loops=True, settings=FAST)

        assert set(result.summary) == fields(types.CensusSummary)
        for row in result.data:
            assert set(row) == fields(types.CensusRowRecord)
            for discrepancy in row["discrepancies"]:
                assert set(discrepancy) == fields(types.DiscrepancyRecord)
        assert any(row["discrepancies"] for row in result.data)
