"""Session fixtures: the example corpora built once and shared read-only."""

from __future__ import annotations

from pathlib import Path

import pytest

from chronokg import FUSED_GRAPH, build, build_fused_graph, load_store, to_tkg

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def obama_build():
    return build(FIXTURES / "obama" / "manifest.toml")


@pytest.fixture(scope="session")
def obama_fused(obama_build):
    return build_fused_graph(obama_build.store, trust=obama_build.trust).freeze()


@pytest.fixture(scope="session")
def obama_tkg(obama_fused):
    return to_tkg(obama_fused, FUSED_GRAPH)


@pytest.fixture(scope="session")
def query1_build():
    return build(FIXTURES / "query1" / "manifest.toml")


@pytest.fixture(scope="session")
def query1_fused(query1_build):
    return build_fused_graph(query1_build.store, trust=query1_build.trust).freeze()


@pytest.fixture(scope="session")
def query2_store():
    return load_store(FIXTURES / "query2.nq")
