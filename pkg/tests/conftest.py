import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shiftlab.acceptance import corpus_path
from shiftlab.codes import load_factor_map
from shiftlab.core import load_graph

GRAPH_NAMES = ("golden", "even", "even4", "full2", "goldennd", "evenedge")
MAP_NAMES = ("evenmap", "xor", "identity")


@pytest.fixture
def graphs():
    return {name: load_graph(corpus_path(name + ".graph")) for name in GRAPH_NAMES}


@pytest.fixture
def maps():
    return {name: load_factor_map(corpus_path(name + ".code")) for name in MAP_NAMES}
