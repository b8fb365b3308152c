import random

import pytest

from lgca.graph import parse_graph

# Two-vertex presentations of the full binary shift and their one-vertex
# merged form.
E1_SRC = """
edge v1 v1 0
edge v1 v2 0
edge v2 v2 1
edge v2 v1 1
"""

E2_SRC = """
edge v1 v1 0
edge v2 v2 0
edge v1 v2 1
edge v2 v1 1
"""

F_SRC = """
edge v v 0
edge v v 1
"""

# Six-vertex doubled chain closed into a cycle by a fresh label.
CHAIN_SRC = """
edge u1 v1 1
edge u1 v2 1
edge v1 w1 2
edge v2 w2 2
edge w1 u2 3
edge w2 u2 3
edge u2 u1 4
"""

# Loop at u, edge down to v, loop at v: one proper nonzero ideal.
LOOPS_UV_SRC = """
edge u u a
edge u v b
edge v v c
"""

TWO_COMPONENTS_SRC = """
edge u u a
edge v v b
"""

CYCLE2_SRC = """
edge u v a
edge v u b
"""

# Union-masked graph: v and w receive identical label languages but their
# one-step ranges separate them, so the stable classes do not generate the
# complement-closed family and the fallback closure is required.
MASKED_SRC = """
edge s s d
edge s x b
edge s x c
edge s y b
edge s z c
edge x v a
edge y w a
edge z w a
edge v s e
edge w s e
"""


@pytest.fixture(scope="session")
def e1():
    return parse_graph(E1_SRC)


@pytest.fixture(scope="session")
def e2():
    return parse_graph(E2_SRC)


@pytest.fixture(scope="session")
def f_graph():
    return parse_graph(F_SRC)


@pytest.fixture(scope="session")
def chain4():
    return parse_graph(CHAIN_SRC)


@pytest.fixture(scope="session")
def loops_uv():
    return parse_graph(LOOPS_UV_SRC)


@pytest.fixture(scope="session")
def two_components():
    return parse_graph(TWO_COMPONENTS_SRC)


@pytest.fixture(scope="session")
def cycle2():
    return parse_graph(CYCLE2_SRC)


@pytest.fixture(scope="session")
def masked():
    return parse_graph(MASKED_SRC)


@pytest.fixture(scope="session")
def fixture_graphs(e1, e2, f_graph, chain4, loops_uv, two_components, cycle2):
    return {
        "e1": e1,
        "e2": e2,
        "f": f_graph,
        "chain4": chain4,
        "loops_uv": loops_uv,
        "two_components": two_components,
        "cycle2": cycle2,
    }


def make_wlr_corpus(count=100, seed=20240601, max_vertices=6, max_labels=3):
    """Random weakly left-resolving graphs, deterministic for a fixed seed."""
    from lgca.accommodating import is_weakly_left_resolving
    from oracles import quiet_bar, random_graph

    rng = random.Random(seed)
    corpus = []
    attempts = 0
    while len(corpus) < count:
        attempts += 1
        assert attempts < count * 200, "WLR corpus generation stalled"
        g = random_graph(rng, max_vertices=max_vertices, max_labels=max_labels)
        bar = quiet_bar(g)
        ok, _ = is_weakly_left_resolving(g, bar)
        if ok:
            corpus.append((g, bar))
    return corpus


@pytest.fixture(scope="session")
def wlr_corpus():
    return make_wlr_corpus()
