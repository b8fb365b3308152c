import random

import pytest
from hypothesis import given, settings, strategies as st

from lgca.graph import (
    DuplicateEdgeError,
    DuplicateEdgeWarning,
    GraphSyntaxError,
    LabelledGraph,
    SinkVertexError,
    UnknownSymbolWarning,
    as_word,
    label_isomorphic,
    parse_graph,
)
from oracles import (
    brute_level_partition,
    brute_relative_range,
    brute_sources,
    random_graph,
)


def members(vs):
    return frozenset(vs)


class TestParse:
    def test_e1_shape(self, e1):
        assert e1.vertices == ("v1", "v2")
        assert len(e1.edges) == 4
        assert e1.alphabet == ("0", "1")

    def test_empty_input_is_syntax_error(self):
        with pytest.raises(GraphSyntaxError):
            parse_graph("# only a comment\n")

    def test_sink_is_rejected(self):
        with pytest.raises(SinkVertexError) as err:
            parse_graph("edge u v a\n")
        assert err.value.vertex == "v"

    def test_syntax_error_carries_line(self):
        with pytest.raises(GraphSyntaxError) as err:
            parse_graph("edge u u a\nedge u u\n")
        assert err.value.line == 2

    def test_unknown_directive(self):
        with pytest.raises(GraphSyntaxError):
            parse_graph("node u\n")

    def test_duplicate_edge_collapses_with_warning(self):
        with pytest.warns(DuplicateEdgeWarning):
            g = parse_graph("edge u u a\nedge u u a\n")
        assert len(g.edges) == 1

    def test_constructor_rejects_duplicates(self):
        with pytest.raises(DuplicateEdgeError):
            LabelledGraph(["u"], [("u", "u", "a"), ("u", "u", "a")])

    def test_dsl_round_trip(self, chain4):
        assert parse_graph(chain4.to_dsl()) == chain4

    def test_multichar_tokens(self):
        g = parse_graph("edge alpha beta go\nedge beta alpha back\n")
        assert g.vertices == ("alpha", "beta")
        assert g.alphabet == ("back", "go")


class TestRanges:
    def test_relative_range_e1(self, e1):
        A = e1.vertex_set(["v1"])
        assert members(e1.relative_range(A, "0")) == {"v1", "v2"}

    def test_relative_range_from_empty(self, e1):
        assert not e1.relative_range(e1.empty_set, "01")

    def test_relative_range_composite(self, e1):
        A = e1.full_set
        assert members(e1.relative_range(A, "01")) == {"v1", "v2"}

    def test_range_and_source(self, e1):
        assert members(e1.range_of_word("0")) == {"v1", "v2"}
        assert members(e1.source_of_word("0")) == {"v1"}

    def test_unknown_symbol_warns(self, e1):
        with pytest.warns(UnknownSymbolWarning):
            assert not e1.range_of_word("2")

    def test_f_every_word_ranges_to_v(self, f_graph):
        for word in ["0", "1", "01", "10", "0110"]:
            assert members(f_graph.range_of_word(word)) == {"v"}

    def test_labels_in_out(self, e1):
        A = e1.vertex_set(["v1"])
        assert e1.labels_out(A) == {"0"}
        assert e1.labels_in(A) == {"0", "1"}
        assert e1.labels_out(e1.empty_set) == frozenset()
        assert e1.labels_out(e1.full_set) == {"0", "1"}


class TestLevelPartitions:
    def test_generalized_vertex_e1(self, e1):
        assert members(e1.generalized_vertex("v1", 1)) == {"v1", "v2"}

    def test_generalized_vertex_cycle2(self, cycle2):
        assert members(cycle2.generalized_vertex("u", 1)) == {"u"}

    def test_reflexive(self, loops_uv):
        for v in loops_uv.vertices:
            for level in (1, 2, 3):
                assert v in loops_uv.generalized_vertex(v, level)

    def test_stable_partition_e1(self, e1):
        part, level = e1.stable_partition()
        assert level == 1
        assert {members(c) for c in part.classes} == {frozenset({"v1", "v2"})}

    def test_stable_partition_cycle2(self, cycle2):
        part, level = cycle2.stable_partition()
        assert level == 1
        assert {members(c) for c in part.classes} == {
            frozenset({"u"}),
            frozenset({"v"}),
        }

    def test_stable_partition_chain(self, chain4):
        part, _ = chain4.stable_partition()
        assert {members(c) for c in part.classes} == {
            frozenset({"u1"}),
            frozenset({"v1", "v2"}),
            frozenset({"w1", "w2"}),
            frozenset({"u2"}),
        }

    def test_masked_vertices_merge(self, masked):
        part, _ = masked.stable_partition()
        assert frozenset({"v", "w"}) in {members(c) for c in part.classes}


class TestAgainstBruteForce:
    def test_level_partitions_match_language_equality(self):
        rng = random.Random(7)
        for _ in range(40):
            g = random_graph(rng)
            bound = len(g.vertices) + 1
            for level in range(1, bound + 1):
                got = {frozenset(c) for c in g.level_partition(level).classes}
                assert got == brute_level_partition(g, level), (g.to_dsl(), level)
            stable, lstar = g.stable_partition()
            assert {frozenset(c) for c in stable.classes} == brute_level_partition(
                g, bound
            ), g.to_dsl()
            assert 1 <= lstar <= bound

    def test_relative_range_matches_path_enumeration(self):
        rng = random.Random(9)
        for _ in range(30):
            g = random_graph(rng)
            labels = list(g.alphabet)
            for _ in range(10):
                size = rng.randint(0, len(g.vertices))
                A = rng.sample(list(g.vertices), size)
                word = tuple(rng.choice(labels) for _ in range(rng.randint(1, 4)))
                got = frozenset(g.relative_range(g.vertex_set(A), word))
                assert got == brute_relative_range(g, A, word)

    def test_sources_match(self):
        rng = random.Random(11)
        for _ in range(20):
            g = random_graph(rng)
            for _ in range(6):
                word = tuple(
                    rng.choice(g.alphabet) for _ in range(rng.randint(1, 3))
                )
                assert frozenset(g.source_of_word(word)) == brute_sources(g, word)


@st.composite
def graphs(draw):
    seed = draw(st.integers(min_value=0, max_value=10**9))
    return random_graph(random.Random(seed), max_vertices=5, max_labels=3)


@settings(max_examples=60, deadline=None)
@given(graphs(), st.integers(0, 10**6), st.data())
def test_range_union_and_composition_properties(g, seed, data):
    rng = random.Random(seed)
    verts = list(g.vertices)
    A = g.vertex_set(rng.sample(verts, rng.randint(0, len(verts))))
    B = g.vertex_set(rng.sample(verts, rng.randint(0, len(verts))))
    alpha = tuple(rng.choice(g.alphabet) for _ in range(rng.randint(1, 3)))
    beta = tuple(rng.choice(g.alphabet) for _ in range(rng.randint(1, 3)))
    # unions distribute
    assert g.relative_range(A | B, alpha) == g.relative_range(
        A, alpha
    ) | g.relative_range(B, alpha)
    # composition
    assert g.relative_range(A, alpha + beta) == g.relative_range(
        g.relative_range(A, alpha), beta
    )


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_refinement_and_decomposition(g):
    bound = len(g.vertices) + 1
    for level in range(1, bound):
        coarse = g.level_partition(level)
        fine = g.level_partition(level + 1)
        for v in g.vertices:
            assert fine.class_of(v) <= coarse.class_of(v)
        # each coarse class is a union of fine classes
        for c in coarse.classes:
            cover = 0
            for d in fine.classes:
                if d <= c:
                    cover |= d.mask
            assert cover == c.mask


@settings(max_examples=40, deadline=None)
@given(graphs(), st.data())
def test_ranges_saturated_for_stable_partition(g, data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    word = tuple(rng.choice(g.alphabet) for _ in range(rng.randint(1, 4)))
    r = g.range_of_word(word)
    stable, _ = g.stable_partition()
    for cls in stable.classes:
        assert cls <= r or cls.isdisjoint(r)


class TestIsomorphism:
    def test_identity(self, e1):
        assert label_isomorphic(e1, e1)

    def test_renamed(self, f_graph):
        h = parse_graph("edge w w 0\nedge w w 1\n")
        assert label_isomorphic(f_graph, h)

    def test_not_isomorphic(self, e1, f_graph):
        assert not label_isomorphic(e1, f_graph)

    def test_label_mismatch(self):
        g = parse_graph("edge u u a\n")
        h = parse_graph("edge u u b\n")
        assert not label_isomorphic(g, h)


class TestSerialization:
    def test_dot_contains_edges(self, e1):
        dot = e1.to_dot()
        assert '"v1" -> "v2" [label="0"];' in dot

    def test_json_shape(self, e1):
        data = e1.to_json_dict()
        assert data["vertices"] == ["v1", "v2"]
        assert {"src": "v2", "dst": "v1", "label": "1"} in data["edges"]


def test_as_word_rejects_empty():
    with pytest.raises(ValueError):
        as_word("")
    assert as_word("010") == ("0", "1", "0")
    assert as_word(["ab", "c"]) == ("ab", "c")
