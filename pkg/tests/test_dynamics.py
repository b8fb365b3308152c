import itertools
import random

import pytest

from lgca.accommodating import NotWeaklyLeftResolvingError
from lgca.dynamics import (
    Verdict,
    is_agreeable,
    is_disagreeable,
    is_disagreeable_class,
    is_simple,
    is_strongly_cofinal,
    label_reachable,
    minimal_period,
)
from lgca.graph import parse_graph
from lgca.merged import merge
from oracles import (
    brute_cofinal_status,
    brute_min_period,
    brute_reachable,
    count_realized_words,
    nonagreeable_words,
    random_graph,
)


class TestAgreeable:
    def test_examples(self):
        assert is_agreeable("0101", 2)
        assert not is_agreeable("001", 1)
        assert is_agreeable("000", 1)
        assert not is_agreeable("ab", 1)

    def test_matches_brute_period(self):
        for n in range(1, 9):
            for word in itertools.product("ab", repeat=n):
                assert minimal_period(word) == brute_min_period(word)
        rng = random.Random(3)
        for _ in range(2000):
            n = rng.randint(1, 12)
            word = tuple(rng.choice("abc") for _ in range(n))
            assert minimal_period(word) == brute_min_period(word)

    def test_absorption_for_long_words(self):
        # once a word longer than the bound is non-agreeable, extensions are
        rng = random.Random(5)
        for _ in range(500):
            bound = rng.randint(1, 4)
            n = rng.randint(bound + 1, 10)
            word = tuple(rng.choice("ab") for _ in range(n))
            if is_agreeable(word, bound):
                continue
            ext = word + tuple(rng.choice("ab") for _ in range(rng.randint(1, 5)))
            assert not is_agreeable(ext, bound)


class TestDisagreeableClass:
    def test_full_shift_confirmed(self, f_graph):
        for level in (1, 2, 3, 5):
            res = is_disagreeable_class(f_graph, f_graph.full_set, level)
            assert res.verdict is Verdict.CONFIRMED
            assert minimal_period(res.witness) > level

    def test_two_cycle_refuted_at_two(self, cycle2):
        C = cycle2.vertex_set(["u"])
        assert is_disagreeable_class(cycle2, C, 1).verdict is Verdict.CONFIRMED
        assert is_disagreeable_class(cycle2, C, 2).verdict is Verdict.REFUTED

    def test_single_loop_refuted(self):
        g = parse_graph("edge v v a\n")
        res = is_disagreeable_class(g, g.full_set, 1)
        assert res.verdict is Verdict.REFUTED

    def test_matches_brute_enumeration(self):
        rng = random.Random(13)
        graphs = 0
        while graphs < 25:
            g = random_graph(rng, max_vertices=5, max_labels=2)
            graphs += 1
            stable, _ = g.stable_partition()
            for cls in stable.classes:
                if count_realized_words(g, set(cls), 12) > 300_000:
                    continue
                for level in (1, 2, 3):
                    res = is_disagreeable_class(g, cls, level)
                    if res.verdict is Verdict.CONFIRMED:
                        horizon = max(12, len(res.witness))
                        found = nonagreeable_words(
                            g, set(cls), level, horizon, limit=1
                        )
                        assert found, (g.to_dsl(), list(cls), level)
                    else:
                        assert not nonagreeable_words(
                            g, set(cls), level, 12, limit=1
                        ), (g.to_dsl(), list(cls), level)


class TestDisagreeableSpace:
    def test_full_shift(self, f_graph):
        report = is_disagreeable(f_graph)
        assert report.verdict is Verdict.CONFIRMED
        assert report.certificates
        cert = report.certificates[0]
        assert set(cert.letters) == {"0", "1"}

    def test_e1_certificate(self, e1):
        assert is_disagreeable(e1).verdict is Verdict.CONFIRMED

    def test_two_cycle_refuted(self, cycle2):
        report = is_disagreeable(cycle2)
        assert report.verdict is Verdict.REFUTED
        assert report.refuted_level == 2

    def test_single_loop_refuted(self):
        g = parse_graph("edge v v a\n")
        report = is_disagreeable(g)
        assert report.verdict is Verdict.REFUTED
        assert report.refuted_level == 1

    def test_chain_refuted_at_cycle_length(self, chain4):
        report = is_disagreeable(chain4)
        assert report.verdict is Verdict.REFUTED
        assert report.refuted_level == 4


class TestCertificates:
    def test_certificate_agrees_with_levelwise_decisions(self):
        # whenever a stable class has a branching certificate, the exact
        # per-level automaton must confirm it at every level it is run at
        from lgca.dynamics import _branching_certificate

        rng = random.Random(19)
        certified_seen = 0
        for _ in range(40):
            g = random_graph(rng, max_vertices=5, max_labels=3)
            stable, _ = g.stable_partition()
            for cls in stable.classes:
                cert = _branching_certificate(g, cls)
                if cert is None:
                    continue
                certified_seen += 1
                for level in (1, 2, 3, 4, 5, 6):
                    res = is_disagreeable_class(g, cls, level)
                    assert res.verdict is Verdict.CONFIRMED, (
                        g.to_dsl(),
                        list(cls),
                        level,
                    )
        assert certified_seen >= 10

    def test_no_certificate_on_single_cycles(self, cycle2, chain4):
        from lgca.dynamics import _branching_certificate

        for g in (cycle2, chain4):
            stable, _ = g.stable_partition()
            for cls in stable.classes:
                assert _branching_certificate(g, cls) is None


class TestLabelReachable:
    def test_one_vertex(self, f_graph):
        assert label_reachable(f_graph, f_graph.full_set) == f_graph.full_set

    def test_loops_uv(self, loops_uv):
        v = loops_uv.vertex_set(["v"])
        u = loops_uv.vertex_set(["u"])
        assert label_reachable(loops_uv, v) == v
        assert frozenset(label_reachable(loops_uv, u)) == {"u", "v"}

    def test_matches_plain_reachability(self):
        rng = random.Random(17)
        for _ in range(30):
            g = random_graph(rng)
            for v in g.vertices:
                got = frozenset(label_reachable(g, g.singleton(v)))
                assert got == brute_reachable(g, {v})


class TestStrongCofinality:
    def test_fixtures_confirmed(self, f_graph, e1, e2, cycle2, chain4):
        for g in (f_graph, e1, e2, cycle2, chain4):
            assert is_strongly_cofinal(g).verdict is Verdict.CONFIRMED

    def test_two_components_refuted(self, two_components):
        report = is_strongly_cofinal(two_components)
        assert report.verdict is Verdict.REFUTED
        assert report.witness is not None
        assert report.witness.cycle  # a genuine lasso

    def test_loops_uv_refuted(self, loops_uv):
        # from u the path a^inf never ranges into the reachable set of {v}'s
        # class... actually r({u},a^n) = {u}, and R({v}) = {v}
        report = is_strongly_cofinal(loops_uv)
        assert report.verdict is Verdict.REFUTED

    def test_non_wlr_raises(self, masked):
        with pytest.warns(UserWarning):
            with pytest.raises(NotWeaklyLeftResolvingError):
                is_strongly_cofinal(masked)

    def test_matches_bounded_lasso_bruteforce(self, wlr_corpus):
        from lgca.dynamics import _distinct_classes

        for g, _ in wlr_corpus[:20]:
            report = is_strongly_cofinal(g)
            brute_refuted = False
            all_definite = True
            for w in g.vertices:
                for cls in _distinct_classes(g):
                    status, _ = brute_cofinal_status(g, w, set(cls), bound=6)
                    if status == "REFUTED":
                        brute_refuted = True
                    elif status is None:
                        all_definite = False
            if brute_refuted:
                assert report.verdict is Verdict.REFUTED, g.to_dsl()
            elif all_definite:
                assert report.verdict is Verdict.CONFIRMED, g.to_dsl()


class TestSimplicity:
    def test_full_shift_simple(self, f_graph, e1, e2):
        for g in (f_graph, e1, e2):
            verdict = is_simple(g)
            assert verdict.verdict is Verdict.CONFIRMED
            assert verdict.simple is True
            assert verdict.summary() == "SIMPLE"

    def test_two_cycle_not_simple(self, cycle2):
        verdict = is_simple(cycle2)
        assert verdict.verdict is Verdict.REFUTED
        assert verdict.disagreeability.verdict is Verdict.REFUTED
        assert "disagreeable" in verdict.summary()

    def test_two_components_not_simple(self, two_components):
        verdict = is_simple(two_components)
        assert verdict.verdict is Verdict.REFUTED
        assert verdict.cofinality.verdict is Verdict.REFUTED

    def test_loops_uv_not_simple(self, loops_uv):
        # one proper nonzero gauge-invariant ideal exists, so not simple
        assert is_simple(loops_uv).verdict is Verdict.REFUTED


class TestTransfer:
    def test_verdicts_survive_merging(self, fixture_graphs):
        for name, g in fixture_graphs.items():
            merged = merge(g).graph
            cof_e = is_strongly_cofinal(g).verdict
            cof_f = is_strongly_cofinal(merged).verdict
            assert cof_e == cof_f, name
            dis_e = is_disagreeable(g).verdict
            dis_f = is_disagreeable(merged).verdict
            if Verdict.UNKNOWN not in (dis_e, dis_f):
                assert dis_e == dis_f, name
            simple_e = is_simple(g).verdict
            simple_f = is_simple(merged).verdict
            if Verdict.UNKNOWN not in (simple_e, simple_f):
                assert simple_e == simple_f, name

    def test_verdicts_survive_merging_corpus(self, wlr_corpus):
        for g, _ in wlr_corpus[:25]:
            merged = merge(g).graph
            assert (
                is_strongly_cofinal(g).verdict
                == is_strongly_cofinal(merged).verdict
            ), g.to_dsl()
            dis_e = is_disagreeable(g).verdict
            dis_f = is_disagreeable(merged).verdict
            if Verdict.UNKNOWN not in (dis_e, dis_f):
                assert dis_e == dis_f, g.to_dsl()
