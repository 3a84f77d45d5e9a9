import io
import random

import pytest
from hypothesis import given, settings, strategies as st

from lexgraph.graph import DefGraph, build_graph, condense, export_edges, scc
from lexgraph.lexicon import LexEntry, Lexicon, parse_lexicon

from conftest import G3_ARCS, G3_JSONL, G3_VERTICES, mk_graph, random_digraph, w
from oracle import has_cycle, mutual_reach_components


class TestBuild:
    def test_two_cycle(self):
        lex = Lexicon([
            LexEntry("a", "noun", 1, ("b",)),
            LexEntry("b", "noun", 1, ("a",)),
        ])
        g = build_graph(lex)
        assert set(g.vertices) == {w("a"), w("b")}
        assert set(g.arcs()) == {(w("b"), w("a")), (w("a"), w("b"))}

    def test_duplicate_tokens_collapse_to_one_arc(self):
        lex = Lexicon([
            LexEntry("a", "noun", 1, ("b", "b")),
            LexEntry("b", "noun", 1, ("a",)),
        ])
        g = build_graph(lex)
        assert g.arc_count() == 2

    def test_g3_fixture(self, g3):
        assert g3.vertices == G3_VERTICES
        assert set(g3.arcs()) == G3_ARCS

    def test_self_arc_kept(self):
        lex = Lexicon([LexEntry("a", "noun", 1, ("a",))])
        g = build_graph(lex)
        assert set(g.arcs()) == {(w("a"), w("a"))}

    def test_unresolved_token_is_internal_error(self):
        lex = Lexicon([LexEntry("a", "noun", 1, ("ghost",))])
        with pytest.raises(RuntimeError, match="not closed"):
            build_graph(lex)

    def test_pos_disambiguation_uses_earliest_record(self):
        lex = Lexicon([
            LexEntry("bank", "noun", 1, ("bank",)),
            LexEntry("bank", "verb", 1, ("bank",)),
        ])
        g = build_graph(lex)
        assert (w("bank"), w("bank")) in set(g.arcs())
        assert ("bank#verb", "bank#verb") not in set(g.arcs())


class TestScc:
    def test_g3_components(self, g3):
        got = {frozenset(c) for c in scc(g3)}
        assert got == {
            frozenset({w("a"), w("b"), w("c")}),
            frozenset({w("d"), w("e")}),
            frozenset({w("f")}),
        }

    def test_acyclic_chain_singletons(self):
        g = mk_graph([("u", "v"), ("v", "w")])
        assert sorted(sorted(c) for c in scc(g)) == [["u"], ["v"], ["w"]]

    def test_self_arc_singleton(self):
        g = mk_graph([("v", "v")])
        assert [list(c) for c in scc(g)] == [["v"]]

    def test_matches_transitive_closure_oracle(self):
        rng = random.Random(1234)
        for _ in range(60):
            g = random_digraph(rng, rng.randint(1, 50), rng.uniform(0.01, 0.2))
            assert {frozenset(c) for c in scc(g)} == mutual_reach_components(g)

    def test_deterministic_component_ids(self, g3):
        again = [list(c) for c in scc(g3)]
        assert [list(c) for c in scc(g3)] == again


class TestCondense:
    def test_g3(self, g3):
        cond = condense(g3)
        members = {frozenset(m) for m in cond.members}
        assert members == {
            frozenset({w("a"), w("b"), w("c")}),
            frozenset({w("d"), w("e")}),
            frozenset({w("f")}),
        }
        node = {frozenset(m): i for i, m in enumerate(cond.members)}
        abc = node[frozenset({w("a"), w("b"), w("c")})]
        de = node[frozenset({w("d"), w("e")})]
        f = node[frozenset({w("f")})]
        assert set(cond.arcs()) == {(abc, de), (de, f)}
        assert cond.sources == {abc}

    def test_strongly_connected_graph(self):
        g = mk_graph([("a", "b"), ("b", "a")])
        cond = condense(g)
        assert len(cond) == 1
        assert not set(cond.arcs())

    def test_dag_isomorphic_to_input(self):
        g = mk_graph([("a", "b"), ("b", "c"), ("a", "c")])
        cond = condense(g)
        assert len(cond) == 3
        relabel = {i: m[0] for i, m in enumerate(cond.members)}
        assert {(relabel[x], relabel[y]) for x, y in cond.arcs()} == set(g.arcs())

    def test_condensation_is_acyclic(self):
        rng = random.Random(77)
        for _ in range(40):
            g = random_digraph(rng, rng.randint(1, 30), rng.uniform(0.02, 0.3))
            cond = condense(g)
            vertices = [str(i) for i in range(len(cond))]
            succ = {str(i): {str(j) for j in cond.succ[i]} for i in range(len(cond))}
            assert not has_cycle(vertices, succ)

    def test_members_partition_vertices(self):
        rng = random.Random(9)
        g = random_digraph(rng, 25, 0.15)
        cond = condense(g)
        flattened = [v for m in cond.members for v in m]
        assert sorted(flattened) == sorted(g.vertices)


class TestDeterminism:
    def test_rebuild_identical(self):
        first = build_graph(parse_lexicon(io.StringIO(G3_JSONL)))
        second = build_graph(parse_lexicon(io.StringIO(G3_JSONL)))
        assert first.vertices == second.vertices
        assert list(first.arcs()) == list(second.arcs())

    def test_export_edges_stable(self, g3):
        text = export_edges(g3)
        assert text == export_edges(g3)
        assert text.splitlines() == sorted(text.splitlines())
        assert f"{w('c')}\t{w('a')}" in text.splitlines()


@given(st.integers(min_value=0, max_value=2**31), st.integers(min_value=1, max_value=16))
@settings(max_examples=40, deadline=None)
def test_scc_oracle_property(seed, n):
    rng = random.Random(seed)
    g = random_digraph(rng, n, rng.uniform(0.0, 0.4))
    assert {frozenset(c) for c in scc(g)} == mutual_reach_components(g)


@given(st.integers(min_value=0, max_value=2**31))
@settings(max_examples=30, deadline=None)
def test_closed_lexicon_graph_has_incoming_arcs_everywhere(seed):
    from lexgraph.lexicon import LexEntry, Lexicon, NoDefinedWordsError, drop_undefined
    rng = random.Random(seed)
    size = rng.randint(1, 20)
    lemmas = [f"t{i}" for i in range(size)]
    entries = [
        LexEntry(lemma, "noun", 1,
                 tuple(rng.sample(lemmas, rng.randint(1, min(3, size)))))
        for lemma in lemmas
    ]
    try:
        lex = drop_undefined(Lexicon(entries))
    except NoDefinedWordsError:
        return
    g = build_graph(lex)
    for v in g.vertices:
        assert len(g.pred[v]) >= 1
