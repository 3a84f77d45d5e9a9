import io
import random

import pytest

from lexgraph.graph import DefGraph, build_graph
from lexgraph.lexicon import parse_lexicon

# Six-entry fixture used across the suite:
#   a := [c]; b := [a]; c := [b]; d := [c, e]; e := [d]; f := [d]
# Circuits: the 3-cycle a->b->c->a and the 2-cycle d<->e; f dangles off d.
G3_JSONL = "\n".join(
    '{"lemma":"%s","pos":"noun","definition":%s}' % (lemma, tokens)
    for lemma, tokens in [
        ("a", '["c"]'),
        ("b", '["a"]'),
        ("c", '["b"]'),
        ("d", '["c","e"]'),
        ("e", '["d"]'),
        ("f", '["d"]'),
    ]
) + "\n"


def w(letter: str) -> str:
    return f"{letter}#noun"


G3_VERTICES = tuple(w(x) for x in "abcdef")
G3_ARCS = {
    (w("c"), w("a")), (w("a"), w("b")), (w("b"), w("c")),
    (w("c"), w("d")), (w("e"), w("d")), (w("d"), w("e")), (w("d"), w("f")),
}


@pytest.fixture
def g3_lexicon():
    return parse_lexicon(io.StringIO(G3_JSONL), format="jsonl")


@pytest.fixture
def g3(g3_lexicon):
    return build_graph(g3_lexicon)


def mk_graph(arcs, vertices=None) -> DefGraph:
    """DefGraph from bare arc pairs; vertex order follows first appearance."""
    if vertices is None:
        seen = []
        for u, v in arcs:
            for x in (u, v):
                if x not in seen:
                    seen.append(x)
        vertices = seen
    return DefGraph(vertices, arcs)


def random_digraph(
    rng: random.Random,
    n: int,
    arc_probability: float,
    self_loops: bool = True,
) -> DefGraph:
    vertices = [f"v{i:03d}" for i in range(n)]
    arcs = []
    for u in vertices:
        for v in vertices:
            if u == v and not self_loops:
                continue
            if rng.random() < arc_probability:
                arcs.append((u, v))
    return DefGraph(vertices, arcs)
