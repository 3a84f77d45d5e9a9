"""Definitional digraph: arcs run from defining words to defined words.

Vertices are ``lemma#pos`` strings. The graph is immutable once built;
adjacency is stored in deterministic (insertion) order so that every
downstream computation is reproducible from the same input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .lexicon import Lexicon, resolve_token


def word_id(lemma: str, pos: str) -> str:
    return f"{lemma}#{pos}"


def split_word_id(word: str) -> tuple[str, str]:
    lemma, _, pos = word.rpartition("#")
    return (lemma, pos) if lemma else (word, "")


class DefGraph:
    """Immutable digraph with ordered vertex list and ordered adjacency."""

    __slots__ = ("vertices", "succ", "pred", "_index")

    def __init__(self, vertices: Iterable[str], arcs: Iterable[tuple[str, str]]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        vertex_set = set(self.vertices)
        if len(vertex_set) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        succ: dict[str, list[str]] = {v: [] for v in self.vertices}
        pred: dict[str, list[str]] = {v: [] for v in self.vertices}
        seen: set[tuple[str, str]] = set()
        for u, v in arcs:
            if u not in vertex_set or v not in vertex_set:
                raise ValueError(f"arc ({u!r}, {v!r}) references unknown vertex")
            if (u, v) in seen:
                continue
            seen.add((u, v))
            succ[u].append(v)
            pred[v].append(u)
        self.succ: dict[str, tuple[str, ...]] = {v: tuple(s) for v, s in succ.items()}
        self.pred: dict[str, tuple[str, ...]] = {v: tuple(p) for v, p in pred.items()}
        self._index = {v: i for i, v in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: str) -> bool:
        return v in self._index

    def arcs(self) -> Iterator[tuple[str, str]]:
        for u in self.vertices:
            for v in self.succ[u]:
                yield (u, v)

    def arc_count(self) -> int:
        return sum(len(s) for s in self.succ.values())

    def successors(self, v: str) -> tuple[str, ...]:
        return self.succ[v]

    def predecessors(self, v: str) -> tuple[str, ...]:
        return self.pred[v]


def build_graph(lex: Lexicon) -> DefGraph:
    """One vertex per entry; one arc per distinct (defining -> defined) pair.

    Requires a closed lexicon (drop_undefined applied); an unresolved
    definition token is a precondition violation and raises RuntimeError.
    Self-arcs are kept: a word whose definition contains its own lemma is a
    genuine length-1 circuit.
    """
    vertices = [word_id(e.lemma, e.pos) for e in lex.entries]
    arcs: list[tuple[str, str]] = []
    for entry in lex.entries:
        target = word_id(entry.lemma, entry.pos)
        for token in entry.definition:
            source_entry = resolve_token(lex, token)
            if source_entry is None:
                raise RuntimeError(
                    f"unresolved token {token!r} in definition of {target};"
                    " lexicon is not closed"
                )
            arcs.append((word_id(source_entry.lemma, source_entry.pos), target))
    return DefGraph(vertices, arcs)


def scc(g: DefGraph) -> list[list[str]]:
    """Strongly connected components via iterative Tarjan.

    Components are emitted in reverse topological order of the condensation;
    members keep stack order. Both are deterministic given the input order.
    """
    index_of: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[list[str]] = []
    counter = 0

    for root in g.vertices:
        if root in index_of:
            continue
        # Explicit DFS stack of (vertex, iterator position).
        work: list[tuple[str, int]] = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index_of[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recursed = False
            succ = g.succ[v]
            for j in range(i, len(succ)):
                w = succ[j]
                if w not in index_of:
                    work.append((v, j + 1))
                    work.append((w, 0))
                    recursed = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index_of[w])
            if recursed:
                continue
            if lowlink[v] == index_of[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                components.append(component)
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    return components


@dataclass
class Condensation:
    """Acyclic quotient graph: one node per SCC."""

    members: list[tuple[str, ...]]          # node id -> SCC members
    node_of: dict[str, int]                 # vertex -> node id
    succ: dict[int, tuple[int, ...]]
    pred: dict[int, tuple[int, ...]]
    sources: frozenset[int]                 # nodes with in-degree 0

    def __len__(self) -> int:
        return len(self.members)

    def arcs(self) -> Iterator[tuple[int, int]]:
        for x in range(len(self.members)):
            for y in self.succ[x]:
                yield (x, y)


def condense(g: DefGraph) -> Condensation:
    components = scc(g)
    node_of = {v: i for i, component in enumerate(components) for v in component}
    succ: dict[int, list[int]] = {i: [] for i in range(len(components))}
    pred: dict[int, list[int]] = {i: [] for i in range(len(components))}
    seen: set[tuple[int, int]] = set()
    for u, v in g.arcs():
        x, y = node_of[u], node_of[v]
        if x == y or (x, y) in seen:
            continue
        seen.add((x, y))
        succ[x].append(y)
        pred[y].append(x)
    sources = frozenset(i for i in range(len(components)) if not pred[i])
    return Condensation(
        members=[tuple(c) for c in components],
        node_of=node_of,
        succ={i: tuple(s) for i, s in succ.items()},
        pred={i: tuple(p) for i, p in pred.items()},
        sources=sources,
    )


def export_edges(g: DefGraph) -> str:
    """Edge-list text: one `u<TAB>v` line per arc, sorted for diff-stability."""
    return "".join(f"{u}\t{v}\n" for u, v in sorted(g.arcs()))
