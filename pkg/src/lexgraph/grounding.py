"""Learnability closure, grounding-set tests, and learning order.

A word is learnable from a ground set U when it is in U or all of its
predecessors (defining words) are learnable. U grounds the whole graph
exactly when the subgraph induced outside U is acyclic, i.e. U is a
feedback vertex set; both checks are provided and must always agree.
"""

from __future__ import annotations

import heapq
from pathlib import Path
from typing import Iterable

from .graph import DefGraph


def load_ground_set(path: str | Path) -> frozenset[str]:
    """Read a ground-set file: one `lemma#pos` word id per line."""
    words = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


class UngroundedCircuitError(ValueError):
    """A learning order was requested from a non-grounding set."""

    def __init__(self, witness: tuple[str, ...]):
        super().__init__(f"ungrounded circuit: {' -> '.join(witness)}")
        self.witness = witness


def learnable_closure(g: DefGraph, u: Iterable[str]) -> set[str]:
    """Maximal set of words learnable from ``u``.

    Worklist algorithm: a vertex outside u becomes learnable when its last
    unlearnable predecessor becomes learnable. Vertices with no predecessors
    are vacuously learnable.
    """
    ground = set(u)
    learnable = set(ground)
    # Distinct-predecessor counts, with ground predecessors pre-subtracted;
    # ground vertices themselves never enter the worklist.
    remaining = {}
    queue = []
    for v in g.vertices:
        if v in ground:
            continue
        missing = sum(1 for p in g.pred[v] if p not in ground)
        remaining[v] = missing
        if missing == 0:
            learnable.add(v)
            queue.append(v)
    while queue:
        v = queue.pop()
        for w in g.succ[v]:
            if w in learnable or w not in remaining:
                continue
            remaining[w] -= 1
            if remaining[w] == 0:
                learnable.add(w)
                queue.append(w)
    return learnable


def is_grounding_set(g: DefGraph, u: Iterable[str]) -> bool:
    return len(learnable_closure(g, u)) == len(g.vertices)


def is_feedback_vertex_set(g: DefGraph, u: Iterable[str]) -> bool:
    """True iff the subgraph induced on V minus u is acyclic."""
    return not _residual_cyclic_part(g, set(u))


def _residual_cyclic_part(g: DefGraph, u: set[str]) -> set[str]:
    """Vertices of V - u left over by Kahn's algorithm (empty iff acyclic)."""
    indeg = {}
    for v in g.vertices:
        if v in u:
            continue
        indeg[v] = sum(1 for p in g.pred[v] if p not in u)
    queue = [v for v, d in indeg.items() if d == 0]
    removed: set[str] = set()
    while queue:
        v = queue.pop()
        removed.add(v)
        for w in g.succ[v]:
            if w in u or w not in indeg:
                continue
            # A self-arc keeps its vertex pinned at indeg >= 1 forever.
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return {v for v in indeg if v not in removed}


def find_uncovered_circuit(g: DefGraph, u: set[str]) -> tuple[str, ...] | None:
    """One circuit avoiding ``u``, or None when u is a feedback vertex set."""
    remaining = _residual_cyclic_part(g, u)
    if not remaining:
        return None
    # Every remaining vertex has an in-arc from the remaining set, so
    # walking predecessors must revisit a vertex, closing a circuit.
    start = min(remaining)
    path = [start]
    position = {start: 0}
    current = start
    while True:
        current = min(p for p in g.pred[current] if p in remaining)
        if current in position:
            cycle = path[position[current]:]
            cycle.reverse()  # predecessor walk records the circuit backwards
            pivot = cycle.index(min(cycle))
            return tuple(cycle[pivot:] + cycle[:pivot])
        position[current] = len(path)
        path.append(current)


def learning_order(g: DefGraph, u: Iterable[str]) -> list[str]:
    """A sequence covering V - u where each word follows all its definers.

    Deterministic: among simultaneously-available words the smallest vertex
    id comes first. Raises UngroundedCircuitError with a witness circuit if
    u is not a grounding set.
    """
    ground = set(u)
    indeg = {}
    for v in g.vertices:
        if v in ground:
            continue
        indeg[v] = sum(1 for p in g.pred[v] if p not in ground)
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order: list[str] = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in g.succ[v]:
            if w in ground or w not in indeg:
                continue
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != len(indeg):
        witness = find_uncovered_circuit(g, ground)
        assert witness is not None
        raise UngroundedCircuitError(witness)
    return order
