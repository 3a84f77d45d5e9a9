"""Independent test oracles: brute force, enumeration, transitive closure.

Nothing here shares code with the package's algorithms: cycle detection is
a colored DFS, reachability is boolean-matrix closure via numpy, and the
feedback-vertex-set optimum is an exhaustive subset search.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np


def has_cycle(vertices: list[str], succ: dict[str, set[str]]) -> bool:
    """Colored-DFS cycle check (independent of the package's Kahn/Tarjan)."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in vertices}
    for root in vertices:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(sorted(succ.get(root, ()))))]
        color[root] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for child in it:
                if child not in color:
                    continue
                if color[child] == GRAY:
                    return True
                if color[child] == WHITE:
                    color[child] = GRAY
                    stack.append((child, iter(sorted(succ.get(child, ())))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return False


def subgraph_acyclic(g, removed: set[str]) -> bool:
    vertices = [v for v in g.vertices if v not in removed]
    succ = {v: {w for w in g.succ[v] if w not in removed} for v in vertices}
    return not has_cycle(vertices, succ)


def brute_min_fvs_size(g) -> int:
    """Exhaustive subset search, smallest size first."""
    vertices = list(g.vertices)
    for size in range(len(vertices) + 1):
        for subset in combinations(vertices, size):
            if subgraph_acyclic(g, set(subset)):
                return size
    raise AssertionError("unreachable: the full vertex set is always an FVS")


def brute_all_min_fvs(g) -> list[frozenset[str]]:
    vertices = list(g.vertices)
    for size in range(len(vertices) + 1):
        optima = [
            frozenset(subset)
            for subset in combinations(vertices, size)
            if subgraph_acyclic(g, set(subset))
        ]
        if optima:
            return optima
    raise AssertionError("unreachable")


def closure_matrix(g) -> np.ndarray:
    """Boolean matrix of length>=1 reachability."""
    n = len(g.vertices)
    index = {v: i for i, v in enumerate(g.vertices)}
    reach = np.zeros((n, n), dtype=bool)
    for u in g.vertices:
        for w in g.succ[u]:
            reach[index[u], index[w]] = True
    result = reach.copy()
    for _ in range(max(1, n.bit_length())):
        expanded = result | (result @ result)
        if (expanded == result).all():
            break
        result = expanded
    return result


def mutual_reach_components(g) -> set[frozenset[str]]:
    """SCCs from transitive closure: same component iff paths both ways."""
    reach = closure_matrix(g)
    n = len(g.vertices)
    assigned = [False] * n
    components = set()
    for i in range(n):
        if assigned[i]:
            continue
        members = [i] + [
            j for j in range(i + 1, n)
            if reach[i, j] and reach[j, i] and not assigned[j]
        ]
        for j in members:
            assigned[j] = True
        components.add(frozenset(g.vertices[j] for j in members))
    return components


def kernel_by_circuit_reach(g) -> set[str]:
    """Words with a directed path (possibly empty) to some circuit."""
    reach = closure_matrix(g)
    on_circuit = reach.diagonal()
    can_reach = on_circuit | (reach & on_circuit[None, :]).any(axis=1)
    return {v for i, v in enumerate(g.vertices) if can_reach[i]}
