"""Minimum feedback vertex sets (minimal grounding sets).

Exact solving uses a lazy circuit-covering scheme: keep a family of known
circuits (seeded with the shortest ones), compute an optimal hitting set of
the family by branch and bound, and whenever the hitting set leaves a cycle
in the graph, add the shortest surviving circuits as new covering
constraints. Since every circuit family is a relaxation, the first hitting
set that is itself a feedback vertex set is provably optimal. Components
are solved independently: every circuit lives inside one SCC.

Everything here is deterministic given (input, seed): all choice points
iterate in sorted order, randomness only enters through seeded tie-breaks.
"""

from __future__ import annotations

import heapq
import logging
import math
import random
import time
from dataclasses import dataclass, field

from .graph import DefGraph
from .grounding import is_feedback_vertex_set
from .structure import StructureLabels

log = logging.getLogger(__name__)

_DEADLINE_CHECK_EVERY = 256


class BudgetExceededError(RuntimeError):
    """Exact solve could not finish within the time budget."""


class _Expired(Exception):
    pass


@dataclass
class SolveStats:
    nodes_explored: int = 0
    circuits_generated: int = 0
    wall_time_s: float = 0.0

    def as_dict(self, include_wall_time: bool = False) -> dict:
        out = {
            "nodes_explored": self.nodes_explored,
            "circuits_generated": self.circuits_generated,
        }
        if include_wall_time:
            out["wall_time_s"] = self.wall_time_s
        return out


@dataclass
class MinSetResult:
    members: frozenset[str]
    status: str                     # "exact" | "heuristic"
    lower_bound: int
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def upper_bound(self) -> int:
        return len(self.members)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class Reduction:
    """Exactness-preserving preprocessing: optimum(g) = |forced| + optimum(graph).

    Vertex ids are preserved, so any feedback vertex set of the reduced
    graph, together with ``forced``, is a feedback vertex set of the
    original. ``excluded`` vertices are provably outside some optimum.
    """

    graph: DefGraph
    forced: frozenset[str]
    excluded: frozenset[str]


# -- mutable adjacency helpers ------------------------------------------------

def _mutable(g: DefGraph) -> tuple[set[str], dict[str, set[str]], dict[str, set[str]]]:
    vertices = set(g.vertices)
    succ = {v: set(g.succ[v]) for v in g.vertices}
    pred = {v: set(g.pred[v]) for v in g.vertices}
    return vertices, succ, pred


def _remove_vertex(v, vertices, succ, pred):
    for p in pred[v]:
        if p != v:
            succ[p].discard(v)
    for w in succ[v]:
        if w != v:
            pred[w].discard(v)
    del succ[v], pred[v]
    vertices.discard(v)


def _scc_partition(vertices: set[str], succ: dict[str, set[str]]) -> list[list[str]]:
    """Iterative Tarjan over a mutable subgraph (sorted iteration order)."""
    order = sorted(vertices)
    adjacency = {v: sorted(w for w in succ[v] if w in vertices) for v in order}
    index_of: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[list[str]] = []
    counter = 0
    for root in order:
        if root in index_of:
            continue
        work: list[tuple[str, int]] = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index_of[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recursed = False
            adj = adjacency[v]
            for j in range(i, len(adj)):
                w = adj[j]
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


def _cyclic_components(
    vertices: set[str], succ: dict[str, set[str]]
) -> list[list[str]]:
    """SCCs that contain at least one circuit, smallest first."""
    found = []
    for component in _scc_partition(vertices, succ):
        if len(component) > 1 or component[0] in succ[component[0]]:
            found.append(sorted(component))
    found.sort(key=lambda c: (len(c), c[0]))
    return found


def _cyclic_vertices(vertices: set[str], succ: dict[str, set[str]]) -> set[str]:
    """Vertices lying on at least one circuit of the current subgraph."""
    cyclic: set[str] = set()
    for component in _cyclic_components(vertices, succ):
        cyclic.update(component)
    return cyclic


# -- reductions ----------------------------------------------------------------

def reduce_graph(g: DefGraph, bypass: bool = True) -> Reduction:
    """Shrink the instance without changing the optimum size.

    Rules, applied to a fixpoint: delete vertices on no circuit (this covers
    all non-kernel vertices); force self-loop vertices into the solution and
    delete them; with ``bypass`` enabled, contract vertices of in-degree 1
    or out-degree 1 (every circuit through them passes their sole
    neighbour). Bypass contraction may discard some optima, so enumeration
    runs with ``bypass=False``.
    """
    vertices, succ, pred = _mutable(g)
    forced: set[str] = set()
    excluded: set[str] = set()

    changed = True
    while changed:
        changed = False
        cyclic = _cyclic_vertices(vertices, succ)
        for v in sorted(vertices - cyclic):
            excluded.add(v)
            _remove_vertex(v, vertices, succ, pred)
            changed = True
        for v in sorted(vertices):
            if v in succ[v]:
                forced.add(v)
                _remove_vertex(v, vertices, succ, pred)
                changed = True
        if not bypass:
            continue
        for v in sorted(vertices):
            if v not in vertices or v in succ[v]:
                continue
            if len(pred[v]) == 1:
                (u,) = pred[v]
                targets = sorted(succ[v])
                _remove_vertex(v, vertices, succ, pred)
                for w in targets:
                    succ[u].add(w)
                    pred[w].add(u)
                excluded.add(v)
                changed = True
            elif len(succ[v]) == 1:
                (w,) = succ[v]
                sources = sorted(pred[v])
                _remove_vertex(v, vertices, succ, pred)
                for u in sources:
                    succ[u].add(w)
                    pred[w].add(u)
                excluded.add(v)
                changed = True

    order = sorted(vertices)
    arcs = [(u, w) for u in order for w in sorted(succ[u])]
    return Reduction(
        graph=DefGraph(order, arcs),
        forced=frozenset(forced),
        excluded=frozenset(excluded),
    )


# -- bounds --------------------------------------------------------------------

_SWEEP_WORK_LIMIT = 20_000_000


def _peel_acyclic_fringe(vertices, succ, pred, seeds=None):
    """Delete source/sink cascades (vertices on no circuit of the subgraph)."""
    if seeds is None:
        queue = [v for v in vertices if not succ[v] or not pred[v]]
    else:
        queue = [v for v in seeds if v in vertices and (not succ[v] or not pred[v])]
    while queue:
        v = queue.pop()
        if v not in vertices or (succ[v] and pred[v]):
            continue
        neighbors = (succ[v] | pred[v]) - {v}
        _remove_vertex(v, vertices, succ, pred)
        for w in neighbors:
            if w in vertices and (not succ[w] or not pred[w]):
                queue.append(w)


def greedy_fvs(g: DefGraph, seed: int = 0) -> set[str]:
    """Valid feedback vertex set by highest in*out degree, seeded tie-break.

    Picks live in a lazy max-heap (degrees only shrink, so stale entries are
    re-pushed with their current product on pop); after each pick the
    acyclic fringe is peeled away. Runs in roughly O(E log V).
    """
    rng = random.Random(seed)
    vertices, succ, pred = _mutable(g)
    tie_order = sorted(vertices)
    rng.shuffle(tie_order)
    tie = {v: i for i, v in enumerate(tie_order)}
    fvs: set[str] = set()

    _peel_acyclic_fringe(vertices, succ, pred)
    heap = [(-len(succ[v]) * len(pred[v]), tie[v], v) for v in vertices]
    heapq.heapify(heap)
    while vertices:
        pick = None
        while heap:
            negative, order, v = heapq.heappop(heap)
            if v not in vertices:
                continue
            product = len(succ[v]) * len(pred[v])
            if -product != negative:
                heapq.heappush(heap, (-product, order, v))
                continue
            pick = v
            break
        if pick is None:
            break
        fvs.add(pick)
        neighbors = (succ[pick] | pred[pick]) - {pick}
        _remove_vertex(pick, vertices, succ, pred)
        _peel_acyclic_fringe(vertices, succ, pred, seeds=neighbors)
    # Shed redundant picks so the upper bound is as tight as possible
    # (skipped when the instance is too large for the quadratic sweep).
    if fvs and len(fvs) * (len(g.vertices) + g.arc_count()) <= _SWEEP_WORK_LIMIT:
        for v in sorted(fvs):
            if is_feedback_vertex_set(g, fvs - {v}):
                fvs.discard(v)
    return fvs


def _shortest_circuit(
    vertices: set[str], succ: dict[str, set[str]], starts: list[str] | None = None
) -> tuple[str, ...] | None:
    """Shortest circuit in the subgraph, by BFS from each vertex."""
    for v in sorted(vertices):
        if v in succ[v]:
            return (v,)
    best: tuple[str, ...] | None = None
    order = starts if starts is not None else sorted(vertices)
    adjacency = {v: sorted(w for w in succ[v] if w in vertices) for v in vertices}
    for start in order:
        if best is not None and len(best) == 2:
            break
        parent: dict[str, str] = {}
        dist = {start: 0}
        frontier = [start]
        limit = (len(best) - 1) if best is not None else None
        while frontier:
            next_frontier = []
            for u in frontier:
                if limit is not None and dist[u] + 1 >= limit + 1:
                    continue
                for w in adjacency[u]:
                    if w == start:
                        length = dist[u] + 1
                        if best is None or length < len(best):
                            circuit = [u]
                            while circuit[-1] != start:
                                circuit.append(parent[circuit[-1]])
                            circuit.reverse()
                            best = tuple(circuit)
                            limit = len(best) - 1
                    elif w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        next_frontier.append(w)
            frontier = next_frontier
    return best


def _pack_circuits(
    vertices: set[str],
    succ: dict[str, set[str]],
    pred: dict[str, set[str]],
    rng: random.Random | None = None,
) -> list[tuple[str, ...]]:
    """Greedy vertex-disjoint circuit packing, shortest circuits first.

    Mutates the given adjacency (callers pass copies).
    """
    packed = []
    while True:
        starts = sorted(vertices)
        if rng is not None:
            rng.shuffle(starts)
        circuit = _shortest_circuit(vertices, succ, starts=starts)
        if circuit is None:
            return packed
        packed.append(circuit)
        for v in circuit:
            _remove_vertex(v, vertices, succ, pred)


_EXACT_PACK_LIMIT = 600


def _shortest_circuit_through(
    vertices: set[str], succ: dict[str, set[str]], start: str
) -> tuple[str, ...]:
    """Shortest circuit through ``start``; it must lie on one (cyclic SCC)."""
    if start in succ[start]:
        return (start,)
    parent: dict[str, str] = {}
    dist = {start: 0}
    frontier = [start]
    while frontier:
        next_frontier = []
        for u in frontier:
            for w in sorted(succ[u]):
                if w not in vertices:
                    continue
                if w == start:
                    circuit = [u]
                    while circuit[-1] != start:
                        circuit.append(parent[circuit[-1]])
                    circuit.reverse()
                    return tuple(circuit)
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    next_frontier.append(w)
        frontier = next_frontier
    raise AssertionError(f"{start} lies on no circuit")


def pack_disjoint_circuits(g: DefGraph, seed: int = 0) -> int:
    """Lower bound: count of greedily packed vertex-disjoint circuits.

    Small graphs get the full shortest-circuits-first packing; beyond
    _EXACT_PACK_LIMIT vertices a linear-time fallback packs self-loops,
    2-cycles, and one circuit per remaining cyclic component.
    """
    rng = random.Random(seed)
    vertices, succ, pred = _mutable(g)
    if len(vertices) <= _EXACT_PACK_LIMIT:
        return len(_pack_circuits(vertices, succ, pred, rng))
    count = 0
    for v in sorted(vertices):
        if v in succ[v]:
            count += 1
            _remove_vertex(v, vertices, succ, pred)
    # Depth- and work-capped BFS per start vertex: packs short circuits
    # without the quadratic full scan. The per-start cap shrinks with the
    # instance so total work stays bounded (and deterministic).
    expansion_cap = max(200, 2_000_000 // max(len(vertices), 1))
    order = sorted(vertices)
    rng.shuffle(order)
    for start in order:
        if start not in vertices:
            continue
        circuit = _bounded_circuit_through(vertices, succ, start,
                                           max_len=5, expansion_cap=expansion_cap)
        if circuit is not None:
            count += 1
            for v in circuit:
                _remove_vertex(v, vertices, succ, pred)
    count += len(_cyclic_components(vertices, succ))
    return count


def _bounded_circuit_through(
    vertices: set[str],
    succ: dict[str, set[str]],
    start: str,
    max_len: int,
    expansion_cap: int,
) -> tuple[str, ...] | None:
    """Circuit through ``start`` of length <= max_len, within a work cap."""
    parent: dict[str, str] = {}
    dist = {start: 0}
    frontier = [start]
    expansions = 0
    while frontier:
        next_frontier = []
        for u in frontier:
            if dist[u] + 1 > max_len:
                continue
            for w in sorted(succ[u]):
                if w not in vertices:
                    continue
                if w == start:
                    circuit = [u]
                    while circuit[-1] != start:
                        circuit.append(parent[circuit[-1]])
                    circuit.reverse()
                    return tuple(circuit)
                if w not in dist and dist[u] + 1 < max_len:
                    expansions += 1
                    if expansions > expansion_cap:
                        return None
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    next_frontier.append(w)
        frontier = next_frontier
    return None


# -- exact search ----------------------------------------------------------------

def _sorted_family(family: list[frozenset[str]]) -> list[frozenset[str]]:
    return sorted(family, key=lambda c: (len(c), tuple(sorted(c))))


class _CoveringSearch:
    """Branch-and-cut over binary vertex choices for one subgraph.

    A single search tree covers the known circuit family; whenever a leaf
    covers every known circuit, separation either certifies it as a true
    feedback vertex set or adds the shortest surviving circuits as new
    constraints and the search continues. Lower bounds come from disjoint
    packings of the uncovered constraints (integral and fractional).
    """

    def __init__(self, sub: DefGraph, family: list[frozenset[str]],
                 deadline: float, stats: SolveStats):
        self.sub = sub
        self.family = _sorted_family(family)
        self.deadline = deadline
        self.stats = stats
        self.best: frozenset[str] | None = None
        self.best_size = len(sub.vertices) + 1
        # Enumeration mode: accept the first cover of size <= target that is
        # not excluded, instead of optimizing.
        self.target: int | None = None
        self.exclude: set[frozenset[str]] = set()
        self.found: frozenset[str] | None = None

    def minimize(self, incumbent: frozenset[str]) -> frozenset[str]:
        """Optimal cover; ``incumbent`` must be a valid feedback vertex set."""
        self.best = incumbent
        self.best_size = len(incumbent)
        self._search()
        assert self.best is not None
        return frozenset(sorted(self.best))

    def find_with_cap(
        self, target: int, exclude: set[frozenset[str]]
    ) -> frozenset[str] | None:
        """First true cover of size <= target outside ``exclude``, or None."""
        self.target = target
        self.exclude = exclude
        self.best = None
        self.best_size = target + 1
        self.found = None
        self._search()
        return self.found

    def _bound(self, chosen: set[str], banned: set[str]) -> tuple:
        """(lower bound over uncovered constraints, branch circuit, counts).

        Returns (None, None, None) when some constraint is unsatisfiable.
        """
        packing = 0
        used: set[str] = set()
        capacity: dict[str, float] = {}
        fractional = 0.0
        branch_available: list[str] | None = None
        counts: dict[str, int] = {}
        for circuit in self.family:
            if circuit & chosen:
                continue
            available = circuit - banned
            if not available:
                return None, None, None
            for v in available:
                counts[v] = counts.get(v, 0) + 1
            if not (circuit & used):
                used |= circuit
                packing += 1
            share = min(capacity.setdefault(v, 1.0) for v in available)
            if share > 0:
                fractional += share
                for v in available:
                    capacity[v] -= share
            if branch_available is None or len(available) < len(branch_available):
                branch_available = sorted(available)
        lower = max(packing, math.ceil(fractional - 1e-9))
        return lower, branch_available, counts

    def _search(self) -> None:
        """Explicit-stack depth-first branch and bound (covers can be large,
        so recursion depth is not an option).

        Frame layout: [chosen, banned, children, next_index]. ``banned``
        accumulates the already-branched vertices so each cover is visited
        exactly once; children copy it at push time.
        """
        stack: list[list] = [[set(), set(), None, 0]]
        while stack:
            frame = stack[-1]
            chosen, banned, children, index = frame
            if children is None:
                self.stats.nodes_explored += 1
                if self.stats.nodes_explored % _DEADLINE_CHECK_EVERY == 0:
                    if time.monotonic() > self.deadline:
                        raise _Expired
                lower, branch_available, counts = self._bound(chosen, banned)
                if lower is None or len(chosen) + lower >= self.best_size:
                    stack.pop()
                    continue
                if branch_available is None:
                    if self._covering_leaf(chosen):
                        # New cuts arrived; rescore this node with them.
                        continue
                    stack.pop()
                    continue
                # Try high-coverage vertices first: good covers prune hard.
                frame[2] = sorted(branch_available, key=lambda v: (-counts[v], v))
                frame[3] = 0
                continue
            if self.found is not None or index >= len(children):
                stack.pop()
                continue
            if index > 0:
                banned.add(children[index - 1])
            frame[3] = index + 1
            stack.append([chosen | {children[index]}, set(banned), None, 0])

    def _covering_leaf(self, chosen: set[str]) -> bool:
        """Handle a cover of the known family; True if new cuts were added."""
        circuits = _separate(self.sub, frozenset(chosen))
        if circuits:
            for circuit in circuits:
                self.family.append(frozenset(circuit))
                self.stats.circuits_generated += 1
            self.family = _sorted_family(self.family)
            return True
        candidate = frozenset(chosen)
        if self.target is not None:
            if len(candidate) <= self.target and candidate not in self.exclude:
                self.found = candidate
        elif len(candidate) < self.best_size:
            self.best = candidate
            self.best_size = len(candidate)
        return False


def _initial_family(rg: DefGraph, seed: int = 0) -> list[frozenset[str]]:
    """Self-loops, 2-cycles, and a shortest-first disjoint circuit packing."""
    family: dict[frozenset[str], None] = {}
    for u in rg.vertices:
        for v in rg.succ[u]:
            if v == u:
                family.setdefault(frozenset((u,)))
            elif u < v and u in rg.succ[v]:
                family.setdefault(frozenset((u, v)))
    vertices, succ, pred = _mutable(rg)
    if len(vertices) <= _EXACT_PACK_LIMIT:
        circuits = _pack_circuits(vertices, succ, pred, random.Random(seed))
    else:
        circuits = [
            _shortest_circuit_through(
                set(component),
                {v: succ[v] & set(component) for v in component},
                component[0],
            )
            for component in _cyclic_components(vertices, succ)
        ]
    for circuit in circuits:
        family.setdefault(frozenset(circuit))
    return list(family)


_EXACT_SEPARATE_LIMIT = 600


def _separate(rg: DefGraph, cover: frozenset[str]) -> list[tuple[str, ...]]:
    """Disjoint circuits of rg avoiding ``cover`` ([] if none).

    Small surviving components yield a full shortest-first packing; larger
    ones contribute one shortest circuit through their smallest vertex, so
    separation stays near-linear regardless of scale.
    """
    vertices = {v for v in rg.vertices if v not in cover}
    succ = {v: {w for w in rg.succ[v] if w in vertices} for v in vertices}
    circuits: list[tuple[str, ...]] = []
    for component in _cyclic_components(vertices, succ):
        inside = set(component)
        comp_succ = {v: succ[v] & inside for v in component}
        if len(component) <= _EXACT_SEPARATE_LIMIT:
            comp_pred: dict[str, set[str]] = {v: set() for v in component}
            for u in component:
                for w in comp_succ[u]:
                    comp_pred[w].add(u)
            circuits.extend(_pack_circuits(inside, comp_succ, comp_pred))
        else:
            circuits.append(
                _shortest_circuit_through(inside, comp_succ, component[0])
            )
    return circuits


def _component_subgraph(rg: DefGraph, members: list[str]) -> DefGraph:
    inside = set(members)
    arcs = [(u, w) for u in members for w in rg.succ[u] if w in inside]
    return DefGraph(members, arcs)


def _solve_component(
    sub: DefGraph, deadline: float, seed: int, stats: SolveStats
) -> frozenset[str]:
    """Exact optimum FVS of one strongly connected subgraph.

    Raises _Expired when the deadline passes before optimality is proven.
    """
    if time.monotonic() > deadline:
        raise _Expired
    upper_set = frozenset(sorted(greedy_fvs(sub, seed)))
    family = _initial_family(sub, seed)
    stats.circuits_generated += len(family)
    search = _CoveringSearch(sub, family, deadline, stats)
    return search.minimize(upper_set)


def solve_minset(
    g: DefGraph,
    budget: float = 60.0,
    mode: str = "auto",
    seed: int = 0,
) -> MinSetResult:
    """Minimum feedback vertex set, exactly or with honest bounds.

    ``mode="exact"`` raises BudgetExceededError when the budget expires;
    ``mode="auto"`` falls back to a heuristic result carrying the greedy
    upper bound and the packing lower bound.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if mode not in ("exact", "auto"):
        raise ValueError(f"mode must be 'exact' or 'auto', got {mode!r}")
    t0 = time.monotonic()
    deadline = t0 + budget
    stats = SolveStats()

    reduction = reduce_graph(g, bypass=True)
    members: set[str] = set(reduction.forced)
    lower = len(reduction.forced)
    rg = reduction.graph
    vertices, succ, _pred = _mutable(rg)
    components = _cyclic_components(vertices, succ)

    exact = True
    for position, component in enumerate(components):
        sub = _component_subgraph(rg, component)
        try:
            solved = _solve_component(sub, deadline, seed, stats)
            members |= solved
            lower += len(solved)
        except _Expired:
            if mode == "exact":
                raise BudgetExceededError(
                    f"exact solve exceeded budget of {budget:.3f}s"
                ) from None
            exact = False
            for remaining in components[position:]:
                sub = _component_subgraph(rg, remaining)
                members |= greedy_fvs(sub, seed)
                lower += pack_disjoint_circuits(sub, seed)
            log.warning("minset budget expired; returning heuristic bounds")
            break

    stats.wall_time_s = time.monotonic() - t0
    status = "exact" if exact else "heuristic"
    return MinSetResult(frozenset(members), status, lower, stats)


def enumerate_minsets(
    g: DefGraph,
    max_count: int,
    budget: float = 60.0,
    seed: int = 0,
) -> list[MinSetResult]:
    """Distinct optimum feedback vertex sets, up to ``max_count``.

    Re-solves with a no-good cut per previously found optimum. Requires the
    first exact optimum to fit in the budget; enumeration then continues
    until max_count sets, exhaustion, or budget expiry. Runs on the
    trim-only reduction: bypass contraction would hide some optima.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if max_count < 1:
        raise ValueError("max_count must be >= 1")
    t0 = time.monotonic()
    deadline = t0 + budget
    stats = SolveStats()

    reduction = reduce_graph(g, bypass=False)
    forced = set(reduction.forced)
    rg = reduction.graph
    if len(rg) == 0:
        stats.wall_time_s = time.monotonic() - t0
        return [MinSetResult(frozenset(forced), "exact", len(forced), stats)]

    family = _initial_family(rg, seed)
    stats.circuits_generated = len(family)
    search = _CoveringSearch(rg, family, deadline, stats)
    try:
        first = search.minimize(frozenset(sorted(greedy_fvs(rg, seed))))
    except _Expired:
        raise BudgetExceededError(
            f"no exact optimum within budget of {budget:.3f}s"
        ) from None
    optimum = len(first)
    found: list[frozenset[str]] = [first]
    exclude: set[frozenset[str]] = {first}

    try:
        while len(found) < max_count:
            again = _CoveringSearch(rg, search.family, deadline, stats)
            cover = again.find_with_cap(optimum, exclude)
            search = again  # keep the grown circuit family
            if cover is None:
                break  # all optima enumerated
            found.append(cover)
            exclude.add(cover)
    except _Expired:
        pass  # budget ran out mid-enumeration; report what we have

    stats.wall_time_s = time.monotonic() - t0
    results = []
    for cover in found:
        result_members = frozenset(forced | cover)
        results.append(MinSetResult(result_members, "exact", len(result_members), stats))
    return results


def split_minset(
    m: MinSetResult, labels: StructureLabels
) -> tuple[frozenset[str], frozenset[str]]:
    """Partition members into (core part, satellite part)."""
    core_part = m.members & labels.core
    satellite_part = m.members & labels.satellites
    stray = m.members - core_part - satellite_part
    if stray:
        raise RuntimeError(
            f"minset members outside the kernel: {sorted(stray)}"
        )
    return core_part, satellite_part
