"""Kernel, Core, Satellites, and definitional-distance hierarchies.

The kernel is the unique fixpoint of iteratively deleting words that no
surviving definition uses (out-degree 0). The Core is the largest strongly
connected component inside the kernel; the remaining kernel words are
Satellites; everything else is the Rest.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .graph import Condensation, DefGraph, condense, scc

log = logging.getLogger(__name__)

CORE = "Core"
SATELLITE = "Satellite"
REST = "Rest"
KERNEL = "Kernel"


def compute_kernel(g: DefGraph) -> set[str]:
    """Survivors of iterated out-degree-0 deletion.

    Equivalent characterization (used as the test oracle): a word survives
    iff it has a directed path to some circuit. Empty kernels are legal for
    acyclic inputs.
    """
    outdeg = {v: len(g.succ[v]) for v in g.vertices}
    queue = [v for v, d in outdeg.items() if d == 0]
    removed: set[str] = set()
    while queue:
        v = queue.pop()
        removed.add(v)
        for p in g.pred[v]:
            if p in removed:
                continue
            outdeg[p] -= 1
            if outdeg[p] == 0:
                queue.append(p)
    return {v for v in g.vertices if v not in removed}


@dataclass
class StructureLabels:
    label: dict[str, str]            # vertex -> Core | Satellite | Rest
    scc_id: dict[str, int]
    scc_size: dict[str, int]
    kernel: frozenset[str]
    core: frozenset[str]
    satellites: frozenset[str]
    rest: frozenset[str]

    def members(self, structure: str) -> frozenset[str]:
        return {
            CORE: self.core,
            SATELLITE: self.satellites,
            REST: self.rest,
            KERNEL: self.kernel,
        }[structure]


def label_structures(g: DefGraph) -> StructureLabels:
    """Partition vertices into Core / Satellite / Rest.

    Core = largest SCC among kernel vertices; ties go to the component whose
    lexicographically smallest member is smallest. Singleton SCCs inside the
    kernel count as Satellites. An empty kernel labels everything Rest.
    """
    kernel = compute_kernel(g)
    components = scc(g)
    scc_id: dict[str, int] = {}
    scc_size: dict[str, int] = {}
    for i, component in enumerate(components):
        for v in component:
            scc_id[v] = i
            scc_size[v] = len(component)

    core: set[str] = set()
    kernel_components = [c for c in components if c and c[0] in kernel]
    if kernel_components:
        kernel_components.sort(key=lambda c: (-len(c), min(c)))
        core = set(kernel_components[0])
    else:
        log.warning("empty kernel: all %d words labeled Rest", len(g.vertices))

    label = {}
    for v in g.vertices:
        if v in core:
            label[v] = CORE
        elif v in kernel:
            label[v] = SATELLITE
        else:
            label[v] = REST
    return StructureLabels(
        label=label,
        scc_id=scc_id,
        scc_size=scc_size,
        kernel=frozenset(kernel),
        core=frozenset(core),
        satellites=frozenset(kernel - core),
        rest=frozenset(set(g.vertices) - kernel),
    )


@dataclass
class Hierarchy:
    kind: str                        # "K" | "C"
    aggregator: str                  # "max" | "min"
    levels: dict[str, int]           # vertex -> level
    core_level: int | None = None    # C only: level of the Core's node
    condensation: Condensation | None = None

    def max_level(self) -> int:
        return max(self.levels.values(), default=0)


def _aggregate(values: list[int], aggregator: str) -> int:
    if not values:
        return 0
    return max(values) if aggregator == "max" else min(values)


def hierarchy(g: DefGraph, kind: str, aggregator: str = "max") -> Hierarchy:
    """Definitional-distance hierarchy of kind K (from the kernel) or C
    (from the condensation sources).

    K: kernel words sit at level 0; every other word is 1 + aggregate of its
    predecessors' levels (well defined: all circuits lie in the kernel). A
    word with no predecessors gets level 1.

    C: levels are computed on the condensation (0 at source nodes, else 1 +
    aggregate over predecessor nodes) and every word inherits its SCC node's
    level. The Core's own level is recorded rather than normalized away.
    """
    if kind not in ("K", "C"):
        raise ValueError(f"hierarchy kind must be 'K' or 'C', got {kind!r}")
    if aggregator not in ("max", "min"):
        raise ValueError(f"aggregator must be 'max' or 'min', got {aggregator!r}")

    if kind == "K":
        kernel = compute_kernel(g)
        if not kernel:
            raise ValueError("K-hierarchy undefined: kernel is empty")
        levels = {v: 0 for v in kernel}
        # The Rest-induced subgraph is acyclic; peel it in topological order.
        indeg = {}
        for v in g.vertices:
            if v in kernel:
                continue
            indeg[v] = sum(1 for p in g.pred[v] if p not in kernel)
        queue = [v for v, d in indeg.items() if d == 0]
        while queue:
            v = queue.pop()
            levels[v] = 1 + _aggregate([levels[p] for p in g.pred[v]], aggregator)
            for w in g.succ[v]:
                if w in indeg and w not in levels:
                    indeg[w] -= 1
                    if indeg[w] == 0:
                        queue.append(w)
        assert len(levels) == len(g.vertices), "rest subgraph was not acyclic"
        return Hierarchy(kind="K", aggregator=aggregator, levels=levels)

    cond = condense(g)
    node_level: dict[int, int] = {}
    indeg = {i: len(cond.pred[i]) for i in range(len(cond))}
    queue = [i for i, d in indeg.items() if d == 0]
    while queue:
        x = queue.pop()
        if x in cond.sources:
            node_level[x] = 0
        else:
            node_level[x] = 1 + _aggregate(
                [node_level[y] for y in cond.pred[x]], aggregator
            )
        for y in cond.succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    levels = {v: node_level[cond.node_of[v]] for v in g.vertices}

    core_level = None
    labels = label_structures(g)
    if labels.core:
        core_level = node_level[cond.node_of[next(iter(labels.core))]]
        if core_level > 0:
            log.info("Core sits at C-level %d (has a predecessor node)", core_level)
    return Hierarchy(
        kind="C", aggregator=aggregator, levels=levels,
        core_level=core_level, condensation=cond,
    )


def level_counts(
    h: Hierarchy,
    labels: StructureLabels | None = None,
    restrict: str | None = None,
) -> dict[int, int]:
    """Words per level, optionally restricted to one structure label.

    ``restrict`` is one of Core/Satellite/Rest/Kernel and requires labels.
    """
    if restrict is not None:
        if labels is None:
            raise ValueError("restrict requires labels")
        members = labels.members(restrict)
        words = (v for v in h.levels if v in members)
    else:
        words = iter(h.levels)
    counts: dict[int, int] = {}
    for v in words:
        counts[h.levels[v]] = counts.get(h.levels[v], 0) + 1
    return dict(sorted(counts.items()))
