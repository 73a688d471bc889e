"""Kernelization pipelines for paw-free editing, deletion and addition.

All three share one reduction loop:

1. drop connected components that are already paw-free,
2. exhaust rule 1,
3. build the greedy pair-disjoint paw packing ``S`` (more than ``k`` paws means no),
4. apply rules 3 and 4, then rule 2,
5. reject when a multipartite component of ``G - S`` is too large
   for rule 2 to have been inapplicable.

The loop restarts from step 1 after every change so that each rule runs
with rule 1 exhausted and ``S`` maximal for the current graph and budget.
Editing and deletion then keep ``S``, ``S'``, ``S''``, the marked
breadth-first layers and the multipartite components of ``G - S``
(deletion also keeps ``4k+6`` triangle-free neighbours of every vertex of
``S' | S''``); addition keeps the whole reduced graph after one more size
check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import KernelInvariantError, PawKernelError
from .exact import Mode
from .graph import (
    Graph,
    Instance,
    Pair,
    connected_components,
    distance_layers,
    induced_subgraph,
    triangles,
)
from .packing import PawPacking, greedy_paw_packing
from .recognition import Kind, classify_rest, is_paw_free, triangle_free_vertices
from .rules import (
    RuleApplication,
    _ids,
    _pairs,
    apply_rule1,
    apply_rule2,
    apply_rule3,
    apply_rule4,
    find_rule1,
    find_rule2,
    find_rule3,
    find_rule4,
)

DEFAULT_DEPTH = 6


@dataclass(frozen=True)
class TraceRecord:
    """A pipeline step that is not one of the four reduction rules.

    ``step`` is one of ``drop-pawfree``, ``mark``, ``restrict`` or ``no``.
    """

    step: str
    removed_vertices: frozenset[int] = frozenset()
    removed_edges: frozenset[Pair] = frozenset()
    budget_delta: int = 0
    note: str = ""

    def to_line(self) -> str:
        line = (
            f"step={self.step} removed_v={_ids(self.removed_vertices)}"
            f" removed_e={_pairs(self.removed_edges)} dk={self.budget_delta}"
        )
        return f"{line} {self.note}" if self.note else line


TraceEntry = RuleApplication | TraceRecord


@dataclass(frozen=True)
class MarkedSets:
    layers: tuple[frozenset[int], ...]
    s_prime: frozenset[int] = frozenset()
    s_dprime: frozenset[int] = frozenset()
    anchored: frozenset[int] = frozenset()  # deletion only, see pick_triangle_neighbours

    def marked(self) -> frozenset[int]:
        return frozenset().union(*self.layers, self.anchored)


@dataclass(frozen=True)
class KernelResult:
    mode: Mode
    depth: int
    source: Instance
    instance: Instance | None  # None: the input is a no-instance
    budget: int  # k at the point the pipeline stopped
    trace: tuple[TraceEntry, ...]
    size_certificate: int
    reason: str = ""
    prekernel: Instance | None = None  # reduced graph before the final restriction
    marked: MarkedSets | None = None
    packing: PawPacking | None = None

    @property
    def outcome(self) -> str:
        return "no" if self.instance is None else "reduced"

    @property
    def is_no(self) -> bool:
        return self.instance is None

    def trace_lines(self) -> list[str]:
        return [e.to_line() for e in self.trace]

    def rule_counts(self) -> dict[str, int]:
        counts = {str(r): 0 for r in (1, 2, 3, 4)}
        for e in self.trace:
            if isinstance(e, RuleApplication):
                counts[str(e.rule_id)] += 1
        return counts

    def to_json(self) -> dict:
        g = self.instance.graph if self.instance is not None else Graph()
        return {
            "outcome": self.outcome,
            "mode": self.mode.value,
            "depth": self.depth,
            "k_out": self.budget,
            "vertices": list(g.vertices),
            "edges": [list(e) for e in g.edges()],
            "trace": self.trace_lines(),
            "size_certificate": self.size_certificate,
            "reason": self.reason,
        }


# -- size bounds ---------------------------------------------------------------


def editing_certificate(k: int, depth: int = DEFAULT_DEPTH) -> int:
    """Vertex bound of the editing kernel with marking depth ``depth``.

    Terms: S, multipartite components next to S, S', S'', marked layers.
    """
    t = 4 * k + 6
    layers = sum(4 * k * t**i for i in range(1, depth + 1))
    return 4 * k + 4 * k * (3 * k + 3) * (3 * k + 5) + 4 * k * t + 16 * k * k * t + layers


def deletion_certificate(k: int) -> int:
    return editing_certificate(k, 1)


def addition_certificate(k: int) -> int:
    return 4 * k * (3 * k + 3) * (3 * k + 5) + (4 * k + 6) * k + 4 * k


def size_certificate(mode: Mode, k: int, depth: int = DEFAULT_DEPTH) -> int:
    mode = Mode(mode)
    if mode is Mode.EDIT:
        return editing_certificate(k, depth)
    if mode is Mode.DELETE:
        return deletion_certificate(k)
    return addition_certificate(k)


# -- S', S'' and marking ------------------------------------------------------


def maximal_matching(g: Graph, comp) -> list[Pair]:
    """Greedy maximal matching of ``g[comp]`` over edges in sorted order."""
    comp = frozenset(comp)
    covered: set[int] = set()
    out = []
    for u in sorted(comp):
        if u in covered:
            continue
        for v in g.sorted_neighbors(u):
            if v > u and v in comp and v not in covered:
                out.append((u, v))
                covered.update((u, v))
                break
    return out


def compute_s_prime(g: Graph, k: int, s) -> frozenset[int] | None:
    """Vertices kept for triangle-free components with a triangle through exactly one S-vertex.

    Returns ``None`` when such a component has a maximal matching with more
    than ``k`` edges and at least ``4k+6`` vertices (a no-instance).  A
    component with a large matching but fewer than ``4k+6`` vertices is
    kept whole.
    """
    s = frozenset(s)
    out: set[int] = set()
    for comp, cls in classify_rest(g, s):
        if cls.kind is not Kind.TRIANGLE_FREE:
            continue
        touched = any(
            g.neighbors(x) & g.neighbors(y) & s
            for x in comp
            for y in g.neighbors(x) & comp
        )
        if not touched:
            continue
        m = maximal_matching(g, comp)
        if len(m) <= k:
            out.update(v for e in m for v in e)
        elif len(comp) >= 4 * k + 6:
            return None
        else:
            out |= comp
    return frozenset(out)


def compute_s_dprime(g: Graph, k: int, s) -> frozenset[int]:
    """Triangle-free-component vertices adjacent to both ends of an edge inside S."""
    s = frozenset(s)
    out = set()
    for v in triangle_free_vertices(g, s):
        ns = sorted(g.neighbors(v) & s)
        if any(g.has_edge(a, b) for i, a in enumerate(ns) for b in ns[i + 1 :]):
            out.add(v)
    return frozenset(out)


def mark_layers(g: Graph, k: int, s, depth: int) -> MarkedSets:
    """``S_0 = S``; ``S_{i+1}`` takes, for each ``x`` in ``S_i``, the ``4k+6``
    smallest neighbours of ``x`` that lie at distance ``i+1`` from S and in a
    triangle-free component of ``G - S``.  Stops early at an empty layer.
    """
    if depth < 1:
        raise ValueError("marking depth must be >= 1")
    s = frozenset(s)
    dist = distance_layers(g, s, depth)
    tf = triangle_free_vertices(g, s)
    width = 4 * k + 6
    layers = [s]
    for i in range(depth):
        eligible = dist.get(i + 1, frozenset()) & tf
        nxt: set[int] = set()
        for x in sorted(layers[-1]):
            nxt.update(sorted(g.neighbors(x) & eligible)[:width])
        if not nxt:
            break
        layers.append(frozenset(nxt))
    return MarkedSets(tuple(layers))


def pick_triangle_neighbours(g: Graph, k: int, s, anchors) -> frozenset[int]:
    """For every anchor, its ``4k+6`` smallest neighbours in triangle-free
    components of ``G - S``.

    Deletions never create triangles, so a paw appearing after a deletion
    uses an old triangle whose attachment vertex lies in S, S' or S''.  The
    first-layer marking covers S; this covers the other two, so a dropped
    pendant always sits next to a vertex that keeps ``4k+6`` triangle-free
    neighbours and therefore cannot end up inside a multipartite component.
    """
    tf = triangle_free_vertices(g, s)
    width = 4 * k + 6
    out: set[int] = set()
    for v in sorted(anchors):
        out.update(sorted(g.neighbors(v) & tf)[:width])
    return frozenset(out)


# -- pipelines -----------------------------------------------------------------


class _NoInstance(Exception):
    def __init__(self, reason: str, budget: int):
        super().__init__(reason)
        self.reason = reason
        self.budget = budget


class _Run:
    def __init__(self, inst: Instance, mode: Mode):
        self.mode = mode
        self.g = inst.graph
        self.k = inst.budget
        self.trace: list[TraceEntry] = []

    def no(self, reason: str, budget: int | None = None):
        b = self.k if budget is None else budget
        self.trace.append(TraceRecord("no", note=f"reason={reason}"))
        raise _NoInstance(reason, b)

    def take(self, result: tuple[Instance | None, RuleApplication], reason: str) -> None:
        inst, app = result
        self.trace.append(app)
        if inst is None:
            self.no(reason, self.k + app.budget_delta)
        self.g, self.k = inst.graph, inst.budget

    def reduce(self) -> PawPacking:
        """Run the shared reduction loop to a fixed point and return the packing."""
        while True:
            g, k = self.g, self.k
            pawfree = frozenset().union(
                *(c for c in connected_components(g) if is_paw_free(induced_subgraph(g, c)))
            )
            if pawfree:
                self.trace.append(TraceRecord("drop-pawfree", pawfree))
                self.g = g.remove_vertices(pawfree)
                continue
            if k == 0:
                packing = greedy_paw_packing(g, limit=1)
                if packing.paws:
                    self.no("budget-zero")
                return packing
            x = find_rule1(g, k)
            if x is not None:
                self.take(apply_rule1(Instance(g, k), x), "rule1")
                continue
            packing = greedy_paw_packing(g, limit=k + 1)
            if len(packing.paws) > k:
                self.no("packing")
            s = packing.s
            hit = find_rule3(g, k, s)
            if hit is not None:
                if self.mode is Mode.ADD:
                    self.no("rule3-addition")
                self.take(apply_rule3(Instance(g, k), *hit), "rule3-budget")
                continue
            hit = find_rule4(g, k, s)
            if hit is not None:
                if self.mode is Mode.ADD:
                    self.no("rule4-addition")
                self.take(apply_rule4(Instance(g, k), *hit), "rule4-budget")
                continue
            parts = find_rule2(g, k, s)
            if parts is not None:
                self.take(apply_rule2(Instance(g, k), parts), "rule2")
                continue
            bound = (3 * k + 3) * (3 * k + 5)
            for comp, cls in classify_rest(g, s):
                if cls.kind is Kind.COMPLETE_MULTIPARTITE and len(comp) >= bound:
                    self.no("large-multipartite")
            check_single_multipartite_neighbour(g, s)
            return packing


def multipartite_components(g: Graph, s) -> list[frozenset[int]]:
    return [c for c, cls in classify_rest(g, s) if cls.kind is Kind.COMPLETE_MULTIPARTITE]


def check_single_multipartite_neighbour(g: Graph, s) -> None:
    """Every vertex of S touches at most one multipartite component of ``G - S``."""
    comps = multipartite_components(g, s)
    for v in sorted(s):
        touching = [c for c in comps if g.neighbors(v) & c]
        if len(touching) > 1:
            raise KernelInvariantError(
                f"vertex {v} of S is adjacent to {len(touching)} multipartite components of G-S"
            )


def check_triangles_kept(g: Graph, keep) -> None:
    keep = frozenset(keep)
    for tri in triangles(g):
        if not keep.issuperset(tri):
            raise KernelInvariantError(f"triangle {tri} loses a vertex in the kernel")


def _finish_marked(
    run: _Run, packing: PawPacking, depth: int, all_multipartite: bool
) -> tuple[Instance, Instance, MarkedSets]:
    g, k, s = run.g, run.k, packing.s
    s_prime = compute_s_prime(g, k, s)
    if s_prime is None:
        run.no("large-matching")
    s_dprime = compute_s_dprime(g, k, s)
    marked = mark_layers(g, k, s, depth)
    extra = frozenset()
    if all_multipartite:
        extra = pick_triangle_neighbours(g, k, s, s_prime | s_dprime)
    marked = MarkedSets(marked.layers, s_prime, s_dprime, extra)
    mp = multipartite_components(g, s)
    if not all_multipartite:
        mp = [c for c in mp if any(g.neighbors(v) & s for v in c)]
    keep = set(s) | s_prime | s_dprime | marked.marked()
    for c in mp:
        keep |= c
    check_triangles_kept(g, keep)
    run.trace.append(
        TraceRecord(
            "mark",
            note="layers=" + ",".join(str(len(x)) for x in marked.layers)
            + f" s_prime={len(s_prime)} s_dprime={len(s_dprime)}"
            + (f" anchored={len(extra)}" if all_multipartite else ""),
        )
    )
    dropped = frozenset(g.vertices) - keep
    run.trace.append(TraceRecord("restrict", dropped))
    pre = Instance(g, k)
    out = Instance(induced_subgraph(g, keep), k)
    return out, pre, marked


def _kernelize(inst: Instance, mode: Mode, depth: int) -> KernelResult:
    run = _Run(inst, mode)
    pre = marked = packing = None
    try:
        packing = run.reduce()
        if mode is Mode.ADD:
            out = _finish_addition(run, packing)
            pre = out
        else:
            out, pre, marked = _finish_marked(
                run, packing, depth if mode is Mode.EDIT else 1, mode is Mode.DELETE
            )
    except _NoInstance as stop:
        return KernelResult(
            mode, depth, inst, None, stop.budget, tuple(run.trace),
            size_certificate(mode, max(stop.budget, 0), depth), stop.reason,
            packing=packing,
        )
    return KernelResult(
        mode, depth, inst, out, out.budget, tuple(run.trace),
        size_certificate(mode, out.budget, depth),
        prekernel=pre, marked=marked, packing=packing,
    )


def _finish_addition(run: _Run, packing: PawPacking) -> Instance:
    g, k = run.g, run.k
    tf = triangle_free_vertices(g, packing.s)
    for comp in connected_components(g):
        if len(comp & tf) > 4 * k + 6:
            run.no("large-triangle-free-part")
    return Instance(g, k)


def kernelize_editing(inst: Instance, depth: int = DEFAULT_DEPTH) -> KernelResult:
    return _kernelize(inst, Mode.EDIT, depth)


def kernelize_deletion(inst: Instance) -> KernelResult:
    return _kernelize(inst, Mode.DELETE, 1)


def kernelize_addition(inst: Instance) -> KernelResult:
    return _kernelize(inst, Mode.ADD, 0)


def kernelize(inst: Instance, mode: Mode = Mode.EDIT, depth: int = DEFAULT_DEPTH) -> KernelResult:
    mode = Mode(mode)
    if mode is Mode.EDIT:
        return kernelize_editing(inst, depth)
    if mode is Mode.DELETE:
        return kernelize_deletion(inst)
    return kernelize_addition(inst)


# -- trace replay -------------------------------------------------------------


def _parse_fields(line: str) -> dict[str, str]:
    out = {}
    for tok in line.split():
        key, _, val = tok.partition("=")
        out[key] = val
    return out


def replay(source: Instance, lines) -> Instance | None:
    """Re-apply serialized trace lines to ``source``; ``None`` if the trace ends in no."""
    g, k = source.graph, source.budget
    for line in lines:
        f = _parse_fields(line)
        if f.get("step") == "no":
            return None
        if f["removed_e"] != "-":
            g = g.remove_edges(
                tuple(int(t) for t in e.split("-")) for e in f["removed_e"].split(",")
            )
        if f["removed_v"] != "-":
            g = g.remove_vertices(int(t) for t in f["removed_v"].split(","))
        k += int(f["dk"])
    if k < 0:
        raise PawKernelError("trace drives the budget negative without a no step")
    return Instance(g, k)
