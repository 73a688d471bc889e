"""Reduction rules 1-4.

Each ``find_ruleN`` searches for a witness and each ``apply_ruleN`` checks
the witness, performs the reduction and returns the new instance together
with a :class:`RuleApplication` record.  ``apply_rule3`` and
``apply_rule4`` return ``None`` in place of the instance when the budget
would become negative, i.e. the input is a no-instance.

Thresholds are always evaluated against the budget passed in.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import RulePreconditionError
from .graph import Graph, Instance, Pair, common_neighbors, pair
from .recognition import Kind, classify_rest, multipartite_parts, triangle_free_vertices


def _ids(vs) -> str:
    vs = sorted(vs)
    return ",".join(map(str, vs)) if vs else "-"


def _pairs(ps) -> str:
    ps = sorted(ps)
    return ",".join(f"{u}-{v}" for u, v in ps) if ps else "-"


@dataclass(frozen=True)
class RuleApplication:
    rule_id: int
    witness: tuple[frozenset[int], ...]
    removed_vertices: frozenset[int] = frozenset()
    removed_edges: frozenset[Pair] = frozenset()
    budget_delta: int = 0

    def to_line(self) -> str:
        witness = "|".join(_ids(w) for w in self.witness)
        return (
            f"rule={self.rule_id} witness={witness} removed_v={_ids(self.removed_vertices)}"
            f" removed_e={_pairs(self.removed_edges)} dk={self.budget_delta}"
        )


def _multipartite_components(g: Graph, s) -> list[tuple[frozenset[int], tuple[frozenset[int], ...]]]:
    return [
        (comp, cls.parts)
        for comp, cls in classify_rest(g, s)
        if cls.kind is Kind.COMPLETE_MULTIPARTITE
    ]


# -- rule 1: k+3 false twins ------------------------------------------------


def find_rule1(g: Graph, k: int) -> frozenset[int] | None:
    """Smallest-id ``k+3`` vertices sharing one open neighbourhood, if any.

    Among qualifying classes the one with the smallest member wins.
    """
    classes: dict[frozenset[int], list[int]] = {}
    for v in g.vertices:
        classes.setdefault(g.neighbors(v), []).append(v)
    best = None
    for members in classes.values():
        if len(members) >= k + 3 and (best is None or members[0] < best[0]):
            best = members
    return None if best is None else frozenset(best[: k + 3])


def _check_rule1(g: Graph, k: int, x: frozenset[int]) -> None:
    if len(x) != k + 3 or any(v not in g for v in x):
        raise RulePreconditionError(f"rule 1 needs {k + 3} vertices of the graph")
    nbs = {g.neighbors(v) for v in x}
    if len(nbs) != 1:
        raise RulePreconditionError("rule 1 witness vertices have different neighbourhoods")


def apply_rule1(inst: Instance, x) -> tuple[Instance, RuleApplication]:
    x = frozenset(x)
    _check_rule1(inst.graph, inst.budget, x)
    v = min(x)
    g = inst.graph.remove_vertices([v])
    return Instance(g, inst.budget), RuleApplication(1, (x,), frozenset({v}))


# -- rule 2: k+5 parts with a common outside neighbourhood -----------------


def find_rule2(g: Graph, k: int, s) -> list[frozenset[int]] | None:
    """``k+5`` parts of one multipartite component of ``G - S`` whose vertices
    all have the same neighbourhood outside the component.
    """
    for comp, parts in _multipartite_components(g, s):
        buckets: dict[frozenset[int], list[frozenset[int]]] = {}
        for part in parts:
            outside = {g.neighbors(v) - comp for v in part}
            if len(outside) == 1:
                buckets.setdefault(outside.pop(), []).append(part)
        for bucket in sorted(buckets.values(), key=lambda b: min(min(p) for p in b)):
            if len(bucket) >= k + 5:
                chosen = sorted(bucket, key=min)[: k + 5]
                return sorted(chosen, key=lambda p: (len(p), min(p)))
    return None


def _check_rule2(g: Graph, k: int, parts: list[frozenset[int]]) -> None:
    if len(parts) != k + 5:
        raise RulePreconditionError(f"rule 2 needs {k + 5} parts, got {len(parts)}")
    x = frozenset().union(*parts)
    if sum(map(len, parts)) != len(x) or any(v not in g for v in x):
        raise RulePreconditionError("rule 2 parts must be disjoint vertex sets of the graph")
    for p, q in combinations(parts, 2):
        if any(not g.has_edge(u, v) for u in p for v in q):
            raise RulePreconditionError("rule 2 parts are not completely joined")
    for p in parts:
        if any(g.has_edge(u, v) for u, v in combinations(p, 2)):
            raise RulePreconditionError("rule 2 part is not independent")
    if len({g.neighbors(v) - x for v in x}) != 1:
        raise RulePreconditionError("rule 2 parts differ outside the multipartite subgraph")


def apply_rule2(inst: Instance, parts) -> tuple[Instance, RuleApplication]:
    parts = [frozenset(p) for p in parts]
    _check_rule2(inst.graph, inst.budget, parts)
    smallest = min(parts, key=lambda p: (len(p), min(p)))
    g = inst.graph.remove_vertices(smallest)
    witness = tuple(sorted(parts, key=lambda p: (len(p), min(p))))
    return Instance(g, inst.budget), RuleApplication(2, witness, smallest)


# -- rule 3: an edge with more than 4k+6 triangle-free common neighbours ----


def find_rule3(g: Graph, k: int, s) -> tuple[int, int] | None:
    """Smallest adjacent pair with strictly more than ``4k+6`` common
    neighbours in the triangle-free components of ``G - S``.
    """
    tf = triangle_free_vertices(g, s)
    if len(tf) <= 4 * k + 6:
        return None
    for u, v in g.edges():
        if len(common_neighbors(g, u, v) & tf) > 4 * k + 6:
            return (u, v)
    return None


def apply_rule3(inst: Instance, u: int, v: int, s=None) -> tuple[Instance | None, RuleApplication]:
    """Delete edge ``uv`` and spend one unit of budget.

    When ``s`` is given the common-neighbour threshold is re-checked.
    """
    g, k = inst.graph, inst.budget
    if not g.has_edge(u, v):
        raise RulePreconditionError(f"rule 3 witness {u}-{v} is not an edge")
    if s is not None:
        shared = common_neighbors(g, u, v) & triangle_free_vertices(g, s)
        if len(shared) <= 4 * k + 6:
            raise RulePreconditionError(
                f"rule 3 witness {u}-{v} has only {len(shared)} common neighbours"
            )
    e = pair(u, v)
    app = RuleApplication(3, (frozenset(e),), removed_edges=frozenset({e}), budget_delta=-1)
    if k - 1 < 0:
        return None, app
    return Instance(g.remove_edges([e]), k - 1), app


# -- rule 4: a part larger than 3k+3 -----------------------------------------


def find_rule4(g: Graph, k: int, s) -> tuple[frozenset[int], frozenset[int]] | None:
    for comp, parts in _multipartite_components(g, s):
        for part in parts:
            if len(part) > 3 * k + 3:
                return comp, part
    return None


def apply_rule4(inst: Instance, comp, big_part) -> tuple[Instance | None, RuleApplication]:
    g, k = inst.graph, inst.budget
    comp, big_part = frozenset(comp), frozenset(big_part)
    if any(v not in g for v in comp):
        raise RulePreconditionError("rule 4 component has vertices outside the graph")
    parts = multipartite_parts(g, comp)
    if parts is None or big_part not in parts:
        raise RulePreconditionError("rule 4 witness is not a part of a complete multipartite set")
    if len(big_part) <= 3 * k + 3:
        raise RulePreconditionError(f"rule 4 part has {len(big_part)} <= 3k+3 vertices")
    rest = comp - big_part
    removed = frozenset(pair(u, v) for u, v in combinations(sorted(rest), 2) if g.has_edge(u, v))
    app = RuleApplication(
        4, (comp, big_part), removed_edges=removed, budget_delta=-len(removed)
    )
    if len(removed) > k:
        return None, app
    return Instance(g.remove_edges(removed), k - len(removed)), app
