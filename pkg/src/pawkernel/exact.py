"""Exact paw-free editing / deletion / addition solvers.

Both solvers work on bitmask adjacency (vertex ``i`` of the sorted vertex
list is bit ``i``).  :func:`solve` branches on the pairs of one paw at a
time; :func:`solve_exhaustive` tries every subset of eligible pairs in
order of size and is only meant for tiny graphs.
"""

from __future__ import annotations

import enum
from itertools import combinations

from .graph import EditSet, Graph, Instance, apply_edits, edit_set
from .recognition import is_paw_free


class Mode(str, enum.Enum):
    EDIT = "edit"
    DELETE = "delete"
    ADD = "add"


def _masks(g: Graph) -> tuple[list[int], list[int], dict[int, int]]:
    verts = list(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for u, v in g.edges():
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    return verts, adj, index


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _find_paw(adj: list[int]) -> tuple[int, int, int, int] | None:
    """First paw as vertex indices ``(a, b, c, pendant)`` with ``a < b < c``."""
    for u, au in enumerate(adj):
        for v in _bits(au >> (u + 1)):
            v += u + 1
            av = adj[v]
            for w in _bits((au & av) >> (v + 1)):
                w += v + 1
                aw = adj[w]
                only = (au ^ av ^ aw) & ~(au & av & aw)
                if only:
                    x = (only & -only).bit_length() - 1
                    return (u, v, w, x)
    return None


def _paw_free(adj: list[int]) -> bool:
    return _find_paw(adj) is None


def _toggle(adj: list[int], i: int, j: int) -> None:
    adj[i] ^= 1 << j
    adj[j] ^= 1 << i


def _eligible(adj: list[int], i: int, j: int, mode: Mode) -> bool:
    if mode is Mode.EDIT:
        return True
    present = bool(adj[i] >> j & 1)
    return present if mode is Mode.DELETE else not present


def _branch(adj, k, mode, chosen: list[tuple[int, int]], failed: set) -> bool:
    paw = _find_paw(adj)
    if paw is None:
        return True
    if k == 0:
        return False
    key = frozenset(chosen)
    if key in failed:
        return False
    for i, j in combinations(sorted(paw), 2):
        if (i, j) in chosen or not _eligible(adj, i, j, mode):
            continue
        _toggle(adj, i, j)
        chosen.append((i, j))
        if _branch(adj, k - 1, mode, chosen, failed):
            return True
        chosen.pop()
        _toggle(adj, i, j)
    failed.add(key)
    return False


def solve(inst: Instance, mode: Mode = Mode.EDIT) -> EditSet | None:
    """An edit set of size <= k making the graph paw-free, or ``None``.

    Any solution changes some pair inside every induced paw, so branching
    over the (mode-eligible) pairs of one paw is complete.  A pair already
    toggled on the current branch is never toggled back.
    """
    mode = Mode(mode)
    verts, adj, _ = _masks(inst.graph)
    chosen: list[tuple[int, int]] = []
    if not _branch(adj, inst.budget, mode, chosen, set()):
        return None
    return edit_set((verts[i], verts[j]) for i, j in chosen)


def solve_exhaustive(inst: Instance, mode: Mode = Mode.EDIT) -> EditSet | None:
    """First eligible pair subset (by size, then lexicographic) that works."""
    mode = Mode(mode)
    verts, adj, _ = _masks(inst.graph)
    n = len(verts)
    pool = [
        (i, j) for i in range(n) for j in range(i + 1, n) if _eligible(adj, i, j, mode)
    ]
    for size in range(min(inst.budget, len(pool)) + 1):
        for subset in combinations(pool, size):
            for i, j in subset:
                _toggle(adj, i, j)
            ok = _paw_free(adj)
            for i, j in subset:
                _toggle(adj, i, j)
            if ok:
                return edit_set((verts[i], verts[j]) for i, j in subset)
    return None


def is_yes(inst: Instance | None, mode: Mode = Mode.EDIT) -> bool:
    """Verdict helper; ``None`` stands for an instance already known to be no."""
    return inst is not None and solve(inst, mode) is not None


def respects_mode(g: Graph, a, mode: Mode) -> bool:
    mode = Mode(mode)
    if mode is Mode.EDIT:
        return True
    want = mode is Mode.DELETE
    return all(g.has_edge(u, v) == want for u, v in a)


def verify_solution(g: Graph, a, k: int, mode: Mode = Mode.EDIT) -> bool:
    a = edit_set(a)
    if len(a) > k:
        return False
    if any(u not in g or v not in g for u, v in a):
        return False
    if not respects_mode(g, a, mode):
        return False
    return is_paw_free(apply_edits(g, a))

