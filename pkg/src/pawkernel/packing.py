"""Greedy maximal paw packings.

Two disjointness notions are supported:

``"edges"``  packed paws share no edge of G (they may share a non-edge).
``"pairs"``  packed paws share no vertex pair at all, i.e. at most one vertex.

Either way every paw of G has at least two vertices in S once the packing
is maximal, which is what the structural arguments rely on.  Only the
``"pairs"`` packing certifies a no-instance by its size in every mode: a
toggled pair lies inside at most one of its paws, whereas one added
non-edge can destroy several paws of an edge-disjoint packing at once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, Pair, pair, triangles
from .recognition import Paw, pendants_of

DISJOINTNESS = ("pairs", "edges")


@dataclass(frozen=True)
class PawPacking:
    paws: tuple[Paw, ...]
    s: frozenset[int]
    disjoint: str = "pairs"

    def __len__(self) -> int:
        return len(self.paws)

    def used_edges(self) -> frozenset[Pair]:
        return frozenset(e for p in self.paws for e in p.edges())

    def used_pairs(self) -> frozenset[Pair]:
        return frozenset(e for p in self.paws for e in p.pairs())


def greedy_paw_packing(g: Graph, limit: int | None = None, disjoint: str = "pairs") -> PawPacking:
    """Take induced paws of ``g`` in (triangle, pendant) order, skipping any
    that conflicts with an already packed paw.

    Conflicts only accumulate, so one ordered pass is the same as repeatedly
    taking the smallest compatible paw.  With ``limit`` set the scan stops
    after ``limit`` paws, which is enough to decide ``len(packing) > k``
    with ``limit=k+1``; such a truncated packing is not necessarily maximal.
    """
    if disjoint not in DISJOINTNESS:
        raise ValueError(f"unknown disjointness {disjoint!r}; expected one of {DISJOINTNESS}")
    by_pairs = disjoint == "pairs"
    used: set[Pair] = set()
    paws: list[Paw] = []
    for tri in triangles(g):
        if limit is not None and len(paws) >= limit:
            break
        a, b, c = tri
        if any(e in used for e in (pair(a, b), pair(a, c), pair(b, c))):
            continue
        for x, t in pendants_of(g, tri):
            p = Paw(tri, x, t)
            claim = p.pairs() if by_pairs else p.edges()
            if not any(e in used for e in claim):
                paws.append(p)
                used.update(claim)
                break
    s = frozenset(v for p in paws for v in p.vertices)
    return PawPacking(tuple(paws), s, disjoint)


def packing_exceeds(p: PawPacking, k: int) -> bool:
    return len(p.paws) > k
