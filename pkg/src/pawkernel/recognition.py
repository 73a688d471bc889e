"""Paw and triangle detection, and the triangle-free / complete multipartite
classification of paw-free components.

A connected graph is paw-free exactly when it is triangle-free or complete
multipartite.  In this package "complete multipartite" always means at least
three parts; complete bipartite components count as triangle-free.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import PackingNotMaximalError
from .graph import Graph, Pair, connected_components, induced_subgraph, pair, triangles


@dataclass(frozen=True, order=True)
class Paw:
    """Induced paw: triangle ``x1 x2 x3`` plus ``x4`` adjacent only to ``x3``.

    Ordering is by (sorted triangle, pendant), which is the order in which
    :func:`iter_paws` yields them.
    """

    triangle: tuple[int, int, int]  # ascending
    pendant: int
    attach: int  # the triangle vertex the pendant hangs from

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.triangle) | {self.pendant}

    @property
    def x(self) -> tuple[int, int, int, int]:
        """The paw as ``(x1, x2, x3, x4)``."""
        x1, x2 = (t for t in self.triangle if t != self.attach)
        return (x1, x2, self.attach, self.pendant)

    def edges(self) -> tuple[Pair, ...]:
        a, b, c = self.triangle
        return (pair(a, b), pair(a, c), pair(b, c), pair(self.attach, self.pendant))

    def non_edges(self) -> tuple[Pair, ...]:
        x1, x2, _, x4 = self.x
        return (pair(x1, x4), pair(x2, x4))

    def pairs(self) -> tuple[Pair, ...]:
        return tuple(sorted(self.edges() + self.non_edges()))


def pendants_of(g: Graph, tri: tuple[int, int, int]) -> Iterator[tuple[int, int]]:
    """Yield ``(pendant, attach)`` for every vertex adjacent to exactly one triangle vertex."""
    a, b, c = tri
    na, nb, nc = g.neighbors(a), g.neighbors(b), g.neighbors(c)
    only = {a: na - nb - nc, b: nb - na - nc, c: nc - na - nb}
    cands = sorted((x, t) for t, xs in only.items() for x in xs)
    yield from cands


def iter_paws(g: Graph) -> Iterator[Paw]:
    """All induced paws of ``g`` in (triangle, pendant) lexicographic order."""
    for tri in triangles(g):
        for x, t in pendants_of(g, tri):
            yield Paw(tri, x, t)


def find_paw(g: Graph) -> Paw | None:
    return next(iter_paws(g), None)


def is_paw(g: Graph, quad: Iterable[int]) -> Paw | None:
    """If the four vertices induce a paw, return it."""
    quad = sorted(quad)
    deg = {v: sum(1 for w in quad if w != v and g.has_edge(v, w)) for v in quad}
    if sorted(deg.values()) != [1, 2, 2, 3]:
        return None
    # degree sequence (1,2,2,3) on 4 vertices is only realised by the paw
    pendant = next(v for v in quad if deg[v] == 1)
    tri = tuple(v for v in quad if v != pendant)
    attach = next(v for v in tri if g.has_edge(v, pendant))
    return Paw(tri, pendant, attach)


def find_paw_naive(g: Graph) -> Paw | None:
    """O(n^4) reference search over all 4-subsets; smallest paw in :class:`Paw` order."""
    found = [p for quad in combinations(g.vertices, 4) if (p := is_paw(g, quad))]
    return min(found, default=None)


def is_paw_free(g: Graph) -> bool:
    return find_paw(g) is None


def has_triangle(g: Graph) -> bool:
    return next(triangles(g), None) is not None


class Kind(enum.Enum):
    TRIANGLE_FREE = "triangle-free"
    COMPLETE_MULTIPARTITE = "complete-multipartite"


@dataclass(frozen=True)
class ComponentClass:
    kind: Kind
    parts: tuple[frozenset[int], ...] = ()


def multipartite_parts(g: Graph, comp: Iterable[int]) -> list[frozenset[int]] | None:
    """Parts of ``comp`` if it induces a complete multipartite graph with >= 3 parts.

    Vertices are grouped by their neighbourhood inside ``comp`` and the grouping
    is then validated.  Parts are sorted by size, then smallest id.
    """
    comp = frozenset(comp)
    groups: dict[frozenset[int], set[int]] = {}
    for v in comp:
        groups.setdefault(g.neighbors(v) & comp, set()).add(v)
    if len(groups) < 3:
        return None
    for nb, members in groups.items():
        if nb != comp - members:
            return None
    return sorted((frozenset(p) for p in groups.values()), key=lambda p: (len(p), min(p)))


def classify_component(g: Graph, comp: Iterable[int]) -> ComponentClass | None:
    comp = frozenset(comp)
    if not has_triangle(induced_subgraph(g, comp)):
        return ComponentClass(Kind.TRIANGLE_FREE)
    parts = multipartite_parts(g, comp)
    if parts is None:
        return None
    return ComponentClass(Kind.COMPLETE_MULTIPARTITE, tuple(parts))


def is_paw_free_structural(g: Graph) -> bool:
    return all(classify_component(g, c) is not None for c in connected_components(g))


def classify_rest(g: Graph, s: Iterable[int]) -> list[tuple[frozenset[int], ComponentClass]]:
    """Classify every component of ``G - S``.

    Raises :class:`PackingNotMaximalError` if some component contains a paw.
    """
    s = frozenset(s)
    rest = induced_subgraph(g, set(g.vertices) - s)
    out = []
    for comp in connected_components(rest):
        cls = classify_component(rest, comp)
        if cls is None:
            raise PackingNotMaximalError(f"component {sorted(comp)} of G-S contains a paw")
        out.append((comp, cls))
    return out


def triangle_free_vertices(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Union of the triangle-free components of ``G - S``."""
    out: set[int] = set()
    for comp, cls in classify_rest(g, s):
        if cls.kind is Kind.TRIANGLE_FREE:
            out |= comp
    return frozenset(out)
