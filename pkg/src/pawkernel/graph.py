"""Immutable simple undirected graphs, edit sets and the edge-list format."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InvalidEditError, ParseError

Pair = tuple[int, int]
EditSet = frozenset[Pair]


def pair(u: int, v: int) -> Pair:
    """Canonical (smaller, larger) form of an unordered vertex pair."""
    if u == v:
        raise InvalidEditError(f"pair ({u},{v}) is a self-loop")
    return (u, v) if u < v else (v, u)


def edit_set(pairs: Iterable[Iterable[int]]) -> EditSet:
    out = set()
    for p in pairs:
        u, v = p
        out.add(pair(u, v))
    return frozenset(out)


class Graph:
    """Simple undirected graph over opaque integer vertex ids.

    Instances are never mutated after construction; every operation that
    changes the graph returns a new one.  Vertex ids are kept as given, so
    a vertex keeps its id across deletions of other vertices.
    """

    __slots__ = ("_adj", "_vertices", "_m", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Iterable[int]] = ()):
        adj: dict[int, set[int]] = {v: set() for v in vertices}
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._init({v: frozenset(nb) for v, nb in adj.items()})

    def _init(self, adj: dict[int, frozenset[int]]) -> None:
        self._adj = adj
        self._vertices = tuple(sorted(adj))
        self._m = sum(len(nb) for nb in adj.values()) // 2
        self._hash = None

    @classmethod
    def _from_adj(cls, adj: dict[int, frozenset[int]]) -> Graph:
        g = cls.__new__(cls)
        g._init(adj)
        return g

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    @property
    def edge_count(self) -> int:
        return self._m

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def sorted_neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj.get(u)
        return nb is not None and v in nb

    def edges(self) -> list[Pair]:
        return [(u, v) for u in self._vertices for v in sorted(self._adj[u]) if u < v]

    def edge_set(self) -> EditSet:
        return frozenset(self.edges())

    def remove_vertices(self, drop: Iterable[int]) -> Graph:
        drop = set(drop)
        for v in drop:
            if v not in self._adj:
                raise KeyError(v)
        return Graph._from_adj(
            {v: nb - drop for v, nb in self._adj.items() if v not in drop}
        )

    def remove_edges(self, pairs: Iterable[Iterable[int]]) -> Graph:
        pairs = edit_set(pairs)
        for u, v in pairs:
            if not self.has_edge(u, v):
                raise InvalidEditError(f"{u}-{v} is not an edge")
        return apply_edits(self, pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self.edges())))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, m={self._m}, edges={self.edges()})"


@dataclass(frozen=True)
class Instance:
    graph: Graph
    budget: int

    def __post_init__(self):
        if self.budget < 0:
            raise ValueError(f"negative budget {self.budget}")


def apply_edits(g: Graph, a: Iterable[Iterable[int]]) -> Graph:
    """Toggle every pair of ``a`` in ``g`` (symmetric difference of edge sets)."""
    a = edit_set(a)
    if not a:
        return g
    adj = {v: set(nb) for v, nb in g._adj.items()}
    for u, v in a:
        if u not in adj or v not in adj:
            raise InvalidEditError(f"pair {u}-{v} references an unknown vertex")
        if v in adj[u]:
            adj[u].discard(v)
            adj[v].discard(u)
        else:
            adj[u].add(v)
            adj[v].add(u)
    return Graph._from_adj({v: frozenset(nb) for v, nb in adj.items()})


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components ordered by their smallest vertex id."""
    seen: set[int] = set()
    out = []
    for root in g.vertices:
        if root in seen:
            continue
        comp = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def distance_layers(g: Graph, sources: Iterable[int], max_d: int) -> dict[int, frozenset[int]]:
    """Breadth-first layers: ``d -> {v : dist(sources, v) == d}`` for d <= max_d.

    Only non-empty layers are present.
    """
    frontier = set(sources)
    for v in frontier:
        if v not in g:
            raise KeyError(v)
    layers: dict[int, frozenset[int]] = {}
    seen = set(frontier)
    d = 0
    while frontier and d <= max_d:
        layers[d] = frozenset(frontier)
        nxt = set()
        for u in frontier:
            for w in g.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    nxt.add(w)
        frontier = nxt
        d += 1
    return layers


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    keep = set(keep)
    for v in keep:
        if v not in g:
            raise KeyError(v)
    return Graph._from_adj({v: g.neighbors(v) & keep for v in keep})


def common_neighbors(g: Graph, u: int, v: int) -> frozenset[int]:
    if u == v:
        raise ValueError("common_neighbors needs two distinct vertices")
    return g.neighbors(u) & g.neighbors(v)


def triangles(g: Graph) -> Iterator[tuple[int, int, int]]:
    """All triangles as ascending triples, in lexicographic order."""
    for u in g.vertices:
        for v in g.sorted_neighbors(u):
            if v <= u:
                continue
            for w in sorted(g.neighbors(u) & g.neighbors(v)):
                if w > v:
                    yield (u, v, w)


# -- edge-list interchange format --------------------------------------------


def parse_edge_list(text: str) -> Instance:
    """Parse ``n m k`` followed by ``m`` lines ``u v`` (0-based indices).

    Blank lines and ``#`` comments are ignored.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty input: expected header 'n m k'")
    lineno, head = rows[0]
    if len(head) != 3:
        raise ParseError(f"line {lineno}: header must be 'n m k'")
    try:
        n, m, k = (int(t) for t in head)
    except ValueError:
        raise ParseError(f"line {lineno}: non-integer header") from None
    if n < 0 or m < 0 or k < 0:
        raise ParseError(f"line {lineno}: negative header value")
    if len(rows) - 1 != m:
        raise ParseError(f"header announces {m} edges, found {len(rows) - 1}")
    edges = set()
    for lineno, toks in rows[1:]:
        if len(toks) != 2:
            raise ParseError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex out of range [0,{n})")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop {u}")
        p = pair(u, v)
        if p in edges:
            raise ParseError(f"line {lineno}: duplicate edge {u} {v}")
        edges.add(p)
    return Instance(Graph(range(n), sorted(edges)), k)


def format_edge_list(inst: Instance) -> str:
    """Serialize an instance; vertex ids are relabelled to 0..n-1 in sorted order."""
    g = inst.graph
    index = {v: i for i, v in enumerate(g.vertices)}
    lines = [f"{len(g)} {g.edge_count} {inst.budget}"]
    lines += [f"{index[u]} {index[v]}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(inst))
