"""Seeded instance generator.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014), whose
constants are

    gamma = 0x9E3779B97F4A7C15
    mix1  = 0xBF58476D1CE4E5B9   (shift 30 before, 27 after)
    mix2  = 0x94D049BB133111EB   (shift 31 after)

so any implementation can reproduce an instance bit for bit from its
:class:`GenSpec`.  Uniform floats use the top 53 bits; bounded integers use
rejection sampling on the full 64-bit output.

Families
--------
``uniform``       each of the ``n(n-1)/2`` pairs, in lexicographic order,
                  is an edge with probability ``p``.
``planted``       a paw-free graph built from random bipartite and/or complete
                  multipartite components (``base``), relabelled by a random
                  permutation, then ``edits`` distinct random pairs toggled.
                  ``flips`` restricts the toggles to additions or deletions.
``rule_trigger``  a fixed shape on which rule ``rule_id`` fires at budget ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GenerationError
from .graph import Graph, Instance, apply_edits

MASK64 = (1 << 64) - 1
FAMILIES = ("uniform", "planted", "rule_trigger")
BASES = ("triangle-free", "multipartite", "mixed")
FLIPS = ("any", "add", "delete")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("below() needs n > 0")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def permutation(self, n: int) -> list[int]:
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm


@dataclass(frozen=True)
class GenSpec:
    seed: int
    family: str
    k: int = 1
    n: int = 0
    p: float = 0.5
    base: str = "mixed"
    edits: int = 0
    flips: str = "any"
    rule_id: int = 1

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise GenerationError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.k < 0:
            raise GenerationError("k must be >= 0")
        if self.family == "uniform":
            if self.n < 0 or not 0.0 <= self.p <= 1.0:
                raise GenerationError("uniform needs n >= 0 and 0 <= p <= 1")
        elif self.family == "planted":
            if self.n < 0 or self.edits < 0:
                raise GenerationError("planted needs n >= 0 and edits >= 0")
            if self.base not in BASES:
                raise GenerationError(f"unknown base {self.base!r}; expected one of {BASES}")
            if self.flips not in FLIPS:
                raise GenerationError(f"unknown flips {self.flips!r}; expected one of {FLIPS}")
        elif self.rule_id not in (1, 2, 3, 4):
            raise GenerationError("rule_trigger needs rule_id in 1..4")


def _uniform(rng: SplitMix64, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(range(n), edges)


def _bipartite_block(rng: SplitMix64, verts: list[int]) -> list[tuple[int, int]]:
    side = {v: rng.below(2) for v in verts}
    return [
        (u, v)
        for i, u in enumerate(verts)
        for v in verts[i + 1 :]
        if side[u] != side[v] and rng.random() < 0.5
    ]


def _multipartite_block(rng: SplitMix64, verts: list[int]) -> list[tuple[int, int]]:
    r = 3 + rng.below(len(verts) - 2)  # 3..len(verts) parts
    part = {v: i for i, v in enumerate(verts[:r])}
    for v in verts[r:]:
        part[v] = rng.below(r)
    return [(u, v) for i, u in enumerate(verts) for v in verts[i + 1 :] if part[u] != part[v]]


def _paw_free_base(rng: SplitMix64, n: int, base: str, max_block: int = 8) -> Graph:
    edges: list[tuple[int, int]] = []
    start = 0
    while start < n:
        size = min(n - start, 1 + rng.below(max_block))
        verts = list(range(start, start + size))
        start += size
        kind = base
        if kind == "mixed":
            kind = "multipartite" if rng.below(2) else "triangle-free"
        if kind == "multipartite" and size >= 3:
            edges += _multipartite_block(rng, verts)
        else:
            edges += _bipartite_block(rng, verts)
    perm = rng.permutation(n)
    return Graph(range(n), [(perm[u], perm[v]) for u, v in edges])


def _planted(rng: SplitMix64, spec: GenSpec) -> Graph:
    g = _paw_free_base(rng, spec.n, spec.base)
    pool = [(u, v) for u in range(spec.n) for v in range(u + 1, spec.n)]
    if spec.flips == "add":
        pool = [e for e in pool if not g.has_edge(*e)]
    elif spec.flips == "delete":
        pool = [e for e in pool if g.has_edge(*e)]
    if spec.edits > len(pool):
        raise GenerationError(f"cannot toggle {spec.edits} of {len(pool)} eligible pairs")
    chosen = []
    for i in range(spec.edits):  # partial Fisher-Yates over the pool
        j = i + rng.below(len(pool) - i)
        pool[i], pool[j] = pool[j], pool[i]
        chosen.append(pool[i])
    return apply_edits(g, chosen)


def rule_trigger_graph(rule_id: int, k: int) -> Graph:
    """Fixed shapes; vertex ids are chosen so the greedy packing is predictable."""
    if rule_id == 1:
        # triangle 0,1,2 with k+3 pendant twins on 2
        twins = range(3, k + 6)
        return Graph(range(k + 6), [(0, 1), (0, 2), (1, 2)] + [(2, t) for t in twins])
    if rule_id == 2:
        # paw 0,1,2 + pendant 3, and a clique of k+5 vertices all joined to 3
        clique = list(range(4, k + 9))
        edges = [(0, 1), (0, 2), (1, 2), (2, 3)] + [(3, q) for q in clique]
        edges += [(a, b) for i, a in enumerate(clique) for b in clique[i + 1 :]]
        return Graph(range(k + 9), edges)
    if rule_id == 3:
        # edge 0-1 with 4k+8 common neighbours, each carrying a private leaf
        m = 4 * k + 8
        ts = range(2, m + 2)
        edges = [(0, 1)] + [(s, t) for t in ts for s in (0, 1)]
        edges += [(t, t + m) for t in ts]
        return Graph(range(2 * m + 2), edges)
    if rule_id == 4:
        # a paw on 0..3 next to a disjoint K_{3k+4,1,1}
        big = list(range(4, 3 * k + 8))
        a, b = 3 * k + 8, 3 * k + 9
        edges = [(0, 1), (0, 2), (1, 2), (2, 3), (a, b)]
        edges += [(p, x) for p in big for x in (a, b)]
        return Graph(range(3 * k + 10), edges)
    raise GenerationError(f"no trigger shape for rule {rule_id}")


def generate(spec: GenSpec) -> Instance:
    spec.validate()
    rng = SplitMix64(spec.seed)
    if spec.family == "uniform":
        g = _uniform(rng, spec.n, spec.p)
    elif spec.family == "planted":
        g = _planted(rng, spec)
    else:
        g = rule_trigger_graph(spec.rule_id, spec.k)
    return Instance(g, spec.k)

