from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from pawkernel.graph import Graph


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    return Graph(range(n), [p for i, p in enumerate(pairs) if mask >> i & 1])


def all_graphs(n: int):
    for mask in range(1 << (n * (n - 1) // 2)):
        yield graph_from_mask(n, mask)


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    mask = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1)) if n > 1 else 0
    return graph_from_mask(n, mask)


def paw() -> Graph:
    # triangle 0,1,2 with pendant 3 on 2
    return Graph(range(4), [(0, 1), (0, 2), (1, 2), (2, 3)])


def complete(vs) -> list[tuple[int, int]]:
    return list(combinations(vs, 2))


def complete_multipartite(*sizes: int) -> Graph:
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    edges = [(u, v) for p, q in combinations(parts, 2) for u in p for v in q]
    return Graph(range(start), edges)


def cycle(n: int) -> Graph:
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])
