"""Simple graphs, a small construction language, and edge ideals.

Construction strings are ``+``-separated terms:

    Kn     complete graph          Cn     cycle (n >= 3)
    Pn     path on n vertices      Ka,b   complete bipartite
    In     n isolated vertices

A single term names its vertices ``x1 .. xn``.  With several terms each
summand gets its own prefix (``x``, ``y``, ``z``, ``w``, ...), so ``K3+K2``
lives on ``x1 x2 x3 y1 y2``.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import InputError
from .monomial import VAR_RE, MonomialIdeal, make_ideal

PREFIXES = "xyzwuvstpqrabcdefgh"

_TERM_RE = re.compile(r"\s*(K|C|P|I)\s*(\d+)\s*(?:,\s*(\d+)\s*)?")


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]  # index pairs i < j, sorted

    @classmethod
    def from_edges(cls, vertices: Sequence[str], edges: Iterable[tuple]) -> "Graph":
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise InputError("repeated vertex name")
        pos = {v: i for i, v in enumerate(vertices)}
        out = set()
        for u, v in edges:
            i = pos[u] if isinstance(u, str) else int(u)
            j = pos[v] if isinstance(v, str) else int(v)
            if not (0 <= i < len(vertices) and 0 <= j < len(vertices)):
                raise InputError(f"edge endpoint out of range: {u}, {v}")
            if i == j:
                raise InputError(f"loop at {vertices[i]}")
            out.add((min(i, j), max(i, j)))
        return cls(vertices, tuple(sorted(out)))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as a bitmask."""
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    def components(self) -> list[int]:
        """Connected components as vertex bitmasks, in order of first vertex."""
        return mask_components(self.adjacency)

    def __str__(self) -> str:
        es = ", ".join(f"{self.vertices[i]}-{self.vertices[j]}" for i, j in self.edges)
        return f"Graph([{' '.join(self.vertices)}]; {es})"


def mask_components(adj: Sequence[int], universe: int | None = None) -> list[int]:
    n = len(adj)
    if universe is None:
        universe = (1 << n) - 1
    seen = 0
    comps = []
    for v in range(n):
        if not universe >> v & 1 or seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            nxt &= universe & ~comp
            comp |= nxt
            frontier = nxt
        seen |= comp
        comps.append(comp)
    return comps


def clique_partition(adj: Sequence[int], universe: int | None = None) -> list[int] | None:
    """Components as bitmasks if every component is a clique, else ``None``."""
    comps = mask_components(adj, universe)
    for comp in comps:
        c = comp
        while c:
            low = c & -c
            v = low.bit_length() - 1
            if (adj[v] | low) & comp != comp:
                return None
            c ^= low
    return comps


def summand_prefix(k: int) -> str:
    return PREFIXES[k] if k < len(PREFIXES) else f"v{k}_"


def summand_names(sizes: Sequence[int]) -> list[list[str]]:
    """Vertex names for a list of summands, one prefix per summand."""
    if len(sizes) == 1:
        return [[f"x{i + 1}" for i in range(sizes[0])]]
    return [[f"{summand_prefix(k)}{i + 1}" for i in range(size)] for k, size in enumerate(sizes)]


def _term_edges(kind: str, a: int, b: int | None) -> tuple[int, list[tuple[int, int]]]:
    if b is not None:
        if kind != "K":
            raise InputError(f"only K accepts two sizes, got {kind}{a},{b}")
        return a + b, [(i, a + j) for i in range(a) for j in range(b)]
    if kind == "K":
        return a, list(itertools.combinations(range(a), 2))
    if kind == "C":
        if a < 3:
            raise InputError(f"cycle needs at least 3 vertices, got C{a}")
        return a, [(i, (i + 1) % a) for i in range(a)]
    if kind == "P":
        return a, [(i, i + 1) for i in range(a - 1)]
    return a, []  # I


def build_graph(text: str) -> Graph:
    """Graph from a construction string such as ``K3+K2`` or ``K2,2+I1``."""
    terms = []
    pos = 0
    for part in text.split("+"):
        m = _TERM_RE.fullmatch(part)
        if not m:
            raise InputError(f"cannot parse graph term {part.strip()!r} at position {pos}")
        kind, a, b = m.group(1), int(m.group(2)), m.group(3)
        if a < 1 and kind != "I":
            raise InputError(f"empty term {part.strip()!r} at position {pos}")
        terms.append(_term_edges(kind, a, int(b) if b is not None else None))
        pos += len(part) + 1
    names = summand_names([size for size, _ in terms])
    vertices, edges = [], []
    for (size, es), nm in zip(terms, names):
        base = len(vertices)
        vertices.extend(nm)
        edges.extend((base + i, base + j) for i, j in es)
    return Graph.from_edges(vertices, edges)


def parse_edge_list(text: str) -> Graph:
    """One ``u v`` pair per line; a lone name declares an isolated vertex."""
    vertices: list[str] = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) > 2:
            raise InputError(f"line {lineno}: expected 'u v', got {line!r}")
        for t in toks:
            if not VAR_RE.fullmatch(t):
                raise InputError(f"line {lineno}: bad vertex name {t!r}")
            if t not in vertices:
                vertices.append(t)
        if len(toks) == 2:
            if toks[0] == toks[1]:
                raise InputError(f"line {lineno}: loop at {toks[0]}")
            edges.append((toks[0], toks[1]))
    return Graph.from_edges(vertices, edges)


def load_graph(arg: str) -> Graph:
    """Edge-list file if ``arg`` names an existing file, else a construction string."""
    p = Path(arg)
    if p.is_file():
        return parse_edge_list(p.read_text())
    return build_graph(arg)


def edge_ideal(G: Graph) -> MonomialIdeal:
    gens = []
    for i, j in G.edges:
        e = [0] * G.n
        e[i] = e[j] = 1
        gens.append(e)
    return make_ideal(G.vertices, gens)


def is_disjoint_union_of_complete(G: Graph) -> bool:
    return clique_partition(G.adjacency) is not None


def is_bipartite(G: Graph) -> bool:
    return shortest_odd_cycle(G) is None


def shortest_odd_cycle(G: Graph) -> int | None:
    """Length of a shortest odd cycle, ``None`` for bipartite graphs.

    A breadth-first search from every root; an edge joining two vertices at
    the same depth ``k`` closes an odd walk of length ``2k + 1``, and the
    minimum over all roots is attained by a root on a shortest odd cycle.
    """
    best = None
    nbrs = [[j for j in range(G.n) if G.adjacency[i] >> j & 1] for i in range(G.n)]
    for root in range(G.n):
        depth = [-1] * G.n
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * depth[u] + 1 >= best:
                break
            for v in nbrs[u]:
                if depth[v] < 0:
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif depth[v] == depth[u]:
                    length = 2 * depth[u] + 1
                    if best is None or length < best:
                        best = length
    return best


def complement_graph(G: Graph) -> Graph:
    pairs = set(G.edges)
    return Graph.from_edges(
        G.vertices, [p for p in itertools.combinations(range(G.n), 2) if p not in pairs]
    )


def complementary_complex(G: Graph):
    """The complex whose faces are the vertex sets containing no edge of ``G``."""
    from .complex import sr_dual

    return sr_dual(edge_ideal(G))


def all_graphs(n: int, names: Sequence[str] | None = None) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices (``2**(n choose 2)`` of them)."""
    names = tuple(names) if names is not None else tuple(f"x{i + 1}" for i in range(n))
    pairs = list(itertools.combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph(names, tuple(p for k, p in enumerate(pairs) if code >> k & 1))


def graph_family(spec: str, max_vertices: int, min_vertices: int = 1) -> Iterator[Graph]:
    """Enumerate ``all`` or ``bipartite`` labelled graphs on min..max vertices."""
    if spec not in ("all", "bipartite"):
        raise InputError(f"unknown graph family {spec!r}")
    for n in range(min_vertices, max_vertices + 1):
        for G in all_graphs(n):
            if spec == "all" or is_bipartite(G):
                yield G
