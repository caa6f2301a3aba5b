"""Simplicial complexes stored by their facets.

Faces are bitmasks over an ordered vertex list.  Two degenerate complexes
are kept apart: the *void* complex has no faces at all (``facets == ()``)
and is the complex of the unit ideal, while ``{∅}`` has the single facet
``0``.  A vertex that lies in no facet is a non-face; it corresponds to a
variable that belongs to the Stanley–Reisner ideal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from ._accel import face_table
from .errors import InputError
from .graph import Graph, clique_partition, mask_components, summand_names, summand_prefix
from .monomial import VAR_RE, MonomialIdeal, make_ideal, minimal_primes, minimal_transversals


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def maximal_sets(masks: Iterable[int]) -> list[int]:
    """Inclusion-maximal members of a family of bitmasks."""
    cand = sorted(set(masks), key=popcount, reverse=True)
    out: list[int] = []
    for m in cand:
        if not any(m & f == m for f in out):
            out.append(m)
    return out


def _facet_key(mask: int):
    return (popcount(mask), bits(mask))


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[str, ...]
    facets: tuple[int, ...]

    @classmethod
    def make(cls, vertices: Sequence[str], facets: Iterable) -> "SimplicialComplex":
        """Build from facets given as bitmasks or as iterables of names/indices."""
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise InputError("repeated vertex name")
        pos = {v: i for i, v in enumerate(vertices)}
        masks = []
        for f in facets:
            if isinstance(f, (int, np.integer)):
                m = int(f)
                if m >> len(vertices):
                    raise InputError("facet mask out of range")
            else:
                m = 0
                for v in f:
                    if isinstance(v, str):
                        if v not in pos:
                            raise InputError(f"unknown vertex {v!r}")
                        m |= 1 << pos[v]
                    else:
                        m |= 1 << int(v)
            masks.append(m)
        return cls(vertices, tuple(sorted(maximal_sets(masks), key=_facet_key)))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int | None:
        """Dimension; ``-1`` for ``{∅}`` and ``None`` for the void complex."""
        if self.is_void:
            return None
        return max(popcount(f) for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.facets}) <= 1

    @property
    def support(self) -> int:
        s = 0
        for f in self.facets:
            s |= f
        return s

    @cached_property
    def table(self) -> np.ndarray:
        """Face indicator over all vertex bitmasks (memoised)."""
        return face_table(np.array(self.facets, dtype=np.int64), self.n)

    def faces(self) -> list[int]:
        return [int(m) for m in np.nonzero(self.table)[0]]

    def f_vector(self) -> list[int]:
        """Face counts by dimension, starting at the empty face."""
        if self.is_void:
            return []
        idx = np.nonzero(self.table)[0].astype(np.uint64)
        counts = np.bincount(np.bitwise_count(idx), minlength=self.dim + 2)
        return [int(c) for c in counts]

    def is_face(self, face: int | Iterable[str]) -> bool:
        m = self.mask(face)
        return any(m & f == m for f in self.facets)

    def mask(self, face) -> int:
        if isinstance(face, (int, np.integer)):
            return int(face)
        pos = {v: i for i, v in enumerate(self.vertices)}
        m = 0
        for v in face:
            if v not in pos:
                raise InputError(f"unknown vertex {v!r}")
            m |= 1 << pos[v]
        return m

    def names(self, mask: int) -> list[str]:
        return [self.vertices[i] for i in bits(mask)]

    def __str__(self) -> str:
        if self.is_void:
            return "void"
        return "<" + ", ".join("{" + ",".join(self.names(f)) + "}" for f in self.facets) + ">"


ComplexOrIdeal = Union[SimplicialComplex, MonomialIdeal]


def void_complex(vertices: Sequence[str]) -> SimplicialComplex:
    return SimplicialComplex(tuple(vertices), ())


def simplex(vertices: Sequence[str]) -> SimplicialComplex:
    return SimplicialComplex(tuple(vertices), ((1 << len(vertices)) - 1,))


def minimal_nonfaces(D: SimplicialComplex) -> list[int]:
    """Minimal non-faces: the minimal sets meeting every facet complement."""
    full = (1 << D.n) - 1
    return minimal_transversals(full & ~f for f in D.facets)


def sr_dual(x: ComplexOrIdeal) -> ComplexOrIdeal:
    """Stanley–Reisner correspondence in either direction."""
    if isinstance(x, MonomialIdeal):
        if not x.is_squarefree:
            raise InputError("Stanley–Reisner duality needs a squarefree ideal")
        full = (1 << x.nvars) - 1
        facets = [full & ~sum(1 << i for i in P.indices) for P in minimal_primes(x)]
        return SimplicialComplex.make(x.ambient, facets)
    gens = []
    for m in minimal_nonfaces(x):
        gens.append([(m >> i) & 1 for i in range(x.n)])
    return make_ideal(x.vertices, gens)


def _reindex(mask: int, positions: Sequence[int]) -> int:
    out = 0
    for k, p in enumerate(positions):
        if mask >> p & 1:
            out |= 1 << k
    return out


def star(D: SimplicialComplex, face) -> SimplicialComplex:
    F = D.mask(face)
    if not D.is_face(F):
        raise InputError("star of a non-face")
    return SimplicialComplex(D.vertices, tuple(f for f in D.facets if f & F == F))


def link(D: SimplicialComplex, face) -> SimplicialComplex:
    """Link of a face, on the vertex list with the face's vertices removed."""
    F = D.mask(face)
    if not D.is_face(F):
        raise InputError("link of a non-face")
    keep = [i for i in range(D.n) if not F >> i & 1]
    facets = [_reindex(f & ~F, keep) for f in D.facets if f & F == F]
    return SimplicialComplex.make([D.vertices[i] for i in keep], facets)


def induced(D: SimplicialComplex, mask: int) -> SimplicialComplex:
    """Restriction to a vertex subset, re-indexed over that subset."""
    keep = bits(mask)
    return SimplicialComplex.make([D.vertices[i] for i in keep], [_reindex(f & mask, keep) for f in D.facets])


def join(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    if set(A.vertices) & set(B.vertices):
        raise InputError("join needs disjoint vertex sets")
    shift = A.n
    facets = [a | (b << shift) for a in A.facets for b in B.facets]
    return SimplicialComplex(A.vertices + B.vertices, tuple(sorted(facets, key=_facet_key)))


def disjoint_union(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    if set(A.vertices) & set(B.vertices):
        raise InputError("disjoint union needs disjoint vertex sets")
    facets = list(A.facets) + [b << A.n for b in B.facets]
    return SimplicialComplex.make(A.vertices + B.vertices, facets)


def vertex_components(D: SimplicialComplex) -> list[int]:
    """Connected components of the 1-skeleton over the vertices that are faces."""
    adj = [0] * D.n
    for f in D.facets:
        for i in bits(f):
            adj[i] |= f
    return mask_components(adj, D.support)


def codim1_connected(D: SimplicialComplex) -> bool:
    """Facets chained by intersections of size ``dim``; needs purity."""
    if len(D.facets) <= 1:
        return True
    if not D.is_pure:
        return False
    parent = list(range(len(D.facets)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # facets sharing a ridge: bucket every facet under each of its ridges
    buckets: dict[int, int] = {}
    for k, f in enumerate(D.facets):
        for b in bits(f):
            r = f ^ (1 << b)
            if r in buckets:
                parent[find(k)] = find(buckets[r])
            else:
                buckets[r] = k
    roots = {find(k) for k in range(len(D.facets))}
    return len(roots) == 1


@dataclass(frozen=True)
class ShapeReport:
    dim: int | None
    pure: bool
    components: int
    codim1_connected: bool


def shape_report(D: SimplicialComplex) -> ShapeReport:
    return ShapeReport(D.dim, D.is_pure, len(vertex_components(D)), codim1_connected(D))


def degree_complex_symbolic(D: SimplicialComplex, a: Sequence[int], ell: int) -> SimplicialComplex:
    """Subcomplex generated by facets whose complement carries weight at most ``ell - 1``."""
    a = [int(x) for x in a]
    if len(a) != D.n:
        raise InputError("degree vector length differs from vertex count")
    if any(x < 0 for x in a):
        raise InputError("negative degree entries; use takayama.degree_complex")
    if ell < 1:
        raise InputError("ell must be positive")
    full = (1 << D.n) - 1
    keep = [f for f in D.facets if sum(a[i] for i in bits(full & ~f)) <= ell - 1]
    return SimplicialComplex(D.vertices, tuple(keep))


def delta_block(*sizes: int, names: Sequence[Sequence[str]] | None = None) -> SimplicialComplex:
    """Join of point sets of the given sizes; complement of a disjoint union of cliques."""
    if not sizes or any(s < 1 for s in sizes):
        raise InputError("delta_block needs positive sizes")
    groups = [list(g) for g in names] if names is not None else summand_names(sizes)
    vertices = [v for g in groups for v in g]
    offsets = np.cumsum([0] + [len(g) for g in groups])
    facets = [sum(1 << (offsets[k] + c) for k, c in enumerate(choice))
              for choice in itertools.product(*[range(len(g)) for g in groups])]
    return SimplicialComplex.make(vertices, facets)


def delta_block_union(blocks: Sequence[Sequence[int]]) -> SimplicialComplex:
    """Disjoint union of delta blocks.

    Component ``c`` uses one prefix (``x``, ``y``, ...) and numbers its
    vertices consecutively group by group, so ``[(3, 3, 3), (3, 3, 3)]``
    lives on ``x1..x9, y1..y9`` with groups ``x1..x3``, ``x4..x6``, ...
    """
    out = None
    for c, sizes in enumerate(blocks):
        prefix = summand_prefix(c)
        names, k = [], 1
        for s in sizes:
            names.append([f"{prefix}{k + j}" for j in range(s)])
            k += s
        piece = delta_block(*sizes, names=names)
        out = piece if out is None else disjoint_union(out, piece)
    if out is None:
        raise InputError("no blocks given")
    return out


def complex_graph(D: SimplicialComplex) -> Graph:
    """Graph of minimal non-faces of size two."""
    edges = [tuple(bits(m)) for m in minimal_nonfaces(D) if popcount(m) == 2]
    return Graph.from_edges(D.vertices, edges)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]
    d: int


def block_tuples(D: SimplicialComplex) -> list[tuple[int, ...] | None]:
    """Per connected component, the clique sizes of its non-edge graph, or ``None``."""
    if D.is_void or D.support != (1 << D.n) - 1:
        return [None]
    out: list[tuple[int, ...] | None] = []
    for comp in vertex_components(D):
        sub = induced(D, comp)
        nonfaces = minimal_nonfaces(sub)
        if any(popcount(m) != 2 for m in nonfaces):
            out.append(None)
            continue
        adj = [0] * sub.n
        for m in nonfaces:
            i, j = bits(m)
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        parts = clique_partition(adj)
        out.append(None if parts is None else tuple(sorted((popcount(p) for p in parts), reverse=True)))
    return out


def decompose_delta_blocks(D: SimplicialComplex) -> BlockDecomposition | None:
    tuples = block_tuples(D)
    if any(t is None for t in tuples):
        return None
    lengths = {len(t) for t in tuples}
    if len(lengths) != 1:
        return None
    return BlockDecomposition(tuple(tuples), lengths.pop())


def parse_complex(text: str) -> SimplicialComplex:
    """Read one facet per line (comma-separated names).

    ``!v`` declares a vertex that is not a face, ``{}`` is the empty facet,
    and an optional ``# vars: ...`` line fixes the vertex order.
    """
    declared = None
    facets: list[list[str]] = []
    absent: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("vars:") and declared is None:
                declared = body[5:].split()
            continue
        if not line:
            continue
        if line.startswith("!"):
            absent.append(line[1:].strip())
        elif line == "{}":
            facets.append([])
        else:
            facets.append([t.strip() for t in line.split(",")])
    names = [v for f in facets for v in f] + absent
    for v in names:
        if not VAR_RE.fullmatch(v):
            raise InputError(f"bad vertex name {v!r}")
    if declared is None:
        declared = list(dict.fromkeys(names))
    clash = set(absent) & {v for f in facets for v in f}
    if clash:
        raise InputError(f"vertices both absent and in a facet: {sorted(clash)}")
    return SimplicialComplex.make(declared, facets)


def format_complex(D: SimplicialComplex) -> str:
    lines = ["# vars: " + " ".join(D.vertices)]
    for f in D.facets:
        lines.append(",".join(D.names(f)) if f else "{}")
    for i in range(D.n):
        if not D.support >> i & 1:
            lines.append("!" + D.vertices[i])
    return "\n".join(lines) + "\n"
