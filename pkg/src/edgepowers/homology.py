"""Exact reduced homology and the homological property checkers.

Homology is computed from the face table of a complex: free faces are
collapsed first (this never changes homology), then boundary matrices of
what is left are ranked exactly over Q or over a prime field.

The checkers only visit *closed* faces, i.e. intersections of facets.  If a
face ``F`` is not closed, every facet through ``F`` also contains some
vertex ``v`` outside ``F``, so the link of ``F`` is a cone with apex ``v``:
it is acyclic and connected in codimension one exactly when its base is.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._accel import USE_NUMBA, collapse, face_table, homology_ranks, rank_modp, rank_rational
from .complex import SimplicialComplex, bits, join
from .errors import InputError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """``char == 0`` means the rationals, otherwise the prime field F_char."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and not (_is_prime(self.char) and self.char < 2**31):
            raise InputError(f"field characteristic must be 0 or a prime below 2^31, got {self.char}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().lower()
        if t in ("q", "qq", "0"):
            return cls(0)
        if t.startswith("f") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise InputError(f"field must be 'q' or 'f<prime>', got {text!r}")

    @classmethod
    def default(cls) -> "FieldSpec":
        return cls.parse(os.environ.get("EDGEPOWERS_FIELD", "q"))

    def rank(self, M: np.ndarray) -> int:
        return rank_rational(M) if self.char == 0 else rank_modp(M, self.char)

    def __str__(self) -> str:
        return "Q" if self.char == 0 else f"F{self.char}"


QQ = FieldSpec(0)


@dataclass(frozen=True)
class HomologyProfile:
    """Ranks of reduced homology in degrees -1, 0, ..., dim."""

    ranks: tuple[int, ...]

    def __getitem__(self, degree: int) -> int:
        k = degree + 1
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0

    def nonzero_below(self, degree: int) -> list[int]:
        return [i - 1 for i, r in enumerate(self.ranks[: degree + 1]) if r]


def _compress(facets: np.ndarray) -> tuple[np.ndarray, int]:
    """Re-index facet masks over the bits they actually use."""
    support = int(np.bitwise_or.reduce(facets)) if len(facets) else 0
    pos = bits(support)
    out = np.zeros(len(facets), dtype=np.int64)
    for k, p in enumerate(pos):
        out |= ((facets >> p) & 1) << k
    return out, len(pos)


def _boundary(lower: np.ndarray, upper: np.ndarray, nbits: int) -> np.ndarray:
    M = np.zeros((len(lower), len(upper)), dtype=np.int64)
    cols = np.arange(len(upper))
    below = np.zeros(len(upper), dtype=np.int64)
    for b in range(nbits):
        has = (upper >> b) & 1 == 1
        if has.any():
            rows = np.searchsorted(lower, upper[has] ^ (1 << b))
            M[rows, cols[has]] = np.where(below[has] % 2 == 0, 1, -1)
        below += (upper >> b) & 1
    return M


def homology_of_facets(facets: Sequence[int] | np.ndarray, field: FieldSpec = QQ,
                       top: int | None = None) -> HomologyProfile:
    """Reduced homology of the complex generated by the given facet masks.

    ``top`` truncates the computation: only degrees ``<= top`` are returned.
    """
    facets = np.asarray(facets, dtype=np.int64).reshape(-1)
    if len(facets) == 0:
        return HomologyProfile(())
    dim = int(np.bitwise_count(facets.astype(np.uint64)).max()) - 1
    if top is None or top > dim:
        top = dim
    if top < -1:
        return HomologyProfile(())
    comp, nb = _compress(facets)
    if USE_NUMBA:
        ranks = homology_ranks(comp, nb, top, field.char)
        if ranks is not None:
            return HomologyProfile(tuple(int(r) for r in ranks))
    table = face_table(comp, nb)
    collapse(table, nb)
    faces = np.nonzero(table)[0].astype(np.int64)
    sizes = np.bitwise_count(faces.astype(np.uint64)).astype(np.int64)
    by_dim = [np.sort(faces[sizes == k + 1]) for k in range(-1, top + 2)]
    ranks_bd = [0] * (top + 3)  # ranks_bd[k + 1] = rank of boundary C_k -> C_{k-1}
    for k in range(0, top + 2):
        lo, up = by_dim[k], by_dim[k + 1]
        if len(lo) and len(up):
            ranks_bd[k + 1] = field.rank(_boundary(lo, up, nb))
    out = []
    for k in range(-1, top + 1):
        n_k = len(by_dim[k + 1])
        out.append(n_k - ranks_bd[k + 1] - ranks_bd[k + 2])
    return HomologyProfile(tuple(out))


def reduced_homology(D: SimplicialComplex, field: FieldSpec = QQ) -> HomologyProfile:
    return homology_of_facets(D.facets, field)


# ---------------------------------------------------------------------------
# closed faces and link scans
# ---------------------------------------------------------------------------


def closed_faces(facets: Sequence[int]) -> np.ndarray:
    """All intersections of nonempty families of facets, sorted by size then value."""
    F = np.unique(np.asarray(facets, dtype=np.int64))
    known = F
    frontier = F
    while len(frontier):
        meets = np.unique((frontier[:, None] & F[None, :]).ravel())
        frontier = np.setdiff1d(meets, known, assume_unique=True)
        known = np.union1d(known, frontier)
    sizes = np.bitwise_count(known.astype(np.uint64))
    return known[np.lexsort((known, sizes))]


def _connected(masks: np.ndarray, need: int) -> bool:
    """Whether the facets form one class when joined by intersections of size ``>= need``."""
    if len(masks) <= 1:
        return True
    inter = np.bitwise_count((masks[:, None] & masks[None, :]).astype(np.uint64)) >= need
    reach = inter[0].copy()
    while True:
        nxt = inter[reach].any(axis=0)
        if (nxt == reach).all():
            return bool(reach.all())
        reach = nxt


@dataclass(frozen=True)
class LinkFailure:
    face: tuple[str, ...]
    degree: int
    rank: int


class _Scan:
    """Links of the closed faces of a complex, with cheap filters first."""

    def __init__(self, D: SimplicialComplex):
        self.D = D
        self.facets = np.array(D.facets, dtype=np.int64)
        self.closed = closed_faces(D.facets) if D.facets else np.zeros(0, dtype=np.int64)

    def link(self, F: int) -> np.ndarray:
        sel = self.facets[(self.facets & F) == F]
        return sel ^ F

    def faces(self, include_empty: bool) -> list[int]:
        return [int(F) for F in self.closed if F or include_empty]

    def failure(self, F: int, degree: int, rank: int) -> LinkFailure:
        return LinkFailure(tuple(self.D.names(F)), degree, rank)


def cm_failure(D: SimplicialComplex, field: FieldSpec = QQ, include_empty: bool = True) -> LinkFailure | None:
    """First face whose link has homology below its top degree, if any.

    Purity is checked by the callers; links are scanned with a connectivity
    filter before any exact homology is computed.
    """
    if D.is_void:
        return None
    whole = np.array(D.facets, dtype=np.int64)
    if include_empty and D.dim >= 1 and not _connected(whole, 1):
        # a disconnected complex fails at the empty face; skip the face lattice
        return LinkFailure((), 0, homology_of_facets(whole, field, top=0)[0])
    scan = _Scan(D)
    faces = scan.faces(include_empty)
    heavy = []
    for F in faces:
        L = scan.link(F)
        dim_l = int(np.bitwise_count(L.astype(np.uint64)).max()) - 1
        if dim_l < 1:
            continue
        if not _connected(L, 1):
            return scan.failure(F, 0, homology_of_facets(L, field, top=0)[0])
        if dim_l >= 2:
            heavy.append((F, L, dim_l))
    heavy.sort(key=lambda t: len(t[1]))
    for F, L, dim_l in heavy:
        prof = homology_of_facets(L, field, top=dim_l - 1)
        for k in range(-1, dim_l):
            if prof[k]:
                return scan.failure(F, k, prof[k])
    return None


def is_cm_reisner(D: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    """Reisner's criterion: every link has homology only in its top degree."""
    if D.is_void:
        return False
    if not D.is_pure:
        return False
    return cm_failure(D, field) is None


def is_flc_links(D: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    """Pure, and the link of every nonempty face is Cohen–Macaulay."""
    if D.is_void or not D.is_pure:
        return False
    return cm_failure(D, field, include_empty=False) is None


def s2_failure(D: SimplicialComplex) -> tuple[str, ...] | None:
    """A face whose link is not connected in codimension one, if any."""
    scan = _Scan(D)
    for F in scan.faces(include_empty=True):
        L = scan.link(F)
        size = int(np.bitwise_count(np.uint64(L[0])))
        if size < 2:
            continue
        if not _connected(L, size - 1):
            return tuple(D.names(F))
    return None


def is_s2_combinatorial(D: SimplicialComplex) -> bool:
    """Pure, and every link (the complex itself included) is connected in codimension one."""
    if D.is_void or not D.is_pure:
        return False
    return s2_failure(D) is None


def kunneth_check(A: SimplicialComplex, B: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    """Ranks of the join against the tensor formula in every degree."""
    ha = reduced_homology(A, field)
    hb = reduced_homology(B, field)
    hj = reduced_homology(join(A, B), field)
    top = len(hj.ranks) - 2
    for i in range(-1, max(top, 0) + 2):
        expect = sum(ha[p] * hb[i - 1 - p] for p in range(-1, i + 1))
        if hj[i] != expect:
            return False
    return True
