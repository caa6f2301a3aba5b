"""Degree complexes and the graded local cohomology of monomial quotients.

For a degree vector ``a`` with negative support ``G``, the degree complex
consists of the sets ``F`` disjoint from ``G`` such that every minimal
generator has an exponent exceeding ``a`` at some index outside ``F ∪ G``.
The graded piece ``H^i_m(S/I)_a`` then has dimension equal to the rank of
``H~_{i-|G|-1}`` of that complex, provided ``G`` is a face of the complex of
the radical (and vanishes otherwise).

Two facts make the search over all of ``Z^n`` finite:

* the degree complex only depends on ``G`` and not on how negative the
  negative entries are, so ``-1`` stands in for every negative value;
* raising ``a_i`` past the largest exponent ``D_i`` of ``x_i`` among the
  generators changes nothing, so ``0..D_i`` covers every nonnegative value,
  and a nonzero piece at ``a_i = D_i`` repeats for every larger ``a_i``.

So ``S/I`` is Cohen–Macaulay iff no piece below the top degree is nonzero on
``{-1, 0, .., D_i}^n``, and has finite local cohomology iff the only such
pieces sit at ``G = ∅`` strictly inside the box ``a_i < D_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

from .complex import SimplicialComplex, bits, link, maximal_sets, popcount, sr_dual
from .errors import InputError, SizeLimitError
from .homology import QQ, FieldSpec, homology_of_facets
from .monomial import MonomialIdeal, dim_quotient, localize_at_var, make_ideal, radical, zero_ideal

MAX_SCAN_ENTRIES = 400_000_000
LOCAL_BUDGET = 1_000_000_000  # summed over all localizations


def exponent_cap(I: MonomialIdeal) -> tuple[int, ...]:
    """Largest exponent of each variable over the minimal generators."""
    if I.is_zero:
        return (0,) * I.nvars
    return tuple(int(x) for x in I.exps.max(axis=0))


def delta_of(I: MonomialIdeal) -> SimplicialComplex:
    """Stanley–Reisner complex of the radical of ``I``."""
    return sr_dual(radical(I))


def degree_complex(I: MonomialIdeal, a: Sequence[int]) -> SimplicialComplex:
    """The degree complex at ``a``, computed straight from the two conditions."""
    a = np.asarray([int(x) for x in a], dtype=np.int64)
    if len(a) != I.nvars:
        raise InputError("degree vector length differs from the ambient")
    neg = a < 0
    # F is a face iff F avoids the negative support and no generator has its
    # "exceeding" index set inside F; both are minimal non-face families
    nonfaces = [np.where(np.arange(I.nvars) == j, 1, 0) for j in np.nonzero(neg)[0]]
    if len(I.gens):
        exceed = (I.exps > a[None, :]) & ~neg[None, :]
        nonfaces.extend(exceed.astype(np.int64))
    ideal = make_ideal(I.ambient, nonfaces)
    return sr_dual(ideal)


def local_cohomology_dim(I: MonomialIdeal, i: int, a: Sequence[int], field: FieldSpec = QQ) -> int:
    """``dim_K H^i_m(S/I)_a``."""
    a = [int(x) for x in a]
    G = sum(1 << j for j, x in enumerate(a) if x < 0)
    if not delta_of(I).is_face(G):
        return 0
    k = i - popcount(G) - 1
    if k < -1:
        return 0
    Da = degree_complex(I, a)
    return homology_of_facets(Da.facets, field, top=k)[k]


@dataclass(frozen=True)
class Witness:
    a: tuple[int, ...]
    i: int
    rank: int

    def as_dict(self) -> dict:
        return {"a": list(self.a), "i": self.i, "rank": self.rank}


@dataclass
class ScanResult:
    dim: int
    cm: bool = True
    flc: bool = True
    cm_witnesses: list[Witness] = dc_field(default_factory=list)
    flc_witnesses: list[Witness] = dc_field(default_factory=list)
    complexes: int = 0  # distinct degree complexes whose homology was computed


def _upset(points: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Indicator of the box cells dominating at least one of ``points``."""
    ind = np.zeros(shape, dtype=bool)
    if len(points):
        ind[tuple(points.T)] = True
        for ax in range(len(shape)):
            ind = np.logical_or.accumulate(ind, axis=ax)
    return ind


@dataclass
class _Slice:
    """All degree complexes with a fixed negative support ``G``."""

    G: int
    rest: list[int]
    shape: tuple[int, ...]
    cand: np.ndarray        # candidate faces (masks over the full ambient)
    patterns: np.ndarray    # unique packed face-presence rows
    first: np.ndarray       # a representative cell per pattern
    inverse: np.ndarray     # pattern index of every cell

    def degree(self, cell: int) -> tuple[int, ...]:
        coords = np.unravel_index(int(cell), self.shape)
        a = [-1] * (len(self.rest) + popcount(self.G))
        for j in range(len(a)):
            if not self.G >> j & 1:
                a[j] = 0
        for j, c in zip(self.rest, coords):
            a[j] = int(c)
        return tuple(a)

    def facets(self, u: int) -> list[int]:
        row = np.unpackbits(self.patterns[u])[: len(self.cand)].astype(bool)
        present = self.cand[row]
        if not len(present):
            return []
        return maximal_sets(int(x) for x in present)


def _slice(I: MonomialIdeal, table: np.ndarray, G: int, cap: Sequence[int]) -> _Slice:
    n = I.nvars
    rest = [j for j in range(n) if not G >> j & 1]
    shape = tuple(cap[j] + 1 for j in rest)
    cells = int(np.prod(shape))
    faces = np.nonzero(table)[0]
    cand = faces[((faces & G) == 0) & (table[faces | G] == 1)]
    if cells * len(cand) > MAX_SCAN_ENTRIES:
        raise SizeLimitError(f"degree scan needs {cells} x {len(cand)} entries")
    E = I.exps[:, rest]
    present = np.empty((cells, len(cand)), dtype=bool)
    rest_pos = {j: k for k, j in enumerate(rest)}
    for c, F in enumerate(cand):
        Ep = E.copy()
        for j in bits(int(F)):
            Ep[:, rest_pos[j]] = 0
        present[:, c] = ~_upset(Ep, shape).reshape(-1)
    packed = np.packbits(present, axis=1)
    patterns, first, inverse = np.unique(packed, axis=0, return_index=True, return_inverse=True)
    return _Slice(G, rest, shape, cand, patterns, first, inverse.reshape(-1))


def takayama_scan(I: MonomialIdeal, field: FieldSpec = QQ, stop_early: bool = True) -> ScanResult:
    """Decide CM and FLC of ``S/I`` from the finite box of degree complexes."""
    if I.is_zero or I.is_unit:
        raise InputError("the local cohomology scan needs a proper nonzero ideal")
    d, _ = dim_quotient(I)
    cap = exponent_cap(I)
    Delta = delta_of(I)
    table = Delta.table
    faces = sorted((int(m) for m in np.nonzero(table)[0]), key=lambda m: (popcount(m), m))
    res = ScanResult(dim=d)
    for G in faces:
        g = popcount(G)
        if g > d - 1:
            break
        top = d - g - 2  # degrees i = k + g + 1 < d
        sl = _slice(I, table, G, cap)
        if G == 0:
            boundary = np.zeros(sl.shape, dtype=bool)
            for ax, D in enumerate(sl.shape):
                idx = [slice(None)] * len(sl.shape)
                idx[ax] = D - 1
                boundary[tuple(idx)] = True
            on_boundary = np.zeros(len(sl.patterns), dtype=bool)
            on_boundary[sl.inverse[boundary.reshape(-1)]] = True
        for u in range(len(sl.patterns)):
            facets = sl.facets(u)
            if not facets:
                continue
            res.complexes += 1
            prof = homology_of_facets(facets, field, top=top)
            for k in range(-1, top + 1):
                r = prof[k]
                if not r:
                    continue
                i = k + g + 1
                res.cm = False
                res.cm_witnesses.append(Witness(sl.degree(sl.first[u]), i, r))
                if G != 0:
                    res.flc = False
                    res.flc_witnesses.append(Witness(sl.degree(sl.first[u]), i, r))
                elif on_boundary[u]:
                    cell = int(np.nonzero((sl.inverse == u) & boundary.reshape(-1))[0][0])
                    res.flc = False
                    res.flc_witnesses.append(Witness(sl.degree(cell), i, r))
            if stop_early and not res.cm and not res.flc:
                return res
    return res


def estimate_entries(Delta: SimplicialComplex, cap: Sequence[int], d: int | None = None) -> int:
    """Cells times candidate faces over every slice a scan would build.

    Only ``Delta`` (the complex of the radical) and the exponent caps are
    needed, so the cost of a scan can be judged before forming the ideal.
    """
    if d is None:
        d = 0 if Delta.dim is None else Delta.dim + 1
    table = Delta.table
    faces = np.nonzero(table)[0]
    total = 0
    for G in faces:
        G = int(G)
        if popcount(G) > d - 1:
            continue
        cells = 1
        for j in range(Delta.n):
            if not G >> j & 1:
                cells *= int(cap[j]) + 1
        cand = int(np.count_nonzero(((faces & G) == 0) & (table[faces | G] == 1)))
        total += cells * cand
    return total


def scan_entries(I: MonomialIdeal) -> int:
    """Number of (degree, candidate face) entries a full scan would touch."""
    d, _ = dim_quotient(I)
    return estimate_entries(delta_of(I), exponent_cap(I), d)


def is_cm_takayama(I: MonomialIdeal, field: FieldSpec = QQ) -> bool:
    return takayama_scan(I, field).cm


def strip_linear(J: MonomialIdeal) -> MonomialIdeal:
    """Drop variables that are generators or occur in no generator.

    Modding out a variable that lies in ``J`` and adjoining a free variable
    both preserve the Cohen–Macaulay property, so the result is CM iff ``J``
    is.  The result lives on the remaining variables.
    """
    if J.is_zero or J.is_unit:
        return J
    E = J.exps
    linear = (E.sum(axis=1) == 1)
    lin_vars = np.zeros(J.nvars, dtype=bool)
    lin_vars[np.argmax(E[linear], axis=1)] = True
    keep_rows = ~linear
    used = (E[keep_rows] > 0).any(axis=0) & ~lin_vars
    cols = np.nonzero(used)[0]
    if not keep_rows.any():
        return zero_ideal(())
    return make_ideal([J.ambient[j] for j in cols], E[keep_rows][:, cols])


def _cm_or_trivial(J: MonomialIdeal, field: FieldSpec) -> bool:
    J = strip_linear(J)
    # the zero ring and polynomial rings are Cohen–Macaulay
    if J.is_unit or J.is_zero:
        return True
    return takayama_scan(J, field).cm


def is_flc_localized(I: MonomialIdeal, field: FieldSpec = QQ) -> bool:
    """FLC through the punctured spectrum.

    A graded quotient has finite local cohomology below its dimension iff it
    is equidimensional and Cohen–Macaulay at every prime other than the
    maximal one.  Every such monomial prime misses some variable, and
    inverting ``x_i`` amounts to setting ``x_i = 1``, so it is enough that
    every ``I`` with one variable set to 1 has a Cohen–Macaulay quotient.
    """
    if I.is_zero or I.is_unit:
        raise InputError("FLC needs a proper nonzero ideal")
    _, unmixed = dim_quotient(I)
    if not unmixed:
        return False
    return all(_cm_or_trivial(localize_at_var(I, v), field) for v in I.ambient)


def flc_plan(Delta: SimplicialComplex, cap: Sequence[int]) -> str | None:
    """``direct``, ``local`` or ``None`` (neither fits the size budget).

    The localization at ``x_v`` has the link of ``v`` as the complex of its
    radical and at most the same caps on the remaining variables.
    """
    if estimate_entries(Delta, cap) <= MAX_SCAN_ENTRIES:
        return "direct"
    per = []
    for v in range(Delta.n):
        if not Delta.is_face(1 << v):
            continue
        rest = [c for j, c in enumerate(cap) if j != v]
        per.append(estimate_entries(link(Delta, 1 << v), rest))
    if max(per, default=0) <= MAX_SCAN_ENTRIES and sum(per) <= LOCAL_BUDGET:
        return "local"
    return None


def is_flc_takayama(I: MonomialIdeal, field: FieldSpec = QQ, method: str = "auto") -> bool:
    """FLC of ``S/I``.

    ``direct`` scans the degree box; ``local`` checks every localization at a
    variable; ``auto`` picks whichever fits the size budget.
    """
    if I.is_zero or I.is_unit:
        raise InputError("FLC needs a proper nonzero ideal")
    if method == "auto":
        method = flc_plan(delta_of(I), exponent_cap(I))
        if method is None:
            raise SizeLimitError("FLC scan exceeds the size budget on both routes")
    if method == "direct":
        return takayama_scan(I, field).flc
    if method == "local":
        return is_flc_localized(I, field)
    raise InputError(f"unknown FLC method {method!r}")


def box_degree_complexes(I: MonomialIdeal, G: int = 0) -> Iterator[tuple[tuple[int, ...], SimplicialComplex]]:
    """Every cell of the box for negative support ``G`` with its degree complex.

    Built by the vectorised scan; used to cross-check :func:`degree_complex`.
    """
    sl = _slice(I, delta_of(I).table, G, exponent_cap(I))
    for cell, u in enumerate(sl.inverse):
        yield sl.degree(cell), SimplicialComplex.make(I.ambient, sl.facets(int(u)))
