"""Graded Betti numbers of monomial quotients from induced-subcomplex homology.

For a squarefree ideal with Stanley–Reisner complex ``D``,
``beta_{i,s}(S/I) = dim H~_{|s|-i-1}(D restricted to s)`` for ``i >= 1``.
Only vertex sets ``s`` that are unions of generator supports can contribute
(they are the squarefree degrees of the lcm lattice), so the sum runs over
that union-closed family.  Non-squarefree ideals are polarized first.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np

from .complex import maximal_sets, popcount, sr_dual
from .errors import InputError, SizeLimitError
from .homology import QQ, FieldSpec, homology_of_facets
from .monomial import MonomialIdeal
from .polarization import polarize

MAX_BETTI_VARS = 22


@dataclass
class BettiTable:
    """Total Betti numbers of ``S/I`` plus the graded pieces ``(i, degree) -> beta``."""

    totals: tuple[int, ...]
    graded: dict[tuple[int, int], int] = dc_field(default_factory=dict)

    @property
    def projdim(self) -> int:
        return len(self.totals) - 1

    def as_dict(self) -> dict:
        return {
            "totals": list(self.totals),
            "graded": [[i, j, b] for (i, j), b in sorted(self.graded.items())],
        }


def lcm_supports(supports: list[int]) -> np.ndarray:
    """The union-closed family generated by the given masks (empty set excluded)."""
    gens = np.unique(np.asarray(supports, dtype=np.int64))
    known = gens
    frontier = gens
    while len(frontier):
        joins = np.unique((frontier[:, None] | gens[None, :]).ravel())
        frontier = np.setdiff1d(joins, known, assume_unique=True)
        known = np.union1d(known, frontier)
        if len(known) > 1 << MAX_BETTI_VARS:
            raise SizeLimitError("lcm lattice too large")
    return known


def restriction_facets(facets: np.ndarray, s: int) -> list[int]:
    """Facets of the complex restricted to the vertex set ``s``."""
    return maximal_sets(int(x) for x in np.unique(facets & s))


def _squarefree_input(I: MonomialIdeal) -> MonomialIdeal:
    if I.is_zero or I.is_unit:
        raise InputError("Betti numbers need a proper nonzero ideal")
    J = I if I.is_squarefree else polarize(I)
    if J.nvars > MAX_BETTI_VARS:
        raise SizeLimitError(f"{J.nvars} variables after polarization; the cap is {MAX_BETTI_VARS}")
    return J


def _accumulate(J: MonomialIdeal, degrees, field: FieldSpec) -> BettiTable:
    facets = np.asarray(sr_dual(J).facets, dtype=np.int64)
    graded: Counter = Counter({(0, 0): 1})
    for s in degrees:
        s = int(s)
        size = popcount(s)
        prof = homology_of_facets(restriction_facets(facets, s), field)
        for k, r in enumerate(prof.ranks):
            if r:
                # H~_{k-1} feeds beta_{i,s} with |s| - i - 1 = k - 1
                graded[(size - k, size)] += r
    top = max(i for i, _ in graded)
    totals = [0] * (top + 1)
    for (i, _), b in graded.items():
        totals[i] += b
    return BettiTable(tuple(totals), dict(graded))


def betti_table(I: MonomialIdeal, field: FieldSpec = QQ) -> BettiTable:
    J = _squarefree_input(I)
    supports = [int(sum(1 << j for j in np.nonzero(row)[0])) for row in J.exps]
    return _accumulate(J, lcm_supports(supports), field)


def betti_table_all_subsets(I: MonomialIdeal, field: FieldSpec = QQ) -> BettiTable:
    """Same sum over every nonempty vertex subset; the slow reference route."""
    J = _squarefree_input(I)
    return _accumulate(J, range(1, 1 << J.nvars), field)


def betti_numbers(I: MonomialIdeal, field: FieldSpec = QQ) -> tuple[int, ...]:
    """``(beta_0, ..., beta_pd)`` of ``S/I``."""
    return betti_table(I, field).totals
