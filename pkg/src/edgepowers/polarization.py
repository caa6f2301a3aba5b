"""Polarization of monomial ideals.

A variable ``x`` with exponent up to ``D`` is split into copies
``x, x(1), ..., x(D-1)``; copy 0 is the variable itself.  Ambient lists put
every copy-0 variable first (in the original order), followed by layer 1,
layer 2, and so on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .complex import SimplicialComplex
from .errors import InputError
from .monomial import MonomialIdeal, PrimeSet, make_ideal


@dataclass(frozen=True, order=True)
class PolVar:
    base: str
    copy: int

    @property
    def name(self) -> str:
        return self.base if self.copy == 0 else f"{self.base}({self.copy})"

    def __str__(self) -> str:
        return self.name


Copies = Union[int, Sequence[int], None]


def _copy_counts(ambient: Sequence[str], copies: Copies, needed: Sequence[int]) -> list[int]:
    if copies is None:
        counts = [max(1, int(d)) for d in needed]
    elif isinstance(copies, int):
        counts = [max(1, copies)] * len(ambient)
    else:
        counts = [max(1, int(c)) for c in copies]
        if len(counts) != len(ambient):
            raise InputError("copy counts differ in length from the ambient")
    if any(c < d for c, d in zip(counts, needed)):
        raise InputError("fewer copies than the largest exponent needs")
    return counts


def pol_ambient(ambient: Sequence[str], counts: Sequence[int]) -> list[PolVar]:
    out = [PolVar(v, 0) for v in ambient]
    for layer in range(1, max(counts, default=1)):
        out.extend(PolVar(v, layer) for v, c in zip(ambient, counts) if c > layer)
    return out


def polarize(I: MonomialIdeal, copies: Copies = None) -> MonomialIdeal:
    """Squarefree polarization.

    ``copies`` fixes the number of copies per variable (an int for all of
    them); by default each variable gets as many as its largest exponent.
    Two ideals polarized with the same copy counts share an ambient.
    """
    if I.is_zero or I.is_unit:
        if copies is None:
            return I
        needed = [0] * I.nvars
    else:
        needed = I.exps.max(axis=0).tolist()
    counts = _copy_counts(I.ambient, copies, needed)
    pvars = pol_ambient(I.ambient, counts)
    pos = {(p.base, p.copy): k for k, p in enumerate(pvars)}
    rows = np.zeros((len(I.gens), len(pvars)), dtype=np.int64)
    for r, g in enumerate(I.gens):
        for v, e in zip(I.ambient, g):
            for j in range(e):
                rows[r, pos[(v, j)]] = 1
    return make_ideal([p.name for p in pvars], rows)


def polarized_prime_power(P: PrimeSet, ell: int, copies: Copies = None) -> list[PrimeSet]:
    """Primes whose intersection is the polarization of ``P**ell``.

    One prime ``(x_1(i_1), ..., x_h(i_h))`` for every choice of copy indices
    with ``i_1 + ... + i_h <= ell - 1``.
    """
    if ell < 1:
        raise InputError("ell must be positive")
    idx = P.indices
    if not idx:
        raise InputError("the prime must contain at least one variable")
    needed = [ell if i in idx else 0 for i in range(len(P.ambient))]
    counts = _copy_counts(P.ambient, copies, needed)
    names = [p.name for p in pol_ambient(P.ambient, counts)]
    out = []
    for choice in itertools.product(range(ell), repeat=len(idx)):
        if sum(choice) <= ell - 1:
            vars_ = tuple(PolVar(P.ambient[i], c).name for i, c in zip(idx, choice))
            out.append(PrimeSet(tuple(names), vars_))
    return sorted(out, key=lambda Q: Q.indices)


def symbolic_pol_vertices(D: SimplicialComplex, ell: int) -> list[str]:
    """Vertex names of the polarized symbolic power complex: ``ell`` copies of each vertex."""
    return [p.name for p in pol_ambient(D.vertices, [ell] * D.n)]


def polarized_symbolic_facets(D: SimplicialComplex, ell: int) -> SimplicialComplex:
    """Complex of the polarized ``ell``-th symbolic power, from the facets of ``D``.

    For a facet ``F`` each vertex ``y`` outside ``F`` is assigned a layer
    ``i_y`` with total weight ``sum i_y <= ell - 1``; the facet is every
    polarized vertex except the copies ``y(i_y)``.  Vertices with ``i_y = k``
    form the marked set of layer ``k``.  Every vertex gets ``ell`` copies.
    """
    if ell < 1:
        raise InputError("ell must be positive")
    names = symbolic_pol_vertices(D, ell)
    n = D.n
    # position of copy k of vertex v in the layered ambient
    position = {(v, k): k * n + v for v in range(n) for k in range(ell)}
    full = (1 << len(names)) - 1
    facets = []
    for F in D.facets:
        outside = [v for v in range(n) if not F >> v & 1]
        for choice in _weighted_choices(len(outside), ell - 1):
            removed = 0
            for v, k in zip(outside, choice):
                removed |= 1 << position[(v, k)]
            facets.append(full & ~removed)
    return SimplicialComplex.make(names, facets)


def _weighted_choices(m: int, budget: int):
    """Tuples of ``m`` nonnegative integers with sum at most ``budget``."""
    if m == 0:
        yield ()
        return
    for first in range(budget + 1):
        for rest in _weighted_choices(m - 1, budget - first):
            yield (first,) + rest
