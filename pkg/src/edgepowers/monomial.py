"""Exact arithmetic on monomial ideals.

An ideal is stored as its minimal generating set, each generator an
exponent vector over an explicit ordered ambient variable list.  The only
order ever used on monomials is divisibility.  Generators are kept sorted
lexicographically by exponent vector, so two ideals are equal exactly when
their canonical forms are.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from ._accel import minimal_rows
from .errors import InputError

Monomial = tuple[int, ...]
MonomialLike = Union[Sequence[int], str]

VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_()]*")
_FACTOR_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9_()]*)\s*(?:\^\s*(\d+))?\s*$")


def _minimalize(rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows.reshape(0, rows.shape[1] if rows.ndim == 2 else 0)
    if rows.shape[1] == 0:
        return rows[:1]  # the unit ideal of a ring without variables
    rows = np.unique(rows, axis=0)
    order = np.lexsort((np.arange(len(rows)), rows.sum(axis=1)))
    rows = rows[order]
    rows = rows[minimal_rows(rows)]
    # canonical order: lexicographic on exponent vectors
    return rows[np.lexsort(rows.T[::-1])]


def _member_mask(cands: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """For each candidate row, whether some generator divides it."""
    if len(gens) == 0 or len(cands) == 0:
        return np.zeros(len(cands), dtype=bool)
    out = np.empty(len(cands), dtype=bool)
    step = max(1, 2_000_000 // (len(gens) * gens.shape[1] + 1))
    for s in range(0, len(cands), step):
        sub = cands[s:s + step]
        out[s:s + step] = (gens[None, :, :] <= sub[:, None, :]).all(axis=2).any(axis=1)
    return out


@dataclass(frozen=True)
class MonomialIdeal:
    ambient: tuple[str, ...]
    gens: tuple[Monomial, ...]

    @classmethod
    def _from_rows(cls, ambient: Sequence[str], rows: np.ndarray) -> "MonomialIdeal":
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim != 2:
            # an empty ambient cannot infer the row count from reshape(-1, 0)
            rows = rows.reshape(-1, len(ambient)) if len(ambient) else np.zeros((0, 0), dtype=np.int64)
        rows = _minimalize(rows)
        return cls(tuple(ambient), tuple(tuple(int(x) for x in r) for r in rows))

    @cached_property
    def exps(self) -> np.ndarray:
        return np.array(self.gens, dtype=np.int64).reshape(len(self.gens), len(self.ambient))

    @property
    def nvars(self) -> int:
        return len(self.ambient)

    @property
    def is_zero(self) -> bool:
        return len(self.gens) == 0

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def index(self, var: str) -> int:
        try:
            return self.ambient.index(var)
        except ValueError:
            raise InputError(f"unknown variable {var!r}") from None

    def contains(self, m: MonomialLike) -> bool:
        vec = np.asarray(to_exponents(m, self.ambient), dtype=np.int64)
        return bool(_member_mask(vec[None, :], self.exps)[0])

    def __contains__(self, m: MonomialLike) -> bool:
        return self.contains(m)

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(format_monomial(g, self.ambient) for g in self.gens) + ")"


@dataclass(frozen=True, order=True)
class PrimeSet:
    """A monomial prime: the ideal generated by a subset of the variables."""

    ambient: tuple[str, ...]
    vars: tuple[str, ...]

    def __post_init__(self):
        unknown = set(self.vars) - set(self.ambient)
        if unknown:
            raise InputError(f"prime uses unknown variables {sorted(unknown)}")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.ambient.index(v) for v in self.vars))

    @property
    def height(self) -> int:
        return len(self.vars)

    def ideal(self) -> MonomialIdeal:
        return prime_power(self, 1)

    def __str__(self) -> str:
        return "(" + ",".join(self.vars) + ")"


def to_exponents(m: MonomialLike, ambient: Sequence[str]) -> Monomial:
    if isinstance(m, str):
        return parse_monomial(m, ambient)
    vec = tuple(int(x) for x in m)
    if len(vec) != len(ambient):
        raise InputError(f"exponent vector of length {len(vec)} over {len(ambient)} variables")
    if any(x < 0 for x in vec):
        raise InputError("negative exponent")
    return vec


def parse_monomial(text: str, ambient: Sequence[str]) -> Monomial:
    """Parse ``x1^2*x2``; ``1`` is the unit monomial."""
    pos = {v: i for i, v in enumerate(ambient)}
    exps = [0] * len(ambient)
    text = text.strip()
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        m = _FACTOR_RE.match(factor)
        if not m:
            raise InputError(f"cannot parse monomial factor {factor!r}")
        name, power = m.group(1), m.group(2)
        if name not in pos:
            raise InputError(f"unknown variable {name!r}")
        exps[pos[name]] += int(power) if power else 1
    return tuple(exps)


def format_monomial(m: Sequence[int], ambient: Sequence[str]) -> str:
    parts = []
    for v, e in zip(ambient, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def make_ideal(ambient: Sequence[str], gens: Iterable[MonomialLike]) -> MonomialIdeal:
    """Minimalised ideal generated by ``gens`` over ``ambient``."""
    ambient = tuple(ambient)
    if len(set(ambient)) != len(ambient):
        raise InputError("repeated variable in ambient")
    for v in ambient:
        if not VAR_RE.fullmatch(v):
            raise InputError(f"bad variable name {v!r}")
    rows = [to_exponents(g, ambient) for g in gens]
    return MonomialIdeal._from_rows(ambient, np.array(rows, dtype=np.int64).reshape(len(rows), len(ambient)))


def zero_ideal(ambient: Sequence[str]) -> MonomialIdeal:
    return MonomialIdeal(tuple(ambient), ())


def unit_ideal(ambient: Sequence[str]) -> MonomialIdeal:
    return MonomialIdeal(tuple(ambient), ((0,) * len(ambient),))


def _check_same(I: MonomialIdeal, J: MonomialIdeal) -> None:
    if I.ambient != J.ambient:
        raise InputError("ideals live over different ambient variable lists")


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I, J)
    return MonomialIdeal._from_rows(I.ambient, np.vstack([I.exps, J.exps]))


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I, J)
    A, B = I.exps, J.exps
    rows = (A[:, None, :] + B[None, :, :]).reshape(-1, I.nvars)
    return MonomialIdeal._from_rows(I.ambient, rows)


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """Exact intersection via least common multiples of generators."""
    _check_same(I, J)
    A, B = I.exps, J.exps
    if len(A) == 0 or len(B) == 0:
        return zero_ideal(I.ambient)
    # generators already in the other ideal survive as themselves
    a_in = _member_mask(A, B)
    b_in = _member_mask(B, A)
    A2, B2 = A[~a_in], B[~b_in]
    lcms = np.maximum(A2[:, None, :], B2[None, :, :]).reshape(-1, I.nvars)
    return MonomialIdeal._from_rows(I.ambient, np.vstack([A[a_in], B[b_in], lcms]))


def intersect_all(ideals: Iterable[MonomialIdeal]) -> MonomialIdeal:
    ideals = list(ideals)
    if not ideals:
        raise InputError("empty intersection")
    # smallest first keeps intermediate generator sets small
    ideals.sort(key=lambda J: len(J.gens))
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def power(I: MonomialIdeal, ell: int) -> MonomialIdeal:
    """``I**ell``; ``ell = 0`` gives the unit ideal by convention."""
    if ell < 0:
        raise InputError("negative power")
    if ell == 0:
        return unit_ideal(I.ambient)
    out = I
    for _ in range(ell - 1):
        out = product(out, I)
    return out


def indeg(I: MonomialIdeal) -> int:
    if I.is_zero:
        raise InputError("zero ideal has no initial degree")
    return int(I.exps.sum(axis=1).min())


def radical(I: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal._from_rows(I.ambient, (I.exps > 0).astype(np.int64))


def _require_squarefree(I: MonomialIdeal) -> None:
    if not I.is_squarefree:
        raise InputError("operation needs a squarefree monomial ideal")


def minimal_transversals(edges: Iterable[int]) -> list[int]:
    """Minimal vertex covers (as bitmasks) of a hypergraph given by bitmask edges."""
    covers = [0]
    for e in sorted(set(edges), key=lambda x: bin(x).count("1")):
        keep = [c for c in covers if c & e]
        grow = [c | (1 << b) for c in covers if not c & e for b in range(e.bit_length()) if e >> b & 1]
        cand = sorted(set(keep + grow), key=lambda x: bin(x).count("1"))
        covers = []
        for c in cand:
            if not any(d & c == d for d in covers):
                covers.append(c)
    return covers


def _mask_to_vars(mask: int, ambient: Sequence[str]) -> tuple[str, ...]:
    return tuple(v for i, v in enumerate(ambient) if mask >> i & 1)


def minimal_primes(I: MonomialIdeal) -> list[PrimeSet]:
    """Minimal primes of a squarefree ideal, sorted by index tuple."""
    _require_squarefree(I)
    if I.is_unit:
        return []
    supports = [sum(1 << i for i, e in enumerate(g) if e) for g in I.gens]
    masks = minimal_transversals(supports)
    masks.sort(key=lambda m: [i for i in range(I.nvars) if m >> i & 1])
    return [PrimeSet(I.ambient, _mask_to_vars(m, I.ambient)) for m in masks]


def prime_power(P: PrimeSet, ell: int) -> MonomialIdeal:
    if ell < 1:
        raise InputError("prime powers need a positive exponent")
    n = len(P.ambient)
    idx = P.indices
    if not idx:
        return zero_ideal(P.ambient)
    rows = []
    stack = [(0, ell, [0] * n)]
    while stack:
        k, left, e = stack.pop()
        if k == len(idx) - 1:
            e = e.copy()
            e[idx[k]] = left
            rows.append(e)
            continue
        for t in range(left + 1):
            e2 = e.copy()
            e2[idx[k]] = t
            stack.append((k + 1, left - t, e2))
    return MonomialIdeal._from_rows(P.ambient, np.array(rows, dtype=np.int64))


def mixed_power(primes: Sequence[PrimeSet], exps: Sequence[int]) -> MonomialIdeal:
    """Intersection of ``primes[k] ** exps[k]``."""
    if len(primes) != len(exps):
        raise InputError("primes and exponents differ in length")
    if not primes:
        raise InputError("no primes given")
    if any(e < 1 for e in exps):
        raise InputError("mixed power exponents must be positive")
    amb = primes[0].ambient
    if any(P.ambient != amb for P in primes):
        raise InputError("primes over different ambients")
    return intersect_all(prime_power(P, e) for P, e in zip(primes, exps))


def symbolic_power(I: MonomialIdeal, ell: int) -> MonomialIdeal:
    """``ell``-th symbolic power of a squarefree ideal."""
    _require_squarefree(I)
    if ell < 1:
        raise InputError("symbolic powers need ell >= 1")
    if I.is_zero or I.is_unit:
        return I
    primes = minimal_primes(I)
    return mixed_power(primes, [ell] * len(primes))


def compare(I: MonomialIdeal, J: MonomialIdeal) -> str:
    """One of ``equal``, ``left-in-right``, ``right-in-left``, ``incomparable``."""
    _check_same(I, J)
    if I.gens == J.gens:
        return "equal"
    i_in_j = bool(_member_mask(I.exps, J.exps).all())
    j_in_i = bool(_member_mask(J.exps, I.exps).all())
    if i_in_j and j_in_i:  # pragma: no cover - canonical forms make this unreachable
        return "equal"
    if i_in_j:
        return "left-in-right"
    if j_in_i:
        return "right-in-left"
    return "incomparable"


def localize_at_var(I: MonomialIdeal, var: str) -> MonomialIdeal:
    """Set ``var = 1``; the result lives over the remaining variables."""
    j = I.index(var)
    amb = I.ambient[:j] + I.ambient[j + 1:]
    rows = np.delete(I.exps, j, axis=1)
    return MonomialIdeal._from_rows(amb, rows)


def dim_quotient(I: MonomialIdeal) -> tuple[int, bool]:
    """Krull dimension of S/I and whether all minimal primes have one height."""
    if I.is_unit:
        raise InputError("the unit ideal has no quotient dimension")
    if I.is_zero:
        return I.nvars, True
    heights = {P.height for P in minimal_primes(radical(I))}
    return I.nvars - min(heights), len(heights) == 1


def parse_ideal(text: str, ambient: Sequence[str] | None = None) -> MonomialIdeal:
    """Read the one-generator-per-line text format.

    Blank lines and ``#`` comments are ignored, except a ``# vars: a b c``
    directive which fixes the ambient variable order.  Without it the
    variables are taken in order of first appearance.
    """
    lines = []
    declared = list(ambient) if ambient is not None else None
    for raw in text.splitlines():
        stripped = raw.strip()
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.startswith("vars:") and declared is None:
                declared = body[5:].split()
            continue
        if stripped:
            lines.append(stripped)
    if declared is None:
        declared = []
        for line in lines:
            for name in VAR_RE.findall(line):
                if name not in declared:
                    declared.append(name)
    return make_ideal(declared, lines)


def format_ideal(I: MonomialIdeal) -> str:
    out = ["# vars: " + " ".join(I.ambient)]
    out.extend(format_monomial(g, I.ambient) for g in I.gens)
    return "\n".join(out) + "\n"
