"""Complete-intersection recognizers and executable theorem verifiers.

Each verifier computes the conditions of one statement about symbolic or
ordinary powers of an edge ideal and reports whether the computed booleans
stand in the claimed relation.  Verdicts:

* ``conforms``: the computed conditions agree with the statement;
* ``nonconforming``: they contradict it (a counterexample);
* ``hypotheses-not-met``: the instance is outside the statement's range;
* ``no-refutation``: a one-directional check found nothing to report.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field as dc_field
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from . import __version__
from .complex import (SimplicialComplex, bits, decompose_delta_blocks, induced, link,
                      popcount, sr_dual, vertex_components)
from .errors import InputError, SizeLimitError
from .graph import (Graph, edge_ideal, graph_family, is_disjoint_union_of_complete,
                    shortest_odd_cycle)
from .homology import QQ, FieldSpec, is_cm_reisner, is_s2_combinatorial, s2_failure
from .monomial import (MonomialIdeal, compare, dim_quotient, format_monomial, localize_at_var,
                       power, symbolic_power)
from .polarization import polarize, polarized_symbolic_facets
from .takayama import flc_plan, is_cm_takayama, is_flc_takayama, strip_linear, takayama_scan

THEOREMS = ("main-cm", "serre2", "power-cor", "svv", "main-flc", "ordinary-flc", "diagram")


# ---------------------------------------------------------------------------
# complete intersections
# ---------------------------------------------------------------------------


def is_complete_intersection(I: MonomialIdeal) -> bool:
    """Squarefree ``I`` is CI iff its minimal generators have disjoint supports."""
    if not I.is_squarefree:
        raise InputError("complete-intersection test needs a squarefree ideal")
    if I.is_unit:
        raise InputError("the unit ideal is not a proper ideal")
    if I.is_zero:
        return True
    return bool((I.exps.sum(axis=0) <= 1).all())


def _ci_complex(D: SimplicialComplex) -> bool:
    """CI test for the Stanley–Reisner ideal of ``D`` over its own vertices."""
    D = induced(D, D.support)
    return is_complete_intersection(sr_dual(D))


def is_locally_ci(D: SimplicialComplex) -> bool:
    """Every vertex link has a complete-intersection Stanley–Reisner ring."""
    return all(_ci_complex(link(D, 1 << v)) for v in range(D.n) if D.is_face(1 << v))


def _graph_shape(D: SimplicialComplex) -> str | None:
    """``m-gon`` or ``m-path`` for a connected one-dimensional complex."""
    edges = [f for f in D.facets if popcount(f) == 2]
    if len(edges) != len(D.facets):
        return None
    degree = [0] * D.n
    for e in edges:
        for v in bits(e):
            degree[v] += 1
    m = popcount(D.support)
    if all(degree[v] == 2 for v in bits(D.support)):
        return f"{m}-gon"
    if max(degree) <= 2 and len(edges) == m - 1:
        return f"{m}-path"
    return None


def lci_structure(D: SimplicialComplex) -> list[str]:
    """Class of each connected component.

    One of ``point``, ``<m>-path``, ``<m>-gon``, ``ci-complex`` (dimension at
    least two) or ``not-lci``; components are listed in vertex order.
    """
    out = []
    for comp in vertex_components(D):
        sub = induced(D, comp)
        if sub.n == 1:
            out.append("point")
            continue
        shape = _graph_shape(sub) if sub.dim == 1 else None
        if shape is not None:
            out.append(shape)
        elif sub.dim >= 2 and _ci_complex(sub):
            out.append("ci-complex")
        else:
            out.append("not-lci")
    return out


def minh_trung_check(D: SimplicialComplex) -> bool:
    """Every two disjoint edges lie on a common 4-cycle of ``D``."""
    if D.dim != 1:
        raise InputError("the 4-cycle criterion needs a one-dimensional complex")
    edges = {f for f in D.faces() if popcount(f) == 2}
    for e in edges:
        for f in edges:
            if e >= f or e & f:
                continue
            a, b = bits(e)
            c, d = bits(f)
            if not (((1 << b | 1 << c) in edges and (1 << d | 1 << a) in edges)
                    or ((1 << b | 1 << d) in edges and (1 << c | 1 << a) in edges)):
                return False
    return True


# ---------------------------------------------------------------------------
# single-ideal property checks
# ---------------------------------------------------------------------------

PROPERTIES = ("cm", "flc", "s2", "ci", "lci")
METHODS = ("takayama", "reisner", "both")


def is_cm_polarized(I: MonomialIdeal, field: FieldSpec = QQ) -> bool:
    """Reisner's criterion on the complex of the polarization."""
    if I.is_zero:
        return True
    if I.is_unit:
        raise InputError("the unit ideal has no quotient to test")
    return is_cm_reisner(sr_dual(polarize(I)), field)


def is_flc_polarized(I: MonomialIdeal, field: FieldSpec = QQ) -> bool:
    """FLC as equidimensional plus CM localizations, each tested by Reisner on its polarization."""
    if I.is_zero or I.is_unit:
        raise InputError("FLC needs a proper nonzero ideal")
    if not dim_quotient(I)[1]:
        return False
    for v in I.ambient:
        J = strip_linear(localize_at_var(I, v))
        if not (J.is_zero or J.is_unit) and not is_cm_polarized(J, field):
            return False
    return True


def check_property(I: MonomialIdeal, prop: str, method: str = "takayama",
                   field: FieldSpec = QQ) -> dict[str, bool]:
    """Evaluate one property; the result maps each route used to its answer.

    ``cm`` and ``flc`` honour ``method``; ``s2``, ``ci`` and ``lci`` are
    combinatorial and always report the route ``complex``.  ``s2`` is read off
    the polarization, which is exact for squarefree input and otherwise only
    able to refute.
    """
    if prop not in PROPERTIES:
        raise InputError(f"unknown property {prop!r}")
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}")
    if prop in ("ci", "lci"):
        if not I.is_squarefree:
            raise InputError(f"{prop} needs a squarefree ideal")
        if prop == "ci":
            return {"complex": is_complete_intersection(I)}
        return {"complex": is_locally_ci(sr_dual(I))}
    if prop == "s2":
        if I.is_unit:
            raise InputError("the unit ideal has no quotient to test")
        D = sr_dual(I if I.is_squarefree else polarize(I))
        return {"complex": is_s2_combinatorial(D)}
    out = {}
    if method in ("takayama", "both"):
        if prop == "cm":
            out["takayama"] = True if I.is_zero else is_cm_takayama(I, field)
        else:
            out["takayama"] = is_flc_takayama(I, field)
    if method in ("reisner", "both"):
        out["reisner"] = (is_cm_polarized if prop == "cm" else is_flc_polarized)(I, field)
    return out


# ---------------------------------------------------------------------------
# cached per-graph properties
# ---------------------------------------------------------------------------


def _ideal(G: Graph, kind: str, ell: int) -> MonomialIdeal:
    I = edge_ideal(G)
    if kind == "base":
        return I
    return power(I, ell) if kind == "power" else symbolic_power(I, ell)


@lru_cache(maxsize=4096)
def _scan(G: Graph, kind: str, ell: int, field: FieldSpec):
    """Takayama scan of ``kind`` (``power``/``symbolic``) at ``ell``; ``None`` for the zero ideal."""
    I = _ideal(G, kind, ell)
    if I.is_zero:
        return None
    return takayama_scan(I, field)


def _cm(G: Graph, kind: str, ell: int, field: FieldSpec) -> bool:
    r = _scan(G, kind, ell, field)
    return True if r is None else r.cm


def _cm_witness(G: Graph, kind: str, ell: int, field: FieldSpec) -> dict | None:
    r = _scan(G, kind, ell, field)
    if r is None or r.cm:
        return None
    return {"ideal": f"{kind}^{ell}", **r.cm_witnesses[0].as_dict()}


@lru_cache(maxsize=4096)
def _flc(G: Graph, kind: str, ell: int, field: FieldSpec) -> bool | None:
    """FLC through the cheapest route that fits; ``None`` when neither fits."""
    if not G.edges:
        return True
    Delta = sr_dual(edge_ideal(G))
    cap = [ell if any(v in e for e in G.edges) else 0 for v in range(G.n)]
    plan = flc_plan(Delta, cap)
    if plan is None:
        return None
    if plan == "direct":
        r = _scan(G, kind, ell, field)
        return r.flc
    return is_flc_takayama(_ideal(G, kind, ell), field, method="local")


def _pure_lci(G: Graph) -> bool:
    D = sr_dual(edge_ideal(G))
    return D.is_pure and is_locally_ci(D)


def _finite_quotient(G: Graph, ell: int) -> bool:
    """``I^(ell) / I^ell`` has finite length: the two agree after inverting any variable."""
    I = edge_ideal(G)
    A, B = symbolic_power(I, ell), power(I, ell)
    return all(compare(localize_at_var(A, v), localize_at_var(B, v)) == "equal" for v in G.vertices)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class TheoremReport:
    theorem: str
    instance: str
    conditions: dict[str, bool | None] = dc_field(default_factory=dict)
    verdict: str = "conforms"
    witnesses: list = dc_field(default_factory=list)
    derived: dict[str, bool] = dc_field(default_factory=dict)
    millis: int = 0
    field: str = "Q"
    version: str = __version__

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    @property
    def ok(self) -> bool:
        return self.verdict != "nonconforming"


def _instance(G: Graph, ell: int) -> str:
    edges = ",".join(f"{G.vertices[i]}-{G.vertices[j]}" for i, j in G.edges)
    return f"graph[{' '.join(G.vertices)}]{{{edges}}} ell={ell}"


def _all_equal(conds: dict) -> bool:
    vals = {v for v in conds.values() if v is not None}
    return len(vals) <= 1


def _d(G: Graph) -> int:
    return dim_quotient(edge_ideal(G))[0]


def _verify_main_cm(G, ell, field, rep):
    if ell < 3:
        rep.verdict = "hypotheses-not-met"
        rep.witnesses.append("needs ell >= 3")
        return
    c = rep.conditions
    c["cm_for_all_k_le_ell"] = all(_cm(G, "symbolic", k, field) for k in range(1, ell + 1))
    c["cm_at_ell"] = _cm(G, "symbolic", ell, field)
    Dl = polarized_symbolic_facets(sr_dual(edge_ideal(G)), ell)
    bad = s2_failure(Dl) if Dl.is_pure else ()
    c["s2_polarized_at_ell"] = Dl.is_pure and bad is None
    c["disjoint_union_of_complete"] = is_disjoint_union_of_complete(G)
    if not c["cm_at_ell"]:
        rep.witnesses.append(_cm_witness(G, "symbolic", ell, field))
    if bad:
        rep.witnesses.append({"s2_failure_face": list(bad)})
    rep.verdict = "conforms" if _all_equal(c) else "nonconforming"


def _verify_serre2(G, ell, field, rep):
    if ell < 3 or is_disjoint_union_of_complete(G):
        rep.verdict = "hypotheses-not-met"
        rep.witnesses.append("needs ell >= 3 and a graph that is not a disjoint union of cliques")
        return
    Dl = polarized_symbolic_facets(sr_dual(edge_ideal(G)), ell)
    bad = s2_failure(Dl) if Dl.is_pure else None
    ok = Dl.is_pure and bad is None
    rep.conditions["s2_polarized_at_ell"] = ok
    if ok:
        rep.verdict = "no-refutation"
    else:
        rep.verdict = "conforms"
        rep.witnesses.append({"s2_failure_face": list(bad)} if bad else "polarized complex not pure")


def _verify_power_cor(G, ell, field, rep):
    if ell < 3:
        rep.verdict = "hypotheses-not-met"
        rep.witnesses.append("needs ell >= 3")
        return
    cm = _cm(G, "power", ell, field)
    ci = is_complete_intersection(edge_ideal(G))
    rep.conditions.update(cm_power_at_ell=cm, complete_intersection=ci)
    rep.verdict = "conforms" if (not cm or ci) else "nonconforming"


def _verify_svv(G, ell, field, rep):
    if ell < 2:
        rep.verdict = "hypotheses-not-met"
        rep.witnesses.append("needs t >= 2")
        return
    I = edge_ideal(G)
    A, B = symbolic_power(I, ell), power(I, ell)
    equal = compare(A, B) == "equal"
    oc = shortest_odd_cycle(G)
    rep.conditions.update(no_odd_cycle_up_to_2t_minus_1=(oc is None or oc > 2 * ell - 1),
                          symbolic_equals_ordinary=equal)
    if oc is not None:
        rep.witnesses.append({"shortest_odd_cycle": oc})
    if not equal:
        extra = next(g for g in A.gens if not B.contains(g))
        rep.witnesses.append({"in_symbolic_not_ordinary": format_monomial(extra, I.ambient)})
    rep.verdict = "conforms" if _all_equal(rep.conditions) else "nonconforming"


def _verify_main_flc(G, ell, field, rep):
    D = sr_dual(edge_ideal(G))
    d = _d(G)
    if not D.is_pure or d < 3 or ell < 3:
        rep.verdict = "hypotheses-not-met"
        rep.witnesses.append(f"needs a pure complex, d >= 3 and ell >= 3 (d = {d}, pure = {D.is_pure})")
        return
    c = rep.conditions
    each = [_flc(G, "symbolic", k, field) for k in range(1, ell + 1)]
    c["flc_for_all_k_le_ell"] = None if None in each else all(each)
    c["flc_at_ell"] = each[-1]
    dec = decompose_delta_blocks(D)
    c["delta_block_decomposition"] = dec is not None
    if dec is not None:
        rep.witnesses.append({"blocks": [list(b) for b in dec.blocks], "d": dec.d})
    _fill_derived(rep, "delta_block_decomposition")
    rep.verdict = "conforms" if _all_equal(c) else "nonconforming"


def _verify_ordinary_flc(G, ell, field, rep):
    d = _d(G)
    if d < 1 or ell < 3:
        rep.verdict = "hypotheses-not-met"
        rep.witnesses.append(f"needs d >= 1 and ell >= 3 (d = {d})")
        return
    c = rep.conditions
    each = [_flc(G, "power", k, field) for k in range(1, ell + 1)]
    c["flc_powers_for_all_k_le_ell"] = None if None in each else all(each)
    c["flc_power_at_ell"] = each[-1]
    sym = _flc(G, "symbolic", ell, field)
    c["flc_symbolic_and_finite_quotient"] = None if sym is None else (sym and _finite_quotient(G, ell))
    D = sr_dual(edge_ideal(G))
    c["pure_lci"] = D.is_pure and is_locally_ci(D)
    rep.witnesses.append({"lci_structure": lci_structure(D)})
    _fill_derived(rep, "pure_lci")
    rep.verdict = "conforms" if _all_equal(c) else "nonconforming"


def _fill_derived(rep: TheoremReport, anchor: str) -> None:
    """Conditions that were too large to compute, predicted from ``anchor`` by the equivalence."""
    for k, v in rep.conditions.items():
        if v is None:
            rep.derived[k] = rep.conditions[anchor]


def _verify_diagram(G, ell, field, rep):
    c = rep.conditions
    c["cm_power"] = _cm(G, "power", ell, field)
    c["flc_power"] = _flc(G, "power", ell, field)
    c["pure_lci"] = _pure_lci(G)
    c["cm_symbolic"] = _cm(G, "symbolic", ell, field)
    c["flc_symbolic"] = _flc(G, "symbolic", ell, field)
    c["flc_base"] = _flc(G, "base", 1, field)
    arrows = [("cm_power", "flc_power"), ("cm_power", "cm_symbolic"),
              ("flc_power", "flc_symbolic"), ("cm_symbolic", "flc_symbolic"),
              ("flc_symbolic", "flc_base"), ("pure_lci", "flc_base")]
    if ell >= 3:
        arrows.append(("flc_power", "pure_lci"))
    broken = [f"{a} => {b}" for a, b in arrows if c[a] is True and c[b] is False]
    rep.witnesses.extend(broken)
    rep.verdict = "nonconforming" if broken else "conforms"


_VERIFIERS: dict[str, Callable] = {
    "main-cm": _verify_main_cm,
    "serre2": _verify_serre2,
    "power-cor": _verify_power_cor,
    "svv": _verify_svv,
    "main-flc": _verify_main_flc,
    "ordinary-flc": _verify_ordinary_flc,
    "diagram": _verify_diagram,
}


def verify_theorem(theorem: str, G: Graph, ell: int, field: FieldSpec = QQ) -> TheoremReport:
    if theorem not in _VERIFIERS:
        raise InputError(f"unknown theorem id {theorem!r}; choose from {', '.join(THEOREMS)}")
    if ell < 1:
        raise InputError("ell must be positive")
    t0 = time.perf_counter()
    rep = TheoremReport(theorem, _instance(G, ell), field=str(field))
    _VERIFIERS[theorem](G, ell, field, rep)
    rep.millis = int(1000 * (time.perf_counter() - t0))
    return rep


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

MAX_SWEEP_VERTICES = 6


@dataclass
class SweepReport:
    theorem: str
    family: str
    max_vertices: int
    ell: int
    field: str
    graphs: int = 0
    verdicts: dict[str, int] = dc_field(default_factory=dict)
    counterexamples: list[str] = dc_field(default_factory=list)
    millis: int = 0
    version: str = __version__

    @property
    def nonconforming(self) -> int:
        return self.verdicts.get("nonconforming", 0)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["nonconforming"] = self.nonconforming
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def _sweep_one(args) -> tuple[str, str]:
    theorem, G, ell, char = args
    rep = verify_theorem(theorem, G, ell, FieldSpec(char))
    return rep.verdict, rep.instance


def sweep(family: str, max_vertices: int, ell: int, field: FieldSpec = QQ, theorem: str = "main-cm",
          min_vertices: int = 1, jobs: int = 1, sample: int | None = None,
          seed: int = 0) -> SweepReport:
    """Run one verifier over every labelled graph of a bounded family.

    With ``sample`` only that many graphs, drawn without replacement using
    ``seed``, are checked.
    """
    if max_vertices > MAX_SWEEP_VERTICES:
        raise SizeLimitError(f"sweeps are capped at {MAX_SWEEP_VERTICES} vertices")
    if theorem not in _VERIFIERS:
        raise InputError(f"unknown theorem id {theorem!r}")
    t0 = time.perf_counter()
    rep = SweepReport(theorem, family, max_vertices, ell, str(field))
    graphs: Iterable[Graph] = graph_family(family, max_vertices, min_vertices)
    if sample is not None:
        pool_ = list(graphs)
        pick = np.random.default_rng(seed).choice(len(pool_), size=min(sample, len(pool_)), replace=False)
        graphs = [pool_[k] for k in sorted(pick)]
    tasks = ((theorem, G, ell, field.char) for G in graphs)
    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            results: Iterable = list(pool.imap(_sweep_one, tasks, chunksize=16))
    else:
        results = map(_sweep_one, tasks)
    for verdict, instance in results:
        rep.graphs += 1
        rep.verdicts[verdict] = rep.verdicts.get(verdict, 0) + 1
        if verdict == "nonconforming":
            rep.counterexamples.append(instance)
    rep.counterexamples.sort()
    rep.verdicts = dict(sorted(rep.verdicts.items()))
    rep.millis = int(1000 * (time.perf_counter() - t0))
    return rep
