import itertools
import json

import numpy as np
import pytest

import oracles
from conftest import SEED
from edgepowers import __version__
from edgepowers.classify import (MAX_SWEEP_VERTICES, TheoremReport, check_property,
                                 is_complete_intersection, is_locally_ci, lci_structure,
                                 minh_trung_check, sweep, verify_theorem)
from edgepowers.complex import SimplicialComplex, delta_block_union, sr_dual
from edgepowers.errors import InputError, SizeLimitError
from edgepowers.graph import Graph, build_graph, complementary_complex, edge_ideal
from edgepowers.homology import FieldSpec
from edgepowers.monomial import make_ideal, power, symbolic_power, zero_ideal
from edgepowers.takayama import is_cm_takayama

PENTAGON = complementary_complex(build_graph("C5"))


def cx(n, fam):
    return SimplicialComplex.make([f"v{i}" for i in range(n)], fam)


# --- complete intersections ----------------------------------------------------------


def test_complete_intersection_examples():
    assert is_complete_intersection(edge_ideal(build_graph("K2+K2+K2+I2")))
    assert not is_complete_intersection(edge_ideal(build_graph("K3")))
    assert not is_complete_intersection(make_ideal(["x1", "x2", "x3"], ["x1*x2", "x2*x3"]))
    assert is_complete_intersection(zero_ideal(["x"]))
    with pytest.raises(InputError):
        is_complete_intersection(make_ideal(["x"], ["x^2"]))


def _ci_by_height(I):
    """Height equals the number of generators (minimal vertex covers by brute force)."""
    supports = [[j for j, e in enumerate(g) if e] for g in I.gens]
    n = I.nvars
    best = min(len(S) for k in range(n + 1) for S in itertools.combinations(range(n), k)
               if all(set(s) & set(S) for s in supports))
    return best == len(I.gens)


@pytest.mark.parametrize("n", range(2, 5))
def test_complete_intersection_against_height(n):
    for fam in oracles.all_complexes(n):
        I = sr_dual(cx(n, fam))
        if I.is_zero or I.is_unit:
            continue
        assert is_complete_intersection(I) == _ci_by_height(I)


# --- locally complete intersections ---------------------------------------------------


def test_lci_examples():
    assert is_locally_ci(PENTAGON) and lci_structure(PENTAGON) == ["5-gon"]
    big = delta_block_union([(3, 3, 3), (3, 3, 3)])
    assert not is_locally_ci(big)
    assert lci_structure(big) == ["not-lci", "not-lci"]
    point = cx(1, [[0]])
    assert is_locally_ci(point) and lci_structure(point) == ["point"]
    path = cx(4, [[0, 1], [1, 2], [2, 3]])
    assert is_locally_ci(path) and lci_structure(path) == ["4-path"]
    octa = delta_block_union([(2, 2, 2)])
    assert is_locally_ci(octa) and lci_structure(octa) == ["ci-complex"]


@pytest.mark.parametrize("n", range(1, 6))
def test_lci_structure_agrees_with_links(n):
    fams = oracles.all_complexes(n) if n <= 4 else oracles.complexes_up_to_iso(5)
    for fam in fams:
        D = cx(n, fam)
        if D.is_void or D.dim < 0:
            continue
        classes = lci_structure(D)
        assert is_locally_ci(D) == ("not-lci" not in classes), (fam, classes)


# --- the 4-cycle criterion --------------------------------------------------------------


def test_minh_trung_examples():
    D32 = complementary_complex(build_graph("K3+K2"))
    assert minh_trung_check(D32)
    assert not minh_trung_check(cx(4, [[0, 1], [2, 3]]))
    assert minh_trung_check(cx(4, [[0, 1], [1, 2], [2, 3], [0, 3]]))
    with pytest.raises(InputError):
        minh_trung_check(cx(3, [[0, 1, 2]]))


def _one_dim_complexes(n):
    """Pure 1-dim complexes on all n vertices that are not a full simplex."""
    for fam in oracles.complexes_up_to_iso(n, pure_only=True):
        if fam and all(len(F) == 2 for F in fam) and len(set().union(*fam)) == n and n > 2:
            yield fam


@pytest.mark.parametrize("n", [3, 4, 5])
def test_minh_trung_against_symbolic_cube(n):
    for fam in _one_dim_complexes(n):
        D = cx(n, fam)
        assert minh_trung_check(D) == is_cm_takayama(symbolic_power(sr_dual(D), 3)), fam


def test_minh_trung_six_vertices_sample():
    rng = np.random.default_rng(SEED)
    pairs = list(itertools.combinations(range(6), 2))
    checked = 0
    while checked < 12:
        fam = [set(p) for p in pairs if rng.random() < 0.45]
        if not fam or len(set().union(*fam)) < 6:
            continue
        D = cx(6, fam)
        assert minh_trung_check(D) == is_cm_takayama(symbolic_power(sr_dual(D), 3)), fam
        checked += 1


# --- property dispatch ---------------------------------------------------------------


def test_check_property_routes():
    I = symbolic_power(edge_ideal(build_graph("C5")), 2)
    assert check_property(I, "cm", "both") == {"takayama": True, "reisner": True}
    assert check_property(I, "cm") == {"takayama": True}
    J = power(edge_ideal(build_graph("P4")), 2)
    assert check_property(J, "flc", "both") == {"takayama": True, "reisner": True}
    assert check_property(J, "cm", "reisner") == {"reisner": False}
    K = edge_ideal(build_graph("C5"))
    assert check_property(K, "lci") == {"complex": True}
    assert check_property(K, "ci") == {"complex": False}
    assert check_property(K, "s2") == {"complex": True}
    assert check_property(zero_ideal(["x"]), "cm", "both") == {"takayama": True, "reisner": True}
    with pytest.raises(InputError):
        check_property(K, "gorenstein")
    with pytest.raises(InputError):
        check_property(power(K, 2), "ci")


# --- theorem verifiers --------------------------------------------------------------


def test_verify_main_cm_example():
    rep = verify_theorem("main-cm", build_graph("K3+K2"), 3)
    assert rep.verdict == "conforms"
    assert rep.conditions == {"cm_for_all_k_le_ell": True, "cm_at_ell": True,
                              "s2_polarized_at_ell": True, "disjoint_union_of_complete": True}


def test_verify_main_cm_negative_instance():
    rep = verify_theorem("main-cm", build_graph("C5"), 3)
    assert rep.verdict == "conforms"
    assert set(rep.conditions.values()) == {False}
    assert rep.witnesses


def test_verify_svv_example():
    C5 = build_graph("C5")
    rep = verify_theorem("svv", C5, 2)
    assert rep.verdict == "conforms" and rep.conditions["symbolic_equals_ordinary"]
    rep = verify_theorem("svv", C5, 3)
    assert rep.verdict == "conforms" and not rep.conditions["symbolic_equals_ordinary"]
    assert {"shortest_odd_cycle": 5} in rep.witnesses


def test_verify_serre2_and_power_cor():
    rep = verify_theorem("serre2", build_graph("P3"), 3)
    assert rep.verdict == "conforms" and rep.conditions["s2_polarized_at_ell"] is False
    rep = verify_theorem("serre2", build_graph("K3+K2"), 3)
    assert rep.verdict == "hypotheses-not-met"
    rep = verify_theorem("power-cor", build_graph("K2+K2"), 3)
    assert rep.conditions == {"cm_power_at_ell": True, "complete_intersection": True}
    rep = verify_theorem("power-cor", build_graph("K3"), 3)
    assert rep.verdict == "conforms" and rep.conditions["cm_power_at_ell"] is False


def test_verify_hypotheses_enforced():
    # d = 2 is refused for the symbolic FLC statement
    rep = verify_theorem("main-flc", build_graph("K2,2"), 3)
    assert rep.verdict == "hypotheses-not-met" and not rep.conditions
    assert verify_theorem("main-cm", build_graph("K3"), 2).verdict == "hypotheses-not-met"
    assert verify_theorem("ordinary-flc", build_graph("P4"), 2).verdict == "hypotheses-not-met"
    with pytest.raises(InputError):
        verify_theorem("nonsense", build_graph("K3"), 3)
    with pytest.raises(InputError):
        verify_theorem("svv", build_graph("K3"), 0)


def test_verify_ordinary_flc_examples():
    rep = verify_theorem("ordinary-flc", build_graph("C5"), 3)
    assert rep.verdict == "conforms" and rep.conditions["pure_lci"] is True
    assert rep.conditions["flc_power_at_ell"] is True
    rep = verify_theorem("ordinary-flc", build_graph("K2,2"), 3)
    assert rep.verdict == "conforms"


def test_verify_main_flc_small_instance():
    G = build_graph("K2+K2+K2")  # complex is the octahedron, d = 3
    rep = verify_theorem("main-flc", G, 3)
    assert rep.verdict == "conforms"
    assert rep.conditions["delta_block_decomposition"] is True
    assert rep.conditions["flc_at_ell"] is True


def test_verify_diagram():
    for spec in ("C5", "P4", "K3+K2", "K2,2"):
        rep = verify_theorem("diagram", build_graph(spec), 3)
        assert rep.verdict == "conforms", spec


def test_report_json_schema():
    rep = verify_theorem("svv", build_graph("C5"), 3, FieldSpec(5))
    data = json.loads(rep.to_json())
    assert set(data) == {"theorem", "instance", "conditions", "verdict", "witnesses", "derived",
                         "millis", "field", "version"}
    assert data["version"] == __version__ and data["field"] == "F5"
    assert TheoremReport("x", "y", verdict="nonconforming").ok is False


# --- sweeps --------------------------------------------------------------------------


def test_sweep_small_and_parallel_agree():
    a = sweep("all", 4, 3, theorem="main-cm")
    b = sweep("all", 4, 3, theorem="main-cm", jobs=2)
    assert a.graphs == b.graphs == 1 + 2 + 8 + 64
    assert a.verdicts == b.verdicts and a.nonconforming == 0


def test_sweep_sampling_is_seeded():
    a = sweep("all", 4, 2, theorem="svv", sample=10, seed=3)
    b = sweep("all", 4, 2, theorem="svv", sample=10, seed=3)
    assert a.graphs == 10 and a.verdicts == b.verdicts


def test_sweep_limits():
    with pytest.raises(SizeLimitError):
        sweep("all", MAX_SWEEP_VERTICES + 1, 3)
    with pytest.raises(InputError):
        sweep("all", 3, 3, theorem="nope")


def test_sweep_json():
    rep = sweep("bipartite", 3, 2, theorem="svv")
    data = json.loads(rep.to_json())
    assert data["nonconforming"] == 0 and data["version"] == __version__ and data["field"] == "Q"


@pytest.mark.parametrize("theorem", ["ordinary-flc", "diagram", "main-flc", "serre2"])
def test_corpus_sweeps(theorem):
    rep = sweep("all", 5, 3, theorem=theorem)
    assert rep.graphs == 1099
    assert rep.nonconforming == 0, rep.counterexamples[:5]


def test_instance_string_names_graph():
    G = Graph.from_edges(["a", "b"], [("a", "b")])
    rep = verify_theorem("svv", G, 2)
    assert rep.instance == "graph[a b]{a-b} ell=2"
