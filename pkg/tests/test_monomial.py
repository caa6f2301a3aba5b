import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from edgepowers.errors import InputError
from edgepowers.graph import Graph, all_graphs, build_graph, edge_ideal
from edgepowers.monomial import (compare, dim_quotient, format_ideal, intersect, intersect_all,
                                 localize_at_var, make_ideal, minimal_primes, mixed_power,
                                 parse_ideal, power, product, radical, symbolic_power, unit_ideal,
                                 zero_ideal)

X3 = ["x1", "x2", "x3"]
X4 = ["x1", "x2", "x3", "x4"]


def ideals(nvars=3, max_exp=3, max_gens=4):
    mono = st.lists(st.integers(0, max_exp), min_size=nvars, max_size=nvars)
    return st.lists(mono, min_size=1, max_size=max_gens).map(
        lambda gens: make_ideal([f"x{i + 1}" for i in range(nvars)], gens))


# --- construction and text format ------------------------------------------


def test_make_ideal_minimalizes():
    assert make_ideal(X3, ["x1*x2", "x1*x2*x3"]).gens == ((1, 1, 0),)
    assert make_ideal(X3, ["x1^2", "x1"]).gens == ((1, 0, 0),)
    assert make_ideal(X3, []).is_zero


def test_make_ideal_rejects_bad_input():
    with pytest.raises(InputError):
        make_ideal(["x1", "x1"], [])
    with pytest.raises(InputError):
        make_ideal(X3, ["x9"])
    with pytest.raises(InputError):
        make_ideal(["1x"], [])


def test_generators_sorted_canonically():
    I = make_ideal(X3, ["x3", "x1*x2", "x2^2"])
    assert list(I.gens) == sorted(I.gens)


def test_text_round_trip():
    I = make_ideal(X4, ["x1^2*x2", "x3*x4", "x2^3"])
    J = parse_ideal(format_ideal(I))
    assert J == I
    assert parse_ideal("x1*x2\nx2*x3\n").ambient == ("x1", "x2", "x3")


def test_parse_declared_order_and_comments():
    I = parse_ideal("# vars: b a c\n# a comment\na*b\n\nc^2\n")
    assert I.ambient == ("b", "a", "c")
    assert I.contains("a*b*c")


# --- intersect / power ---------------------------------------------------------


def test_intersect_examples():
    assert intersect(make_ideal(X3, ["x1*x2"]), make_ideal(X3, ["x2*x3"])) == make_ideal(X3, ["x1*x2*x3"])
    primes = [make_ideal(X3, g) for g in (["x1", "x2"], ["x1", "x3"], ["x2", "x3"])]
    assert intersect_all(primes) == edge_ideal(build_graph("K3"))
    I = make_ideal(X3, ["x1^2", "x2*x3"])
    assert intersect(I, unit_ideal(X3)) == I
    assert intersect(I, zero_ideal(X3)).is_zero


@given(ideals(), ideals())
def test_intersect_against_membership(I, J):
    K = intersect(I, J)
    for m in oracles.box([4, 4, 4]):
        assert K.contains(m) == (oracles.in_ideal(m, I.gens) and oracles.in_ideal(m, J.gens))


@given(ideals(), ideals(), ideals())
def test_intersect_commutative_associative(I, J, K):
    assert intersect(I, J) == intersect(J, I)
    assert intersect(intersect(I, J), K) == intersect(I, intersect(J, K))


def test_power_examples():
    I = make_ideal(X4, ["x1*x2", "x3*x4"])
    assert power(I, 1) == I
    assert power(I, 2) == make_ideal(X4, ["x1^2*x2^2", "x1*x2*x3*x4", "x3^2*x4^2"])
    assert power(I, 0).is_unit
    with pytest.raises(InputError):
        power(I, -1)


@given(ideals(max_exp=2, max_gens=3), st.integers(1, 3))
def test_power_against_membership(I, ell):
    P = power(I, ell)
    for m in oracles.box([3 * ell] * 3):
        assert P.contains(m) == oracles.in_power(m, I.gens, ell)


@given(ideals(max_exp=2, max_gens=3), st.integers(0, 2), st.integers(0, 2))
def test_power_product_law(I, a, b):
    assert product(power(I, a), power(I, b)) == power(I, a + b)


# --- primes, symbolic powers ------------------------------------------------------


def test_minimal_primes_examples():
    P = minimal_primes(edge_ideal(build_graph("K3+K2")))
    assert [str(p) for p in P] == ["(x1,x2,y1)", "(x1,x2,y2)", "(x1,x3,y1)",
                                   "(x1,x3,y2)", "(x2,x3,y1)", "(x2,x3,y2)"]
    for n in range(2, 6):
        Kn = edge_ideal(build_graph(f"K{n}"))
        got = {p.vars for p in minimal_primes(Kn)}
        want = {tuple(f"x{j + 1}" for j in range(n) if j != i) for i in range(n)}
        assert got == want
    Z = minimal_primes(zero_ideal(X3))
    assert len(Z) == 1 and Z[0].vars == ()


@pytest.mark.parametrize("n", range(1, 6))
def test_minimal_primes_are_vertex_covers(n):
    for G in all_graphs(n):
        got = {frozenset(p.indices) for p in minimal_primes(edge_ideal(G))}
        assert got == set(oracles.vertex_covers(n, G.edges))


def test_minimal_primes_seven_vertices_sample():
    rng = np.random.default_rng(7)
    pairs = list(itertools.combinations(range(7), 2))
    for _ in range(40):
        edges = [p for p in pairs if rng.random() < 0.4]
        G = Graph.from_edges([f"x{i + 1}" for i in range(7)], edges)
        got = {frozenset(p.indices) for p in minimal_primes(edge_ideal(G))}
        assert got == set(oracles.vertex_covers(7, edges))


@pytest.mark.parametrize("spec", ["K3", "P4", "C4", "K1,3", "C5"])
@pytest.mark.parametrize("ell", [1, 2, 3])
def test_symbolic_power_against_covers(spec, ell):
    G = build_graph(spec)
    S = symbolic_power(edge_ideal(G), ell)
    for m in oracles.box([ell] * G.n):
        assert S.contains(m) == oracles.in_symbolic(m, G.n, G.edges, ell)


def test_symbolic_power_rejects_non_squarefree():
    with pytest.raises(InputError):
        symbolic_power(make_ideal(X3, ["x1^2"]), 2)


@pytest.mark.parametrize("spec", ["K3", "P4", "C5", "K3+K2", "K2,2"])
def test_power_symbolic_chain(spec):
    I = edge_ideal(build_graph(spec))
    for ell in (2, 3):
        assert compare(power(I, ell), symbolic_power(I, ell)) in ("equal", "left-in-right")
        assert compare(symbolic_power(I, ell), symbolic_power(I, ell - 1)) == "left-in-right"
        assert radical(symbolic_power(I, ell)) == I


def test_mixed_power_examples():
    I = edge_ideal(build_graph("K3+K2"))
    P = minimal_primes(I)
    assert mixed_power(P, [2] * 6) == symbolic_power(I, 2)
    J = mixed_power(P, [2, 2, 2, 2, 2, 3])
    assert "x2" in P[-1].vars and "x3" in P[-1].vars and "y2" in P[-1].vars
    assert compare(J, symbolic_power(I, 2)) == "left-in-right"
    with pytest.raises(InputError):
        mixed_power(P, [2] * 5)
    with pytest.raises(InputError):
        mixed_power(P, [0] + [2] * 5)


# --- compare, localize, dimension -----------------------------------------------


def test_compare_examples():
    C5 = edge_ideal(build_graph("C5"))
    assert compare(power(C5, 2), symbolic_power(C5, 2)) == "equal"
    K3 = edge_ideal(build_graph("K3"))
    assert compare(power(K3, 2), symbolic_power(K3, 2)) == "left-in-right"
    assert compare(K3, K3) == "equal"
    assert compare(make_ideal(X3, ["x1"]), make_ideal(X3, ["x2"])) == "incomparable"


def test_localize_examples():
    K3 = edge_ideal(build_graph("K3"))
    L = localize_at_var(K3, "x1")
    assert L == make_ideal(["x2", "x3"], ["x2", "x3"])
    I = make_ideal(X4, ["x1*x2", "x3*x4"])
    assert localize_at_var(I, "x1") == make_ideal(["x2", "x3", "x4"], ["x2", "x3*x4"])
    with pytest.raises(InputError):
        localize_at_var(I, "z")


def test_dim_quotient_examples():
    for spec, r in (("K3+K2", 2), ("K3+K3", 2), ("K2+K2+K4", 3), ("K5", 1)):
        assert dim_quotient(edge_ideal(build_graph(spec))) == (r, True)
    assert dim_quotient(make_ideal(X3, ["x1*x2", "x2*x3"])) == (2, False)
    assert dim_quotient(zero_ideal(X3)) == (3, True)
    with pytest.raises(InputError):
        dim_quotient(unit_ideal(X3))


def test_radical():
    assert radical(make_ideal(X3, ["x1^2*x2"])) == make_ideal(X3, ["x1*x2"])


def test_ring_without_variables():
    assert make_ideal([], []).is_zero
    assert make_ideal([], ["1"]).is_unit
    assert localize_at_var(make_ideal(["x"], ["x"]), "x").is_unit
    assert localize_at_var(make_ideal(["x"], ["x^2"]), "x").is_unit
