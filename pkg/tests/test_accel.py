import json
import os
import subprocess
import sys

import numpy as np
import pytest

import oracles
from conftest import SEED
from edgepowers import _accel as acc


def _sorted_distinct(rng, m, n, hi):
    A = np.unique(rng.integers(0, hi, size=(m, n)), axis=0)
    return A[np.argsort(A.sum(axis=1), kind="stable")]


def test_minimal_rows_variants_agree():
    rng = np.random.default_rng(SEED)
    for _ in range(50):
        A = _sorted_distinct(rng, int(rng.integers(1, 40)), int(rng.integers(1, 6)), 4)
        want = np.array([not any(oracles.divides(A[j], A[i]) for j in range(i)) for i in range(len(A))])
        assert (acc._minimal_rows_py(A) == want).all()
        assert (acc._minimal_rows_np(A) == want).all()
        assert (acc.minimal_rows(A) == want).all()


def test_face_table_variants_agree():
    rng = np.random.default_rng(SEED + 1)
    for _ in range(30):
        nb = int(rng.integers(1, 8))
        facets = rng.integers(0, 1 << nb, size=int(rng.integers(1, 5)))
        a = np.zeros(1 << nb, dtype=np.uint8)
        a[facets] = 1
        b = a.copy()
        acc._down_closure_py(a, nb)
        acc._down_closure_np(b, nb)
        want = np.array([any(m & f == m for f in facets) for m in range(1 << nb)], dtype=np.uint8)
        assert (a == want).all() and (b == want).all()
        assert (acc.face_table(facets, nb) == want).all()


@pytest.mark.parametrize("p", [2, 3, 7, 101])
def test_rank_modp_variants_agree(p):
    rng = np.random.default_rng(SEED + p)
    for _ in range(40):
        M = rng.integers(-3, 4, size=(int(rng.integers(1, 7)), int(rng.integers(1, 7))))
        want = oracles.rank_by_minors(M, p)
        assert acc._rank_modp_py(M % p, p) == want
        assert acc._rank_modp_np(M % p, p) == want
        assert acc.rank_modp(M, p) == want


def test_rank_rational_matches_fractions():
    rng = np.random.default_rng(SEED + 5)
    for _ in range(40):
        M = rng.integers(-9, 10, size=(int(rng.integers(1, 8)), int(rng.integers(1, 8))))
        assert acc.rank_rational(M) == oracles.rank_fraction(M.tolist())
    big = np.array([[2 ** 40, 3], [2 ** 41, 7]], dtype=np.int64)
    assert acc.rank_rational(big) == 2


WORKLOAD = r"""
import json
from edgepowers._accel import USE_NUMBA
from edgepowers.betti import betti_numbers
from edgepowers.complex import sr_dual
from edgepowers.graph import build_graph, edge_ideal
from edgepowers.homology import FieldSpec, is_cm_reisner, reduced_homology
from edgepowers.monomial import power, symbolic_power
from edgepowers.polarization import polarize
from edgepowers.takayama import is_cm_takayama, is_flc_takayama

out = {"numba": USE_NUMBA}
for spec in ("C5", "K3+K2", "P4", "K2,2"):
    I = edge_ideal(build_graph(spec))
    for ell in (2, 3):
        S = symbolic_power(I, ell)
        out[f"{spec}/{ell}"] = [len(S.gens), is_cm_takayama(S), is_flc_takayama(power(I, ell)),
                                is_cm_reisner(sr_dual(polarize(S)))]
    out[f"{spec}/betti"] = list(betti_numbers(symbolic_power(I, 2)))
    out[f"{spec}/h2"] = list(reduced_homology(sr_dual(I), FieldSpec(2)).ranks)
print(json.dumps(out))
"""


def _workload(no_numba: bool) -> dict:
    env = dict(os.environ, EDGEPOWERS_NO_NUMBA="1" if no_numba else "")
    res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def test_backends_agree_end_to_end():
    fast, slow = _workload(False), _workload(True)
    assert fast.pop("numba") is True and slow.pop("numba") is False
    assert fast == slow
