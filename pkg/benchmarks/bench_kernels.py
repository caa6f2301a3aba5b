"""Compare the numba kernels with the pure-numpy fallback.

Each path runs in its own interpreter because the backend is fixed at
import time by ``EDGEPOWERS_NO_NUMBA``.  The workload is the full Reisner
link scan of a Cohen–Macaulay polarized symbolic power complex plus a
Takayama scan, timed after one warm-up pass so numba compilation is not
counted.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
from edgepowers._accel import USE_NUMBA
from edgepowers.complex import sr_dual
from edgepowers.graph import build_graph, edge_ideal
from edgepowers.homology import cm_failure
from edgepowers.monomial import symbolic_power
from edgepowers.polarization import polarized_symbolic_facets
from edgepowers.takayama import takayama_scan

repeat = int(sys.argv[1])
D = sr_dual(edge_ideal(build_graph("K3+K3")))
Dl = polarized_symbolic_facets(D, 2)
I = symbolic_power(edge_ideal(build_graph("C5")), 3)

def work():
    cm_failure(Dl)
    takayama_scan(I, stop_early=False)

work()
times = []
for _ in range(repeat):
    t = time.perf_counter()
    work()
    times.append(time.perf_counter() - t)
print(json.dumps({"numba": USE_NUMBA, "best": min(times), "mean": sum(times) / len(times)}))
"""


def run(no_numba: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["EDGEPOWERS_NO_NUMBA"] = "1" if no_numba else ""
    out = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    t0 = time.perf_counter()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"numba  best {fast['best']:.3f}s  mean {fast['mean']:.3f}s")
    print(f"numpy  best {slow['best']:.3f}s  mean {slow['mean']:.3f}s")
    print(f"speedup (best) {slow['best'] / fast['best']:.2f}x   total wall {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
