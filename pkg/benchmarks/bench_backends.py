#!/usr/bin/env python3
"""Compare the compiled saturation kernels against the numpy fallback.

Runs a fixed set of saturation workloads in subprocesses (one per backend),
checks that verdicts and traces agree byte for byte, and prints a timing
table.  Usage: python benchmarks/bench_backends.py
"""

import os
import subprocess
import sys

WORKLOAD = r'''
import json, sys, time
from mongen import Complex, mon, parse_complex, u
from mongen.core import all_intervals
from mongen.prover import Conflict, saturate

CASES = [
    ("conflict n=5 all-3-intervals", "n=5", 3, "mon"),
    ("conflict n=7 all-4-intervals", "n=7", 4, "mon"),
    ("conflict n=8 all-5-intervals", "n=8", 5, "mon"),
    ("saturated six-cell base", "n=6", 4, "mon"),
    ("saturated seven-cell base", None, None, "k7"),
    ("saturated single-one n=5", None, None, "u5"),
]

results = []
for name, tag, size, kind in CASES:
    if kind == "k7":
        k = parse_complex("n=7; [0,4] [1,5] [2,6] [4,1] [5,2]")
        lang = mon(7)
    elif kind == "u5":
        k = parse_complex("n=5; [1,4] [0,2] [4,1] {0,2,3} {0,2,4}")
        lang = u(5)
    else:
        n = int(tag[2:])
        k = Complex.of(n, all_intervals(n, size))
        lang = mon(n)
    t0 = time.perf_counter()
    verdict = saturate(k, lang)
    dt = time.perf_counter() - t0
    digest = ""
    if isinstance(verdict, Conflict):
        digest = str(hash(verdict.trace.render(k)))
    results.append({"name": name, "kind": verdict.kind,
                    "constraints": verdict.constraints,
                    "digest": digest, "seconds": dt})
json.dump(results, sys.stdout)
'''


def run(backend: str):
    env = dict(os.environ, MONGEN_BACKEND=backend, PYTHONHASHSEED="0")
    proc = subprocess.run([sys.executable, "-c", WORKLOAD],
                          capture_output=True, text=True, env=env, check=True)
    import json
    return json.loads(proc.stdout)


def main() -> int:
    try:
        compiled = run("compiled")
    except subprocess.CalledProcessError:
        print("compiled backend unavailable; nothing to compare")
        return 1
    fallback = run("python")
    width = max(len(c["name"]) for c in compiled)
    print(f"{'case'.ljust(width)}  {'verdict':>10} {'constraints':>11} "
          f"{'compiled':>9} {'python':>9} {'speedup':>8}")
    ok = True
    for c, p in zip(compiled, fallback):
        agree = (c["kind"], c["constraints"], c["digest"]) == \
                (p["kind"], p["constraints"], p["digest"])
        ok &= agree
        ratio = p["seconds"] / c["seconds"] if c["seconds"] else float("inf")
        mark = "" if agree else "  !! MISMATCH"
        print(f"{c['name'].ljust(width)}  {c['kind']:>10} {c['constraints']:>11} "
              f"{c['seconds']:>8.3f}s {p['seconds']:>8.3f}s {ratio:>7.1f}x{mark}")
    print("backends agree" if ok else "BACKEND MISMATCH", "on all cases" if ok else "")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
