"""Compare the compiled and pure-Python tableau kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Three workloads: raw pivots on random integer tableaus, a single larger
LP solve, and inverse solves on the small random test corpus. Both
backends must give identical answers; the script aborts otherwise.
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from invmilp import _pivot_py, kernels  # noqa: E402
from invmilp.lp import LpProblem, solve_lp  # noqa: E402


def _load_compiled():
    try:
        from invmilp import _pivot
    except ImportError:
        return None
    return _pivot


def _use(mod):
    kernels.pivot, kernels.ratio_test = mod.pivot, mod.ratio_test


def _best(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def raw_pivots(m, n, steps, seed=1):
    rng = random.Random(seed)
    base = [[rng.randint(-9, 9) for _ in range(n + 1)] for _ in range(m + 1)]
    order = [(rng.randrange(m), rng.randrange(n)) for _ in range(steps)]

    def run():
        T = [row[:] for row in base]
        D = 1
        for r, s in order:
            if T[r][s] != 0:
                D = kernels.pivot(T, r, s, D)
        return D, T[0][:3]

    return run


def big_lp(n=18, m=40, seed=3):
    rng = random.Random(seed)
    rows = [([F(rng.randint(-6, 9)) for _ in range(n)], "<=", F(rng.randint(5, 40))) for _ in range(m)]
    p = LpProblem.create("max", [rng.randint(1, 9) for _ in range(n)], rows,
                         lower=[0] * n, upper=[10] * n)
    return lambda: solve_lp(p)


def corpus_solves(size=60):
    from _corpus import corpus
    from invmilp.inverse import solve_inverse

    insts = corpus(size, 5)
    return lambda: tuple(solve_inverse(inv).theta_star for inv in insts)


WORKLOADS = [
    ("pivots 60x20, 40 steps", lambda: raw_pivots(60, 20, 40)),
    ("pivots 300x15, 25 steps", lambda: raw_pivots(300, 15, 25)),
    ("LP 40 rows x 18 vars", big_lp),
    ("inverse corpus, 60 instances", corpus_solves),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write results here")
    args = ap.parse_args(argv)
    compiled = _load_compiled()
    if compiled is None:
        print("compiled kernel not built; only the Python backend is available")
    saved = kernels.pivot, kernels.ratio_test
    results = []
    try:
        for name, make in WORKLOADS:
            fn = make()
            _use(_pivot_py)
            t_py, out_py = _best(fn, args.repeat)
            row = {"workload": name, "python_s": t_py}
            if compiled is not None:
                _use(compiled)
                t_c, out_c = _best(fn, args.repeat)
                if out_c != out_py:
                    raise SystemExit(f"backends disagree on {name!r}")
                row.update(cython_s=t_c, speedup=t_py / t_c)
            results.append(row)
    finally:
        kernels.pivot, kernels.ratio_test = saved

    print(f"{'workload':<32} {'python':>10} {'cython':>10} {'speedup':>8}")
    for r in results:
        c = f"{r['cython_s'] * 1000:9.2f}ms" if "cython_s" in r else "-".rjust(10)
        s = f"{r['speedup']:7.2f}x" if "speedup" in r else "-".rjust(8)
        print(f"{r['workload']:<32} {r['python_s'] * 1000:8.2f}ms {c} {s}")
    if args.json:
        Path(args.json).write_text(json.dumps(results, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
