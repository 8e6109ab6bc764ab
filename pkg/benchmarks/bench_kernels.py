"""Compiled vs pure-Python kernels: the wreath axiom check and rank mod p.

    python benchmarks/bench_kernels.py [--level 2] [--size 200] [--repeat 3]

The python backend at level 3 over (C4, q) takes several minutes; pass --level 3
to include it.
"""

import argparse
import random
import time

from csgkit import csg, gpar, kernels


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--level", type=int, default=2)
    ap.add_argument("--size", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["python"] + (["compiled"] if kernels.BACKEND == "compiled" else [])
    if len(backends) == 1:
        print("compiled extension not built; timing the python backend only")

    inst = csg.TwistedSymmetric(gpar.c4_q())
    print(f"wreath axiom check, (C4, q), level {args.level}")
    base = None
    for b in backends:
        reps = 1 if b == "python" and args.level >= 3 else args.repeat
        t, rep = timed(lambda: csg.verify_axioms(inst, args.level, backend=b), reps)
        checks = sum(rep.counts.values())
        base = base or t
        print(f"  {b:9s} {t:8.3f}s  {checks} checks  ok={rep.ok}  speedup {base / t:.1f}x")

    rng = random.Random(0)
    rows = [[rng.randrange(-9, 10) for _ in range(args.size)] for _ in range(args.size)]
    print(f"rank mod 101 of a {args.size}x{args.size} matrix")
    base = None
    for b in backends:
        t, r = timed(lambda: kernels.rank_mod_p(rows, 101, b), args.repeat)
        base = base or t
        print(f"  {b:9s} {t:8.3f}s  rank {r}  speedup {base / t:.1f}x")


if __name__ == "__main__":
    main()
