"""Backend selection for the hot loops.

The compiled extension is used when it imports; set CSGKIT_PURE_PYTHON=1 to force
the pure-Python implementations (identical results, much slower).
"""

import os
import random

import numpy as np

from . import _pykernels

BACKEND = "python"
_c = None
if os.environ.get("CSGKIT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _c
        BACKEND = "compiled"
    except ImportError:
        _c = None

MAXL = 24
_CODES = {0: "group", 1: "group", 2: "3.h", 3: "3.v", 4: "3.h", 5: "3.v",
          6: "1.h", 7: "2.h", 8: "1.v", 9: "2.v"}


def _impl(backend):
    if backend is None:
        backend = BACKEND
    if backend == "compiled":
        if _c is None:
            raise RuntimeError("compiled kernels are not available")
        return _c
    if backend == "python":
        return _pykernels
    raise ValueError(f"unknown backend {backend!r}")


def rank_mod_p(rows, p, backend=None):
    impl = _impl(backend)
    if not rows or not rows[0]:
        return 0
    if impl is _c:
        M = np.ascontiguousarray(np.array(rows, dtype=np.int64) % p)
        return int(_c.rank_mod_p(M, p))
    return _pykernels.rank_mod_p(rows, p)


def wreath_supported(inst):
    """Only the stock star operations have a compiled equivalent."""
    from .csg import TwistedSymmetric
    cls = type(inst)
    return all(getattr(cls, name) is getattr(TwistedSymmetric, name) for name in ("pull", "push", "mul", "inv"))


def _maps_table(N):
    from .ordmap import all_maps
    rows, src, start, objs = [], [], [0], []
    for m in range(N + 1):
        for n in range(N + 1):
            for phi in all_maps(n, m):
                rows.append(list(phi.values) + [0] * (N + 1 - len(phi.values)))
                src.append(n)
                objs.append(phi)
        start.append(len(rows))
    index = {}
    for r, phi in enumerate(objs):
        m = phi.dst
        index[(phi.values, m)] = r - start[m]
    fib = np.zeros((len(objs), MAXL), dtype=np.int64)
    fst = np.zeros((len(objs), MAXL), dtype=np.int64)
    for r, phi in enumerate(objs):
        acc = 0
        for i, c in enumerate(phi.fibers()):
            fib[r, i] = c
            fst[r, i] = acc
            acc += c
    compidx, coff = [], []
    for r, phi in enumerate(objs):
        coff.append(len(compidx))
        n = phi.src
        for j in range(start[n], start[n + 1]):
            psi = objs[j]
            compidx.append(index[(tuple(phi.values[v] for v in psi.values), phi.dst)])
    return (np.array(rows, dtype=np.int64), np.array(src, dtype=np.int64),
            np.array(start, dtype=np.int64), fib, fst,
            np.array(compidx, dtype=np.int64), np.array(coff, dtype=np.int64), objs)


def _stack(tuples, m):
    lab = [list(x[0]) for t in tuples for x in t]
    perm = [list(x[1]) for t in tuples for x in t]
    if not lab:
        return np.zeros((0, m + 1), dtype=np.int64), np.zeros((0, m + 1), dtype=np.int64)
    return np.array(lab, dtype=np.int64), np.array(perm, dtype=np.int64)


def verify_wreath(inst, N, bound, samples, seed, max_violations, backend=None):
    """Axiom check for a twisted symmetric instance; same sampling and report as the generic path."""
    from .csg import AxiomReport, witness_set
    if N + 1 > MAXL:
        raise ValueError(f"levels above {MAXL - 1} are not supported")
    impl = _impl(backend)
    G = inst.G
    table = np.array(G.table, dtype=np.int64)
    inv = np.array(G.inv, dtype=np.int64)
    par = np.array(G.parity_of, dtype=np.int64)
    maps, src, start, fib, fst, compidx, coff, objs = _maps_table(N)
    rep = AxiomReport(inst.family, N)
    rng = random.Random(seed)
    for m in range(N + 1):
        singles, ex1 = witness_set(inst, m, 1, bound, samples, rng)
        pairs, _ = witness_set(inst, m, 2, bound, samples, rng)
        triples, _ = witness_set(inst, m, 3, bound, min(samples, 2000), rng)
        rep.exhaustive[m] = ex1
        elab, eperm = _stack(singles, m)
        plab, pperm = _stack(pairs, m)
        tlab, tperm = _stack(triples, m)
        counts, viol = impl.wreath_check_level(m, maps, src, start, fib, fst, compidx, coff, elab, eperm, plab, pperm,
                                               tlab, tperm, table, inv, par, max_violations)
        for k, v in counts.items():
            rep.counts[k] += int(v)
        for code, i, j, a in viol:
            rep.add(_CODES[code], m, _witness(inst, m, code, i, j, a, objs, singles, pairs, triples))
    return rep.capped(max_violations)


def _witness(inst, m, code, i, j, a, objs, singles, pairs, triples):
    f = inst.fmt
    if code == 0:
        x, y, z = triples[i]
        return f"associativity fails on {x},{y},{z}"
    if code == 1:
        return f"unit/inverse fails at {f(m, singles[i][0])}"
    if code == 2:
        return f"id*g != g for g={f(m, singles[i][0])}"
    if code == 3:
        return f"g*id != id for g={f(m, singles[i][0])}"
    if code == 4:
        return f"{objs[i]}*e != e"
    if code == 5:
        return f"e*{objs[i]} != {objs[i]}"
    if code in (6, 7):
        return f"phi={objs[i]}, psi={objs[j]}, g={f(m, singles[a][0])}"
    g, h = pairs[j]
    return f"g={f(m, g)}, h={f(m, h)}, phi={objs[i]}"
