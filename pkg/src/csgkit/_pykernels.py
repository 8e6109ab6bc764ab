"""Pure-Python versions of the compiled kernels (same signatures and results)."""


def _pull(table, par, phi, msrc, n, lab, perm):
    c = [0] * (n + 1)
    for t in range(msrc + 1):
        c[phi[t]] += 1
    st = [0] * (n + 1)
    acc = 0
    for i in range(n + 1):
        st[i] = acc
        acc += c[i]
    olab = [lab[phi[t]] for t in range(msrc + 1)]
    tau = list(range(msrc + 1))
    for i in range(n + 1):
        if par[lab[i]] == -1:
            s, e = st[i], st[i] + c[i] - 1
            for t in range(s, e + 1):
                tau[t] = s + e - t
    pi = []
    for j in range(n + 1):
        i = perm[j]
        pi.extend(range(st[i], st[i] + c[i]))
    return olab, [tau[p] for p in pi]


def _push(perm, phi, msrc, n):
    c = [0] * (n + 1)
    for r in range(msrc + 1):
        c[phi[r]] += 1
    out = []
    for j in range(n + 1):
        out.extend([j] * c[perm[j]])
    return out


def _mul(table, n, la, pa, lb, pb):
    pinv = [0] * (n + 1)
    for i in range(n + 1):
        pinv[pa[i]] = i
    return [table[la[i]][lb[pinv[i]]] for i in range(n + 1)], [pa[pb[i]] for i in range(n + 1)]


def _inv(inv, n, la, pa):
    op = [0] * (n + 1)
    ol = [0] * (n + 1)
    for i in range(n + 1):
        op[pa[i]] = i
        ol[i] = inv[la[pa[i]]]
    return ol, op


def wreath_check_level(m, maps, src, start, fib, fst, compidx, coff, elab, eperm, plab, pperm, tlab, tperm, table, inv, par, maxv):
    """Same contract as the compiled kernel."""
    maps = [list(r) for r in maps]
    src = list(src)
    start = list(start)
    elab, eperm = [list(r)[:m + 1] for r in elab], [list(r)[:m + 1] for r in eperm]
    plab, pperm = [list(r) for r in plab], [list(r) for r in pperm]
    tlab, tperm = [list(r) for r in tlab], [list(r) for r in tperm]
    table = [list(r) for r in table]
    inv, par = list(inv), list(par)
    counts = {"1.h": 0, "2.h": 0, "3.h": 0, "1.v": 0, "2.v": 0, "3.v": 0, "group": 0}
    viol = []
    vc = [0] * 10
    ida = list(range(m + 1))
    e = [0] * (m + 1)
    S, P, T = len(elab), len(plab) // 2, len(tlab) // 3

    for q in range(T):
        counts["group"] += 1
        a, b, c = (tlab[3*q], tperm[3*q]), (tlab[3*q+1], tperm[3*q+1]), (tlab[3*q+2], tperm[3*q+2])
        ab = _mul(table, m, *a, *b)
        lhs = _mul(table, m, *ab, *c)
        bc = _mul(table, m, *b, *c)
        rhs = _mul(table, m, *a, *bc)
        if lhs != rhs:
            if vc[0] < maxv:
                viol.append((0, q, -1, -1))
            vc[0] += 1
    for a in range(S):
        counts["group"] += 1
        x = (elab[a], eperm[a])
        ok = _mul(table, m, *x, e, ida) == (x[0], x[1]) and _mul(table, m, e, ida, *x) == (x[0], x[1])
        ok = ok and _mul(table, m, *x, *_inv(inv, m, *x)) == (e, ida)
        if not ok:
            if vc[1] < maxv:
                viol.append((1, a, -1, -1))
            vc[1] += 1
    for a in range(S):
        counts["3.h"] += 1
        if _pull(table, par, ida, m, m, elab[a], eperm[a]) != (elab[a], eperm[a]):
            if vc[2] < maxv:
                viol.append((2, a, -1, -1))
            vc[2] += 1
        counts["3.v"] += 1
        if _push(eperm[a], ida, m, m) != ida:
            if vc[3] < maxv:
                viol.append((3, a, -1, -1))
            vc[3] += 1
    for i in range(start[m], start[m + 1]):
        n = src[i]
        phi = maps[i][:n + 1]
        counts["3.h"] += 1
        if _pull(table, par, phi, n, m, e, ida) != ([0] * (n + 1), list(range(n + 1))):
            if vc[4] < maxv:
                viol.append((4, i, -1, -1))
            vc[4] += 1
        counts["3.v"] += 1
        if _push(ida, phi, n, m) != phi:
            if vc[5] < maxv:
                viol.append((5, i, -1, -1))
            vc[5] += 1
    compidx = list(compidx)
    coff = list(coff)
    base = start[m]
    rows_m = range(start[m], start[m + 1])
    for a in range(S):
        pre = []
        for i in rows_m:
            n = src[i]
            phi = maps[i][:n + 1]
            pre.append((_pull(table, par, phi, n, m, elab[a], eperm[a]), _push(eperm[a], phi, n, m)))
        for i in rows_m:
            n = src[i]
            (pl, pp), gv = pre[i - base]
            for j in range(start[n], start[n + 1]):
                kk = src[j]
                psi = maps[j][:kk + 1]
                cl, cv = pre[compidx[coff[i] + j - start[n]]]
                counts["1.h"] += 1
                if cl != _pull(table, par, psi, kk, n, pl, pp):
                    if vc[6] < maxv:
                        viol.append((6, i, j, a))
                    vc[6] += 1
                counts["2.h"] += 1
                v2 = _push(pp, psi, kk, n)
                if cv != [gv[v] for v in v2]:
                    if vc[7] < maxv:
                        viol.append((7, i, j, a))
                    vc[7] += 1
    for i in range(start[m], start[m + 1]):
        n = src[i]
        phi = maps[i][:n + 1]
        for q in range(P):
            a = (plab[2*q], pperm[2*q])
            b = (plab[2*q+1], pperm[2*q+1])
            ab = _mul(table, m, *a, *b)
            v1 = _push(a[1], phi, n, m)
            counts["1.v"] += 1
            if _push(ab[1], phi, n, m) != _push(b[1], v1, n, m):
                if vc[8] < maxv:
                    viol.append((8, i, q, -1))
                vc[8] += 1
            counts["2.v"] += 1
            lhs = _pull(table, par, phi, n, m, *ab)
            rhs = _mul(table, n, *_pull(table, par, phi, n, m, *a), *_pull(table, par, v1, n, m, *b))
            if lhs != rhs:
                if vc[9] < maxv:
                    viol.append((9, i, q, -1))
                vc[9] += 1
    return counts, viol


def rank_mod_p(M, p):
    """Rank of an integer matrix (rows of ints) modulo a prime p."""
    rows = [[v % p for v in r] for r in M]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        pr = [v * inv % p for v in rows[rank]]
        rows[rank] = pr
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
        rank += 1
        if rank == len(rows):
            break
    return rank
