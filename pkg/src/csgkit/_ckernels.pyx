# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: wreath-family axiom checks and modular ranks."""

from libc.string cimport memcpy

DEF MAXL = 24

cdef struct Ctx:
    long *table
    long *inv
    long *par
    long k


cdef inline void c_pull(Ctx *G, const long *phi, int msrc, int n, const long *lab, const long *perm,
                        long *olab, long *operm) noexcept nogil:
    # phi*(g;gamma) = phi*(g;id) . (e; phi*gamma)
    cdef long c[MAXL]
    cdef long st[MAXL]
    cdef long tau[MAXL]
    cdef long pi[MAXL]
    cdef int i, j, t, acc, s, e, pos
    for i in range(n + 1):
        c[i] = 0
    for t in range(msrc + 1):
        c[phi[t]] += 1
    acc = 0
    for i in range(n + 1):
        st[i] = acc
        acc += c[i]
    for t in range(msrc + 1):
        olab[t] = lab[phi[t]]
    for i in range(n + 1):
        s = st[i]
        e = s + c[i] - 1
        if G.par[lab[i]] == -1:
            for t in range(s, e + 1):
                tau[t] = s + e - t
        else:
            for t in range(s, e + 1):
                tau[t] = t
    pos = 0
    for j in range(n + 1):
        i = perm[j]
        for t in range(st[i], st[i] + c[i]):
            pi[pos] = t
            pos += 1
    for t in range(msrc + 1):
        operm[t] = tau[pi[t]]


cdef inline void c_pull_f(Ctx *G, const long *phi, int msrc, int n, const long *c, const long *st,
                          const long *lab, const long *perm, long *olab, long *operm) noexcept nogil:
    # c_pull with the fiber sizes and offsets of phi supplied
    cdef long tau[MAXL]
    cdef int i, j, t, s, e, pos
    for t in range(msrc + 1):
        olab[t] = lab[phi[t]]
        tau[t] = t
    for i in range(n + 1):
        if c[i] > 1 and G.par[lab[i]] == -1:
            s = st[i]
            e = s + c[i] - 1
            for t in range(s, e + 1):
                tau[t] = s + e - t
    pos = 0
    for j in range(n + 1):
        i = perm[j]
        for t in range(st[i], st[i] + c[i]):
            operm[pos] = tau[t]
            pos += 1


cdef inline void c_push(const long *perm, const long *phi, int msrc, int n, long *out) noexcept nogil:
    cdef long c[MAXL]
    cdef int i, j, pos, r
    for i in range(n + 1):
        c[i] = 0
    for r in range(msrc + 1):
        c[phi[r]] += 1
    pos = 0
    for j in range(n + 1):
        for r in range(c[perm[j]]):
            out[pos] = j
            pos += 1


cdef inline void c_mul(Ctx *G, int n, const long *la, const long *pa, const long *lb, const long *pb,
                       long *ol, long *op) noexcept nogil:
    cdef long pinv[MAXL]
    cdef int i
    for i in range(n + 1):
        pinv[pa[i]] = i
    for i in range(n + 1):
        ol[i] = G.table[la[i] * G.k + lb[pinv[i]]]
        op[i] = pa[pb[i]]


cdef inline void c_inv(Ctx *G, int n, const long *la, const long *pa, long *ol, long *op) noexcept nogil:
    cdef int i
    for i in range(n + 1):
        op[pa[i]] = i
        ol[i] = G.inv[la[pa[i]]]


cdef inline bint eqv(const long *a, const long *b, int n) noexcept nogil:
    cdef int i
    for i in range(n):
        if a[i] != b[i]:
            return False
    return True


cdef inline void c_compose(const long *f, const long *g, int gsrc, long *out) noexcept nogil:
    cdef int i
    for i in range(gsrc + 1):
        out[i] = f[g[i]]


def wreath_check_level(int m, long[:, ::1] maps, long[::1] src, long[::1] start,
                       long[:, ::1] fib, long[:, ::1] fst, long[::1] compidx, long[::1] coff,
                       long[:, ::1] elab, long[:, ::1] eperm,
                       long[:, ::1] plab, long[:, ::1] pperm,
                       long[:, ::1] tlab, long[:, ::1] tperm,
                       long[:, ::1] table, long[::1] inv, long[::1] par, int maxv):
    """All identity checks at level m for a wreath family.

    maps[start[l]:start[l+1]] are the maps into [l], rows padded; src gives each domain,
    fib/fst the fiber sizes and offsets. For phi at global row i into [m] and psi at
    row j into [n], compidx[coff[i] + j - start[n]] is the row of phi o psi, relative
    to start[m].
    Elements are rows of (labels, perm). Pairs and triples are stacked consecutively.
    Returns (counts, violations) with violations as (code, i, j, k) index tuples,
    at most maxv per code:
    code 0 group-assoc, 1 group-unit, 2 3.h-id, 3 3.v-id, 4 3.h-e, 5 3.v-e,
    6 1.h, 7 2.h, 8 1.v, 9 2.v.
    """
    cdef Ctx G
    G.table = &table[0, 0]
    G.inv = &inv[0]
    G.par = &par[0]
    G.k = table.shape[0]
    cdef long counts[7]
    cdef int i, j, q, n, kk, S, P, T, a, b
    cdef long ida[MAXL]
    cdef long e[MAXL]
    cdef long el[MAXL]
    cdef long ep[MAXL]
    cdef long l1[MAXL]
    cdef long p1[MAXL]
    cdef long l2[MAXL]
    cdef long p2[MAXL]
    cdef long l3[MAXL]
    cdef long p3[MAXL]
    cdef long l4[MAXL]
    cdef long p4[MAXL]
    cdef long v1[MAXL]
    cdef long v2[MAXL]
    cdef long v3[MAXL]
    cdef long comp[MAXL]
    viol = []
    vc = [0] * 10
    for i in range(7):
        counts[i] = 0
    S = elab.shape[0]
    P = plab.shape[0] // 2
    T = tlab.shape[0] // 3
    for i in range(m + 1):
        ida[i] = i
        e[i] = 0
    # group law: associativity on triples
    for q in range(T):
        counts[6] += 1
        c_mul(&G, m, &tlab[3*q, 0], &tperm[3*q, 0], &tlab[3*q+1, 0], &tperm[3*q+1, 0], l1, p1)
        c_mul(&G, m, l1, p1, &tlab[3*q+2, 0], &tperm[3*q+2, 0], l2, p2)
        c_mul(&G, m, &tlab[3*q+1, 0], &tperm[3*q+1, 0], &tlab[3*q+2, 0], &tperm[3*q+2, 0], l3, p3)
        c_mul(&G, m, &tlab[3*q, 0], &tperm[3*q, 0], l3, p3, l4, p4)
        if not (eqv(l2, l4, m + 1) and eqv(p2, p4, m + 1)):
            if vc[0] < maxv:
                viol.append((0, q, -1, -1))
            vc[0] += 1
    for a in range(S):
        counts[6] += 1
        c_mul(&G, m, &elab[a, 0], &eperm[a, 0], e, ida, l1, p1)
        c_mul(&G, m, e, ida, &elab[a, 0], &eperm[a, 0], l2, p2)
        c_inv(&G, m, &elab[a, 0], &eperm[a, 0], l3, p3)
        c_mul(&G, m, &elab[a, 0], &eperm[a, 0], l3, p3, l4, p4)
        if not (eqv(l1, &elab[a, 0], m + 1) and eqv(p1, &eperm[a, 0], m + 1)
                and eqv(l2, &elab[a, 0], m + 1) and eqv(p2, &eperm[a, 0], m + 1)
                and eqv(l4, e, m + 1) and eqv(p4, ida, m + 1)):
            if vc[1] < maxv:
                viol.append((1, a, -1, -1))
            vc[1] += 1
    # (3.h), (3.v)
    for a in range(S):
        counts[2] += 1
        c_pull(&G, ida, m, m, &elab[a, 0], &eperm[a, 0], l1, p1)
        if not (eqv(l1, &elab[a, 0], m + 1) and eqv(p1, &eperm[a, 0], m + 1)):
            if vc[2] < maxv:
                viol.append((2, a, -1, -1))
            vc[2] += 1
        counts[5] += 1
        c_push(&eperm[a, 0], ida, m, m, v1)
        if not eqv(v1, ida, m + 1):
            if vc[3] < maxv:
                viol.append((3, a, -1, -1))
            vc[3] += 1
    for i in range(start[m], start[m + 1]):
        n = src[i]
        counts[2] += 1
        c_pull(&G, &maps[i, 0], n, m, e, ida, l1, p1)
        for j in range(n + 1):
            el[j] = 0
            ep[j] = j
        if not (eqv(l1, el, n + 1) and eqv(p1, ep, n + 1)):
            if vc[4] < maxv:
                viol.append((4, i, -1, -1))
            vc[4] += 1
        counts[5] += 1
        c_push(ida, &maps[i, 0], n, m, v1)
        if not eqv(v1, &maps[i, 0], n + 1):
            if vc[5] < maxv:
                viol.append((5, i, -1, -1))
            vc[5] += 1
    # (1.h), (2.h); element-major so each element's star data is computed once
    import numpy as np
    cdef Py_ssize_t base = start[m], nm = start[m + 1] - start[m], cidx
    cdef long[:, ::1] PL = np.zeros((max(nm, 1), MAXL), dtype=np.int64)
    cdef long[:, ::1] PP = np.zeros((max(nm, 1), MAXL), dtype=np.int64)
    cdef long[:, ::1] PU = np.zeros((max(nm, 1), MAXL), dtype=np.int64)
    for a in range(S):
        for i in range(nm):
            n = src[base + i]
            c_pull_f(&G, &maps[base + i, 0], n, m, &fib[base + i, 0], &fst[base + i, 0],
                     &elab[a, 0], &eperm[a, 0], &PL[i, 0], &PP[i, 0])
            c_push(&eperm[a, 0], &maps[base + i, 0], n, m, &PU[i, 0])
        for i in range(nm):
            n = src[base + i]
            for j in range(start[n], start[n + 1]):
                kk = src[j]
                cidx = compidx[coff[base + i] + j - start[n]]
                counts[0] += 1
                c_pull_f(&G, &maps[j, 0], kk, n, &fib[j, 0], &fst[j, 0], &PL[i, 0], &PP[i, 0], l2, p2)
                if not (eqv(&PL[cidx, 0], l2, kk + 1) and eqv(&PP[cidx, 0], p2, kk + 1)):
                    if vc[6] < maxv:
                        viol.append((6, base + i, j, a))
                    vc[6] += 1
                counts[1] += 1
                c_push(&PP[i, 0], &maps[j, 0], kk, n, v2)
                c_compose(&PU[i, 0], v2, kk, v3)
                if not eqv(&PU[cidx, 0], v3, kk + 1):
                    if vc[7] < maxv:
                        viol.append((7, base + i, j, a))
                    vc[7] += 1
    # (1.v), (2.v)
    for i in range(start[m], start[m + 1]):
        n = src[i]
        for q in range(P):
            c_mul(&G, m, &plab[2*q, 0], &pperm[2*q, 0], &plab[2*q+1, 0], &pperm[2*q+1, 0], l1, p1)
            c_push(&pperm[2*q, 0], &maps[i, 0], n, m, v1)
            counts[3] += 1
            c_push(p1, &maps[i, 0], n, m, v2)
            c_push(&pperm[2*q+1, 0], v1, n, m, v3)
            if not eqv(v2, v3, n + 1):
                if vc[8] < maxv:
                    viol.append((8, i, q, -1))
                vc[8] += 1
            counts[4] += 1
            c_pull(&G, &maps[i, 0], n, m, l1, p1, l2, p2)
            c_pull(&G, &maps[i, 0], n, m, &plab[2*q, 0], &pperm[2*q, 0], l3, p3)
            c_pull(&G, v1, n, m, &plab[2*q+1, 0], &pperm[2*q+1, 0], l4, p4)
            c_mul(&G, n, l3, p3, l4, p4, el, ep)
            if not (eqv(l2, el, n + 1) and eqv(p2, ep, n + 1)):
                if vc[9] < maxv:
                    viol.append((9, i, q, -1))
                vc[9] += 1
    return counts_py(counts), viol


cdef counts_py(long *counts):
    return {"1.h": counts[0], "2.h": counts[1], "3.h": counts[2], "1.v": counts[3],
            "2.v": counts[4], "3.v": counts[5], "group": counts[6]}


def rank_mod_p(long[:, ::1] M, long p):
    """Rank of an integer matrix modulo a prime p < 2**31 (the matrix is overwritten)."""
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long inv, f, t
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            M[i, c] %= p
            if M[i, c] < 0:
                M[i, c] += p
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = t
        inv = _inv_mod(M[r, c], p)
        for j in range(c, cols):
            M[r, j] = (M[r, j] % p) * inv % p
            if M[r, j] < 0:
                M[r, j] += p
        for i in range(r + 1, rows):
            f = M[i, c] % p
            if f < 0:
                f += p
            if f != 0:
                for j in range(c, cols):
                    M[i, j] = (M[i, j] - f * M[r, j]) % p
        r += 1
    return r


cdef long _inv_mod(long a, long p) noexcept:
    cdef long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    if newr < 0:
        newr += p
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t
