"""Bar constructions as exact matrices, chain complexes and their homology.

The covariant bar functor sends [n] to R^(n+1) and phi o g to the tensor map
obtained from lambda-tilde, F^-1 and operadic evaluation. The contravariant
one precomposes with the duality of a self-dual family.
"""

import itertools

from . import csg, gpar, kernels
from .envelope import F_inv, WhiskeredMorphism
from .ordmap import delta, sigma


class BarError(ValueError):
    """Variance/instance/algebra mismatches."""


class GroupOrderError(BarError):
    """A group order is not invertible in the field, so coinvariants are not exact."""


class DescentError(BarError):
    """The differential does not pass to the quotient."""


class ComplexError(BarError):
    """A differential fails d o d = 0 or has the wrong shape."""


# sparse matrices: a list of columns, each a dict row -> nonzero scalar ---------------------

class SparseMatrix:
    __slots__ = ("field", "nrows", "ncols", "cols")

    def __init__(self, field, nrows, ncols, cols=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [{} for _ in range(ncols)]

    @classmethod
    def from_dense(cls, field, rows):
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        cols = [{} for _ in range(nc)]
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                x = field.coerce(x)
                if x:
                    cols[j][i] = x
        return cls(field, nr, nc, cols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    def to_dense(self):
        F = self.field
        out = [[F.zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def apply(self, v):
        F = self.field
        out = {}
        for j, c in v.items():
            for i, x in self.cols[j].items():
                y = F.add(out.get(i, F.zero), F.mul(c, x))
                if y:
                    out[i] = y
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise BarError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        return SparseMatrix(self.field, self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other):
        F = self.field
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, x in b.items():
                y = F.add(c.get(i, F.zero), x)
                if y:
                    c[i] = y
                else:
                    c.pop(i, None)
            cols.append(c)
        return SparseMatrix(F, self.nrows, self.ncols, cols)

    def scale(self, s):
        F = self.field
        s = F.coerce(s)
        if not s:
            return SparseMatrix(F, self.nrows, self.ncols)
        return SparseMatrix(F, self.nrows, self.ncols, [{i: F.mul(s, x) for i, x in c.items()} for c in self.cols])

    def transpose(self):
        cols = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return SparseMatrix(self.field, self.ncols, self.nrows, cols)

    def is_zero(self):
        return not any(self.cols)

    def nnz(self):
        return sum(len(c) for c in self.cols)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.nrows == other.nrows and self.ncols == other.ncols
                and self.cols == other.cols)

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def rank(M, backend=None):
    """Exact rank: sparse elimination over Q, the modular kernel over F_p."""
    F = M.field
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if F.p is not None:
        return kernels.rank_mod_p(M.to_dense(), F.p, backend)
    return _Echelon(F, M.cols).rank


class _Echelon:
    """Incremental echelon basis; pivots are kept in insertion order."""

    def __init__(self, F, vectors=()):
        self.F = F
        self.rows = []          # (pivot, vector with 1 at pivot)
        self.pivots = set()
        for v in vectors:
            self.add(v)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v):
        F = self.F
        v = dict(v)
        for p, r in self.rows:
            c = v.get(p)
            if c:
                for i, x in r.items():
                    y = F.sub(v.get(i, F.zero), F.mul(c, x))
                    if y:
                        v[i] = y
                    else:
                        v.pop(i, None)
        return v

    def add(self, v):
        v = self.reduce(v)
        if not v:
            return False
        p = min(v)
        inv = self.F.inv(v[p])
        r = {i: self.F.mul(inv, x) for i, x in v.items()}
        self.rows.append((p, r))
        self.pivots.add(p)
        return True


# quotients of a coordinate space by a spanned subspace ------------------------------

class Quotient:
    """V / span(relations) with V = F^dim.

    Relations with at most two nonzero entries (signed-permutation actions,
    single basis tensors) are handled by a weighted union-find over the basis;
    anything else falls back to exact elimination.
    """

    def __init__(self, F, dim, relations):
        self.F = F
        self.dim = dim
        relations = [r for r in relations if r]
        if all(len(r) <= 2 for r in relations):
            self._orbits(relations)
        else:
            self._eliminate(relations)
        self.index = {b: k for k, b in enumerate(self.basis)}

    def _orbits(self, relations):
        F = self.F
        parent = list(range(self.dim))
        weight = [F.one] * self.dim          # e_i = weight[i] * e_parent[i]
        dead = [False] * self.dim

        def find(i):
            path = []
            while parent[i] != i:
                path.append(i)
                i = parent[i]
            acc = F.one
            for node in reversed(path):
                acc = F.mul(weight[node], acc)
                parent[node], weight[node] = i, acc
            return i, (weight[path[0]] if path else F.one)

        for r in relations:
            items = list(r.items())
            if len(items) == 1:
                (i, _), = items
                root, _ = find(i)
                dead[root] = True
                continue
            (i, a), (j, b) = items
            ri, wi = find(i)
            rj, wj = find(j)
            ca, cb = F.mul(a, wi), F.mul(b, wj)      # ca e_ri + cb e_rj = 0
            if ri == rj:
                if F.add(ca, cb):
                    dead[ri] = True
                continue
            # e_ri = -(cb/ca) e_rj
            parent[ri] = rj
            weight[ri] = F.neg(F.mul(cb, F.inv(ca)))
            if dead[ri]:
                dead[rj] = True
        self._proj = [None] * self.dim
        for i in range(self.dim):
            root, w = find(i)
            self._proj[i] = (root, w)
        self.basis = sorted({root for root, _ in self._proj if not dead[root]})
        self._dead = dead
        self._mode = "orbits"

    def _eliminate(self, relations):
        self._ech = _Echelon(self.F, relations)
        self.basis = [i for i in range(self.dim) if i not in self._ech.pivots]
        self._mode = "eliminate"

    @property
    def relation_rank(self):
        return self.dim - len(self.basis)

    def project(self, v):
        """Coordinates of the class of v in the quotient basis."""
        F = self.F
        out = {}
        if self._mode == "orbits":
            for i, c in v.items():
                root, w = self._proj[i]
                if self._dead[root]:
                    continue
                k = self.index[root]
                y = F.add(out.get(k, F.zero), F.mul(c, w))
                if y:
                    out[k] = y
                else:
                    out.pop(k, None)
            return out
        r = self._ech.reduce(v)
        return {self.index[i]: c for i, c in r.items()}


def quotient_complex(C, subspaces, check_descent=True):
    """The complex C_n / K_n, K_n spanned by subspaces[n]; the descent of d is checked."""
    F = C.field
    qs = [Quotient(F, C.dims[n], subspaces[n]) for n in range(len(C.dims))]
    diffs = [None]
    for n in range(1, len(C.dims)):
        d = C.diffs[n]
        if check_descent:
            for r in subspaces[n]:
                if qs[n - 1].project(d.apply(r)):
                    raise DescentError(f"the differential d_{n} does not preserve the relation subspace")
        cols = [qs[n - 1].project(d.cols[b]) for b in qs[n].basis]
        diffs.append(SparseMatrix(F, len(qs[n - 1].basis), len(qs[n].basis), cols))
    return ChainComplex(F, [len(q.basis) for q in qs], diffs)


# chain complexes ----------------------------------------------------------------------

class ChainComplex:
    """Degrees 0..N with diffs[n]: C_n -> C_{n-1} for n >= 1 (diffs[0] is None)."""

    def __init__(self, field, dims, diffs, check=True):
        self.field = field
        self.dims = list(dims)
        self.diffs = list(diffs)
        if len(self.diffs) != len(self.dims):
            raise ComplexError("need one differential slot per degree")
        for n in range(1, len(self.dims)):
            d = self.diffs[n]
            if d.nrows != self.dims[n - 1] or d.ncols != self.dims[n]:
                raise ComplexError(f"d_{n} has shape {d.nrows}x{d.ncols}, expected {self.dims[n - 1]}x{self.dims[n]}")
        if check:
            for n in range(2, len(self.dims)):
                if not (self.diffs[n - 1] @ self.diffs[n]).is_zero():
                    raise ComplexError(f"d_{n - 1} o d_{n} != 0")

    @property
    def top(self):
        return len(self.dims) - 1

    def truncate(self, N):
        return ChainComplex(self.field, self.dims[:N + 1], self.diffs[:N + 1], check=False)


def homology_of_complex(C, backend=None):
    """dim H_n = dim C_n - rank d_n - rank d_{n+1}, with d_{N+1} = 0 at the top."""
    ranks = [0] + [rank(C.diffs[n], backend) for n in range(1, len(C.dims))] + [0]
    return [C.dims[n] - ranks[n] - ranks[n + 1] for n in range(len(C.dims))]


# identification of G_0 with the algebra's group -------------------------------------------

def _natural_level0(inst, payload, target):
    """Family-specific identification of a level-0 payload with an element of `target`."""
    if isinstance(inst, csg.ProductWithGroup):
        inner = _natural_level0(inst.inner, payload[0], None)
        if inner not in (None, "e"):
            raise BarError("products are supported only over a family with trivial G_0")
        if target is None or not _same_group(target, inst.H):
            raise BarError(f"the algebra's group must be {inst.H!r}")
        return payload[1]
    if isinstance(inst, csg.TwistedSymmetric):
        if target is None:
            return "e" if len(inst.G) == 1 else None
        if not _same_group(target, inst.G):
            raise BarError("the algebra's group must be the label group of the twisted symmetric family")
        return payload[0][0]
    if isinstance(inst, csg.Cyclic):
        return "e"
    if isinstance(inst, csg.Quaternionic):
        a, b = payload
        return _power_of_t(target, 2 * a + b, 4)
    if isinstance(inst, csg.Dihedral):
        return _power_of_t(target, payload[1], 2)
    if isinstance(inst, csg.Reflexive):
        return _power_of_t(target, payload, 2)
    raise BarError(f"no bar construction for the {inst.family} family")


def _same_group(A, B):
    return len(A) == len(B) and all(A.mul(a, b) == B.mul(a, b) for a in A.elements() for b in A.elements()) \
        and all(A.parity(a) == B.parity(a) for a in A.elements())


def _power_of_t(target, k, order):
    if target is None:
        return None
    if len(target) != order:
        raise BarError(f"the algebra's group must be cyclic of order {order}")
    return target.power(1, k % order)


class BarFunctor:
    """The covariant or contravariant bar construction of A over an instance.

    A label g in G_0 acts on A through the inverse of the family's natural
    identification of G_0 with A's group: with morphisms composed as in
    `csg.compose`, that is the choice making the contravariant construction
    agree with the classical cyclic, dihedral and quaternionic formulas.
    """

    def __init__(self, inst, A, variance="contravariant", duality=None):
        if variance not in ("covariant", "contravariant"):
            raise BarError(f"unknown variance {variance!r}")
        self.inst = inst
        self.A = A
        self.variance = variance
        self.field = A.field
        self._reflexive = isinstance(inst, csg.Reflexive)
        self.base = csg.Dihedral() if self._reflexive else inst
        if variance == "contravariant" and not (self._reflexive or getattr(inst, "self_dual", False)):
            raise BarError(f"the contravariant construction needs a self-dual family; {inst.family} is not")
        self._duality = duality or csg.duality
        self.alpha = self._identify()
        self._acts = {}
        self._cache = {}

    def _identify(self):
        lv = csg.level0(self.base)
        G0 = lv.group
        T = self.A.group
        commutative = all(self.A.multiply(self.A.basis(i), self.A.basis(j)) ==
                          self.A.multiply(self.A.basis(j), self.A.basis(i))
                          for i in range(self.A.dim) for j in range(self.A.dim))
        if len(T) == 1:
            if len(G0) > 1 and not commutative:
                raise BarError("a noncommutative algebra needs the full level-0 group acting on it")
            return {k: T.identity for k in range(len(G0))}
        alpha = {}
        for k, p in enumerate(lv.payloads):
            nat = _natural_level0(self.base, p, T)
            if nat is None or nat == "e":
                nat = T.identity
            alpha[k] = T.inverse(nat)
        for a in range(len(G0)):
            if T.parity(alpha[a]) != G0.parity(a):
                raise BarError(f"parity mismatch between G_0 and the algebra's group at {G0.name(a)}")
            for b in range(len(G0)):
                if alpha[G0.mul(a, b)] != T.mul(alpha[a], alpha[b]):
                    raise BarError("the algebra's group does not match the level-0 group")
        return alpha

    def dim(self, n):
        return self.A.dim ** (n + 1)

    def _act(self, g, i):
        key = (g, i)
        v = self._acts.get(key)
        if v is None:
            v = self.A.act(self.alpha[g], self.A.basis(i))
            self._acts[key] = v
        return v

    def _lift(self, f):
        if not self._reflexive:
            return f
        return csg.CsgMorphism(f.ord, csg.GElem(f.src, self.inst.to_dihedral(f.src, f.g.payload)))

    def covariant_matrix(self, f):
        """R^(m+1) -> R^(n+1) for f: [m] -> [n] in the base family."""
        key = (f.ord.values, f.ord.dst, f.g.payload)
        M = self._cache.get(key)
        if M is not None:
            return M
        F, A, d = self.field, self.A, self.A.dim
        w = csg.lambda_tilde(self.base, f)
        env = F_inv(WhiskeredMorphism(f.src + 1, f.dst + 1, w))
        cols = []
        for idx in itertools.product(range(d), repeat=f.src + 1):
            col = {0: F.one}
            for j in range(f.dst + 1):
                v = A.unit
                for e in env.orders[j]:
                    v = A.multiply(v, self._act(env.labels[e], idx[e]))
                col = {k * d + i: F.mul(c, x) for k, c in col.items() for i, x in enumerate(v) if x}
            cols.append({k: c for k, c in col.items() if c})
        M = SparseMatrix(F, d ** (f.dst + 1), d ** (f.src + 1), cols)
        self._cache[key] = M
        return M

    def matrix(self, f):
        f = self._lift(f)
        if self.variance == "covariant":
            return self.covariant_matrix(f)
        return self.covariant_matrix(self._duality(self.base, f))


def bar_matrix(B, f):
    return B.matrix(f)


# contravariant closed formulas ----------------------------------------------------------

def _tensor_map(B, n, fn):
    """Matrix of the map on basis tensors r_0 (x) ... (x) r_n -> tensor of the vectors fn(r)."""
    F, A, d = B.field, B.A, B.A.dim
    cols = []
    out_len = None
    for idx in itertools.product(range(d), repeat=n + 1):
        vecs = fn([A.basis(i) for i in idx])
        out_len = len(vecs)
        col = {0: F.one}
        for v in vecs:
            col = {k * d + i: F.mul(c, x) for k, c in col.items() for i, x in enumerate(v) if x}
        cols.append({k: c for k, c in col.items() if c})
    return SparseMatrix(F, d ** out_len, d ** (n + 1), cols)


def closed_formula(B, kind, i, n):
    """The classical dihedral/quaternionic formulas, built from structure constants and t."""
    A = B.A
    T = A.group
    t = 1 if len(T) > 1 else T.identity

    def tp(k, v):
        return A.act(T.power(t, k) if len(T) > 1 else T.identity, v)

    if kind == "d":
        def fn(r):
            if i < n:
                return r[:i] + [A.multiply(r[i], r[i + 1])] + r[i + 2:]
            return [A.multiply(tp(2, r[n]), r[0])] + r[1:n]
    elif kind == "s":
        def fn(r):
            return r[:i + 1] + [list(A.unit)] + r[i + 1:]
    elif kind == "x":
        def fn(r):
            return [tp(2, r[n])] + r[:n]
    elif kind == "y":
        def fn(r):
            return [tp(1, r[0])] + [tp(3, r[k]) for k in range(n, 0, -1)]
    else:
        raise BarError(f"unknown generator kind {kind!r}")
    return _tensor_map(B, n, fn)


def _generator_morphisms(inst, n):
    """(name, kind, i, morphism) for the faces into [n], degeneracies out of [n+1], x_n and y_n."""
    out = []
    if n >= 1:
        out += [(f"d{i}@{n}", "d", i, csg.CsgMorphism(delta(i, n), inst.identity(n - 1))) for i in range(n + 1)]
    out += [(f"s{i}@{n}", "s", i, csg.CsgMorphism(sigma(i, n), inst.identity(n + 1))) for i in range(n + 1)]
    if getattr(inst, "has_x", True):
        out.append((f"x@{n}", "x", None, csg.auto(inst, csg.GElem(n, inst.x(n)))))
    if getattr(inst, "has_y", False):
        out.append((f"y@{n}", "y", None, csg.auto(inst, csg.GElem(n, inst.y(n)))))
    return out


def check_contravariant_formulas(inst, A, N, duality=None):
    """Names of generators whose contravariant bar matrix differs from the closed formula."""
    if not isinstance(inst, csg.Dihedral):
        raise BarError("closed formulas are stated for the dihedral and quaternionic families")
    B = BarFunctor(inst, A, "contravariant", duality=duality)
    bad = []
    for n in range(N + 1):
        for name, kind, i, f in _generator_morphisms(inst, n):
            # faces and automorphisms act on degree n, degeneracies on degree n as well
            if B.matrix(f) != closed_formula(B, kind, i, n):
                bad.append(name)
    return bad


# complexes built from the bar construction ------------------------------------------------

def moore_complex(B, N, normalized=False):
    """Alternating-sum complex of the contravariant construction through degree N."""
    if B.variance != "contravariant":
        raise BarError("the Moore complex uses the contravariant construction")
    inst, F = B.inst, B.field
    dims = [B.dim(n) for n in range(N + 1)]
    diffs = [None]
    for n in range(1, N + 1):
        d = SparseMatrix(F, dims[n - 1], dims[n])
        for i in range(n + 1):
            f = csg.CsgMorphism(delta(i, n), inst.identity(n - 1))
            d = d + B.matrix(f).scale(-1 if i % 2 else 1)
        diffs.append(d)
    C = ChainComplex(F, dims, diffs)
    if not normalized:
        return C
    subs = [[]]
    for n in range(1, N + 1):
        rel = []
        for j in range(n):
            s = B.matrix(csg.CsgMorphism(sigma(j, n - 1), inst.identity(n)))
            rel.extend(c for c in s.cols if c)
        subs.append(rel)
    return quotient_complex(C, subs)


def cochain_complex(B, N):
    """The covariant construction with coboundary sum (-1)^i delta^i, transposed into a chain complex."""
    inst, F = B.inst, B.field
    dims = [B.dim(n) for n in range(N + 1)]
    diffs = [None]
    for n in range(1, N + 1):
        d = SparseMatrix(F, dims[n], dims[n - 1])
        for i in range(n + 1):
            f = csg.CsgMorphism(delta(i, n), inst.identity(n - 1))
            d = d + B.matrix(f).scale(-1 if i % 2 else 1)
        diffs.append(d.transpose())
    return ChainComplex(F, dims, diffs)


def hochschild_homology(inst, A, N, normalized=False):
    """dim H_0..H_N of the Moore complex of the contravariant construction."""
    B = BarFunctor(inst, A, "contravariant")
    return homology_of_complex(moore_complex(B, N + 1, normalized))[:N + 1]


def level_generators(inst, n):
    """A generating set of G_n as payloads."""
    if isinstance(inst, csg.ProductWithGroup):
        gens = [(g, inst.H.identity) for g in level_generators(inst.inner, n)]
        gens += [(inst.inner.e(n), h) for h in _group_gens(inst.H)]
        return gens
    if isinstance(inst, csg.TwistedSymmetric):
        e = inst.G.identity
        gens = []
        for i in range(n):
            p = list(range(n + 1))
            p[i], p[i + 1] = p[i + 1], p[i]
            gens.append(((e,) * (n + 1), tuple(p)))
        for s in _group_gens(inst.G):
            gens.append(((s,) + (e,) * n, tuple(range(n + 1))))
        return gens
    gens = []
    if getattr(inst, "has_x", True):
        gens.append(inst.x(n))
    if getattr(inst, "has_y", False):
        gens.append(inst.y(n))
    return gens


def _group_gens(G):
    from .twalg import _generators
    return _generators(G)


def _sign_theta(inst, n, payload):
    return gpar.sign(csg.theta(inst, csg.GElem(n, payload)))


def coinvariant_complex(inst, A, N):
    """Levelwise sign-twisted coinvariants C_n / span{v - sign(theta_g) g.v} through degree N.

    Self-dual families (and the reflexive one) use the contravariant Moore complex;
    the others use the covariant cochain complex, transposed.
    """
    F = A.field
    if F.p is not None:
        for n in range(N + 1):
            if inst.order(n) % F.p == 0:
                raise GroupOrderError(f"|G_{n}| = {inst.order(n)} is divisible by {F.p}")
    contra = isinstance(inst, csg.Reflexive) or getattr(inst, "self_dual", False)
    if contra:
        B = BarFunctor(inst, A, "contravariant")
        C = moore_complex(B, N)
    else:
        B = BarFunctor(inst, A, "covariant")
        C = cochain_complex(B, N)
    subs = []
    for n in range(N + 1):
        rel = []
        for g in level_generators(inst, n):
            M = B.matrix(csg.auto(inst, csg.GElem(n, g)))
            if not contra:
                M = M.transpose()
            s = _sign_theta(inst, n, g)
            for b in range(C.dims[n]):
                v = {b: F.one}
                for i, x in M.cols[b].items():
                    y = F.sub(v.get(i, F.zero), F.mul(F.coerce(s), x))
                    if y:
                        v[i] = y
                    else:
                        v.pop(i, None)
                if v:
                    rel.append(v)
        subs.append(rel)
    return quotient_complex(C, subs)


def positive_homology(inst, A, N):
    """dim H_0..H_N of the sign-twisted coinvariant complex."""
    return homology_of_complex(coinvariant_complex(inst, A, N + 1))[:N + 1]


# the Connes (b, B) bicomplex, independent of the crossed simplicial machinery ------------------

def connes_oracle(A, N):
    """Cyclic homology dims HC_0..HC_N from the normalized (b, B) bicomplex."""
    F, d = A.field, A.dim
    u = _unit_index(A)
    abar = [i for i in range(d) if i != u]

    def basis(n):
        return [(a0,) + rest for a0 in range(d) for rest in itertools.product(abar, repeat=n)]

    bases = [basis(n) for n in range(N + 3)]
    index = [{b: k for k, b in enumerate(bs)} for bs in bases]

    def add_tensor(out, n, vecs, coeff):
        # expand a tensor of vectors, dropping terms with a unit in positions >= 1
        terms = {(): coeff}
        for pos, v in enumerate(vecs):
            new = {}
            for k, c in terms.items():
                for i, x in enumerate(v):
                    if x and not (pos >= 1 and i == u):
                        key = k + (i,)
                        new[key] = F.add(new.get(key, F.zero), F.mul(c, x))
            terms = new
        for k, c in terms.items():
            if c:
                j = index[n][k]
                y = F.add(out.get(j, F.zero), c)
                if y:
                    out[j] = y
                else:
                    out.pop(j, None)

    def b_map(n):
        cols = []
        for t in bases[n]:
            r = [A.basis(i) for i in t]
            out = {}
            for i in range(n):
                vecs = r[:i] + [A.multiply(r[i], r[i + 1])] + r[i + 2:]
                add_tensor(out, n - 1, vecs, F.coerce(-1 if i % 2 else 1))
            vecs = [A.multiply(r[n], r[0])] + r[1:n]
            add_tensor(out, n - 1, vecs, F.coerce(-1 if n % 2 else 1))
            cols.append(out)
        return SparseMatrix(F, len(bases[n - 1]), len(bases[n]), cols)

    def B_map(n):
        cols = []
        for t in bases[n]:
            out = {}
            for i in range(n + 1):
                rot = t[i:] + t[:i]
                vecs = [A.unit] + [A.basis(a) for a in rot]
                add_tensor(out, n + 1, vecs, F.coerce(-1 if (n * i) % 2 else 1))
            cols.append(out)
        return SparseMatrix(F, len(bases[n + 1]), len(bases[n]), cols)

    top = N + 1
    bmaps = {n: b_map(n) for n in range(1, top + 1)}
    Bmaps = {n: B_map(n) for n in range(0, top)}
    # total degree m: blocks C_m, C_{m-2}, ...
    blocks = {m: [m - 2 * p for p in range(m // 2 + 1)] for m in range(top + 1)}
    offs = {}
    dims = []
    for m in range(top + 1):
        acc, o = 0, {}
        for q in blocks[m]:
            o[q] = acc
            acc += len(bases[q])
        offs[m] = o
        dims.append(acc)
    diffs = [None]
    for m in range(1, top + 1):
        cols = []
        for q in blocks[m]:
            for k in range(len(bases[q])):
                col = {}
                if q >= 1:
                    for r, x in bmaps[q].cols[k].items():
                        col[offs[m - 1][q - 1] + r] = x
                if q + 1 in offs[m - 1] and q + 1 <= m - 1:
                    for r, x in Bmaps[q].cols[k].items():
                        col[offs[m - 1][q + 1] + r] = x
                cols.append(col)
        diffs.append(SparseMatrix(F, dims[m - 1], dims[m], cols))
    C = ChainComplex(F, dims, diffs)
    return homology_of_complex(C)[:N + 1]


def _unit_index(A):
    nz = [i for i, x in enumerate(A.unit) if x]
    if len(nz) != 1 or A.unit[nz[0]] != A.field.one:
        raise BarError("the Connes oracle needs the unit to be a basis vector")
    return nz[0]
