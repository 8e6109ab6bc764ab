"""Finite-dimensional algebras over Q or F_p with a twisted action of a group with parity."""

import itertools
import json
from fractions import Fraction

from . import gpar


class AlgebraError(ValueError):
    """Malformed algebra data or mismatched operands."""


# exact fields ----------------------------------------------------------------------

class Field:
    """Q (p is None) or F_p. Scalars are Fractions or ints reduced mod p."""

    def __init__(self, p=None):
        if p is not None:
            p = int(p)
            if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
                raise AlgebraError(f"{p} is not prime")
        self.p = p
        self.zero = self.coerce(0)
        self.one = self.coerce(1)

    @property
    def name(self):
        return "Q" if self.p is None else f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return f"Field({self.name})"

    def coerce(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.p is None else pow(a, -1, self.p)

    def fmt(self, a):
        if self.p is None:
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def to_json(self):
        return "Q" if self.p is None else {"prime": self.p}


QQ = Field()


def field_from_json(data):
    if data in ("Q", "QQ", "rationals", None):
        return QQ
    if isinstance(data, str) and data.upper().startswith("F"):
        return Field(int(data[1:]))
    if isinstance(data, dict) and "prime" in data:
        return Field(data["prime"])
    if isinstance(data, int):
        return Field(data)
    raise AlgebraError(f"unknown field {data!r}")


# small dense matrix helpers over a Field ---------------------------------------------

def mat_mul(F, A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = [[F.zero] * m for _ in range(n)]
    for i in range(n):
        row = out[i]
        for t in range(k):
            a = A[i][t]
            if a:
                for j, b in enumerate(B[t]):
                    if b:
                        row[j] = F.add(row[j], F.mul(a, b))
    return out


def mat_vec(F, A, v):
    return [_dot(F, row, v) for row in A]


def _dot(F, row, v):
    s = F.zero
    for a, b in zip(row, v):
        if a and b:
            s = F.add(s, F.mul(a, b))
    return s


def mat_identity(F, d):
    return [[F.one if i == j else F.zero for j in range(d)] for i in range(d)]


# twisted algebras -------------------------------------------------------------------

class TwistedAlgebra:
    """An algebra with basis e_0..e_{d-1} and generator actions of a ParityGroup.

    mult[i][j] is the coordinate vector of e_i e_j. actions maps a generator
    (group element index) to (declared parity, matrix), acting on column vectors.
    Matrices of all group elements are derived by closing under products,
    with matrix(gh) = matrix(g) matrix(h).
    """

    def __init__(self, field, dim, unit, mult, group, actions, name=None):
        self.field = field
        self.dim = int(dim)
        self.unit = [field.coerce(x) for x in unit]
        self.mult = [[[field.coerce(x) for x in mult[i][j]] for j in range(self.dim)] for i in range(self.dim)]
        self.group = group
        self.actions = {g: (int(par), [[field.coerce(x) for x in row] for row in M]) for g, (par, M) in actions.items()}
        self.name = name
        self._matrices = None
        self._closure_error = None
        if len(self.unit) != self.dim or len(self.mult) != self.dim:
            raise AlgebraError("unit and structure tensor must match the dimension")
        for g, (_, M) in self.actions.items():
            if len(M) != self.dim or any(len(r) != self.dim for r in M):
                raise AlgebraError(f"action matrix of {group.name(g)} is not {self.dim}x{self.dim}")

    # arithmetic
    def multiply(self, a, b):
        F = self.field
        out = [F.zero] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                c = F.mul(x, y)
                for k, z in enumerate(self.mult[i][j]):
                    if z:
                        out[k] = F.add(out[k], F.mul(c, z))
        return out

    def basis(self, i):
        F = self.field
        return [F.one if j == i else F.zero for j in range(self.dim)]

    def matrices(self):
        """Matrix of every group element, closed from the generators (cached)."""
        if self._matrices is None:
            self._close()
        if self._closure_error:
            raise AlgebraError(self._closure_error)
        return self._matrices

    def _close(self):
        F, G = self.field, self.group
        mats = {G.identity: mat_identity(F, self.dim)}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s, (_, M) in self.actions.items():
                    h = G.mul(g, s)
                    if h not in mats:
                        mats[h] = mat_mul(F, mats[g], M)
                        nxt.append(h)
            frontier = nxt
        self._matrices = mats
        if len(mats) != len(G):
            self._closure_error = "the action generators do not generate the group"

    def act(self, g, v):
        return mat_vec(self.field, self.matrices()[g], v)

    def to_json(self):
        F = self.field
        return {
            "field": F.to_json(),
            "dim": self.dim,
            "unit": [F.fmt(x) for x in self.unit],
            "mult": [[[F.fmt(x) for x in self.mult[i][j]] for j in range(self.dim)] for i in range(self.dim)],
            "group": self.group.to_json(),
            "actions": [{"gen": self.group.name(g), "parity": par, "matrix": [[F.fmt(x) for x in r] for r in M]}
                        for g, (par, M) in sorted(self.actions.items())],
            **({"name": self.name} if self.name else {}),
        }


class Finding:
    def __init__(self, check, witness):
        self.check = check
        self.witness = witness

    def __repr__(self):
        return f"{self.check}: {self.witness}"

    def to_json(self):
        return {"check": self.check, "witness": self.witness}


class AlgebraReport:
    def __init__(self):
        self.findings = []

    @property
    def ok(self):
        return not self.findings

    def add(self, check, witness):
        self.findings.append(Finding(check, witness))

    def checks_failed(self):
        return sorted({f.check for f in self.findings})

    def to_json(self):
        return {"ok": self.ok, "findings": [f.to_json() for f in self.findings]}


def validate(A, names=None):
    """Associativity, unit, relations of the action and (anti-)multiplicativity.

    Each failing check is reported once, at the first basis witness in
    lexicographic order; `names` optionally labels basis vectors in witnesses.
    """
    F, G, d = A.field, A.group, A.dim
    rep = AlgebraReport()
    nm = names or [f"e{i}" for i in range(d)]
    E = [A.basis(i) for i in range(d)]

    def first(check, cases):
        for case in cases:
            w = case()
            if w is not None:
                rep.add(check, w)
                return

    def assoc(i, j, k):
        def f():
            if A.multiply(A.multiply(E[i], E[j]), E[k]) != A.multiply(E[i], A.multiply(E[j], E[k])):
                return f"({nm[i]},{nm[j]},{nm[k]})"
        return f

    first("associativity", (assoc(i, j, k) for i in range(d) for j in range(d) for k in range(d)))

    def unit(i):
        def f():
            if A.multiply(A.unit, E[i]) != E[i] or A.multiply(E[i], A.unit) != E[i]:
                return nm[i]
        return f

    first("unit", (unit(i) for i in range(d)))
    for g, (par, M) in sorted(A.actions.items()):
        if G.parity(g) != par:
            rep.add("parity", f"{G.name(g)} declared {par:+d} but has group parity {G.parity(g):+d}")
        if mat_vec(F, M, A.unit) != A.unit:
            rep.add("unit-fixed", G.name(g))
        check = "homomorphism" if par == 1 else "anti-homomorphism"

        def mult_case(i, j, M=M, par=par, g=g):
            def f():
                lhs = mat_vec(F, M, A.multiply(E[i], E[j]))
                gi, gj = mat_vec(F, M, E[i]), mat_vec(F, M, E[j])
                rhs = A.multiply(gi, gj) if par == 1 else A.multiply(gj, gi)
                if lhs != rhs:
                    return f"{G.name(g)} on ({nm[i]},{nm[j]})"
            return f

        first(check, (mult_case(i, j) for i in range(d) for j in range(d)))
    # relations: the closure must be well defined on every element
    A._matrices = None
    A._closure_error = None
    A._close()
    if A._closure_error:
        rep.add("generation", A._closure_error)
    else:
        mats = A._matrices
        bad = None
        for g in G.elements():
            for s, (_, M) in sorted(A.actions.items()):
                if mat_mul(F, mats[g], M) != mats[G.mul(g, s)]:
                    bad = f"matrix({G.name(g)}) matrix({G.name(s)}) != matrix({G.name(G.mul(g, s))})"
                    break
            if bad:
                break
        if bad:
            rep.add("relations", bad)
    return rep


def element_checks(A):
    """Per-element table: order of the matrix, and whether it is a homomorphism or anti-homomorphism."""
    F, G, d = A.field, A.group, A.dim
    mats = A.matrices()
    E = [A.basis(i) for i in range(d)]
    ident = mat_identity(F, d)
    out = {}
    for g in G.elements():
        M = mats[g]
        hom = anti = True
        for i in range(d):
            for j in range(d):
                lhs = mat_vec(F, M, A.multiply(E[i], E[j]))
                gi, gj = mat_vec(F, M, E[i]), mat_vec(F, M, E[j])
                hom = hom and lhs == A.multiply(gi, gj)
                anti = anti and lhs == A.multiply(gj, gi)
        order, P = 1, M
        while P != ident:
            P = mat_mul(F, P, M)
            order += 1
        out[G.name(g)] = {"order": order, "homomorphism": hom, "antihomomorphism": anti,
                          "is_identity": M == ident}
    return out


# constructors -----------------------------------------------------------------------

def ground_field(F=QQ, group=None):
    """The field itself with the trivial action of `group` (default the trivial group)."""
    G = group or gpar.trivial()
    gens = _generators(G)
    return TwistedAlgebra(F, 1, [1], [[[1]]], G, {g: (G.parity(g), [[1]]) for g in gens}, name=F.name)


def _generators(G):
    """A small generating set of a ParityGroup, greedily by element index."""
    span = {G.identity}
    gens = []
    for g in G.elements():
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = G.mul(a, s)
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
    return gens


def quaternions(F=QQ):
    """H with basis (1,i,j,k) and t: (1,i,j,k) -> (1,j,-i,-k) generating C_4 with the quotient parity."""
    table = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    mult = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for (a, b), (s, c) in table.items():
        mult[a][b][c] = s
    # columns are images: t(1)=1, t(i)=j, t(j)=-i, t(k)=-k
    t = [[1, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, -1]]
    G = gpar.c4_q()
    return TwistedAlgebra(F, 4, [1, 0, 0, 0], mult, G, {1: (-1, t)}, name="H")


QUATERNION_NAMES = ["1", "i", "j", "k"]


def truncated_polynomial(F=QQ, k=2, group=None):
    """F[x]/(x^k) with the trivial action (x is fixed, so odd elements act by the identity anti-map)."""
    G = group or gpar.trivial()
    mult = [[[1 if a + b == c else 0 for c in range(k)] for b in range(k)] for a in range(k)]
    I = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    return TwistedAlgebra(F, k, [1] + [0] * (k - 1), mult, G,
                          {g: (G.parity(g), I) for g in _generators(G)}, name=f"{F.name}[x]/(x^{k})")


class FiniteMonoid:
    """A finite monoid on 0..k-1 with unit 0, plus generator actions by set maps."""

    def __init__(self, table, names=None, unit=0):
        self.table = [list(r) for r in table]
        self.k = len(table)
        self.unit = unit
        self.names = names or [str(i) for i in range(self.k)]
        for a in range(self.k):
            for b in range(self.k):
                for c in range(self.k):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise AlgebraError(f"monoid table not associative at ({a},{b},{c})")
            if self.table[unit][a] != a or self.table[a][unit] != a:
                raise AlgebraError("monoid unit is not two-sided")

    @classmethod
    def cyclic_group(cls, k):
        names = ["e"] + ["g" if i == 1 else f"g^{i}" for i in range(1, k)]
        return cls([[(a + b) % k for b in range(k)] for a in range(k)], names)


def monoid_algebra(F, M, G, actions, name=None):
    """F[M] with basis M; actions maps a generator of G to a list giving its set map on M.

    Even generators must be monoid maps, odd ones anti-maps; both must fix the unit.
    """
    for g, f in actions.items():
        if sorted(set(f)) != sorted(set(range(M.k))) or len(f) != M.k:
            raise AlgebraError(f"action of {G.name(g)} is not a bijection of the monoid")
        if f[M.unit] != M.unit:
            raise AlgebraError(f"action of {G.name(g)} does not fix the unit")
        odd = G.parity(g) == -1
        for a in range(M.k):
            for b in range(M.k):
                lhs = f[M.table[a][b]]
                rhs = M.table[f[b]][f[a]] if odd else M.table[f[a]][f[b]]
                if lhs != rhs:
                    kind = "anti-homomorphism" if odd else "homomorphism"
                    raise AlgebraError(f"action of {G.name(g)} is not a monoid {kind} on ({M.names[a]},{M.names[b]})")
    k = M.k
    mult = [[[1 if M.table[a][b] == c else 0 for c in range(k)] for b in range(k)] for a in range(k)]
    acts = {}
    for g, f in actions.items():
        P = [[0] * k for _ in range(k)]
        for a in range(k):
            P[f[a]][a] = 1
        acts[g] = (G.parity(g), P)
    unit = [1 if i == M.unit else 0 for i in range(k)]
    return TwistedAlgebra(F, k, unit, mult, G, acts, name=name)


def group_algebra_with_inversion(F, k, G=None):
    """F[C_k] with the generator of G (default C_2 with identity parity) acting by inversion."""
    G = G or gpar.c2_id()
    M = FiniteMonoid.cyclic_group(k)
    inv = [(-a) % k for a in range(k)]
    gens = _generators(G)
    acts = {g: (inv if G.parity(g) == -1 else list(range(k))) for g in gens}
    return monoid_algebra(F, M, G, acts, name=f"{F.name}[C{k}]")


# operadic evaluation -------------------------------------------------------------------

def operad_eval(A, op, args):
    """theta_k(op): act on each argument by its label, then multiply in the op's order."""
    if len(args) != op.arity:
        raise AlgebraError(f"operation of arity {op.arity} applied to {len(args)} arguments")
    out = list(A.unit)
    for j in op.ordering:
        g = op.labels[j]
        if g not in A.matrices():
            raise AlgebraError(f"label {g!r} is not in the algebra's group")
        out = A.multiply(out, A.act(g, args[j]))
    return out


# JSON ----------------------------------------------------------------------------------

def algebra_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    try:
        F = field_from_json(data.get("field", "Q"))
        d = int(data["dim"])
        group = gpar.from_json(data["group"]) if "group" in data else gpar.trivial()
        acts = {}
        for a in data.get("actions", []):
            g = group.index(a["gen"])
            par = int(a.get("parity", group.parity(g)))
            acts[g] = (par, a["matrix"])
        return TwistedAlgebra(F, d, data["unit"], data["mult"], group, acts, name=data.get("name"))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, AlgebraError):
            raise
        raise AlgebraError(f"bad algebra JSON: {exc}") from None


def load_algebra(path):
    with open(path) as fh:
        return algebra_from_json(json.load(fh))


def tensor_basis(d, n):
    """Basis of the (n+1)-fold tensor power, as index tuples in lexicographic order."""
    return list(itertools.product(range(d), repeat=n + 1))
