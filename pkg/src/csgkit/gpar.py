"""Finite groups with parity, permutations and wreath products G wr S_{n+1}."""

import itertools
import json


class GroupError(ValueError):
    """Malformed group data or mismatched operands."""


class ParityGroup:
    """A finite group on elements 0..k-1 (0 is the identity) with a parity map to {+1,-1}.

    Built from an explicit multiplication table, which is validated together with
    the parity at construction time.
    """

    def __init__(self, table, parity, names=None, family="table", order_hint=None):
        k = len(table)
        if k == 0:
            raise GroupError("a group needs at least one element")
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.parity_of = tuple(int(p) for p in parity)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(k))
        self.family = family
        self._order_hint = order_hint
        self.identity = 0
        self._validate()
        self.inv = tuple(next(j for j in range(k) if self.table[i][j] == 0) for i in range(k))
        self._index = {name: i for i, name in enumerate(self.names)}

    def _validate(self):
        k = len(self.table)
        t = self.table
        if any(len(row) != k for row in t):
            raise GroupError("multiplication table must be square")
        if len(self.parity_of) != k or len(self.names) != k:
            raise GroupError("parity and names must list every element")
        if any(v < 0 or v >= k for row in t for v in row):
            raise GroupError("table entries out of range")
        for i in range(k):
            if t[0][i] != i or t[i][0] != i:
                raise GroupError("element 0 must be the identity")
            if sorted(t[i]) != list(range(k)):
                raise GroupError(f"row {i} is not a permutation (no inverses)")
        for a in range(k):
            for b in range(k):
                ab = t[a][b]
                for c in range(k):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise GroupError(f"table not associative at ({a},{b},{c})")
        if any(p not in (1, -1) for p in self.parity_of):
            raise GroupError("parity values must be +1 or -1")
        if self.parity_of[0] != 1:
            raise GroupError("the identity must be even")
        for a in range(k):
            for b in range(k):
                if self.parity_of[t[a][b]] != self.parity_of[a] * self.parity_of[b]:
                    raise GroupError(f"parity is not a homomorphism at ({a},{b})")

    # group-with-parity protocol shared with FreeParity
    def mul(self, a, b):
        return self.table[a][b]

    def inverse(self, a):
        return self.inv[a]

    def parity(self, a):
        return self.parity_of[a]

    def elements(self):
        return range(len(self.table))

    def __len__(self):
        return len(self.table)

    def order(self):
        return len(self.table)

    def name(self, a):
        return self.names[a]

    def index(self, name):
        if isinstance(name, int):
            if not 0 <= name < len(self.table):
                raise GroupError(f"no element {name}")
            return name
        try:
            return self._index[name]
        except KeyError:
            raise GroupError(f"unknown group element {name!r}") from None

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements() for b in self.elements())

    def opposite(self):
        k = len(self.table)
        table = [[self.table[b][a] for b in range(k)] for a in range(k)]
        return ParityGroup(table, self.parity_of, self.names, family=self.family + "-op")

    def power(self, a, r):
        out = 0
        for _ in range(r):
            out = self.table[out][a]
        return out

    def __eq__(self, other):
        return (isinstance(other, ParityGroup) and self.table == other.table
                and self.parity_of == other.parity_of)

    def __hash__(self):
        return hash((self.table, self.parity_of))

    def __repr__(self):
        return f"ParityGroup({self.family}, order={len(self.table)})"

    def to_json(self):
        if self.family == "cyclic":
            return {"family": "cyclic", "order": len(self.table), "parity": list(self.parity_of)}
        return {"family": "table", "elements": list(self.names),
                "table": [[self.names[v] for v in row] for row in self.table],
                "parity": list(self.parity_of)}


def trivial():
    return ParityGroup([[0]], [1], ["e"], family="cyclic")


def cyclic(k, parity=None):
    """C_k written multiplicatively with generator t; parity defaults to trivial."""
    if k < 1:
        raise GroupError("cyclic order must be positive")
    table = [[(a + b) % k for b in range(k)] for a in range(k)]
    if parity is None:
        parity = [1] * k
    names = ["e", "t"] + [f"t^{i}" for i in range(2, k)]
    return ParityGroup(table, parity[:k] if len(parity) >= k else parity, names[:k], family="cyclic")


def c4_q():
    """C_4 with the quotient parity onto C_2."""
    return cyclic(4, [1, -1, 1, -1])


def c2_id():
    """C_2 with the identity parity."""
    return cyclic(2, [1, -1])


def symmetric_group(k):
    """S_k with the sign parity, elements numbered in lexicographic order of image tuples."""
    perms = list(itertools.permutations(range(k)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    parity = [sign(Perm(p)) for p in perms]
    names = ["e" if i == 0 else "".join(map(str, p)) for i, p in enumerate(perms)]
    return ParityGroup(table, parity, names, family="symmetric")


def direct_product(G, H):
    """G x H with parity multiplied; element (g, h) is numbered g*|H| + h."""
    k, l = len(G), len(H)
    table = []
    names = []
    parity = []
    for a in range(k * l):
        g1, h1 = divmod(a, l)
        names.append(f"({G.name(g1)},{H.name(h1)})")
        parity.append(G.parity(g1) * H.parity(h1))
        row = []
        for b in range(k * l):
            g2, h2 = divmod(b, l)
            row.append(G.mul(g1, g2) * l + H.mul(h1, h2))
        table.append(row)
    return ParityGroup(table, parity, names, family="product")


def from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    fam = data.get("family")
    if fam == "cyclic":
        k = int(data["order"])
        parity = data.get("parity", [1] * k)
        if len(parity) != k:
            raise GroupError("cyclic parity must list every power of the generator")
        return cyclic(k, parity)
    if fam == "trivial":
        return trivial()
    if fam == "table":
        names = [str(e) for e in data["elements"]]
        idx = {n: i for i, n in enumerate(names)}
        try:
            table = [[idx[str(v)] if not isinstance(v, int) else v for v in row] for row in data["table"]]
        except KeyError as exc:
            raise GroupError(f"table mentions unknown element {exc}") from None
        return ParityGroup(table, data["parity"], names, family="table")
    raise GroupError(f"unknown group family {fam!r}")


class FreeParity:
    """Free group on named generators, each tagged even or odd.

    Elements are reduced words: tuples of (name, +1/-1). Used for symbolic labels.
    """

    identity = ()

    def __init__(self, parities):
        self.parities = dict(parities)

    def gen(self, name):
        if name not in self.parities:
            raise GroupError(f"unknown generator {name!r}")
        return ((name, 1),)

    def mul(self, a, b):
        out = list(a)
        for letter in b:
            if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                out.pop()
            else:
                out.append(letter)
        return tuple(out)

    def inverse(self, a):
        return tuple((n, -e) for n, e in reversed(a))

    def parity(self, a):
        p = 1
        for n, _ in a:
            p *= self.parities[n]
        return p

    def name(self, a):
        if not a:
            return "e"
        return "".join(n if e == 1 else n + "^-1" for n, e in a)


class OppositeGroup:
    """The opposite of a group-with-parity object: mul(a, b) = base.mul(b, a)."""

    def __init__(self, base):
        self.base = base
        self.identity = base.identity

    def mul(self, a, b):
        return self.base.mul(b, a)

    def inverse(self, a):
        return self.base.inverse(a)

    def parity(self, a):
        return self.base.parity(a)

    def name(self, a):
        return self.base.name(a)

    def __getattr__(self, attr):
        if attr in ("table", "inv"):
            # a base table would multiply in the wrong order
            raise AttributeError(attr)
        return getattr(self.base, attr)


# permutations of {0..n}, stored as image tuples; (p*q)(i) = p(q(i))

class Perm:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise GroupError(f"not a permutation: {list(images)}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @property
    def n(self):
        return len(self.images) - 1

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        if len(other.images) != len(self.images):
            raise GroupError("permutation level mismatch")
        return Perm(self.images[j] for j in other.images)

    def inverse(self):
        out = [0] * len(self.images)
        for i, j in enumerate(self.images):
            out[j] = i
        return Perm(out)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Perm({list(self.images)})"

    def __str__(self):
        return "[" + ",".join(map(str, self.images)) + "]"

    def is_identity(self):
        return self.images == tuple(range(len(self.images)))


def perm_identity(n):
    return Perm(range(n + 1))


def cycle(n, shift=1):
    """The permutation i -> i + shift mod n+1."""
    return Perm((i + shift) % (n + 1) for i in range(n + 1))


def transposition(n, i, j):
    im = list(range(n + 1))
    im[i], im[j] = im[j], im[i]
    return Perm(im)


def all_perms(n):
    for p in itertools.permutations(range(n + 1)):
        yield Perm(p)


def sign(p):
    """Signature via cycle decomposition."""
    images = p.images if isinstance(p, Perm) else tuple(p)
    seen = [False] * len(images)
    s = 1
    for i in range(len(images)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = images[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


class WreathElem:
    """(g_0, ..., g_n; gamma) in G wr S_{n+1}; labels are elements of some group object."""

    __slots__ = ("labels", "perm")

    def __init__(self, labels, perm):
        if not isinstance(perm, Perm):
            perm = Perm(perm)
        labels = tuple(labels)
        if len(labels) != len(perm.images):
            raise GroupError("labels and permutation disagree on the level")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "perm", perm)

    def __setattr__(self, name, value):
        raise AttributeError("WreathElem is immutable")

    @property
    def n(self):
        return len(self.labels) - 1

    def __eq__(self, other):
        return isinstance(other, WreathElem) and self.labels == other.labels and self.perm == other.perm

    def __hash__(self):
        return hash((self.labels, self.perm.images))

    def __repr__(self):
        return f"WreathElem({list(self.labels)}; {list(self.perm.images)})"

    def key(self):
        return (self.labels, self.perm.images)


def wreath_identity(G, n):
    return WreathElem([G.identity] * (n + 1), perm_identity(n))


def wreath_mul(G, a, b):
    """(g;gamma)(h;eta) = (g_i h_{gamma^-1(i)}; gamma eta)."""
    if len(a.labels) != len(b.labels):
        raise GroupError("wreath level mismatch")
    ginv = a.perm.inverse().images
    labels = [G.mul(a.labels[i], b.labels[ginv[i]]) for i in range(len(a.labels))]
    return WreathElem(labels, a.perm * b.perm)


def wreath_inverse(G, a):
    pinv = a.perm.inverse()
    # (g;gamma)^-1 = (h; gamma^-1) with h_i = g_{gamma(i)}^-1
    labels = [G.inverse(a.labels[a.perm.images[i]]) for i in range(len(a.labels))]
    return WreathElem(labels, pinv)


def wreath_elements(G, n):
    for labels in itertools.product(list(G.elements()), repeat=n + 1):
        for p in all_perms(n):
            yield WreathElem(labels, p)


def format_wreath(G, a):
    return "(" + ",".join(G.name(g) for g in a.labels) + ";" + ",".join(map(str, a.perm.images)) + ")"
