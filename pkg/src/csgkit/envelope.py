"""The twisted associative operad, its envelope Env, the whiskered category and
the isomorphism F between them."""

import itertools
import json
import random
import re

from . import csg
from .gpar import FreeParity, GroupError, OppositeGroup, ParityGroup
from .ordmap import OrdMap, from_fibers


class EnvError(ValueError):
    """Malformed operations or morphisms, or mismatched composites."""


# the operad ----------------------------------------------------------------------

class AssocPhiElem:
    """An operation of arity k: a linear order on the inputs plus one label per input.

    `ordering` lists the inputs 0..k-1 from smallest to largest; `labels[j]` is
    the label of input j.
    """

    __slots__ = ("ordering", "labels")

    def __init__(self, ordering, labels):
        ordering = tuple(ordering)
        labels = tuple(labels)
        if sorted(ordering) != list(range(len(labels))):
            raise EnvError(f"ordering {ordering} is not a linear order on {len(labels)} inputs")
        object.__setattr__(self, "ordering", ordering)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("AssocPhiElem is immutable")

    @property
    def arity(self):
        return len(self.labels)

    def __eq__(self, other):
        return isinstance(other, AssocPhiElem) and self.ordering == other.ordering and self.labels == other.labels

    def __hash__(self):
        return hash((self.ordering, self.labels))

    def __repr__(self):
        return f"AssocPhiElem({'<'.join(str(i + 1) for i in self.ordering)}; {list(self.labels)})"


def unit_op(G):
    return AssocPhiElem((0,), (G.identity,))


def operad_compose(G, outer, inners):
    """gamma(outer; inners): block i is relabelled by g_i and reversed when g_i is odd."""
    if len(inners) != outer.arity:
        raise EnvError(f"operation of arity {outer.arity} cannot take {len(inners)} inputs")
    offsets = []
    acc = 0
    for b in inners:
        offsets.append(acc)
        acc += b.arity
    labels = []
    for g, b in zip(outer.labels, inners):
        labels.extend(G.mul(g, h) for h in b.labels)
    ordering = []
    for i in outer.ordering:
        inner = inners[i].ordering
        if G.parity(outer.labels[i]) == -1:
            inner = inner[::-1]
        ordering.extend(offsets[i] + j for j in inner)
    return AssocPhiElem(ordering, labels)


def act(a, perm):
    """a.sigma, defined by (a.sigma)(x_0, ..., x_{k-1}) = a(x_sigma(0), ..., x_sigma(k-1))."""
    ordering = tuple(perm[j] for j in a.ordering)
    labels = [None] * a.arity
    for j in range(a.arity):
        labels[perm[j]] = a.labels[j]
    return AssocPhiElem(ordering, labels)


def block_perm(perm, sizes):
    """The permutation of sum(sizes) inputs moving block j to the slot of block perm(j)."""
    k = len(sizes)
    new_sizes = [0] * k
    for j in range(k):
        new_sizes[perm[j]] = sizes[j]
    new_off = [0] * k
    acc = 0
    for i in range(k):
        new_off[i] = acc
        acc += new_sizes[i]
    out = []
    for j in range(k):
        out.extend(new_off[perm[j]] + t for t in range(sizes[j]))
    return tuple(out)


def free_eval(G, a, words):
    """Evaluate a in the free monoid with twisted G-action; words are tuples of (label, var)."""
    out = []
    for j in a.ordering:
        out.extend(_act_word(G, a.labels[j], words[j]))
    return tuple(out)


def _act_word(G, g, w):
    letters = [(G.mul(g, h), v) for h, v in w]
    if G.parity(g) == -1:
        letters.reverse()
    return letters


def _all_ops(G, k, elements):
    for order in itertools.permutations(range(k)):
        for labels in itertools.product(elements, repeat=k):
            yield AssocPhiElem(order, labels)


class OperadReport:
    def __init__(self):
        self.violations = []
        self.checks = {}

    @property
    def ok(self):
        return not self.violations

    def identities_violated(self):
        return sorted({v["identity"] for v in self.violations})

    def to_json(self):
        return {"ok": self.ok, "checks": dict(self.checks), "violations": list(self.violations)}


def _tuples(pools, bound, samples, rng):
    """All tuples from the product of pools if it is small, else seeded samples."""
    size = 1
    for p in pools:
        size *= len(p)
    if size <= bound:
        yield from itertools.product(*pools)
    else:
        for _ in range(samples):
            yield tuple(rng.choice(p) for p in pools)


def _compositions(total, k):
    """Tuples of k nonnegative sizes summing to at most total."""
    for sizes in itertools.product(range(total + 1), repeat=k):
        if sum(sizes) <= total:
            yield sizes


def operad_axiom_check(G, max_arity, compose=operad_compose, bound=4000, samples=400, seed=0,
                       max_violations=10):
    """Unit, twist, associativity and equivariance of gamma for total arity <= max_arity.

    Every arity shape is covered; within a shape the operations are exhaustive
    when there are at most `bound` combinations and sampled otherwise.
    """
    rng = random.Random(seed)
    rep = OperadReport()
    elements = list(G.elements())
    u = unit_op(G)
    ops = {k: list(_all_ops(G, k, elements)) for k in range(max_arity + 1)}

    def check(identity, arity, ok, witness):
        rep.checks[identity] = rep.checks.get(identity, 0) + 1
        if not ok and sum(1 for v in rep.violations if v["identity"] == identity) < max_violations:
            rep.violations.append({"identity": identity, "arity": arity, "witness": witness()})

    for k in range(max_arity + 1):
        for a in ops[k]:
            check("unit", k, compose(G, u, [a]) == a, lambda: f"gamma(1; {a})")
            check("unit", k, compose(G, a, [u] * k) == a, lambda: f"gamma({a}; 1,...,1)")
    # a unary outer operation acts on the inner one by relabelling, reversing when odd
    for k in range(max_arity + 1):
        for g in elements:
            outer = AssocPhiElem((0,), (g,))
            for b in ops[k]:
                expect = AssocPhiElem(b.ordering[::-1] if G.parity(g) == -1 else b.ordering,
                                      [G.mul(g, h) for h in b.labels])
                check("twist", k, compose(G, outer, [b]) == expect, lambda: f"gamma(({G.name(g)}); {b})")
    for k in range(1, max_arity + 1):
        for sizes in _compositions(max_arity, k):
            n = sum(sizes)
            for csizes in _compositions(max_arity, n):
                pools = [ops[k]] + [ops[s] for s in sizes] + [ops[s] for s in csizes]
                for tup in _tuples(pools, bound, samples, rng):
                    a, bs, cs = tup[0], tup[1:k + 1], tup[k + 1:]
                    lhs = compose(G, compose(G, a, list(bs)), list(cs))
                    grouped, off = [], 0
                    for b in bs:
                        grouped.append(compose(G, b, list(cs[off:off + b.arity])))
                        off += b.arity
                    check("associativity", sum(csizes), lhs == compose(G, a, grouped),
                          lambda: f"a={a}, b={list(bs)}, c={list(cs)}")
            pools = [ops[k]] + [ops[s] for s in sizes]
            for tup in _tuples(pools, bound, samples, rng):
                a, bs = tup[0], tup[1:]
                for perm in itertools.permutations(range(k)):
                    inv = [0] * k
                    for j, p in enumerate(perm):
                        inv[p] = j
                    # gamma(a.s; b_s^-1(0), ..., b_s^-1(k-1)) = gamma(a; b_0, ..., b_{k-1}) . block(s)
                    left = compose(G, act(a, perm), [bs[inv[j]] for j in range(k)])
                    right = act(compose(G, a, list(bs)), block_perm(perm, [b.arity for b in bs]))
                    check("equivariance", n, left == right, lambda: f"a={a}, b={list(bs)}, perm={perm}")
    return rep


# Env(Assoc^phi) ----------------------------------------------------------------------

class EnvMorphism:
    """An active map {0..m-1} -> {0..n-1}, a linear order on each fiber and a label per element.

    orders[i] lists the fiber over i from smallest to largest; labels[e] is the label of e.
    """

    __slots__ = ("m", "n", "alpha", "orders", "labels", "name")

    def __init__(self, orders, labels, m=None, name=None):
        orders = tuple(tuple(int(e) for e in o) for o in orders)
        labels = tuple(labels)
        if m is None:
            m = len(labels)
        elems = sorted(e for o in orders for e in o)
        if elems != list(range(m)):
            raise EnvError(f"fiber orders must partition {{1..{m}}}, got {[[e + 1 for e in o] for o in orders]}")
        if len(labels) != m:
            raise EnvError("every element needs exactly one label")
        alpha = [0] * m
        for i, o in enumerate(orders):
            for e in o:
                alpha[e] = i
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", len(orders))
        object.__setattr__(self, "alpha", tuple(alpha))
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("EnvMorphism is immutable")

    def __eq__(self, other):
        return (isinstance(other, EnvMorphism) and self.m == other.m and self.orders == other.orders
                and self.labels == other.labels)

    def __hash__(self):
        return hash((self.m, self.orders, self.labels))

    def __repr__(self):
        return f"EnvMorphism({self.m}->{self.n}, orders={self.orders}, labels={self.labels})"

    def fiber_op(self, i):
        """The operation attached to fiber i, inputs numbered by ascending element."""
        fib = sorted(self.orders[i])
        pos = {e: j for j, e in enumerate(fib)}
        return AssocPhiElem([pos[e] for e in self.orders[i]], [self.labels[e] for e in fib])


def env_identity(G, n):
    return EnvMorphism([(i,) for i in range(n)], [G.identity] * n, m=n)


def env_compose(G, f2, f1):
    """f2 o f1: fibers spliced along f2's orders, a block reversed under an odd outer label."""
    if f1.n != f2.m:
        raise EnvError(f"cannot compose: {f1.n} outputs feed {f2.m} inputs")
    orders = []
    for j in range(f2.n):
        out = []
        for i in f2.orders[j]:
            inner = f1.orders[i]
            if G.parity(f2.labels[i]) == -1:
                inner = inner[::-1]
            out.extend(inner)
        orders.append(out)
    labels = [G.mul(f2.labels[f1.alpha[e]], f1.labels[e]) for e in range(f1.m)]
    name = None
    if f1.name and f2.name:
        name = f"{f2.name}∘{f1.name}"
    return EnvMorphism(orders, labels, m=f1.m, name=name)


def env_sum(f, g):
    """Block sum: g's elements and targets are shifted past f's."""
    orders = [o for o in f.orders] + [tuple(e + f.m for e in o) for o in g.orders]
    return EnvMorphism(orders, list(f.labels) + list(g.labels), m=f.m + g.m)


def all_env_morphisms(G, m, n, elements=None):
    """Every morphism m -> n (labels drawn from `elements`, default all of G)."""
    if elements is None:
        elements = list(G.elements())
    for alpha in itertools.product(range(n), repeat=m):
        fibers = [[e for e in range(m) if alpha[e] == i] for i in range(n)]
        for orders in itertools.product(*[list(itertools.permutations(f)) for f in fibers]):
            for labels in itertools.product(elements, repeat=m):
                yield EnvMorphism(orders, labels, m=m)


def count_env(m, n, k):
    """|Env(m, n)| for a label group of order k: rising factorial n(n+1)...(n+m-1) times k^m."""
    r = 1
    for i in range(m):
        r *= n + i
    return r * k ** m


def random_env(G, m, n, rng, elements=None):
    if elements is None:
        elements = list(G.elements())
    alpha = [rng.randrange(n) for _ in range(m)]
    orders = []
    for i in range(n):
        fib = [e for e in range(m) if alpha[e] == i]
        rng.shuffle(fib)
        orders.append(fib)
    return EnvMorphism(orders, [rng.choice(elements) for _ in range(m)], m=m)


# the whiskered category ---------------------------------------------------------

class WhiskeredMorphism:
    """A morphism <m> -> <n>: the unique arrow out of <0>, or phi o w with phi: [m-1] -> [n-1]."""

    __slots__ = ("m", "n", "morph")

    def __init__(self, m, n, morph=None):
        if m == 0:
            if morph is not None:
                raise EnvError("the arrow out of <0> carries no data")
        else:
            if morph is None or morph.src != m - 1 or morph.dst != n - 1:
                raise EnvError(f"a morphism <{m}> -> <{n}> needs a map [{m - 1}] -> [{n - 1}]")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "morph", morph)

    def __setattr__(self, name, value):
        raise AttributeError("WhiskeredMorphism is immutable")

    @property
    def is_initial(self):
        return self.m == 0

    def __eq__(self, other):
        return (isinstance(other, WhiskeredMorphism) and self.m == other.m and self.n == other.n
                and self.morph == other.morph)

    def __hash__(self):
        return hash((self.m, self.n, self.morph))

    def __repr__(self):
        if self.m == 0:
            return f"WhiskeredMorphism(<0> -> <{self.n}>)"
        return f"WhiskeredMorphism({self.morph.ord}, {self.morph.g.payload})"


def twisted_target(G):
    """The wreath instance receiving F: labels multiply in G^op."""
    if isinstance(G, ParityGroup):
        return csg.TwistedSymmetric(G.opposite())
    return csg.TwistedSymmetric(OppositeGroup(G))


def whiskered_identity(G, n):
    if n == 0:
        return WhiskeredMorphism(0, 0)
    from .ordmap import identity
    e = G.identity
    return WhiskeredMorphism(n, n, csg.CsgMorphism(identity(n - 1), csg.GElem(n - 1, ((e,) * n, tuple(range(n))))))


def whiskered_compose(inst, f2, f1):
    if f1.n != f2.m:
        raise EnvError(f"cannot compose <{f1.m}> -> <{f1.n}> with <{f2.m}> -> <{f2.n}>")
    if f1.m == 0:
        return WhiskeredMorphism(0, f2.n)
    return WhiskeredMorphism(f1.m, f2.n, csg.compose(inst, f2.morph, f1.morph))


def monoidal_sum(a, b):
    """<m>+<m'> = <m+m'>: block sum of the order-preserving and wreath parts."""
    m, n = a.m + b.m, a.n + b.n
    if m == 0:
        return WhiskeredMorphism(0, n)
    vals, labels, perm = [], [], []
    if a.m:
        vals.extend(a.morph.ord.values)
        labels.extend(a.morph.g.payload[0])
        perm.extend(a.morph.g.payload[1])
    if b.m:
        vals.extend(v + a.n for v in b.morph.ord.values)
        labels.extend(b.morph.g.payload[0])
        perm.extend(p + a.m for p in b.morph.g.payload[1])
    phi = OrdMap(vals, n - 1)
    return WhiskeredMorphism(m, n, csg.CsgMorphism(phi, csg.GElem(m - 1, (tuple(labels), tuple(perm)))))


def symmetry(G, m, k):
    """The block swap <m> + <k> -> <k> + <m>."""
    from .ordmap import identity
    if m + k == 0:
        return WhiskeredMorphism(0, 0)
    # elements listed by target position
    order = tuple(list(range(m, m + k)) + list(range(m)))
    return WhiskeredMorphism(m + k, m + k, csg.CsgMorphism(
        identity(m + k - 1), csg.GElem(m + k - 1, ((G.identity,) * (m + k), order))))


def F(f):
    """Env(Assoc^phi) -> the whiskered twisted symmetric category."""
    if f.m == 0:
        return WhiskeredMorphism(0, f.n)
    phi = from_fibers([len(o) for o in f.orders])
    perm = tuple(e for o in f.orders for e in o)
    return WhiskeredMorphism(f.m, f.n, csg.CsgMorphism(phi, csg.GElem(f.m - 1, (tuple(f.labels), perm))))


def F_inv(w):
    if w.m == 0:
        return EnvMorphism([()] * w.n, (), m=0)
    labels, perm = w.morph.g.payload
    orders, acc = [], 0
    for size in w.morph.ord.fibers():
        orders.append(perm[acc:acc + size])
        acc += size
    return EnvMorphism(orders, labels, m=w.m)


def from_position_notation(phi, perm_elem_to_pos, labels_by_pos):
    """Translate a factorization written as gamma o (sigma; labels listed by position),
    with sigma sending elements to positions, into a whiskered morphism."""
    m = len(perm_elem_to_pos)
    order = [0] * m
    for e, p in enumerate(perm_elem_to_pos):
        order[p] = e
    labels = [labels_by_pos[perm_elem_to_pos[e]] for e in range(m)]
    return WhiskeredMorphism(m, phi.dst + 1, csg.CsgMorphism(phi, csg.GElem(m - 1, (tuple(labels), tuple(order)))))


def to_position_notation(w):
    """(phi, sigma as element -> position, labels listed by position)."""
    labels, order = w.morph.g.payload
    pos = [0] * len(order)
    for p, e in enumerate(order):
        pos[e] = p
    return w.morph.ord, tuple(pos), tuple(labels[e] for e in order)


# literals ------------------------------------------------------------------------

class SymbolicLabels(FreeParity):
    """Free labels whose generator parities are learned from literals like g11+."""

    def __init__(self):
        super().__init__({})
        self.identity = ()

    def elements(self):
        raise EnvError("symbolic labels have no finite element list")

    def parse_label(self, token):
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)([+-])", token.strip())
        if not m and token.strip() in self.parities:
            return ((token.strip(), 1),)
        if not m:
            raise EnvError(f"symbolic label {token!r} needs a parity suffix, e.g. g11+")
        name, sign = m.group(1), 1 if m.group(2) == "+" else -1
        old = self.parities.get(name)
        if old is not None and old != sign:
            raise EnvError(f"label {name} used with both parities")
        self.parities[name] = sign
        return ((name, 1),)

    def format_label(self, g):
        return self.name(g)

    def token(self, g):
        return self.name(g) + ("+" if self.parity(g) == 1 else "-")


def _label_parser(G):
    if isinstance(G, SymbolicLabels):
        return G.parse_label, G.format_label

    def parse(token):
        t = token.strip()
        m = re.fullmatch(r"(.*?)([+-])?", t)
        name, sign = m.group(1), m.group(2)
        try:
            g = G.index(name)
        except GroupError as exc:
            raise EnvError(str(exc)) from None
        if sign is not None and G.parity(g) != (1 if sign == "+" else -1):
            raise EnvError(f"label {name} has parity {G.parity(g)}, not {sign}")
        return g

    return parse, G.name


_ENV_RE = re.compile(r"^\s*\(\s*([^;()]*?)\s*;(.*)\)\s*$", re.S)


def parse_env(text, G):
    """Parse `(psi; (5<2<4; g11+,g12-,g13+), (), (1; g31+), (6<3; g41-,g42+))`.

    Elements are 1-based; labels are listed in ascending element order.
    """
    m = _ENV_RE.match(text)
    if not m:
        raise EnvError(f"cannot parse Env literal {text!r}")
    name = m.group(1) or None
    body = m.group(2)
    fibers = re.findall(r"\(([^()]*)\)|∅", body)
    parse_label, _ = _label_parser(G)
    orders, lab_by_elem = [], {}
    for raw in re.finditer(r"\(([^()]*)\)|∅", body):
        inside = raw.group(1)
        if inside is None or not inside.strip():
            orders.append(())
            continue
        if ";" not in inside:
            raise EnvError(f"fiber {inside!r} needs 'order; labels'")
        ord_txt, lab_txt = inside.split(";", 1)
        elems = [int(t) - 1 for t in ord_txt.split("<") if t.strip()]
        labs = [s for s in lab_txt.split(",") if s.strip()]
        if len(labs) != len(elems):
            raise EnvError(f"fiber ({inside}) lists {len(elems)} elements but {len(labs)} labels")
        for e, tok in zip(sorted(elems), labs):
            lab_by_elem[e] = parse_label(tok)
        orders.append(tuple(elems))
    del fibers
    mm = len(lab_by_elem)
    try:
        labels = [lab_by_elem[e] for e in range(mm)]
    except KeyError as exc:
        raise EnvError(f"element {exc.args[0] + 1} is missing") from None
    return EnvMorphism(orders, labels, m=mm, name=name)


def format_env(f, G, name=None):
    _, fmt = _label_parser(G)
    parts = []
    for o in f.orders:
        if not o:
            parts.append("()")
            continue
        labs = ", ".join(fmt(f.labels[e]) for e in sorted(o))
        parts.append("(" + "<".join(str(e + 1) for e in o) + "; " + labs + ")")
    head = name if name is not None else (f.name or "f")
    return f"({head}; " + ", ".join(parts) + ")"


def env_from_json(data, G):
    if isinstance(data, str):
        data = json.loads(data)
    if "literal" in data:
        return parse_env(data["literal"], G)
    parse_label, _ = _label_parser(G)
    orders, lab_by_elem = [], {}
    for fib in data["fibers"]:
        elems = [int(e) - 1 for e in fib.get("order", [])]
        labs = fib.get("labels", [])
        if len(labs) != len(elems):
            raise EnvError("each fiber needs one label per element")
        for e, tok in zip(sorted(elems), labs):
            lab_by_elem[e] = parse_label(tok)
        orders.append(tuple(elems))
    mm = len(lab_by_elem)
    if sorted(lab_by_elem) != list(range(mm)):
        raise EnvError("fiber orders must partition {1..m}")
    return EnvMorphism(orders, [lab_by_elem[e] for e in range(mm)], m=mm, name=data.get("name"))


def env_to_json(f, G):
    fmt = G.token if isinstance(G, SymbolicLabels) else G.name
    return {"name": f.name, "m": f.m, "n": f.n,
            "fibers": [{"order": [e + 1 for e in o], "labels": [fmt(f.labels[e]) for e in sorted(o)]}
                       for o in f.orders]}


def format_whiskered(w, G):
    if w.m == 0:
        return f"<0> -> <{w.n}>"
    _, fmt = _label_parser(G)
    labels, order = w.morph.g.payload
    return (f"{w.morph.ord} * (" + ",".join(fmt(g) for g in labels) + ";"
            + ",".join(map(str, order)) + f")@{w.m - 1}")
