"""Order-preserving maps between finite ordinals [n] = {0, ..., n}."""

import itertools
import re
from math import comb


class OrdMapError(ValueError):
    """Raised for malformed maps or mismatched endpoints."""


class OrdMap:
    """An order-preserving map [src] -> [dst] stored by its values."""

    __slots__ = ("src", "dst", "values")

    def __init__(self, values, dst):
        values = tuple(int(v) for v in values)
        if not values:
            raise OrdMapError("an ordinal map needs a nonempty domain")
        if dst < 0:
            raise OrdMapError("negative codomain")
        for a, b in zip(values, values[1:]):
            if a > b:
                raise OrdMapError(f"values not weakly increasing: {list(values)}")
        if values[0] < 0 or values[-1] > dst:
            raise OrdMapError(f"values out of range for [{dst}]: {list(values)}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "src", len(values) - 1)
        object.__setattr__(self, "dst", int(dst))

    def __setattr__(self, name, value):
        raise AttributeError("OrdMap is immutable")

    def __eq__(self, other):
        return isinstance(other, OrdMap) and self.dst == other.dst and self.values == other.values

    def __hash__(self):
        return hash((self.values, self.dst))

    def __call__(self, i):
        return self.values[i]

    def __repr__(self):
        return f"OrdMap({list(self.values)}@{self.dst})"

    def __str__(self):
        return "[" + ",".join(map(str, self.values)) + f"]@{self.dst}"

    def fibers(self):
        """Sizes |f^-1(i)| for i = 0..dst."""
        sizes = [0] * (self.dst + 1)
        for v in self.values:
            sizes[v] += 1
        return sizes

    def is_identity(self):
        return self.src == self.dst and self.values == tuple(range(self.src + 1))

    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    def is_surjective(self):
        return len(set(self.values)) == self.dst + 1


def identity(n):
    return OrdMap(range(n + 1), n)


def delta(i, n):
    """Coface delta_i : [n-1] -> [n] skipping i."""
    if n < 1 or not 0 <= i <= n:
        raise OrdMapError(f"delta_{i} into [{n}] does not exist")
    return OrdMap([j if j < i else j + 1 for j in range(n)], n)


def sigma(i, n):
    """Codegeneracy sigma_i : [n+1] -> [n] hitting i twice."""
    if n < 0 or not 0 <= i <= n:
        raise OrdMapError(f"sigma_{i} into [{n}] does not exist")
    return OrdMap([j if j <= i else j - 1 for j in range(n + 2)], n)


def compose(f, g):
    """f o g."""
    if g.dst != f.src:
        raise OrdMapError(f"cannot compose {f!r} after {g!r}")
    fv = f.values
    return OrdMap([fv[v] for v in g.values], f.dst)


def factorize(f):
    """Canonical generator decomposition of f.

    Returns (faces, degeneracies), both strictly increasing, with
    f = d_{i_r} o ... o d_{i_1} o s_{j_1} o ... o s_{j_s}.
    """
    image = set(f.values)
    faces = [i for i in range(f.dst + 1) if i not in image]
    degens = [j for j in range(f.src) if f.values[j] == f.values[j + 1]]
    return faces, degens


def from_generators(faces, degens, src):
    """Inverse of factorize for a map with domain [src]."""
    m = src
    out = identity(src)
    for j in reversed(degens):
        s = sigma(j, m - 1)
        out = compose(s, out)
        m -= 1
    for i in faces:
        d = delta(i, m + 1)
        out = compose(d, out)
        m += 1
    return out


def from_fibers(sizes):
    """The unique order-preserving map whose i-th fiber has sizes[i] elements."""
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 0 for s in sizes):
        raise OrdMapError("fiber sizes must be a nonempty list of nonnegative integers")
    if sum(sizes) == 0:
        raise OrdMapError("empty domain is not an object of the simplex category")
    values = []
    for i, s in enumerate(sizes):
        values.extend([i] * s)
    return OrdMap(values, len(sizes) - 1)


def all_maps(m, n):
    """Every order-preserving map [m] -> [n], in lexicographic order."""
    for vals in itertools.combinations_with_replacement(range(n + 1), m + 1):
        yield OrdMap(vals, n)


def count_maps(m, n):
    return comb(m + n + 1, m + 1)


_GEN = re.compile(r"^\s*([ds])(\d+)(?:@(\d+))?\s*$")
_RAW = re.compile(r"^\s*\[([\d,\s]*)\]\s*@\s*(\d+)\s*$")


def parse(text, level=None):
    """Parse "d0@2", "s1@3" or "[0,0,2]@2".

    For bare generators ("d1", "s0") the codomain level must be passed in.
    """
    m = _RAW.match(text)
    if m:
        vals = [int(v) for v in m.group(1).split(",") if v.strip()]
        return OrdMap(vals, int(m.group(2)))
    m = _GEN.match(text)
    if not m:
        raise OrdMapError(f"cannot parse ordinal map literal {text!r}")
    kind, idx, lvl = m.group(1), int(m.group(2)), m.group(3)
    if lvl is None:
        if level is None:
            raise OrdMapError(f"{text!r} needs a level, e.g. {text}@2")
        lvl = level
    lvl = int(lvl)
    return delta(idx, lvl) if kind == "d" else sigma(idx, lvl)
