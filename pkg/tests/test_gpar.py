import itertools
import random

import pytest
from hypothesis import given, strategies as st

from csgkit import gpar
from csgkit.gpar import (FreeParity, GroupError, Perm, WreathElem, all_perms, cycle, sign, transposition,
                         wreath_elements, wreath_identity, wreath_inverse, wreath_mul)


def test_group_validation():
    with pytest.raises(GroupError):
        gpar.ParityGroup([[0, 1], [1, 1]], [1, 1])
    with pytest.raises(GroupError):
        gpar.cyclic(3, [1, -1, 1])  # not a homomorphism
    with pytest.raises(GroupError):
        gpar.ParityGroup([[0, 1], [1, 0]], [-1, -1])


def test_json_roundtrip():
    G = gpar.from_json({"family": "cyclic", "order": 4, "parity": [1, -1, 1, -1]})
    assert G.table == gpar.c4_q().table and G.parity_of == (1, -1, 1, -1)
    H = gpar.from_json(G.to_json())
    assert H.table == G.table and H.parity_of == G.parity_of
    S = gpar.symmetric_group(3)
    T = gpar.from_json({"family": "table", "elements": list(S.names), "table": [list(r) for r in S.table],
                        "parity": list(S.parity_of)})
    assert T.table == S.table
    with pytest.raises(GroupError):
        gpar.from_json({"family": "dicyclic"})


def _symbolic():
    return FreeParity({n: -1 if n.endswith("1") and n[0] == "h" else 1
                       for n in ["h11", "h31", "h32", "h33", "g11", "g12", "g13", "g31", "g41", "g42"]})


def test_wreath_mul_worked_example():
    G = _symbolic()
    g = {n: G.gen(n) for n in G.parities}
    # position notation: perms send element to position, labels listed by position
    s1 = Perm([3, 1, 5, 2, 0, 4])
    s3 = Perm([2, 4, 0, 3, 5, 1])
    s4 = Perm([5, 4, 3, 2, 1, 0])
    assert s4 * s1 == s3
    a = WreathElem([g["h11"], g["h11"], g["h33"], g["h31"], g["h31"], g["h31"]], s4)
    b = WreathElem([g["g13"], g["g11"], g["g12"], g["g31"], g["g42"], g["g41"]], s1)
    c = wreath_mul(G, a, b)
    assert c.perm == s3
    assert [G.name(x) for x in c.labels] == ["h11g41", "h11g42", "h33g31", "h31g12", "h31g11", "h31g13"]


def test_wreath_identity_and_inverse_examples():
    G = gpar.c4_q()
    rng = random.Random(0)
    for _ in range(100):
        p = list(range(4))
        rng.shuffle(p)
        a = WreathElem([rng.randrange(4) for _ in range(4)], p)
        assert wreath_mul(G, a, wreath_identity(G, 3)) == a
        assert wreath_mul(G, a, wreath_inverse(G, a)) == wreath_identity(G, 3)
    assert wreath_inverse(G, wreath_identity(G, 2)) == wreath_identity(G, 2)
    gam = Perm([2, 0, 1])
    assert wreath_inverse(G, WreathElem([0, 0, 0], gam)) == WreathElem([0, 0, 0], gam.inverse())
    swap = Perm([1, 0])
    for x in G.elements():
        assert wreath_inverse(G, WreathElem([x, 0], swap)) == WreathElem([0, G.inverse(x)], swap)


def test_wreath_inverse_bruteforce():
    # solve a.b = e by search over all of C4 wr S_2
    G = gpar.c4_q()
    elems = list(wreath_elements(G, 1))
    e = wreath_identity(G, 1)
    for a in elems:
        sols = [b for b in elems if wreath_mul(G, a, b) == e]
        assert sols == [wreath_inverse(G, a)]


def test_wreath_group_laws_exhaustive_c2():
    G = gpar.c2_id()
    for n in range(3):
        elems = list(wreath_elements(G, n))
        e = wreath_identity(G, n)
        prods = {(a, b): wreath_mul(G, a, b) for a in elems for b in elems}
        for a in elems:
            assert prods[(a, e)] == a == prods[(e, a)]
            assert prods[(a, wreath_inverse(G, a))] == e
        for a, b, c in itertools.product(elems, repeat=3):
            assert wreath_mul(G, prods[(a, b)], c) == wreath_mul(G, a, prods[(b, c)])


def test_wreath_group_laws_sampled_c4q():
    G = gpar.c4_q()
    rng = random.Random(1)
    for _ in range(10_000):
        n = rng.randrange(5)

        def r():
            p = list(range(n + 1))
            rng.shuffle(p)
            return WreathElem([rng.randrange(4) for _ in range(n + 1)], p)

        a, b, c = r(), r(), r()
        assert wreath_mul(G, wreath_mul(G, a, b), c) == wreath_mul(G, a, wreath_mul(G, b, c))


def test_wreath_mismatch():
    G = gpar.c2_id()
    with pytest.raises(GroupError):
        wreath_mul(G, wreath_identity(G, 1), wreath_identity(G, 2))
    with pytest.raises(GroupError):
        WreathElem([0, 0], [0, 1, 2])


def _inversions(p):
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def test_sign_examples():
    assert sign(Perm([0, 1, 2])) == 1
    assert sign(transposition(1, 0, 1)) == -1
    for n in range(7):
        assert sign(cycle(n)) == (-1) ** n == (-1) ** _inversions(cycle(n).images)


def test_sign_homomorphism_exhaustive():
    for n in range(5):
        perms = list(all_perms(n))
        for p in perms:
            assert sign(p) == (-1) ** _inversions(p.images)
            for q in perms:
                assert sign(p * q) == sign(p) * sign(q)


def test_symmetric_group_parity():
    S = gpar.symmetric_group(4)
    assert len(S) == 24 and sum(S.parity_of) == 0


@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_perm_composition_convention(p, q):
    P, Q = Perm(p), Perm(q)
    assert (P * Q)(0) == P(Q(0))
    assert (P * Q).inverse() == Q.inverse() * P.inverse()
