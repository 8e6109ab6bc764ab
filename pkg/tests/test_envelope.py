import itertools
import json
import os
import random

import pytest

from csgkit import csg, envelope as E, gpar
from csgkit.envelope import AssocPhiElem, EnvMorphism
from csgkit.ordmap import OrdMap, count_maps, delta, from_fibers

from conftest import SAMPLES
from oracles import splice

WORKED = "(phi∘psi; (3<6; h11g41, h11g42), (), (1<4<2<5; h33g31, h31g11, h31g12, h31g13))"
PHI = "(phi; (4; h11-), (), (3<1<2; h31-,h32-,h33+))"
PSI = "(psi; (5<2<4; g11+,g12-,g13+), (), (1; g31+), (6<3; g41-,g42+))"


# operad ------------------------------------------------------------------------

def test_operad_unit_laws():
    G = gpar.c4_q()
    u = E.unit_op(G)
    for k in range(4):
        for a in E._all_ops(G, k, list(G.elements())):
            assert E.operad_compose(G, u, [a]) == a
            assert E.operad_compose(G, a, [u] * k) == a


def test_operad_twist_example():
    G = gpar.c2_id()
    g = 1
    out = E.operad_compose(G, AssocPhiElem((0,), (g,)), [AssocPhiElem((0, 1), (0, 0))])
    assert out == AssocPhiElem((1, 0), (g, g))


def test_operad_arity_mismatch():
    G = gpar.trivial()
    with pytest.raises(E.EnvError):
        E.operad_compose(G, AssocPhiElem((0, 1), (0, 0)), [E.unit_op(G)])


def test_operad_checker_trivial_and_c2():
    assert E.operad_axiom_check(gpar.trivial(), 3).ok
    rep = E.operad_axiom_check(gpar.c2_id(), 3)
    assert rep.ok and rep.checks["equivariance"] > 0 and rep.checks["associativity"] > 0


def _no_reversal(G, outer, inners):
    offsets, acc = [], 0
    for b in inners:
        offsets.append(acc)
        acc += b.arity
    labels = [G.mul(g, h) for g, b in zip(outer.labels, inners) for h in b.labels]
    ordering = [offsets[i] + j for i in outer.ordering for j in inners[i].ordering]
    return AssocPhiElem(ordering, labels)


def test_operad_checker_negative_control():
    rep = E.operad_axiom_check(gpar.c2_id(), 2, compose=_no_reversal)
    assert not rep.ok
    twist = [v for v in rep.violations if v["identity"] == "twist"]
    assert twist and twist[0]["arity"] == 2


def test_equivariance_exhaustive_small():
    # gamma(a.s; b_{s^-1(0)}, ...) = gamma(a; b) . block(s), all a, b of arity <= 2 over (C2, id)
    G = gpar.c2_id()
    el = list(G.elements())
    ops = {k: list(E._all_ops(G, k, el)) for k in range(3)}
    for k in range(1, 3):
        for a in ops[k]:
            pool = [b for s in range(3) for b in ops[s]]
            for bs in itertools.product(pool, repeat=k):
                for perm in itertools.permutations(range(k)):
                    inv = [perm.index(j) for j in range(k)]
                    left = E.operad_compose(G, E.act(a, perm), [bs[inv[j]] for j in range(k)])
                    right = E.act(E.operad_compose(G, a, list(bs)), E.block_perm(perm, [b.arity for b in bs]))
                    assert left == right


# Env composition ---------------------------------------------------------------

def test_worked_composite_literal():
    G = E.SymbolicLabels()
    phi, psi = E.parse_env(PHI, G), E.parse_env(PSI, G)
    assert E.format_env(E.env_compose(G, phi, psi), G) == WORKED


def test_worked_composite_from_json():
    G = E.SymbolicLabels()
    with open(os.path.join(SAMPLES, "phi.json")) as fh:
        phi = E.env_from_json(json.load(fh), G)
    with open(os.path.join(SAMPLES, "psi.json")) as fh:
        psi = E.env_from_json(json.load(fh), G)
    assert E.format_env(E.env_compose(G, phi, psi), G) == WORKED


def test_env_literal_roundtrip_and_errors():
    G = E.SymbolicLabels()
    psi = E.parse_env(PSI, G)
    assert E.format_env(psi, G) == "(psi; (5<2<4; g11, g12, g13), (), (1; g31), (6<3; g41, g42))"
    assert E.env_from_json(E.env_to_json(psi, G), G) == psi
    for bad in ["(f; (1<2; a+))", "(f; (1; a+), (1; b+))", "(f; (2; a+))", "(f; (1; a))", "nonsense"]:
        with pytest.raises(E.EnvError):
            E.parse_env(bad, E.SymbolicLabels())


def test_env_identity():
    G = gpar.c4_q()
    rng = random.Random(0)
    for _ in range(200):
        f = E.random_env(G, rng.randrange(5), rng.randrange(1, 5), rng)
        assert E.env_compose(G, E.env_identity(G, f.n), f) == f
        assert E.env_compose(G, f, E.env_identity(G, f.m)) == f


def test_env_compose_size_mismatch():
    G = gpar.trivial()
    with pytest.raises(E.EnvError):
        E.env_compose(G, E.env_identity(G, 2), E.env_identity(G, 3))


def test_even_labels_match_splice_oracle():
    G = gpar.trivial()
    for m in range(5):
        for n in range(1, 5):
            for p in range(1, 5):
                for f1 in E.all_env_morphisms(G, m, n):
                    for f2 in itertools.islice(E.all_env_morphisms(G, n, p), 0, None, 7):
                        h = E.env_compose(G, f2, f1)
                        alpha, orders = splice.compose((list(f2.alpha), [list(o) for o in f2.orders]),
                                                       (list(f1.alpha), [list(o) for o in f1.orders]))
                        assert list(h.alpha) == alpha and [list(o) for o in h.orders] == orders


def test_env_compose_associative_sampled():
    G = gpar.c4_q()
    rng = random.Random(4)
    for _ in range(10_000):
        a, b, c = rng.randrange(5), rng.randrange(1, 5), rng.randrange(1, 5)
        d = rng.randrange(1, 5)
        f, g, h = E.random_env(G, a, b, rng), E.random_env(G, b, c, rng), E.random_env(G, c, d, rng)
        assert E.env_compose(G, h, E.env_compose(G, g, f)) == E.env_compose(G, E.env_compose(G, h, g), f)


def test_hom_set_cardinalities():
    G = gpar.c2_id()
    for m in range(1, 5):
        for n in range(1, 5):
            wreath = len(G) ** m
            for i in range(2, m + 1):
                wreath *= i
            assert E.count_env(m, n, len(G)) == count_maps(m - 1, n - 1) * wreath
            if m <= 3 and n <= 3:
                assert sum(1 for _ in E.all_env_morphisms(G, m, n)) == E.count_env(m, n, len(G))


# the isomorphism F -----------------------------------------------------------------

def test_F_worked_examples():
    G = E.SymbolicLabels()
    phi, psi = E.parse_env(PHI, G), E.parse_env(PSI, G)
    o, pos, labels = E.to_position_notation(E.F(psi))
    assert o == from_fibers([3, 0, 1, 2])
    assert [p + 1 for p in pos] == [4, 2, 6, 3, 1, 5]
    assert [G.name(x) for x in labels] == ["g13", "g11", "g12", "g31", "g42", "g41"]
    inst = E.twisted_target(G)
    comp = E.whiskered_compose(inst, E.F(phi), E.F(psi))
    assert comp == E.F(E.env_compose(G, phi, psi))
    o, pos, labels = E.to_position_notation(comp)
    assert o == OrdMap([0, 0, 2, 2, 2, 2], 2)
    assert [p + 1 for p in pos] == [3, 5, 1, 4, 6, 2]
    assert [G.name(x) for x in labels] == ["h11g41", "h11g42", "h33g31", "h31g12", "h31g11", "h31g13"]
    back = E.from_position_notation(o, pos, labels)
    assert back == comp


def test_F_identity_and_initial():
    G = gpar.c4_q()
    for n in range(5):
        assert E.F(E.env_identity(G, n)) == E.whiskered_identity(G, n)
    w = E.F(EnvMorphism([(), ()], (), m=0))
    assert w.is_initial and w.n == 2


def test_F_inverse_exhaustive_shapes():
    G = gpar.c4_q()
    rng = random.Random(6)
    for m in range(5):
        for n in range(1, 5):
            # every active map and fibre ordering, labels sampled
            for f in E.all_env_morphisms(gpar.trivial(), m, n):
                labels = [rng.randrange(4) for _ in range(m)]
                g = EnvMorphism(f.orders, labels, m=m)
                w = E.F(g)
                assert E.F_inv(w) == g
                assert E.F(E.F_inv(w)) == w


def test_F_inv_F_on_whiskered_side():
    G = gpar.c4_q()
    inst = E.twisted_target(G)
    for m in range(1, 4):
        for n in range(1, 4):
            for f in csg.all_morphisms(inst, m - 1, n - 1):
                w = E.WhiskeredMorphism(m, n, f)
                assert E.F(E.F_inv(w)) == w


def test_F_functorial_op_target_needed():
    # over a non-abelian group the target must multiply labels in the opposite group
    G = gpar.symmetric_group(3)
    inst = E.twisted_target(G)
    rng = random.Random(8)
    for _ in range(2000):
        a, b, c = rng.randrange(1, 5), rng.randrange(1, 5), rng.randrange(1, 5)
        f, g = E.random_env(G, a, b, rng), E.random_env(G, b, c, rng)
        assert E.F(E.env_compose(G, g, f)) == E.whiskered_compose(inst, E.F(g), E.F(f))


# monoidal structure ------------------------------------------------------------------

def test_monoidal_examples():
    G = gpar.c4_q()
    d0 = E.WhiskeredMorphism(1, 2, csg.CsgMorphism(delta(0, 1), csg.GElem(0, ((0,), (0,)))))
    s = E.monoidal_sum(d0, d0)
    assert s.m == 2 and s.n == 4 and s.morph.ord == OrdMap([1, 3], 3)
    unit = E.whiskered_identity(G, 0)
    assert E.monoidal_sum(d0, unit) == d0 == E.monoidal_sum(unit, d0)


def test_monoidal_associative_and_F_strong():
    G = gpar.c4_q()
    rng = random.Random(9)
    for _ in range(2000):
        fs = [E.random_env(G, rng.randrange(5), rng.randrange(1, 5), rng) for _ in range(3)]
        ws = [E.F(f) for f in fs]
        assert E.F(E.env_sum(fs[0], fs[1])) == E.monoidal_sum(ws[0], ws[1])
        assert E.monoidal_sum(E.monoidal_sum(ws[0], ws[1]), ws[2]) == \
            E.monoidal_sum(ws[0], E.monoidal_sum(ws[1], ws[2]))


def test_symmetry_is_natural_block_swap():
    G = gpar.c4_q()
    inst = E.twisted_target(G)
    rng = random.Random(10)
    for _ in range(300):
        f = E.F(E.random_env(G, rng.randrange(1, 4), rng.randrange(1, 4), rng))
        g = E.F(E.random_env(G, rng.randrange(1, 4), rng.randrange(1, 4), rng))
        lhs = E.whiskered_compose(inst, E.symmetry(G, f.n, g.n), E.monoidal_sum(f, g))
        rhs = E.whiskered_compose(inst, E.monoidal_sum(g, f), E.symmetry(G, f.m, g.m))
        assert lhs == rhs
