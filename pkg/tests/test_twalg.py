import json
import os
import random
from fractions import Fraction

import pytest

from csgkit import envelope as E, gpar, twalg as T
from csgkit.twalg import QQ, Field

from conftest import SAMPLES


def vec(*xs):
    return [Fraction(x) for x in xs]


def test_quaternion_products():
    H = T.quaternions()
    one, i, j, k = (H.basis(n) for n in range(4))
    assert H.multiply(i, j) == k
    assert H.multiply(j, i) == vec(0, 0, 0, -1)
    assert H.multiply(i, i) == vec(-1, 0, 0, 0)
    assert H.multiply(j, k) == i and H.multiply(k, i) == j


def test_quaternions_validate():
    H = T.quaternions()
    rep = T.validate(H, T.QUATERNION_NAMES)
    assert rep.ok, rep.findings
    checks = T.element_checks(H)
    assert checks["t"] == {"order": 4, "homomorphism": False, "antihomomorphism": True, "is_identity": False}
    assert checks["t^2"]["order"] == 2 and checks["t^2"]["homomorphism"]
    assert checks["t^3"]["antihomomorphism"] and not checks["t^3"]["homomorphism"]
    # t acts as i -> j, j -> -i, k -> -k
    assert H.act(1, H.basis(1)) == H.basis(2)
    assert H.act(1, H.basis(2)) == vec(0, -1, 0, 0)
    assert H.act(1, H.basis(3)) == vec(0, 0, 0, -1)


def test_quaternions_with_even_generator_rejected():
    H = T.quaternions()
    G = gpar.cyclic(4, [1, 1, 1, 1])
    bad = T.TwistedAlgebra(QQ, 4, H.unit, H.mult, G, {1: (1, H.actions[1][1])})
    rep = T.validate(bad, T.QUATERNION_NAMES)
    assert rep.checks_failed() == ["homomorphism"]
    assert "(i,j)" in rep.findings[0].witness


def test_parity_mismatch_reported():
    H = T.quaternions()
    bad = T.TwistedAlgebra(QQ, 4, H.unit, H.mult, H.group, {1: (1, H.actions[1][1])})
    assert "parity" in T.validate(bad).checks_failed()


def test_wrong_relation_reported():
    # the identity matrix for t in C4 with an order-4 t would be fine; use an order-2 matrix in C3
    G = gpar.cyclic(3, [1, 1, 1])
    swap = [[0, 1], [1, 0]]
    A = T.TwistedAlgebra(QQ, 2, [1, 1], [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], G, {1: (1, swap)})
    assert "relations" in T.validate(A).checks_failed()


def test_non_associative_detected():
    mult = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    A = T.TwistedAlgebra(QQ, 2, [1, 0], mult, gpar.trivial(), {})
    assert T.validate(A).ok
    mult[1][1] = [0, 0]
    mult[0][1] = [0, 0]
    B = T.TwistedAlgebra(QQ, 2, [1, 0], mult, gpar.trivial(), {})
    assert "unit" in T.validate(B).checks_failed()


def test_small_examples():
    Q = T.ground_field()
    assert T.validate(Q).ok and Q.dim == 1
    QC2 = T.group_algebra_with_inversion(QQ, 2)
    assert T.validate(QC2).ok
    assert T.element_checks(QC2)["t"]["is_identity"]
    QC3 = T.group_algebra_with_inversion(QQ, 3)
    assert T.validate(QC3).ok
    assert QC3.act(1, QC3.basis(1)) == QC3.basis(2)
    F5C4 = T.group_algebra_with_inversion(Field(5), 4, gpar.c4_q())
    assert T.validate(F5C4).ok
    trunc = T.truncated_polynomial(QQ, 3, gpar.c2_id())
    assert T.validate(trunc).ok


def test_monoid_algebra_rejects_non_anti_map():
    M = T.FiniteMonoid([[0, 1, 2], [1, 2, 2], [2, 2, 2]])
    assert M.k == 3
    with pytest.raises(T.AlgebraError):
        T.monoid_algebra(QQ, M, gpar.c2_id(), {1: [0, 2, 1]})
    with pytest.raises(T.AlgebraError):
        T.FiniteMonoid([[0, 1, 2], [1, 2, 0], [2, 1, 2]])
    with pytest.raises(T.AlgebraError):
        T.FiniteMonoid([[1, 0], [0, 1]])


def test_trivial_monoid_gives_ground_field():
    M = T.FiniteMonoid([[0]])
    A = T.monoid_algebra(QQ, M, gpar.c2_id(), {1: [0]})
    Q = T.ground_field(QQ, gpar.c2_id())
    assert A.mult == Q.mult and A.unit == Q.unit and A.matrices() == Q.matrices()


def test_field_arithmetic():
    F5 = Field(5)
    assert F5.coerce("1/2") == 3 and F5.inv(2) == 3 and F5.name == "F5"
    assert QQ.fmt(Fraction(-3, 4)) == "-3/4"
    with pytest.raises(T.AlgebraError):
        Field(6)
    with pytest.raises(ZeroDivisionError):
        F5.inv(0)


def test_operad_eval_multiplication():
    H = T.quaternions()
    i, j = H.basis(1), H.basis(2)
    mu = E.AssocPhiElem((0, 1), (0, 0))
    assert T.operad_eval(H, mu, [i, j]) == H.multiply(i, j)
    swapped = E.AssocPhiElem((1, 0), (0, 0))
    assert T.operad_eval(H, swapped, [i, j]) == H.multiply(j, i)
    assert T.operad_eval(H, E.AssocPhiElem((), ()), []) == H.unit
    with pytest.raises(T.AlgebraError):
        T.operad_eval(H, mu, [i])


def test_operad_eval_twist_compatibility():
    # an odd label on the unary op reverses products: t(xy) = t(y) t(x)
    H = T.quaternions()
    rng = random.Random(1)
    for _ in range(50):
        x = [Fraction(rng.randint(-3, 3)) for _ in range(4)]
        y = [Fraction(rng.randint(-3, 3)) for _ in range(4)]
        lhs = T.operad_eval(H, E.AssocPhiElem((0,), (1,)), [H.multiply(x, y)])
        rhs = T.operad_eval(H, E.AssocPhiElem((1, 0), (1, 1)), [x, y])
        assert lhs == rhs


def test_operad_eval_respects_composition():
    H = T.quaternions()
    G = H.group
    el = list(G.elements())
    rng = random.Random(2)
    ops = {k: list(E._all_ops(G, k, el)) for k in range(4)}
    for k in range(1, 4):
        for a in ops[k]:
            for _ in range(3):
                sizes = [rng.randrange(0, 4 - k + 1) for _ in range(k)]
                while sum(sizes) > 3:
                    sizes[rng.randrange(k)] = 0
                bs = [rng.choice(ops[s]) for s in sizes]
                args = [[Fraction(rng.randint(-2, 2)) for _ in range(4)] for _ in range(sum(sizes))]
                lhs = T.operad_eval(H, E.operad_compose(G, a, bs), args)
                inner, pos = [], 0
                for b in bs:
                    inner.append(T.operad_eval(H, b, args[pos:pos + b.arity]))
                    pos += b.arity
                assert lhs == T.operad_eval(H, a, inner)


def test_json_roundtrip_and_samples():
    for fn in ["Q.json", "H.json", "QC2.json", "Qx2.json", "F5C4.json"]:
        A = T.load_algebra(os.path.join(SAMPLES, fn))
        assert T.validate(A).ok, fn
        B = T.algebra_from_json(json.dumps(A.to_json()))
        assert B.to_json() == A.to_json()
    H = T.load_algebra(os.path.join(SAMPLES, "H.json"))
    assert H.mult == T.quaternions().mult
    with pytest.raises(T.AlgebraError):
        T.algebra_from_json({"dim": 1})


def test_tensor_basis():
    assert T.tensor_basis(2, 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(T.tensor_basis(4, 2)) == 64
