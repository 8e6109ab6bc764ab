import itertools
import random
from fractions import Fraction

import pytest

from csgkit import barhom as B, csg, gpar, twalg as T
from csgkit.barhom import BarFunctor, ChainComplex, SparseMatrix
from csgkit.ordmap import delta, sigma
from csgkit.twalg import QQ, Field

from oracles import hh_resolution, hochschild_bruteforce, linalg, reflexive_quotient

Q = T.ground_field()
H = T.quaternions()
QX2 = T.truncated_polynomial()
QC2 = T.group_algebra_with_inversion(QQ, 2)          # C2 acting trivially on Q[C2]
QC3 = T.group_algebra_with_inversion(QQ, 3)          # C2 acting by inversion
C2_EVEN = gpar.cyclic(2, [1, 1])
QC3_AUT = T.group_algebra_with_inversion(QQ, 3, C2_EVEN)  # inversion as an automorphism
QC2_PLAIN = T.monoid_algebra(QQ, T.FiniteMonoid.cyclic_group(2), gpar.trivial(), {}, name="Q[C2]")


def inst(name, **kw):
    return csg.make_instance(name, **kw)


def M(rows):
    return SparseMatrix.from_dense(QQ, [[Fraction(x) for x in r] for r in rows])


# bar matrices -----------------------------------------------------------------------

def test_covariant_coface_inserts_unit():
    for A in (Q, QX2):
        Bf = BarFunctor(inst("cyclic"), A, "covariant")
        m = Bf.matrix(csg.CsgMorphism(delta(0, 1), csg.Cyclic().identity(0)))
        d = A.dim
        expect = [[0] * d for _ in range(d * d)]
        for r in range(d):
            for u, c in enumerate(A.unit):
                expect[u * d + r][r] = c
        assert m == M(expect)


def test_identity_maps_to_identity():
    for name, A in [("cyclic", QX2), ("dihedral", QC2), ("quaternionic", H)]:
        I = inst(name)
        for var in ("covariant", "contravariant"):
            Bf = BarFunctor(I, A, var)
            for n in range(3):
                assert Bf.matrix(csg.identity_morphism(I, n)) == SparseMatrix.identity(QQ, A.dim ** (n + 1))


def test_contravariant_last_face_quaternions():
    I = inst("quaternionic")
    Bf = BarFunctor(I, H, "contravariant")
    n = 2
    got = Bf.matrix(csg.CsgMorphism(delta(n, n), I.identity(n - 1)))
    t2 = H.matrices()[2]
    cols = []
    for r0, r1, r2 in itertools.product(range(4), repeat=3):
        a = H.multiply([row[r2] for row in t2], H.basis(r0))
        col = [Fraction(0)] * 16
        for k, c in enumerate(a):
            col[k * 4 + r1] += c
        cols.append(col)
    assert got.to_dense() == [list(r) for r in zip(*cols)]


def test_contravariant_formulas_match():
    assert B.check_contravariant_formulas(inst("dihedral"), QC2, 3) == []
    assert B.check_contravariant_formulas(inst("quaternionic"), H, 2) == []


def test_contravariant_formulas_negative_control():
    def perturbed(I, f):
        vals = f.ord.values
        n = f.ord.dst
        # a pure degeneracy sigma_i is sent to delta_i instead of delta_{i+1}
        if f.src == n + 1 and f.g.payload == I.e(f.src):
            i = next(k for k in range(n + 1) if vals[k] == vals[k + 1])
            return csg.CsgMorphism(delta(i, n + 1), I.identity(n))
        return csg.duality(I, f)

    bad = B.check_contravariant_formulas(inst("dihedral"), QC2, 2, duality=perturbed)
    assert bad and all(name.startswith("s") for name in bad)
    assert "s0@0" in bad


def test_contravariant_needs_self_dual():
    with pytest.raises(B.BarError):
        BarFunctor(inst("symmetric"), Q, "contravariant")
    with pytest.raises(B.BarError):
        BarFunctor(inst("quaternionic"), QC2, "contravariant")
    with pytest.raises(B.BarError):
        BarFunctor(inst("cyclic"), Q, "sideways")


def test_dimension_bookkeeping():
    Bf = BarFunctor(inst("quaternionic"), H)
    for n in range(3):
        f = csg.CsgMorphism(sigma(0, n), inst("quaternionic").identity(n + 1))
        m = Bf.matrix(f)
        assert Bf.dim(n) == 4 ** (n + 1)
        assert (m.nrows, m.ncols) == (4 ** (n + 2), 4 ** (n + 1))


FUNCTOR_CASES = [
    ("cyclic", {}, QX2, ("covariant", "contravariant")),
    ("dihedral", {}, QC3, ("covariant", "contravariant")),
    ("quaternionic", {}, H, ("covariant", "contravariant")),
    ("reflexive", {}, QC3, ("covariant", "contravariant")),
    ("symmetric", {}, QX2, ("covariant",)),
    ("hyperoctahedral", {}, QC3, ("covariant",)),
    ("twisted-symmetric", {"group": gpar.c4_q()}, H, ("covariant",)),
    ("twisted-symmetric", {"group": gpar.c2_id()}, QC3, ("covariant",)),
    ("cyclic", {"product": C2_EVEN}, QC3_AUT, ("covariant", "contravariant")),
]


@pytest.mark.parametrize("name,kw,A,variances", FUNCTOR_CASES,
                         ids=[f"{c[0]}{'-' + str(len(c[1]['group'])) if 'group' in c[1] else ''}"
                              f"{'xC2' if 'product' in c[1] else ''}" for c in FUNCTOR_CASES])
def test_bar_functoriality(name, kw, A, variances):
    I = inst(name, **kw)
    rng = random.Random(11)
    for var in variances:
        Bf = BarFunctor(I, A, var)
        for _ in range(1000):
            a, b, c = (rng.randrange(4) for _ in range(3))
            f1 = csg.random_morphism(I, a, b, rng)
            f2 = csg.random_morphism(I, b, c, rng)
            lhs = Bf.matrix(csg.compose(I, f2, f1))
            m1, m2 = Bf.matrix(f1), Bf.matrix(f2)
            rhs = m2 @ m1 if var == "covariant" else m1 @ m2
            assert lhs == rhs, (var, f2, f1)


def _simplicial_identities(top):
    """Pairs of composable chains (each a list applied right to left) equal in Delta, objects <= top."""
    out = []
    for n in range(1, top):
        # delta^j delta^i = delta^i delta^{j-1}, i < j, [n-1] -> [n+1]
        for j in range(n + 2):
            for i in range(j):
                out.append(([delta(j, n + 1), delta(i, n)], [delta(i, n + 1), delta(j - 1, n)]))
    for n in range(0, top - 1):
        # sigma^j sigma^i = sigma^i sigma^{j+1}, i <= j, [n+2] -> [n]
        for j in range(n + 1):
            for i in range(j + 1):
                out.append(([sigma(j, n), sigma(i, n + 1)], [sigma(i, n), sigma(j + 1, n + 1)]))
    for n in range(0, top):
        # sigma^j delta^i : [n] -> [n+1] -> [n]
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = [sigma(j, n), delta(i, n + 1)]
                if i < j:
                    rhs = [delta(i, n), sigma(j - 1, n - 1)]
                elif i in (j, j + 1):
                    rhs = []
                else:
                    rhs = [delta(i - 1, n), sigma(j, n - 1)]
                out.append((lhs, rhs))
    return out


def test_identity_list_holds_in_delta():
    from csgkit.ordmap import compose, identity
    for lhs, rhs in _simplicial_identities(3):
        l = compose(*lhs)
        r = compose(*rhs) if len(rhs) == 2 else identity(l.dst)
        assert l == r


@pytest.mark.parametrize("name,A", [("cyclic", QX2), ("dihedral", QC3), ("quaternionic", H)])
def test_simplicial_identities_among_matrices(name, A):
    I = inst(name)
    for var in ("covariant", "contravariant"):
        Bf = BarFunctor(I, A, var)

        def chain(maps, n):
            m = SparseMatrix.identity(QQ, A.dim ** (n + 1))
            for phi in reversed(maps):     # rightmost applied first
                f = Bf.matrix(csg.CsgMorphism(phi, I.identity(phi.src)))
                m = f @ m if var == "covariant" else m @ f
            return m

        for lhs, rhs in _simplicial_identities(3):
            n = lhs[-1].src
            assert chain(lhs, n) == chain(rhs, n), (var, lhs, rhs)


# complexes ----------------------------------------------------------------------------

def test_moore_complex_of_ground_field():
    C = B.moore_complex(BarFunctor(inst("cyclic"), Q), 5)
    assert C.dims == [1] * 6
    for n in range(1, 6):
        assert C.diffs[n].is_zero() == (n % 2 == 1)
    assert B.homology_of_complex(C)[:5] == [1, 0, 0, 0, 0]


def test_moore_complex_quaternions_d_squared():
    C = B.moore_complex(BarFunctor(inst("quaternionic"), H), 4)
    assert C.dims == [4, 16, 64, 256, 1024]
    for n in range(2, 5):
        assert (C.diffs[n - 1] @ C.diffs[n]).is_zero()


def test_normalized_matches_unnormalized():
    for name, A in [("cyclic", QC2_PLAIN), ("dihedral", QC2), ("cyclic", QX2)]:
        I = inst(name)
        assert B.hochschild_homology(I, A, 3) == B.hochschild_homology(I, A, 3, normalized=True)


def test_chain_complex_rejects_bad_input():
    with pytest.raises(B.ComplexError):
        ChainComplex(QQ, [1, 1, 1], [None, M([[1]]), M([[1]])])
    with pytest.raises(B.ComplexError):
        ChainComplex(QQ, [1, 2], [None, M([[1]])])


def test_hochschild_values_against_oracles():
    cyc = inst("cyclic")
    assert B.hochschild_homology(cyc, Q, 4) == [1, 0, 0, 0, 0]
    assert B.hochschild_homology(cyc, QX2, 4) == hh_resolution.hh(4) == [2, 1, 1, 1, 1]
    assert B.hochschild_homology(cyc, QC2_PLAIN, 3) == \
        hochschild_bruteforce.hh(hochschild_bruteforce.group_algebra_c2(), 3) == [2, 0, 0, 0]
    assert B.hochschild_homology(inst("dihedral"), QC2, 3) == [2, 0, 0, 0]
    # the quaternionic last face carries t^2, so H_0 is H / span(ab - t^2(b) a), spanned by k
    t2 = [[int(x) for x in row] for row in H.matrices()[2]]
    assert B.hochschild_homology(inst("quaternionic"), H, 2) == \
        hochschild_bruteforce.hh(H.mult, 2, twist=t2) == [1, 0, 0]


def test_cyclic_coinvariants():
    C = B.coinvariant_complex(inst("cyclic"), Q, 4)
    assert C.dims == [1, 0, 1, 0, 1]
    assert B.positive_homology(inst("cyclic"), Q, 4) == [1, 0, 1, 0, 1]


def test_empty_relations_reduce_to_moore():
    # with no group acting, the coinvariant quotient is the Moore complex itself
    C = B.moore_complex(BarFunctor(inst("cyclic"), QX2), 4)
    Qt = B.quotient_complex(C, [[] for _ in C.dims])
    assert Qt.dims == C.dims
    assert B.homology_of_complex(Qt) == B.homology_of_complex(C)


def test_symmetric_sign_coinvariants_vanish():
    assert B.positive_homology(inst("symmetric"), Q, 4) == [1, 0, 0, 0, 0]


def test_dihedral_descent_through_six():
    C = B.coinvariant_complex(inst("dihedral"), Q, 6)
    assert len(C.dims) == 7


def test_degree_zero_of_ground_field_is_one():
    cases = [("cyclic", {}, Q), ("dihedral", {}, Q), ("quaternionic", {}, Q), ("reflexive", {}, Q),
             ("symmetric", {}, Q), ("hyperoctahedral", {}, Q), ("twisted-symmetric", {"group": gpar.c2_id()}, Q),
             ("cyclic", {"product": C2_EVEN}, T.ground_field(QQ, C2_EVEN))]
    for name, kw, A in cases:
        assert B.positive_homology(inst(name, **kw), A, 1)[0] == 1, name


def test_group_order_divisible_by_p_rejected():
    F3 = Field(3)
    with pytest.raises(B.GroupOrderError):
        B.coinvariant_complex(inst("cyclic"), T.ground_field(F3), 2)
    F5 = T.ground_field(Field(5))
    assert B.positive_homology(inst("cyclic"), F5, 2) == [1, 0, 1]


def test_descent_failure_is_typed():
    # span(e) in degree 1 is not carried into the (empty) relations of degree 0 by d = id
    C = ChainComplex(QQ, [1, 1], [None, M([[1]])])
    with pytest.raises(B.DescentError):
        B.quotient_complex(C, [[], [{0: Fraction(1)}]])
    Qt = B.quotient_complex(C, [[{0: Fraction(1)}], [{0: Fraction(1)}]])
    assert Qt.dims == [0, 0]


def test_reflexive_against_quotient_oracle():
    R = inst("reflexive")
    assert B.positive_homology(R, QC2, 3) == \
        reflexive_quotient.positive(hochschild_bruteforce.group_algebra_c2(), [[1, 0], [0, 1]], 3)
    inv3 = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    assert B.positive_homology(R, QC3, 3) == reflexive_quotient.positive(QC3.mult, inv3, 3)


def test_connes_oracle_agreement():
    assert B.connes_oracle(Q, 4) == [1, 0, 1, 0, 1]
    assert B.connes_oracle(QC2_PLAIN, 0) == [2]
    for A in (Q, QC2_PLAIN, QX2):
        assert B.positive_homology(inst("cyclic"), A, 4) == B.connes_oracle(A, 4)


def test_homology_of_complex_small():
    assert B.homology_of_complex(ChainComplex(QQ, [3, 0, 0], [None, SparseMatrix(QQ, 3, 0), SparseMatrix(QQ, 0, 0)])) == [3, 0, 0]
    assert B.homology_of_complex(ChainComplex(QQ, [1, 1], [None, M([[1]])])) == [0, 0]


def test_rank_nullity_sandwich():
    rng = random.Random(3)
    for _ in range(50):
        r = rng.randrange(0, 5)
        # d1: 4 -> 6 of rank r built as a product, d2 chosen with d1 d2 = 0
        P = [[Fraction(rng.randint(-3, 3)) for _ in range(r)] for _ in range(6)]
        Qm = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(r)]
        d1 = linalg.matmul(P, Qm) if r else [[Fraction(0)] * 4 for _ in range(6)]
        C = ChainComplex(QQ, [6, 4], [None, M(d1)])
        rk = linalg.rank(d1)
        assert B.rank(M(d1)) == rk
        assert B.homology_of_complex(C) == [6 - rk, 4 - rk]
