from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from corack.algebra import AlgebraHom, Presentation, identity_hom
from corack.corack import (
    conj_corack,
    corack_hom_verify,
    corack_predicates,
    ol_corack,
    stock_hopf,
    trivial_corack,
)
from corack.field import GF, QQ
from corack.finite import conj_of_group, dual_corack, stock_group, trivial_quandle
from corack.leibniz import check_identities, lb_bracket
from corack.linalg import rank
from corack.tangent import (
    Derivation,
    TangentError,
    ad_via_dual,
    bracket,
    coordinates,
    derivation_basis,
    derive,
    derive_partials,
    differential,
    differential_matrix,
    is_derivation,
    jacobi_terms,
    l_sharp,
    lift_point,
    psi,
    structure_constants,
)
from oracles import commutator_constants, sl2_constants


def stock():
    return {
        "Gm": conj_corack(stock_hopf("gm")),
        "Ga": conj_corack(stock_hopf("ga")),
        "Heis": conj_corack(stock_hopf("heis")),
        "HeisF2": conj_corack(stock_hopf("heis", field=GF(2))),
        "GL1": conj_corack(stock_hopf("gl", 1)),
        "GL2": conj_corack(stock_hopf("gl", 2)),
        "SL2": conj_corack(stock_hopf("sl", 2)),
        "OL1": ol_corack(1),
        "OL2": ol_corack(2),
        "trivial": trivial_corack(Presentation(QQ, ["x", "y"], ["x*y - x^2"], None, {"x": 0, "y": 0})),
    }


STOCK = stock()


def basis_by_label(C):
    return {D.label: D for D in derivation_basis(C)}


# -- derivation bases --------------------------------------------------------------------


def test_gl2_basis_is_dual_to_generators():
    C = STOCK["GL2"]
    B = derivation_basis(C)
    assert [D.label for D in B] == ["d_s11", "d_s12", "d_s21", "d_s22"]
    for i, D in enumerate(B):
        assert D.values == tuple(int(i == k) for k in range(4))


def test_sl2_basis_is_traceless():
    B = derivation_basis(STOCK["SL2"])
    assert len(B) == 3
    assert all(D["s11"] + D["s22"] == 0 for D in B)
    assert B[0].values == (1, 0, 0, -1)


@pytest.mark.parametrize("name", ["s3", "c2", "q8"])
def test_finite_duals_have_no_tangent_space(name):
    assert derivation_basis(dual_corack(conj_of_group(stock_group(name)))) == []
    L = structure_constants(dual_corack(conj_of_group(stock_group(name))))
    assert L.dim == 0


def test_relations_constrain_derivations():
    A = Presentation(QQ, ["x", "y"], ["y - x^2 - 2*x"], None, {"x": 0, "y": 0})
    B = derivation_basis(A)
    assert len(B) == 1 and B[0].values == (1, 2)
    assert is_derivation(B[0])
    assert not is_derivation(Derivation.from_map(A, {"x": 1}))
    assert coordinates(B, B[0].scale(Fraction(3, 2))) == [Fraction(3, 2)]
    assert coordinates(B, Derivation.from_map(A, {"x": 1})) is None


# -- derive ------------------------------------------------------------------------------


def test_derivative_of_inverse_determinant():
    C = STOCK["GL2"]
    B = basis_by_label(C)
    det_inv = C.pres.factor_inverse(0)
    assert derive(B["d_s11"], det_inv) == -1
    assert derive(B["d_s22"], det_inv) == -1
    assert derive(B["d_s12"], det_inv) == 0


def test_derive_constants_and_products():
    C = STOCK["OL1"]
    B = basis_by_label(C)
    assert derive(B["d_t1"], C.pres.one) == 0
    assert derive(B["d_s11"], C.pres.scalar(7)) == 0
    assert derive(B["d_t1"], C.pres.parse_elem("s11*t1")) == 1
    assert derive(B["d_s11"], C.pres.parse_elem("1/s11^3")) == -3


def test_derive_matches_partials_on_polynomials():
    C = STOCK["OL2"]
    A = C.pres
    p = A.poly("s11^2*t1 + 3*s12*s21*t2 - s22^3 + t1*t2 + 5")
    for D in derivation_basis(C):
        assert derive(D, A.elem(p)) == derive_partials(D, p)


# -- lift points --------------------------------------------------------------------------


def test_lift_point_examples():
    C = STOCK["OL1"]
    A = C.pres
    zero = Derivation.from_map(A, {})
    pt = lift_point(zero)
    assert {g: (v.value, v.delta) for g, v in pt.items()} == {"s11": (1, 0), "t1": (0, 0)}
    X = basis_by_label(C)["d_s11"]
    pt = lift_point(X)
    assert pt["s11"] == (1, 1) and pt["t1"] == (0, 0)
    # projecting k[d] -> k recovers the counit
    assert {g: v.value for g, v in pt.items()} == A.counit_point


def test_lift_point_rejects_non_derivations():
    A = Presentation(QQ, ["x", "y"], ["y - x^2 - 2*x"], None, {"x": 0, "y": 0})
    with pytest.raises(TangentError):
        lift_point(Derivation.from_map(A, {"x": 1}))


# -- psi and brackets ---------------------------------------------------------------------


def test_psi_examples():
    C = STOCK["OL1"]
    A = C.pres
    X = basis_by_label(C)["d_s11"]
    assert psi(X, C, A.gen("t1")) == A.gen("t1")
    for D in derivation_basis(C):
        assert psi(D, C, A.one) == A.zero
    T = STOCK["trivial"]
    for D in derivation_basis(T):
        for g in T.generators:
            assert psi(D, T, T.pres.gen(g)) == T.pres.zero


def test_ol1_brackets():
    C = STOCK["OL1"]
    B = basis_by_label(C)
    X, V = B["d_s11"], B["d_t1"]
    assert bracket(C, X, V) == V
    assert bracket(C, V, X).is_zero()
    assert bracket(C, X, X).is_zero() and bracket(C, V, V).is_zero()
    L = structure_constants(C)
    assert L.constants == {(0, 1, 1): 1}


def test_trivial_brackets_vanish():
    C = STOCK["trivial"]
    B = derivation_basis(C)
    assert B
    for D in B:
        for E in B:
            assert bracket(C, D, E).is_zero()


def test_gl2_sample_bracket():
    C = STOCK["GL2"]
    B = basis_by_label(C)
    assert bracket(C, B["d_s11"], B["d_s12"]) == B["d_s12"]
    assert bracket(C, B["d_s12"], B["d_s21"]) == B["d_s11"] - B["d_s22"]


def test_gl_structure_constants_match_commutators():
    for n in (1, 2):
        L = structure_constants(STOCK[f"GL{n}"])
        assert L.constants == commutator_constants(n)


def test_gl1_is_abelian():
    L = structure_constants(STOCK["GL1"])
    assert L.dim == 1 and check_identities(L).abelian


def test_sl2_structure_constants():
    L = structure_constants(STOCK["SL2"])
    assert L.basis == ("d_s11", "d_s12", "d_s21")
    assert L.constants == sl2_constants()


def test_heisenberg_algebra():
    for name in ("Heis", "HeisF2"):
        C = STOCK[name]
        B = basis_by_label(C)
        assert bracket(C, B["d_x"], B["d_y"]) == B["d_z"]
        assert bracket(C, B["d_y"], B["d_x"]) == B["d_z"].scale(C.field(-1))


@pytest.mark.parametrize("name", sorted(STOCK))
def test_bracket_equals_e_after_psi(name):
    C = STOCK[name]
    B = derivation_basis(C)
    for D in B:
        for E in B:
            br = bracket(C, D, E, cross_check=False)
            for g in C.generators:
                assert derive(E, psi(D, C, C.pres.gen(g))) == br[g]
            assert is_derivation(br)


# -- the dual-number adjoint ----------------------------------------------------------


def test_l_sharp_examples():
    C = STOCK["OL1"]
    A = C.pres
    X = basis_by_label(C)["d_s11"]
    assert l_sharp(X, C, A.gen("t1")) == (A.gen("t1"), A.gen("t1"))
    assert l_sharp(X, C, A.one) == (A.one, A.zero)
    T = STOCK["trivial"]
    f = T.pres.parse_elem("x^2 + 3*y")
    for D in derivation_basis(T):
        assert l_sharp(D, T, f) == (f, T.pres.zero)


def test_ad_examples():
    C = STOCK["OL1"]
    B = basis_by_label(C)
    assert ad_via_dual(C, B["d_s11"], B["d_t1"]) == B["d_t1"]
    T = STOCK["trivial"]
    for D in derivation_basis(T):
        for E in derivation_basis(T):
            assert ad_via_dual(T, D, E).is_zero()


def monomial_products(A, max_deg=3):
    gens = [A.gen(g) for g in A.generators]
    out = []
    for d in range(1, max_deg + 1):
        for combo in combinations_with_replacement(gens, d):
            p = A.one
            for g in combo:
                p = p * g
            out.append(p)
    return out


@pytest.mark.parametrize("name", sorted(STOCK))
def test_dual_number_expansion_matches_psi(name):
    C = STOCK[name]
    A = C.pres
    elems = monomial_products(A)
    elems += [A.factor_inverse(i) for i in range(A.nfactors)]
    for D in derivation_basis(C):
        for a in elems:
            assert l_sharp(D, C, a) == (A.reduce(a), psi(D, C, a))


@pytest.mark.parametrize("name", sorted(STOCK))
def test_adjoint_equals_bracket(name):
    C = STOCK[name]
    B = derivation_basis(C)
    for D in B:
        for E in B:
            assert ad_via_dual(C, D, E) == bracket(C, D, E)


# -- Jacobi decomposition ---------------------------------------------------------------


@pytest.mark.parametrize("name", ["OL1", "SL2", "Heis", "HeisF2", "GL2"])
def test_co_left_distributivity_splits(name):
    C = STOCK[name]
    B = derivation_basis(C)
    for X in B:
        for Y in B:
            for Z in B:
                xy = bracket(C, X, Y, cross_check=False)
                xz = bracket(C, X, Z, cross_check=False)
                yz = bracket(C, Y, Z, cross_check=False)
                outer1 = bracket(C, xy, Z, cross_check=False)
                outer2 = bracket(C, Y, xz, cross_check=False)
                lhs = bracket(C, X, yz, cross_check=False)
                for g in C.generators:
                    t = jacobi_terms(C, X, Y, Z, g)
                    assert t.lhs == lhs[g]
                    assert t.total == t.first + t.second
                    assert t.first == outer1[g]
                    assert t.second == outer2[g]
                    assert t.lhs == t.total


@pytest.mark.parametrize("name", sorted(STOCK))
def test_structure_constants_satisfy_leibniz(name):
    L = structure_constants(STOCK[name])
    assert check_identities(L).leibniz


# -- involutory coracks ---------------------------------------------------------------------


def test_involutory_in_odd_characteristic_gives_zero_psi():
    cases = [STOCK["trivial"], STOCK["Gm"], STOCK["Ga"], STOCK["GL1"],
             trivial_corack(Presentation(GF(3), ["x"], [], None, {"x": 0}))]
    for C in cases:
        assert corack_predicates(C)["involutory"] is True
        for D in derivation_basis(C):
            for g in C.generators:
                assert psi(D, C, C.pres.gen(g)) == C.pres.zero
        assert structure_constants(C).constants == {}
    assert structure_constants(dual_corack(trivial_quandle(3))).constants == {}


def test_heisenberg_in_characteristic_two():
    C = STOCK["HeisF2"]
    assert corack_predicates(C)["involutory"] is True
    assert structure_constants(C).constants != {}


# -- differentials -------------------------------------------------------------------------


def gl_to_gm():
    src, tgt = STOCK["GL2"], STOCK["Gm"]
    return AlgebraHom(src.pres, tgt.pres, {"s11": "s", "s22": "s", "s12": 0, "s21": 0})


def gl_to_sl():
    src, tgt = STOCK["GL2"], STOCK["SL2"]
    return AlgebraHom(src.pres, tgt.pres, {g: g for g in src.generators})


def sl_to_torus():
    src, tgt = STOCK["SL2"], STOCK["Gm"]
    return AlgebraHom(src.pres, tgt.pres, {"s11": "s", "s22": "1/s", "s12": 0, "s21": 0})


def test_identity_differential():
    C = STOCK["OL2"]
    ident = identity_hom(C.pres)
    for D in derivation_basis(C):
        assert differential(ident, D) == D


def test_scalar_direction():
    (D,) = derivation_basis(STOCK["Gm"])
    img = differential(gl_to_gm(), D)
    assert img.values == (1, 0, 0, 1)


def test_sl2_into_gl2_is_injective_and_bracket_preserving():
    phi = gl_to_sl()
    sl, gl = STOCK["SL2"], STOCK["GL2"]
    assert corack_hom_verify(phi, gl, sl).ok
    Bs, Bg = derivation_basis(sl), derivation_basis(gl)
    M = differential_matrix(phi, Bs, Bg)
    assert rank(M, QQ) == 3
    for D in Bs:
        assert sum(differential(phi, D).values[i] for i in (0, 3)) == 0
        for E in Bs:
            lhs = differential(phi, bracket(sl, D, E))
            rhs = bracket(gl, differential(phi, D), differential(phi, E))
            assert lhs == rhs


def test_differentials_compose():
    outer, inner = sl_to_torus(), gl_to_sl()
    assert corack_hom_verify(outer, STOCK["SL2"], STOCK["Gm"]).ok
    composite = outer.compose(inner)
    (D,) = derivation_basis(STOCK["Gm"])
    direct = differential(composite, D)
    stepwise = differential(inner, differential(outer, D))
    assert direct == stepwise
    assert direct.values == (1, 0, 0, -1)


def test_differential_bracket_into_omni():
    # GL_1 sits in OL_1 as the s-coordinate; both brackets vanish there
    src, tgt = STOCK["OL1"], STOCK["GL1"]
    phi = AlgebraHom(src.pres, tgt.pres, {"s11": "s11", "t1": 0})
    assert corack_hom_verify(phi, src, tgt).ok
    (D,) = derivation_basis(tgt)
    img = differential(phi, D)
    assert img == basis_by_label(src)["d_s11"]
    L = structure_constants(src)
    v = coordinates(derivation_basis(src), img)
    assert lb_bracket(L, v, v) == [0, 0]
