import pytest
import sympy

from corack.algebra import AlgebraHom, Presentation, identity_hom, identity_images, tensor_hom
from corack.corack import (
    CorackAlgebra,
    CorackError,
    conj_corack,
    corack_check,
    corack_hom_verify,
    corack_predicates,
    group_function_hopf,
    is_coassociative,
    is_involutory,
    is_quandle,
    nabla_apply,
    ol_corack,
    stock_hopf,
    trivial_corack,
)
from corack.field import GF, QQ
from corack.finite import conj_of_group, dual_corack, stock_group
from oracles import elem_to_sympy, heis_inv, heis_mul, sym


def stock_coracks():
    out = {
        "Gm": conj_corack(stock_hopf("gm")),
        "Ga": conj_corack(stock_hopf("ga")),
        "Heis": conj_corack(stock_hopf("heis")),
        "HeisF2": conj_corack(stock_hopf("heis", field=GF(2))),
        "GL1": conj_corack(stock_hopf("gl", 1)),
        "GL2": conj_corack(stock_hopf("gl", 2)),
        "SL2": conj_corack(stock_hopf("sl", 2)),
        "OL0": ol_corack(0),
        "OL1": ol_corack(1),
        "OL2": ol_corack(2),
        "trivial_kxy": trivial_corack(Presentation(QQ, ["x", "y"], [], None, {"x": 0, "y": 0})),
        "trivial_nilpotent": trivial_corack(Presentation(QQ, ["x"], ["x^2"], None, {"x": 0})),
        "trivial_k": trivial_corack(Presentation(QQ, [], [], None, {})),
        "dual_conj_S3": dual_corack(conj_of_group(stock_group("s3"))),
    }
    return out


STOCK = stock_coracks()


# -- nabla application --------------------------------------------------------------


def test_trivial_nabla_is_one_tensor_id():
    C = trivial_corack(Presentation(QQ, ["x"], [], None, {"x": 0}))
    T = C.tp(2)
    assert nabla_apply(C, C.pres.parse_elem("x^2 + 1")) == T.parse_elem("x@2^2 + 1")
    assert nabla_apply(C, C.pres.parse_elem("x^2 + 1"), "inv") == T.parse_elem("x@1^2 + 1")


def test_ol1_nabla_on_t():
    C = STOCK["OL1"]
    T = C.tp(2)
    assert nabla_apply(C, C.pres.gen("t1")) == T.parse_elem("s11@1*t1@2")
    assert nabla_apply(C, C.pres.gen("s11")) == T.gen("s11@2")


@pytest.mark.parametrize("name", sorted(STOCK))
def test_nabla_preserves_one(name):
    C = STOCK[name]
    assert nabla_apply(C, C.pres.one) == C.tp(2).one
    if C.nabla_inv is not None:
        assert nabla_apply(C, C.pres.one, "inv") == C.tp(2).one


def test_missing_inverse_raises():
    C = STOCK["GL1"]
    D = CorackAlgebra(C.pres, C.nabla)
    with pytest.raises(CorackError):
        nabla_apply(D, C.pres.gen("s11"), "inv")


# -- axiom suite ----------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(STOCK))
def test_stock_coracks_pass_all_axioms(name):
    rep = corack_check(STOCK[name])
    assert rep.ok
    assert {k: v.status for k, v in rep.axioms.items()} == dict.fromkeys(("C1", "C2", "C3", "C4", "C5"), "pass")


def test_without_inverse_c1_c3_skipped():
    C = STOCK["Heis"]
    D = CorackAlgebra(C.pres, C.nabla)
    rep = corack_check(D)
    assert rep.ok
    assert rep.axioms["C1"].status == rep.axioms["C3"].status == "skipped"
    assert is_involutory(D) is None


def test_corrupted_nabla_fails_co_fixing():
    C = STOCK["OL1"]
    bad = dict(C.nabla)
    bad["t1"] = "t1@1*t1@2"
    with pytest.raises(CorackError):
        CorackAlgebra(C.pres, bad)
    D = CorackAlgebra(C.pres, bad, check=False)
    rep = corack_check(D)
    assert not rep.ok
    fails = rep.axioms["C4"].failures
    assert [f["generator"] for f in fails] == ["t1"]
    assert fails[0]["lhs"] == "0" and fails[0]["rhs"] == "t1"


def test_wrong_inverse_fails_c1():
    # nabla_inv := nabla is not an inverse once the action is nontrivial
    E = STOCK["OL1"]
    F = CorackAlgebra(E.pres, E.nabla, E.nabla, check=False)
    assert corack_check(F).axioms["C1"].status == "fail"


def test_relation_violation_rejected():
    A = Presentation(QQ, ["x"], ["x^2"], None, {"x": 0})
    with pytest.raises(CorackError):
        CorackAlgebra(A, {"x": "x@2 + 1"}, check=True)


# -- predicates ---------------------------------------------------------------------


@pytest.mark.parametrize("name", ["Gm", "Ga", "Heis", "HeisF2", "GL1", "GL2", "SL2"])
def test_conjugation_is_quandle(name):
    assert is_quandle(STOCK[name])


@pytest.mark.parametrize("n,expect", [(0, True), (1, False), (2, False)])
def test_ol_quandle_only_for_n0(n, expect):
    assert is_quandle(STOCK[f"OL{n}"]) is expect


def test_heisenberg_involutory_depends_on_characteristic():
    assert corack_predicates(STOCK["HeisF2"])["involutory"] is True
    assert corack_predicates(STOCK["Heis"])["involutory"] is False


def test_coassociativity_instances():
    for name in ("trivial_kxy", "trivial_nilpotent", "Gm", "Ga"):
        assert is_coassociative(STOCK[name])
    for name in ("Heis", "GL2", "SL2", "OL1"):
        assert not is_coassociative(STOCK[name])


def test_trivial_predicates():
    p = corack_predicates(STOCK["trivial_kxy"])
    assert p["quandle"] and p["involutory"] and p["coassociative"]
    assert not p["cocommutative"]


# -- builders against group-law oracles -------------------------------------------


def test_abelian_conjugation_is_trivial():
    for name, g in (("Gm", "s"), ("Ga", "x")):
        C = STOCK[name]
        assert C.nabla[g] == C.tp(2).gen(f"{g}@2")


def test_heisenberg_nabla_matches_group_law():
    C = STOCK["Heis"]
    u = tuple(sym(f"{c}@1") for c in "xyz")
    v = tuple(sym(f"{c}@2") for c in "xyz")
    fwd = heis_mul(heis_mul(u, v), heis_inv(u))  # u v u^-1
    back = heis_mul(heis_mul(heis_inv(v), u), v)  # v^-1 u v
    for k, g in enumerate("xyz"):
        assert sympy.expand(elem_to_sympy(C.nabla[g]) - fwd[k]) == 0
        assert sympy.expand(elem_to_sympy(C.nabla_inv[g]) - back[k]) == 0
    T = C.tp(2)
    assert C.nabla["z"] == T.parse_elem("z@2 + x@1*y@2 - y@1*x@2")


def test_gl2_conjugation_matches_matrices():
    C = STOCK["GL2"]
    U = sympy.Matrix(2, 2, lambda i, j: sym(f"s{i + 1}{j + 1}@1"))
    V = sympy.Matrix(2, 2, lambda i, j: sym(f"s{i + 1}{j + 1}@2"))
    fwd = U * V * U.inv()
    back = V.inv() * U * V
    for i in range(2):
        for j in range(2):
            g = f"s{i + 1}{j + 1}"
            assert sympy.simplify(elem_to_sympy(C.nabla[g]) - fwd[i, j]) == 0
            assert sympy.simplify(elem_to_sympy(C.nabla_inv[g]) - back[i, j]) == 0


def test_ol2_matches_affine_action():
    C = STOCK["OL2"]
    A = sympy.Matrix(2, 2, lambda i, j: sym(f"s{i + 1}{j + 1}@1"))
    B = sympy.Matrix(2, 2, lambda i, j: sym(f"s{i + 1}{j + 1}@2"))
    v = sympy.Matrix([sym("t1@1"), sym("t2@1")])
    w = sympy.Matrix([sym("t1@2"), sym("t2@2")])
    # (A,v) |> (B,w) = (A B A^-1, A w) and (A,v) |>^-1 (B,w) = (B^-1 A B, B^-1 v)
    fwd_t = A * w
    back_t = B.inv() * v
    for k in range(2):
        assert sympy.simplify(elem_to_sympy(C.nabla[f"t{k + 1}"]) - fwd_t[k]) == 0
        assert sympy.simplify(elem_to_sympy(C.nabla_inv[f"t{k + 1}"]) - back_t[k]) == 0
    T = C.tp(2)
    assert C.nabla["t1"] == T.parse_elem("s11@1*t1@2 + s12@1*t2@2")


def test_ol0_is_ground_field():
    C = STOCK["OL0"]
    assert C.pres.generators == ()
    assert corack_check(C).ok


def test_ol1_shape():
    C = STOCK["OL1"]
    assert C.pres.generators == ("s11", "t1")
    assert [str(f) for f in C.pres.factors] == ["s11"]
    T = C.tp(2)
    assert C.nabla["s11"] == T.gen("s11@2")


def test_builder_limits():
    with pytest.raises(ValueError):
        ol_corack(3)
    with pytest.raises(ValueError):
        ol_corack(4, allow_slow=True)
    with pytest.raises(ValueError):
        stock_hopf("gl", 3)
    with pytest.raises(ValueError):
        stock_hopf("so", 2)


# -- Hopf data ------------------------------------------------------------------------


@pytest.mark.parametrize("args", [("gm",), ("ga",), ("heis",), ("gl", 1), ("gl", 2), ("sl", 2)])
def test_stock_hopf_laws(args):
    H = stock_hopf(*args)
    assert all(not v for v in H.check().values())


def test_gm_antipode_law():
    H = stock_hopf("gm")
    s = H.pres.gen("s")
    assert H.antipode["s"] * s == H.pres.one


def test_gl2_antipode_entry():
    H = stock_hopf("gl", 2)
    A = H.pres
    assert H.antipode["s11"] == A.parse_elem("s22/(s11*s22 - s12*s21)")
    assert H.antipode["s12"] == A.parse_elem("-s12/(s11*s22 - s12*s21)")


def test_heis_counit_law():
    H = stock_hopf("heis")
    left = tensor_hom(H.pres, 2, 1, [(None, ()), (identity_images(H.pres), (1,))])
    assert left(H.delta["z"]) == H.pres.gen("z")


@pytest.mark.parametrize("name", ["c2", "s3"])
def test_function_algebra_conjugation_matches_finite_dual(name):
    G = stock_group(name)
    C = conj_corack(group_function_hopf(G))
    D = dual_corack(conj_of_group(G))
    assert C.pres.generators == D.pres.generators
    T = D.tp(2)
    for g in D.generators:
        assert T.parse_elem(str(C.nabla[g])) == D.nabla[g]
        assert T.parse_elem(str(C.nabla_inv[g])) == D.nabla_inv[g]


# -- homomorphisms ----------------------------------------------------------------------


def test_identity_is_corack_hom():
    C = STOCK["OL1"]
    assert corack_hom_verify(identity_hom(C.pres), C, C).ok


def test_scalar_subgroup_surjection():
    src, tgt = STOCK["GL2"], STOCK["Gm"]
    phi = AlgebraHom(src.pres, tgt.pres, {"s11": "s", "s22": "s", "s12": 0, "s21": 0})
    rep = corack_hom_verify(phi, src, tgt)
    assert rep.ok and rep.nabla_inv is not None


def test_restriction_to_sl2():
    src, tgt = STOCK["GL2"], STOCK["SL2"]
    phi = AlgebraHom(src.pres, tgt.pres, {g: g for g in src.generators})
    assert phi.apply(src.pres.factor_inverse(0)) == tgt.pres.one
    assert corack_hom_verify(phi, src, tgt).ok


def test_non_morphism_detected():
    C = STOCK["OL1"]
    Z = trivial_corack(C.pres)
    rep = corack_hom_verify(identity_hom(C.pres), C, Z)
    assert not rep.ok
    assert [r["generator"] for r in rep.nabla if not r["ok"]] == ["t1"]


# -- serialization ----------------------------------------------------------------------


@pytest.mark.parametrize("name", ["OL1", "Heis", "SL2", "dual_conj_S3"])
def test_json_round_trip(name):
    C = STOCK[name]
    D = CorackAlgebra.from_json(C.to_json(), check=True)
    assert D.to_json() == C.to_json()
    assert corack_check(D).ok
