"""Corack algebras: a presented algebra with corack operations and a counit.

``nabla`` pulls back the rack operation ``(x, y) -> x |> y`` and
``nabla_inv`` pulls back ``(u, v) -> u |>^-1 v``; both are given on
generators as elements of ``A (x) A`` (copies ``g@1``, ``g@2``).

Co-invertibility is checked by dualizing the invertibility square of the
rack: with ``T1`` the pullback of ``(x, y) -> (x |> y, x)`` and ``T2`` the
pullback of ``(u, v) -> (v, u |>^-1 v)``, both composites must be the
identity of ``A (x) A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import permutations
from typing import Mapping

from .algebra import (
    AlgebraError,
    AlgebraHom,
    AlgElem,
    Presentation,
    identity_images,
    relabel,
    tensor_hom,
    tpow,
)
from .field import Field, QQ
from .poly import MultiPoly

AXIOMS = ("C1", "C2", "C3", "C4", "C5")


class CorackError(AlgebraError):
    pass


class CorackAlgebra:
    """Presented algebra ``A`` with ``nabla``, optional ``nabla_inv`` and counit.

    With ``check=True`` the constructor verifies that both operations respect
    the relations and denominators of ``A`` and that co-fixing (C4) holds on
    generators.
    """

    def __init__(self, pres: Presentation, nabla: Mapping[str, AlgElem | str],
                 nabla_inv: Mapping[str, AlgElem | str] | None = None, *,
                 check: bool = True, name: str | None = None):
        self.pres = pres
        self.name = name
        T2 = tpow(pres, 2)
        self.nabla = self._images(nabla, T2, "nabla")
        self.nabla_inv = None if nabla_inv is None else self._images(nabla_inv, T2, "nabla_inv")
        self._homs: dict = {}
        if check:
            for which in ("fwd", "inv") if self.nabla_inv is not None else ("fwd",):
                self._check_hom(which)
            bad = [g for g in pres.generators
                   if not pres.equal(self.hom("counit_left")(self.nabla[g]), pres.gen(g))]
            if bad:
                raise CorackError(f"co-fixing fails on generators {bad}")

    def _images(self, table, T2, what) -> dict[str, AlgElem]:
        missing = [g for g in self.pres.generators if g not in table]
        if missing:
            raise CorackError(f"{what} lacks generators {missing}")
        return {g: T2.coerce(table[g]) for g in self.pres.generators}

    def _check_hom(self, which: str):
        phi = self.op_hom(which)
        T2 = phi.target
        for r in self.pres.relations:
            if not T2.equal(phi.apply_poly(r), T2.zero):
                raise CorackError(f"{which} does not respect relation {r}")
        for i in range(self.pres.nfactors):
            phi.factor_inverse(i)

    @property
    def field(self) -> Field:
        return self.pres.field

    @property
    def generators(self) -> tuple[str, ...]:
        return self.pres.generators

    def tp(self, n: int) -> Presentation:
        return tpow(self.pres, n)

    def op_hom(self, which: str = "fwd") -> AlgebraHom:
        if which == "inv" and self.nabla_inv is None:
            raise CorackError("this corack algebra has no nabla_inv")
        key = ("op", which)
        if key not in self._homs:
            table = self.nabla if which == "fwd" else self.nabla_inv
            self._homs[key] = AlgebraHom(self.pres, self.tp(2), table, trusted=True)
        return self._homs[key]

    def hom(self, kind: str) -> AlgebraHom:
        """Cached structural maps between tensor powers of ``A``."""
        h = self._homs.get(kind)
        if h is not None:
            return h
        A = self.pres
        idn = identity_images(A)
        nab, inv = self.nabla, self.nabla_inv
        plans = {
            # A(x)A -> A
            "counit_left": (2, 1, [(None, ()), (idn, (1,))]),
            "counit_right": (2, 1, [(idn, (1,)), (None, ())]),
            "mult": (2, 1, [(idn, (1,)), (idn, (1,))]),
            # A(x)A -> A(x)A
            "swap": (2, 2, [(idn, (2,)), (idn, (1,))]),
            # A(x)A -> A(x)A(x)A
            "id_nabla": (2, 3, [(idn, (1,)), (nab, (2, 3))]),
            "nabla_id": (2, 3, [(nab, (1, 2)), (idn, (3,))]),
            "cold_rhs": (2, 3, [(nab, (1, 2)), (nab, (1, 3))]),
        }
        if inv is not None:
            plans.update({
                "T1": (2, 2, [(nab, (1, 2)), (idn, (1,))]),
                "T2": (2, 2, [(idn, (2,)), (inv, (1, 2))]),
                "inv_id": (2, 3, [(inv, (1, 2)), (idn, (3,))]),
                "cord_rhs": (2, 3, [(inv, (1, 3)), (inv, (2, 3))]),
            })
        if kind not in plans:
            raise CorackError(f"structural map {kind!r} unavailable")
        m, n, plan = plans[kind]
        h = tensor_hom(A, m, n, plan)
        self._homs[kind] = h
        return h

    def to_json(self) -> dict:
        obj = self.pres.to_json()
        obj["nabla"] = {g: str(self.nabla[g]) for g in self.generators}
        if self.nabla_inv is not None:
            obj["nabla_inv"] = {g: str(self.nabla_inv[g]) for g in self.generators}
        return obj

    @classmethod
    def from_json(cls, obj: dict, check: bool = False) -> CorackAlgebra:
        if "nabla" not in obj:
            raise CorackError("corack JSON lacks 'nabla'")
        pres = Presentation.from_json(obj)
        T2 = tpow(pres, 2)
        nabla = {g: T2.parse_elem(str(v)) for g, v in obj["nabla"].items()}
        inv = obj.get("nabla_inv")
        if inv is not None:
            inv = {g: T2.parse_elem(str(v)) for g, v in inv.items()}
        return cls(pres, nabla, inv, check=check)

    def __repr__(self):
        return f"CorackAlgebra({self.name or self.pres!r})"


def nabla_apply(C: CorackAlgebra, a, which: str = "fwd") -> AlgElem:
    return C.op_hom(which).apply(a)


# -- axiom checking ---------------------------------------------------------


@dataclass
class AxiomResult:
    status: str  # "pass" | "fail" | "skipped"
    failures: list[dict] = dc_field(default_factory=list)
    note: str | None = None

    def to_json(self) -> dict:
        d = {"status": self.status, "failures": self.failures}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class CorackReport:
    axioms: dict[str, AxiomResult]
    predicates: dict[str, bool | None] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.axioms.values())

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "axioms": {k: v.to_json() for k, v in self.axioms.items()},
            "predicates": self.predicates,
        }


def _compare(T: Presentation, lhs: AlgElem, rhs: AlgElem, gen: str, out: list):
    if not T.equal(lhs, rhs):
        out.append({"generator": gen, "lhs": str(T.reduce(lhs)), "rhs": str(T.reduce(rhs))})


def _result(failures) -> AxiomResult:
    return AxiomResult("fail" if failures else "pass", failures)


def corack_check(C: CorackAlgebra, axioms=AXIOMS) -> CorackReport:
    """Check C1-C5 generator by generator; C1/C3 are skipped without ``nabla_inv``."""
    A = C.pres
    T2, T3 = C.tp(2), C.tp(3)
    res: dict[str, AxiomResult] = {}
    has_inv = C.nabla_inv is not None
    skip = "no nabla_inv supplied"

    if "C1" in axioms:
        if not has_inv:
            res["C1"] = AxiomResult("skipped", note=skip)
        else:
            fails: list = []
            t1, t2 = C.hom("T1"), C.hom("T2")
            for y in T2.generators:
                gy = T2.gen(y)
                _compare(T2, t1(t2(gy)), gy, y, fails)
                _compare(T2, t2(t1(gy)), gy, y, fails)
            res["C1"] = _result(fails)
    if "C2" in axioms:
        fails = []
        lhs_h, rhs_h = C.hom("id_nabla"), C.hom("cold_rhs")
        for g in A.generators:
            ng = C.nabla[g]
            _compare(T3, lhs_h(ng), rhs_h(ng), g, fails)
        res["C2"] = _result(fails)
    if "C3" in axioms:
        if not has_inv:
            res["C3"] = AxiomResult("skipped", note=skip)
        else:
            fails = []
            lhs_h, rhs_h = C.hom("inv_id"), C.hom("cord_rhs")
            for g in A.generators:
                ng = C.nabla_inv[g]
                _compare(T3, lhs_h(ng), rhs_h(ng), g, fails)
            res["C3"] = _result(fails)
    if "C4" in axioms:
        fails = []
        h = C.hom("counit_left")
        for g in A.generators:
            _compare(A, h(C.nabla[g]), A.gen(g), g, fails)
        res["C4"] = _result(fails)
    if "C5" in axioms:
        fails = []
        h = C.hom("counit_right")
        for g in A.generators:
            _compare(A, h(C.nabla[g]), A.scalar(A.counit_point[g]), g, fails)
        res["C5"] = _result(fails)
    return CorackReport(res)


def is_quandle(C: CorackAlgebra) -> bool:
    mu = C.hom("mult")
    return all(C.pres.equal(mu(C.nabla[g]), C.pres.gen(g)) for g in C.generators)


def is_involutory(C: CorackAlgebra) -> bool | None:
    if C.nabla_inv is None:
        return None
    tau, T2 = C.hom("swap"), C.tp(2)
    return all(T2.equal(C.nabla_inv[g], tau(C.nabla[g])) for g in C.generators)


def is_cocommutative(C: CorackAlgebra) -> bool:
    tau, T2 = C.hom("swap"), C.tp(2)
    return all(T2.equal(tau(C.nabla[g]), C.nabla[g]) for g in C.generators)


def is_coassociative(C: CorackAlgebra) -> bool:
    a, b, T3 = C.hom("id_nabla"), C.hom("nabla_id"), C.tp(3)
    return all(T3.equal(a(C.nabla[g]), b(C.nabla[g])) for g in C.generators)


def nabla_equals_inverse(C: CorackAlgebra) -> bool | None:
    if C.nabla_inv is None:
        return None
    T2 = C.tp(2)
    return all(T2.equal(C.nabla[g], C.nabla_inv[g]) for g in C.generators)


def corack_predicates(C: CorackAlgebra) -> dict[str, bool | None]:
    return {
        "quandle": is_quandle(C),
        "involutory": is_involutory(C),
        "cocommutative": is_cocommutative(C),
        "coassociative": is_coassociative(C),
    }


# -- Hopf algebras ----------------------------------------------------------


class HopfAlgebra:
    """Commutative Hopf algebra data: comultiplication and antipode on generators."""

    def __init__(self, pres: Presentation, delta: Mapping[str, AlgElem | str],
                 antipode: Mapping[str, AlgElem | str], name: str | None = None):
        self.pres = pres
        self.name = name
        T2 = tpow(pres, 2)
        self.delta = {g: T2.coerce(delta[g]) for g in pres.generators}
        self.antipode = {g: pres.coerce(antipode[g]) for g in pres.generators}
        self.delta_hom = AlgebraHom(pres, T2, self.delta, trusted=True)
        self.antipode_hom = AlgebraHom(pres, pres, self.antipode, trusted=True)

    @property
    def field(self):
        return self.pres.field

    def check(self) -> dict[str, list[str]]:
        """Failures per law, keyed by law name (empty lists mean it holds)."""
        A = self.pres
        T2, T3 = tpow(A, 2), tpow(A, 3)
        idn = identity_images(A)
        out = {"delta_relations": [], "antipode_relations": [], "counit": [],
               "antipode": [], "coassociative": []}
        for r in A.relations:
            if not T2.equal(self.delta_hom.apply_poly(r), T2.zero):
                out["delta_relations"].append(str(r))
            if not A.equal(self.antipode_hom.apply_poly(r), A.zero):
                out["antipode_relations"].append(str(r))
        for i in range(A.nfactors):
            self.delta_hom.factor_inverse(i)
            self.antipode_hom.factor_inverse(i)
        left = tensor_hom(A, 2, 1, [(None, ()), (idn, (1,))])
        right = tensor_hom(A, 2, 1, [(idn, (1,)), (None, ())])
        s_mult = tensor_hom(A, 2, 1, [(self.antipode, (1,)), (idn, (1,))])
        d_id = tensor_hom(A, 2, 3, [(self.delta, (1, 2)), (idn, (3,))])
        id_d = tensor_hom(A, 2, 3, [(idn, (1,)), (self.delta, (2, 3))])
        for g in A.generators:
            dg = self.delta[g]
            if not (A.equal(left(dg), A.gen(g)) and A.equal(right(dg), A.gen(g))):
                out["counit"].append(g)
            if not A.equal(s_mult(dg), A.scalar(A.counit_point[g])):
                out["antipode"].append(g)
            if not T3.equal(d_id(dg), id_d(dg)):
                out["coassociative"].append(g)
        return out


def conj_corack(H: HopfAlgebra) -> CorackAlgebra:
    """Corack algebra of the conjugation quandle of a group scheme.

    ``nabla f = sum f11 * S(f2) (x) f12`` and
    ``nabla_inv f = sum f12 (x) S(f11) * f2``, where ``(Delta (x) id) Delta f =
    sum f11 (x) f12 (x) f2``.
    """
    A = H.pres
    idn = identity_images(A)
    d3 = tensor_hom(A, 2, 3, [(H.delta, (1, 2)), (idn, (3,))])
    fold = tensor_hom(A, 3, 2, [(idn, (1,)), (idn, (2,)), (H.antipode, (1,))])
    fold_inv = tensor_hom(A, 3, 2, [(H.antipode, (2,)), (idn, (1,)), (idn, (2,))])
    nabla, inv = {}, {}
    for g in A.generators:
        t = d3(H.delta[g])
        nabla[g] = fold(t)
        inv[g] = fold_inv(t)
    return CorackAlgebra(A, nabla, inv, name=f"Conj({H.name})" if H.name else None)


def trivial_corack(A: Presentation) -> CorackAlgebra:
    """Trivial quandle structure: ``nabla g = 1 (x) g`` and ``nabla_inv g = g (x) 1``."""
    T2 = tpow(A, 2)
    if A.power != 1:
        raise CorackError("trivial_corack expects a base presentation")
    nabla = {g: relabel(A.gen(g), T2, {1: 2}) for g in A.generators}
    inv = {g: relabel(A.gen(g), T2, {1: 1}) for g in A.generators}
    return CorackAlgebra(A, nabla, inv, name="trivial")


# -- stock group schemes ----------------------------------------------------


def _sign(perm) -> int:
    s, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def det_poly(M: list[list[MultiPoly]], vars, field) -> MultiPoly:
    n = len(M)
    total = MultiPoly.constant(1 if n == 0 else 0, vars, field)
    if n == 0:
        return total
    for perm in permutations(range(n)):
        t = MultiPoly.constant(_sign(perm), vars, field)
        for i in range(n):
            t = t * M[i][perm[i]]
        total = total + t
    return total


def matrix_names(n: int, prefix: str = "s") -> list[list[str]]:
    if n > 9:
        raise ValueError("matrix sizes above 9 are not supported")
    return [[f"{prefix}{i + 1}{j + 1}" for j in range(n)] for i in range(n)]


def _inverse_entries(A: Presentation, names, det_unit: bool) -> list[list[AlgElem]]:
    """Entries of the inverse matrix: cofactor / det (or cofactor when det = 1)."""
    n = len(names)
    M = [[MultiPoly.var(names[i][j], A.generators, A.field) for j in range(n)] for i in range(n)]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [[M[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            cof = det_poly(minor, A.generators, A.field).scale((-1) ** (i + j))
            row.append(A.elem(cof, (1,)) if det_unit else A.elem(cof))
        out.append(row)
    return out


def _matrix_delta(A: Presentation, names) -> dict[str, AlgElem]:
    T2 = tpow(A, 2)
    n = len(names)
    out = {}
    for i in range(n):
        for j in range(n):
            p = MultiPoly.zero(T2.generators, A.field)
            for a in range(n):
                p = p + MultiPoly.var(f"{names[i][a]}@1", T2.generators, A.field) \
                    * MultiPoly.var(f"{names[a][j]}@2", T2.generators, A.field)
            out[names[i][j]] = T2.elem(p)
    return out


def gl_presentation(n: int, field: Field = QQ, extra: list[str] = (), extra_counit=None) -> Presentation:
    names = matrix_names(n)
    gens = [g for row in names for g in row] + list(extra)
    M = [[MultiPoly.var(names[i][j], gens, field) for j in range(n)] for i in range(n)]
    d = det_poly(M, gens, field) if n else None
    counit = {names[i][j]: int(i == j) for i in range(n) for j in range(n)}
    counit.update(extra_counit or {})
    return Presentation(field, gens, (), d, counit)


def stock_hopf(name: str, n: int = 0, field: Field = QQ, allow_slow: bool = False) -> HopfAlgebra:
    """Coordinate Hopf algebras of GL_n, SL_n, G_a, G_m and the Heisenberg group."""
    key = name.lower()
    if key in ("gl", "sl"):
        if n < 0 or n > 3:
            raise ValueError(f"{name}_{n} unsupported (0 <= n <= 3)")
        if n == 3 and not allow_slow:
            raise ValueError(f"{name}_3 requires allow_slow")
        names = matrix_names(n)
        if key == "gl":
            A = gl_presentation(n, field)
            inv = _inverse_entries(A, names, det_unit=n > 0)
        else:
            if n == 0:
                raise ValueError("SL_0 unsupported")
            gens = [g for row in names for g in row]
            M = [[MultiPoly.var(names[i][j], gens, field) for j in range(n)] for i in range(n)]
            rel = det_poly(M, gens, field) - 1
            counit = {names[i][j]: int(i == j) for i in range(n) for j in range(n)}
            A = Presentation(field, gens, [rel], None, counit)
            inv = _inverse_entries(A, names, det_unit=False)
        delta = _matrix_delta(A, names)
        S = {names[i][j]: inv[i][j] for i in range(n) for j in range(n)}
        return HopfAlgebra(A, delta, S, name=f"{key.upper()}{n}")
    if key == "ga":
        A = Presentation(field, ["x"], (), None, {"x": 0})
        return HopfAlgebra(A, {"x": "x@1 + x@2"}, {"x": "-x"}, name="Ga")
    if key == "gm":
        A = Presentation(field, ["s"], (), "s", {"s": 1})
        return HopfAlgebra(A, {"s": "s@1*s@2"}, {"s": A.elem("1", (1,))}, name="Gm")
    if key in ("heis", "heisenberg"):
        A = Presentation(field, ["x", "y", "z"], (), None, {"x": 0, "y": 0, "z": 0})
        return HopfAlgebra(
            A,
            {"x": "x@1 + x@2", "y": "y@1 + y@2", "z": "z@1 + z@2 + x@1*y@2"},
            {"x": "-x", "y": "-y", "z": "-z + x*y"},
            name="Heis",
        )
    raise ValueError(f"unknown group scheme {name!r}")


def group_function_hopf(G, field: Field = QQ) -> HopfAlgebra:
    """The Hopf algebra ``k^G`` of functions on a finite group (idempotent basis)."""
    n = G.size
    gens = [f"e{i}" for i in range(n)]
    A = _idempotent_presentation(n, G.unit, field)
    T2 = tpow(A, 2)
    delta = {}
    for g in range(n):
        terms = [f"e{a}@1*e{b}@2" for a in range(n) for b in range(n) if G.mul[a][b] == g]
        delta[gens[g]] = T2.parse_elem(" + ".join(terms) if terms else "0")
    S = {gens[g]: A.gen(gens[G.inv[g]]) for g in range(n)}
    return HopfAlgebra(A, delta, S, name="k^G")


def _idempotent_presentation(n: int, unit: int, field: Field) -> Presentation:
    gens = [f"e{i}" for i in range(n)]
    rels = []
    for i in range(n):
        rels.append(f"e{i}^2 - e{i}")
        for j in range(i + 1, n):
            rels.append(f"e{i}*e{j}")
    rels.append(" + ".join(gens) + " - 1")
    return Presentation(field, gens, rels, None, {g: int(i == unit) for i, g in enumerate(gens)})


def ol_corack(n: int, field: Field = QQ, allow_slow: bool = False) -> CorackAlgebra:
    """Omni-linear rack scheme ``GL_n x A^n`` with ``(A,v) |> (B,w) = (ABA^-1, Aw)``."""
    if n < 0 or n > 3:
        raise ValueError("ol_corack supports 0 <= n <= 3")
    if n == 3 and not allow_slow:
        raise ValueError("OL_3 requires allow_slow")
    names = matrix_names(n)
    ts = [f"t{k + 1}" for k in range(n)]
    A = gl_presentation(n, field, ts, {t: 0 for t in ts})
    T2 = tpow(A, 2)
    G = conj_corack(stock_hopf("gl", n, field, allow_slow=allow_slow))
    GT2 = G.tp(2)

    def lift(a: AlgElem) -> AlgElem:
        return AlgElem(T2, a.num.rename(T2.generators), a.den)

    nabla = {g: lift(v) for g, v in G.nabla.items()}
    inv = {g: lift(v) for g, v in G.nabla_inv.items()}
    Sinv = _inverse_entries(A, names, det_unit=n > 0)
    for k in range(n):
        nabla[ts[k]] = T2.parse_elem(" + ".join(f"{names[k][i]}@1*{ts[i]}@2" for i in range(n)))
        acc = T2.zero
        for i in range(n):
            acc = acc + T2.gen(f"{ts[i]}@1") * relabel(Sinv[k][i], T2, {1: 2})
        inv[ts[k]] = T2.reduce(acc)
    assert GT2.generators == tuple(g for g in T2.generators if not g.startswith("t"))
    return CorackAlgebra(A, nabla, inv, name=f"OL{n}")


# -- homomorphisms of corack algebras ---------------------------------------


@dataclass
class CorackHomReport:
    nabla: list[dict]
    nabla_inv: list[dict] | None
    counit: list[dict]

    @property
    def ok(self) -> bool:
        rows = self.nabla + self.counit + (self.nabla_inv or [])
        return all(r["ok"] for r in rows)

    def to_json(self) -> dict:
        return {"ok": self.ok, "nabla": self.nabla, "nabla_inv": self.nabla_inv, "counit": self.counit}


def tensor_square_hom(phi: AlgebraHom) -> AlgebraHom:
    """``phi (x) phi`` between tensor squares."""
    S, T = phi.source, phi.target
    S2, T2 = tpow(S, 2), tpow(T, 2)
    images = {}
    for g in S.generators:
        v = phi.images[g]
        images[f"{g}@1"] = relabel(v, T2, {1: 1})
        images[f"{g}@2"] = relabel(v, T2, {1: 2})
    return AlgebraHom(S2, T2, images, trusted=phi.trusted)


def corack_hom_verify(phi: AlgebraHom, C_src: CorackAlgebra, C_tgt: CorackAlgebra) -> CorackHomReport:
    """Check ``nabla_tgt ∘ phi = (phi (x) phi) ∘ nabla_src`` (and inverse, counit)."""
    if phi.source is not C_src.pres or phi.target is not C_tgt.pres:
        raise CorackError("hom does not connect the given corack algebras")
    pp = tensor_square_hom(phi)
    T2 = C_tgt.tp(2)
    fwd, inv, cnt = [], None, []
    both_inv = C_src.nabla_inv is not None and C_tgt.nabla_inv is not None
    if both_inv:
        inv = []
    for g in C_src.generators:
        img = phi.images[g]
        fwd.append({"generator": g,
                    "ok": T2.equal(nabla_apply(C_tgt, img), pp(C_src.nabla[g]))})
        if both_inv:
            inv.append({"generator": g,
                        "ok": T2.equal(nabla_apply(C_tgt, img, "inv"), pp(C_src.nabla_inv[g]))})
        cnt.append({"generator": g,
                    "ok": C_tgt.pres.counit(img) == C_src.pres.counit_point[g]})
    return CorackHomReport(fwd, inv, cnt)
