"""Derivations at the counit and the convolution bracket ``[D,E] = (D (x) E) nabla``.

A derivation ``D: A -> k`` at the counit is stored by its values on
generators; values on fractions follow from the Leibniz and quotient rules.
Most evaluations go through :mod:`corack.jet`: a derivation ``D`` is the
dual-number point ``eps + d*D`` and its value on ``a`` is the
``d``-coefficient of ``a`` at that point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import linalg
from .algebra import AlgebraHom, AlgElem, Presentation, tpow
from .corack import CorackAlgebra
from .jet import DualElem, Jet, eval_elem
from .leibniz import LeibnizAlgebra
from .poly import MultiPoly


class TangentError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Derivation:
    pres: Presentation
    values: tuple
    label: str | None = None

    @classmethod
    def from_map(cls, pres: Presentation, vals: Mapping[str, object], label=None) -> Derivation:
        return cls(pres, tuple(pres.field(vals.get(g, 0)) for g in pres.generators), label)

    def __getitem__(self, g: str):
        return self.values[self.pres.generators.index(g)]

    def as_dict(self) -> dict[str, object]:
        return dict(zip(self.pres.generators, self.values))

    def __add__(self, other: Derivation) -> Derivation:
        return Derivation(self.pres, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: Derivation) -> Derivation:
        return Derivation(self.pres, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> Derivation:
        return Derivation(self.pres, tuple(c * a for a in self.values))

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.pres is other.pres and self.values == other.values

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.values)

    def __repr__(self):
        vals = ", ".join(f"{g}: {v}" for g, v in self.as_dict().items() if v)
        return f"Derivation({{{vals}}})"


def _pres(C) -> Presentation:
    return C.pres if isinstance(C, CorackAlgebra) else C


def jacobian_at_counit(A: Presentation) -> list[list]:
    return [[r.partial(g).evaluate(A.counit_point) for g in A.generators] for r in A.relations]


def is_derivation(D: Derivation) -> bool:
    """First-order condition: every relation is killed by ``D``."""
    A = D.pres
    return all(not sum((a * b for a, b in zip(row, D.values)), A.field.zero)
               for row in jacobian_at_counit(A))


def derivation_basis(C) -> list[Derivation]:
    """Echelon basis of the tangent space at the counit (kernel of the Jacobian)."""
    A = _pres(C)
    n = len(A.generators)
    vecs = linalg.nullspace(jacobian_at_counit(A), n, A.field) if n else []
    out = []
    for v in vecs:
        pivot = next(i for i, x in enumerate(v) if x)
        out.append(Derivation(A, tuple(v), f"d_{A.generators[pivot]}"))
    return out


def coordinates(basis: Sequence[Derivation], D: Derivation) -> list | None:
    if not basis:
        return [] if D.is_zero() else None
    return linalg.solve_in_span([b.values for b in basis], D.values, D.pres.field)


# -- jet points -------------------------------------------------------------


def _jet_point(A: Presentation, names, slot_vals: Mapping[str, object]) -> dict:
    """Map generator copy names to jets ``eps(g) + sum_mask c * eps_mask``."""
    zero = A.field.zero
    return {name: Jet({0: A.counit_point[g], **slot_vals.get(g, {})}, zero)
            for name, g in names}


def _slot_names(A: Presentation, power: int, slot: int):
    if power == 1:
        return [(g, g) for g in A.generators]
    return [(f"{g}@{slot}", g) for g in A.generators]


def point_of(T: Presentation, slots: Sequence[Mapping[str, Jet] | None]) -> dict:
    """Point of ``A^n`` whose slot ``i`` takes the jets ``slots[i]`` (None = counit)."""
    A = T.base
    zero = A.field.zero
    out = {}
    for s, vals in enumerate(slots, start=1):
        for name, g in _slot_names(A, T.power, s):
            out[name] = vals[g] if vals is not None else Jet.const(A.counit_point[g], zero)
    return out


def derivation_jet(D: Derivation, mask: int) -> dict[str, Jet]:
    """The point ``eps + eps_mask * D`` as generator -> jet."""
    A = D.pres
    zero = A.field.zero
    return {g: Jet({0: A.counit_point[g], mask: v}, zero) for g, v in zip(A.generators, D.values)}


def _one_jet(A: Presentation) -> Jet:
    return Jet.const(A.field.one, A.field.zero)


def eval_at(a: AlgElem, slots) -> Jet:
    T = a.pres
    return eval_elem(a, point_of(T, slots), _one_jet(T))


def derive(D: Derivation, a) -> object:
    """``D(a)`` via the Leibniz rule and the quotient rule for denominators."""
    A = D.pres
    a = A.coerce(a)
    return eval_at(a, [derivation_jet(D, 1)]).coeff(1)


def derive_partials(D: Derivation, p: MultiPoly):
    """``sum_g dp/dg(eps) * D(g)`` for a polynomial (independent of the jet path)."""
    A = D.pres
    total = A.field.zero
    for g, v in zip(A.generators, D.values):
        if v:
            total = total + p.partial(g).evaluate(A.counit_point) * v
    return total


def lift_point(D: Derivation) -> dict[str, DualElem]:
    """``eps + d*D`` as a table of dual numbers; checked to kill every relation."""
    A = D.pres
    pt = {g: DualElem(A.counit_point[g], v, A.field.zero) for g, v in zip(A.generators, D.values)}
    one = DualElem(A.field.one, A.field.zero, A.field.zero)
    for r in A.relations:
        img = r.evaluate(pt, one=one)
        if img.coeff(0) or img.coeff(1):
            raise TangentError(f"lift does not kill relation {r}")
    return pt


# -- psi, bracket, adjoint ----------------------------------------------------


def _restrict_first(T2: Presentation, A: Presentation):
    """``x@1 -> eps(x)``, ``x@2 -> x`` on polynomials of ``A (x) A``."""
    pt = {}
    for g in A.generators:
        pt[f"{g}@1"] = MultiPoly.constant(A.counit_point[g], A.generators, A.field)
        pt[f"{g}@2"] = MultiPoly.var(g, A.generators, A.field)
    return pt


def psi(D: Derivation, C: CorackAlgebra, a) -> AlgElem:
    """``(D (x) id) nabla a`` computed from partial derivatives in the first slot."""
    A = C.pres
    if D.pres is not A:
        raise TangentError("derivation lives on another algebra")
    T2 = C.tp(2)
    na = C.op_hom("fwd").apply(A.coerce(a), reduce=False)
    r = A.nfactors
    den1, den2 = na.den[:r], na.den[r:]
    pt = _restrict_first(T2, A)
    one = MultiPoly.constant(1, A.generators, A.field)

    def restrict(p: MultiPoly) -> MultiPoly:
        return p.evaluate(pt, one=one)

    acc = MultiPoly.zero(A.generators, A.field)
    for g, v in zip(A.generators, D.values):
        if v:
            acc = acc + restrict(na.num.partial(f"{g}@1")).scale(v)
    # first-slot denominator F1 = prod f_t@1^den1_t: quotient rule with scalars
    F1 = A.factor_monomial(den1)
    eF1 = F1.evaluate(A.counit_point)
    dF1 = derive_partials(D, F1)
    res = acc.scale(A.field.one / eF1) - restrict(na.num).scale(dF1 / (eF1 * eF1))
    return A.reduce(AlgElem(A, res, tuple(den2)))


def bracket(C: CorackAlgebra, D: Derivation, E: Derivation, cross_check: bool = True) -> Derivation:
    """``[D,E](g) = (D (x) E)(nabla g)``; optionally cross-checked against ``E o psi_D``."""
    A = C.pres
    vals = []
    for g in A.generators:
        j = eval_at(C.nabla[g], [derivation_jet(D, 1), derivation_jet(E, 2)])
        vals.append(j.coeff(3))
    out = Derivation(A, tuple(vals))
    if cross_check:
        for g, v in zip(A.generators, vals):
            if derive(E, psi(D, C, A.gen(g))) != v:
                raise TangentError(f"convolution and E o psi_D disagree on {g}")
    return out


def l_sharp(D: Derivation, C: CorackAlgebra, a) -> DualElem:
    """``(dD (x) id)(nabla a)`` in ``A[d]``, from the Sweedler expansion of ``nabla a``.

    ``nabla a`` is split as ``sum_m u_m (x) m`` over second-slot monomials
    ``m``; each first-slot coefficient ``u_m`` is sent to the dual number
    ``eps(u_m) + d*D(u_m)``.
    """
    A = C.pres
    T2 = C.tp(2)
    na = C.op_hom("fwd").apply(A.coerce(a), reduce=False)
    n, r = len(A.generators), A.nfactors
    groups: dict[tuple, dict] = {}
    for e, c in na.num.terms.items():
        groups.setdefault(e[n:], {})[e[:n] + (0,) * n] = c
    dpt = {f"{g}@1": DualElem(A.counit_point[g], D[g], A.field.zero) for g in A.generators}
    dpt.update({f"{g}@2": DualElem(A.field.one, A.field.zero, A.field.zero) for g in A.generators})
    one = DualElem(A.field.one, A.field.zero, A.field.zero)
    F1 = MultiPoly.constant(1, T2.generators, A.field)
    for t in range(r):
        if na.den[t]:
            F1 = F1 * T2.factors[t] ** na.den[t]
    f1 = DualElem.of(F1.evaluate(dpt, one=one).inverse())
    val = MultiPoly.zero(A.generators, A.field)
    dlt = MultiPoly.zero(A.generators, A.field)
    for e2, part in sorted(groups.items()):
        u = MultiPoly._raw(T2.generators, A.field, part)
        du = u.evaluate(dpt, one=one) * f1
        m = MultiPoly.monomial(e2, A.generators, A.field)
        val = val + m.scale(du.coeff(0))
        dlt = dlt + m.scale(du.coeff(1))
    den2 = na.den[r:]
    zero = A.zero
    return DualElem(A.reduce(AlgElem(A, val, den2)), A.reduce(AlgElem(A, dlt, den2)), zero)


def extend_delta_linear(E: Derivation, x: DualElem) -> DualElem:
    """``E`` applied coefficientwise to ``x = a + d*b``, giving ``E(a) + d*E(b)``."""
    z = E.pres.field.zero
    return DualElem(derive(E, x.value), derive(E, x.delta), z)


def ad_via_dual(C: CorackAlgebra, D: Derivation, E: Derivation) -> Derivation:
    """The adjoint action read off as the d-coefficient of ``E o L#_{dD}``."""
    A = C.pres
    vals = [extend_delta_linear(E, l_sharp(D, C, A.gen(g))).delta for g in A.generators]
    return Derivation(A, tuple(vals))


# -- structure constants --------------------------------------------------------


def structure_constants(C: CorackAlgebra, basis: Sequence[Derivation] | None = None,
                        cross_check: bool = False) -> LeibnizAlgebra:
    A = C.pres
    basis = list(derivation_basis(C) if basis is None else basis)
    n = len(basis)
    consts = {}
    for i in range(n):
        for j in range(n):
            b = bracket(C, basis[i], basis[j], cross_check=cross_check)
            if not is_derivation(b):
                raise TangentError(f"bracket of basis pair {(i, j)} is not a derivation")
            co = coordinates(basis, b)
            if co is None:
                raise TangentError(f"bracket of basis pair {(i, j)} leaves the tangent space")
            for k, c in enumerate(co):
                if c:
                    consts[(i, j, k)] = c
    labels = tuple(b.label or f"b{i}" for i, b in enumerate(basis))
    return LeibnizAlgebra(A.field, n, labels, consts)


def leibniz_algebra(C: CorackAlgebra) -> tuple[list[Derivation], LeibnizAlgebra]:
    basis = derivation_basis(C)
    return basis, structure_constants(C, basis)


# -- Jacobi decomposition ---------------------------------------------------------


@dataclass
class JacobiTerms:
    lhs: object
    total: object
    first: object
    second: object


def jacobi_terms(C: CorackAlgebra, X: Derivation, Y: Derivation, Z: Derivation, g: str) -> JacobiTerms:
    """Triple-jet evaluation of both sides of co-left distributivity at ``g``.

    With points ``p1 = eps + a X``, ``p2 = eps + b Y``, ``p3 = eps + c Z``
    and ``nabla`` read as a map of points, the ``abc``-coefficients of

    * ``nabla_g(p1, nabla(p2, p3))``            -> ``lhs``
    * ``nabla_g(nabla(p1, p2), nabla(p1, p3))`` -> ``total``
    * ``nabla_g(nabla(p1, p2), nabla(e, p3))``  -> ``first``
    * ``nabla_g(nabla(e, p2), nabla(p1, p3))``  -> ``second``
    """
    A = C.pres
    p1, p2, p3 = derivation_jet(X, 1), derivation_jet(Y, 2), derivation_jet(Z, 4)

    def nab(s1, s2) -> dict[str, Jet]:
        return {h: eval_at(C.nabla[h], [s1, s2]) for h in A.generators}

    ng = C.nabla[g]

    def top(s1, s2):
        return eval_at(ng, [s1, s2]).coeff(7)

    return JacobiTerms(
        lhs=top(p1, nab(p2, p3)),
        total=top(nab(p1, p2), nab(p1, p3)),
        first=top(nab(p1, p2), nab(None, p3)),
        second=top(nab(None, p2), nab(p1, p3)),
    )


# -- differentials ----------------------------------------------------------------


def differential(phi: AlgebraHom, D: Derivation) -> Derivation:
    """``D o phi`` for ``phi: O(Q) -> O(R)`` and ``D`` a derivation of ``O(R)``."""
    if D.pres is not phi.target:
        raise TangentError("derivation must live on the target of the algebra map")
    src = phi.source
    return Derivation(src, tuple(derive(D, phi.images[g]) for g in src.generators))


def differential_matrix(phi: AlgebraHom, basis_src: Sequence[Derivation],
                        basis_tgt: Sequence[Derivation]) -> list[list]:
    """Rows: coordinates of ``D o phi`` in ``basis_tgt`` for each ``D`` in ``basis_src``.

    ``basis_src`` lives on ``phi.target`` and ``basis_tgt`` on ``phi.source``
    (tangent maps go against the algebra map).
    """
    rows = []
    for D in basis_src:
        co = coordinates(basis_tgt, differential(phi, D))
        if co is None:
            raise TangentError("differential leaves the target tangent space")
        rows.append(co)
    return rows
