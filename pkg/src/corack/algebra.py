"""Finitely presented commutative algebras, localized at invertible factors.

An algebra is ``k[g_1..g_n, 1/f_1..1/f_r] / (relations)`` together with a
counit point. Plain presentations carry at most one denominator ``d``
(so ``r <= 1``); tensor powers keep the renamed copies ``d@1, d@2, ...`` as
separate invertible factors so fractions stay small.

Elements are ``num / prod(f_i ** e_i)``. Equality is decided by
cross-multiplication and Groebner normal forms, which is sound only when
every factor is a nonzerodivisor modulo the relations. The library does not
prove that; presentations record it as an assertion.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Mapping

from .field import Field, Mod, field_from_json
from .groebner import GroebnerBasis, buchberger, normal_form
from .poly import MultiPoly, PolyError, parse_fraction, parse_poly


class AlgebraError(ValueError):
    pass


class HomError(AlgebraError):
    pass


def copy_name(name: str, i: int) -> str:
    return f"{name}@{i}"


class Presentation:
    """A presented commutative algebra with counit; immutable after construction."""

    def __init__(
        self,
        field: Field,
        generators: Iterable[str],
        relations: Iterable[MultiPoly | str] = (),
        denominator: MultiPoly | str | None = None,
        counit: Mapping[str, object] | None = None,
        *,
        factors: Iterable[MultiPoly] | None = None,
        groebner: GroebnerBasis | None = None,
        denominator_nzd: bool = True,
        allow_reserved: bool = False,
    ):
        self.field = field
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise AlgebraError("generator names must be distinct")
        if not allow_reserved:
            for g in self.generators:
                if "@" in g:
                    raise AlgebraError(f"generator name {g!r} uses the reserved '@' copy suffix")
        self.relations = tuple(self._as_poly(r) for r in relations)
        if factors is not None:
            self.factors = tuple(factors)
        elif denominator is not None:
            self.factors = (self._as_poly(denominator),)
        else:
            self.factors = ()
        for f in self.factors:
            if f.is_zero():
                raise AlgebraError("zero denominator")
        self.denominator_nzd = denominator_nzd
        counit = dict(counit or {})
        missing = [g for g in self.generators if g not in counit]
        if missing:
            raise AlgebraError(f"counit missing values for {missing}")
        self.counit_point = {g: field(counit[g]) if not isinstance(counit[g], str) else field.parse(counit[g])
                             for g in self.generators}
        for r in self.relations:
            if r.evaluate(self.counit_point):
                raise AlgebraError(f"counit does not annihilate relation {r}")
        for f in self.factors:
            if not f.evaluate(self.counit_point):
                raise AlgebraError(f"counit vanishes on denominator {f}")
        self.gb = groebner if groebner is not None else buchberger(list(self.relations))
        self._leads = [(*g.leading(), g) for g in self.gb.polys]
        self._fpow: dict = {}
        self._tensors: dict = {}
        self._one = MultiPoly.constant(1, self.generators, field)
        self.base = self
        self.power = 1

    # -- helpers ------------------------------------------------------------

    def _as_poly(self, p) -> MultiPoly:
        if isinstance(p, str):
            return parse_poly(p, self.generators, self.field)
        if p.vars != self.generators:
            raise AlgebraError("polynomial is over a different variable list")
        return p

    @property
    def denominator(self) -> MultiPoly | None:
        if not self.factors:
            return None
        d = self._one
        for f in self.factors:
            d = d * f
        return d

    @property
    def nfactors(self) -> int:
        return len(self.factors)

    def factor_power(self, i: int, k: int) -> MultiPoly:
        if k == 0:
            return self._one
        key = (i, k)
        p = self._fpow.get(key)
        if p is None:
            p = self.factors[i] if k == 1 else self.factor_power(i, k - 1) * self.factors[i]
            self._fpow[key] = p
        return p

    def factor_monomial(self, exps) -> MultiPoly:
        p = self._one
        for i, k in enumerate(exps):
            if k:
                p = p * self.factor_power(i, k)
        return p

    def poly(self, text: str) -> MultiPoly:
        return parse_poly(text, self.generators, self.field)

    def nf(self, p: MultiPoly) -> MultiPoly:
        if not self._leads or p.is_zero():
            return p
        return normal_form(p, self.gb)

    # -- elements -----------------------------------------------------------

    @property
    def zero(self) -> AlgElem:
        return AlgElem(self, MultiPoly.zero(self.generators, self.field), (0,) * self.nfactors)

    @property
    def one(self) -> AlgElem:
        return AlgElem(self, self._one, (0,) * self.nfactors)

    def scalar(self, c) -> AlgElem:
        return AlgElem(self, MultiPoly.constant(c, self.generators, self.field), (0,) * self.nfactors)

    def gen(self, name: str) -> AlgElem:
        return AlgElem(self, MultiPoly.var(name, self.generators, self.field), (0,) * self.nfactors)

    def gens(self) -> list[AlgElem]:
        return [self.gen(g) for g in self.generators]

    def elem(self, num: MultiPoly | str, den=None) -> AlgElem:
        num = self._as_poly(num)
        if den is None:
            den = (0,) * self.nfactors
        elif isinstance(den, int):
            den = (den,)
        den = tuple(den)
        if len(den) != self.nfactors or any(k < 0 for k in den):
            raise AlgebraError(f"bad denominator exponents {den}")
        return AlgElem(self, num, den)

    def factor_inverse(self, i: int) -> AlgElem:
        den = [0] * self.nfactors
        den[i] = 1
        return AlgElem(self, self._one, tuple(den))

    def parse_elem(self, text: str) -> AlgElem:
        """Parse ``num`` or ``num / den`` with ``den`` a unit up to relations."""
        num, den = parse_fraction(text, self.generators, self.field)
        if den.is_constant():
            return self.elem(num.scale(self.field.one / den.constant_value()))
        u = self.unit_decompose(den)
        if u is None:
            raise AlgebraError(f"denominator of {text!r} is not a unit of the presentation")
        c, exps = u
        return self.elem(num.scale(self.field.one / c), exps)

    def unit_decompose(self, q: MultiPoly) -> tuple[object, tuple[int, ...]] | None:
        """Find ``c, a`` with ``q == c * prod(f_i ** a_i)`` modulo the relations."""
        if q.is_zero():
            return None
        for cand in (q, self.nf(q)):
            if cand.is_zero():
                continue
            r = cand
            exps = [0] * self.nfactors
            progress = True
            while progress and not r.is_constant():
                progress = False
                for i, f in enumerate(self.factors):
                    t = r.divide_exact(f)
                    if t is not None:
                        r = t
                        exps[i] += 1
                        progress = True
            if r.is_constant():
                return r.constant_value(), tuple(exps)
            r = self.nf(r)
            if r.is_constant() and r:
                return r.constant_value(), tuple(exps)
        if not self.factors:
            return None
        target = self.nf(q)
        if target.is_zero():
            return None
        bound = q.degree() + 2
        fdeg = min(max(f.degree(), 1) for f in self.factors)
        for exps in iproduct(range(bound // fdeg + 1), repeat=self.nfactors):
            if sum(exps) * fdeg > bound + fdeg:
                continue
            m = self.nf(self.factor_monomial(exps))
            if m.is_zero() or len(m) != len(target):
                continue
            e0, c0 = m.leading()
            t0 = target.terms.get(e0)
            if t0 is None:
                continue
            c = t0 / c0
            if m.scale(c) == target:
                return c, tuple(exps)
        return None

    def unit_inverse(self, q: MultiPoly, max_exponent: int = 3, max_unknowns: int = 400) -> AlgElem | None:
        """Inverse of ``q`` as ``m / prod(f_i ** a_i)``, or None if none is found.

        Tries :meth:`unit_decompose` first, then solves ``q * m == prod f^a``
        modulo the relations for ``m`` among standard monomials of bounded
        degree (exact linear algebra, smallest exponents first).
        """
        u = self.unit_decompose(q)
        if u is not None:
            c, exps = u
            return AlgElem(self, self._one.scale(self.field.one / c), exps)
        qn = self.nf(q)
        if qn.is_zero():
            return None
        from . import linalg
        from .poly import iter_exps

        leads = [lg for lg, _, _ in self._leads]
        for total in range(max_exponent + 1):
            for exps in _compositions(total, self.nfactors):
                target = self.nf(self.factor_monomial(exps))
                deg = max(target.degree(), 0) + 1
                monos = [e for e in iter_exps(len(self.generators), deg)
                         if not any(all(x <= y for x, y in zip(lg, e)) for lg in leads)]
                if len(monos) > max_unknowns:
                    continue
                cols = [self.nf(qn.mul_monomial(e, self.field.one)) for e in monos]
                keys = sorted({k for c in cols for k in c.terms} | set(target.terms))
                rows = [[c.terms.get(k, self.field.zero) for k in keys] for c in cols]
                rhs = [target.terms.get(k, self.field.zero) for k in keys]
                sol = linalg.solve_in_span(rows, rhs, self.field)
                if sol is None:
                    continue
                m = MultiPoly._raw(self.generators, self.field,
                                   {e: a for e, a in zip(monos, sol) if a})
                return AlgElem(self, m, tuple(exps))
        return None

    def equal(self, a: AlgElem, b: AlgElem) -> bool:
        if a.pres is not self or b.pres is not self:
            a, b = self.coerce(a), self.coerce(b)
        top = tuple(max(x, y) for x, y in zip(a.den, b.den))
        lhs = a.num * self.factor_monomial([t - x for t, x in zip(top, a.den)])
        rhs = b.num * self.factor_monomial([t - y for t, y in zip(top, b.den)])
        return self.nf(lhs - rhs).is_zero()

    def coerce(self, a) -> AlgElem:
        if isinstance(a, AlgElem):
            if a.pres is self:
                return a
            if a.pres.generators == self.generators and a.pres.field == self.field \
                    and a.pres.nfactors == self.nfactors:
                return AlgElem(self, a.num, a.den)
            raise AlgebraError("element belongs to a different presentation")
        if isinstance(a, MultiPoly):
            return self.elem(a)
        if isinstance(a, str):
            return self.parse_elem(a)
        return self.scalar(a)

    def counit(self, a: AlgElem):
        a = self.coerce(a)
        v = a.num.evaluate(self.counit_point)
        for i, k in enumerate(a.den):
            if k:
                v = v / self.factors[i].evaluate(self.counit_point) ** k
        return v

    def reduce(self, a: AlgElem) -> AlgElem:
        """Normal-form the numerator and cancel factors that divide it exactly."""
        num = self.nf(a.num)
        den = list(a.den)
        if num.is_zero():
            return AlgElem(self, num, (0,) * self.nfactors)
        for i, k in enumerate(den):
            while den[i] and not num.is_constant():
                t = num.divide_exact(self.factors[i])
                if t is None:
                    break
                num = self.nf(t)
                den[i] -= 1
        return AlgElem(self, num, tuple(den))

    # -- tensor powers ------------------------------------------------------

    def tensor(self, n: int) -> Presentation:
        if n < 1:
            raise AlgebraError("tensor power must be >= 1")
        t = self._tensors.get(n)
        if t is None:
            t = tensor_power(self, n)
            self._tensors[n] = t
        return t

    def copy_map(self, n: int, i: int) -> dict[str, str]:
        """Names of copy ``i`` inside the ``n``-th tensor power."""
        return {g: copy_name(g, i) for g in self.generators}

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        if self.nfactors > 1:
            raise AlgebraError("tensor presentations are not serialized")
        d = self.denominator
        return {
            "field": self.field.to_json(),
            "generators": list(self.generators),
            "relations": [str(r) for r in self.relations],
            "denominator": None if d is None else str(d),
            "counit": {g: self.field.format(self.counit_point[g]) for g in self.generators},
        }

    @classmethod
    def from_json(cls, obj: dict) -> Presentation:
        for key in ("field", "generators", "counit"):
            if key not in obj:
                raise AlgebraError(f"presentation JSON lacks {key!r}")
        field = field_from_json(obj["field"])
        gens = [str(g) for g in obj["generators"]]
        counit = {g: field.parse(str(v)) for g, v in obj["counit"].items()}
        return cls(field, gens, [str(r) for r in obj.get("relations", [])],
                   obj.get("denominator"), counit)

    def __repr__(self):
        return (f"Presentation({self.field}, gens={list(self.generators)}, "
                f"rels={[str(r) for r in self.relations]}, factors={[str(f) for f in self.factors]})")


def _compositions(total: int, parts: int):
    """Exponent vectors of length ``parts`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def tensor_power(A: Presentation, n: int) -> Presentation:
    """``A`` tensored with itself ``n`` times, generators renamed ``g@i``."""
    if any("@" in g for g in A.generators):
        raise AlgebraError("cannot take tensor powers of a tensor presentation")
    gens = [copy_name(g, i) for i in range(1, n + 1) for g in A.generators]
    rels, factors, gb = [], [], []
    counit = {}
    for i in range(1, n + 1):
        ren = A.copy_map(n, i)
        rels += [r.rename(gens, ren) for r in A.relations]
        factors += [f.rename(gens, ren) for f in A.factors]
        gb += [g.rename(gens, ren) for g in A.gb.polys]
        counit.update({ren[g]: A.counit_point[g] for g in A.generators})
    basis = GroebnerBasis(tuple(gens), A.field, tuple(gb)) if gb else GroebnerBasis((), None, ())
    T = Presentation(A.field, gens, rels, counit=counit, factors=factors, groebner=basis,
                     denominator_nzd=A.denominator_nzd, allow_reserved=True)
    T.base = A
    T.power = n
    return T


def tpow(A: Presentation, n: int) -> Presentation:
    """``A`` itself for ``n == 1``, else its ``n``-th tensor power."""
    return A if n == 1 else A.tensor(n)


def relabel(a: AlgElem, target: Presentation, slots: Mapping[int, int]) -> AlgElem:
    """Move tensor slot ``i`` of ``a`` to slot ``slots[i]`` of ``target``.

    Source and target are tensor powers of one base algebra (power 1 is the
    base itself). Sending two slots to the same place multiplies them.
    """
    src = a.pres
    A = src.base
    if target.base is not A:
        raise AlgebraError("relabel needs tensor powers of one algebra")
    r = A.nfactors

    def name(g: str, j: int) -> str:
        return g if target.power == 1 else copy_name(g, j)

    mapping = {}
    for i in range(1, src.power + 1):
        j = slots[i]
        for g in A.generators:
            mapping[g if src.power == 1 else copy_name(g, i)] = name(g, j)
    num = a.num.rename(target.generators, mapping)
    den = [0] * target.nfactors
    for i in range(1, src.power + 1):
        for t in range(r):
            k = a.den[(i - 1) * r + t]
            if k:
                den[(slots[i] - 1) * r + t] += k
    return AlgElem(target, num, tuple(den))


def tensor_hom(A: Presentation, m: int, n: int, plan) -> AlgebraHom:
    """Algebra map ``A^m -> A^n`` assembled slot by slot.

    ``plan[s]`` for source slot ``s`` (0-based) is ``(images, slots)``:
    ``images`` maps each generator of ``A`` to an element of ``A^len(slots)``
    which is placed into target slots ``slots``; ``images=None`` with
    ``slots=()`` applies the counit on that slot.
    """
    src, dst = tpow(A, m), tpow(A, n)
    out = {}
    for s, (images, slots) in enumerate(plan, start=1):
        for g in A.generators:
            key = g if m == 1 else copy_name(g, s)
            if images is None:
                out[key] = dst.scalar(A.counit_point[g])
            else:
                smap = {i: j for i, j in enumerate(slots, start=1)}
                out[key] = relabel(images[g], dst, smap)
    return AlgebraHom(src, dst, out, trusted=True)


def identity_images(A: Presentation) -> dict[str, AlgElem]:
    return {g: A.gen(g) for g in A.generators}


class AlgElem:
    """``num / prod(f_i ** den_i)`` in a presentation; ``==`` is semantic."""

    __slots__ = ("pres", "num", "den")

    def __init__(self, pres: Presentation, num: MultiPoly, den: tuple[int, ...]):
        self.pres = pres
        self.num = num
        self.den = den

    @property
    def m(self) -> int:
        """Denominator exponent (for single-denominator presentations)."""
        return max(self.den, default=0)

    def _lift(self, other) -> AlgElem | None:
        if isinstance(other, AlgElem):
            if other.pres is not self.pres:
                other = self.pres.coerce(other)
            return other
        if isinstance(other, (int, Fraction, Mod)):
            return self.pres.scalar(other)
        if isinstance(other, MultiPoly):
            return self.pres.elem(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return AlgElem(self.pres, self.num + o.num, self.den)
        top = tuple(max(x, y) for x, y in zip(self.den, o.den))
        p = self.pres
        a = self.num * p.factor_monomial([t - x for t, x in zip(top, self.den)])
        b = o.num * p.factor_monomial([t - y for t, y in zip(top, o.den)])
        return AlgElem(p, a + b, top)

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.pres, -self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Mod)):
            return AlgElem(self.pres, self.num.scale(other), self.den)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.pres, self.num * o.num, tuple(x + y for x, y in zip(self.den, o.den)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = self.pres.one
        b = self
        while k:
            if k & 1:
                r = r * b
            k >>= 1
            if k:
                b = b * b
        return r

    def inverse(self) -> AlgElem:
        """Inverse of a unit ``c * prod(f_i ** a_i) / prod(f_i ** den_i)``."""
        p = self.pres
        u = p.unit_decompose(self.num)
        if u is not None:
            c, exps = u
            return AlgElem(p, p.factor_monomial(self.den).scale(p.field.one / c), exps)
        inv = p.unit_inverse(self.num)
        if inv is None:
            raise AlgebraError(f"{self} is not a recognizable unit")
        return AlgElem(p, inv.num * p.factor_monomial(self.den), inv.den)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.pres.equal(self, o)

    __hash__ = None

    def __bool__(self):
        return not self.pres.equal(self, self.pres.zero)

    def reduced(self) -> AlgElem:
        return self.pres.reduce(self)

    def __str__(self):
        return format_elem(self)

    def __repr__(self):
        return f"AlgElem({format_elem(self)!r})"


def format_elem(a: AlgElem) -> str:
    num = str(a.num)
    if not any(a.den):
        return num
    parts = []
    for i, k in enumerate(a.den):
        if k:
            f = f"({a.pres.factors[i]})"
            parts.append(f if k == 1 else f"{f}^{k}")
    return f"({num})/({'*'.join(parts)})"


def elem_equal(A: Presentation, a: AlgElem, b: AlgElem) -> bool:
    return A.equal(a, b)


def counit_eval(A: Presentation, a: AlgElem):
    return A.counit(a)


# -- homomorphisms ----------------------------------------------------------


class AlgebraHom:
    """A k-algebra map given by generator images.

    ``trusted`` marks structural maps built by the library itself; others
    should be checked with :func:`hom_verify`.
    """

    def __init__(self, source: Presentation, target: Presentation,
                 images: Mapping[str, AlgElem | MultiPoly | str | int], trusted: bool = False):
        self.source = source
        self.target = target
        missing = [g for g in source.generators if g not in images]
        if missing:
            raise HomError(f"no image for generators {missing}")
        self.images = {g: target.coerce(images[g]) for g in source.generators}
        self.trusted = trusted
        self._finv: dict[int, AlgElem] = {}
        self._plain = all(not any(v.den) for v in self.images.values())

    def apply_poly(self, p: MultiPoly) -> AlgElem:
        if p.vars != self.source.generators:
            p = p.rename(self.source.generators)
        if self._plain:
            pts = {g: v.num for g, v in self.images.items()}
            num = p.evaluate(pts, one=self.target._one)
            return AlgElem(self.target, num, (0,) * self.target.nfactors)
        return p.evaluate(self.images, one=self.target.one)

    def factor_inverse(self, i: int) -> AlgElem:
        inv = self._finv.get(i)
        if inv is None:
            img = self.apply_poly(self.source.factors[i])
            try:
                inv = img.inverse()
            except AlgebraError:
                raise HomError(f"image of denominator {self.source.factors[i]} is not invertible "
                               f"in the target") from None
            self._finv[i] = inv
        return inv

    def __call__(self, a) -> AlgElem:
        return self.apply(a)

    def apply(self, a, reduce: bool = True) -> AlgElem:
        a = self.source.coerce(a)
        r = self.apply_poly(a.num)
        for i, k in enumerate(a.den):
            if k:
                r = r * self.factor_inverse(i) ** k
        return self.target.reduce(r) if reduce else r

    def compose(self, inner: AlgebraHom) -> AlgebraHom:
        """``self ∘ inner`` (apply ``inner`` first)."""
        if inner.target is not self.source:
            raise HomError("maps are not composable")
        return AlgebraHom(inner.source, self.target,
                          {g: self.apply(v) for g, v in inner.images.items()},
                          trusted=self.trusted and inner.trusted)

    def __repr__(self):
        imgs = ", ".join(f"{g} -> {v}" for g, v in self.images.items())
        return f"AlgebraHom({imgs})"


def hom_apply(phi: AlgebraHom, a: AlgElem) -> AlgElem:
    return phi.apply(a)


def identity_hom(A: Presentation) -> AlgebraHom:
    return AlgebraHom(A, A, {g: A.gen(g) for g in A.generators}, trusted=True)


def inclusion(A: Presentation, n: int, i: int) -> AlgebraHom:
    """``f -> f@i`` from ``A`` into its ``n``-th tensor power."""
    T = A.tensor(n)
    ren = A.copy_map(n, i)
    return AlgebraHom(A, T, {g: T.gen(ren[g]) for g in A.generators}, trusted=True)


def counit_hom(A: Presentation) -> AlgebraHom:
    """The counit as a map to the generator-free presentation of k."""
    k = Presentation(A.field, (), counit={})
    return AlgebraHom(A, k, {g: k.scalar(A.counit_point[g]) for g in A.generators}, trusted=True)


@dataclass
class HomReport:
    relations: list[dict] = dc_field(default_factory=list)
    counit: list[dict] = dc_field(default_factory=list)
    denominator: dict | None = None

    @property
    def ok(self) -> bool:
        return (all(r["ok"] for r in self.relations) and all(c["ok"] for c in self.counit)
                and (self.denominator is None or self.denominator["ok"]))

    def to_json(self) -> dict:
        return {"ok": self.ok, "relations": self.relations, "counit": self.counit,
                "denominator": self.denominator}


def hom_verify(phi: AlgebraHom, check_counit: bool = True) -> HomReport:
    rep = HomReport()
    T = phi.target
    for r in phi.source.relations:
        img = phi.apply_poly(r)
        rep.relations.append({"relation": str(r), "ok": T.equal(img, T.zero)})
    if phi.source.factors:
        try:
            for i in range(phi.source.nfactors):
                phi.factor_inverse(i)
            rep.denominator = {"ok": True}
        except HomError as exc:
            rep.denominator = {"ok": False, "error": str(exc)}
    if check_counit:
        for g in phi.source.generators:
            lhs = T.counit(phi.images[g])
            rhs = phi.source.counit_point[g]
            rep.counit.append({"generator": g, "ok": lhs == rhs})
    return rep
