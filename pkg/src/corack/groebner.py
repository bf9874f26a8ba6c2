"""Reduced Groebner bases (Buchberger) and normal forms under grevlex."""

from __future__ import annotations

from dataclasses import dataclass
from operator import add

from .poly import Exp, MultiPoly, divides, grevlex_key, lcm_exp


@dataclass(frozen=True)
class GroebnerBasis:
    vars: tuple[str, ...]
    field: object
    polys: tuple[MultiPoly, ...]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def leads(self) -> list[tuple[Exp, object]]:
        return [g.leading() for g in self.polys]


def _monic(p: MultiPoly) -> MultiPoly:
    _, c = p.leading()
    return p if c == 1 else p.scale(p.field.one / c)


def _reduce_terms(terms: dict, basis: list[tuple[Exp, object, MultiPoly]], field, full=True) -> dict:
    """Multivariate division remainder of a term dict (mutated copy)."""
    rem = {}
    p = dict(terms)
    while p:
        e = max(p, key=grevlex_key)
        c = p[e]
        for lg, cg, g in basis:
            if divides(lg, e):
                m = tuple(x - y for x, y in zip(e, lg))
                f = c / cg
                for ge, gc in g.terms.items():
                    t = tuple(map(add, ge, m))
                    s = p.get(t)
                    s = -(gc * f) if s is None else s - gc * f
                    if s:
                        p[t] = s
                    else:
                        p.pop(t, None)
                break
        else:
            rem[e] = c
            del p[e]
            if not full:
                rem.update(p)
                break
    return rem


def normal_form(p: MultiPoly, G: GroebnerBasis | list[MultiPoly]) -> MultiPoly:
    """Remainder of ``p`` on division by ``G``; unique when ``G`` is a Groebner basis."""
    polys = list(G.polys if isinstance(G, GroebnerBasis) else G)
    if not polys or p.is_zero():
        return p
    basis = [(*g.leading(), g) for g in polys]
    return MultiPoly._raw(p.vars, p.field, _reduce_terms(p.terms, basis, p.field))


def _spoly(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    lf, cf = f.leading()
    lg, cg = g.leading()
    l = lcm_exp(lf, lg)
    mf = tuple(x - y for x, y in zip(l, lf))
    mg = tuple(x - y for x, y in zip(l, lg))
    one = f.field.one
    return f.mul_monomial(mf, one / cf) - g.mul_monomial(mg, one / cg)


def buchberger(relations: list[MultiPoly]) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``relations``.

    Normal selection strategy (smallest lcm first) with Buchberger's
    product and chain criteria.
    """
    relations = [r for r in relations if not r.is_zero()]
    if not relations:
        return GroebnerBasis((), None, ())
    vars, field = relations[0].vars, relations[0].field
    for r in relations:
        r._check(relations[0])

    G: list[MultiPoly] = []
    leads: list[Exp] = []
    pairs: set[tuple[int, int]] = set()

    def insert(h: MultiPoly):
        h = _monic(h)
        j = len(G)
        G.append(h)
        leads.append(h.leading()[0])
        for i in range(j):
            pairs.add((i, j))

    for r in relations:
        basis = [(lg, 1, g) for lg, g in zip(leads, G)]
        h = MultiPoly._raw(vars, field, _reduce_terms(r.terms, basis, field))
        if not h.is_zero():
            if h.is_constant():
                return GroebnerBasis(vars, field, (MultiPoly.constant(1, vars, field),))
            insert(h)

    done: set[tuple[int, int]] = set()
    while pairs:
        i, j = min(pairs, key=lambda ij: (grevlex_key(lcm_exp(leads[ij[0]], leads[ij[1]])), ij))
        pairs.discard((i, j))
        done.add((i, j))
        li, lj = leads[i], leads[j]
        l = lcm_exp(li, lj)
        if all(min(x, y) == 0 for x, y in zip(li, lj)):
            continue
        chain = False
        for k in range(len(G)):
            if k in (i, j) or not divides(leads[k], l):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik not in pairs and pjk not in pairs:
                chain = True
                break
        if chain:
            continue
        s = _spoly(G[i], G[j])
        basis = [(lg, 1, g) for lg, g in zip(leads, G)]
        h = MultiPoly._raw(vars, field, _reduce_terms(s.terms, basis, field))
        if not h.is_zero():
            if h.is_constant():
                return GroebnerBasis(vars, field, (MultiPoly.constant(1, vars, field),))
            insert(h)

    return GroebnerBasis(vars, field, tuple(_interreduce(G)))


def _interreduce(G: list[MultiPoly]) -> list[MultiPoly]:
    leads = [g.leading()[0] for g in G]
    keep = []
    for i, g in enumerate(G):
        redundant = False
        for j, lj in enumerate(leads):
            if j == i:
                continue
            if divides(lj, leads[i]) and (lj != leads[i] or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = [(*h.leading(), h) for k, h in enumerate(keep) if k != i]
        r = MultiPoly._raw(g.vars, g.field, _reduce_terms(g.terms, others, g.field))
        out.append(_monic(r))
    out.sort(key=lambda g: grevlex_key(g.leading()[0]))
    return out


def is_groebner(polys: list[MultiPoly]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if not normal_form(_spoly(polys[i], polys[j]), polys).is_zero():
                return False
    return True
