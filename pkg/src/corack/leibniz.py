"""Finite-dimensional Leibniz algebras given by structure constants.

``[b_i, b_j] = sum_k c[i, j, k] b_k``; only nonzero constants are stored.
The (left) Leibniz identity is ``[X,[Y,Z]] = [[X,Y],Z] + [Y,[X,Z]]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from . import linalg
from .field import QQ, Field, field_from_json


class LeibnizError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LeibnizAlgebra:
    field: Field
    dim: int
    basis: tuple[str, ...]
    constants: Mapping[tuple[int, int, int], object]

    def __post_init__(self):
        if len(self.basis) != self.dim:
            raise LeibnizError("basis labels do not match the dimension")
        clean = {}
        for (i, j, k), c in self.constants.items():
            if not all(0 <= t < self.dim for t in (i, j, k)):
                raise LeibnizError(f"structure constant index {(i, j, k)} out of range")
            c = self.field(c)
            if c:
                clean[(i, j, k)] = c
        object.__setattr__(self, "constants", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, dim: int, field: Field = QQ, basis=None) -> LeibnizAlgebra:
        return cls(field, dim, tuple(basis or (f"b{i}" for i in range(dim))), {})

    def basis_bracket(self, i: int, j: int) -> list:
        v = [self.field.zero] * self.dim
        for k in range(self.dim):
            c = self.constants.get((i, j, k))
            if c is not None:
                v[k] = c
        return v

    def unit(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def same_constants(self, other: LeibnizAlgebra) -> bool:
        return self.dim == other.dim and self.constants == other.constants

    def __eq__(self, other):
        if not isinstance(other, LeibnizAlgebra):
            return NotImplemented
        return (self.field == other.field and self.basis == other.basis
                and self.same_constants(other))

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "dim": self.dim,
            "basis": list(self.basis),
            "constants": [{"i": i, "j": j, "k": k, "c": self.field.format(c)}
                          for (i, j, k), c in self.constants.items()],
        }

    @classmethod
    def from_json(cls, obj: dict, field: Field | None = None) -> LeibnizAlgebra:
        try:
            dim = int(obj["dim"])
            basis = tuple(str(b) for b in obj.get("basis", [f"b{i}" for i in range(dim)]))
            if field is None:
                field = field_from_json(obj["field"]) if "field" in obj else QQ
            consts = {(int(e["i"]), int(e["j"]), int(e["k"])): field.parse(str(e["c"]))
                      for e in obj.get("constants", [])}
        except (KeyError, TypeError, ValueError) as exc:
            raise LeibnizError(f"malformed Leibniz algebra JSON: {exc}") from None
        return cls(field, dim, basis, consts)


def lb_bracket(g: LeibnizAlgebra, u: Sequence, v: Sequence) -> list:
    if len(u) != g.dim or len(v) != g.dim:
        raise LeibnizError("vector length does not match the dimension")
    out = [g.field.zero] * g.dim
    for (i, j, k), c in g.constants.items():
        if u[i] and v[j]:
            out[k] = out[k] + u[i] * v[j] * c
    return out


@dataclass
class IdentityReport:
    leibniz: bool
    lie: bool
    abelian: bool
    witnesses: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"leibniz": self.leibniz, "lie": self.lie, "abelian": self.abelian,
                "witnesses": self.witnesses}


def leibniz_witness(g: LeibnizAlgebra) -> tuple[int, int, int] | None:
    """First basis triple violating the Leibniz identity, or None."""
    n = g.dim
    br = [[g.basis_bracket(i, j) for j in range(n)] for i in range(n)]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = lb_bracket(g, g.unit(x), br[y][z])
                r1 = lb_bracket(g, br[x][y], g.unit(z))
                r2 = lb_bracket(g, g.unit(y), br[x][z])
                if any(a != b + c for a, b, c in zip(lhs, r1, r2)):
                    return (x, y, z)
    return None


def check_identities(g: LeibnizAlgebra) -> IdentityReport:
    wl = leibniz_witness(g)
    lie_w = None
    for i in range(g.dim):
        if any(g.constants.get((i, i, k)) for k in range(g.dim)):
            lie_w = (i, i)
            break
        for j in range(i + 1, g.dim):
            if any(g.constants.get((i, j, k), 0) + g.constants.get((j, i, k), 0)
                   for k in range(g.dim)):
                lie_w = (i, j)
                break
        if lie_w:
            break
    ab_w = next(iter(g.constants), None)
    wit = {}
    if wl:
        wit["leibniz"] = list(wl)
    if lie_w:
        wit["lie"] = list(lie_w)
    if ab_w:
        wit["abelian"] = list(ab_w[:2])
    return IdentityReport(wl is None, lie_w is None, ab_w is None, wit)


@dataclass(eq=False)
class Subspace:
    """A subspace of an algebra, kept as reduced echelon rows."""

    ambient: LeibnizAlgebra
    rows: list = dc_field(default_factory=list)

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ambient.dim:
                raise LeibnizError("spanning vector has the wrong length")
        self.rows, _ = linalg.rref(self.rows, self.ambient.field) if self.rows else ([], [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v) -> bool:
        if all(not x for x in v):
            return True
        return linalg.in_span(self.rows, v, self.ambient.field)

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(r) for r in other.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.rows == other.rows

    __hash__ = None

    def to_json(self) -> list[list[str]]:
        f = self.ambient.field
        return [[f.format(x) for x in r] for r in self.rows]


def span(g: LeibnizAlgebra, vectors) -> Subspace:
    return Subspace(g, [list(v) for v in vectors])


def left_center(g: LeibnizAlgebra) -> Subspace:
    """``{X : [X, b_j] = 0 for all j}``."""
    n = g.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([g.constants.get((i, j, k), g.field.zero) for i in range(n)])
    return Subspace(g, linalg.nullspace(rows, n, g.field) if n else [])


def subspace_classify(g: LeibnizAlgebra, S: Subspace) -> str:
    if S.ambient is not g and S.ambient.dim != g.dim:
        raise LeibnizError("subspace lives in a different algebra")
    if not all(S.contains(lb_bracket(g, g.unit(i), s)) for i in range(g.dim) for s in S.rows):
        if all(S.contains(lb_bracket(g, a, b)) for a in S.rows for b in S.rows):
            return "subalgebra"
        return "none"
    return "left-ideal"


def omni_lie(n: int, field: Field = QQ) -> LeibnizAlgebra:
    """``gl_n (+) k^n`` with ``[(X,v),(Y,w)] = (XY - YX, Xw)``; basis ``E_ij`` then ``e_k``."""
    if not 0 <= n <= 4:
        raise LeibnizError("omni_lie supports 0 <= n <= 4")
    return _omni(n, field)


def _omni(n: int, field: Field) -> LeibnizAlgebra:
    def E(i, j):
        return i * n + j

    def e(k):
        return n * n + k

    c: dict = {}

    def add(key, v):
        c[key] = c.get(key, 0) + v

    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        add((E(i, j), E(k, l), E(i, l)), 1)
                    if l == i:
                        add((E(i, j), E(k, l), E(k, j)), -1)
            add((E(i, j), e(j), e(i)), 1)
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)] + [f"e{k + 1}" for k in range(n)]
    return LeibnizAlgebra(field, n * n + n, tuple(labels), c)


def gl_commutator(n: int, field: Field = QQ) -> LeibnizAlgebra:
    """Matrix commutators ``[E_pq, E_rs] = d_qr E_ps - d_sp E_rq``."""
    c: dict = {}
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if q == r:
                        key = (p * n + q, r * n + s, p * n + s)
                        c[key] = c.get(key, 0) + 1
                    if s == p:
                        key = (p * n + q, r * n + s, r * n + q)
                        c[key] = c.get(key, 0) - 1
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return LeibnizAlgebra(field, n * n, tuple(labels), c)


def hom_check(psi: Sequence[Sequence], g: LeibnizAlgebra, h: LeibnizAlgebra) -> bool:
    """Whether ``psi`` (row ``i`` = image of ``b_i``) preserves brackets."""
    if len(psi) != g.dim or any(len(r) != h.dim for r in psi):
        raise LeibnizError("map shape does not match the algebras")
    return hom_witness(psi, g, h) is None


def apply_map(psi, v, field) -> list:
    m = len(psi[0]) if psi else 0
    out = [field.zero] * m
    for i, x in enumerate(v):
        if x:
            for k in range(m):
                out[k] = out[k] + x * psi[i][k]
    return out


def hom_witness(psi, g: LeibnizAlgebra, h: LeibnizAlgebra) -> tuple[int, int] | None:
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = apply_map(psi, g.basis_bracket(i, j), h.field) if psi else []
            rhs = lb_bracket(h, psi[i], psi[j])
            if lhs != rhs:
                return (i, j)
    return None


def adjoint_omni_embed(g: LeibnizAlgebra) -> tuple[LeibnizAlgebra, list[list]]:
    """``X -> ([X, -], X)`` into ``ol(dim g)``; returns the target and the map rows.

    Raises if the map fails to be injective or bracket-preserving.
    """
    m = g.dim
    target = _omni(m, g.field)
    rows = []
    for i in range(m):
        v = [g.field.zero] * (m * m + m)
        for j in range(m):
            for k in range(m):
                c = g.constants.get((i, j, k))
                if c is not None:
                    v[k * m + j] = c
        v[m * m + i] = g.field.one
        rows.append(v)
    if linalg.rank(rows, g.field) != m:
        raise LeibnizError("adjoint omni-embedding is not injective")
    w = hom_witness(rows, g, target)
    if w is not None:
        raise LeibnizError(f"adjoint omni-embedding breaks the bracket on basis pair {w}")
    return target, rows
