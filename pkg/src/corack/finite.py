"""Pointed racks on finite operation tables.

Tables are indexed ``op[x][y] = x |> y`` and ``op_inv[y][x] = y |>^-1 x``,
the inverse of left multiplication by ``x`` applied to ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import permutations, product
from typing import Iterator, Sequence

import numpy as np

from . import _kernels as K
from .field import QQ, Field

AXIOM_NAMES = ("Q1", "Q2", "Q3", "Q4", "Q5")
FILTERS = ("all", "quandle", "coassociative-dual", "cocommutative-dual")
MAX_ENUM = 4


class FiniteError(ValueError):
    pass


def _table(rows, n: int, what: str) -> tuple[tuple[int, ...], ...]:
    try:
        t = tuple(tuple(int(v) for v in r) for r in rows)
    except (TypeError, ValueError):
        raise FiniteError(f"{what} must be a list of integer rows") from None
    if len(t) != n or any(len(r) != n for r in t):
        raise FiniteError(f"{what} must be {n}x{n}")
    if any(not 0 <= v < n for r in t for v in r):
        raise FiniteError(f"{what} has entries outside [0, {n})")
    return t


def invert_rows(op) -> tuple[tuple[int, ...], ...]:
    """``op_inv`` from ``op`` by inverting each row; non-bijective rows leave gaps as 0."""
    n = len(op)
    inv = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            inv[op[x][y]][x] = y
    return tuple(tuple(r) for r in inv)


@dataclass(frozen=True)
class FiniteRack:
    size: int
    unit: int
    op: tuple[tuple[int, ...], ...]
    op_inv: tuple[tuple[int, ...], ...]

    @classmethod
    def from_tables(cls, op, unit: int = 0, op_inv=None) -> FiniteRack:
        n = len(op)
        if n < 1:
            raise FiniteError("a rack needs at least one element")
        if not 0 <= unit < n:
            raise FiniteError("unit out of range")
        t = _table(op, n, "op")
        ti = invert_rows(t) if op_inv is None else _table(op_inv, n, "op_inv")
        return cls(n, unit, t, ti)

    def to_json(self) -> dict:
        return {"size": self.size, "unit": self.unit,
                "op": [list(r) for r in self.op], "op_inv": [list(r) for r in self.op_inv]}

    @classmethod
    def from_json(cls, obj: dict) -> FiniteRack:
        if "op" not in obj:
            raise FiniteError("rack JSON lacks 'op'")
        n = int(obj.get("size", len(obj["op"])))
        if n != len(obj["op"]):
            raise FiniteError("size does not match table")
        return cls.from_tables(obj["op"], int(obj.get("unit", 0)), obj.get("op_inv"))

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array(self.op, dtype=np.int64), np.array(self.op_inv, dtype=np.int64)

    def is_trivial_quandle(self) -> bool:
        return all(self.op[x][y] == y for x in range(self.size) for y in range(self.size))


@dataclass(frozen=True)
class FiniteGroup:
    size: int
    mul: tuple[tuple[int, ...], ...]
    unit: int
    inv: tuple[int, ...]

    @classmethod
    def from_table(cls, mul) -> FiniteGroup:
        n = len(mul)
        t = _table(mul, n, "mul")
        units = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
        if not units:
            raise FiniteError("multiplication table has no identity")
        e = units[0]
        inv = []
        for x in range(n):
            r = [y for y in range(n) if t[x][y] == e and t[y][x] == e]
            if not r:
                raise FiniteError(f"element {x} has no inverse")
            inv.append(r[0])
        if K.assoc_witness(t)[0] >= 0:
            raise FiniteError("multiplication is not associative")
        return cls(n, t, e, tuple(inv))

    def to_json(self) -> dict:
        return {"size": self.size, "mul": [list(r) for r in self.mul]}

    @classmethod
    def from_json(cls, obj: dict) -> FiniteGroup:
        if "mul" not in obj:
            raise FiniteError("group JSON lacks 'mul'")
        return cls.from_table(obj["mul"])

    def center(self) -> list[int]:
        return [z for z in range(self.size)
                if all(self.mul[z][g] == self.mul[g][z] for g in range(self.size))]


# -- stock groups -----------------------------------------------------------


def group_from_elements(elems: Sequence, mul) -> FiniteGroup:
    """Group table from a list of hashable elements and a product function."""
    index = {g: i for i, g in enumerate(elems)}
    return FiniteGroup.from_table([[index[mul(a, b)] for b in elems] for a in elems])


def _compose(p, q):
    return tuple(p[i] for i in q)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup.from_table([[(a + b) % n for b in range(n)] for a in range(n)])


def symmetric_group(n: int) -> FiniteGroup:
    return group_from_elements(sorted(permutations(range(n))), _compose)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon: elements ``(k, s)`` meaning ``r^k f^s``."""
    elems = [(k, s) for s in (0, 1) for k in range(n)]

    def mul(a, b):
        k1, s1 = a
        k2, s2 = b
        return ((k1 + (-k2 if s1 else k2)) % n, s1 ^ s2)

    return group_from_elements(elems, mul)


def quaternion_group() -> FiniteGroup:
    # (sign, unit) with units 1, i, j, k
    table = {("1", u): (1, u) for u in "1ijk"}
    table.update({(u, "1"): (1, u) for u in "1ijk"})
    table.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                  ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                  ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]

    def mul(a, b):
        s, u = table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    return group_from_elements(elems, mul)


def klein_group() -> FiniteGroup:
    return FiniteGroup.from_table([[a ^ b for b in range(4)] for a in range(4)])


def stock_group(name: str) -> FiniteGroup:
    key = name.lower()
    if key.startswith("c") and key[1:].isdigit():
        return cyclic_group(int(key[1:]))
    if key.startswith("s") and key[1:].isdigit():
        return symmetric_group(int(key[1:]))
    if key.startswith("d") and key[1:].isdigit():
        return dihedral_group(int(key[1:]))
    if key == "q8":
        return quaternion_group()
    if key == "v4":
        return klein_group()
    raise FiniteError(f"unknown group {name!r}")


# -- operations -------------------------------------------------------------


@dataclass
class RackReport:
    axioms: dict[str, list[int] | None]
    involutory: bool
    quandle: bool
    bijective_rows: bool
    extra: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.axioms.values())

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "axioms": {k: {"pass": w is None, "witness": w} for k, w in self.axioms.items()},
            "bijective_rows": self.bijective_rows,
            "involutory": self.involutory,
            "quandle": self.quandle,
        }


def rack_axioms_check(R: FiniteRack, use_numba: bool | None = None) -> RackReport:
    op, inv = R.arrays()
    W = K.axiom_witnesses(op, inv, R.unit, use_numba)
    axioms = {}
    for name, row in zip(AXIOM_NAMES, W):
        axioms[name] = None if row[0] < 0 else [int(v) for v in row if v >= 0]
    n = R.size
    involutory = all(R.op[x][R.op[x][y]] == y for x in range(n) for y in range(n))
    quandle = all(R.op[x][x] == x for x in range(n))
    bij = bool(np.all(K.rows_bijective(op, use_numba)))
    return RackReport(axioms, involutory, quandle, bij)


def conj_of_group(G: FiniteGroup) -> FiniteRack:
    n, m, inv = G.size, G.mul, G.inv
    op = [[m[m[x][y]][inv[x]] for y in range(n)] for x in range(n)]
    op_inv = [[m[m[inv[x]][y]][x] for x in range(n)] for y in range(n)]
    return FiniteRack.from_tables(op, G.unit, op_inv)


def center(R: FiniteRack, use_numba: bool | None = None) -> list[int]:
    op, _ = R.arrays()
    return [int(i) for i in np.flatnonzero(K.identity_rows(op, use_numba))]


def subset_classify(R: FiniteRack, S) -> str:
    S = set(int(s) for s in S)
    if R.unit not in S:
        raise FiniteError("subset must contain the unit")
    if any(not 0 <= s < R.size for s in S):
        raise FiniteError("subset index out of range")

    def closed(movers) -> bool:
        return all(R.op[r][s] in S and R.op_inv[s][r] in S for r in movers for s in S)

    if closed(range(R.size)):
        return "left-ideal"
    if closed(S):
        return "subrack"
    return "not-subrack"


def orbits(R: FiniteRack) -> list[list[int]]:
    """Orbits of the group generated by all left multiplications."""
    seen: set[int] = set()
    out = []
    for s in range(R.size):
        if s in seen:
            continue
        orb, todo = {s}, [s]
        while todo:
            y = todo.pop()
            for x in range(R.size):
                for z in (R.op[x][y], R.op_inv[y][x]):
                    if z not in orb:
                        orb.add(z)
                        todo.append(z)
        seen |= orb
        out.append(sorted(orb))
    return out


def is_coassociative_dual(R: FiniteRack) -> bool:
    return bool(K.assoc_witness(R.op)[0] < 0)


def is_cocommutative_dual(R: FiniteRack) -> bool:
    return bool(K.comm_witness(R.op)[0] < 0)


def enumerate_racks(n: int, filter: str = "all", use_numba: bool | None = None) -> Iterator[FiniteRack]:
    """All pointed racks on ``{0..n-1}`` with unit 0, in lexicographic table order.

    Rows are permutations fixing 0 (fixedness) with row 0 the identity
    (fixing); the kernel then keeps left-distributive tables and every
    survivor is re-checked against all five axioms.
    """
    if filter not in FILTERS:
        raise FiniteError(f"unknown filter {filter!r}")
    if not 1 <= n <= MAX_ENUM:
        raise FiniteError(f"enumeration supports 1 <= n <= {MAX_ENUM}")
    rest = sorted(permutations(range(1, n)))
    rows = [(0,) + p for p in rest]
    ident = tuple(range(n))
    cands = np.array([[ident, *choice] for choice in product(rows, repeat=n - 1)], dtype=np.int64)
    cands = cands.reshape(-1, n, n)
    mask = K.left_distributive_batch(cands, use_numba)
    for t in cands[mask]:
        R = FiniteRack.from_tables(t.tolist(), 0)
        if not rack_axioms_check(R, use_numba).ok:
            continue
        if filter == "quandle" and not all(R.op[x][x] == x for x in range(n)):
            continue
        if filter == "coassociative-dual" and not is_coassociative_dual(R):
            continue
        if filter == "cocommutative-dual" and not is_cocommutative_dual(R):
            continue
        yield R


def trivial_quandle(n: int) -> FiniteRack:
    return FiniteRack.from_tables([list(range(n)) for _ in range(n)], 0)


def dual_corack(R: FiniteRack, field: Field = QQ):
    """The corack algebra of functions on ``R`` (idempotent basis ``e_i``)."""
    from .algebra import tpow
    from .corack import CorackAlgebra, _idempotent_presentation

    n = R.size
    A = _idempotent_presentation(n, R.unit, field)
    T2 = tpow(A, 2)

    def pull(table_at) -> dict:
        terms: dict[int, list[str]] = {p: [] for p in range(n)}
        for x in range(n):
            for y in range(n):
                terms[table_at(x, y)].append(f"e{x}@1*e{y}@2")
        return {f"e{p}": T2.parse_elem(" + ".join(t) if t else "0") for p, t in terms.items()}

    nabla = pull(lambda x, y: R.op[x][y])
    nabla_inv = pull(lambda x, y: R.op_inv[x][y])
    return CorackAlgebra(A, nabla, nabla_inv, name="dual")
