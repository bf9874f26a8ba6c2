"""Exact Gaussian elimination over Q and F_p (lists of field scalars)."""

from __future__ import annotations

from typing import Sequence

Matrix = list[list]


def rref(rows: Sequence[Sequence], field) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows dropped."""
    M = [[field(x) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field) -> Matrix:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column, in RREF order.

    The returned vectors are reduced so that, read as rows, they are in
    reduced echelon form themselves (pivot at the first nonzero entry).
    """
    R, piv = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(R, piv):
            v[p] = -row[f]
        basis.append(v)
    E, _ = rref(basis, field) if basis else ([], [])
    return E


def solve_in_span(basis_rows: Sequence[Sequence], v: Sequence, field) -> list | None:
    """Coordinates ``a`` with ``sum a_i basis_i == v``, or None."""
    n = len(basis_rows)
    if n == 0:
        return [] if all(not x for x in v) else None
    m = len(v)
    # augmented system: columns are basis vectors
    aug = [[basis_rows[i][j] for i in range(n)] + [v[j]] for j in range(m)]
    R, piv = rref(aug, field)
    if n in piv:
        return None
    a = [field.zero] * n
    for row, p in zip(R, piv):
        a[p] = row[n]
    return a


def in_span(basis_rows, v, field) -> bool:
    return solve_in_span(basis_rows, v, field) is not None


def mat_vec(M, v, field):
    return [sum((a * b for a, b in zip(row, v)), field.zero) for row in M]
