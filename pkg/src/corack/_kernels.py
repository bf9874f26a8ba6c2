"""Integer-table kernels for finite racks.

Two interchangeable backends: numba ``@njit`` loops and vectorized numpy.
``CORACK_USE_NUMBA=0`` forces numpy; any other value (or unset) uses numba
when it imports. Every kernel returns plain integers/arrays so callers
never see which backend ran.

Axiom codes: 0 = Q1 invertibility, 1 = Q2 left-distributivity,
2 = Q3 right-distributivity, 3 = Q4 fixing, 4 = Q5 fixedness.
A witness row is ``(x, y, z)`` with unused slots -1, or all -1 on pass.
"""

from __future__ import annotations

import os

import numpy as np

NAXIOMS = 5


def _want_numba() -> bool:
    return os.environ.get("CORACK_USE_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


try:  # pragma: no cover - depends on the environment
    if not _want_numba():
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


# -- numpy backend ----------------------------------------------------------


def _first(mask: np.ndarray):
    idx = np.argwhere(mask)
    return None if len(idx) == 0 else tuple(int(i) for i in idx[0])


def axioms_np(op: np.ndarray, inv: np.ndarray, unit: int) -> np.ndarray:
    n = op.shape[0]
    out = np.full((NAXIOMS, 3), -1, dtype=np.int64)
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    # (x |> y) |>^-1 x == y  and  x |> (y |>^-1 x) == y
    bad = (inv[op, np.broadcast_to(x, (n, n))] != y) | (op[x, inv[y, x]] != y)
    w = _first(bad)
    if w is not None:
        out[0, :2] = w
    X, Y, Z = np.ix_(np.arange(n), np.arange(n), np.arange(n))
    lhs = op[X, op[Y, Z]]
    rhs = op[op[X, Y], op[X, Z]]
    w = _first(lhs != rhs)
    if w is not None:
        out[1] = w
    lhs = inv[inv[X, Y], Z]
    rhs = inv[inv[X, Z], inv[Y, Z]]
    w = _first(lhs != rhs)
    if w is not None:
        out[2] = w
    w = _first(op[unit] != np.arange(n))
    if w is not None:
        out[3, 0] = w[0]
    w = _first(op[:, unit] != unit)
    if w is not None:
        out[4, 0] = w[0]
    return out


def assoc_np(op: np.ndarray) -> np.ndarray:
    n = op.shape[0]
    X, Y, Z = np.ix_(np.arange(n), np.arange(n), np.arange(n))
    w = _first(op[op[X, Y], Z] != op[X, op[Y, Z]])
    return np.array(w if w is not None else (-1, -1, -1), dtype=np.int64)


def comm_np(op: np.ndarray) -> np.ndarray:
    w = _first(op != op.T)
    return np.array(w if w is not None else (-1, -1), dtype=np.int64)


def identity_rows_np(op: np.ndarray) -> np.ndarray:
    return np.all(op == np.arange(op.shape[0])[None, :], axis=1)


def rows_bijective_np(op: np.ndarray) -> np.ndarray:
    s = np.sort(op, axis=1)
    return np.all(s == np.arange(op.shape[0])[None, :], axis=1)


def left_distributive_batch_np(tables: np.ndarray) -> np.ndarray:
    """Mask of tables (shape ``(K, n, n)``) satisfying left-distributivity."""
    K, n, _ = tables.shape
    k = np.arange(K)[:, None, None, None]
    X = np.arange(n)[None, :, None, None]
    Y = np.arange(n)[None, None, :, None]
    Z = np.arange(n)[None, None, None, :]
    yz = tables[k, Y, Z]
    lhs = tables[k, X, yz]
    rhs = tables[k, tables[k, X, Y], tables[k, X, Z]]
    return np.all((lhs == rhs).reshape(K, -1), axis=1)


# -- numba backend ----------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=False)
    def axioms_nb(op, inv, unit):
        n = op.shape[0]
        out = np.full((NAXIOMS, 3), -1, dtype=np.int64)
        found = False
        for x in range(n):
            for y in range(n):
                if inv[op[x, y], x] != y or op[x, inv[y, x]] != y:
                    out[0, 0] = x
                    out[0, 1] = y
                    found = True
                    break
            if found:
                break
        found = False
        for x in range(n):
            for y in range(n):
                xy = op[x, y]
                for z in range(n):
                    if op[x, op[y, z]] != op[xy, op[x, z]]:
                        out[1, 0] = x
                        out[1, 1] = y
                        out[1, 2] = z
                        found = True
                        break
                if found:
                    break
            if found:
                break
        found = False
        for x in range(n):
            for y in range(n):
                xy = inv[x, y]
                for z in range(n):
                    if inv[xy, z] != inv[inv[x, z], inv[y, z]]:
                        out[2, 0] = x
                        out[2, 1] = y
                        out[2, 2] = z
                        found = True
                        break
                if found:
                    break
            if found:
                break
        for x in range(n):
            if op[unit, x] != x:
                out[3, 0] = x
                break
        for x in range(n):
            if op[x, unit] != unit:
                out[4, 0] = x
                break
        return out

    @njit(cache=False)
    def assoc_nb(op):
        n = op.shape[0]
        out = np.full(3, -1, dtype=np.int64)
        for x in range(n):
            for y in range(n):
                xy = op[x, y]
                for z in range(n):
                    if op[xy, z] != op[x, op[y, z]]:
                        out[0] = x
                        out[1] = y
                        out[2] = z
                        return out
        return out

    @njit(cache=False)
    def comm_nb(op):
        n = op.shape[0]
        out = np.full(2, -1, dtype=np.int64)
        for x in range(n):
            for y in range(n):
                if op[x, y] != op[y, x]:
                    out[0] = x
                    out[1] = y
                    return out
        return out

    @njit(cache=False)
    def identity_rows_nb(op):
        n = op.shape[0]
        out = np.ones(n, dtype=np.bool_)
        for x in range(n):
            for y in range(n):
                if op[x, y] != y:
                    out[x] = False
                    break
        return out

    @njit(cache=False)
    def rows_bijective_nb(op):
        n = op.shape[0]
        out = np.ones(n, dtype=np.bool_)
        for x in range(n):
            seen = np.zeros(n, dtype=np.bool_)
            for y in range(n):
                v = op[x, y]
                if v < 0 or v >= n or seen[v]:
                    out[x] = False
                    break
                seen[v] = True
        return out

    @njit(cache=False)
    def left_distributive_batch_nb(tables):
        K, n, _ = tables.shape
        out = np.ones(K, dtype=np.bool_)
        for k in range(K):
            t = tables[k]
            ok = True
            for x in range(n):
                for y in range(n):
                    xy = t[x, y]
                    for z in range(n):
                        if t[x, t[y, z]] != t[xy, t[x, z]]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            out[k] = ok
        return out


# -- dispatch ---------------------------------------------------------------


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def _pick(np_fn, nb_name: str, use_numba: bool | None):
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba:
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return globals()[nb_name]
    return np_fn


def _arr(t) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(t, dtype=np.int64))


def axiom_witnesses(op, inv, unit: int, use_numba: bool | None = None) -> np.ndarray:
    return _pick(axioms_np, "axioms_nb", use_numba)(_arr(op), _arr(inv), int(unit))


def assoc_witness(op, use_numba: bool | None = None) -> np.ndarray:
    return _pick(assoc_np, "assoc_nb", use_numba)(_arr(op))


def comm_witness(op, use_numba: bool | None = None) -> np.ndarray:
    return _pick(comm_np, "comm_nb", use_numba)(_arr(op))


def identity_rows(op, use_numba: bool | None = None) -> np.ndarray:
    return _pick(identity_rows_np, "identity_rows_nb", use_numba)(_arr(op))


def rows_bijective(op, use_numba: bool | None = None) -> np.ndarray:
    return _pick(rows_bijective_np, "rows_bijective_nb", use_numba)(_arr(op))


def left_distributive_batch(tables, use_numba: bool | None = None) -> np.ndarray:
    return _pick(left_distributive_batch_np, "left_distributive_batch_nb", use_numba)(_arr(tables))
