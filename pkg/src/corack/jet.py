"""Truncated jets: polynomials in square-zero infinitesimals.

A :class:`Jet` is ``sum_S c_S * prod_{i in S} eps_i`` with ``eps_i**2 = 0``;
``S`` is stored as a bitmask. Coefficients may be field scalars or algebra
elements, so the same class realizes ``k[d]/(d^2)``, ``A[d]/(d^2)`` and the
multi-infinitesimal points used for triple brackets.
"""

from __future__ import annotations

from fractions import Fraction

from .field import Mod

_SCALARS = (int, Fraction, Mod)


def _is_zero_scalar(c) -> bool:
    return isinstance(c, _SCALARS) and not c


class Jet:
    __slots__ = ("terms", "zero")

    def __init__(self, terms: dict[int, object], zero):
        self.terms = {m: c for m, c in terms.items() if not _is_zero_scalar(c)}
        self.zero = zero

    @classmethod
    def const(cls, c, zero) -> Jet:
        return cls({0: c}, zero)

    def coeff(self, mask: int = 0):
        return self.terms.get(mask, self.zero)

    def _lift(self, other) -> Jet | None:
        if isinstance(other, Jet):
            return other
        return None

    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        if o is None:
            t[0] = t[0] + other if 0 in t else self.zero + other
            return Jet(t, self.zero)
        for m, c in o.terms.items():
            t[m] = t[m] + c if m in t else c
        return Jet(t, self.zero)

    __radd__ = __add__

    def __neg__(self):
        return Jet({m: -c for m, c in self.terms.items()}, self.zero)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return Jet({m: c * other for m, c in self.terms.items()}, self.zero)
        t: dict[int, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                if m1 & m2:
                    continue
                m = m1 | m2
                p = c1 * c2
                t[m] = t[m] + p if m in t else p
        return Jet(t, self.zero)

    def __rmul__(self, other):
        return Jet({m: other * c for m, c in self.terms.items()}, self.zero)

    def __pow__(self, k: int) -> Jet:
        if k < 0:
            return self.inverse() ** (-k)
        r = None
        b = self
        while k:
            if k & 1:
                r = b if r is None else r * b
            k >>= 1
            if k:
                b = b * b
        return r if r is not None else Jet.const(self.zero + 1, self.zero)

    def inverse(self) -> Jet:
        """Inverse when the constant coefficient is a unit (nilpotent part summed out)."""
        c0 = self.coeff(0)
        inv0 = c0.inverse() if hasattr(c0, "inverse") else 1 / c0
        nil = Jet({m: c for m, c in self.terms.items() if m}, self.zero)
        step = nil * inv0
        depth = max(self.terms, default=0).bit_length()
        out = Jet.const(inv0, self.zero)
        power = Jet.const(inv0, self.zero)
        for _ in range(depth):
            power = -(power * step)
            if not power.terms:
                break
            out = out + power
        return out

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.inverse()
        return self * (1 / other if isinstance(other, _SCALARS) else other.inverse())

    def __repr__(self):
        return f"Jet({self.terms!r})"


class DualElem(Jet):
    """``value + d * delta`` with ``d^2 = 0`` (one infinitesimal)."""

    __slots__ = ()

    def __init__(self, value, delta=None, zero=None):
        if isinstance(value, dict):
            super().__init__(value, zero)
            return
        if zero is None:
            zero = value * 0
        super().__init__({0: value, 1: zero if delta is None else delta}, zero)

    @classmethod
    def of(cls, j: Jet) -> DualElem:
        if any(m > 1 for m in j.terms):
            raise ValueError("jet has more than one infinitesimal")
        return cls(dict(j.terms), zero=j.zero)

    @property
    def value(self):
        return self.coeff(0)

    @property
    def delta(self):
        return self.coeff(1)

    def __iter__(self):
        yield self.value
        yield self.delta

    def __eq__(self, other):
        if isinstance(other, tuple) and len(other) == 2:
            return self.value == other[0] and self.delta == other[1]
        if isinstance(other, Jet):
            return self.value == other.coeff(0) and self.delta == other.coeff(1)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"DualElem({self.value!s}, {self.delta!s})"


def eval_elem(a, point: dict, one: Jet) -> Jet:
    """Evaluate an algebra element ``num / prod f_i^k`` at a jet-valued point."""
    v = a.num.evaluate(point, one=one)
    for i, k in enumerate(a.den):
        if k:
            v = v * a.pres.factors[i].evaluate(point, one=one).inverse() ** k
    return v
