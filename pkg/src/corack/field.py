"""Exact ground fields: the rationals and prime fields F_p.

Rational elements are plain :class:`fractions.Fraction` values. Prime-field
elements are :class:`Mod` residues kept in ``[0, p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, "Mod"]

_MAX_PRIME = 2**31


class FieldMismatch(ValueError):
    pass


class Mod:
    """A residue modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int | None:
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return Mod(pow(self.v, -k, self.p), self.p).inverse()
        return Mod(pow(self.v, k, self.p), self.p)

    def inverse(self) -> Mod:
        if self.v == 0:
            raise ZeroDivisionError(f"0 is not invertible in F_{self.p}")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        if isinstance(other, Fraction):
            return self.v == self._coerce(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class RationalField:
    """The field Q of rational numbers."""

    characteristic: int = 0

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Mod):
            raise FieldMismatch("cannot lift a residue into Q")
        return Fraction(x)

    def parse(self, text: str) -> Fraction:
        return Fraction(text.strip())

    def format(self, x: Fraction) -> str:
        return str(x)

    def to_json(self) -> dict:
        return {"type": "Q"}

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p, ``2 <= p < 2**31``."""

    p: int

    def __post_init__(self):
        if not 2 <= self.p < _MAX_PRIME or not _is_prime(self.p):
            raise ValueError(f"{self.p} is not a prime below 2^31")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> Mod:
        return Mod(0, self.p)

    @property
    def one(self) -> Mod:
        return Mod(1, self.p)

    def __call__(self, x) -> Mod:
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatch(f"F_{x.p} vs F_{self.p}")
            return x
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
        return Mod(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def parse(self, text: str) -> Mod:
        return self(Fraction(text.strip()))

    def format(self, x: Mod) -> str:
        return str(x.v)

    def to_json(self) -> dict:
        return {"type": "Fp", "p": self.p}

    def __str__(self):
        return f"F{self.p}"


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def field_from_json(obj: dict) -> Field:
    kind = obj.get("type")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return PrimeField(int(obj["p"]))
    raise ValueError(f"unknown field spec {obj!r}")


def parse_field(text: str) -> Field:
    """Parse ``Q``, ``Fp:<p>`` or the shorthand ``F<p>``."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("Fp:"):
        return PrimeField(int(t[3:]))
    if t.startswith("F") and t[1:].isdigit():
        return PrimeField(int(t[1:]))
    raise ValueError(f"unknown field {text!r}")
