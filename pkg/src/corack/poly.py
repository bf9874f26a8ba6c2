"""Sparse multivariate polynomials over an exact field.

A polynomial is a map from exponent tuples to nonzero coefficients over a
fixed, ordered variable list. Terms are ordered by graded reverse
lexicographic order with the declared variable order (first variable
largest).
"""

from __future__ import annotations

import re
from fractions import Fraction
from operator import add
from typing import Callable, Iterable, Iterator, Mapping

from .field import Field, FieldMismatch, Mod, QQ

Exp = tuple[int, ...]


def grevlex_key(e: Exp) -> tuple:
    """Sort key: larger key means larger monomial under grevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


def divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_exp(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyError(ValueError):
    pass


class MultiPoly:
    """Immutable sparse polynomial; equality is structural."""

    __slots__ = ("vars", "field", "terms", "_index")

    def __init__(self, vars: Iterable[str], field: Field, terms: Mapping[Exp, object] | None = None):
        self.vars = tuple(vars)
        self.field = field
        n = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise PolyError(f"exponent {e} does not match {n} variables")
            if c:
                clean[tuple(e)] = field(c)
        self.terms = clean
        self._index = None

    @classmethod
    def _raw(cls, vars: tuple, field: Field, terms: dict) -> MultiPoly:
        p = cls.__new__(cls)
        p.vars = vars
        p.field = field
        p.terms = terms
        p._index = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars, field) -> MultiPoly:
        return cls._raw(tuple(vars), field, {})

    @classmethod
    def constant(cls, c, vars, field) -> MultiPoly:
        vars = tuple(vars)
        c = field(c)
        return cls._raw(vars, field, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, name: str, vars, field) -> MultiPoly:
        vars = tuple(vars)
        try:
            i = vars.index(name)
        except ValueError:
            raise PolyError(f"unknown variable {name!r}") from None
        e = [0] * len(vars)
        e[i] = 1
        return cls._raw(vars, field, {tuple(e): field.one})

    @classmethod
    def monomial(cls, e: Exp, vars, field, c=1) -> MultiPoly:
        c = field(c)
        return cls._raw(tuple(vars), field, {tuple(e): c} if c else {})

    # -- basic queries ------------------------------------------------------

    def index(self, name: str) -> int:
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self.vars)}
        try:
            return self._index[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r}") from None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), self.field.zero)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), self.field.zero)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self) -> tuple[Exp, object]:
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def items(self) -> list[tuple[Exp, object]]:
        """Terms in canonical (descending grevlex) order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def used_vars(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.vars[i])
        return used

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: MultiPoly):
        if self.vars != other.vars:
            raise PolyError("variable lists differ")
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _lift(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Mod)):
            return MultiPoly.constant(other, self.vars, self.field)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly._raw(self.vars, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> MultiPoly:
        c = self.field(c)
        if not c:
            return MultiPoly._raw(self.vars, self.field, {})
        return MultiPoly._raw(self.vars, self.field, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Mod)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(map(add, ea, eb))
                s = get(e)
                out[e] = ca * cb if s is None else s + ca * cb
        return MultiPoly._raw(self.vars, self.field, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Mod)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise PolyError("negative power of a polynomial")
        result = MultiPoly.constant(1, self.vars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, e: Exp, c) -> MultiPoly:
        return MultiPoly._raw(
            self.vars, self.field, {tuple(map(add, f, e)): v * c for f, v in self.terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction, Mod)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- calculus and substitution -----------------------------------------

    def partial(self, name: str) -> MultiPoly:
        i = self.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                d = c * k
                if d:
                    out[e[:i] + (k - 1,) + e[i + 1:]] = d
        return MultiPoly._raw(self.vars, self.field, out)

    def evaluate(self, point: Mapping[str, object], one=None, on_missing=None):
        """Evaluate at ``point`` (var -> value in any commutative ring).

        ``one`` is the unit of the target ring; defaults to the field's one.
        Powers of each value are cached.
        """
        if one is None:
            one = self.field.one
        vals = []
        for v in self.vars:
            if v in point:
                vals.append(point[v])
            elif on_missing is not None:
                vals.append(on_missing(v))
            else:
                vals.append(None)
        cache: dict = {}
        total = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if not k:
                    continue
                if vals[i] is None:
                    raise PolyError(f"no value for variable {self.vars[i]!r}")
                key = (i, k)
                pw = cache.get(key)
                if pw is None:
                    pw = vals[i] ** k if k > 1 else vals[i]
                    cache[key] = pw
                term = pw if term is None else term * pw
            term = one * c if term is None else term * c
            total = term if total is None else total + term
        if total is None:
            return one * self.field.zero
        return total

    def substitute(self, images: Mapping[str, MultiPoly]) -> MultiPoly:
        """Ring-homomorphic substitution of every used variable."""
        target = None
        for img in images.values():
            if target is None:
                target = img
            elif img.vars != target.vars:
                raise PolyError("substitution images use different variable lists")
        if target is None:
            if self.is_constant():
                return self
            raise PolyError("no images given")
        for v in self.used_vars():
            if v not in images:
                raise PolyError(f"missing image for variable {v!r}")
        one = MultiPoly.constant(1, target.vars, target.field)
        return self.evaluate(images, one=one)

    def rename(self, new_vars: Iterable[str], mapping: Mapping[str, str] | None = None) -> MultiPoly:
        """Re-express over ``new_vars``; variable ``v`` goes to ``mapping.get(v, v)``."""
        new_vars = tuple(new_vars)
        pos = {v: i for i, v in enumerate(new_vars)}
        mapping = mapping or {}
        idx = []
        for i, v in enumerate(self.vars):
            w = mapping.get(v, v)
            idx.append(pos.get(w))
        n = len(new_vars)
        out = {}
        for e, c in self.terms.items():
            f = [0] * n
            for i, k in enumerate(e):
                if k:
                    j = idx[i]
                    if j is None:
                        raise PolyError(f"variable {self.vars[i]!r} has no place in target")
                    f[j] += k
            f = tuple(f)
            s = out.get(f)
            out[f] = c if s is None else s + c
        return MultiPoly._raw(new_vars, self.field, {e: c for e, c in out.items() if c})

    def map_coeffs(self, fn: Callable) -> MultiPoly:
        return MultiPoly(self.vars, self.field, {e: fn(c) for e, c in self.terms.items()})

    def divide_exact(self, q: MultiPoly) -> MultiPoly | None:
        """Return ``p / q`` if ``q`` divides ``p`` in the polynomial ring, else None."""
        self._check(q)
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lq, cq = q.leading()
        inv = self.field.one / cq
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem, key=grevlex_key)
            if not divides(lq, e):
                return None
            m = tuple(x - y for x, y in zip(e, lq))
            c = rem[e] * inv
            quot[m] = c
            for f, v in q.terms.items():
                g = tuple(map(add, f, m))
                s = rem.get(g)
                s = -(v * c) if s is None else s - v * c
                if s:
                    rem[g] = s
                else:
                    rem.pop(g, None)
        return MultiPoly._raw(self.vars, self.field, quot)

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, vars={list(self.vars)}, field={self.field})"


def format_monomial(e: Exp, vars) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(vars[i])
        elif k > 1:
            parts.append(f"{vars[i]}^{k}")
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for e, c in p.items():
        mono = format_monomial(e, p.vars)
        neg = False
        if isinstance(c, Fraction) and c < 0:
            neg, c = True, -c
        cs = p.field.format(c)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*(?:@\d+)?)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", num))
        elif name is not None:
            toks.append(("var", name))
        elif op is not None and not op.isspace():
            if op not in "+-*/^()":
                raise PolyError(f"unexpected character {op!r} in {text!r}")
            toks.append(("op", op))
    return toks


class _Parser:
    """Recursive-descent parser yielding (numerator, denominator) pairs."""

    def __init__(self, text, vars, field):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(vars)
        self.field = field
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise PolyError(f"expected {op!r} in {self.text!r}")

    def one(self):
        return MultiPoly.constant(1, self.vars, self.field)

    def parse(self):
        if not self.toks:
            raise PolyError("empty polynomial text")
        r = self.expr()
        if self.i != len(self.toks):
            raise PolyError(f"trailing input in {self.text!r}")
        return r

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        n, d = self.term()
        if sign < 0:
            n = -n
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            n2, d2 = self.term()
            if d2 == d:
                n = n + n2 if op == "+" else n - n2
            else:
                n = n * d2 + n2 * d if op == "+" else n * d2 - n2 * d
                d = d * d2
        return n, d

    def term(self):
        n, d = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            n2, d2 = self.power()
            if op == "*":
                n, d = n * n2, d * d2
            else:
                if n2.is_zero():
                    raise PolyError(f"division by zero in {self.text!r}")
                n, d = n * d2, d * n2
            if d.is_constant() and d.constant_value() != 1:
                n, d = n.scale(self.field.one / d.constant_value()), self.one()
        return n, d

    def power(self):
        n, d = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            t = self.take()
            if t[0] != "num":
                raise PolyError(f"exponent must be a nonnegative integer in {self.text!r}")
            k = int(t[1])
            n, d = n**k, d**k
        return n, d

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MultiPoly.constant(int(val), self.vars, self.field), self.one()
        if kind == "var":
            if val not in self.vars:
                raise PolyError(f"unknown variable {val!r} in {self.text!r}")
            return MultiPoly.var(val, self.vars, self.field), self.one()
        if (kind, val) == ("op", "("):
            r = self.expr()
            self.expect(")")
            return r
        if (kind, val) == ("op", "-"):
            n, d = self.power()
            return -n, d
        raise PolyError(f"unexpected token {val!r} in {self.text!r}")


def parse_fraction(text: str, vars, field: Field = QQ) -> tuple[MultiPoly, MultiPoly]:
    """Parse an expression that may divide by polynomials; returns (num, den)."""
    return _Parser(text, vars, field).parse()


def parse_poly(text: str, vars, field: Field = QQ) -> MultiPoly:
    n, d = parse_fraction(text, vars, field)
    if not d.is_constant():
        raise PolyError(f"{text!r} is not a polynomial")
    return n.scale(field.one / d.constant_value())


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def polys(names: str | Iterable[str], field: Field = QQ) -> tuple[MultiPoly, ...]:
    """Convenience: the variables of a fresh ring as polynomials."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    names = tuple(names)
    return tuple(MultiPoly.var(v, names, field) for v in names)


def iter_exps(n: int, max_deg: int) -> Iterator[Exp]:
    """All exponent tuples in ``n`` variables of total degree <= max_deg."""
    if n == 0:
        yield ()
        return
    for k in range(max_deg + 1):
        for rest in iter_exps(n - 1, max_deg - k):
            yield (k,) + rest
