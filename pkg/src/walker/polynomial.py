"""Sparse multivariate polynomials with exact coefficients.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
coefficients over a fixed, ordered tuple of variable names.  Coefficients are
``int``/``Fraction`` or :class:`~walker.field.QSqrt3`.

Text grammar (used by the JSON formats)::

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor | '/' INT)*
    factor := INT ['/' INT] | 'sqrt3' ['^' INT] | NAME ['^' INT] | '(' poly ')'

``**`` is accepted as a synonym for ``^``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import PolynomialParseError
from .field import SQRT3, QSqrt3, as_exact, scalar_to_str

__all__ = [
    "Polynomial",
    "walker_variables",
    "poly_arith",
    "poly_diff",
    "poly_antideriv",
    "parse_polynomial",
    "parse_scalar",
]


@lru_cache(maxsize=None)
def walker_variables(n: int) -> tuple[str, ...]:
    """Variable tuple ``('x', 'y1', ..., 'yn', 'z')``; index = coordinate index."""
    if n < 1:
        raise ValueError("fiber dimension n must be >= 1")
    return ("x",) + tuple(f"y{i}" for i in range(1, n + 1)) + ("z",)


def _is_scalar(v) -> bool:
    return isinstance(v, (int, Fraction, QSqrt3)) and not isinstance(v, bool)


class Polynomial:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None,
                 variables: Sequence[str] = ()):
        variables = tuple(variables)
        arity = len(variables)
        clean: dict[tuple[int, ...], object] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != arity:
                raise ValueError(
                    f"exponent vector {exps} has arity {len(exps)}, expected {arity}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = as_exact(c)
            if c != 0:
                clean[exps] = clean.get(exps, 0) + c
                if clean[exps] == 0:
                    del clean[exps]
        self.variables = variables
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, variables: tuple[str, ...]) -> "Polynomial":
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls._raw({}, tuple(variables))

    @classmethod
    def constant(cls, c, variables: Sequence[str]) -> "Polynomial":
        variables = tuple(variables)
        c = as_exact(c)
        if c == 0:
            return cls._raw({}, variables)
        return cls._raw({(0,) * len(variables): c}, variables)

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "Polynomial":
        variables = tuple(variables)
        idx = _index(variables, name)
        exps = [0] * len(variables)
        exps[idx] = 1
        return cls._raw({tuple(exps): 1}, variables)

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> "Polynomial":
        return parse_polynomial(text, variables)

    # -- basic queries ------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), 0)

    def degree(self, name: str | None = None) -> int:
        """Total degree, or the degree in one variable; ``-1`` for zero."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = _index(self.variables, name)
        return max(e[i] for e in self.terms)

    def depends_on(self, name: str) -> bool:
        i = _index(self.variables, name)
        return any(e[i] for e in self.terms)

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.variables is not self.variables and other.variables != self.variables:
                raise ValueError(
                    f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if _is_scalar(other):
            return Polynomial.constant(other, self.variables)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o if o.variables is self.variables else Polynomial._raw(o.terms, self.variables)
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v == 0:
                    del out[e]
                else:
                    out[e] = v
        return Polynomial._raw(out, self.variables)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self.terms.items()}, self.variables)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "Polynomial":
        if c == 0 and not isinstance(c, QSqrt3):
            return Polynomial._raw({}, self.variables)
        if c == 1 and not isinstance(c, QSqrt3):
            return self
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if w != 0:
                out[e] = w
        return Polynomial._raw(out, self.variables)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return Polynomial._raw({}, self.variables)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw({e: c for e, c in out.items() if c != 0}, self.variables)

    __rmul__ = __mul__

    def mul_truncated(self, other: "Polynomial", max_degree: int) -> "Polynomial":
        """Product with every term of total degree above ``max_degree`` dropped."""
        out: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            if d1 > max_degree:
                continue
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > max_degree:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw({e: c for e, c in out.items() if c != 0}, self.variables)

    def truncate(self, max_degree: int) -> "Polynomial":
        """Drop every term of total degree above ``max_degree``."""
        return Polynomial._raw({e: c for e, c in self.terms.items() if sum(e) <= max_degree},
                               self.variables)

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(1 / Fraction(other) if not isinstance(other, QSqrt3)
                              else 1 / other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Polynomial.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- calculus -----------------------------------------------------------
    def diff(self, name: str | int) -> "Polynomial":
        i = name if isinstance(name, int) else _index(self.variables, name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return Polynomial._raw(out, self.variables)

    def antideriv(self, name: str | int) -> "Polynomial":
        """Antiderivative in one variable with no terms free of that variable."""
        i = name if isinstance(name, int) else _index(self.variables, name)
        out = {}
        for e, c in self.terms.items():
            k = e[i] + 1
            ne = e[:i] + (k,) + e[i + 1:]
            out[ne] = c * Fraction(1, k)
        return Polynomial._raw(out, self.variables)

    def evaluate(self, point: Sequence) -> object:
        if len(point) != len(self.variables):
            raise ValueError("point has wrong dimension")
        if not self.terms:
            return 0
        if all(p == 0 for p in point) and not any(isinstance(p, QSqrt3) for p in point):
            return self.constant_term()
        total = 0
        for e, c in self.terms.items():
            t = c
            for p, k in zip(point, e):
                if k:
                    t = t * p ** k
            total = total + t
        return total

    def substitute(self, name: str, value: "Polynomial") -> "Polynomial":
        """Replace variable ``name`` by the polynomial ``value``."""
        i = _index(self.variables, name)
        value = self._coerce(value)
        powers = {0: Polynomial.constant(1, self.variables)}
        out = Polynomial.zero(self.variables)
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value ** k
            rest = Polynomial._raw({e[:i] + (0,) + e[i + 1:]: c}, self.variables)
            out = out + rest * powers[k]
        return out

    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express over another variable tuple containing all used variables."""
        variables = tuple(variables)
        pos = [_index(variables, v) if any(e[j] for e in self.terms) else None
               for j, v in enumerate(self.variables)]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for j, k in enumerate(e):
                if k:
                    ne[pos[j]] = k
            out[tuple(ne)] = c
        return Polynomial._raw(out, variables)

    # -- comparison / hashing -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        if _is_scalar(other):
            if other == 0 and not isinstance(other, QSqrt3):
                return not self.terms
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- printing -----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in graded-lexicographic order (highest total degree first)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.variables, e) if k)
            pieces = []
            if isinstance(c, QSqrt3):
                if c.a != 0:
                    pieces.append((c.a, mono))
                pieces.append((c.b, "sqrt3" + ("*" + mono if mono else "")))
            else:
                pieces.append((c, mono))
            for coef, m in pieces:
                neg = coef < 0
                mag = -coef if neg else coef
                if not m:
                    body = scalar_to_str(mag)
                elif mag == 1:
                    body = m
                else:
                    body = f"{scalar_to_str(mag)}*{m}"
                if not chunks:
                    chunks.append(("-" if neg else "") + body)
                else:
                    chunks.append(("- " if neg else "+ ") + body)
        return " ".join(chunks)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _index(variables: Sequence[str], name: str) -> int:
    try:
        return variables.index(name)
    except ValueError:
        raise ValueError(f"unknown variable {name!r}; known {tuple(variables)}") from None


# -- spec-level operations ----------------------------------------------------

def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def poly_diff(p: Polynomial, v: str) -> Polynomial:
    return p.diff(v)


def poly_antideriv(p: Polynomial, v: str) -> Polynomial:
    return p.antideriv(v)


# -- parser -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                                       text, pos)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.variables = variables
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise PolynomialParseError("unexpected end of input", self.text, len(self.text))
        self.i += 1
        return t

    def error(self, msg):
        t = self.peek()
        pos = t[2] if t else len(self.text)
        raise PolynomialParseError(msg, self.text, pos)

    def parse(self) -> Polynomial:
        if not self.toks:
            self.error("empty polynomial")
        p = self.poly()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def poly(self) -> Polynomial:
        total = Polynomial.zero(self.variables)
        t = self.peek()
        negate = False
        if t and t[0] == "op" and t[1] in "+-":
            self.take()
            negate = t[1] == "-"
        while True:
            term = self.term()
            total = total - term if negate else total + term
            t = self.peek()
            if t and t[0] == "op" and t[1] in "+-":
                self.take()
                negate = t[1] == "-"
                continue
            return total

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] == "*":
                self.take()
                p = p * self.factor()
            elif t and t[0] == "op" and t[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num" or d[1] == 0:
                    raise PolynomialParseError("can only divide by a nonzero integer",
                                               self.text, d[2])
                p = p.scale(Fraction(1, d[1]))
            else:
                return p

    def exponent(self) -> int:
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise PolynomialParseError("exponent must be a non-negative integer",
                                           self.text, e[2])
            return e[1]
        return 1

    def factor(self) -> Polynomial:
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            nxt = self.peek()
            if nxt and nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num" or d[1] == 0:
                    raise PolynomialParseError("bad rational denominator", self.text, d[2])
                return Polynomial.constant(Fraction(val, d[1]), self.variables)
            return Polynomial.constant(val, self.variables)
        if kind == "name":
            if val == "sqrt3":
                return Polynomial.constant(SQRT3 ** self.exponent(), self.variables)
            if val not in self.variables:
                raise PolynomialParseError(
                    f"unknown variable {val!r} (allowed: {', '.join(self.variables)})",
                    self.text, pos)
            return Polynomial.var(val, self.variables) ** self.exponent()
        if kind == "op" and val == "(":
            p = self.poly()
            close = self.take()
            if close[:2] != ("op", ")"):
                raise PolynomialParseError("expected ')'", self.text, close[2])
            return p ** self.exponent()
        raise PolynomialParseError(f"unexpected token {val!r}", self.text, pos)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    return _Parser(str(text), tuple(variables)).parse()


def parse_scalar(text: str):
    p = parse_polynomial(text, ())
    return p.constant_term()


def polys_from_strings(texts: Iterable[str], variables: Sequence[str]) -> list[Polynomial]:
    return [parse_polynomial(t, variables) for t in texts]
