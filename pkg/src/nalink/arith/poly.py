"""Sparse bivariate polynomials in ``x, y`` with exact coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb

from nalink.arith import upoly
from nalink.arith.field import AlgebraicNumber, as_number, element_key, level_of
from nalink.errors import PolynomialSyntaxError, ZeroPolynomial


def _term_order(exp):
    # canonical order: total degree descending, then x-degree descending
    return (-(exp[0] + exp[1]), -exp[0])


class BivariatePolynomial:
    """Immutable polynomial; terms map ``(i, j)`` to the coefficient of ``x^i y^j``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for exp, c in (terms or {}).items():
            c = as_number(c)
            if c != 0:
                i, j = exp
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent {exp}")
                clean[(int(i), int(j))] = c
        self._terms = clean
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def from_y_poly(cls, p):
        """Embed a univariate polynomial (list, low degree first) as a polynomial in ``y``."""
        return cls({(0, j): c for j, c in enumerate(p)})

    @classmethod
    def from_x_poly(cls, p):
        return cls({(i, 0): c for i, c in enumerate(p)})

    @classmethod
    def parse(cls, text: str) -> "BivariatePolynomial":
        return _Parser(text).parse()

    # -- inspection ---------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: _term_order(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(exp == (0, 0) for exp in self._terms)

    def coefficient(self, i: int, j: int):
        return self._terms.get((i, j), Fraction(0))

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def x_degree(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    def y_degree(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def order(self) -> int:
        """Least total degree of a term (the multiplicity at the origin)."""
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no order")
        return min(i + j for i, j in self._terms)

    def x_order(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no order")
        return min(i for i, _ in self._terms)

    def y_order(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no order")
        return min(j for _, j in self._terms)

    def homogeneous_part(self, d: int) -> "BivariatePolynomial":
        return BivariatePolynomial({e: c for e, c in self._terms.items() if e[0] + e[1] == d})

    def coefficients(self):
        return list(self._terms.values())

    def extensions(self):
        return {level_of(c) for c in self._terms.values()} - {None}

    def leading_coefficient(self):
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no leading coefficient")
        return self.items()[0][1]

    def monic(self) -> "BivariatePolynomial":
        lc = self.leading_coefficient()
        return self if lc == 1 else self * (1 / lc)

    def sort_key(self):
        return tuple((_term_order(e), element_key(c)) for e, c in self.items())

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BivariatePolynomial):
            return other
        try:
            return BivariatePolynomial.const(as_number(other))
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return BivariatePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for (i1, j1), a in self._terms.items():
            for (i2, j2), b in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + a * b
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = BivariatePolynomial.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, BivariatePolynomial):
            return self._terms == other._terms
        other = self._coerce(other)
        return other is not None and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation and substitution ------------------------------------
    def __call__(self, a, b):
        a, b = as_number(a), as_number(b)
        total = Fraction(0)
        xp, yp = {}, {}
        for (i, j), c in self._terms.items():
            if i not in xp:
                xp[i] = a**i if i else Fraction(1)
            if j not in yp:
                yp[j] = b**j if j else Fraction(1)
            total = total + c * xp[i] * yp[j]
        return total

    def shift(self, a, b) -> "BivariatePolynomial":
        """Return ``f(x + a, y + b)``: the expansion of ``f`` at the point ``(a, b)``."""
        a, b = as_number(a), as_number(b)
        if a == 0 and b == 0:
            return self
        apow = [Fraction(1)]
        bpow = [Fraction(1)]
        for _ in range(self.x_degree()):
            apow.append(apow[-1] * a)
        for _ in range(self.y_degree()):
            bpow.append(bpow[-1] * b)
        out = {}
        for (i, j), c in self._terms.items():
            for k in range(i + 1):
                ck = c * comb(i, k) * apow[i - k]
                if ck == 0:
                    continue
                for l in range(j + 1):
                    coef = ck * comb(j, l) * bpow[j - l]
                    if coef != 0:
                        out[(k, l)] = out.get((k, l), Fraction(0)) + coef
        return BivariatePolynomial(out)

    def diff_x(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(i - 1, j): i * c for (i, j), c in self._terms.items() if i})

    def diff_y(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(i, j - 1): j * c for (i, j), c in self._terms.items() if j})

    def chart_x(self) -> "BivariatePolynomial":
        """Pull back along ``x = x', y = x'y'``."""
        return BivariatePolynomial({(i + j, j): c for (i, j), c in self._terms.items()})

    def chart_y(self) -> "BivariatePolynomial":
        """Pull back along ``x = x'y', y = y'``."""
        return BivariatePolynomial({(i, i + j): c for (i, j), c in self._terms.items()})

    def divide_x_power(self, k: int) -> "BivariatePolynomial":
        if k and any(i < k for i, _ in self._terms):
            raise ArithmeticError(f"x^{k} does not divide {self}")
        return BivariatePolynomial({(i - k, j): c for (i, j), c in self._terms.items()})

    def divide_y_power(self, k: int) -> "BivariatePolynomial":
        if k and any(j < k for _, j in self._terms):
            raise ArithmeticError(f"y^{k} does not divide {self}")
        return BivariatePolynomial({(i, j - k): c for (i, j), c in self._terms.items()})

    def swap(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(j, i): c for (i, j), c in self._terms.items()})

    def at_x(self, a):
        """Univariate polynomial in ``y`` obtained by setting ``x = a``."""
        a = as_number(a)
        out = {}
        for (i, j), c in self._terms.items():
            out[j] = out.get(j, Fraction(0)) + c * (a**i if i else Fraction(1))
        return upoly.trim([out.get(j, Fraction(0)) for j in range(self.y_degree() + 1)])

    def at_y(self, b):
        return self.swap().at_x(b)

    def y_coefficients(self):
        """Coefficients as a polynomial in ``y`` over ``K[x]`` (lists of univariate polys)."""
        rows = [dict() for _ in range(self.y_degree() + 1)]
        for (i, j), c in self._terms.items():
            rows[j][i] = c
        return [upoly.trim([row.get(i, Fraction(0)) for i in range(max(row, default=-1) + 1)]) for row in rows]

    def exact_div(self, g: "BivariatePolynomial") -> "BivariatePolynomial | None":
        """Quotient ``self / g`` if ``g`` divides ``self`` exactly, else ``None``."""
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lex = lambda e: (e[0], e[1])
        g_lead = max(g._terms, key=lex)
        g_coef = g._terms[g_lead]
        rem = dict(self._terms)
        quot = {}
        while rem:
            lead = max(rem, key=lex)
            if lead[0] < g_lead[0] or lead[1] < g_lead[1]:
                return None
            shift = (lead[0] - g_lead[0], lead[1] - g_lead[1])
            c = rem[lead] / g_coef
            quot[shift] = c
            for (i, j), b in g._terms.items():
                key = (i + shift[0], j + shift[1])
                v = rem.get(key, Fraction(0)) - c * b
                if v == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = v
        return BivariatePolynomial(quot)

    # -- printing -----------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for (i, j), c in self.items():
            mono = "*".join(
                p for p in (_var("x", i), _var("y", j)) if p
            )
            if not mono:
                body = _coeff_str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{_coeff_str(c)}*{mono}"
            pieces.append(body)
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-") and not piece.startswith("-("):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    def __repr__(self):
        return f"BivariatePolynomial({self})"


def _var(name, k):
    if k == 0:
        return ""
    return name if k == 1 else f"{name}^{k}"


def _coeff_str(c) -> str:
    s = str(c)
    if isinstance(c, AlgebraicNumber) or "/" in s:
        return f"({s})"
    return s


X = BivariatePolynomial.x()
Y = BivariatePolynomial.y()
ONE = BivariatePolynomial.const(1)


_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([xy]))")


class _Parser:
    """Recursive-descent parser for ``+ - * / ^`` expressions in ``x`` and ``y``."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise PolynomialSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
            num, op, var = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif op is not None:
                self.tokens.append(("op", "^" if op == "**" else op))
            else:
                self.tokens.append(("var", var))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> BivariatePolynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("empty polynomial")
        out = self.expr()
        if self.i != len(self.tokens):
            raise PolynomialSyntaxError(f"trailing input in {self.text!r}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = acc * self.unary()
            elif (kind, val) == ("op", "/"):
                self.take()
                rhs = self.unary()
                if not rhs.is_constant() or rhs.is_zero():
                    raise PolynomialSyntaxError("division is only allowed by nonzero constants")
                acc = acc * (1 / rhs.coefficient(0, 0))
            elif kind in ("num", "var") or (kind, val) == ("op", "("):
                acc = acc * self.power()
            else:
                return acc

    def unary(self):
        kind, val = self.peek()
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.unary()
        if (kind, val) == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("exponents must be nonnegative integer literals")
            return base**val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return BivariatePolynomial.const(val)
        if kind == "var":
            return X if val == "x" else Y
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise PolynomialSyntaxError("unbalanced parentheses")
            return inner
        if kind is None:
            raise PolynomialSyntaxError(f"unexpected end of input in {self.text!r}")
        raise PolynomialSyntaxError(f"unexpected token {val!r} in {self.text!r}")
