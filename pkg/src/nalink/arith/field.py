"""Exact coefficient fields: the rationals and towers of simple extensions.

Rationals are plain ``Fraction`` objects.  An element of an extension
``F(a)`` is an :class:`AlgebraicNumber` holding its coordinates in the power
basis ``1, a, ..., a^(d-1)`` over ``F``.  Every arithmetic result is
*lowered*: a value that lies in a smaller level of the tower is returned in
that level's representation (ultimately a ``Fraction``).  Equality is
therefore structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational

from nalink.arith import upoly
from nalink.errors import TowerBoundExceeded

GENERATOR_NAMES = "abcdefgh"


def as_number(c):
    """Coerce ints and other rationals to ``Fraction``; pass field elements through."""
    if isinstance(c, AlgebraicNumber) or type(c) is Fraction:
        return c
    if isinstance(c, Rational):
        return Fraction(c)
    raise TypeError(f"not an exact field element: {c!r}")


@dataclass(frozen=True)
class Extension:
    """One level ``base(name)`` of a tower; ``minpoly`` is monic, low degree first."""

    name: str
    base: "Extension | None"
    minpoly: tuple

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def depth(self) -> int:
        return 1 + (self.base.depth if self.base is not None else 0)

    @property
    def total_degree(self) -> int:
        return self.degree * (self.base.total_degree if self.base is not None else 1)

    def levels(self):
        ext = self
        while ext is not None:
            yield ext
            ext = ext.base

    def generator(self) -> "AlgebraicNumber":
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return AlgebraicNumber(self, tuple(coeffs))

    def element(self, coeffs) -> "AlgebraicNumber | Fraction":
        coeffs = [as_number(c) for c in coeffs]
        if len(coeffs) > self.degree:
            coeffs = upoly.divmod_(upoly.trim(coeffs), list(self.minpoly))[1]
        return _make(self, coeffs)

    def __repr__(self):
        return f"Extension({self.name}: {upoly.to_str(self.minpoly)})"


def level_of(c) -> Extension | None:
    return c.ext if isinstance(c, AlgebraicNumber) else None


def _is_below(low: Extension | None, high: Extension | None) -> bool:
    if low is None:
        return True
    if high is None:
        return False
    return any(e == low for e in high.levels())


def _make(ext: Extension, coeffs):
    coeffs = list(coeffs) + [Fraction(0)] * (ext.degree - len(coeffs))
    if all(c == 0 for c in coeffs[1:]):
        return coeffs[0]
    return AlgebraicNumber(ext, tuple(coeffs))


def _lift(c, ext: Extension):
    if isinstance(c, AlgebraicNumber) and c.ext == ext:
        return c.coeffs
    if not _is_below(level_of(c), ext.base):
        raise TypeError(f"{c} does not lie in a subfield of {ext}")
    return (c,) + (Fraction(0),) * (ext.degree - 1)


def _common(a, b) -> Extension:
    ea, eb = level_of(a), level_of(b)
    if _is_below(ea, eb):
        return eb
    if _is_below(eb, ea):
        return ea
    raise TypeError(f"elements {a} and {b} live in incompatible extensions")


def _reduce(ext: Extension, prod):
    d = ext.degree
    prod = list(prod)
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c == 0:
            continue
        for i in range(d):
            prod[k - d + i] = prod[k - d + i] - c * ext.minpoly[i]
        prod[k] = Fraction(0)
    return prod[:d]


class AlgebraicNumber:
    __slots__ = ("ext", "coeffs")

    def __init__(self, ext: Extension, coeffs: tuple):
        self.ext = ext
        self.coeffs = coeffs

    def _binary(self, other, op):
        try:
            other = as_number(other)
        except TypeError:
            return NotImplemented
        ext = _common(self, other)
        return op(ext, _lift(self, ext), _lift(other, ext))

    def __add__(self, other):
        return self._binary(other, lambda e, a, b: _make(e, [x + y for x, y in zip(a, b)]))

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda e, a, b: _make(e, [x - y for x, y in zip(a, b)]))

    def __rsub__(self, other):
        return self._binary(other, lambda e, a, b: _make(e, [y - x for x, y in zip(a, b)]))

    def __neg__(self):
        return AlgebraicNumber(self.ext, tuple(-c for c in self.coeffs))

    def __pos__(self):
        return self

    def __mul__(self, other):
        def op(e, a, b):
            prod = [Fraction(0)] * (2 * e.degree - 1)
            for i, x in enumerate(a):
                if x == 0:
                    continue
                for j, y in enumerate(b):
                    prod[i + j] = prod[i + j] + x * y
            return _make(e, _reduce(e, prod))

        return self._binary(other, op)

    __rmul__ = __mul__

    def inverse(self):
        g, s, _ = upoly.ext_gcd(upoly.trim(self.coeffs), list(self.ext.minpoly))
        if len(g) != 1:
            raise ZeroDivisionError(f"{self} is not invertible (minimal polynomial is reducible)")
        return _make(self.ext, s)

    def __truediv__(self, other):
        other = as_number(other)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        inv = other.inverse() if isinstance(other, AlgebraicNumber) else 1 / other
        return self * inv

    def __rtruediv__(self, other):
        return as_number(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, AlgebraicNumber):
            return self.ext == other.ext and self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ext.name, self.ext.minpoly, self.coeffs))

    def __bool__(self):
        return True

    def __str__(self):
        return upoly.to_str(upoly.trim(self.coeffs), self.ext.name)

    def __repr__(self):
        return f"AlgebraicNumber({self})"


def conjugate(c, ext: Extension):
    """Apply the nontrivial automorphism of a quadratic level ``ext`` over its base."""
    if ext.degree != 2:
        raise ValueError("conjugation is only defined for quadratic levels")
    if not (isinstance(c, AlgebraicNumber) and c.ext == ext):
        return c
    c0, c1 = c.coeffs
    return _make(ext, [c0 - c1 * ext.minpoly[1], -c1])


def element_key(c):
    """Total order used for canonical sorting of field elements."""
    if isinstance(c, AlgebraicNumber):
        return (c.ext.depth, tuple(element_key(x) for x in c.coeffs))
    return (0, Fraction(c))


def _rational_sqrt(c: Fraction):
    if c < 0:
        return None
    n, d = isqrt(c.numerator), isqrt(c.denominator)
    if n * n == c.numerator and d * d == c.denominator:
        return Fraction(n, d)
    return None


def sqrt_in(c, ext: Extension | None):
    """A square root of ``c`` inside the field ``ext`` (``None`` = Q), or ``None``."""
    c = as_number(c)
    if ext is None:
        if isinstance(c, AlgebraicNumber):
            raise TypeError(f"{c} is not rational")
        return _rational_sqrt(c)
    if ext.degree != 2:
        raise TowerBoundExceeded(ext.minpoly, "square roots need a quadratic level")
    if c == 0:
        return Fraction(0)
    p = ext.minpoly[1]
    disc = p * p - 4 * ext.minpoly[0]
    c0, c1 = _lift(c, ext)
    # write c = e0 + e1*delta with delta = 2a + p, delta^2 = disc
    e0, e1 = c0 - c1 * p / 2, c1 / 2
    delta = 2 * ext.generator() + p
    if e1 == 0:
        u = sqrt_in(e0, ext.base)
        if u is not None:
            return u
        w = sqrt_in(e0 / disc, ext.base)
        return None if w is None else w * delta
    r = sqrt_in(e0 * e0 - disc * e1 * e1, ext.base)
    if r is None:
        return None
    for sign in (1, -1):
        u = sqrt_in((e0 + sign * r) / 2, ext.base)
        if u is not None and u != 0:
            return u + (e1 / (2 * u)) * delta
    return None


@dataclass(frozen=True)
class CoefficientField:
    """Q followed by a tower of quadratic extensions, with size bounds."""

    tower: tuple = ()
    max_depth: int = 2
    max_degree: int = 8

    @property
    def top(self) -> Extension | None:
        return self.tower[-1] if self.tower else None

    @property
    def depth(self) -> int:
        return len(self.tower)

    @property
    def degree(self) -> int:
        return self.top.total_degree if self.tower else 1

    def generators(self):
        return [e.generator() for e in self.tower]

    def contains(self, c) -> bool:
        return _is_below(level_of(as_number(c)), self.top)

    def sqrt(self, c):
        return sqrt_in(c, self.top)

    def extend(self, minpoly, name: str | None = None) -> "CoefficientField":
        """Adjoin a root of the irreducible ``minpoly`` (coefficients low degree first)."""
        poly = upoly.monic([as_number(c) for c in minpoly])
        if not all(self.contains(c) for c in poly):
            raise TypeError("minimal polynomial has coefficients outside the field")
        deg = upoly.degree(poly)
        if deg < 2:
            raise ValueError("an extension needs a minimal polynomial of degree >= 2")
        if deg != 2:
            raise TowerBoundExceeded(poly, f"only quadratic extensions are supported, got degree {deg}")
        if self.depth + 1 > self.max_depth:
            raise TowerBoundExceeded(poly, f"tower depth bound {self.max_depth} reached")
        if self.degree * deg > self.max_degree:
            raise TowerBoundExceeded(poly, f"extension degree bound {self.max_degree} reached")
        disc = poly[1] * poly[1] - 4 * poly[0]
        if self.sqrt(disc) is not None:
            raise ValueError(f"{upoly.to_str(poly)} is reducible over the field")
        ext = Extension(name or GENERATOR_NAMES[self.depth], self.top, tuple(poly))
        return CoefficientField(self.tower + (ext,), self.max_depth, self.max_degree)

    def describe(self) -> dict:
        return {
            "degree": self.degree,
            "tower": [{"generator": e.name, "minimal_polynomial": upoly.to_str(e.minpoly)} for e in self.tower],
        }

    def __str__(self):
        if not self.tower:
            return "QQ"
        return "QQ(" + ", ".join(f"{e.name}: {upoly.to_str(e.minpoly)} = 0" for e in self.tower) + ")"


RATIONALS = CoefficientField()
