"""Local structure of plane curves: orders, tangent cones, roots, singular points.

Root finding and bivariate factorization over a :class:`CoefficientField`.
Linear and quadratic univariate factors are handled directly (quadratic
formula plus the square-root-in-field test); anything else is delegated to
sympy's factorization over the primitive-element model of the tower and then
mapped back to tower coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy

from nalink.arith import linalg, upoly
from nalink.arith.field import (
    AlgebraicNumber,
    CoefficientField,
    Extension,
    element_key,
)
from nalink.arith.poly import BivariatePolynomial, X, Y
from nalink.errors import NeedsExtension, ZeroPolynomial


# ---------------------------------------------------------------------------
# local invariants
# ---------------------------------------------------------------------------
def order_at_point(f: BivariatePolynomial, p=(0, 0)) -> int:
    """Multiplicity of ``f`` at ``p``: the least total degree of ``f`` expanded there."""
    if f.is_zero():
        raise ZeroPolynomial("order of the zero polynomial is undefined")
    return f.shift(*p).order()


def tangent_cone(f: BivariatePolynomial, p=(0, 0)) -> BivariatePolynomial:
    if f.is_zero():
        raise ZeroPolynomial("tangent cone of the zero polynomial is undefined")
    g = f.shift(*p)
    return g.homogeneous_part(g.order())


# ---------------------------------------------------------------------------
# sympy bridge
# ---------------------------------------------------------------------------
class _SympyModel:
    """Primitive-element model of a tower inside sympy, with the change of basis back."""

    def __init__(self, field: CoefficientField):
        self.sympy = sympy
        self.field = field
        self.x, self.y = sympy.symbols("x y")
        if not field.tower:
            self.domain = sympy.QQ
            return
        alphas = []
        for ext in field.tower:
            q, p = (self._expr(c, alphas) for c in ext.minpoly[:2])
            alphas.append((-p + sympy.sqrt(p * p - 4 * q)) / 2)
        self.domain = sympy.QQ.algebraic_field(*alphas)
        self.alphas = [self.domain.from_sympy(a) for a in alphas]
        # tower basis: products of generators with exponents in {0, 1}
        depth = len(field.tower)
        self.basis_exps = [tuple((m >> k) & 1 for k in range(depth)) for m in range(2**depth)]
        gens = field.generators()
        self.basis_elems = []
        rows = []
        for exps in self.basis_exps:
            val, elem = self.domain.one, Fraction(1)
            for k, e in enumerate(exps):
                if e:
                    val = val * self.alphas[k]
                    elem = elem * gens[k]
            self.basis_elems.append(elem)
            rows.append(self._coords(val))
        # rows[m] = coordinates of basis element m in the primitive power basis
        self.to_tower = linalg.inverse([[rows[m][i] for m in range(len(rows))] for i in range(len(rows))])

    def _coords(self, anp):
        # ANP coordinates are listed highest degree first
        rep = anp.to_list()
        vals = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(rep)]
        return vals + [Fraction(0)] * (len(self.basis_exps) - len(vals))

    def _expr(self, c, alphas):
        sympy = self.sympy
        if isinstance(c, AlgebraicNumber):
            level = [e for e in self.field.tower].index(c.ext)
            out = 0
            for k, ck in enumerate(c.coeffs):
                out += self._expr(ck, alphas) * alphas[level] ** k
            return out
        return sympy.Rational(c.numerator, c.denominator)

    def to_domain(self, c):
        if isinstance(c, AlgebraicNumber):
            level = list(self.field.tower).index(c.ext)
            out = self.domain.zero
            power = self.domain.one
            for ck in c.coeffs:
                out = out + self.to_domain(ck) * power
                power = power * self.alphas[level]
            return out
        return self.domain.convert(self.sympy.Rational(c.numerator, c.denominator))

    def from_domain(self, a):
        if not self.field.tower:
            return Fraction(int(a.numerator), int(a.denominator))
        coords = self._coords(a)
        tower_coords = [sum((row[i] * coords[i] for i in range(len(coords))), Fraction(0)) for row in self.to_tower]
        total = Fraction(0)
        for coef, elem in zip(tower_coords, self.basis_elems):
            if coef:
                total = total + coef * elem
        return total

    def to_poly(self, f: BivariatePolynomial):
        rep = {e: self.to_domain(c) for e, c in f.terms.items()}
        return self.sympy.Poly.from_dict(rep, self.x, self.y, domain=self.domain)

    def from_poly(self, p) -> BivariatePolynomial:
        return BivariatePolynomial({e: self.from_domain(c) for e, c in p.rep.to_dict().items()})


@lru_cache(maxsize=32)
def _model(field: CoefficientField) -> _SympyModel:
    return _SympyModel(field)


@lru_cache(maxsize=512)
def _factor_cached(f: BivariatePolynomial, field: CoefficientField):
    model = _model(field)
    _, factors = model.to_poly(f).factor_list()
    out = [(model.from_poly(p).monic(), k) for p, k in factors]
    out = [(g, k) for g, k in out if not g.is_constant()]
    out.sort(key=lambda gk: (gk[0].degree(), gk[0].sort_key()))
    return tuple(out)


def factor_over_field(f: BivariatePolynomial, field: CoefficientField):
    """Irreducible factors of ``f`` over ``field`` as ``[(monic factor, multiplicity)]``."""
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    return list(_factor_cached(f, field))


def irreducible_components(f: BivariatePolynomial, field: CoefficientField):
    """Components of ``V(f)`` over ``field`` with the multiplicity of each factor."""
    return factor_over_field(f, field)


# ---------------------------------------------------------------------------
# univariate roots
# ---------------------------------------------------------------------------
def roots_in_field(p, field: CoefficientField):
    """Distinct roots of the univariate ``p`` (low degree first) in ``field``.

    Raises :class:`NeedsExtension` with an irreducible factor when some root
    lies outside the field.
    """
    p = upoly.trim(p)
    if not p:
        raise ZeroPolynomial("every element is a root of the zero polynomial")
    p = upoly.squarefree_part(p)
    deg = upoly.degree(p)
    if deg <= 0:
        return []
    if deg == 1:
        return [-p[0]]
    if deg == 2:
        b, c = p[1], p[0]
        root = field.sqrt(b * b - 4 * c)
        if root is None:
            raise NeedsExtension(p)
        return sorted({(-b + root) / 2, (-b - root) / 2}, key=element_key)
    roots, obstruction = [], None
    for g, _ in factor_over_field(BivariatePolynomial.from_y_poly(p), field):
        q = g.at_x(0)
        if upoly.degree(q) == 1:
            roots.append(-q[0])
        elif obstruction is None or upoly.degree(q) < upoly.degree(obstruction):
            obstruction = q
    if obstruction is not None:
        raise NeedsExtension(obstruction)
    return sorted(roots, key=element_key)


def factor_binary_form(form: BivariatePolynomial, field: CoefficientField | None = None):
    """Linear factorization of a homogeneous form.

    Factors are ``x - c*y`` (monic in ``x``) or ``y``; the list is sorted
    canonically and the product of the factors equals ``form`` divided by
    its leading coefficient.
    """
    field = field or CoefficientField()
    if form.is_zero():
        raise ZeroPolynomial("cannot factor the zero form")
    d = form.degree()
    if any(i + j != d for i, j in form.terms):
        raise ValueError(f"{form} is not homogeneous")
    k = form.y_order()
    out = []
    if k:
        out.append((Y, k))
    # dehomogenize: form = y^k * g(x, y), g(t, 1) carries the remaining factors
    g = form.divide_y_power(k).at_y(1)
    for r in roots_in_field(g, field):
        out.append((X - Y * r, upoly.root_multiplicity(g, r)))
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


# ---------------------------------------------------------------------------
# resultants and singular points
# ---------------------------------------------------------------------------
class _UPolyOps:
    zero: list = []
    one = [Fraction(1)]

    @staticmethod
    def is_zero(a):
        return not a

    mul = staticmethod(upoly.mul)
    sub = staticmethod(upoly.sub)
    neg = staticmethod(upoly.neg)
    exact_div = staticmethod(upoly.exact_div)


def resultant_y(f: BivariatePolynomial, g: BivariatePolynomial):
    """``Res_y(f, g)`` as a univariate polynomial in ``x`` (Sylvester determinant)."""
    a = f.y_coefficients()[::-1]
    b = g.y_coefficients()[::-1]
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        return []
    if m == 0 and n == 0:
        return [Fraction(1)]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([[]] * i + a + [[]] * (size - m - 1 - i))
    for i in range(m):
        rows.append([[]] * i + b + [[]] * (size - n - 1 - i))
    return upoly.trim(linalg.bareiss_det(rows, _UPolyOps))


def _content_y(f: BivariatePolynomial):
    c = []
    for row in f.y_coefficients():
        c = upoly.gcd(c, row) if c else upoly.monic(row)
    return c


def _point_key(p):
    return (element_key(p[0]), element_key(p[1]))


def _gcd_at(polys, a):
    g = []
    for h in polys:
        g = upoly.gcd(g, h.at_x(a))
        if g == [Fraction(1)]:
            break
    return g


def _obstruction_has_point(h, polys, field: CoefficientField) -> bool:
    """Do the ``polys`` have a common zero with x-coordinate a root of irreducible ``h``?"""
    tmp = Extension("t", field.top, tuple(upoly.monic(h)))
    return upoly.degree(_gcd_at(polys, tmp.generator())) > 0


def _x_candidates(r, field, polys):
    """Roots of ``r`` in the field; irreducible factors carrying a point raise."""
    r = upoly.squarefree_part(r)
    if upoly.degree(r) <= 0:
        return []
    try:
        return roots_in_field(r, field)
    except NeedsExtension:
        pass
    found = []
    for g, _ in factor_over_field(BivariatePolynomial.from_y_poly(r), field):
        h = g.at_x(0)
        if upoly.degree(h) == 1:
            found.append(-h[0])
        elif _obstruction_has_point(h, polys, field):
            raise NeedsExtension(h)
    return sorted(found, key=element_key)


def singular_points(f: BivariatePolynomial, field: CoefficientField | None = None, window=None):
    """Common zeros of ``f, f_x, f_y`` over the field, sorted canonically.

    ``f`` must be squarefree.  ``window`` is an optional predicate on points.
    """
    field = field or CoefficientField()
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no singular locus")
    polys = (f, f.diff_x(), f.diff_y())
    points = set()
    # split off the part of f depending on x alone (vertical lines)
    c = _content_y(f)
    g = f
    if upoly.degree(c) > 0:
        g = f.exact_div(BivariatePolynomial.from_x_poly(c))
        for a in _x_candidates(c, field, (g,)):
            for b in roots_in_field(g.at_x(a), field) if g.y_degree() > 0 else []:
                points.add((a, b))
    if g.y_degree() > 0:
        gx, gy = g.diff_x(), g.diff_y()
        r = resultant_y(g, gy)
        rx = resultant_y(g, gx) if not gx.is_zero() and gx.y_degree() >= 0 else []
        if rx:
            r = upoly.gcd(r, rx)
        for a in _x_candidates(r, field, (g, gx, gy)):
            common = _gcd_at((g, gx, gy), a)
            if upoly.degree(common) > 0:
                for b in roots_in_field(common, field):
                    points.add((a, b))
    pts = [p for p in points if f(*p) == 0 and polys[1](*p) == 0 and polys[2](*p) == 0]
    if window is not None:
        pts = [p for p in pts if window(p)]
    return sorted(pts, key=_point_key)
