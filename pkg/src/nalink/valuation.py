"""Divisorial valuations of a resolution model, evaluated by chart pullback."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from nalink.arith.poly import X, BivariatePolynomial
from nalink.blowup import Pair, ResolutionModel
from nalink.errors import DivisionUndefined, EmptyIdeal, NotCenteredInZ, UnknownVertex, ZeroPolynomial


def _as_poly(f) -> BivariatePolynomial:
    return BivariatePolynomial.parse(f) if isinstance(f, str) else f


@dataclass(frozen=True)
class DivisorialValuation:
    """Order of vanishing along one component of a model's divisor.

    Exceptional divisors are read in the x-chart of the blowup that created
    them, where the divisor is ``x' = 0``.  Strict transforms of ``Z`` are
    read in the base chart through their defining factor.
    """

    model: ResolutionModel
    vertex: str
    chart: int
    equation: BivariatePolynomial

    @classmethod
    def of(cls, model: ResolutionModel, vertex: str) -> "DivisorialValuation":
        if not model.has_component(vertex):
            raise UnknownVertex(f"{vertex!r} is not a component of the model")
        comp = model.component(vertex)
        if comp.exceptional:
            return cls(model, vertex, 2 * comp.created - 1, X)
        return cls(model, vertex, 0, comp.equation)

    def _chart_path(self):
        path, cid = [], self.chart
        while cid is not None:
            chart = self.model.chart(cid)
            path.append(chart)
            cid = chart.parent
        return path[::-1]

    def pullback(self, f) -> BivariatePolynomial:
        """Total transform of ``f`` in the valuation's chart (no factor removed)."""
        g = _as_poly(f)
        for chart in self._chart_path()[1:]:
            g = g.shift(*chart.center)
            g = g.chart_x() if chart.kind == "x" else g.chart_y()
        return g

    def eval(self, f) -> int:
        f = _as_poly(f)
        if f.is_zero():
            raise ZeroPolynomial("the valuation of 0 is infinite")
        if self.chart:
            return self.pullback(f).x_order()
        k = 0
        while True:
            q = f.exact_div(self.equation)
            if q is None:
                return k
            f, k = q, k + 1

    __call__ = eval

    def eval_ideal(self, generators) -> int:
        return eval_ideal(self, generators)


@dataclass(frozen=True)
class NormalizedValuation:
    """``scale * base``; ``base`` is a divisorial or an already scaled valuation."""

    base: object
    scale: Fraction

    @property
    def divisorial(self) -> DivisorialValuation:
        b = self.base
        while isinstance(b, NormalizedValuation):
            b = b.base
        return b

    def eval(self, f) -> Fraction:
        return self.scale * self.base.eval(f)

    __call__ = eval


def scaled(v, factor) -> NormalizedValuation:
    factor = Fraction(factor)
    if factor <= 0:
        raise ValueError("valuations are rescaled by positive numbers only")
    return NormalizedValuation(v, factor)


def eval_ideal(v, generators):
    """Value of ``v`` on the ideal spanned by ``generators``: the least generator value."""
    gens = [_as_poly(g) for g in generators]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise EmptyIdeal("the ideal needs at least one nonzero generator")
    return min(v.eval(g) for g in gens)


def normalize(v, pair: Pair | None = None) -> NormalizedValuation:
    """Rescale ``v`` so that it takes the value 1 on ``I_Z``."""
    if pair is None:
        base = v.divisorial if isinstance(v, NormalizedValuation) else v
        pair = base.model.pair
    value = eval_ideal(v, pair.ideal())
    if value == 0:
        raise NotCenteredInZ("the valuation is not centered in Z")
    return NormalizedValuation(v, 1 / Fraction(value))


def log_ratio(v, f, g) -> Fraction:
    """``v(f) / v(g)``; independent of rescaling ``v``."""
    den = v.eval(g)
    if den == 0:
        raise DivisionUndefined("v(g) = 0")
    return Fraction(v.eval(f)) / den


def center(v, vertex_set):
    """The center of ``v`` on the model of a vertex set: a vertex id or a complement component."""
    from nalink.space import component_of

    vid = v.vertex if isinstance(v, DivisorialValuation) else v
    if vid in vertex_set.S:
        if not vertex_set.graph.has_vertex(vid):
            raise UnknownVertex(f"unknown vertex {vid!r}")
        return vid
    return component_of(vertex_set, vid)
