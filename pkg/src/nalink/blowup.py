"""Iterated point blowups of the affine plane and the embedded-resolution loop.

Charts
------
The base chart (id 0) is the plane with coordinates ``(x, y)``.  Blowup
number ``s`` of a point ``p`` of chart ``c`` creates two children of ``c``:

* chart ``2s - 1`` (x-chart): ``x = a + x', y = b + x'y'``; ``E_s = {x' = 0}``;
* chart ``2s`` (y-chart):     ``x = a + x'y', y = b + y'``; ``E_s = {y' = 0}``.

Every closed point of the total transform has exactly one *owning* chart:
base points that were never blown up live in chart 0, points of ``E_s``
with ``x' = 0`` live in the x-chart of step ``s``, and the single remaining
point of ``E_s`` is the origin of its y-chart.  Points of a child chart off
its exceptional divisor are images of points of the parent and are owned
there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field, replace

from nalink.arith.factor import irreducible_components, singular_points
from nalink.arith.field import CoefficientField, as_number, element_key
from nalink.arith.poly import ONE, X, Y, BivariatePolynomial
from nalink.errors import (
    BlowupCapExceeded,
    CenterOffLocus,
    NeedsExtension,
    NotNormalCrossings,
)

EXCEPTIONAL = "Exceptional"
BOUNDARY = "Boundary"

REASONS = ("ComponentSingular", "TriplePoint", "Tangency", "NonPrincipalPullback")


def natural_key(name: str):
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name))


def component_key(comp_id: str, kind: str):
    return (0 if kind == BOUNDARY else 1, natural_key(comp_id))


@dataclass(frozen=True)
class Pair:
    """The pair ``(A^2, Z)``: ``Z`` is the origin or the curve ``V(poly)``."""

    kind: str
    poly: BivariatePolynomial | None = None

    def __post_init__(self):
        if self.kind not in ("point", "curve"):
            raise ValueError(f"unknown pair kind {self.kind!r}")
        if self.kind == "curve":
            if self.poly is None or self.poly.is_constant():
                raise ValueError("a curve pair needs a nonconstant polynomial")
            if self.poly(0, 0) != 0:
                raise ValueError(f"{self.poly} does not vanish at the origin")

    @classmethod
    def point(cls) -> "Pair":
        return cls("point")

    @classmethod
    def curve(cls, poly) -> "Pair":
        if isinstance(poly, str):
            poly = BivariatePolynomial.parse(poly)
        return cls("curve", poly)

    def ideal(self):
        return [X, Y] if self.kind == "point" else [self.poly]

    def describe(self) -> dict:
        if self.kind == "point":
            return {"type": "point"}
        return {"type": "curve", "poly": str(self.poly)}


@dataclass(frozen=True)
class ResolveConfig:
    max_degree: int = 8
    max_depth: int = 2
    blowup_cap: int = 64

    def field(self) -> CoefficientField:
        return CoefficientField(max_depth=self.max_depth, max_degree=self.max_degree)


@dataclass(frozen=True)
class Chart:
    id: int
    parent: int | None
    kind: str | None
    center: tuple | None
    step: int
    equations: tuple  # ((component id, local equation), ...)

    def equation(self, comp_id: str):
        for cid, eq in self.equations:
            if cid == comp_id:
                return eq
        return None

    @property
    def exceptional(self) -> str | None:
        return f"E{self.step}" if self.step else None


@dataclass(frozen=True)
class DivisorComponent:
    id: str
    kind: str
    N: int
    self_int: int
    rational: bool
    created: int = 0
    equation: BivariatePolynomial | None = None  # base-chart equation of a strict transform

    @property
    def exceptional(self) -> bool:
        return self.created > 0


@dataclass(frozen=True)
class Blowup:
    step: int
    chart: int
    center: tuple
    multiplicities: tuple  # ((component id, mu), ...) for components through the center


@dataclass(frozen=True)
class PointRef:
    chart: int
    point: tuple


@dataclass(frozen=True)
class Violation:
    chart: int
    point: tuple
    reason: str
    components: tuple

    def describe(self) -> dict:
        return {
            "chart": self.chart,
            "point": [str(c) for c in self.point],
            "reason": self.reason,
            "components": list(self.components),
        }


@dataclass(frozen=True)
class ResolutionModel:
    pair: Pair
    field: CoefficientField
    charts: tuple
    blowups: tuple = ()
    components: tuple = ()
    intersections: tuple = ()  # (((a, b), number), ...) for pairs involving an exceptional
    _index: dict = dc_field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "_index",
            {
                "charts": {c.id: c for c in self.charts},
                "components": {c.id: c for c in self.components},
            },
        )

    def chart(self, chart_id: int) -> Chart:
        try:
            return self._index["charts"][chart_id]
        except KeyError:
            raise CenterOffLocus(f"no chart with id {chart_id}") from None

    def component(self, comp_id: str) -> DivisorComponent:
        return self._index["components"][comp_id]

    def has_component(self, comp_id: str) -> bool:
        return comp_id in self._index["components"]

    @property
    def exceptional_ids(self):
        return [c.id for c in self.components if c.exceptional]

    @property
    def base_locus_resolved(self) -> bool:
        return self.pair.kind == "curve" or bool(self.blowups)

    def intersection_number(self, a: str, b: str) -> int:
        key = _pair_key(self, a, b)
        return dict(self.intersections).get(key, 0)

    def centers_in(self, chart_id: int):
        return {b.center for b in self.blowups if b.chart == chart_id}

    def exceptional_matrix(self):
        ids = self.exceptional_ids
        return [
            [self.component(a).self_int if a == b else self.intersection_number(a, b) for b in ids]
            for a in ids
        ]


def _pair_key(model_or_kinds, a, b):
    kinds = model_or_kinds
    if isinstance(model_or_kinds, ResolutionModel):
        kinds = {c.id: c.kind for c in model_or_kinds.components}
    ka = component_key(a, kinds.get(a, EXCEPTIONAL))
    kb = component_key(b, kinds.get(b, EXCEPTIONAL))
    return (a, b) if ka <= kb else (b, a)


def _point_key(p):
    return (element_key(p[0]), element_key(p[1]))


def _coerce_point(point, field: CoefficientField):
    pt = tuple(as_number(c) for c in point)
    if len(pt) != 2:
        raise CenterOffLocus(f"a point needs two coordinates, got {point!r}")
    for c in pt:
        # only algebraic numbers can fall outside the field
        if not field.contains(c):
            raise NeedsExtension(c.ext.minpoly)
    return pt


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------
def initial_model(pair: Pair, field: CoefficientField | None = None) -> ResolutionModel:
    """The pair before any blowup, with ``Z`` split into components over ``field``."""
    field = field or CoefficientField()
    components, equations = [], []
    if pair.kind == "curve":
        factors = irreducible_components(pair.poly, field)
        for i, (g, mult) in enumerate(factors, start=1):
            name = "Z~" if len(factors) == 1 else f"Z{i}~"
            components.append(DivisorComponent(name, BOUNDARY, mult, 0, False, 0, g))
            equations.append((name, g))
    base = Chart(0, None, None, None, 0, tuple(equations))
    return ResolutionModel(pair, field, (base,), (), tuple(components), ())


def _owns(model: ResolutionModel, chart: Chart, point) -> bool:
    if point in model.centers_in(chart.id):
        return False
    if chart.kind == "x":
        return point[0] == 0
    if chart.kind == "y":
        return point[0] == 0 and point[1] == 0
    return True


def _on_locus(model: ResolutionModel, chart: Chart, point) -> bool:
    if chart.id == 0 and model.pair.kind == "point" and not model.blowups:
        return point[0] == 0 and point[1] == 0
    return any(eq(*point) == 0 for _, eq in chart.equations)


def blow_up(model: ResolutionModel, center: PointRef) -> ResolutionModel:
    """Blow up one closed point of the total transform."""
    chart = model.chart(center.chart)
    p = _coerce_point(center.point, model.field)
    if not _owns(model, chart, p):
        raise CenterOffLocus(f"point {tuple(map(str, p))} is not addressed by chart {chart.id}")
    if not _on_locus(model, chart, p):
        raise CenterOffLocus(f"point {tuple(map(str, p))} of chart {chart.id} is off the total transform")

    step = len(model.blowups) + 1
    new_id = f"E{step}"
    shifted = {cid: eq.shift(*p) for cid, eq in chart.equations}
    mu = {cid: g.order() for cid, g in shifted.items() if g(0, 0) == 0}

    comps = {c.id: c for c in model.components}
    if model.pair.kind == "point" and step == 1:
        kind, n_new = BOUNDARY, 1
    else:
        kind, n_new = EXCEPTIONAL, sum(comps[cid].N * m for cid, m in mu.items())
    for cid, m in mu.items():
        comps[cid] = replace(comps[cid], self_int=comps[cid].self_int - m * m)
    comps[new_id] = DivisorComponent(new_id, kind, n_new, -1, True, step, None)

    kinds = {cid: c.kind for cid, c in comps.items()}
    inter = dict(model.intersections)
    through = sorted(mu, key=lambda c: component_key(c, kinds[c]))
    for i, a in enumerate(through):
        for b in through[i + 1:]:
            if comps[a].exceptional or comps[b].exceptional:
                key = _pair_key(kinds, a, b)
                inter[key] = inter.get(key, 0) - mu[a] * mu[b]
        inter[_pair_key(kinds, a, new_id)] = mu[a]
    inter = {k: v for k, v in inter.items() if v != 0}

    def transform(subst, divide):
        eqs = []
        for cid, g in shifted.items():
            h = divide(subst(g), mu.get(cid, 0))
            if not h.is_constant():
                eqs.append((cid, h))
        return eqs

    xeqs = transform(BivariatePolynomial.chart_x, BivariatePolynomial.divide_x_power) + [(new_id, X)]
    yeqs = transform(BivariatePolynomial.chart_y, BivariatePolynomial.divide_y_power) + [(new_id, Y)]
    xchart = Chart(2 * step - 1, chart.id, "x", p, step, tuple(xeqs))
    ychart = Chart(2 * step, chart.id, "y", p, step, tuple(yeqs))

    blow = Blowup(step, chart.id, p, tuple((cid, mu[cid]) for cid in through))
    ordered = sorted(comps.values(), key=lambda c: component_key(c.id, c.kind))
    ordered_inter = tuple(sorted(inter.items(), key=lambda kv: (component_key(kv[0][0], kinds[kv[0][0]]), component_key(kv[0][1], kinds[kv[0][1]]))))
    return ResolutionModel(
        model.pair,
        model.field,
        model.charts + (xchart, ychart),
        model.blowups + (blow,),
        tuple(ordered),
        ordered_inter,
    )


# ---------------------------------------------------------------------------
# normal crossings
# ---------------------------------------------------------------------------
def _candidate_points(model: ResolutionModel, chart: Chart):
    field = model.field
    pts = set()
    if chart.kind is None:
        if model.pair.kind == "point" and not model.blowups:
            pts.add((as_number(0), as_number(0)))
        eqs = [eq for _, eq in chart.equations]
        if eqs:
            f_red = ONE
            for eq in eqs:
                f_red = f_red * eq
            pts.update(singular_points(f_red, field))
    elif chart.kind == "x":
        from nalink.arith.factor import roots_in_field

        for cid, eq in chart.equations:
            if cid == chart.exceptional:
                continue
            for r in roots_in_field(eq.at_x(0), field):
                pts.add((as_number(0), r))
    else:
        pts.add((as_number(0), as_number(0)))
    return sorted((p for p in pts if _owns(model, chart, p)), key=_point_key)


def special_points(model: ResolutionModel):
    """``[(chart id, point, {component id: multiplicity})]`` for every candidate point."""
    out = []
    for chart in model.charts:
        for p in _candidate_points(model, chart):
            through = {}
            for cid, eq in chart.equations:
                g = eq.shift(*p)
                if g(0, 0) == 0:
                    through[cid] = g
            out.append((chart.id, p, through))
    return out


def _linear_parts_proportional(g1, g2) -> bool:
    a1, b1 = g1.coefficient(1, 0), g1.coefficient(0, 1)
    a2, b2 = g2.coefficient(1, 0), g2.coefficient(0, 1)
    return a1 * b2 - a2 * b1 == 0


def nc_violations(model: ResolutionModel):
    """Closed points where the divisor fails normal crossings or ``I_Z`` is not principal."""
    found = []
    for chart_id, p, through in special_points(model):
        reason = None
        kinds = {cid: model.component(cid).kind for cid in through}
        if any(g.order() >= 2 for g in through.values()):
            reason = "ComponentSingular"
        elif len(through) >= 3:
            reason = "TriplePoint"
        elif len(through) == 2 and _linear_parts_proportional(*through.values()):
            reason = "Tangency"
        elif chart_id == 0 and model.pair.kind == "point" and not model.blowups and p == (0, 0):
            reason = "NonPrincipalPullback"
        if reason:
            comps = tuple(sorted(through, key=lambda c: component_key(c, kinds[c])))
            found.append(Violation(chart_id, p, reason, comps))
    return sorted(found, key=lambda v: (v.chart, _point_key(v.point)))


def is_log_resolution(model: ResolutionModel) -> bool:
    return not nc_violations(model)


# ---------------------------------------------------------------------------
# resolution driver
# ---------------------------------------------------------------------------
def resolve_model(model: ResolutionModel, blowup_cap: int = 64) -> ResolutionModel:
    """Blow up the first violation until none is left."""
    while True:
        violations = nc_violations(model)
        if not violations:
            return model
        if len(model.blowups) >= blowup_cap:
            raise BlowupCapExceeded(f"still not a log resolution after {blowup_cap} blowups")
        v = violations[0]
        model = blow_up(model, PointRef(v.chart, v.point))


def resolve(pair: Pair, config: ResolveConfig | None = None):
    """Embedded log resolution of ``pair``; returns ``(model, dual graph)``.

    Whenever a center or a component needs a root outside the current field,
    the field is extended and the computation restarts from scratch, so the
    result depends only on the final field.
    """
    config = config or ResolveConfig()
    field = config.field()
    while True:
        try:
            model = resolve_model(initial_model(pair, field), config.blowup_cap)
            return model, to_dual_graph(model)
        except NeedsExtension as exc:
            field = field.extend(exc.minimal_polynomial)


def to_dual_graph(model: ResolutionModel):
    from nalink.dualgraph import DualGraph, Vertex

    if nc_violations(model):
        raise NotNormalCrossings("the model is not a log resolution")
    vertices = [Vertex(c.id, c.kind, c.N, c.self_int, c.rational) for c in model.components]
    edges = []
    for _, _, through in special_points(model):
        if len(through) == 2:
            edges.append(tuple(through))
    boundary = [c.id for c in model.components if c.kind == BOUNDARY]
    return DualGraph.build(vertices, edges, boundary)
