import json
import os
import sys
from fractions import Fraction

import pytest
import sympy

import oracles
from nalink.blowup import (
    Pair,
    PointRef,
    ResolveConfig,
    blow_up,
    initial_model,
    is_log_resolution,
    nc_violations,
    resolve,
    resolve_model,
)
from nalink.errors import BlowupCapExceeded, CenterOffLocus, TowerBoundExceeded

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "scripts"))
import run_corpus  # noqa: E402

DATA = os.path.join(os.path.dirname(__file__), "data", "corpus_expected.json")


def _exceptionals(model):
    return [model.component(e) for e in model.exceptional_ids]


def test_cusp_matches_hand_computation(cusp):
    model, graph = cusp
    exc = _exceptionals(model)
    N, self_int = oracles.hand_chart_resolution(oracles.y**2 - oracles.x**3, oracles.CUSP_STEPS)
    assert [c.N for c in exc] == N == [2, 3, 6]
    assert [c.self_int for c in exc] == self_int == [-3, -2, -1]
    assert model.component("Z~").self_int == -6
    assert sorted(graph.edges) == sorted([("Z~", "E3"), ("E1", "E3"), ("E2", "E3")])


def test_tacnode_matches_hand_computation(tacnode):
    model, graph = tacnode
    N, self_int = oracles.hand_chart_resolution(oracles.y**2 - oracles.x**4, oracles.TACNODE_STEPS)
    assert [c.N for c in _exceptionals(model)] == N
    assert [c.self_int for c in _exceptionals(model)] == self_int
    assert [model.component(z).self_int for z in ("Z1~", "Z2~")] == [-2, -2]
    assert set(graph.neighbors("E2")) == {"Z1~", "Z2~", "E1"}


def test_origin_and_node(origin, node):
    model, graph = origin
    assert len(model.blowups) == 1
    e1 = model.component("E1")
    assert (e1.kind, e1.N, e1.self_int) == ("Boundary", 1, -1)
    model, graph = node
    assert not model.blowups and len(graph.edges) == 1


def test_initial_violations():
    assert [v.reason for v in nc_violations(initial_model(Pair.point()))] == ["NonPrincipalPullback"]
    assert [v.reason for v in nc_violations(initial_model(Pair.curve("y^2-x^3")))] == ["ComponentSingular"]
    assert [v.reason for v in nc_violations(initial_model(Pair.curve("x*y*(x+y)")))] == ["TriplePoint"]
    assert [v.reason for v in nc_violations(initial_model(Pair.curve("y*(y-x^2)")))] == ["Tangency"]
    assert is_log_resolution(initial_model(Pair.curve("x*y")))


def test_resolution_is_idempotent(cusp):
    model, _ = cusp
    assert resolve_model(model) == model
    assert resolve(Pair.curve("y^2 - x^3")) == cusp


def test_extension_restart():
    model, graph = resolve(Pair.curve("x^2 + y^2"))
    assert model.field.degree == 2
    assert len(graph.boundary) == 2 and not model.blowups
    with pytest.raises(TowerBoundExceeded):
        resolve(Pair.curve("x^2 + y^2"), ResolveConfig(max_degree=1))


def test_blowup_cap_and_off_locus():
    with pytest.raises(BlowupCapExceeded):
        resolve(Pair.curve("y^2 - x^3"), ResolveConfig(blowup_cap=2))
    with pytest.raises(CenterOffLocus):
        blow_up(initial_model(Pair.curve("y^2 - x^3")), PointRef(0, (Fraction(1), Fraction(5))))


def test_pair_validation():
    with pytest.raises(ValueError):
        Pair.curve("y - 1")
    with pytest.raises(ValueError):
        Pair.curve("3")


def _to_sympy(f, u, v):
    return sum(sympy.Rational(c.numerator, c.denominator) * u**i * v**j for (i, j), c in f.terms.items())


@pytest.mark.parametrize("entry", ["y^2 - x^3", "y^3 - x^5", "(y^2 - x^3)*x", "y^2 - x^2*(x + 1)"])
def test_sibling_charts_agree(entry):
    model, _ = resolve(Pair.curve(entry))
    x1, y1 = sympy.symbols("x1 y1")
    checked = 0
    for b in model.blowups:
        a_chart, b_chart = model.chart(2 * b.step - 1), model.chart(2 * b.step)
        mult = dict(b.multiplicities)
        for cid, eq_a in a_chart.equations:
            eq_b = dict(b_chart.equations).get(cid)
            if eq_b is None or cid == f"E{b.step}":
                continue
            lhs = sympy.expand(_to_sympy(eq_b, 1 / y1, x1 * y1) * y1 ** mult.get(cid, 0))
            assert sympy.simplify(lhs - _to_sympy(eq_a, x1, y1)) == 0, (entry, cid, b.step)
            checked += 1
    assert checked > 0


def test_corpus_frozen_values():
    with open(DATA) as fh:
        expected = json.load(fh)
    for entry in run_corpus.CORPUS:
        assert json.loads(json.dumps(run_corpus.summarize(entry))) == expected[entry], entry
