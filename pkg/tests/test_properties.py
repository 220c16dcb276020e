"""Randomized invariants, driven by hypothesis seeds and by the fixed-seed suite."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

import propsuite
from nalink.arith.linalg import is_negative_definite
from nalink.blowup import PointRef, blow_up
from nalink.space import log_essential
from nalink.valuation import DivisorialValuation, eval_ideal

seeds = st.integers(0, 2**20)


@given(seeds)
def test_random_blowup_invariants(seed):
    rng = random.Random(seed)
    entry = rng.choice([s for s in propsuite.CORPUS if s != "x^2 + y^2"])
    model, _ = propsuite.corpus_resolution(entry)
    for _ in range(rng.randint(1, 3)):
        chart, p = rng.choice(propsuite._center_choices(model, rng))
        new = blow_up(model, PointRef(chart, p))
        step = new.blowups[-1]
        e = new.component(f"E{step.step}")
        assert e.self_int == -1
        assert eval_ideal(DivisorialValuation.of(new, e.id), new.pair.ideal()) == e.N
        for cid, mu in step.multiplicities:
            assert new.component(cid).self_int == model.component(cid).self_int - mu * mu
        assert is_negative_definite(new.exceptional_matrix())
        model = new


@given(seeds)
@settings(max_examples=25)
def test_greedy_is_order_independent(seed):
    rng = random.Random(seed)
    _, g = propsuite.corpus_resolution(rng.choice(propsuite.CORPUS))
    h = propsuite.random_graph_blowups(g, rng, rng.randint(0, 3))
    reference = set(log_essential(h).S)
    for _ in range(3):
        assert set(log_essential(h, rng=rng).S) == reference


def test_confluence_suite():
    count, bad = propsuite.check_confluence()
    assert count >= 100 and not bad


def test_contraction_keeps_definiteness():
    count, bad = propsuite.check_contraction_definiteness()
    assert count >= 100 and not bad


def test_valuation_axioms_suite():
    count, bad = propsuite.check_valuation_axioms(pairs_per_valuation=200)
    assert count >= 200 and not bad
