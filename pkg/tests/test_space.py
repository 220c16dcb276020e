import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import propsuite
from nalink.dualgraph import DualGraph, Vertex, blow_up_edge, blow_up_vertex, hj_chain
from nalink.errors import EmptyBoundary, InvalidVertexSet, NonSimpleComponent, UnknownVertex
from nalink.space import (
    FiberClass,
    VertexSet,
    analytic_boundary,
    classify,
    complement_components,
    component_of,
    is_regular,
    log_essential,
    model_poset_check,
    skeleton,
)


def test_cusp_vertex_sets(cusp):
    model, g = cusp
    assert analytic_boundary(model) == ("Z~",)
    full = VertexSet.full(g)
    assert is_regular(full)[0]
    assert [str(c) for c in complement_components(full)] == ["PureEdge(Z~-E3)", "PureEdge(E1-E3)", "PureEdge(E2-E3)"]
    assert [str(cls) for _, cls in classify(full)] == ["StandardAnnulus"] * 3
    no_e1 = full.without("E1")
    assert [str(cls) for _, cls in classify(no_e1)][0] == "NonSimple(NotContractible)"
    assert component_of(no_e1, "E1").vertices == ("E1",)
    with pytest.raises(UnknownVertex):
        component_of(no_e1, "E2")


def test_disc_and_annulus_components(origin):
    _, g = origin
    g2 = blow_up_vertex(g, "E1")  # a (-1) leaf on E1
    vs = VertexSet.make(g2, ["E1"])
    [(_, cls)] = classify(vs)
    assert cls == FiberClass.disc()
    g3 = blow_up_edge(DualGraph.build(g2.vertices, g2.edges, ("E1",)), "E1", "E2")
    vs = VertexSet.make(g3, ["E1", "E2"])
    kinds = sorted(str(cls) for _, cls in classify(vs))
    assert kinds == ["StandardAnnulus"]
    assert is_regular(vs)[0]


def test_fiber_class_rendering():
    assert str(FiberClass.annulus(1)) == "StandardAnnulus"
    assert str(FiberClass.annulus(4)) == "Annulus(4)"
    assert str(FiberClass.non_simple("TriplePoint")) == "NonSimple(TriplePoint)"
    assert not FiberClass.annulus(2).is_simple
    with pytest.raises(ValueError):
        FiberClass.annulus(0)


def test_vertex_set_validation(cusp):
    _, g = cusp
    with pytest.raises(InvalidVertexSet):
        VertexSet.make(g, ["E1", "E2", "E3"])
    with pytest.raises(InvalidVertexSet):
        VertexSet.make(g, ["Z~", "E9"])
    bare = DualGraph.build([Vertex("A", "Exceptional", 1, -1, True)], [])
    with pytest.raises(EmptyBoundary):
        VertexSet.full(bare)
    with pytest.raises(EmptyBoundary):
        VertexSet.make(g, ["Z~"], boundary=[])


@pytest.mark.parametrize(
    "entry,essential",
    [
        ("point", ["E1"]),
        ("x*y", ["Z1~", "Z2~"]),
        ("y^2 - x^3", ["Z~", "E1", "E2", "E3"]),
        ("x*y*(x + y)", ["Z1~", "Z2~", "Z3~", "E1"]),
    ],
)
def test_essential_examples(entry, essential):
    _, g = propsuite.corpus_resolution(entry)
    assert list(log_essential(g).S) == essential


def test_skeletons():
    _, g = propsuite.corpus_resolution("y^2 - x^2*(x + 1)")
    sk = skeleton(log_essential(g))
    assert sk.cycle_rank == 1 and len(sk.edges) == 2
    g = hj_chain(5, 4)
    sk = skeleton(VertexSet.make(g, ["A1", "A2"]))
    assert sk.edges == (("A1", "A2", 5),) and sk.cycle_rank == 0
    g = hj_chain(5, 2)
    with pytest.raises(NonSimpleComponent):
        skeleton(VertexSet.make(g, ["A1", "A2"]))


def test_poset_check(cusp):
    _, g = cusp
    small = VertexSet.make(g, ["Z~", "E3"])
    big = VertexSet.full(g)
    assert model_poset_check(small, big)
    check = model_poset_check(big, small)
    assert not check.ok and not check.subset


@given(st.integers(0, 10_000))
def test_essential_contained_in_regular_sets(seed):
    rng = random.Random(seed)
    entry = rng.choice(propsuite.CORPUS)
    _, g = propsuite.corpus_resolution(entry)
    h = propsuite.random_graph_blowups(g, rng, rng.randint(1, 3))
    ess = set(log_essential(h).S)
    assert ess == set(log_essential(g).S)
    boundary = set(analytic_boundary(h))
    S = boundary | {v for v in h.ids if rng.random() < 0.5}
    vs = VertexSet.make(h, S)
    if is_regular(vs)[0]:
        assert ess <= S
