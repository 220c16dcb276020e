"""Randomized property checks with a fixed seed.

Each ``check_*`` function returns ``(instances, violations)``: how many
random instances were examined and a list of human-readable violations.
"""

import random
from fractions import Fraction

from nalink.arith.linalg import is_negative_definite
from nalink.arith.poly import BivariatePolynomial
from nalink.blowup import EXCEPTIONAL, Pair, PointRef, blow_up, resolve, special_points
from nalink.dualgraph import (
    DualGraph,
    Vertex,
    blow_up_edge,
    blow_up_vertex,
    contract,
    contract_all,
    exceptional_negative_definite,
)
from nalink.space import VertexSet, analytic_boundary, is_regular, log_essential
from nalink.valuation import DivisorialValuation, eval_ideal

SEED = 20240611

CORPUS = [
    "point",
    "y^2 - x^3",
    "y^2 - x^4",
    "x*y",
    "y^3 - x^5",
    "y^3 - x^4",
    "y^2 - x^5",
    "y^2 - x^6",
    "x*y*(x + y)",
    "(y^2 - x^3)*x",
    "y^2 - x^2*(x + 1)",
    "x^2 + y^2",
]

_cache = {}


def corpus_resolution(entry):
    if entry not in _cache:
        _cache[entry] = resolve(Pair.point() if entry == "point" else Pair.curve(entry))
    return _cache[entry]


def random_poly(rng, max_deg=4, terms=4, constant=False):
    while True:
        out = {}
        for _ in range(rng.randint(1, terms)):
            d = rng.randint(0 if constant else 1, max_deg)
            i = rng.randint(0, d)
            out[(i, d - i)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        f = BivariatePolynomial(out)
        if not f.is_zero():
            return f


def random_graph(rng, max_vertices=7):
    n = rng.randint(1, max_vertices)
    verts = [Vertex(f"V{i}", EXCEPTIONAL, rng.randint(1, 6), rng.randint(-5, -1), True) for i in range(n)]
    edges = []
    for _ in range(rng.randint(0, 2 * n)):
        a, b = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if a != b:
            edges.append((f"V{a}", f"V{b}"))
    return DualGraph.build(verts, edges)


def random_graph_blowups(g, rng, steps):
    for _ in range(steps):
        if g.edges and rng.random() < 0.5:
            a, b = rng.choice(g.edges)
            g = blow_up_edge(g, a, b)
        else:
            g = blow_up_vertex(g, rng.choice(g.ids))
    return g


def _shape(g):
    return (g.vertices, g.edges)


# ---------------------------------------------------------------------------
def check_valuation_axioms(pairs_per_valuation=200, seed=SEED):
    rng = random.Random(seed)
    count, bad = 0, []
    for entry in ("point", "y^2 - x^3", "y^2 - x^4", "y^3 - x^5", "(y^2 - x^3)*x"):
        model, _ = corpus_resolution(entry)
        for comp in model.components:
            v = DivisorialValuation.of(model, comp.id)
            for _ in range(pairs_per_valuation):
                f, g = random_poly(rng), random_poly(rng)
                vf, vg = v.eval(f), v.eval(g)
                count += 1
                if v.eval(f * g) != vf + vg:
                    bad.append(f"{entry}/{comp.id}: v(fg) != v(f)+v(g) for f={f}, g={g}")
                s = f + g
                if s.is_zero():
                    continue
                vs = v.eval(s)
                if vs < min(vf, vg) or (vf != vg and vs != min(vf, vg)):
                    bad.append(f"{entry}/{comp.id}: ultrametric fails for f={f}, g={g}")
    return count, bad


def _center_choices(model, rng):
    """Special points plus a few general points of exceptional divisors."""
    choices = [(cid, p) for cid, p, through in special_points(model) if through]
    for comp in model.components:
        if comp.exceptional:
            chart = 2 * comp.created - 1
            p = (Fraction(0), Fraction(rng.randint(-4, 4)))
            if p not in model.centers_in(chart):
                choices.append((chart, p))
    return choices


def check_blowup_invariants(instances=120, seed=SEED):
    """N cross-check, strict self-intersection decrease and negative definiteness per blowup."""
    rng = random.Random(seed)
    count = 0
    bad = {"N": [], "decrease": [], "definite": []}
    entries = [s for s in CORPUS if s not in ("x^2 + y^2",)]
    while count < instances:
        model, _ = corpus_resolution(rng.choice(entries))
        for _ in range(rng.randint(1, 4)):
            chart, p = rng.choice(_center_choices(model, rng))
            before = {c.id: c.self_int for c in model.components}
            new = blow_up(model, PointRef(chart, p))
            step = new.blowups[-1]
            e_id = f"E{step.step}"
            count += 1
            n_val = eval_ideal(DivisorialValuation.of(new, e_id), new.pair.ideal())
            if n_val != new.component(e_id).N:
                bad["N"].append(f"{new.pair.describe()} {e_id}: N={new.component(e_id).N}, valuation {n_val}")
            for cid, mu in step.multiplicities:
                if not new.component(cid).self_int < before[cid]:
                    bad["decrease"].append(f"{cid} did not decrease at step {step.step}")
            if not is_negative_definite(new.exceptional_matrix()):
                bad["definite"].append(f"{new.pair.describe()} after step {step.step}")
            model = new
    return count, bad


def check_n_cross_check():
    count, bad = 0, []
    for entry in CORPUS:
        model, _ = corpus_resolution(entry)
        for comp in model.components:
            if comp.exceptional:
                count += 1
                val = eval_ideal(DivisorialValuation.of(model, comp.id), model.pair.ideal())
                if val != comp.N:
                    bad.append(f"{entry} {comp.id}: N={comp.N}, v(I_Z)={val}")
    return count, bad


def check_contraction_definiteness(instances=120, seed=SEED):
    rng = random.Random(seed)
    count, bad = 0, []
    entries = list(CORPUS)
    while count < instances:
        _, g0 = corpus_resolution(rng.choice(entries))
        g = random_graph_blowups(g0, rng, rng.randint(1, 5))
        candidates = [v for v in g.exceptional_ids() if v not in (g.boundary or ())]
        if not candidates:
            continue
        R = rng.sample(candidates, rng.randint(1, len(candidates)))
        report = contract_all(g, R)
        cur = g
        for v in report.trace:
            cur = contract(cur, v)
            count += 1
            if not exceptional_negative_definite(cur):
                bad.append(f"definiteness lost contracting {v}")
        if _shape(cur) != _shape(report.graph):
            bad.append("trace does not replay to the reported graph")
    return count, bad


def check_round_trip(instances=200, seed=SEED):
    rng = random.Random(seed)
    count, bad = 0, []
    while count < instances:
        g = random_graph(rng)
        if g.edges and rng.random() < 0.6:
            a, b = rng.choice(g.edges)
            h = blow_up_edge(g, a, b, "NEW")
        else:
            h = blow_up_vertex(g, rng.choice(g.ids), "NEW")
        back = contract(h, "NEW")
        count += 1
        if _shape(back) != _shape(g):
            bad.append(f"round trip changed {g}")
    return count, bad


def extended_graphs(seed=SEED, per_entry=3):
    """Corpus graphs with random extra blowups: ``[(entry, original, extended)]``."""
    rng = random.Random(seed)
    out = []
    for entry in CORPUS:
        _, g = corpus_resolution(entry)
        for _ in range(per_entry):
            out.append((entry, g, random_graph_blowups(g, rng, rng.randint(1, 3))))
    return out


def check_greedy_order(shuffles=20, seed=SEED):
    rng = random.Random(seed)
    graphs = [corpus_resolution(s)[1] for s in CORPUS] + [h for _, _, h in extended_graphs(seed, 1)]
    count, bad = 0, []
    for g in graphs:
        reference = log_essential(g).S
        for _ in range(shuffles):
            count += 1
            got = log_essential(g, rng=rng).S
            if set(got) != set(reference):
                bad.append(f"shuffled greedy gave {got} instead of {reference}")
    return count, bad


def check_minimality(target=100, seed=SEED):
    rng = random.Random(seed)
    count, bad = 0, []
    for entry, g, h in extended_graphs(seed, 3):
        ess_h = set(log_essential(h).S)
        ess_g = set(log_essential(g).S)
        if ess_h != ess_g:
            bad.append(f"{entry}: extra blowups changed the essential set {sorted(ess_g)} -> {sorted(ess_h)}")
        boundary = set(analytic_boundary(h))
        others = [v for v in h.ids if v not in boundary]
        samples = [set(h.ids)] + [boundary | {v for v in others if rng.random() < 0.6} for _ in range(12)]
        for S in samples:
            vs = VertexSet.make(h, S)
            if is_regular(vs)[0]:
                count += 1
                if not ess_h <= S:
                    bad.append(f"{entry}: regular set {sorted(S)} misses {sorted(ess_h - S)}")
    if count < target:
        bad.append(f"only {count} regular vertex sets sampled")
    return count, bad


def check_confluence(instances=100, seed=SEED):
    """Contracting every new vertex of a random blowup sequence, in any order, restores the graph."""
    rng = random.Random(seed)
    count, bad = 0, []
    while count < instances:
        _, g0 = corpus_resolution(rng.choice(CORPUS))
        h = random_graph_blowups(g0, rng, rng.randint(1, 5))
        new = [v for v in h.ids if not g0.has_vertex(v)]
        finals = set()
        for k in range(4):
            report = contract_all(h, new, rng=rng if k else None)
            finals.add(_shape(report.graph))
        count += 1
        if finals != {_shape(g0)}:
            bad.append(f"contraction orders disagree on a cluster of {len(new)} vertices")
    return count, bad
