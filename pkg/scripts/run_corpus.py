"""Resolve the curve corpus and print (or freeze) a summary per pair.

    python3 scripts/run_corpus.py            # print a table
    python3 scripts/run_corpus.py --check    # compare with tests/data/corpus_expected.json
    python3 scripts/run_corpus.py --write    # refreeze the expected values
"""

import argparse
import json
import sys
import time
from pathlib import Path

from nalink.blowup import Pair, resolve
from nalink.space import analytic_boundary, log_essential

EXPECTED = Path(__file__).resolve().parent.parent / "tests" / "data" / "corpus_expected.json"

CORPUS = [
    "point",
    "y^2 - x^3",
    "y^2 - x^4",
    "x*y",
    "y^3 - x^5",
    "y^3 - x^4",
    "y^2 - x^5",
    "y^2 - x^6",
    "y^3 - x^7",
    "x*y*(x + y)",
    "x*y*(x - y)*(x + y)",
    "y^2 - x^2*(x + 1)",
    "(y^2 - x^3)*x",
    "x^2 - y^3 + y^5",
    "x^2 + y^2",
    "y*(x^2 + y^2)",
    "x^2*y^2 - x^5 - y^5",
]


def pair_of(entry: str) -> Pair:
    return Pair.point() if entry == "point" else Pair.curve(entry)


def summarize(entry: str) -> dict:
    model, graph = resolve(pair_of(entry))
    essential = log_essential(graph, analytic_boundary(model))
    return {
        "blowups": len(model.blowups),
        "field_degree": model.field.degree,
        "vertices": [[v.id, v.kind, v.N, v.self_int] for v in graph.vertices],
        "edges": [list(e) for e in graph.edges],
        "boundary": list(analytic_boundary(model)),
        "essential": list(essential.S),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    ap.add_argument("--write", action="store_true")
    args = ap.parse_args(argv)

    results = {}
    for entry in CORPUS:
        start = time.perf_counter()
        results[entry] = summarize(entry)
        r = results[entry]
        n_vals = [v[2] for v in r["vertices"] if v[1] == "Exceptional"]
        print(f"{entry:22s} blowups={r['blowups']:2d} [K:Q]={r['field_degree']} "
              f"N={n_vals} essential={r['essential']} ({time.perf_counter() - start:.2f} s)")
    if args.write:
        EXPECTED.write_text(json.dumps(results, indent=1) + "\n")
        print(f"wrote {EXPECTED}")
    if args.check:
        frozen = json.loads(EXPECTED.read_text())
        bad = [k for k in frozen if frozen[k] != results.get(k)]
        print("all match" if not bad else f"MISMATCH: {bad}")
        return 1 if bad else 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
