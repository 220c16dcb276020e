"""Command-line front end: ``nalink resolve|essential|check|classify|skeleton|eval|hj``.

Exit codes: 0 success, 1 input/parse error, 2 arithmetic limits (a needed
field extension or the blowup cap), 3 invalid or unsuitable vertex set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from nalink.arith import upoly
from nalink.arith.poly import BivariatePolynomial
from nalink.blowup import Pair, ResolveConfig, resolve
from nalink.dualgraph import from_json, hj_chain, hj_continued_fraction, intersection_matrix, to_dot, to_json
from nalink.errors import (
    BadParameters,
    BlowupCapExceeded,
    EmptyBoundary,
    InvalidVertexSet,
    NeedsExtension,
    NonSimpleComponent,
    PolynomialSyntaxError,
    TowerBoundExceeded,
    UnknownVertex,
)
from nalink.space import VertexSet, analytic_boundary, classify, is_regular, log_essential, skeleton
from nalink.valuation import DivisorialValuation, log_ratio, normalize

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

DEFAULT_EXT_BOUND = 8
ENV_EXT_BOUND = "NALINK_EXT_BOUND"


class InputError(Exception):
    pass


@dataclass(frozen=True)
class PairDescriptor:
    pair: Pair
    ext_bound: int | None = None
    blowup_cap: int | None = None


def parse_pair_toml(text: str) -> PairDescriptor:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"invalid TOML: {exc}") from exc
    z = data.get("Z")
    if not isinstance(z, dict) or "type" not in z:
        raise InputError("the pair needs a [Z] table with a 'type' key")
    try:
        if z["type"] == "point":
            pair = Pair.point()
        elif z["type"] == "curve":
            if "poly" not in z:
                raise InputError("a curve pair needs 'poly'")
            pair = Pair.curve(str(z["poly"]))
        else:
            raise InputError(f"unknown Z type {z['type']!r}")
    except (PolynomialSyntaxError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    opts = data.get("options", {})
    return PairDescriptor(pair, opts.get("ext_bound"), opts.get("blowup_cap"))


def _ext_bound(args, desc: PairDescriptor | None) -> int:
    if args.ext_bound is not None:
        return args.ext_bound
    if desc is not None and desc.ext_bound is not None:
        return int(desc.ext_bound)
    env = os.environ.get(ENV_EXT_BOUND)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"{ENV_EXT_BOUND} must be an integer, got {env!r}") from exc
    return DEFAULT_EXT_BOUND


def _config(args, desc: PairDescriptor | None) -> ResolveConfig:
    cap = args.blowup_cap
    if cap is None:
        cap = desc.blowup_cap if desc is not None and desc.blowup_cap is not None else 64
    return ResolveConfig(max_degree=_ext_bound(args, desc), blowup_cap=int(cap))


def _load_pair(args) -> PairDescriptor:
    if getattr(args, "point", False):
        return PairDescriptor(Pair.point())
    if getattr(args, "curve", None):
        try:
            return PairDescriptor(Pair.curve(args.curve))
        except (PolynomialSyntaxError, ValueError) as exc:
            raise InputError(str(exc)) from exc
    if not args.input:
        raise InputError("no pair given: use --input, --curve or --point")
    return parse_pair_toml(_read(args.input))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_graph(args):
    """Reference graph from a pair (resolved here) or from a dual-graph JSON file."""
    if args.input and args.input.endswith(".json"):
        try:
            return from_json(_read(args.input)), None
        except (ValueError, UnknownVertex) as exc:
            raise InputError(str(exc)) from exc
    desc = _load_pair(args)
    model, graph = resolve(desc.pair, _config(args, desc))
    return graph, model


def _vertex_set(args, graph) -> VertexSet:
    S, boundary = None, None
    if getattr(args, "vertex_set", None):
        try:
            data = json.loads(_read(args.vertex_set))
            S, boundary = data["S"], data.get("boundary")
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"malformed vertex set: {exc}") from exc
    if getattr(args, "S", None):
        S = [s.strip() for s in args.S.split(",") if s.strip()]
    if S is None:
        S = graph.ids
    return VertexSet.make(graph, S, boundary)


def _components_report(vs: VertexSet):
    return [{"component": c.describe(), "class": str(cls)} for c, cls in classify(vs)]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------
def cmd_resolve(args):
    desc = _load_pair(args)
    model, graph = resolve(desc.pair, _config(args, desc))
    if args.format == "dot":
        return to_dot(graph)
    return {
        "command": "resolve",
        "pair": desc.pair.describe(),
        "field": model.field.describe(),
        "resolution": {
            "blowups": len(model.blowups),
            "centers": [
                {"step": b.step, "chart": b.chart, "point": [str(c) for c in b.center]} for b in model.blowups
            ],
            "divisors": [
                {"id": c.id, "kind": c.kind, "N": c.N, "self_int": c.self_int, "rational": c.rational}
                for c in model.components
            ],
        },
        "dual_graph": to_json(graph),
    }


def cmd_essential(args):
    graph, model = _load_graph(args)
    boundary = analytic_boundary(model) if model is not None else analytic_boundary(graph)
    ess = log_essential(graph, boundary)
    return {"command": "essential", "boundary": list(ess.boundary), "essential": list(ess.S)}


def cmd_check(args):
    graph, _ = _load_graph(args)
    vs = _vertex_set(args, graph)
    regular, _ = is_regular(vs)
    return {"command": "check", **vs.describe(), "valid": True, "regular": regular, "components": _components_report(vs)}


def cmd_classify(args):
    graph, _ = _load_graph(args)
    vs = _vertex_set(args, graph)
    return {"command": "classify", **vs.describe(), "components": _components_report(vs)}


def cmd_skeleton(args):
    graph, _ = _load_graph(args)
    vs = _vertex_set(args, graph)
    return {"command": "skeleton", **vs.describe(), "skeleton": skeleton(vs).describe()}


def cmd_eval(args):
    desc = _load_pair(args)
    model, _ = resolve(desc.pair, _config(args, desc))
    try:
        f = BivariatePolynomial.parse(args.poly)
    except PolynomialSyntaxError as exc:
        raise InputError(str(exc)) from exc
    try:
        v = DivisorialValuation.of(model, args.vertex)
    except UnknownVertex as exc:
        raise InputError(str(exc)) from exc
    out = {"command": "eval", "vertex": args.vertex, "poly": str(f), "value": v.eval(f)}
    nv = normalize(v)
    out["scale"] = str(nv.scale)
    out["normalized_value"] = str(nv.eval(f))
    if args.ratio:
        out["log_ratio"] = str(log_ratio(v, f, BivariatePolynomial.parse(args.ratio)))
    return out


def cmd_hj(args):
    graph = hj_chain(args.n, args.q, boundary=args.boundary == "anchors")
    if args.format == "dot":
        return to_dot(graph)
    chain = [v.self_int for v in graph.vertices if v.kind == "Exceptional"]
    return {
        "command": "hj",
        "n": args.n,
        "q": args.q,
        "continued_fraction": hj_continued_fraction(args.n, args.q),
        "chain": chain,
        "determinant": intersection_matrix(graph).minors[-1],
        "dual_graph": to_json(graph),
    }


COMMANDS = {
    "resolve": cmd_resolve,
    "essential": cmd_essential,
    "check": cmd_check,
    "classify": cmd_classify,
    "skeleton": cmd_skeleton,
    "eval": cmd_eval,
    "hj": cmd_hj,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nalink", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pair=True):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("json", "dot"), default="json")
        p.add_argument("--timing", action="store_true", help="print wall time to stderr")
        if pair:
            p.add_argument("--input", help="pair (.toml) or dual graph (.json)")
            p.add_argument("--curve", help="inline curve equation, instead of --input")
            p.add_argument("--point", action="store_true", help="Z is the origin")
            p.add_argument("--ext-bound", type=int, help="largest allowed degree [K:Q]")
            p.add_argument("--blowup-cap", type=int)

    common(sub.add_parser("resolve", help="log resolution and dual graph"))
    common(sub.add_parser("essential", help="log essential vertex set"))
    for name in ("check", "classify", "skeleton"):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--S", help="comma-separated vertex ids (default: all)")
        p.add_argument("--vertex-set", help="vertex-set JSON file")
    p = sub.add_parser("eval", help="evaluate a divisorial valuation")
    common(p)
    p.add_argument("--vertex", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--ratio", help="also report v(poly)/v(ratio)")
    p = sub.add_parser("hj", help="Hirzebruch-Jung chain of n/q")
    common(p, pair=False)
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--boundary", choices=("anchors", "none"), default="anchors")
    return parser


def _render(result) -> str:
    if isinstance(result, str):
        return result
    return json.dumps(result, indent=2) + "\n"


def write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".nalink-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, text: str):
    if getattr(args, "out", None):
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _error(args, exc, code: int) -> int:
    report = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, (NeedsExtension, TowerBoundExceeded)):
        report["minimal_polynomial"] = upoly.to_str(exc.minimal_polynomial)
    _emit(args, _render(report))
    print(f"nalink: {exc}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        result = COMMANDS[args.command](args)
    except (InputError, PolynomialSyntaxError, BadParameters) as exc:
        return _error(args, exc, 1)
    except (NeedsExtension, TowerBoundExceeded, BlowupCapExceeded) as exc:
        return _error(args, exc, 2)
    except (InvalidVertexSet, EmptyBoundary, NonSimpleComponent) as exc:
        return _error(args, exc, 3)
    _emit(args, _render(result))
    if args.timing:
        print(f"nalink: {args.command} took {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
