"""Command line interface.

Exit codes are shared by every command: 0 on success, 1 when the property in
question fails (or the classifier answers Unknown), 2 on invalid input or an
exceeded search cap.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .chirality import (
    NonplanarInput,
    build_hopf_ladder,
    classify_embedding,
    cycles_with_bridge,
    grid_patch,
    h3_extension,
    h3_extension_torus,
    obstruction_problems,
    torus_knot_cycle,
    verdict_problems,
    Chiral,
    Unknown,
)
from .circulant import build_S, certificate_problems, reduce_to_K5, ReductionCertificate
from .documents import DocumentError, dumps, emit, emit_model, loads, parse
from .graph import K5, K33, GraphError, MultiGraph, OracleCapExceeded, complete_graph, has_minor, verify_minor_model
from .svg import render
from .torus import ArrangementError, CurveSpec, TorusGraph, arrangement

log = logging.getLogger("toral")

OK, FAILED, INVALID = 0, 1, 2


class UsageError(Exception):
    pass


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _read_doc(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    return parse(loads(text))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _graph_of(obj) -> MultiGraph:
    if isinstance(obj, TorusGraph):
        return obj.graph
    if isinstance(obj, MultiGraph):
        return obj
    raise UsageError("expected a graph or torus_graph document")


# ---------------------------------------------------------------------------
# commands


def cmd_arrange(args) -> int:
    specs = []
    for i, text in enumerate(args.curve):
        vals = _int_list(text)
        if len(vals) not in (2, 3):
            raise UsageError(f"--curve expects a,b or a,b,k (got {text!r})")
        a, b, k = (*vals, 1) if len(vals) == 2 else vals
        try:
            specs.append(CurveSpec.from_pair(a, b, k, anchored=(i == args.corner_anchor)))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.corner_anchor is not None and not 0 <= args.corner_anchor < len(specs):
        raise UsageError("--corner-anchor is not a curve index")
    try:
        tg = arrangement(specs, subdivide=args.subdivide)
    except ArrangementError as exc:
        log.error("degenerate arrangement: %s", exc)
        return FAILED
    _write(args.out, dumps(emit(tg)))
    return OK


def cmd_reduce(args) -> int:
    try:
        cert = reduce_to_K5((args.p, args.q))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, dumps(emit(cert)))
    return OK


def cmd_verify(args) -> int:
    obj = _read_doc(args.cert)
    graph = _read_doc(args.graph) if args.graph else None
    if isinstance(obj, ReductionCertificate):
        problems = certificate_problems(obj)
    elif isinstance(obj, tuple):
        target, model = obj
        if graph is None:
            raise UsageError("verifying a minor model needs --graph")
        ok = verify_minor_model(_graph_of(graph), K5 if target == "k5" else K33, model)
        problems = [] if ok else ["minor model is invalid"]
    elif hasattr(obj, "tag"):
        if not isinstance(obj, Chiral):
            log.info("verdict %s carries no certificate", obj.tag)
            return OK
        if isinstance(graph, TorusGraph):
            problems = verdict_problems(graph, obj)
        else:
            problems = obstruction_problems(obj.obstruction)
    elif hasattr(obj, "kind"):
        problems = obstruction_problems(obj)
    else:
        raise UsageError("document is not a certificate")
    for p in problems:
        print(p, file=sys.stderr)
    return FAILED if problems else OK


def cmd_classify(args) -> int:
    tg = _read_doc(args.graph)
    if not isinstance(tg, TorusGraph):
        raise UsageError("classify needs a torus_graph document")
    try:
        verdict = classify_embedding(tg, cap=args.cap)
    except NonplanarInput as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, dumps(emit(verdict)))
    print(verdict.tag + (f" ({verdict.case.value})" if isinstance(verdict, Chiral) else ""), file=sys.stderr)
    return FAILED if isinstance(verdict, Unknown) else OK


def cmd_render(args) -> int:
    tg = _read_doc(args.graph)
    if not isinstance(tg, TorusGraph):
        raise UsageError("render needs a torus_graph document")
    _write(args.out, render(tg, universal_cover=args.universal_cover, title=args.title))
    return OK


def cmd_oracle(args) -> int:
    g = _graph_of(_read_doc(args.graph))
    target = K5 if args.target == "k5" else K33
    model = has_minor(g, target, cap=args.cap)
    if model is None:
        print(f"no {args.target} minor", file=sys.stderr)
        return FAILED
    _write(args.out, dumps(emit_model(args.target, model)))
    return OK


def cmd_build(args) -> int:
    what = args.what
    if what == "circulant":
        try:
            obj = build_S((args.p, args.q))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif what == "ladder":
        if args.n < 0:
            raise UsageError("--n must be >= 0")
        obj = build_hopf_ladder(args.n, mirrored=args.mirrored).torus
    elif what == "grid":
        obj = grid_patch(args.rows, args.cols)
    elif what == "complete":
        obj = complete_graph(args.n)
    elif what == "k33":
        obj = K33
    elif what == "h3-extension":
        obj = h3_extension_torus(args.symmetric) if args.torus else h3_extension(args.symmetric)
    elif what == "link-bridge":
        obj = cycles_with_bridge(tuple(_int_list(args.cls)))
    else:  # knot
        obj = torus_knot_cycle(tuple(_int_list(args.cls)), args.pieces)
    _write(args.out, dumps(emit(obj)))
    return OK


def _dot_id(x) -> str:
    return '"' + str(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: MultiGraph) -> str:
    lines = ["graph G {"]
    lines += [f"  {_dot_id(v)};" for v in g.vertices]
    lines += [f"  {_dot_id(u)} -- {_dot_id(v)} [key={_dot_id(e)}];" for e, (u, v) in g.edges.items()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export(args) -> int:
    obj = _read_doc(args.graph)
    if args.format == "dot":
        _write(args.out, to_dot(_graph_of(obj)))
    else:
        _write(args.out, dumps(emit(obj)))
    return OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toral", description="Spatial graphs on the torus: arrangements, minors, chirality.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("arrange", help="overlay geodesic torus curves")
    p.add_argument("--curve", action="append", required=True, metavar="A,B[,K]")
    p.add_argument("--corner-anchor", type=int, metavar="I", help="pin curve I through the corner")
    p.add_argument("--subdivide", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_arrange)

    p = sub.add_parser("reduce", help="certified reduction of S(p,q) to K5")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="re-check a certificate, obstruction or verdict")
    p.add_argument("--cert", required=True)
    p.add_argument("--graph", help="graph the certificate refers to (minor models, witnesses)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="chirality verdict for a torus graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    p.add_argument("--cap", type=int, default=20, help="edge cap of the cycle census")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("render", help="draw a torus graph as SVG")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    p.add_argument("--universal-cover", action="store_true")
    p.add_argument("--title")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("oracle", help="brute-force minor search")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    m = osub.add_parser("minor")
    m.add_argument("--graph", required=True)
    m.add_argument("--target", choices=["k5", "k33"], required=True)
    m.add_argument("--cap", type=int)
    m.add_argument("--out")
    m.set_defaults(func=cmd_oracle)

    p = sub.add_parser("build", help="emit a standard graph document")
    bsub = p.add_subparsers(dest="what", required=True)
    b = bsub.add_parser("circulant")
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b = bsub.add_parser("ladder")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--mirrored", action="store_true")
    b = bsub.add_parser("grid")
    b.add_argument("--rows", type=int, default=3)
    b.add_argument("--cols", type=int, default=3)
    b = bsub.add_parser("complete")
    b.add_argument("--n", type=int, required=True)
    bsub.add_parser("k33")
    b = bsub.add_parser("h3-extension")
    b.add_argument("--symmetric", action="store_true", help="cross edge from vertex 1 instead of 0")
    b.add_argument("--torus", action="store_true", help="emit the torus realization")
    b = bsub.add_parser("link-bridge")
    b.add_argument("--class", dest="cls", default="1,2")
    b = bsub.add_parser("knot")
    b.add_argument("--class", dest="cls", default="2,3")
    b.add_argument("--pieces", type=int, default=5)
    for b in bsub.choices.values():
        b.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("export", help="convert a graph document")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", choices=["dot", "json"], required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, DocumentError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    except OracleCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
