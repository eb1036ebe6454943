"""Command-line interface: ``qgkm <subcommand> ...``.

Exit codes: 0 success, 1 failed check or refusal, 2 parse or usage error.
"""
from __future__ import annotations

import argparse
import sys
from collections import Counter
from typing import Any, Callable

from . import graphfile
from .classify import Classified, Pipeline, classify, probe_biangle_propagation, probe_quadrangle_rigidity
from .cohomology import betti_from_dims, graph_cohomology_dims, FORMALITY_NOTE
from .graph import (
    GkmGraph,
    NoConnection,
    SelfIntersectingPath,
    check_gkm_level,
    enumerate_faces,
    find_connection,
    gkm_level,
    validate_graph,
)
from .models import DegenerateParams, Gr2Params, HpnParams, generate, standard_params
from .quaternionic import (
    ClosureFailure,
    NotComplexFace,
    QuaternionicError,
    classify_face,
    sign_face,
    verify_structure,
)


class Failure(Exception):
    """A check failed; the message goes to stderr and the exit code is 1."""


class Usage(Exception):
    """Bad arguments; exit code 2."""


def vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.doc: dict[str, Any] = {}
        self.lines: list[str] = []

    def put(self, key: str, value: Any, text: str | None = None) -> None:
        self.doc[key] = value
        if text is not None:
            self.lines.append(text)

    def say(self, text: str) -> None:
        self.lines.append(text)

    def flush(self, stream) -> None:
        if self.as_json:
            stream.write(graphfile.pretty_json(self.doc) + "\n")
        elif self.lines:
            stream.write("\n".join(self.lines) + "\n")


def _load_valid(path: str, out: Output) -> tuple:
    g, q = graphfile.load(path)
    rep = validate_graph(g)
    if not rep.ok:
        out.put("valid", False)
        out.put("violations", [v.message for v in rep.violations])
        raise Failure("invalid graph: " + rep.violations[0].message)
    return g, q


def _connection(g: GkmGraph, out: Output):
    try:
        con = find_connection(g)
    except NoConnection as exc:
        out.put("connection", None)
        raise Failure(f"no compatible connection: {exc}")
    out.put("connectionMethod", con.method,
            None if con.unique else "note: graph is not GKM_3; results refer to the connection chosen by backtracking")
    return con


def _need_structure(q, out: Output):
    if q is None:
        out.put("quaternionic", None)
        raise Failure("the file has no quaternionic structure")
    return q


# -- subcommands ---------------------------------------------------------------

def cmd_validate(args, out: Output) -> int:
    g, _ = graphfile.load(args.file)
    rep = validate_graph(g)
    out.put("valid", rep.ok, "valid" if rep.ok else "INVALID")
    out.put("vertices", len(g.vertices), f"vertices: {len(g.vertices)}  edges: {len(g.edges)}  rank: {g.rank}")
    out.put("edges", len(g.edges))
    out.put("rank", g.rank)
    out.put("valence", rep.valence, f"valence: {rep.valence if rep.valence is not None else 'not uniform'}")
    out.put("violations", [{"kind": v.kind, "message": v.message, "where": list(v.where)} for v in rep.violations])
    for v in rep.violations:
        out.say(f"  {v.kind}: {v.message}")
    out.put("warnings", rep.warnings)
    for w in rep.warnings:
        out.say(f"  warning: {w}")
    status = 0 if rep.ok else 1
    if rep.ok:
        level = gkm_level(g)
        out.put("gkmLevel", level, f"GKM level: {level} (any {level} labels at a vertex are independent)")
    if args.gkm_level is not None:
        if args.gkm_level < 2:
            raise Usage("--gkm-level must be at least 2")
        res = check_gkm_level(g, args.gkm_level)
        entry = {"k": args.gkm_level, "ok": res.ok, "vertex": res.vertex, "edges": list(res.edges)}
        out.put("gkmCheck", entry,
                f"GKM_{args.gkm_level}: " + ("yes" if res.ok else f"no, at {res.vertex}: {', '.join(res.edges)}"))
        if not res.ok:
            status = 1
    return status


def cmd_connection(args, out: Output) -> int:
    g, _ = _load_valid(args.file, out)
    con = _connection(g, out)
    entries = []
    out.say(f"connection ({con.method})")
    for e in g.darts():
        images = []
        for f in g.star(e.source):
            h = con(e, f)
            s, c = con.coefficient(e, f)
            images.append({"from": f.edge, "to": h.edge, "sign": s, "c": c})
        entries.append({"edge": e.edge, "source": e.source, "target": e.target, "images": images})
        out.say(f"  along {e.edge} {e.source}->{e.target}: " +
                ", ".join(f"{x['from']}->{x['to']} (s={x['sign']:+d}, c={x['c']})" for x in images))
    out.put("transports", entries)
    return 0


def _faces_with_kinds(g, q, con):
    faces = enumerate_faces(g, con)
    kinds = []
    for face in faces:
        if q is None:
            kinds.append(None)
        else:
            kinds.append(classify_face(face, g, q, con))
    return faces, kinds


def cmd_faces(args, out: Output) -> int:
    g, q = _load_valid(args.file, out)
    con = _connection(g, out)
    try:
        faces, kinds = _faces_with_kinds(g, q, con)
    except SelfIntersectingPath as exc:
        raise Failure(f"self-intersecting connection path: {exc}")
    except QuaternionicError as exc:
        raise Failure(f"face classification failed: {exc}")
    census = Counter(
        (fc.name if fc is not None else f"length {f.length}") for f, fc in zip(faces, kinds))
    out.put("count", len(faces), f"{len(faces)} faces")
    out.put("census", dict(sorted(census.items())))
    for name, k in sorted(census.items()):
        out.say(f"  {k} x {name}")
    listing = []
    for i, (f, fc) in enumerate(zip(faces, kinds)):
        item = {"index": i, "length": f.length, "vertices": list(f.vertices), "edges": list(f.edge_ids)}
        if fc is not None:
            item["kind"] = fc.name
            item["quaternionic"] = fc.quaternionic
            if fc.c is not None:
                item["c"] = fc.c
            if fc.opposite_equal is not None:
                item["oppositeEqual"] = fc.opposite_equal
        listing.append(item)
        tag = f" {fc.name}" if fc is not None else ""
        out.say(f"  [{i}]{tag}: {' -> '.join(f.vertices)} -> {f.vertices[0]}")
    out.put("faces", listing)
    return 0


def cmd_qcheck(args, out: Output) -> int:
    g, q = _load_valid(args.file, out)
    q = _need_structure(q, out)
    con = _connection(g, out)
    rep = verify_structure(g, q, con)
    out.put("valid", rep.ok, "quaternionic structure: " + ("valid" if rep.ok else "INVALID"))
    checks = {}
    for cat, label in (("matching", "perfect matching"), ("pair_sum", "pair sums"),
                       ("pairs_respected", "connection respects pairs"), ("transport", "weight transport")):
        msgs = getattr(rep, cat)
        checks[label] = {"ok": not msgs, "failures": msgs}
        out.say(f"  {label}: " + ("ok" if not msgs else f"FAILED ({len(msgs)}): {msgs[0]}"))
    out.put("checks", checks)
    out.put("notes", rep.notes)
    for n in rep.notes:
        out.say(f"  note: {n}")
    out.put("pairs", q.edge_pairs())
    return 0 if rep.ok else 1


def cmd_sign_face(args, out: Output) -> int:
    g, q = _load_valid(args.file, out)
    q = _need_structure(q, out)
    con = _connection(g, out)
    faces = enumerate_faces(g, con)
    if not 0 <= args.face < len(faces):
        raise Usage(f"--face must be in 0..{len(faces) - 1}")
    face = faces[args.face]
    out.put("face", {"index": args.face, "vertices": list(face.vertices), "edges": list(face.edge_ids)})
    try:
        s = sign_face(face, g, q, con)
    except NotComplexFace as exc:
        out.put("signed", False)
        raise Failure(f"refused: {exc}")
    except (ClosureFailure, QuaternionicError) as exc:
        out.put("signed", False)
        raise Failure(f"signing failed: {exc}")
    out.put("signed", True, f"signed structure on face {args.face}")
    lifts = []
    for d, c in zip(face.darts, s.coefficients):
        lifts.append({"edge": d.edge, "source": d.source, "target": d.target,
                      "lift": list(s.lifts[d]), "c": c, "lambda": list(s.lambdas[d.source])})
        out.say(f"  {d.edge} {d.source}->{d.target}: {vec(s.lifts[d])}  c={c}  lambda at {d.source}: "
                f"{vec(s.lambdas[d.source])}")
    out.put("lifts", lifts)
    out.put("coefficients", s.coefficients)
    return 0


def cmd_classify(args, out: Output) -> int:
    g, q = graphfile.load(args.file)
    trace = Pipeline()
    res = classify(g, q, trace)
    if isinstance(res, Classified):
        out.put("classified", True)
        out.put("model", res.model, f"{res.model} n={res.n}")
        out.put("n", res.n)
        out.put("lambda", list(res.lam), f"  lambda = {vec(res.lam)}")
        first = 1 if res.model == "HPn" else 3
        out.put("alpha", [list(a) for a in res.alpha])
        for k, a in enumerate(res.alpha, first):
            out.say(f"  alpha_{k} = {vec(a)}")
        out.put("vertexMap", res.vertex_map)
        out.say("  vertex map: " + ", ".join(f"{a}->{b}" for a, b in res.vertex_map.items()))
        out.put("edgeMap", res.edge_map)
        status = 0
    else:
        out.put("classified", False, f"NotClassified: {res.reason.value}")
        out.put("reason", res.reason.value)
        out.put("message", res.message, f"  {res.message}")
        out.put("witness", list(res.witness))
        if res.witness:
            out.say(f"  witness: {', '.join(res.witness)}")
        status = 1
    if args.verbose and trace.hypotheses is not None:
        census = trace.hypotheses.census()
        out.put("faceCensus", dict(sorted(census.items())),
                "  faces: " + ", ".join(f"{k} x {n}" for n, k in sorted(census.items())))
        probes = {}
        for p in (probe_biangle_propagation(g, trace.hypotheses.faces),
                  probe_quadrangle_rigidity(g, trace.hypotheses.faces)):
            probes[p.name] = {"holds": p.holds, "checked": p.checked, "failures": p.failures}
            state = "vacuous" if p.vacuous else ("holds" if p.holds else "FAILS")
            out.say(f"  probe {p.name}: {state} ({p.checked} checked)")
            for f in p.failures:
                out.say(f"    {f}")
        out.put("probes", probes)
    return status


def _csv(s: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError:
        raise Usage(f"{what}: expected comma-separated integers, got {s!r}") from None


def cmd_generate(args, out: Output) -> int:
    if args.standard:
        if args.lam is not None or args.alpha is not None:
            raise Usage("--standard excludes --lambda/--alpha")
        if (args.model == "hpn" and args.n < 1) or (args.model == "gr2" and args.n < 3):
            raise Usage("n out of range: hpn needs n >= 1, gr2 needs n >= 3")
        params = standard_params(args.model, args.n)
    else:
        if args.lam is None or args.alpha is None:
            raise Usage("give --standard or both --lambda and --alpha")
        lam = _csv(args.lam, "--lambda")
        alpha = tuple(_csv(a, "--alpha") for a in args.alpha.split(";") if a.strip())
        if any(len(a) != len(lam) for a in alpha):
            raise Usage("--alpha vectors must have the length of --lambda")
        cls = HpnParams if args.model == "hpn" else Gr2Params
        try:
            params = cls(args.n, lam, alpha)
        except ValueError as exc:
            raise Usage(str(exc)) from None
    try:
        g, q = generate(params)
    except DegenerateParams as exc:
        raise Failure(f"degenerate parameters: {exc}")
    text = graphfile.dumps(g, q)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.put("written", args.output, f"wrote {args.output}: {len(g.vertices)} vertices, {len(g.edges)} edges")
    else:
        sys.stdout.write(text)
    return 0


def cmd_cohomology(args, out: Output) -> int:
    g, _ = _load_valid(args.file, out)
    if args.exact and args.fast:
        raise Usage("--exact and --fast are exclusive")
    D = args.max_degree
    if D is not None and D < 0:
        raise Usage("--max-degree must be non-negative")
    method = "modular" if args.fast else "exact"
    dims = graph_cohomology_dims(g, D, method, args.seed)
    out.put("h", dims.h, "graded dimensions of graph cohomology (polynomial degree d):")
    for d, x in enumerate(dims.h):
        out.say(f"  h[{d}] = {x}")
    out.put("method", dims.method, f"rank method: {dims.method}")
    if args.betti:
        b = betti_from_dims(dims)
        valence = max((g.valence(v) for v in g.vertices), default=0)
        total = sum(b) == len(g.vertices) if len(b) - 1 >= valence else None
        out.put("betti", b, "Betti numbers under formality (cohomological degree 2d): " + ",".join(map(str, b)))
        out.put("allNonnegative", all(x >= 0 for x in b))
        out.put("sumEqualsVertexCount", total)
        if total is not None:
            out.say(f"  sum = {sum(b)}, vertices = {len(g.vertices)}")
        out.put("assumption", FORMALITY_NOTE, f"  {FORMALITY_NOTE}")
    return 0


# -- entry point -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise Usage(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    p = _Parser(prog="qgkm", description="GKM graphs with quaternionic structures.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, help: str, file: bool = True):
        sp = sub.add_parser(name, help=help, parents=[common])
        if file:
            sp.add_argument("file", help="graph file, or - for stdin")
        sp.set_defaults(func=fn)
        return sp

    sp = add("validate", cmd_validate, "check the graph axioms and the GKM level")
    sp.add_argument("--gkm-level", type=int, default=None, metavar="K")
    add("connection", cmd_connection, "print the compatible connection")
    add("faces", cmd_faces, "list the 2-faces")
    add("qcheck", cmd_qcheck, "verify the quaternionic structure")
    sp = add("sign-face", cmd_sign_face, "signed structure on a complex face")
    sp.add_argument("--face", type=int, required=True, metavar="INDEX")
    sp = add("classify", cmd_classify, "identify the graph with a model")
    sp.add_argument("--verbose", action="store_true", help="also run the lemma probes")
    sp = add("generate", cmd_generate, "emit a model graph", file=False)
    sp.add_argument("model", choices=["hpn", "gr2"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--standard", action="store_true")
    sp.add_argument("--lambda", dest="lam", metavar="CSV")
    sp.add_argument("--alpha", metavar="CSV;CSV;...")
    sp.add_argument("-o", "--output", metavar="FILE")
    sp = add("cohomology", cmd_cohomology, "graph cohomology dimensions and Betti numbers")
    sp.add_argument("--max-degree", type=int, default=None, metavar="D")
    sp.add_argument("--betti", action="store_true")
    sp.add_argument("--exact", action="store_true", help="exact rational elimination (default)")
    sp.add_argument("--fast", action="store_true", help="rank modulo two random 62-bit primes")
    sp.add_argument("--seed", type=int, default=None, help=argparse.SUPPRESS)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    as_json = False
    try:
        args = parser.parse_args(argv)
        as_json = getattr(args, "json", False)
        out = Output(as_json)
        try:
            status = args.func(args, out)
        except Failure as exc:
            out.put("error", str(exc))
            out.flush(sys.stdout)
            if not as_json:
                print(f"error: {exc}", file=sys.stderr)
            return 1
        out.flush(sys.stdout)
        return status
    except Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except graphfile.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except graphfile.ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
