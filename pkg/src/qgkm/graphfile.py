"""JSON graph files.

A file holds ``rank``, ``vertices``, ``edges`` (each ``{id, ends, label}``)
and optionally ``quaternionic: {weights, pairs?}``.  Labels may use any
representative; they are canonicalized on load.
"""
from __future__ import annotations

import json
import re
import sys
from typing import Any

from .graph import GkmGraph, GraphError, check_gkm_level
from .lattice import canonicalize, is_zero
from .quaternionic import (
    PairingError,
    QuaternionicError,
    QuaternionicStructure,
    infer_pairs,
)


class ParseError(ValueError):
    """Malformed document (exit code 2)."""


class ValidationError(ValueError):
    """Well-formed document describing invalid data (exit code 1)."""


def _int_list(x: Any, n: int | None, where: str) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in x):
        raise ParseError(f"{where}: expected a list of integers")
    if n is not None and len(x) != n:
        raise ParseError(f"{where}: expected {n} integers, got {len(x)}")
    return x


def _line_of(text: str, needle: str) -> str:
    pos = text.find(needle)
    if pos < 0:
        return ""
    return f" (line {text.count(chr(10), 0, pos) + 1})"


def parse(text: str) -> tuple[GkmGraph, QuaternionicStructure | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    for key in ("rank", "vertices", "edges"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    rank = doc["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise ParseError("rank: expected a positive integer")
    verts = doc["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise ParseError("vertices: expected a list of strings")
    if not isinstance(doc["edges"], list):
        raise ParseError("edges: expected a list")
    edges = []
    for i, e in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        if not isinstance(e, dict):
            raise ParseError(f"{where}: expected an object")
        for key in ("id", "ends", "label"):
            if key not in e:
                raise ParseError(f"{where}: missing field {key!r}")
        if not isinstance(e["id"], str):
            raise ParseError(f"{where}.id: expected a string")
        ends = e["ends"]
        if not isinstance(ends, list) or len(ends) != 2 or not all(isinstance(v, str) for v in ends):
            raise ParseError(f"{where}.ends: expected two vertex ids")
        label = _int_list(e["label"], rank, f"{where}.label")
        loc = _line_of(text, f'"{e["id"]}"')
        if ends[0] == ends[1]:
            raise ValidationError(f"{where} (id {e['id']}){loc}: loop at {ends[0]}")
        if is_zero(label):
            raise ValidationError(f"{where} (id {e['id']}){loc}: zero label")
        edges.append((e["id"], ends[0], ends[1], label))
    try:
        g = GkmGraph(rank, verts, edges)
    except GraphError as exc:
        raise ValidationError(str(exc)) from None
    q = None
    if doc.get("quaternionic") is not None:
        q = _parse_structure(g, doc["quaternionic"], text)
    return g, q


def _parse_structure(g: GkmGraph, qd: Any, text: str) -> QuaternionicStructure:
    if not isinstance(qd, dict) or "weights" not in qd:
        raise ParseError("quaternionic: expected an object with 'weights'")
    wd = qd["weights"]
    if not isinstance(wd, dict):
        raise ParseError("quaternionic.weights: expected an object")
    weights = {}
    for v in g.vertices:
        if v not in wd:
            raise ValidationError(f"quaternionic.weights: no weight for vertex {v}")
        w = _int_list(wd[v], g.rank, f"quaternionic.weights.{v}")
        if is_zero(w):
            raise ValidationError(f"quaternionic.weights.{v}{_line_of(text, chr(34) + v + chr(34))}: zero weight")
        weights[v] = tuple(w)
    extra = set(wd) - set(g.vertices)
    if extra:
        raise ValidationError(f"quaternionic.weights: unknown vertices {sorted(extra)}")
    pd = qd.get("pairs")
    if pd is None:
        if not check_gkm_level(g, 3).ok:
            raise ValidationError("quaternionic.pairs: required because the graph is not GKM_3")
        canon = {v: canonicalize(w).rep for v, w in weights.items()}
        try:
            return QuaternionicStructure(canon, infer_pairs(g, canon))
        except PairingError as exc:
            raise ValidationError(f"quaternionic: cannot infer pairs: {exc}") from None
    if not isinstance(pd, dict):
        raise ParseError("quaternionic.pairs: expected an object")
    pairs = {}
    for v, lst in pd.items():
        where = f"quaternionic.pairs.{v}"
        if not isinstance(lst, list) or not all(
                isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p) for p in lst):
            raise ParseError(f"{where}: expected a list of [edgeId, edgeId]")
        pairs[v] = [tuple(p) for p in lst]
    unknown = set(pairs) - set(g.vertices)
    if unknown:
        raise ValidationError(f"quaternionic.pairs: unknown vertices {sorted(unknown)}")
    try:
        return QuaternionicStructure.from_edge_pairs(g, weights, pairs)
    except QuaternionicError as exc:
        raise ValidationError(f"quaternionic.pairs: {exc}") from None


def load(path: str) -> tuple[GkmGraph, QuaternionicStructure | None]:
    """Read a graph file; ``-`` reads standard input."""
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"{path}: {exc.strerror}") from None
        except UnicodeDecodeError:
            raise ParseError(f"{path}: not UTF-8 text") from None
    return parse(text)


def to_document(g: GkmGraph, q: QuaternionicStructure | None = None) -> dict:
    doc: dict[str, Any] = {
        "rank": g.rank,
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "ends": [e.u, e.v], "label": list(e.label)} for e in g.edges],
    }
    if q is not None:
        doc["quaternionic"] = {
            "weights": {v: list(q.weights[v]) for v in g.vertices},
            "pairs": {v: [[a.edge, b.edge] for a, b in q.pair_list(v)] for v in g.vertices},
        }
    return doc


_FLAT_LIST = re.compile(r"\[[^\[\]{}]*\]")


def pretty_json(obj: Any) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    return _FLAT_LIST.sub(lambda m: json.dumps(json.loads(m.group(0)), ensure_ascii=False), text)


def dumps(g: GkmGraph, q: QuaternionicStructure | None = None) -> str:
    return pretty_json(to_document(g, q)) + "\n"


def save(path: str, g: GkmGraph, q: QuaternionicStructure | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g, q))
