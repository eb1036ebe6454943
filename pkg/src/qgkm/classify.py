"""Decide whether a quaternionic GKM_3 graph is a model graph.

The pipeline checks the hypotheses (GKM_3, a verified structure, allowed
face shapes), reconstructs candidate parameters and a vertex bijection
from a base vertex, regenerates the model and compares it exactly.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .graph import (
    Connection,
    Dart,
    GkmGraph,
    NoConnection,
    TwoFace,
    check_gkm_level,
    enumerate_faces,
    find_connection,
    validate_graph,
)
from .lattice import WeightVector, canonicalize
from .models import DegenerateParams, Gr2Params, HpnParams, generate_gr2, generate_hpn
from .quaternionic import (
    FaceClassification,
    FaceKind,
    QuaternionicError,
    QuaternionicStructure,
    classify_face,
    lift_chart,
    verify_structure,
)


class Reason(str, enum.Enum):
    INVALID_GRAPH = "InvalidGraph"
    ODD_VALENCE = "OddValence"
    DISCONNECTED = "Disconnected"
    NOT_GKM3 = "NotGkm3"
    NO_CONNECTION = "NoConnection"
    STRUCTURE_INVALID = "StructureInvalid"
    FACE_SHAPE_VIOLATION = "FaceShapeViolation"
    RECONSTRUCTION_MISMATCH = "ReconstructionMismatch"


@dataclass
class NotClassified:
    reason: Reason
    message: str
    witness: tuple[str, ...] = ()

    model = None

    def __bool__(self) -> bool:
        return False


@dataclass
class Classified:
    n: int
    lam: WeightVector
    alpha: tuple[WeightVector, ...]
    vertex_map: dict[str, str]  # input vertex -> model vertex
    edge_map: dict[str, str]  # input edge -> model edge

    model = ""

    def __bool__(self) -> bool:
        return True

    def params(self):
        raise NotImplementedError


@dataclass
class HPn(Classified):
    """Identification with ℍPⁿ; ``alpha[k-1]`` is α_k."""

    model = "HPn"

    def params(self) -> HpnParams:
        return HpnParams(self.n, self.lam, self.alpha)


@dataclass
class Gr2(Classified):
    """Identification with Gr₂(ℂⁿ); ``alpha[k-3]`` is α_k."""

    model = "Gr2"

    def params(self) -> Gr2Params:
        return Gr2Params(self.n, self.lam, self.alpha)


ClassificationResult = HPn | Gr2 | NotClassified

ALLOWED_QUATERNIONIC = {FaceKind.QUATERNIONIC_BIANGLE, FaceKind.NONCOMPLEX_TRIANGLE}
ALLOWED_COMPLEX = {FaceKind.COMPLEX_TRIANGLE, FaceKind.COMPLEX_QUADRANGLE}


@dataclass
class HypothesisReport:
    gkm3: bool
    faces: list[FaceClassification] = field(default_factory=list)
    violations: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.gkm3 and not self.violations

    def census(self) -> Counter:
        return Counter(fc.name for fc in self.faces)


def check_hypotheses(g: GkmGraph, q: QuaternionicStructure, con: Connection,
                     faces: list[TwoFace] | None = None) -> HypothesisReport:
    lvl = check_gkm_level(g, 3)
    rep = HypothesisReport(lvl.ok)
    if not lvl.ok:
        rep.violations.append((f"labels of {', '.join(lvl.edges)} at {lvl.vertex} are dependent",
                               (lvl.vertex,) + lvl.edges))
    if faces is None:
        faces = enumerate_faces(g, con)
    for face in faces:
        fc = classify_face(face, g, q, con)
        rep.faces.append(fc)
        allowed = ALLOWED_QUATERNIONIC if fc.quaternionic else ALLOWED_COMPLEX
        if fc.kind not in allowed:
            side = "quaternionic" if fc.quaternionic else "complex"
            rep.violations.append((f"{side} face {fc.name} through {', '.join(face.vertices)}",
                                   face.edge_ids))
    return rep


# -- reconstruction ----------------------------------------------------------

def _dart_keys(g: GkmGraph, vmap: dict[str, str]) -> dict[Dart, tuple] | None:
    keys = {d: (vmap[d.source], vmap[d.target], g.label(d)) for d in g.darts()}
    if len(set(keys.values())) != len(keys):
        return None
    return keys


def match_model(g: GkmGraph, q: QuaternionicStructure, mg: GkmGraph, mq: QuaternionicStructure,
                vmap: dict[str, str]) -> tuple[dict[str, str] | None, str]:
    """Exact comparison of ``(g, q)`` with a model under ``vmap``.

    Returns the induced edge map, or None with the first difference.
    """
    if sorted(vmap.values()) != sorted(mg.vertices) or set(vmap) != set(g.vertices):
        return None, "vertex map is not a bijection onto the model"
    if len(g.edges) != len(mg.edges):
        return None, f"{len(g.edges)} edges, model has {len(mg.edges)}"
    ours = _dart_keys(g, vmap)
    theirs = _dart_keys(mg, {v: v for v in mg.vertices})
    if ours is None or theirs is None:
        return None, "parallel edges with equal labels"
    inv = {k: d for d, k in theirs.items()}
    emap = {}
    for d, k in ours.items():
        if k not in inv:
            return None, f"edge {d.edge} ({d.source}->{d.target}, label {k[2]}) has no model counterpart"
        emap[d.edge] = inv[k].edge
    if len(set(emap.values())) != len(emap):
        return None, "edges collide under the vertex map"
    for v in g.vertices:
        if q.weights[v] != mq.weights[vmap[v]]:
            return None, f"weight {q.weights[v]} at {v} vs {mq.weights[vmap[v]]} at model {vmap[v]}"
        for a, b in q.pair_list(v):
            if mq.pairs[vmap[v]].get(inv[ours[a]]) != inv[ours[b]]:
                return None, f"pair ({a.edge}, {b.edge}) at {v} is not a model pair"
    return emap, ""


def _reconstruct_hpn(g: GkmGraph, q: QuaternionicStructure) -> ClassificationResult:
    v0 = min(g.vertices)
    chart = lift_chart(g, q, v0, 1)
    others = sorted(g.neighbors(v0))
    n = len(others)
    alpha = []
    for w in others:
        darts = [d for d in g.star(v0) if d.target == w]
        if len(darts) != 2 or not q.is_pair(*darts):
            return NotClassified(Reason.RECONSTRUCTION_MISMATCH,
                                 f"{v0} and {w} are not joined by a quaternionic biangle", (v0, w))
        alpha.append(chart[min(darts)])
    vmap = {v0: "v0"} | {w: f"v{k}" for k, w in enumerate(others, 1)}
    if len(vmap) != len(g.vertices):
        return NotClassified(Reason.RECONSTRUCTION_MISMATCH,
                             f"{v0} is not adjacent to every other vertex", (v0,))
    params = HpnParams(n, chart.lam, tuple(alpha))
    return _finish(g, q, params, vmap)


def _reconstruct_gr2(g: GkmGraph, q: QuaternionicStructure) -> ClassificationResult:
    val = g.valence(min(g.vertices))
    n = val // 2 + 2
    if n >= 10:
        name = lambda i, j: f"v{i}_{j}"  # noqa: E731
    else:
        name = lambda i, j: f"v{i}{j}"  # noqa: E731
    base = min(g.vertices)
    chart = lift_chart(g, q, base, 1)
    pairs = sorted(q.pair_list(base), key=lambda ab: sorted((ab[0].target, ab[1].target)))
    vmap = {base: name(1, 2)}
    one: dict[int, str] = {}
    two: dict[int, str] = {}
    alpha = []
    for k, (a, b) in enumerate(pairs, 3):
        if k == 3:
            d1 = a if a.target < b.target else b
        else:
            hits = [d for d in (a, b) if d.target in g.neighbors(one[3])]
            if len(hits) != 1:
                return NotClassified(Reason.RECONSTRUCTION_MISMATCH,
                                     f"cannot orient the pair ({a.edge}, {b.edge}) at {base}", (base,))
            d1 = hits[0]
        d2 = b if d1 == a else a
        one[k], two[k] = d1.target, d2.target
        alpha.append(chart[d1])
    for k in one:
        vmap[one[k]] = name(1, k)
        vmap[two[k]] = name(2, k)
    for k, l in combinations(sorted(one), 2):
        common = (g.neighbors(one[k]) & g.neighbors(one[l]) & g.neighbors(two[k])
                  & g.neighbors(two[l])) - {base}
        if len(common) != 1:
            return NotClassified(Reason.RECONSTRUCTION_MISMATCH,
                                 f"{len(common)} candidates for the vertex v{k}{l}",
                                 (one[k], one[l], two[k], two[l]))
        vmap[common.pop()] = name(k, l)
    if len(vmap) != len(g.vertices) or len(set(vmap.values())) != len(vmap):
        return NotClassified(Reason.RECONSTRUCTION_MISMATCH,
                             "vertex naming is not a bijection", tuple(sorted(vmap)))
    params = Gr2Params(n, chart.lam, tuple(alpha))
    return _finish(g, q, params, vmap)


def _finish(g, q, params, vmap) -> ClassificationResult:
    gen = generate_hpn if isinstance(params, HpnParams) else generate_gr2
    try:
        mg, mq = gen(params)
    except DegenerateParams as exc:
        return NotClassified(Reason.RECONSTRUCTION_MISMATCH,
                             f"recovered parameters are degenerate: {exc}", ())
    emap, why = match_model(g, q, mg, mq, vmap)
    if emap is None:
        return NotClassified(Reason.RECONSTRUCTION_MISMATCH, why, ())
    cls = HPn if isinstance(params, HpnParams) else Gr2
    return cls(params.n, params.lam, params.alpha, dict(sorted(vmap.items())), dict(sorted(emap.items())))


@dataclass
class Pipeline:
    """Intermediate products of :func:`classify`, kept for reporting."""

    connection: Connection | None = None
    faces: list[TwoFace] | None = None
    hypotheses: HypothesisReport | None = None


def classify(g: GkmGraph, q: QuaternionicStructure | None,
             trace: Pipeline | None = None) -> ClassificationResult:
    """Identify ``(g, q)`` with a model graph or say which hypothesis fails."""
    trace = trace if trace is not None else Pipeline()
    rep = validate_graph(g)
    if not rep.ok:
        viol = rep.violations[0]
        return NotClassified(Reason.INVALID_GRAPH, viol.message, viol.where)
    if not g.vertices or rep.valence == 0:
        return NotClassified(Reason.INVALID_GRAPH, "graph has no edges", ())
    if rep.valence % 2:
        return NotClassified(Reason.ODD_VALENCE, f"valence {rep.valence} is odd", ())
    if not g.is_connected():
        comps = g.components()
        return NotClassified(Reason.DISCONNECTED, f"{len(comps)} connected components",
                             tuple(min(c) for c in comps))
    lvl = check_gkm_level(g, 3)
    if not lvl.ok:
        return NotClassified(Reason.NOT_GKM3, f"labels of {', '.join(lvl.edges)} at {lvl.vertex} are dependent",
                             (lvl.vertex,) + lvl.edges)
    if q is None:
        return NotClassified(Reason.STRUCTURE_INVALID, "no quaternionic structure given", ())
    try:
        con = find_connection(g)
    except NoConnection as exc:
        return NotClassified(Reason.NO_CONNECTION, str(exc), ())
    trace.connection = con
    srep = verify_structure(g, q, con)
    if not srep.ok:
        return NotClassified(Reason.STRUCTURE_INVALID, srep.first_failure() or "", ())
    try:
        faces = enumerate_faces(g, con)
        trace.faces = faces
        hyp = check_hypotheses(g, q, con, faces)
    except (QuaternionicError, ValueError) as exc:
        return NotClassified(Reason.STRUCTURE_INVALID, str(exc), ())
    trace.hypotheses = hyp
    if not hyp.ok:
        msg, where = hyp.violations[0]
        return NotClassified(Reason.FACE_SHAPE_VIOLATION, msg, where)
    if any(fc.kind is FaceKind.QUATERNIONIC_BIANGLE for fc in hyp.faces):
        return _reconstruct_hpn(g, q)
    return _reconstruct_gr2(g, q)


# -- lemma probes --------------------------------------------------------------

@dataclass
class ProbeReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures

    @property
    def vacuous(self) -> bool:
        return self.checked == 0


def _biangle_edges(faces: list[FaceClassification]) -> set[str]:
    return {e for fc in faces if fc.kind is FaceKind.QUATERNIONIC_BIANGLE for e in fc.face.edge_ids}


def probe_biangle_propagation(g: GkmGraph, faces: list[FaceClassification]) -> ProbeReport:
    """A complex triangle touching a quaternionic biangle lies entirely in biangles."""
    rep = ProbeReport("biangle-propagation")
    in_biangle = _biangle_edges(faces)
    for fc in faces:
        if fc.kind is not FaceKind.COMPLEX_TRIANGLE:
            continue
        edges = fc.face.edge_ids
        hit = [e in in_biangle for e in edges]
        if not any(hit):
            continue
        rep.checked += 1
        if not all(hit):
            rep.failures.append(f"triangle {edges}: edges {[e for e, h in zip(edges, hit) if not h]} "
                                "lie in no quaternionic biangle")
    return rep


def probe_quadrangle_rigidity(g: GkmGraph, faces: list[FaceClassification]) -> ProbeReport:
    """A complex quadrangle has opposite-equal labels, excludes biangles
    everywhere, and has no diagonal edges."""
    rep = ProbeReport("quadrangle-rigidity")
    quads = [fc for fc in faces if fc.kind is FaceKind.COMPLEX_QUADRANGLE]
    biangles = [fc for fc in faces if fc.kind is FaceKind.QUATERNIONIC_BIANGLE]
    for fc in quads:
        rep.checked += 1
        d = fc.face.darts
        labels = [canonicalize(g.label(x)).rep for x in d]
        if labels[0] != labels[2] or labels[1] != labels[3]:
            rep.failures.append(f"quadrangle {fc.face.edge_ids}: opposite labels differ {labels}")
        if biangles:
            rep.failures.append(f"quadrangle {fc.face.edge_ids} coexists with biangle "
                                f"{biangles[0].face.edge_ids}")
        vs = fc.face.vertices
        for a, b in ((vs[0], vs[2]), (vs[1], vs[3])):
            if g.edges_between(a, b):
                rep.failures.append(f"quadrangle {fc.face.edge_ids}: diagonal edge between {a} and {b}")
    return rep
