"""Quaternionic structures on GKM graphs.

A structure assigns to each vertex an unsigned quaternionic weight and
groups the edge star into quaternionic pairs whose lifted labels sum to a
lift of the weight.  Lifts at a vertex are fixed up to one global sign.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

from .graph import Connection, Dart, GkmGraph, TwoFace, check_gkm_level
from .lattice import (
    WeightVector,
    add,
    canonicalize,
    congruence_lift,
    integer_multiple,
    is_zero,
    neg,
    sub,
)


class QuaternionicError(ValueError):
    pass


class PairingError(QuaternionicError):
    """Pair inference failed; ``problems`` lists every ``(kind, vertex, edge)``."""

    def __init__(self, problems: list[tuple[str, str, str]]):
        self.problems = problems
        kind, v, e = problems[0]
        self.vertex, self.edge = v, e
        more = f" (+{len(problems) - 1} more)" if len(problems) > 1 else ""
        super().__init__(f"{kind}: edge {e} at {v}{more}")


class NoPartner(PairingError):
    pass


class AmbiguousPartner(PairingError):
    pass


class InconsistentPair(QuaternionicError):
    pass


class ClosureFailure(QuaternionicError):
    pass


class NotComplexFace(QuaternionicError):
    pass


@dataclass
class QuaternionicStructure:
    """``weights[v]`` is a canonical vector; ``pairs[v]`` an involution on ``E_v``."""

    weights: dict[str, WeightVector]
    pairs: dict[str, dict[Dart, Dart]]

    def partner(self, d: Dart) -> Dart:
        return self.pairs[d.source][d]

    def is_pair(self, a: Dart, b: Dart) -> bool:
        return self.pairs.get(a.source, {}).get(a) == b

    def pair_list(self, v: str) -> list[tuple[Dart, Dart]]:
        out = []
        for a, b in self.pairs[v].items():
            if a < b:
                out.append((a, b))
        return sorted(out)

    @classmethod
    def from_edge_pairs(cls, g: GkmGraph, weights: Mapping[str, WeightVector],
                        pairs: Mapping[str, list[tuple[str, str]]]) -> "QuaternionicStructure":
        """Build from per-vertex lists of edge-id pairs, checking each is a
        perfect matching of the vertex star."""
        w = {v: canonicalize(x).rep for v, x in weights.items()}
        out: dict[str, dict[Dart, Dart]] = {}
        for v in g.vertices:
            by_edge = {d.edge: d for d in g.star(v)}
            m: dict[Dart, Dart] = {}
            for a, b in pairs.get(v, []):
                if a not in by_edge or b not in by_edge:
                    raise QuaternionicError(f"pair ({a}, {b}) at {v}: edge not incident to {v}")
                da, db = by_edge[a], by_edge[b]
                if da == db or da in m or db in m:
                    raise QuaternionicError(f"pairs at {v} are not a matching")
                m[da], m[db] = db, da
            if set(m) != set(by_edge.values()):
                raise QuaternionicError(f"pairs at {v} do not cover every incident edge")
            out[v] = m
        return cls(w, out)

    def edge_pairs(self) -> dict[str, list[list[str]]]:
        return {v: [[a.edge, b.edge] for a, b in self.pair_list(v)] for v in sorted(self.pairs)}


# -- local sign algebra ------------------------------------------------------

def solve_pair(lam: WeightVector, a: WeightVector, b: WeightVector):
    """Signs ``s, t`` with ``s*a + t*b == lam``; returns the lifts or None."""
    hits = [
        (sa, sb)
        for sa in (a, neg(a))
        for sb in (b, neg(b))
        if add(sa, sb) == lam
    ]
    if len(hits) != 1:
        return None
    return hits[0]


@dataclass
class LiftChart:
    vertex: str
    lam: WeightVector
    lifts: dict[Dart, WeightVector]

    def __getitem__(self, d: Dart) -> WeightVector:
        return self.lifts[d]

    def negated(self) -> "LiftChart":
        return LiftChart(self.vertex, neg(self.lam), {d: neg(x) for d, x in self.lifts.items()})


def lift_chart(g: GkmGraph, q: QuaternionicStructure, v: str, seed: int = 1) -> LiftChart:
    """Quaternionically compatible lifts at ``v``; ``seed`` picks the sign of
    the lifted weight relative to its canonical representative."""
    lam = q.weights[v] if seed > 0 else neg(q.weights[v])
    lifts = {}
    for a, b in q.pair_list(v):
        sol = solve_pair(lam, g.label(a), g.label(b))
        if sol is None:
            raise InconsistentPair(f"edges {a.edge}, {b.edge} at {v} do not sum to ±{q.weights[v]}")
        lifts[a], lifts[b] = sol
    return LiftChart(v, lam, lifts)


def chart_with_weight(g, q, v: str, lam: WeightVector) -> LiftChart:
    return lift_chart(g, q, v, 1 if lam == q.weights[v] else -1)


def infer_pairs(g: GkmGraph, weights: Mapping[str, WeightVector]) -> dict[str, dict[Dart, Dart]]:
    """Recover the quaternionic pairs from unsigned labels and weights.

    The partner of ``e`` must carry ``±(lam - a)`` or ``±(lam + a)`` for lifts
    ``lam``, ``a``; under GKM_3 at most one edge qualifies.
    """
    problems: list[tuple[str, str, str]] = []
    pairs: dict[str, dict[Dart, Dart]] = {}
    for v in g.vertices:
        lam = tuple(weights[v])
        pairs[v] = {}
        for d in g.star(v):
            a = g.label(d)
            want = set()
            for c in (sub(lam, a), add(lam, a)):
                if not is_zero(c):
                    want.add(canonicalize(c).rep)
            hits = [f for f in g.star(v) if f != d and g.label(f) in want]
            if not hits:
                problems.append(("NoPartner", v, d.edge))
            elif len(hits) > 1:
                problems.append(("AmbiguousPartner", v, d.edge))
            else:
                pairs[v][d] = hits[0]
        for d, f in pairs[v].items():
            if pairs[v].get(f) not in (None, d):
                problems.append(("AmbiguousPartner", v, d.edge))
    if problems:
        kinds = {p[0] for p in problems}
        cls = NoPartner if problems[0][0] == "NoPartner" else AmbiguousPartner
        if "NoPartner" in kinds and cls is AmbiguousPartner:
            problems.sort(key=lambda p: p[0] != "NoPartner")
            cls = NoPartner
        raise cls(problems)
    return pairs


def structure_from_weights(g: GkmGraph, weights: Mapping[str, WeightVector]) -> QuaternionicStructure:
    if not check_gkm_level(g, 3).ok:
        raise QuaternionicError("pair inference needs a GKM_3 graph; give pairs explicitly")
    w = {v: canonicalize(x).rep for v, x in weights.items()}
    return QuaternionicStructure(w, infer_pairs(g, w))


# -- transport -----------------------------------------------------------------

def congruent_lift(x: WeightVector, target: WeightVector, a: WeightVector) -> tuple[WeightVector, int]:
    """The unique lift ``y`` of the unsigned ``target`` with ``y - x in Z a``."""
    sols = []
    for s in (1, -1):
        y = target if s > 0 else neg(target)
        c = integer_multiple(sub(y, x), a)
        if c is not None:
            sols.append((y, c))
    if len(sols) != 1:
        how = "no" if not sols else "two"
        raise QuaternionicError(f"{how} lift of ±{target} congruent to {x} mod {a}")
    return sols[0]


@dataclass
class Transport:
    dart: Dart
    lam_source: WeightVector
    lam_target: WeightVector
    c: int  # lam_target = lam_source + c * lift(dart)
    chart: LiftChart  # at the target, seeded with lam_target


def transport(g: GkmGraph, q: QuaternionicStructure, chart: LiftChart, e: Dart) -> Transport:
    """Carry the lifted quaternionic weight across ``e``."""
    a = chart[e]
    lam_t, c = congruent_lift(chart.lam, q.weights[e.target], a)
    return Transport(e, chart.lam, lam_t, c, chart_with_weight(g, q, e.target, lam_t))


@dataclass
class StructureReport:
    matching: list[str] = field(default_factory=list)
    pair_sum: list[str] = field(default_factory=list)
    pairs_respected: list[str] = field(default_factory=list)
    transport: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.matching or self.pair_sum or self.pairs_respected or self.transport)

    def failures(self) -> dict[str, list[str]]:
        return {k: getattr(self, k) for k in ("matching", "pair_sum", "pairs_respected", "transport")
                if getattr(self, k)}

    def first_failure(self) -> str | None:
        for msgs in self.failures().values():
            return msgs[0]
        return None


def verify_structure(g: GkmGraph, q: QuaternionicStructure, con: Connection) -> StructureReport:
    """Check both axioms of a quaternionic structure against ``con``."""
    rep = StructureReport()
    if not con.unique:
        rep.notes.append("connection is not unique (graph not GKM_3); only the chosen one was checked")
    for v in g.vertices:
        m = q.pairs.get(v, {})
        if v not in q.weights or is_zero(q.weights[v]):
            rep.matching.append(f"missing or zero quaternionic weight at {v}")
        if set(m) != set(g.star(v)) or any(m.get(b) != a or a == b for a, b in m.items()):
            rep.matching.append(f"pairs at {v} are not a perfect matching of its star")
    if rep.matching:
        return rep
    if check_gkm_level(g, 3).ok:
        try:
            inferred = infer_pairs(g, q.weights)
        except PairingError:
            inferred = None  # the pair-sum check below names the culprit
        if inferred is not None and inferred != q.pairs:
            bad = next(v for v in g.vertices if inferred[v] != q.pairs[v])
            rep.matching.append(f"pairs at {bad} differ from the pairs forced by the weights")
            return rep
    charts = {}
    for v in g.vertices:
        try:
            charts[v] = lift_chart(g, q, v)
        except InconsistentPair as exc:
            rep.pair_sum.append(str(exc))
    for e in g.darts():
        for a, b in q.pair_list(e.source):
            ia, ib = con(e, a), con(e, b)
            if not q.is_pair(ia, ib):
                rep.pairs_respected.append(
                    f"transport along {e} sends pair ({a.edge}, {b.edge}) to non-pair ({ia.edge}, {ib.edge})")
    if rep.pair_sum:
        return rep
    for e in g.darts():
        chart = charts[e.source]
        try:
            t = transport(g, q, chart, e)
        except QuaternionicError as exc:
            rep.transport.append(f"along {e}: {exc}")
            continue
        if t.chart[e.reverse()] != neg(chart[e]):
            rep.transport.append(
                f"along {e}: weight {t.lam_target} at {e.target} is not compatible with -{chart[e]}")
            continue
        for f in g.star(e.source):
            if f == e:
                continue
            h = con(e, f)
            try:
                y, _ = congruent_lift(chart[f], g.label(h), chart[e])
            except QuaternionicError as exc:
                rep.transport.append(f"along {e}, edge {f.edge}: {exc}")
                continue
            if y != t.chart[h]:
                rep.transport.append(
                    f"along {e}: transported lift {y} of {h.edge} is not compatible with {t.lam_target}")
    return rep


# -- faces -------------------------------------------------------------------

class FaceKind(str, enum.Enum):
    QUATERNIONIC_BIANGLE = "QuaternionicBiangle"
    NONCOMPLEX_TRIANGLE = "NoncomplexTriangle"
    COMPLEX_TRIANGLE_FACE = "ComplexTriangleFace"
    OTHER_QUATERNIONIC = "OtherQuaternionic"
    COMPLEX_TRIANGLE = "ComplexTriangle"
    COMPLEX_QUADRANGLE = "ComplexQuadrangle"
    OTHER_COMPLEX = "OtherComplex"


@dataclass
class FaceClassification:
    face: TwoFace
    kind: FaceKind
    quaternionic: bool
    c: int | None = None  # third-edge transport constant of quaternionic triangles
    opposite_equal: bool | None = None  # complex quadrangles only

    @property
    def length(self) -> int:
        return self.face.length

    @property
    def name(self) -> str:
        if self.kind in (FaceKind.OTHER_COMPLEX, FaceKind.OTHER_QUATERNIONIC):
            return f"{self.kind.value}({self.length})"
        return self.kind.value


def is_quaternionic_face(face: TwoFace, q: QuaternionicStructure) -> bool:
    flags = {q.is_pair(*face.corner(i)) for i in range(face.length)}
    if len(flags) != 1:
        raise QuaternionicError(f"face {face.edge_ids} is quaternionic at some corners only")
    return flags.pop()


def triangle_constant(face: TwoFace, g: GkmGraph, q: QuaternionicStructure) -> int | None:
    """``c`` with third label lift ``lam + c*a`` (0: noncomplex, -2: complex pattern)."""
    w0, w1, _ = face.darts
    chart = lift_chart(g, q, w0.source)
    a, lam = chart[w0], chart.lam
    other = face.corner(0)[0]
    y, _ = congruent_lift(chart[other], g.label(w1), a)
    return integer_multiple(sub(y, lam), a)


def classify_face(face: TwoFace, g: GkmGraph, q: QuaternionicStructure,
                  con: Connection | None = None) -> FaceClassification:
    quat = is_quaternionic_face(face, q)
    n = face.length
    if quat:
        if n == 2:
            return FaceClassification(face, FaceKind.QUATERNIONIC_BIANGLE, True)
        if n == 3:
            c = triangle_constant(face, g, q)
            if c == 0:
                return FaceClassification(face, FaceKind.NONCOMPLEX_TRIANGLE, True, c=0)
            if c == -2:
                return FaceClassification(face, FaceKind.COMPLEX_TRIANGLE_FACE, True, c=-2)
            return FaceClassification(face, FaceKind.OTHER_QUATERNIONIC, True, c=c)
        return FaceClassification(face, FaceKind.OTHER_QUATERNIONIC, True)
    if n == 3:
        return FaceClassification(face, FaceKind.COMPLEX_TRIANGLE, False)
    if n == 4:
        d = face.darts
        opp = g.label(d[0]) == g.label(d[2]) and g.label(d[1]) == g.label(d[3])
        return FaceClassification(face, FaceKind.COMPLEX_QUADRANGLE, False, opposite_equal=opp)
    return FaceClassification(face, FaceKind.OTHER_COMPLEX, False)


@dataclass
class SignedFaceStructure:
    face: TwoFace
    lifts: dict[Dart, WeightVector]
    lambdas: dict[str, WeightVector]  # lifted quaternionic weight per face vertex
    coefficients: list[int]  # c_i with lift(w_{i+1}) = -lift(w_{i-1}) + c_i * lift(w_i)

    def walk_lifts(self) -> list[WeightVector]:
        return [self.lifts[d] for d in self.face.darts]


def sign_face(face: TwoFace, g: GkmGraph, q: QuaternionicStructure,
              con: Connection | None = None) -> SignedFaceStructure:
    """Signed structure on a complex face, compatible with the quaternionic one.

    Seeds a lift chart at the first vertex and carries the lifted
    quaternionic weight around the face; on return to the start the lift
    of the closing edge must agree with the seed chart.
    """
    if is_quaternionic_face(face, q):
        raise NotComplexFace(f"face {face.edge_ids} is quaternionic; it carries no signed structure")
    darts = face.darts
    n = len(darts)
    chart0 = lift_chart(g, q, darts[0].source)
    closing = face.corner(0)[0]
    lifts: dict[Dart, WeightVector] = {}
    lambdas = {darts[0].source: chart0.lam}
    chart = chart0
    x = chart0[darts[0]]
    for i, w in enumerate(darts):
        lifts[w] = x
        lifts[w.reverse()] = neg(x)
        try:
            t = transport(g, q, chart, w)
        except QuaternionicError as exc:
            raise ClosureFailure(f"transport along {w} failed: {exc}") from exc
        if t.chart[w.reverse()] != neg(x):
            raise ClosureFailure(f"lifted weight at {w.target} incompatible with -{x}")
        chart = t.chart
        if i + 1 < n:
            lambdas[w.target] = chart.lam
            x = chart[darts[i + 1]]
    if chart[closing] != chart0[closing]:
        raise ClosureFailure(
            f"face {face.edge_ids} closes with the opposite sign: "
            "the quaternionic weight and the face labels are dependent (not GKM_3)")
    coeffs = []
    for i in range(n):
        prev, cur, nxt = darts[i - 1], darts[i], darts[(i + 1) % n]
        c = integer_multiple(add(lifts[nxt], lifts[prev]), lifts[cur])
        if c is None:
            raise ClosureFailure(f"signed labels violate the connection congruence at {cur}")
        coeffs.append(c)
    return SignedFaceStructure(face, lifts, lambdas, coeffs)
