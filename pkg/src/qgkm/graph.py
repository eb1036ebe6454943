"""Abstract GKM graphs: data model, GKM_k checks, connections and 2-faces."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

from .lattice import (
    UnsignedWeight,
    WeightVector,
    canonicalize,
    congruence_lift,
    is_zero,
    rank_over_q,
)


class GraphError(ValueError):
    """Structurally malformed graph data (unknown endpoints, duplicate ids...)."""


class NoConnection(ValueError):
    """No compatible connection exists."""


class SelfIntersectingPath(ValueError):
    """A connection path revisits a vertex before closing."""


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    # canonical representative, or the zero vector for an invalid label
    label: WeightVector


class Dart(NamedTuple):
    """An oriented edge ``source -> target``."""

    edge: str
    source: str
    target: str

    def reverse(self) -> "Dart":
        return Dart(self.edge, self.target, self.source)

    def __str__(self) -> str:
        return f"{self.edge}:{self.source}->{self.target}"


def _canonical_label(w: Sequence[int]) -> WeightVector:
    w = tuple(int(x) for x in w)
    return w if is_zero(w) else canonicalize(w).rep


class GkmGraph:
    """Finite labelled multigraph with a rank-``m`` axial function.

    Construction only rejects data that cannot describe a graph at all;
    the GKM axioms themselves are reported by :func:`validate_graph`.
    """

    def __init__(self, rank: int, vertices: Iterable[str], edges: Iterable):
        self.rank = int(rank)
        if self.rank < 1:
            raise GraphError("rank must be positive")
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        vset = set(self.vertices)
        built = []
        for item in edges:
            if isinstance(item, Edge):
                eid, u, v, lab = item.id, item.u, item.v, item.label
            else:
                eid, u, v, lab = item
            eid, u, v = str(eid), str(u), str(v)
            for x in (u, v):
                if x not in vset:
                    raise GraphError(f"edge {eid}: unknown endpoint {x!r}")
            if len(lab) != self.rank:
                raise GraphError(f"edge {eid}: label has length {len(lab)}, expected {self.rank}")
            built.append(Edge(eid, u, v, _canonical_label(lab)))
        self.edges: tuple[Edge, ...] = tuple(built)
        self._by_id = {e.id: e for e in self.edges}
        if len(self._by_id) != len(self.edges):
            raise GraphError("duplicate edge id")
        star: dict[str, list[Dart]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.u == e.v:
                continue
            star[e.u].append(Dart(e.id, e.u, e.v))
            star[e.v].append(Dart(e.id, e.v, e.u))
        self._star = {v: tuple(sorted(ds)) for v, ds in star.items()}
        self._gkm_cache: dict[int, "GkmLevel"] = {}

    # -- accessors ---------------------------------------------------------
    def edge(self, eid: str) -> Edge:
        return self._by_id[eid]

    def star(self, v: str) -> tuple[Dart, ...]:
        return self._star[v]

    def valence(self, v: str) -> int:
        return len(self._star[v])

    def label(self, x: "Dart | Edge | str") -> WeightVector:
        if isinstance(x, Dart):
            x = x.edge
        if isinstance(x, Edge):
            return x.label
        return self._by_id[x].label

    def weight(self, x) -> UnsignedWeight:
        return UnsignedWeight(self.label(x))

    def darts(self) -> Iterator[Dart]:
        for v in sorted(self.vertices):
            yield from self._star[v]

    def edges_between(self, u: str, v: str) -> list[Edge]:
        return [e for e in self.edges if {e.u, e.v} == {u, v} and e.u != e.v]

    def neighbors(self, v: str) -> set[str]:
        return {d.target for d in self._star[v]}

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            x = todo.pop()
            for y in self.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == len(self.vertices)

    def components(self) -> list[set[str]]:
        left = set(self.vertices)
        out = []
        while left:
            start = min(left)
            comp, todo = {start}, [start]
            while todo:
                x = todo.pop()
                for y in self.neighbors(x):
                    if y not in comp:
                        comp.add(y)
                        todo.append(y)
            out.append(comp)
            left -= comp
        return out

    def uniform_valence(self) -> int | None:
        vals = {self.valence(v) for v in self.vertices}
        return vals.pop() if len(vals) == 1 else None

    def relabel(self, vmap: dict[str, str], emap: dict[str, str] | None = None) -> "GkmGraph":
        emap = emap or {}
        return GkmGraph(
            self.rank,
            [vmap.get(v, v) for v in self.vertices],
            [(emap.get(e.id, e.id), vmap.get(e.u, e.u), vmap.get(e.v, e.v), e.label) for e in self.edges],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, GkmGraph):
            return NotImplemented
        return (
            self.rank == other.rank
            and set(self.vertices) == set(other.vertices)
            and {(e.id, frozenset((e.u, e.v)), e.label) for e in self.edges}
            == {(e.id, frozenset((e.u, e.v)), e.label) for e in other.edges}
        )

    def __repr__(self) -> str:
        return f"GkmGraph(rank={self.rank}, vertices={len(self.vertices)}, edges={len(self.edges)})"


# -- validation --------------------------------------------------------------

@dataclass
class Violation:
    kind: str  # loop | valence | zero-label | dependent-labels
    message: str
    where: tuple[str, ...] = ()


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    valence: int | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def validate_graph(g: GkmGraph) -> ValidationReport:
    """Report every violation of the abstract GKM graph axioms (except the
    connection axiom, which :func:`find_connection` decides)."""
    rep = ValidationReport()
    for e in g.edges:
        if e.u == e.v:
            rep.violations.append(Violation("loop", f"edge {e.id} is a loop at {e.u}", (e.id,)))
        if is_zero(e.label):
            rep.violations.append(Violation("zero-label", f"edge {e.id} has zero label", (e.id,)))
    vals = {v: g.valence(v) for v in g.vertices}
    if len(set(vals.values())) > 1:
        rep.violations.append(Violation("valence", f"valences differ: {vals}", tuple(g.vertices)))
    else:
        rep.valence = next(iter(vals.values()), 0)
    for v in g.vertices:
        for d1, d2 in combinations(g.star(v), 2):
            l1, l2 = g.label(d1), g.label(d2)
            if is_zero(l1) or is_zero(l2):
                continue
            if rank_over_q([l1, l2]) < 2:
                rep.violations.append(Violation(
                    "dependent-labels",
                    f"labels of {d1.edge} and {d2.edge} at {v} are proportional",
                    (v, d1.edge, d2.edge),
                ))
    if rep.valence is not None and rep.valence % 2:
        rep.warnings.append(f"valence {rep.valence} is odd: no quaternionic pairing exists")
    return rep


@dataclass
class GkmLevel:
    ok: bool
    k: int
    vertex: str | None = None
    edges: tuple[str, ...] = ()


def check_gkm_level(g: GkmGraph, k: int) -> GkmLevel:
    """True iff any ``k`` labels at a common vertex are linearly independent."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if k not in g._gkm_cache:
        g._gkm_cache[k] = _gkm_level_uncached(g, k)
    return g._gkm_cache[k]


def _gkm_level_uncached(g: GkmGraph, k: int) -> GkmLevel:
    for v in g.vertices:
        for ds in combinations(g.star(v), k):
            if rank_over_q([g.label(d) for d in ds]) < k:
                return GkmLevel(False, k, v, tuple(d.edge for d in ds))
    return GkmLevel(True, k)


def gkm_level(g: GkmGraph, kmax: int | None = None) -> int:
    """Largest ``k`` (>= 1) such that ``g`` is GKM_k; capped at the valence."""
    top = kmax or max((g.valence(v) for v in g.vertices), default=2)
    level = 1
    for k in range(2, max(top, 2) + 1):
        if not check_gkm_level(g, k).ok:
            break
        level = k
    return level


# -- connections -----------------------------------------------------------

class Connection:
    """Per-dart bijections ``E_{i(e)} -> E_{t(e)}`` with recorded congruences.

    ``coefficients[e][f] = (s, c)`` means ``s * rep(alpha(nabla_e f)) ==
    rep(alpha(f)) + c * rep(alpha(e))``.
    """

    def __init__(self, maps: dict[Dart, dict[Dart, Dart]], coefficients, method: str):
        self.maps = maps
        self.coefficients = coefficients
        self.method = method  # "gkm3-unique" or "backtracking"

    def __call__(self, e: Dart, f: Dart) -> Dart:
        return self.maps[e][f]

    def coefficient(self, e: Dart, f: Dart) -> tuple[int, int]:
        return self.coefficients[e][f]

    @property
    def unique(self) -> bool:
        return self.method == "gkm3-unique"

    def __eq__(self, other) -> bool:
        return isinstance(other, Connection) and self.maps == other.maps


def compatible(g: GkmGraph, e: Dart, f: Dart, h: Dart) -> tuple[int, int] | None:
    """Congruence witnessing ``alpha(h) in ±alpha(f) + Z alpha(e)``."""
    return congruence_lift(g.label(f), g.label(h), g.label(e))


def check_connection(g: GkmGraph, con: Connection) -> list[str]:
    """Return a list of axiom violations (empty if ``con`` is a compatible connection)."""
    problems = []
    for e in g.darts():
        m = con.maps.get(e)
        if m is None:
            problems.append(f"no map for {e}")
            continue
        src, dst = g.star(e.source), g.star(e.target)
        if set(m) != set(src) or sorted(m.values()) != sorted(dst):
            problems.append(f"map along {e} is not a bijection E_{e.source} -> E_{e.target}")
            continue
        if m[e] != e.reverse():
            problems.append(f"nabla_e e != reverse(e) for {e}")
        back = con.maps.get(e.reverse(), {})
        if any(back.get(h) != f for f, h in m.items()):
            problems.append(f"nabla along {e.reverse()} is not the inverse of nabla along {e}")
        for f, h in m.items():
            if compatible(g, e, f, h) is None:
                problems.append(f"incompatible: nabla_{e}({f.edge}) = {h.edge}")
    return problems


def _edge_candidates(g: GkmGraph, e: Dart) -> dict[Dart, list[Dart]]:
    back = e.reverse()
    targets = [h for h in g.star(e.target) if h != back]
    return {
        f: [h for h in targets if compatible(g, e, f, h) is not None]
        for f in g.star(e.source) if f != e
    }


def _first_matching(cands: dict[Dart, list[Dart]]) -> dict[Dart, Dart] | None:
    order = sorted(cands)
    used: set[Dart] = set()
    chosen: dict[Dart, Dart] = {}

    def go(i: int) -> bool:
        if i == len(order):
            return True
        f = order[i]
        for h in cands[f]:
            if h not in used:
                used.add(h)
                chosen[f] = h
                if go(i + 1):
                    return True
                used.discard(h)
                del chosen[f]
        return False

    return dict(chosen) if go(0) else None


def find_connection(g: GkmGraph) -> Connection:
    """Return a compatible connection on ``g``.

    For GKM_3 graphs the connection is unique and read off directly: the
    image of ``f`` along ``e`` is the only edge at ``t(e)`` (besides the
    reverse of ``e``) whose label lies in ``alpha(f) + Z alpha(e)`` up to sign.
    Otherwise every edge gets the lexicographically first compatible
    bijection found by backtracking (exponential in the valence).
    """
    gkm3 = check_gkm_level(g, 3).ok
    maps: dict[Dart, dict[Dart, Dart]] = {}
    coeffs: dict[Dart, dict[Dart, tuple[int, int]]] = {}
    for edge in g.edges:
        e = Dart(edge.id, edge.u, edge.v)
        cands = _edge_candidates(g, e)
        if gkm3:
            m = {}
            for f, hs in cands.items():
                if len(hs) != 1:
                    raise NoConnection(f"{len(hs)} compatible images of {f.edge} along {e}")
                m[f] = hs[0]
            if len(set(m.values())) != len(m):
                raise NoConnection(f"transport along {e} is not injective")
        else:
            m = _first_matching(cands)
            if m is None:
                raise NoConnection(f"no compatible bijection along {e}")
        m[e] = e.reverse()
        maps[e] = m
        maps[e.reverse()] = {h: f for f, h in m.items()}
    for e, m in maps.items():
        coeffs[e] = {f: compatible(g, e, f, h) for f, h in m.items()}
    return Connection(maps, coeffs, "gkm3-unique" if gkm3 else "backtracking")


# -- 2-faces -----------------------------------------------------------------

def _dart_key(d: Dart) -> tuple[str, str]:
    return (d.edge, d.source)


@dataclass(frozen=True)
class TwoFace:
    """Closed connection path, stored as its walk ``darts`` in canonical form."""

    darts: tuple[Dart, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(d.source for d in self.darts)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(d.edge for d in self.darts)

    def corner(self, i: int) -> tuple[Dart, Dart]:
        """The two face darts leaving the ``i``-th vertex (incoming reversed, outgoing)."""
        return self.darts[i - 1].reverse(), self.darts[i]

    def rotations(self) -> Iterator[tuple[Dart, ...]]:
        n = len(self.darts)
        rev = tuple(d.reverse() for d in reversed(self.darts))
        for seq in (self.darts, rev):
            for i in range(n):
                yield seq[i:] + seq[:i]

    @classmethod
    def from_walk(cls, walk: Sequence[Dart]) -> "TwoFace":
        tmp = cls(tuple(walk))
        best = min(tmp.rotations(), key=lambda s: [_dart_key(d) for d in s])
        return cls(best)


def connection_path(g: GkmGraph, con: Connection, e: Dart, f: Dart) -> list[Dart]:
    """Walk the connection path through the darts ``e`` and ``f`` at a vertex,
    starting along ``e``."""
    start = (e, f)
    cur, other = start
    walk = []
    seen_vertices = set()
    while True:
        if cur.source in seen_vertices:
            raise SelfIntersectingPath(
                f"connection path through {e.edge}, {f.edge} revisits {cur.source}")
        seen_vertices.add(cur.source)
        walk.append(cur)
        cur, other = con(cur, other), cur.reverse()
        if (cur, other) == start:
            return walk


def enumerate_faces(g: GkmGraph, con: Connection) -> list[TwoFace]:
    """All 2-faces, each covering exactly one unordered dart pair per vertex."""
    covered: set[tuple[str, frozenset]] = set()
    faces = []
    for v in sorted(g.vertices):
        for e, f in combinations(g.star(v), 2):
            if (v, frozenset((e, f))) in covered:
                continue
            walk = connection_path(g, con, e, f)
            face = TwoFace.from_walk(walk)
            for i in range(face.length):
                a, b = face.corner(i)
                key = (a.source, frozenset((a, b)))
                if key in covered:
                    raise SelfIntersectingPath(f"pair {key} lies on two connection paths")
                covered.add(key)
            faces.append(face)
    faces.sort(key=lambda fc: [_dart_key(d) for d in fc.darts])
    return faces
