"""Model graphs with quaternionic structures: ℍPⁿ and Gr₂(ℂⁿ).

Both generators accept arbitrary integral parameters and check eagerly
that labels at every vertex are pairwise independent.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .graph import GkmGraph, check_gkm_level, validate_graph
from .lattice import WeightVector, as_vector, is_zero, neg, scale, sub
from .quaternionic import QuaternionicStructure, infer_pairs


class DegenerateParams(ValueError):
    def __init__(self, message: str, vertex: str | None = None, edges: tuple[str, ...] = ()):
        super().__init__(message)
        self.vertex = vertex
        self.edges = edges


@dataclass(frozen=True)
class HpnParams:
    n: int
    lam: WeightVector
    alpha: tuple[WeightVector, ...]  # alpha[k-1] is α_k, k = 1..n

    def __post_init__(self):
        object.__setattr__(self, "lam", as_vector(self.lam))
        object.__setattr__(self, "alpha", tuple(as_vector(a) for a in self.alpha))
        if self.n < 1 or len(self.alpha) != self.n:
            raise ValueError(f"ℍPⁿ needs n >= 1 and exactly n alphas (got n={self.n}, {len(self.alpha)})")

    @property
    def rank(self) -> int:
        return len(self.lam)


@dataclass(frozen=True)
class Gr2Params:
    n: int
    lam: WeightVector
    alpha: tuple[WeightVector, ...]  # alpha[k-3] is α_k, k = 3..n

    def __post_init__(self):
        object.__setattr__(self, "lam", as_vector(self.lam))
        object.__setattr__(self, "alpha", tuple(as_vector(a) for a in self.alpha))
        if self.n < 3 or len(self.alpha) != self.n - 2:
            raise ValueError(f"Gr₂(ℂⁿ) needs n >= 3 and n-2 alphas (got n={self.n}, {len(self.alpha)})")

    @property
    def rank(self) -> int:
        return len(self.lam)


def hpn_vertex(k: int) -> str:
    return f"v{k}"


def gr2_vertex(i: int, j: int, n: int) -> str:
    return f"v{i}_{j}" if n >= 10 else f"v{i}{j}"


def _check(g: GkmGraph, weights: dict[str, WeightVector]) -> None:
    rep = validate_graph(g)
    # equal parameters show up first as dependent labels at a vertex
    for viol in sorted(rep.violations, key=lambda x: x.kind != "dependent-labels"):
        v = viol.where[0] if viol.kind == "dependent-labels" else None
        raise DegenerateParams(viol.message, v, viol.where[1:] if v else viol.where)
    for v, w in weights.items():
        if is_zero(w):
            raise DegenerateParams(f"quaternionic weight at {v} vanishes", v)


def _structure(g, weights, pairs) -> QuaternionicStructure:
    return QuaternionicStructure.from_edge_pairs(g, weights, pairs)


def generate_hpn(p: HpnParams) -> tuple[GkmGraph, QuaternionicStructure]:
    """Complete graph on v0..vn with a quaternionic biangle between any two vertices."""
    lam, a = p.lam, (None,) + p.alpha
    m = p.rank
    if any(len(x) != m for x in p.alpha):
        raise ValueError("all parameters must have the same length")
    edges = []
    pairs: dict[str, list[tuple[str, str]]] = {hpn_vertex(k): [] for k in range(p.n + 1)}
    weights = {hpn_vertex(0): lam}

    def biangle(u: str, v: str, x: WeightVector, y: WeightVector):
        ea, eb = f"{u}-{v}.a", f"{u}-{v}.b"
        edges.append((ea, u, v, x))
        edges.append((eb, u, v, y))
        pairs[u].append((ea, eb))
        pairs[v].append((ea, eb))

    for k in range(1, p.n + 1):
        weights[hpn_vertex(k)] = sub(lam, scale(2, a[k]))
        biangle(hpn_vertex(0), hpn_vertex(k), a[k], sub(lam, a[k]))
    for k, l in combinations(range(1, p.n + 1), 2):
        biangle(hpn_vertex(k), hpn_vertex(l), sub(a[k], a[l]), sub(sub(lam, a[k]), a[l]))
    g = GkmGraph(m, [hpn_vertex(k) for k in range(p.n + 1)], edges)
    _check(g, weights)
    return g, _structure(g, weights, pairs)


def generate_gr2(p: Gr2Params) -> tuple[GkmGraph, QuaternionicStructure]:
    """Vertices v_ij (i < j) for the 2-subsets of {1..n}; v_ij ~ v_ik labelled
    ε_k - ε_j with ε_1 = λ, ε_2 = 0, ε_k = α_k; weight ε_i - ε_j at v_ij."""
    n, m = p.n, p.rank
    if any(len(x) != m for x in p.alpha):
        raise ValueError("all parameters must have the same length")
    eps = {1: p.lam, 2: (0,) * m}
    eps.update({k: p.alpha[k - 3] for k in range(3, n + 1)})
    subsets = list(combinations(range(1, n + 1), 2))
    name = {s: gr2_vertex(*s, n) for s in subsets}
    weights = {name[(i, j)]: sub(eps[i], eps[j]) for i, j in subsets}
    edges = []
    eid: dict[frozenset, str] = {}
    for s, t in combinations(subsets, 2):
        common = set(s) & set(t)
        if len(common) != 1:
            continue
        (j,) = set(s) - common
        (k,) = set(t) - common
        ident = f"{name[s]}-{name[t]}"
        eid[frozenset((s, t))] = ident
        edges.append((ident, name[s], name[t], sub(eps[k], eps[j])))
    pairs: dict[str, list[tuple[str, str]]] = {}
    for i, j in subsets:
        pairs[name[(i, j)]] = [
            (eid[frozenset(((i, j), tuple(sorted((i, k)))))], eid[frozenset(((i, j), tuple(sorted((j, k)))))])
            for k in range(1, n + 1) if k not in (i, j)
        ]
    g = GkmGraph(m, [name[s] for s in subsets], edges)
    _check(g, weights)
    q = _structure(g, weights, pairs)
    if check_gkm_level(g, 3).ok:
        inferred = infer_pairs(g, q.weights)
        if inferred != q.pairs:
            raise RuntimeError("pair inference disagrees with the generated pairing")
    return g, q


def standard_params(model: str, n: int) -> HpnParams | Gr2Params:
    """Parameters of the standard maximal-torus action."""
    if model == "hpn":
        m = n + 1
        e = [tuple(int(i == j) for i in range(m)) for j in range(m)]
        return HpnParams(n, scale(2, e[0]), tuple(sub(e[0], e[k]) for k in range(1, n + 1)))
    if model == "gr2":
        e = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        # e[0], e[1] play the roles of e_1, e_2
        return Gr2Params(n, sub(e[0], e[1]), tuple(sub(e[k - 1], e[1]) for k in range(3, n + 1)))
    raise ValueError(f"unknown model {model!r}")


def generate(params: HpnParams | Gr2Params) -> tuple[GkmGraph, QuaternionicStructure]:
    if isinstance(params, HpnParams):
        return generate_hpn(params)
    return generate_gr2(params)


def random_params(model: str, n: int, rng: random.Random, rank: int | None = None,
                  bound: int = 5, gkm3: bool = True, tries: int = 10_000) -> HpnParams | Gr2Params:
    """Random integral parameters passing the independence precondition
    (and GKM_3 unless ``gkm3`` is false)."""
    if rank is None:
        rank = n + 1 if model == "hpn" else n
    count = n if model == "hpn" else n - 2
    cls = HpnParams if model == "hpn" else Gr2Params

    def vec():
        return tuple(rng.randint(-bound, bound) for _ in range(rank))

    for _ in range(tries):
        p = cls(n, vec(), tuple(vec() for _ in range(count)))
        try:
            g, _ = generate(p)
        except DegenerateParams:
            continue
        if not gkm3 or check_gkm_level(g, 3).ok:
            return p
    raise RuntimeError(f"no valid parameters found for {model} n={n} in rank {rank}")


# -- small named pieces ----------------------------------------------------

def _triangle(lam, alpha, third, weights) -> tuple[GkmGraph, QuaternionicStructure]:
    lam, alpha = as_vector(lam), as_vector(alpha)
    g = GkmGraph(len(lam), ["v0", "v1", "v2"], [
        ("a", "v0", "v1", alpha),
        ("b", "v0", "v2", sub(lam, alpha)),
        ("c", "v1", "v2", third),
    ])
    w = dict(zip(["v0", "v1", "v2"], weights))
    _check(g, w)
    q = _structure(g, w, {"v0": [("a", "b")], "v1": [("a", "c")], "v2": [("b", "c")]})
    return g, q


def noncomplex_triangle(lam=(1, -1, 0), alpha=(0, -1, 1)) -> tuple[GkmGraph, QuaternionicStructure]:
    """Quaternionic triangle with labels α, λ-α, λ and weights λ, λ-α, α."""
    lam, alpha = as_vector(lam), as_vector(alpha)
    return _triangle(lam, alpha, lam, [lam, sub(lam, alpha), alpha])


def kahler_cp2_triangle(lam=(1, 1), alpha=(1, 0)) -> tuple[GkmGraph, QuaternionicStructure]:
    """Quaternionic triangle with labels α, λ-α, λ-2α and weights λ, λ-3α, 3α-2λ."""
    lam, alpha = as_vector(lam), as_vector(alpha)
    two = scale(2, alpha)
    return _triangle(lam, alpha, sub(lam, two),
                     [lam, sub(lam, scale(3, alpha)), sub(scale(3, alpha), scale(2, lam))])


def hp1_biangle(lam=(2, 0), alpha=(1, -1)) -> tuple[GkmGraph, QuaternionicStructure]:
    return generate_hpn(HpnParams(1, lam, (alpha,)))


def hirzebruch_quadrangle(alpha=(1, 0), beta=(0, 1), d: int = 1) -> GkmGraph:
    """4-cycle with signed labels α, β, -α-dβ, -β (d = 0 gives S²×S²)."""
    alpha, beta = as_vector(alpha), as_vector(beta)
    third = neg(tuple(x + d * y for x, y in zip(alpha, beta)))
    return GkmGraph(len(alpha), ["p0", "p1", "p2", "p3"], [
        ("q0", "p0", "p1", alpha),
        ("q1", "p1", "p2", beta),
        ("q2", "p2", "p3", third),
        ("q3", "p3", "p0", neg(beta)),
    ])
