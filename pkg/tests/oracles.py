"""Independent reference computations used by the tests.

Nothing here imports the arithmetic of the package under test: ranks go
through sympy, congruences through Fractions, isomorphisms through networkx.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

import networkx as nx
import sympy


def q_rank(vectors) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return sympy.Matrix(vectors).rank()


def is_multiple(d, a) -> bool:
    """``d in Z a`` via rational ratios."""
    ratio = None
    for x, y in zip(d, a):
        if y == 0:
            if x != 0:
                return False
            continue
        r = Fraction(x, y)
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return ratio is None or ratio.denominator == 1


def congruent_unsigned(f, h, e) -> bool:
    """``±h in f + Z e`` for labels given by any representative."""
    return any(is_multiple([s * x - y for x, y in zip(h, f)], e) for s in (1, -1))


def _stars(g):
    stars = {v: [] for v in g.vertices}
    for e in g.edges:
        stars[e.u].append((e.id, e.u, e.v))
        stars[e.v].append((e.id, e.v, e.u))
    return stars


def count_compatible_connections(g) -> int:
    """Number of compatible connections, by backtracking over every bijection
    ``E_{i(e)} \\ {e} -> E_{t(e)} \\ {reverse e}`` for each edge (branches are
    cut as soon as a partial assignment breaks the congruence).  The choices
    along ``e`` fix those along its reverse, so the total is a product."""
    stars = _stars(g)
    labels = {e.id: e.label for e in g.edges}
    total = 1
    for e in g.edges:
        src = [d for d in stars[e.u] if d != (e.id, e.u, e.v)]
        dst = [d for d in stars[e.v] if d != (e.id, e.v, e.u)]
        used = [False] * len(dst)

        def go(i: int) -> int:
            if i == len(src):
                return 1
            n = 0
            for j, h in enumerate(dst):
                if not used[j] and congruent_unsigned(labels[src[i][0]], labels[h[0]], e.label):
                    used[j] = True
                    n += go(i + 1)
                    used[j] = False
            return n

        total *= go(0)
        if total == 0:
            return 0
    return total


def to_networkx(g, q=None, vmap=None) -> nx.MultiGraph:
    vmap = vmap or {}
    G = nx.MultiGraph()
    for v in g.vertices:
        w = None
        if q is not None:
            w = canonical(q.weights[v])
        G.add_node(vmap.get(v, v), weight=w)
    for e in g.edges:
        G.add_edge(vmap.get(e.u, e.u), vmap.get(e.v, e.v), label=canonical(e.label))
    return G


def canonical(v):
    v = tuple(v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def isomorphic_labelled(g1, q1, g2, q2) -> bool:
    """Labelled multigraph isomorphism respecting edge labels and vertex weights."""
    G1, G2 = to_networkx(g1, q1), to_networkx(g2, q2)
    return nx.is_isomorphic(
        G1, G2,
        node_match=lambda a, b: a["weight"] == b["weight"],
        edge_match=lambda a, b: sorted(x["label"] for x in a.values()) == sorted(x["label"] for x in b.values()),
    )


def pairs_as_label_sets(g, q):
    """Per vertex, the set of unordered label pairs forming quaternionic pairs."""
    out = {}
    for v, m in q.pairs.items():
        out[v] = {frozenset((canonical(g.label(a)), canonical(g.label(b)))) for a, b in m.items()}
    return out


def gaussian_binomial_coeffs(n: int, k: int) -> list[int]:
    """Coefficients of the q-binomial [n choose k] (cell counts of Gr_k(C^n))."""
    q = sympy.Symbol("q")
    num = sympy.Integer(1)
    for i in range(k):
        num *= (1 - q ** (n - i)) / (1 - q ** (i + 1))
    poly = sympy.Poly(sympy.cancel(num), q)
    return [int(c) for c in reversed(poly.all_coeffs())]


def h_by_sympy(g, d: int) -> int:
    """Graph cohomology dimension in degree ``d`` by symbolic remainders:
    ``f_v - f_w`` is divisible by the linear form iff its remainder vanishes."""
    xs = sympy.symbols(f"x0:{g.rank}")
    mons = sorted(sympy.itermonomials(xs, d, d), key=sympy.default_sort_key) if d else [sympy.Integer(1)]
    coeffs = {v: sympy.symbols(f"c_{i}_0:{len(mons)}") for i, v in enumerate(g.vertices)}
    poly = {v: sum(c * m for c, m in zip(coeffs[v], mons)) for v in g.vertices}
    equations = []
    for e in g.edges:
        form = sum(a * x for a, x in zip(e.label, xs))
        piv = next(i for i, a in enumerate(e.label) if a)
        sol = sympy.solve(form, xs[piv])[0]
        diff = sympy.expand((poly[e.u] - poly[e.v]).subs(xs[piv], sol))
        rest = [x for x in xs if x != xs[piv]]
        if rest:
            equations.extend(sympy.Poly(diff, *rest).coeffs())
        else:
            equations.append(diff)
    unknowns = [c for v in g.vertices for c in coeffs[v]]
    if not equations:
        return len(unknowns)
    A, _ = sympy.linear_eq_to_matrix(equations, unknowns)
    return len(unknowns) - A.rank()


def expected_gr2_faces(n: int) -> dict[str, int]:
    """Face census of the Gr_2(C^n) graph from subset combinatorics: quaternionic
    triangles are 3-subsets, complex triangles a fixed index plus 3 others,
    quadrangles a 4-subset with one of its 3 splittings."""
    return {
        "NoncomplexTriangle": comb(n, 3),
        "ComplexTriangle": n * comb(n - 1, 3),
        "ComplexQuadrangle": 3 * comb(n, 4),
    }


def pair_count(g) -> int:
    """Unordered pairs of distinct edges at a common vertex."""
    return sum(comb(sum(v in (e.u, e.v) for e in g.edges), 2) for v in g.vertices)
