"""Graded dimensions of equivariant graph cohomology and Betti numbers.

In degree ``d`` the unknowns are the coefficients of one homogeneous
polynomial per vertex.  An edge ``e = (v, w)`` demands that ``f_v - f_w``
vanish on the hyperplane ``alpha(e) = 0``; substituting an integer basis of
that hyperplane turns the condition into linear equations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from .graph import GkmGraph
from .lattice import Polynomial, _power_expansions, kernel_basis, monomials, poly_mul
from .linalg import random_prime, rank_exact, rank_mod_p

FORMALITY_NOTE = (
    "Betti numbers assume the graph cohomology is a free module over the "
    "polynomial ring; negative values are evidence against freeness."
)


@dataclass
class GradedDims:
    h: list[int]
    rank: int  # number of polynomial variables m
    unknowns: list[int] = field(default_factory=list)
    method: str = "exact"


@dataclass
class BettiReport:
    b: list[int]
    dims: GradedDims
    all_nonnegative: bool
    sum_equals_vertex_count: bool | None  # None unless the degree range reaches the valence
    note: str = FORMALITY_NOTE


def _restriction_table(a, d: int) -> list[Polynomial]:
    """Restriction of every degree-``d`` monomial to the hyperplane ``a = 0``,
    in the order of :func:`monomials`."""
    basis = kernel_basis(a)
    m = len(a)
    mons = monomials(m, d)
    if not basis:
        # rank one: the hyperplane is the origin
        return [{(): 1} if d == 0 else {} for _ in mons]
    powers = _power_expansions(basis, d)
    k = len(basis)
    out = []
    for e in mons:
        term: Polynomial = {(0,) * k: 1}
        for i, ei in enumerate(e):
            if ei:
                term = poly_mul(term, powers[i][ei])
        out.append(term)
    return out


def constraint_rows(g: GkmGraph, d: int) -> tuple[int, list[dict[int, int]]]:
    """Unknown count and sparse constraint rows for degree ``d``."""
    m = g.rank
    nmon = comb(m + d - 1, d)
    index = {v: i * nmon for i, v in enumerate(g.vertices)}
    tables: dict[tuple, list[Polynomial]] = {}
    rows: list[dict[int, int]] = []
    for edge in g.edges:
        if edge.u == edge.v:
            continue
        table = tables.get(edge.label)
        if table is None:
            table = tables[edge.label] = _restriction_table(edge.label, d)
        ou, ov = index[edge.u], index[edge.v]
        per_target: dict[tuple, dict[int, int]] = {}
        for j, poly in enumerate(table):
            for y, x in poly.items():
                row = per_target.setdefault(y, {})
                row[ou + j] = x
                row[ov + j] = -x
        rows.extend(per_target.values())
    return nmon * len(g.vertices), rows


def _rank(rows, method: str, rng: random.Random) -> tuple[int, str]:
    if method == "exact":
        return rank_exact(rows), "exact"
    p1, p2 = random_prime(62, rng), random_prime(62, rng)
    while p2 == p1:
        p2 = random_prime(62, rng)
    r1, r2 = rank_mod_p(rows, p1), rank_mod_p(rows, p2)
    if r1 == r2:
        return r1, "modular"
    return rank_exact(rows), "exact"


def graph_cohomology_dims(g: GkmGraph, D: int | None = None, method: str = "exact",
                          seed: int | None = None) -> GradedDims:
    """``h[d]`` for ``d = 0..D`` (default ``D`` = valence).

    ``method="modular"`` computes each rank modulo two random 62-bit primes
    and falls back to exact elimination when they disagree.
    """
    if method not in ("exact", "modular"):
        raise ValueError(f"unknown method {method!r}")
    if D is None:
        D = max((g.valence(v) for v in g.vertices), default=0)
    rng = random.Random(seed)
    h, unknowns, used = [], [], set()
    for d in range(D + 1):
        n, rows = constraint_rows(g, d)
        r, how = _rank(rows, method, rng)
        used.add(how)
        h.append(n - r)
        unknowns.append(n)
    how = "modular" if used == {"modular"} else ("exact" if used == {"exact"} else "mixed")
    return GradedDims(h, g.rank, unknowns, how)


def betti_from_dims(dims: GradedDims) -> list[int]:
    """Quotient by positive-degree polynomials: ``b[d] = sum (-1)^i C(m,i) h[d-i]``."""
    m = dims.rank
    return [sum((-1) ** i * comb(m, i) * dims.h[d - i] for i in range(d + 1)) for d in range(len(dims.h))]


def betti_numbers(g: GkmGraph, D: int | None = None, method: str = "exact",
                  seed: int | None = None) -> BettiReport:
    dims = graph_cohomology_dims(g, D, method, seed)
    b = betti_from_dims(dims)
    valence = max((g.valence(v) for v in g.vertices), default=0)
    total = None
    if len(b) - 1 >= valence:
        total = sum(b) == len(g.vertices)
    return BettiReport(b, dims, all(x >= 0 for x in b), total)


def free_module_dims(betti: list[int], m: int, D: int) -> list[int]:
    """Graded dimensions of a free module over ``Q[x_1..x_m]`` with
    generators counted by ``betti``."""
    return [sum(betti[i] * comb(m + d - i - 1, d - i) for i in range(min(d, len(betti) - 1) + 1))
            for d in range(D + 1)]


__all__ = [
    "BettiReport",
    "GradedDims",
    "betti_from_dims",
    "betti_numbers",
    "constraint_rows",
    "free_module_dims",
    "graph_cohomology_dims",
]
