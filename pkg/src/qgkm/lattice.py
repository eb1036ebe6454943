"""Exact arithmetic on integral weight vectors.

Weights are tuples of Python ints.  An unsigned weight is the class
``{w, -w}``, stored through its canonical representative (first nonzero
coordinate positive).  Homogeneous polynomials are plain dicts mapping
exponent tuples to integer or :class:`fractions.Fraction` coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd
from typing import Iterable, Mapping, Sequence

from .linalg import rank_dense

WeightVector = tuple[int, ...]
Polynomial = dict[tuple[int, ...], "int | Fraction"]


class ZeroWeight(ValueError):
    """Raised when a zero vector is used where a label is required."""


def as_vector(w: Iterable[int]) -> WeightVector:
    if isinstance(w, UnsignedWeight):
        return w.rep
    return tuple(int(x) for x in w)


def neg(w: Sequence[int]) -> WeightVector:
    return tuple(-x for x in w)


def add(u: Sequence[int], v: Sequence[int]) -> WeightVector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> WeightVector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: int, v: Sequence[int]) -> WeightVector:
    return tuple(c * x for x in v)


def is_zero(w: Sequence[int]) -> bool:
    return all(x == 0 for x in w)


@dataclass(frozen=True, order=True)
class UnsignedWeight:
    """An element of Z^m / ±1, compared and hashed by its canonical rep."""

    rep: WeightVector

    def __post_init__(self):
        if is_zero(self.rep):
            raise ZeroWeight("unsigned weight must be nonzero")
        first = next(x for x in self.rep if x != 0)
        if first < 0:
            raise ValueError(f"{self.rep} is not a canonical representative")

    @property
    def rank(self) -> int:
        return len(self.rep)

    def lifts(self) -> tuple[WeightVector, WeightVector]:
        return self.rep, neg(self.rep)

    def __str__(self) -> str:
        return "±(" + ",".join(str(x) for x in self.rep) + ")"


def canonicalize(w: Iterable[int]) -> UnsignedWeight:
    """Return the class of ``w`` in Z^m / ±1.

    >>> canonicalize((-1, 2)).rep
    (1, -2)
    """
    v = as_vector(w)
    for x in v:
        if x > 0:
            return UnsignedWeight(v)
        if x < 0:
            return UnsignedWeight(neg(v))
    raise ZeroWeight(f"cannot canonicalize the zero vector {v}")


def rank_over_q(ws: Iterable) -> int:
    """Dimension of the rational span of the given weights (signs irrelevant)."""
    return rank_dense(w.rep if isinstance(w, UnsignedWeight) else w for w in ws)


def proportional(u: Sequence[int], v: Sequence[int]) -> bool:
    """True iff ``u`` and ``v`` are linearly dependent over Q."""
    return rank_over_q([u, v]) < 2


def integer_multiple(d: Sequence[int], a: Sequence[int]) -> int | None:
    """Return ``c`` with ``d == c * a`` if such an integer exists."""
    j = next(i for i, x in enumerate(a) if x != 0)
    c, r = divmod(d[j], a[j])
    if r:
        return None
    if all(x == c * y for x, y in zip(d, a)):
        return c
    return None


def congruence_lift(x: Sequence[int], y: Sequence[int], a: Sequence[int]) -> tuple[int, int] | None:
    """Solve ``s * y == x + c * a`` for a sign ``s`` and integer ``c``.

    Works on explicit lifts; ``s = +1`` is tried first.
    """
    for s in (1, -1):
        c = integer_multiple(sub(scale(s, y), x), a)
        if c is not None:
            return s, c
    return None


def unsigned_congruence(x, y, a) -> tuple[int, int] | None:
    """Compatibility congruence between unsigned labels.

    Returns ``(s, c)`` with ``s * rep(y) == rep(x) + c * rep(a)``, or None.
    """
    return congruence_lift(as_vector(x), as_vector(y), as_vector(a))


def _exgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (g, p, q) with p*a + q*b == g >= 0
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def kernel_basis(a: Sequence[int]) -> list[WeightVector]:
    """Z-basis of ``{x in Z^m : <a, x> = 0}``.

    Column-style Hermite reduction of the 1 x m matrix ``a``: unimodular
    column operations bring ``a`` to ``(g, 0, ..., 0)``; the transformed
    columns 2..m span the integer kernel.
    """
    a = as_vector(a)
    m = len(a)
    if is_zero(a):
        raise ZeroWeight("kernel of the zero form is the whole lattice")
    row = list(a)
    # columns of the unimodular transform, stored as lists
    cols = [[int(i == j) for i in range(m)] for j in range(m)]
    # bring the first nonzero entry to position 0
    p = next(i for i, x in enumerate(row) if x)
    row[0], row[p] = row[p], row[0]
    cols[0], cols[p] = cols[p], cols[0]
    for j in range(1, m):
        if row[j] == 0:
            continue
        g, s, t = _exgcd(row[0], row[j])
        u, v = row[0] // g, row[j] // g
        # [c0 cj] <- [c0 cj] @ [[s, -v], [t, u]]  (det = s*u + t*v = 1)
        c0, cj = cols[0], cols[j]
        cols[0] = [s * x + t * y for x, y in zip(c0, cj)]
        cols[j] = [-v * x + u * y for x, y in zip(c0, cj)]
        row[0], row[j] = g, 0
    return [tuple(c) for c in cols[1:]]


# -- polynomials -----------------------------------------------------------

def monomials(m: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree ``d`` in ``m`` variables, sorted."""
    out = []
    for combo in combinations_with_replacement(range(m), d):
        e = [0] * m
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def poly_add(p: Mapping, q: Mapping, c=1) -> Polynomial:
    out = dict(p)
    for e, x in q.items():
        v = out.get(e, 0) + c * x
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def poly_mul(p: Mapping, q: Mapping) -> Polynomial:
    out: Polynomial = {}
    for e1, x1 in p.items():
        for e2, x2 in q.items():
            e = tuple(i + j for i, j in zip(e1, e2))
            out[e] = out.get(e, 0) + x1 * x2
    return {e: x for e, x in out.items() if x}


def linear_form(a: Sequence[int]) -> Polynomial:
    m = len(a)
    return {tuple(int(i == j) for i in range(m)): x for j, x in enumerate(a) if x}


def _power_expansions(basis: Sequence[Sequence[int]], dmax: int):
    # powers[i][k] = (sum_j basis[j][i] * y_j) ** k as a polynomial in y
    k = len(basis)
    m = len(basis[0]) if basis else 0
    linear = [
        {tuple(int(r == j) for r in range(k)): basis[j][i] for j in range(k) if basis[j][i]}
        for i in range(m)
    ]
    one = {(0,) * k: 1}
    powers = []
    for i in range(m):
        row = [one]
        for _ in range(dmax):
            row.append(poly_mul(row[-1], linear[i]))
        powers.append(row)
    return powers


def restrict(p: Mapping, basis: Sequence[Sequence[int]]) -> Polynomial:
    """Substitute ``x = sum_j y_j * basis[j]`` into ``p``."""
    if not p:
        return {}
    dmax = max(sum(e) for e in p)
    powers = _power_expansions(basis, dmax)
    k = len(basis)
    out: Polynomial = {}
    for e, x in p.items():
        term = {(0,) * k: x}
        for i, ei in enumerate(e):
            if ei:
                term = poly_mul(term, powers[i][ei])
        out = poly_add(out, term)
    return out


def divides_linear(a, p: Mapping) -> bool:
    """True iff the linear form ``a`` divides ``p`` over Q.

    Equivalent to ``p`` vanishing on the hyperplane ``a = 0``; tested by
    restricting to an integer kernel basis of ``a``.
    """
    a = as_vector(a)
    if not any(p.values()):
        return True
    basis = kernel_basis(a)
    if not basis:
        # m == 1: the hyperplane is the origin, only the constant term matters
        return all(x == 0 for e, x in p.items() if sum(e) == 0)
    return not any(restrict(p, basis).values())


def primitive(v: Sequence[int]) -> WeightVector:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g else tuple(v)
