"""Rank of sparse integer matrices, exactly or modulo a prime.

Rows are dicts ``{column: nonzero int}``.  Both routines run an incremental
row echelon reduction keyed on the leading (smallest) column of each row.
"""
from __future__ import annotations

import random
from math import gcd
from typing import Iterable, Mapping

SparseRow = Mapping[int, int]


def _content(row: dict[int, int]) -> int:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    return g


def rank_exact(rows: Iterable[SparseRow]) -> int:
    """Rank over Q by fraction-free elimination over Z.

    A row ``r`` is reduced against a pivot row ``p`` with leading column ``c``
    as ``p[c] * r - r[c] * p``, followed by division by the gcd of the
    entries, so no rationals ever appear and entries stay small.
    """
    pivots: dict[int, dict[int, int]] = {}
    for src in rows:
        r = {c: x for c, x in src.items() if x}
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                g = _content(r)
                if g > 1:
                    r = {k: x // g for k, x in r.items()}
                pivots[c] = r
                break
            a, b = p[c], r[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * x for k, x in r.items()}
            for k, y in p.items():
                v = new.get(k, 0) - b * y
                if v:
                    new[k] = v
                else:
                    new.pop(k, None)
            g = _content(new) if new else 0
            if g > 1:
                new = {k: x // g for k, x in new.items()}
            r = new
    return len(pivots)


def rank_dense(rows: Iterable[Iterable[int]]) -> int:
    """Rank over Q of a small dense integer matrix (fraction-free)."""
    work = [list(r) for r in rows]
    rank = 0
    ncols = max((len(r) for r in work), default=0)
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank]
        a = p[c]
        for i in range(rank + 1, len(work)):
            b = work[i][c]
            if b:
                work[i] = [a * x - b * y for x, y in zip(work[i], p)]
        rank += 1
        if rank == len(work):
            break
    return rank


def rank_mod_p(rows: Iterable[SparseRow], p: int) -> int:
    """Rank over GF(p); ``p`` must be prime."""
    pivots: dict[int, dict[int, int]] = {}
    for src in rows:
        r = {c: x % p for c, x in src.items() if x % p}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: x * inv % p for k, x in r.items()}
                break
            b = r[c]
            for k, y in piv.items():
                v = (r.get(k, 0) - b * y) % p
                if v:
                    r[k] = v
                else:
                    r.pop(k, None)
    return len(pivots)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int = 62, rng: random.Random | None = None) -> int:
    rng = rng or random.Random()
    while True:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(n):
            return n
