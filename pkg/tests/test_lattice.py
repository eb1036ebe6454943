import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from qgkm.lattice import (
    UnsignedWeight,
    ZeroWeight,
    canonicalize,
    divides_linear,
    kernel_basis,
    poly_mul,
    proportional,
    rank_over_q,
    unsigned_congruence,
)
from qgkm.linalg import is_probable_prime, random_prime, rank_dense, rank_exact, rank_mod_p

import oracles

small = st.integers(-6, 6)


def vectors(m=3, lo=-6, hi=6):
    return st.lists(st.integers(lo, hi), min_size=m, max_size=m).map(tuple)


nonzero = vectors().filter(any)


# -- canonical forms -----------------------------------------------------------

@pytest.mark.parametrize("w, rep", [((-1, 2), (1, -2)), ((0, -3), (0, 3)), ((2, 1), (2, 1))])
def test_canonicalize_examples(w, rep):
    assert canonicalize(w).rep == rep


def test_canonicalize_rejects_zero():
    with pytest.raises(ZeroWeight):
        canonicalize((0, 0))


def test_unsigned_weight_rejects_noncanonical_rep():
    with pytest.raises(ValueError):
        UnsignedWeight((-1, 0))
    assert str(UnsignedWeight((1, -2))) == "±(1,-2)"


@given(nonzero)
def test_canonicalize_ignores_sign(w):
    assert canonicalize(w) == canonicalize(tuple(-x for x in w))
    rep = canonicalize(w).rep
    assert rep in (w, tuple(-x for x in w))
    assert next(x for x in rep if x) > 0


# -- ranks ---------------------------------------------------------------------

@pytest.mark.parametrize("ws, r", [
    ([(1, 0), (0, 1)], 2),
    ([(1, 1), (2, 2)], 1),
    ([(2, 0, 0), (1, 1, 0), (1, -1, 0)], 2),
])
def test_rank_examples(ws, r):
    assert rank_over_q(ws) == r
    assert oracles.q_rank(ws) == r


def test_rank_three_weights_pairwise_independent():
    ws = [(2, 0, 0), (1, 1, 0), (1, -1, 0)]
    for i in range(3):
        for j in range(i + 1, 3):
            assert rank_over_q([ws[i], ws[j]]) == 2


@given(st.lists(vectors(4), min_size=1, max_size=5), st.randoms())
def test_rank_invariant_under_signs_and_order(ws, rnd):
    flipped = [tuple(-x for x in w) if rnd.random() < 0.5 else w for w in ws]
    rnd.shuffle(flipped)
    assert rank_over_q(flipped) == rank_over_q(ws) == oracles.q_rank(ws)


@given(st.lists(st.dictionaries(st.integers(0, 7), st.integers(-9, 9)), max_size=8))
def test_sparse_rank_matches_sympy(rows):
    dense = [[r.get(j, 0) for j in range(8)] for r in rows]
    expected = oracles.q_rank(dense)
    assert rank_exact(rows) == expected
    assert rank_dense(dense) == expected
    p = random_prime(62, random.Random(0))
    assert rank_mod_p(rows, p) == expected


def test_primes():
    for n in range(2000):
        assert is_probable_prime(n) == sympy.isprime(n)
    rng = random.Random(3)
    for _ in range(5):
        p = random_prime(62, rng)
        assert p.bit_length() == 62 and sympy.isprime(p)


# -- congruences ---------------------------------------------------------------

@pytest.mark.parametrize("x, y, a, out", [
    ((0, 1), (0, 1), (1, 1), (1, 0)),
    ((1, 0), (0, 1), (1, 1), (-1, -1)),
    ((1, 0), (0, 1), (1, 0), None),
])
def test_unsigned_congruence_examples(x, y, a, out):
    assert unsigned_congruence(x, y, a) == out


def _brute_congruence(x, y, a):
    sols = []
    for s in (1, -1):
        d = [s * yi - xi for xi, yi in zip(x, y)]
        j = next(i for i, v in enumerate(a) if v)
        c = Fraction(d[j], a[j])
        if c.denominator == 1 and all(di == c * ai for di, ai in zip(d, a)):
            sols.append((s, int(c)))
    return sols


@given(nonzero, nonzero, nonzero)
def test_unsigned_congruence_against_brute_force(x, y, a):
    x, y, a = (canonicalize(v).rep for v in (x, y, a))
    sols = _brute_congruence(x, y, a)
    got = unsigned_congruence(x, y, a)
    if not sols:
        assert got is None
    else:
        assert got in sols
        if not proportional(x, a) and not proportional(y, a) and not proportional(x, y):
            assert len(sols) == 1


@given(nonzero, nonzero)
def test_self_congruence_is_trivial(x, a):
    assume(not proportional(x, a))
    assert unsigned_congruence(x, x, a) == (1, 0)


@given(nonzero, nonzero, nonzero)
def test_congruence_symmetric_under_negating_a(x, y, a):
    x, y = canonicalize(x).rep, canonicalize(y).rep
    assume(not proportional(x, a) and not proportional(y, a))
    na = tuple(-v for v in a)
    r1, r2 = unsigned_congruence(x, y, a), unsigned_congruence(x, y, na)
    assert (r1 is None) == (r2 is None)
    if r1 is not None:
        assert r1 == (r2[0], -r2[1])


# -- kernels and divisibility --------------------------------------------------

@given(vectors(4, -9, 9).filter(any))
def test_kernel_basis_is_a_saturated_basis(a):
    basis = kernel_basis(a)
    assert len(basis) == 3
    for b in basis:
        assert sum(x * y for x, y in zip(a, b)) == 0
    M = sympy.Matrix([list(b) for b in basis])
    assert M.rank() == 3
    # saturated: gcd of the maximal minors is 1
    minors = [M[:, [i for i in range(4) if i != j]].det() for j in range(4)]
    assert sympy.gcd_list(minors) == 1


def _poly(expr, xs):
    p = sympy.Poly(expr, *xs)
    return {tuple(m): int(c) for m, c in zip(p.monoms(), p.coeffs())}


X = sympy.symbols("x0:3")


def test_divides_linear_examples():
    x0, x1 = sympy.symbols("x0 x1")
    assert divides_linear((1, -1), _poly(x0**2 - x1**2, (x0, x1)))
    assert not divides_linear((1, -1), _poly(x0**2 + x1**2, (x0, x1)))
    assert divides_linear((1, 0), {})
    assert divides_linear((1, 0), {(2, 0): 0})


def _random_poly(rng, d, xs):
    mons = list(sympy.itermonomials(xs, d, d))
    return sum(rng.randint(-3, 3) * m for m in mons)


@given(nonzero, st.integers(0, 3), st.randoms())
def test_divides_linear_matches_sympy_remainder(a, d, rnd):
    form = sum(c * x for c, x in zip(a, X))
    p = _random_poly(rnd, d, X)
    if rnd.random() < 0.5:
        p = sympy.expand(p * form)
    expected = sympy.rem(sympy.Poly(p, *X), sympy.Poly(form, *X)).is_zero if p != 0 else True
    poly = _poly(p, X) if p != 0 else {}
    assert divides_linear(a, poly) == expected


@given(nonzero, st.randoms())
def test_divisibility_is_an_ideal(a, rnd):
    form = sum(c * x for c, x in zip(a, X))
    p = _poly(sympy.expand(form * _random_poly(rnd, 1, X)) or X[0] * form, X)
    q = _poly(_random_poly(rnd, 2, X) + X[1] ** 2, X)
    assert divides_linear(a, p)
    assert divides_linear(a, poly_mul(p, q))
    assert divides_linear(tuple(-x for x in a), p)


def test_divides_linear_rank_one():
    assert divides_linear((2,), {(3,): 5})
    assert not divides_linear((2,), {(0,): 5})
