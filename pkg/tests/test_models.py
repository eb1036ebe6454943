import random
from collections import Counter
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgkm.graph import check_gkm_level, enumerate_faces, find_connection, validate_graph
from qgkm.lattice import canonicalize
from qgkm.models import (
    DegenerateParams,
    Gr2Params,
    HpnParams,
    generate,
    generate_gr2,
    generate_hpn,
    hirzebruch_quadrangle,
    hp1_biangle,
    noncomplex_triangle,
    random_params,
    standard_params,
)
from qgkm.quaternionic import FaceKind, classify_face, verify_structure

import oracles


def labels_between(g, u, v):
    return sorted(canonicalize(e.label).rep for e in g.edges_between(u, v))


def unsigned(*ws):
    return sorted(canonicalize(w).rep for w in ws)


def lin(*terms):
    """Integer combination of vectors: lin((1, a), (-2, b)) = a - 2b."""
    m = len(terms[0][1])
    return tuple(sum(c * v[i] for c, v in terms) for i in range(m))


# -- standard parameters -------------------------------------------------------------

def test_standard_params_values():
    p = standard_params("hpn", 1)
    assert p.lam == (2, 0) and p.alpha == ((1, -1),)
    p = standard_params("gr2", 3)
    assert p.lam == (1, -1, 0) and p.alpha == ((0, -1, 1),)
    p = standard_params("gr2", 4)
    assert p.lam == (1, -1, 0, 0) and p.alpha == ((0, -1, 1, 0), (0, -1, 0, 1))
    p = standard_params("hpn", 2)
    assert p.lam == (2, 0, 0) and p.alpha == ((1, -1, 0), (1, 0, -1))
    with pytest.raises(ValueError):
        standard_params("cp", 2)


def test_params_shape_checked():
    with pytest.raises(ValueError):
        HpnParams(0, (2, 0), ())
    with pytest.raises(ValueError):
        HpnParams(2, (2, 0, 0), ((1, -1, 0),))
    with pytest.raises(ValueError):
        Gr2Params(2, (1, 0), ())


# -- hpn ---------------------------------------------------------------------------

def test_hp1_biangle():
    g, q = hp1_biangle()
    assert list(g.vertices) == ["v0", "v1"]
    assert labels_between(g, "v0", "v1") == [(1, -1), (1, 1)]
    assert q.weights == {"v0": (2, 0), "v1": (0, 2)}


def test_hp2_figure():
    p = standard_params("hpn", 2)
    g, q = generate(p)
    lam, (a1, a2) = p.lam, p.alpha
    assert labels_between(g, "v0", "v1") == unsigned(a1, lin((1, lam), (-1, a1)))
    assert labels_between(g, "v0", "v2") == unsigned(a2, lin((1, lam), (-1, a2)))
    assert labels_between(g, "v1", "v2") == unsigned(lin((1, a1), (-1, a2)), lin((1, lam), (-1, a1), (-1, a2)))
    assert q.weights == {
        "v0": canonicalize(lam).rep,
        "v1": canonicalize(lin((1, lam), (-2, a1))).rep,
        "v2": canonicalize(lin((1, lam), (-2, a2))).rep,
    }
    # explicit coordinates
    assert labels_between(g, "v1", "v2") == [(0, 1, -1), (0, 1, 1)]
    assert q.weights == {"v0": (2, 0, 0), "v1": (0, 2, 0), "v2": (0, 0, 2)}
    for v in g.vertices:
        for a, b in q.pair_list(v):
            assert a.target == b.target


def test_hpn_degenerate():
    with pytest.raises(DegenerateParams) as info:
        generate_hpn(HpnParams(2, (2, 0, 0), ((1, -1, 0), (1, -1, 0))))
    assert info.value.vertex == "v0"
    assert len(info.value.edges) == 2


# -- gr2 ---------------------------------------------------------------------------

def test_gr2_3_is_the_noncomplex_triangle():
    p = standard_params("gr2", 3)
    g, q = generate(p)
    t, tq = noncomplex_triangle(p.lam, p.alpha[0])
    assert oracles.isomorphic_labelled(g, q, t, tq)
    con = find_connection(g)
    [face] = enumerate_faces(g, con)
    assert classify_face(face, g, q, con).kind is FaceKind.NONCOMPLEX_TRIANGLE


def test_gr2_4_octahedron():
    p = standard_params("gr2", 4)
    g, q = generate(p)
    lam, (a, b) = p.lam, p.alpha
    assert len(g.vertices) == 6 and validate_graph(g).valence == 4
    assert not g.edges_between("v12", "v34")
    assert not g.edges_between("v13", "v24") and not g.edges_between("v14", "v23")
    all_labels = {canonicalize(e.label).rep for e in g.edges}
    assert all_labels == set(unsigned(a, b, lam, lin((1, a), (-1, b)), lin((1, lam), (-1, a)), lin((1, lam), (-1, b))))
    expected_weights = {
        "v12": lam, "v13": lin((1, lam), (-1, a)), "v14": lin((1, lam), (-1, b)),
        "v23": a, "v24": b, "v34": lin((1, a), (-1, b)),
    }
    assert q.weights == {v: canonicalize(w).rep for v, w in expected_weights.items()}
    assert labels_between(g, "v12", "v13") == unsigned(a)
    assert labels_between(g, "v13", "v23") == unsigned(lam)
    assert labels_between(g, "v13", "v14") == unsigned(lin((1, a), (-1, b)))
    assert labels_between(g, "v13", "v34") == unsigned(lin((1, lam), (-1, b)))


def test_gr2_pairs_at_v12():
    g, q = generate(standard_params("gr2", 5))
    pairs = {frozenset((a.target, b.target)) for a, b in q.pair_list("v12")}
    assert pairs == {frozenset((f"v1{k}", f"v2{k}")) for k in (3, 4, 5)}


def test_gr2_degenerate():
    with pytest.raises(DegenerateParams) as info:
        generate_gr2(Gr2Params(4, (1, -1, 0, 0), ((0, -1, 1, 0), (0, -1, 1, 0))))
    assert info.value.vertex == "v12"


def test_gr2_long_names():
    g, _ = generate(standard_params("gr2", 10))
    assert "v1_2" in g.vertices and "v9_10" in g.vertices


def test_zero_weight_is_degenerate():
    # lambda = 2 alpha_1 kills the weight at v1 but keeps the labels independent
    with pytest.raises(DegenerateParams):
        generate_hpn(HpnParams(1, (2, 2), ((1, 1),)))


# -- invariants ----------------------------------------------------------------------

MODEL_CASES = [("hpn", n) for n in range(1, 6)] + [("gr2", n) for n in range(3, 7)]


@pytest.mark.parametrize("kind, n", MODEL_CASES)
def test_standard_models_pass_all_checks(kind, n):
    g, q = generate(standard_params(kind, n))
    _check_model(kind, n, g, q)


@given(st.sampled_from(MODEL_CASES[:4] + MODEL_CASES[5:8]), st.integers(0, 10**9))
def test_random_models_pass_all_checks(kind_n, seed):
    kind, n = kind_n
    g, q = generate(random_params(kind, n, random.Random(seed)))
    _check_model(kind, n, g, q)


def _check_model(kind, n, g, q):
    rep = validate_graph(g)
    assert rep.ok
    assert check_gkm_level(g, 3).ok
    con = find_connection(g)
    assert verify_structure(g, q, con).ok
    kinds = Counter(classify_face(f, g, q, con).kind for f in enumerate_faces(g, con))
    if kind == "hpn":
        assert len(g.vertices) == n + 1 and rep.valence == 2 * n
        expected = Counter({FaceKind.QUATERNIONIC_BIANGLE: comb(n + 1, 2), FaceKind.COMPLEX_TRIANGLE: 4 * comb(n + 1, 3)})
        assert kinds == +expected
    else:
        assert len(g.vertices) == comb(n, 2) and rep.valence == 2 * n - 4
        assert set(kinds) <= {FaceKind.NONCOMPLEX_TRIANGLE, FaceKind.COMPLEX_TRIANGLE, FaceKind.COMPLEX_QUADRANGLE}
        exp = oracles.expected_gr2_faces(n)
        assert kinds[FaceKind.NONCOMPLEX_TRIANGLE] == exp["NoncomplexTriangle"]
        assert kinds[FaceKind.COMPLEX_TRIANGLE] == exp["ComplexTriangle"]
        assert kinds[FaceKind.COMPLEX_QUADRANGLE] == exp["ComplexQuadrangle"]
        for f in enumerate_faces(g, con):
            if f.length == 4:
                labels = [canonicalize(g.label(d)).rep for d in f.darts]
                assert labels[0] == labels[2] and labels[1] == labels[3]
        # no multi-edges
        assert len({frozenset((e.u, e.v)) for e in g.edges}) == len(g.edges)


def test_random_params_respect_rank():
    p = random_params("gr2", 4, random.Random(1), rank=3)
    assert len(p.lam) == 3


def test_hirzebruch_quadrangle_labels():
    g = hirzebruch_quadrangle((1, 0), (0, 1), 2)
    # stored canonically: -alpha - 2 beta becomes alpha + 2 beta
    assert [e.label for e in g.edges] == [(1, 0), (0, 1), (1, 2), (0, 1)]
    assert validate_graph(g).ok
