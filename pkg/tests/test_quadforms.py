import numpy as np
import pytest

from thetalab.fields import PrimeField, QQ, FieldError
from thetalab import linalg, quadforms
from thetalab.quadforms import QuadraticForm, hyperbolic_split, standard_hyperbolic_gram

F1 = PrimeField(10007)
F2 = PrimeField(65521)


def test_polarization_identity():
    G = np.array([[1, 2, 0], [2, 5, 1], [0, 1, 4]], dtype=np.int64)
    Q = QuadraticForm(G, F1)
    v = np.array([1, 2, 3], dtype=np.int64)
    u = np.array([4, 0, 1], dtype=np.int64)
    assert Q.polarized(v, v) == Q.value(v)
    assert Q.polarized(u, v) == Q.polarized(v, u)


def test_rank_and_sing():
    G = np.zeros((4, 4), dtype=np.int64)
    G[0, 1] = G[1, 0] = 1
    Q = QuadraticForm(G, F1)
    assert Q.rank == 2
    sing = Q.sing_basis()
    assert len(sing) == 2
    for v in sing:
        assert Q.in_singular_locus(v)


def test_gram_from_mpoly_roundtrip():
    G = np.array([[0, 3], [3, 7]], dtype=np.int64)
    Q = QuadraticForm(G, F1)
    Q2 = quadforms.gram_from_mpoly(Q.to_mpoly(), 2, F1)
    assert np.array_equal(Q.gram, Q2.gram)


def test_hyperbolic_split_fixed_point():
    H = standard_hyperbolic_gram(F1)
    Q = QuadraticForm(H, F1)
    B = hyperbolic_split(Q, seed=1)
    assert np.array_equal((B.T @ H @ B) % F1.p, H)


def test_hyperbolic_split_diagonal():
    # post-hoc congruence verification; the diagonal form is split over
    # 65521 (p = 1 mod 4) but needs a -1 entry over 10007 (p = 3 mod 4)
    for F, diag in ((F2, [1, 1, 1, 1, 1, 1]), (F1, [1, 1, 1, 1, 1, F1.p - 1])):
        G = np.diag(np.array(diag, dtype=np.int64))
        Q = QuadraticForm(G, F)
        B = hyperbolic_split(Q, seed=2)
        assert np.array_equal((B.T @ G @ B) % F.p, standard_hyperbolic_gram(F))
        assert linalg.rank(B, F) == 6


def test_hyperbolic_split_rejects_nonsplit_class():
    G = np.eye(6, dtype=np.int64)
    assert not quadforms.is_split_dim6(QuadraticForm(G, F1))
    with pytest.raises(ValueError, match="discriminant"):
        hyperbolic_split(QuadraticForm(G, F1), seed=0)


def test_hyperbolic_split_rejects_degenerate():
    G = np.zeros((6, 6), dtype=np.int64)
    G[0, 0] = 1
    with pytest.raises(ValueError):
        hyperbolic_split(QuadraticForm(G, F1), seed=0)


def test_hyperbolic_split_rejects_char0():
    G = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
    with pytest.raises(FieldError):
        hyperbolic_split(QuadraticForm(G, QQ), seed=0)


def test_hyperbolic_split_deterministic():
    G = np.diag([1, 2, 3, 4, 5, 6]).astype(np.int64)
    Q = QuadraticForm(G, F1)
    B1 = hyperbolic_split(Q, seed=9)
    B2 = hyperbolic_split(Q, seed=9)
    assert np.array_equal(B1, B2)


def test_plucker_dictionary():
    # a decomposable vector from a plane, its skew matrix, and the star dual
    v = np.array([1, 2, 3, 4], dtype=np.int64)
    u = np.array([0, 1, 5, 2], dtype=np.int64)
    w = quadforms.plucker_from_plane(v, u, F1)
    assert quadforms.plucker_value(w, F1) == 0
    plane = quadforms.plane_from_plucker(w, F1)
    M = np.vstack([plane, [v, u]])
    assert linalg.rank(M, F1) == 2
    # the star dual is the annihilator plane
    dual = quadforms.plane_from_plucker(quadforms.hodge_star(w, F1), F1)
    for a in dual:
        assert int(np.dot(a, v) % F1.p) == 0
        assert int(np.dot(a, u) % F1.p) == 0


def test_plucker_quadric_is_standard_split_form():
    H = standard_hyperbolic_gram(F1)
    Q = QuadraticForm(H, F1)
    rng = np.random.default_rng(0)
    for _ in range(10):
        v = rng.integers(0, F1.p, 4).astype(np.int64)
        u = rng.integers(0, F1.p, 4).astype(np.int64)
        w = quadforms.plucker_from_plane(v, u, F1)
        assert Q.value(w) == 0
