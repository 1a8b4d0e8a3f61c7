import numpy as np
import pytest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from thetalab.fields import PrimeField, QQ, FieldError
from thetalab import linalg

F7_LIKE = PrimeField(1009)
F1 = PrimeField(10007)
F2 = PrimeField(65521)


def test_zero_matrix_kernel():
    A = np.zeros((3, 5), dtype=np.int64)
    rank, ker = linalg.exact_kernel(A, F1)
    assert rank == 0
    assert len(ker) == 5


def test_identity_kernel():
    rank, ker = linalg.exact_kernel(np.eye(4, dtype=np.int64), F1)
    assert rank == 4
    assert ker == []


def test_small_prime_field_rejected():
    with pytest.raises(FieldError):
        PrimeField(7)
    with pytest.raises(FieldError):
        PrimeField(1008)


def test_one_by_three_kernel_brute_force():
    # oracle: substitute every kernel vector back into the map
    F = PrimeField(1009)
    A = np.array([[1, 2, 3]], dtype=np.int64)
    rank, ker = linalg.exact_kernel(A, F)
    assert rank == 1 and len(ker) == 2
    for v in ker:
        assert ((A @ v) % F.p == 0).all()


def test_kernel_rank_plus_nullity():
    rng = np.random.default_rng(3)
    for _ in range(20):
        A = rng.integers(0, F1.p, size=(rng.integers(1, 8), rng.integers(1, 8)))
        rank, ker = linalg.exact_kernel(A.astype(np.int64), F1)
        assert rank + len(ker) == A.shape[1]
        for v in ker:
            assert not ((A @ v) % F1.p).any()


def test_rational_kernel_exact():
    A = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3), Fraction(1)]]
    rank, ker = linalg.exact_kernel(A, QQ)
    assert rank == 2 and ker == []
    B = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    rank, ker = linalg.exact_kernel(B, QQ)
    assert rank == 1 and len(ker) == 1
    v = ker[0]
    assert v[0] + 2 * v[1] == 0


def test_mixed_field_rejected():
    with pytest.raises(FieldError):
        linalg.as_matrix([[0.5, 1.0]], F1)


def test_solve_and_inverse():
    A = np.array([[2, 1], [1, 1]], dtype=np.int64)
    b = np.array([5, 3], dtype=np.int64)
    x = linalg.solve(A, b, F1)
    assert ((A @ x - b) % F1.p == 0).all()
    Ainv = linalg.inverse(A, F1)
    assert np.array_equal((A @ Ainv) % F1.p, np.eye(2, dtype=np.int64))
    assert linalg.solve(np.array([[1, 1], [1, 1]], dtype=np.int64),
                        np.array([0, 1], dtype=np.int64), F1) is None


def test_echelon_determinism():
    rng = np.random.default_rng(11)
    A = rng.integers(0, F2.p, size=(12, 17)).astype(np.int64)
    r1, k1 = linalg.exact_kernel(A, F2)
    r2, k2 = linalg.exact_kernel(A.copy(), F2)
    assert r1 == r2
    assert all(np.array_equal(a, b) for a, b in zip(k1, k2))


def test_intersect_row_spaces():
    A = np.array([[1, 0, 0], [0, 1, 0]], dtype=np.int64)
    B = np.array([[0, 1, 0], [0, 0, 1]], dtype=np.int64)
    inter = linalg.intersect_row_spaces(A, B, F1)
    assert len(inter) == 1
    assert linalg.scalar_multiple_of(inter[0], np.array([0, 1, 0]), F1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10006), st.integers(1, 10006))
def test_field_inverse_property(a, b):
    # a/b * b == a in F_p
    q = F1.div(a, b)
    assert F1.mul(q, b) == a % F1.p


def test_sqrt_mod():
    F = PrimeField(10007)
    for a in [1, 4, 9, 1234, 9999]:
        s = F.sqrt(a * a % F.p)
        assert s is not None and s * s % F.p == a * a % F.p
    # 65521 = 1 mod 16 exercises the full Tonelli-Shanks loop
    F = PrimeField(65521)
    count = 0
    for a in range(2, 200):
        s = F.sqrt(a)
        if s is not None:
            assert s * s % F.p == a % F.p
            count += 1
    assert count > 50
