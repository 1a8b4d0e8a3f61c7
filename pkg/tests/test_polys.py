import numpy as np
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from thetalab.fields import PrimeField, QQ
from thetalab import polys

F = PrimeField(10007)


def random_form(rng, n, field):
    mons = polys.monomials3(n)
    return polys.form_vec({m: field.random_scalar(rng) for m in mons}, n, field)


def test_monomial_order_graded_lex():
    assert polys.monomials3(2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert polys.monomials_g(3, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 30))
def test_form_mul_commutes_and_distributes(seed):
    import random
    rng = random.Random(seed)
    a = random_form(rng, 2, F)
    b = random_form(rng, 3, F)
    c = random_form(rng, 3, F)
    ab = polys.form_mul(a, 2, b, 3, F)
    ba = polys.form_mul(b, 3, a, 2, F)
    assert np.array_equal(ab, ba)
    bc = (np.asarray(b) + np.asarray(c)) % F.p
    left = polys.form_mul(a, 2, bc, 3, F)
    right = (np.asarray(polys.form_mul(a, 2, b, 3, F)) + np.asarray(polys.form_mul(a, 2, c, 3, F))) % F.p
    assert np.array_equal(left, right)


def test_form_mul_associative():
    import random
    rng = random.Random(7)
    a = random_form(rng, 1, F)
    b = random_form(rng, 2, F)
    c = random_form(rng, 1, F)
    ab_c = polys.form_mul(polys.form_mul(a, 1, b, 2, F), 3, c, 1, F)
    a_bc = polys.form_mul(a, 1, polys.form_mul(b, 2, c, 1, F), 3, F)
    assert np.array_equal(ab_c, a_bc)


def test_degree_additivity():
    import random
    rng = random.Random(5)
    a = random_form(rng, 2, F)
    b = random_form(rng, 4, F)
    prod = polys.form_mul(a, 2, b, 4, F)
    assert len(prod) == polys.dim_forms3(6)


def test_eval_matches_mul():
    import random
    rng = random.Random(9)
    a = random_form(rng, 2, F)
    b = random_form(rng, 3, F)
    pt = (3, 5, 1)
    prod = polys.form_mul(a, 2, b, 3, F)
    assert polys.eval_form(prod, 5, pt, F) == F.mul(polys.eval_form(a, 2, pt, F),
                                                    polys.eval_form(b, 3, pt, F))


def test_eval_many_agrees_with_scalar():
    import random
    rng = random.Random(1)
    a = random_form(rng, 3, F)
    pts = np.array([[1, 2, 1], [4, 5, 1], [0, 0, 1]], dtype=np.int64)
    vals = polys.eval_form_many(a, 3, pts, F.p)
    for k in range(3):
        assert vals[k] == polys.eval_form(a, 3, tuple(pts[k]), F)


def test_line_restriction_matches_direct_eval():
    import random
    rng = random.Random(2)
    h = random_form(rng, 4, F)
    U, V = (1, 2, 1), (3, 1, 0)
    R = polys.line_restriction_matrix(4, U, V, F)
    restricted = (R @ h) % F.p
    for t in [0, 1, 2, 17]:
        pt = tuple((U[c] + t * V[c]) % F.p for c in range(3))
        assert polys.upoly_eval(restricted, t, F.p) == polys.eval_form(h, 4, pt, F)


def test_derivative_row_linear():
    import random
    rng = random.Random(3)
    h = random_form(rng, 3, F)
    row = polys.derivative_row(3, (2, 3, 1), (1, 0, 0), F)
    dh = polys.form_derivative(h, 3, 0, F)
    assert int(row @ h % F.p) == polys.eval_form(dh, 2, (2, 3, 1), F)


def test_upoly_divmod_gcd():
    p = 10007
    a = np.array([2, 0, 1], dtype=np.int64)          # x^2 + 2
    b = np.array([1, 1], dtype=np.int64)             # x + 1
    q, r = polys.upoly_divmod(a, b, p)
    back = (polys.upoly_mul(q, b, p))
    back[: len(r)] = (back[: len(r)] + r) % p
    assert np.array_equal(polys.upoly_trim(back), polys.upoly_trim(a))
    prod = polys.upoly_mul(b, b, p)
    g = polys.upoly_gcd(prod, polys.upoly_derivative(prod, p), p)
    assert polys.upoly_deg(g) == 1
    assert not polys.upoly_is_squarefree(prod, p)
    assert polys.upoly_is_squarefree(np.array([1, 1, 1], dtype=np.int64), p)


def test_upoly_roots_and_count():
    p = 10007
    # (x-3)(x-5)(x-3) has roots {3,5}
    u = polys.upoly_mul(polys.upoly_mul(np.array([-3, 1]), np.array([-5, 1]), p), np.array([-3, 1]), p)
    assert sorted(polys.upoly_roots(u, p)) == [3, 5]
    assert polys.upoly_count_roots(u, p) == 2


def test_upoly_irreducible():
    p = 10007
    assert polys.upoly_is_irreducible(np.array([5, 0, 1], dtype=np.int64), p) == (F.legendre(-5) == -1)
    assert polys.upoly_is_irreducible(np.array([1, 1], dtype=np.int64), p)
    # x^2 - 1 factors
    assert not polys.upoly_is_irreducible(np.array([p - 1, 0, 1], dtype=np.int64), p)


def test_mpoly_roundtrip_and_eval():
    d = {(2, 0, 0): 3, (1, 1, 0): 1}
    v = polys.mpoly_to_vec(d, 3, 2, F)
    assert polys.mpoly_eval(d, (2, 5, 0), F) == (3 * 4 + 10) % F.p
    back = {m: int(c) for m, c in zip(polys.monomials_g(3, 2), v) if c}
    assert back == d


def test_series_mul_pow():
    N = 5
    a = [1, 1]  # 1 + t
    sq = polys.series_pow(a, 2, N, F)
    assert sq[:3] == [1, 2, 1]
    prod = polys.series_mul(a, a, N, F)
    assert prod == sq
