"""Multivariate homogeneous polynomial arithmetic and univariate mod-p tools.

Two carriers are used throughout:

* trivariate homogeneous forms (the plane-model side) as dense coefficient
  vectors over the graded-lex monomial basis of their degree,
* sparse exponent-dict polynomials in g variables (the canonical-space side).

The graded-lex order is fixed globally: within one degree, exponent triples
(i, j, k) for x^i y^j z^k are listed in descending lexicographic order, so
x^n comes first and z^n last.  All bases and echelon forms downstream inherit
this order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np


# ---------------------------------------------------------------------------
# monomial bookkeeping


@lru_cache(maxsize=None)
def monomials3(n: int):
    """Exponent triples of degree n in descending lex order."""
    out = []
    for i in range(n, -1, -1):
        for j in range(n - i, -1, -1):
            out.append((i, j, n - i - j))
    return tuple(out)


@lru_cache(maxsize=None)
def mono_index3(n: int):
    return {m: t for t, m in enumerate(monomials3(n))}


def dim_forms3(n: int) -> int:
    return (n + 1) * (n + 2) // 2


@lru_cache(maxsize=None)
def monomials_g(g: int, n: int):
    """Exponent tuples of degree n in g variables, descending lex."""
    out = []
    for combo in combinations_with_replacement(range(g), n):
        e = [0] * g
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def mono_index_g(g: int, n: int):
    return {m: t for t, m in enumerate(monomials_g(g, n))}


# ---------------------------------------------------------------------------
# trivariate dense forms


def form_vec(coeffs: dict, n: int, field):
    """Coefficient dict {(i,j,k): c} -> dense vector over monomials3(n)."""
    idx = mono_index3(n)
    if field.characteristic:
        v = np.zeros(len(idx), dtype=np.int64)
        for m, c in coeffs.items():
            v[idx[m]] = field.normalize(c)
        return v
    v = [Fraction(0)] * len(idx)
    for m, c in coeffs.items():
        v[idx[m]] = Fraction(c)
    return v


def vec_form(vec, n: int, field) -> dict:
    mons = monomials3(n)
    return {m: vec[t] for t, m in enumerate(mons) if not field.is_zero(vec[t])}


def form_mul(u, nu: int, v, nv: int, field):
    """Product of two dense forms, returned as a dense form of degree nu+nv."""
    du = vec_form(u, nu, field)
    dv = vec_form(v, nv, field)
    out = {}
    for mu, cu in du.items():
        for mv, cv in dv.items():
            m = (mu[0] + mv[0], mu[1] + mv[1], mu[2] + mv[2])
            c = field.mul(cu, cv)
            out[m] = field.add(out.get(m, field.zero), c)
    return form_vec(out, nu + nv, field)


def form_scale(u, c, field):
    if field.characteristic:
        return (np.asarray(u, dtype=np.int64) * field.normalize(c)) % field.p
    return [Fraction(c) * x for x in u]


def eval_form(vec, n: int, pt, field):
    total = field.zero
    x, y, z = (field.normalize(c) for c in pt)
    for t, (i, j, k) in enumerate(monomials3(n)):
        c = vec[t]
        if field.is_zero(c):
            continue
        term = field.mul(c, field.mul(_pow(field, x, i), field.mul(_pow(field, y, j), _pow(field, z, k))))
        total = field.add(total, term)
    return total


def _pow(field, x, e):
    if field.characteristic:
        return pow(int(x), e, field.p)
    return Fraction(x) ** e


def monomial_values_many(n: int, pts: np.ndarray, p: int) -> np.ndarray:
    """(npts, nmonomials) table of monomial values mod p for an array of points."""
    pts = np.asarray(pts, dtype=np.int64) % p
    npts = pts.shape[0]
    powtab = []
    for c in range(3):
        tab = np.ones((n + 1, npts), dtype=np.int64)
        for e in range(1, n + 1):
            tab[e] = (tab[e - 1] * pts[:, c]) % p
        powtab.append(tab)
    mons = monomials3(n)
    out = np.empty((npts, len(mons)), dtype=np.int64)
    for t, (i, j, k) in enumerate(mons):
        out[:, t] = (powtab[0][i] * powtab[1][j]) % p * powtab[2][k] % p
    return out


def eval_form_many(vec, n: int, pts: np.ndarray, p: int) -> np.ndarray:
    table = monomial_values_many(n, pts, p)
    return (table @ (np.asarray(vec, dtype=np.int64) % p)) % p


def derivative_row(n: int, pt, order, field):
    """Row of the functional h -> (d^a_x d^b_y d^c_z h)(pt) on degree-n forms."""
    a, b, c = order
    x, y, z = (field.normalize(t) for t in pt)
    row = []
    for (i, j, k) in monomials3(n):
        if i < a or j < b or k < c:
            row.append(field.zero)
            continue
        coef = _falling(i, a) * _falling(j, b) * _falling(k, c)
        val = field.mul(field.normalize(coef),
                        field.mul(_pow(field, x, i - a),
                                  field.mul(_pow(field, y, j - b), _pow(field, z, k - c))))
        row.append(val)
    if field.characteristic:
        return np.array(row, dtype=np.int64)
    return row


def _falling(n, k):
    out = 1
    for t in range(k):
        out *= n - t
    return out


def multiplicity_rows(n: int, pt, mult: int, field):
    """Conditions for a degree-n form to vanish to order >= mult at pt."""
    rows = []
    for total in range(mult):
        for a in range(total, -1, -1):
            for b in range(total - a, -1, -1):
                rows.append(derivative_row(n, pt, (a, b, total - a - b), field))
    return rows


def form_derivative(vec, n: int, var: int, field):
    """d/d(var) of a degree-n form, as a degree n-1 form."""
    idx = mono_index3(n - 1)
    if field.characteristic:
        out = np.zeros(len(idx), dtype=np.int64)
    else:
        out = [Fraction(0)] * len(idx)
    for t, m in enumerate(monomials3(n)):
        e = m[var]
        if e == 0 or field.is_zero(vec[t]):
            continue
        m2 = list(m)
        m2[var] -= 1
        val = field.mul(vec[t], field.normalize(e))
        j = idx[tuple(m2)]
        out[j] = field.add(out[j], val)
    return out


def line_restriction_matrix(n: int, U, V, field):
    """Matrix R with R[l, t] = coefficient of s^l in monomial_t(U + s V).

    Restriction of a degree-n form h (dense vector) to the parametrized line
    is then R @ h, a univariate polynomial of degree <= n in s.
    """
    lin = []
    for c in range(3):
        lin.append([field.normalize(U[c]), field.normalize(V[c])])
    powtab = []
    for c in range(3):
        tab = [[field.one]]
        for e in range(1, n + 1):
            prev = tab[-1]
            cur = [field.zero] * (e + 1)
            for d, coef in enumerate(prev):
                cur[d] = field.add(cur[d], field.mul(coef, lin[c][0]))
                cur[d + 1] = field.add(cur[d + 1], field.mul(coef, lin[c][1]))
            tab.append(cur)
        powtab.append(tab)
    mons = monomials3(n)
    if field.characteristic:
        R = np.zeros((n + 1, len(mons)), dtype=np.int64)
    else:
        R = [[Fraction(0)] * len(mons) for _ in range(n + 1)]
    for t, (i, j, k) in enumerate(mons):
        poly = _upoly_mul_generic(_upoly_mul_generic(powtab[0][i], powtab[1][j], field), powtab[2][k], field)
        for l, coef in enumerate(poly):
            if field.characteristic:
                R[l, t] = coef
            else:
                R[l][t] = coef
    return R


def _upoly_mul_generic(a, b, field):
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return out


# ---------------------------------------------------------------------------
# sparse g-variable polynomials (exponent-dict carrier)


def mpoly_mul(d1: dict, d2: dict, field) -> dict:
    out = {}
    for m1, c1 in d1.items():
        for m2, c2 in d2.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            c = field.mul(c1, c2)
            if m in out:
                out[m] = field.add(out[m], c)
            else:
                out[m] = c
    return {m: c for m, c in out.items() if not field.is_zero(c)}


def mpoly_add(d1: dict, d2: dict, field) -> dict:
    out = dict(d1)
    for m, c in d2.items():
        out[m] = field.add(out.get(m, field.zero), c)
    return {m: c for m, c in out.items() if not field.is_zero(c)}


def mpoly_scale(d: dict, c, field) -> dict:
    if field.is_zero(c):
        return {}
    return {m: field.mul(v, c) for m, v in d.items()}


def mpoly_to_vec(d: dict, g: int, n: int, field):
    idx = mono_index_g(g, n)
    if field.characteristic:
        v = np.zeros(len(idx), dtype=np.int64)
    else:
        v = [Fraction(0)] * len(idx)
    for m, c in d.items():
        v[idx[m]] = c
    return v


def mpoly_eval(d: dict, pt, field):
    total = field.zero
    pt = [field.normalize(c) for c in pt]
    for m, c in d.items():
        term = c
        for var, e in enumerate(m):
            if e:
                term = field.mul(term, _pow(field, pt[var], e))
        total = field.add(total, term)
    return total


def mpoly_derivative_row_g(g: int, n: int, pt, alpha, field):
    """Row of h -> (d^alpha h)(pt) on the degree-n monomial basis in g vars."""
    pt = [field.normalize(c) for c in pt]
    row = []
    for m in monomials_g(g, n):
        coef = 1
        ok = True
        for e, a in zip(m, alpha):
            if e < a:
                ok = False
                break
            coef *= _falling(e, a)
        if not ok:
            row.append(field.zero)
            continue
        val = field.normalize(coef)
        for var, (e, a) in enumerate(zip(m, alpha)):
            if e - a:
                val = field.mul(val, _pow(field, pt[var], e - a))
        row.append(val)
    if field.characteristic:
        return np.array(row, dtype=np.int64)
    return row


def derivative_multi_indices(g: int, order: int):
    """All derivative multi-indices of total order exactly `order`, lex order."""
    return [tuple(m) for m in monomials_g(g, order)]


# ---------------------------------------------------------------------------
# univariate polynomials mod p (numpy int64, index = degree)


def upoly_trim(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    nz = np.nonzero(a)[0]
    if nz.size == 0:
        return np.zeros(1, dtype=np.int64)
    return a[: nz[-1] + 1].copy()


def upoly_deg(a) -> int:
    a = upoly_trim(a)
    return -1 if (len(a) == 1 and a[0] == 0) else len(a) - 1


def upoly_mul(a, b, p):
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, x in enumerate(a):
        if x:
            out[i:i + len(b)] = (out[i:i + len(b)] + x * b) % p
    return out


def upoly_divmod(a, b, p):
    a = upoly_trim(np.asarray(a, dtype=np.int64) % p)
    b = upoly_trim(np.asarray(b, dtype=np.int64) % p)
    db = upoly_deg(b)
    if db < 0:
        raise ZeroDivisionError("division by zero polynomial")
    da = upoly_deg(a)
    if da < db:
        return np.zeros(1, dtype=np.int64), a
    inv = pow(int(b[db]), p - 2, p)
    q = np.zeros(da - db + 1, dtype=np.int64)
    r = a.copy()
    for k in range(da - db, -1, -1):
        c = r[db + k] * inv % p
        q[k] = c
        if c:
            r[k:db + k + 1] = (r[k:db + k + 1] - c * b) % p
    return q, upoly_trim(r)


def upoly_mod(a, b, p):
    return upoly_divmod(a, b, p)[1]


def upoly_gcd(a, b, p):
    a = upoly_trim(a)
    b = upoly_trim(b)
    while upoly_deg(b) >= 0:
        a, b = b, upoly_mod(a, b, p)
    if upoly_deg(a) >= 0:
        a = a * pow(int(a[upoly_deg(a)]), p - 2, p) % p
    return a


def upoly_derivative(a, p):
    a = np.asarray(a, dtype=np.int64)
    if len(a) <= 1:
        return np.zeros(1, dtype=np.int64)
    return (a[1:] * (np.arange(1, len(a)) % p)) % p


def upoly_is_squarefree(a, p) -> bool:
    return upoly_deg(upoly_gcd(a, upoly_derivative(a, p), p)) == 0


def upoly_pow_xq_mod(u, q, p):
    """x^q mod u(x), computed by square and multiply."""
    u = upoly_trim(u)
    result = np.array([1], dtype=np.int64)
    base = upoly_mod(np.array([0, 1], dtype=np.int64), u, p)
    e = q
    while e:
        if e & 1:
            result = upoly_mod(upoly_mul(result, base, p), u, p)
        base = upoly_mod(upoly_mul(base, base, p), u, p)
        e >>= 1
    return result


def upoly_count_roots(u, p) -> int:
    """Number of distinct roots of u in F_p, via gcd(x^p - x, u)."""
    u = upoly_trim(u)
    if upoly_deg(u) <= 0:
        return 0
    xp = upoly_pow_xq_mod(u, p, p)
    xp_minus_x = xp.copy()
    if len(xp_minus_x) < 2:
        xp_minus_x = np.concatenate([xp_minus_x, np.zeros(2 - len(xp_minus_x), dtype=np.int64)])
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    return max(upoly_deg(upoly_gcd(u, xp_minus_x, p)), 0)


def upoly_roots(u, p):
    """All roots in F_p with multiplicity 1 reporting (distinct roots, sorted)."""
    u = upoly_trim(u)
    d = upoly_deg(u)
    if d <= 0:
        return []
    ts = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in u[::-1]:
        vals = (vals * ts + int(c)) % p
    return [int(t) for t in np.nonzero(vals == 0)[0]]


def upoly_is_irreducible(u, p) -> bool:
    """Rabin's test."""
    u = upoly_trim(u)
    n = upoly_deg(u)
    if n <= 0:
        return False
    if n == 1:
        return True
    primes = set()
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            primes.add(d)
            m //= d
        d += 1
    if m > 1:
        primes.add(m)
    x = np.array([0, 1], dtype=np.int64)
    for ell in sorted(primes):
        h = upoly_pow_xq_mod(u, p ** (n // ell), p)
        diff = _upoly_sub(h, x, p)
        if upoly_deg(upoly_gcd(u, diff, p)) != 0:
            return False
    h = upoly_pow_xq_mod(u, p ** n, p)
    return upoly_deg(_upoly_sub(h, x, p)) < 0


def _upoly_sub(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] = a
    out[: len(b)] = (out[: len(b)] - b) % p
    return upoly_trim(out % p)


def upoly_eval(a, t, p) -> int:
    out = 0
    for c in np.asarray(a, dtype=np.int64)[::-1]:
        out = (out * t + int(c)) % p
    return out


# ---------------------------------------------------------------------------
# truncated power series (lists of field scalars, index = exponent)


def series_trunc(a, N, field):
    a = list(a[: N + 1])
    a += [field.zero] * (N + 1 - len(a))
    return a


def series_add(a, b, N, field):
    a = series_trunc(a, N, field)
    b = series_trunc(b, N, field)
    return [field.add(x, y) for x, y in zip(a, b)]


def series_mul(a, b, N, field):
    out = [field.zero] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b[: N + 1 - i]):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return out


def series_pow(a, e, N, field):
    out = [field.one] + [field.zero] * N
    base = series_trunc(a, N, field)
    while e:
        if e & 1:
            out = series_mul(out, base, N, field)
        base = series_mul(base, base, N, field)
        e >>= 1
    return out
