"""Dense exact linear algebra over Q and F_p.

Matrices over F_p travel as numpy int64 arrays with entries in [0, p); over Q
as lists of lists of Fraction.  All routines use the same deterministic
Gauss–Jordan sweep (first nonzero pivot in fixed row order, columns left to
right), so echelon forms and kernel bases are reproducible bit for bit.

Products over F_p are safe in int64: entries < 2^17 and inner dimensions stay
far below the 2^63 overflow threshold; batched products chunk anyway.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .fields import PrimeField, QQ, FieldError


def as_matrix(rows, field):
    """Normalize input into the canonical matrix carrier for the field."""
    if field.characteristic:
        A = np.asarray(rows, dtype=object)
        if A.ndim != 2:
            A = A.reshape(len(rows), -1)
        out = np.empty(A.shape, dtype=np.int64)
        for i in range(A.shape[0]):
            for j in range(A.shape[1]):
                x = A[i, j]
                if isinstance(x, Fraction):
                    if x.denominator != 1:
                        x = field.normalize(x)
                    else:
                        x = x.numerator
                elif isinstance(x, float):
                    raise FieldError("float entry in exact matrix")
                out[i, j] = int(x) % field.p
        return out
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, float):
                raise FieldError("float entry in exact matrix")
            r.append(Fraction(x))
        out.append(r)
    return out


def zeros(n, m, field):
    if field.characteristic:
        return np.zeros((n, m), dtype=np.int64)
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n, field):
    if field.characteristic:
        return np.eye(n, dtype=np.int64)
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def matmul(A, B, field):
    if field.characteristic:
        A = np.asarray(A, dtype=np.int64) % field.p
        B = np.asarray(B, dtype=np.int64) % field.p
        return (A @ B) % field.p
    n, k = len(A), len(B)
    m = len(B[0]) if k else 0
    C = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Ci = C[i]
        for t in range(k):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            for j in range(m):
                Ci[j] += a * Bt[j]
    return C


def transpose(A, field):
    if field.characteristic:
        return np.asarray(A, dtype=np.int64).T.copy()
    return [list(col) for col in zip(*A)]


def _rref_mod(A, p):
    A = (np.array(A, dtype=np.int64, copy=True)) % p
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            A[mask] = (A[mask] - np.outer(col[mask], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def _rref_frac(rows):
    A = [[Fraction(x) for x in row] for row in rows]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rref(A, field):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    if field.characteristic:
        return _rref_mod(np.asarray(A, dtype=np.int64), field.p)
    return _rref_frac(A)


def rank(A, field) -> int:
    if field.characteristic:
        arr = np.asarray(A, dtype=np.int64)
        if arr.size == 0:
            return 0
        return len(_rref_mod(arr, field.p)[1])
    if not A or not A[0]:
        return 0
    return len(_rref_frac(A)[1])


def _ncols(A, field):
    if field.characteristic:
        return np.asarray(A).shape[1]
    return len(A[0]) if A else 0


def kernel_basis(A, field, ncols=None):
    """Basis of the right kernel, one vector per free column, reduced echelon
    convention: vector for free column f has entry 1 at f and -R[i][f] at the
    i-th pivot column."""
    if ncols is None:
        ncols = _ncols(A, field)
    if field.characteristic:
        arr = np.asarray(A, dtype=np.int64)
        if arr.size == 0:
            return [v for v in np.eye(ncols, dtype=np.int64)]
        R, pivots = _rref_mod(arr, field.p)
        p = field.p
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for f in free:
            v = np.zeros(ncols, dtype=np.int64)
            v[f] = 1
            for i, c in enumerate(pivots):
                v[c] = (-R[i, f]) % p
            basis.append(v)
        return basis
    if not A:
        return [[Fraction(1 if j == f else 0) for j in range(ncols)] for f in range(ncols)]
    R, pivots = _rref_frac(A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


def exact_kernel(A, field, ncols=None):
    """(rank, kernel basis) of a rectangular matrix; entries must lie in one field."""
    A = as_matrix(A, field) if not field.characteristic or not isinstance(A, np.ndarray) else A
    if ncols is None:
        ncols = _ncols(A, field)
    basis = kernel_basis(A, field, ncols)
    return ncols - len(basis), basis


def solve(A, b, field):
    """One exact solution of A x = b, or None if inconsistent."""
    if field.characteristic:
        A = np.asarray(A, dtype=np.int64) % field.p
        b = np.asarray(b, dtype=np.int64) % field.p
        aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
        R, pivots = _rref_mod(aug, field.p)
        n = A.shape[1]
        if n in pivots:
            return None
        x = np.zeros(n, dtype=np.int64)
        for i, c in enumerate(pivots):
            x[c] = R[i, n]
        return x
    n = len(A[0]) if A else 0
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    R, pivots = _rref_frac(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = R[i][n]
    return x


def inverse(A, field):
    n = len(A)
    if field.characteristic:
        A = np.asarray(A, dtype=np.int64) % field.p
        aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
        R, pivots = _rref_mod(aug, field.p)
        if pivots != list(range(n)):
            raise ZeroDivisionError("matrix not invertible")
        return R[:, n:].copy()
    aug = [list(map(Fraction, row)) + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(A)]
    R, pivots = _rref_frac(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix not invertible")
    return [row[n:] for row in R]


def row_space_echelon(A, field):
    """Echelon basis of the row space (nonzero rows of the RREF)."""
    R, pivots = rref(A, field)
    k = len(pivots)
    if field.characteristic:
        return R[:k].copy()
    return [R[i] for i in range(k)]


def in_row_space(A, v, field) -> bool:
    base = rank(A, field)
    if field.characteristic:
        stacked = np.vstack([np.asarray(A, dtype=np.int64), np.asarray(v, dtype=np.int64)])
    else:
        stacked = list(A) + [list(v)]
    return rank(stacked, field) == base


def intersect_row_spaces(A, B, field):
    """Echelon basis of (row space of A) ∩ (row space of B)."""
    ka, kb = len(A), len(B)
    if ka == 0 or kb == 0:
        return []
    if field.characteristic:
        M = np.vstack([np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)]).T
    else:
        M = transpose(list(A) + list(B), field)
    vecs = []
    for ker in kernel_basis(M, field):
        coeffs = ker[:ka]
        if field.characteristic:
            vecs.append((np.asarray(coeffs) @ np.asarray(A, dtype=np.int64)) % field.p)
        else:
            v = [Fraction(0)] * len(A[0])
            for c, row in zip(coeffs, A):
                if c:
                    v = [x + c * y for x, y in zip(v, row)]
            vecs.append(v)
    if not vecs:
        return []
    return row_space_echelon(vecs, field)


def scalar_multiple_of(u, v, field):
    """True if nonzero vectors u and v are proportional."""
    if field.characteristic:
        M = np.vstack([np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)])
    else:
        M = [list(u), list(v)]
    return rank(M, field) == 1
