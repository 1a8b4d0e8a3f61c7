"""Quadratic-form services: Gram arithmetic, ranks, singular loci, hyperbolic
splitting over prime fields, and the Gr(2,4) Plücker dictionary.

Conventions: a form Q on an n-dim space is stored by its symmetric Gram
matrix G with Q(v) = v^T G v, so the polarized form is Q~(u,v) = u^T G v and
Q~(v,v) = Q(v).  The standard split form x0x1 + x2x3 + x4x5 therefore has
Gram H with H[2i,2i+1] = H[2i+1,2i] = 1/2.

The Lambda^2(F^4) coordinates are ordered (p12, p34, p13, p42, p14, p23); in
this order the Plücker quadric of Gr(2,4) is exactly the standard split form.
"""

from __future__ import annotations

import random

import numpy as np

from . import linalg
from .fields import PrimeField, FieldError

PAIRS = ((0, 1), (2, 3), (0, 2), (3, 1), (0, 3), (1, 2))


class QuadraticForm:
    """Symmetric bilinear form with rank / singular-locus / polarization services."""

    def __init__(self, gram, field, label=None):
        self.field = field
        if field.characteristic:
            gram = np.asarray(gram, dtype=np.int64) % field.p
            if not np.array_equal(gram, gram.T):
                raise ValueError("Gram matrix not symmetric")
        else:
            gram = [[field.normalize(x) for x in row] for row in gram]
            for i in range(len(gram)):
                for j in range(i):
                    if gram[i][j] != gram[j][i]:
                        raise ValueError("Gram matrix not symmetric")
        self.gram = gram
        self.n = len(gram)
        self.label = label
        self._rank = None

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = linalg.rank(self.gram, self.field)
        return self._rank

    def value(self, v):
        return self.polarized(v, v)

    def polarized(self, u, v):
        f = self.field
        if f.characteristic:
            u = np.asarray(u, dtype=np.int64) % f.p
            v = np.asarray(v, dtype=np.int64) % f.p
            return int(u @ self.gram @ v % f.p)
        total = f.zero
        for i, ui in enumerate(u):
            if f.is_zero(ui):
                continue
            for j, vj in enumerate(v):
                total = f.add(total, f.mul(f.mul(ui, self.gram[i][j]), vj))
        return total

    def sing_basis(self):
        """Basis of the radical (kernel of the Gram matrix) = Sing Q projectively."""
        return linalg.kernel_basis(self.gram, self.field)

    def in_singular_locus(self, v) -> bool:
        f = self.field
        if f.characteristic:
            w = (self.gram @ (np.asarray(v, dtype=np.int64) % f.p)) % f.p
            return not w.any()
        for row in self.gram:
            s = f.zero
            for a, b in zip(row, v):
                s = f.add(s, f.mul(a, b))
            if not f.is_zero(s):
                return False
        return True

    def scaled(self, c):
        f = self.field
        if f.characteristic:
            return QuadraticForm((self.gram * f.normalize(c)) % f.p, f, self.label)
        return QuadraticForm([[f.mul(x, c) for x in row] for row in self.gram], f, self.label)

    def projectively_equal(self, other) -> bool:
        f = self.field
        if f.characteristic:
            a = self.gram.reshape(-1)
            b = other.gram.reshape(-1)
        else:
            a = [x for row in self.gram for x in row]
            b = [x for row in other.gram for x in row]
        return linalg.scalar_multiple_of(a, b, f)

    def to_mpoly(self) -> dict:
        """Exponent-dict polynomial Sum G_ij x_i x_j (degree 2 in n variables)."""
        f = self.field
        out = {}
        for i in range(self.n):
            for j in range(i, self.n):
                c = self.gram[i][j] if not f.characteristic else int(self.gram[i, j])
                if f.is_zero(c):
                    continue
                e = [0] * self.n
                e[i] += 1
                e[j] += 1
                coef = c if i == j else f.add(c, c)
                out[tuple(e)] = coef
        return out


def gram_from_mpoly(d: dict, n: int, field):
    half = field.inv(field.normalize(2))
    if field.characteristic:
        G = np.zeros((n, n), dtype=np.int64)
    else:
        G = [[field.zero] * n for _ in range(n)]
    for m, c in d.items():
        vars_ = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = vars_
        if i == j:
            val = c
        else:
            val = field.mul(c, half)
        if field.characteristic:
            G[i][j] = (G[i][j] + val) % field.p
            if i != j:
                G[j][i] = G[i][j]
        else:
            G[i][j] = field.add(G[i][j], val)
            if i != j:
                G[j][i] = G[i][j]
    return QuadraticForm(G, field)


def sym_outer(u, v, field):
    """Gram of the symmetrized product of two linear forms: (uv + vu)/2."""
    half = field.inv(field.normalize(2))
    if field.characteristic:
        u = np.asarray(u, dtype=np.int64) % field.p
        v = np.asarray(v, dtype=np.int64) % field.p
        return ((np.outer(u, v) + np.outer(v, u)) * half) % field.p
    n = len(u)
    return [[field.mul(half, field.add(field.mul(u[i], v[j]), field.mul(v[i], u[j])))
             for j in range(n)] for i in range(n)]


def standard_hyperbolic_gram(field, planes=3):
    n = 2 * planes
    half = field.inv(field.normalize(2))
    if field.characteristic:
        H = np.zeros((n, n), dtype=np.int64)
    else:
        H = [[field.zero] * n for _ in range(n)]
    for i in range(planes):
        a, b = 2 * i, 2 * i + 1
        H[a][b] = half
        H[b][a] = half
    if field.characteristic:
        return np.asarray(H, dtype=np.int64)
    return H


def _isotropic_vector(Q: QuadraticForm, rng):
    """Nonzero isotropic vector for a nondegenerate form over F_p (random 2-plane probing)."""
    f = Q.field
    p = f.p
    n = Q.n
    for _ in range(400):
        u = np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64)
        if not u.any():
            continue
        qu = Q.value(u)
        if qu == 0:
            return u
        w = np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64)
        if linalg.rank(np.vstack([u, w]), f) < 2:
            continue
        qw = Q.value(w)
        if qw == 0:
            return w
        b = Q.polarized(u, w)
        disc = (b * b - qu * qw) % p
        s = f.sqrt(disc)
        if s is None:
            continue
        lam = (-b + s) * f.inv(qu) % p
        v = (lam * u + w) % p
        if v.any() and Q.value(v) == 0:
            return v
    raise RuntimeError("isotropic search exhausted (should not happen over F_p)")


def det_mod(G, field):
    """Determinant over the field (fraction-free over F_p via rref product)."""
    n = len(G)
    if field.characteristic:
        p = field.p
        A = np.array(G, dtype=np.int64) % p
        det = 1
        for c in range(n):
            nz = np.nonzero(A[c:, c])[0]
            if nz.size == 0:
                return 0
            i = c + int(nz[0])
            if i != c:
                A[[c, i]] = A[[i, c]]
                det = -det
            det = det * int(A[c, c]) % p
            inv = pow(int(A[c, c]), p - 2, p)
            A[c] = A[c] * inv % p
            col = A[c + 1:, c].copy()
            A[c + 1:] = (A[c + 1:] - np.outer(col, A[c])) % p
        return det % p
    from fractions import Fraction
    A = [[Fraction(x) for x in row] for row in G]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(c + 1, n):
            if A[i][c]:
                fmul = A[i][c]
                A[i] = [x - fmul * y for x, y in zip(A[i], A[c])]
    return det


def is_split_dim6(Q: QuadraticForm) -> bool:
    """True iff the nondegenerate 6-dim form is congruent to the Plücker form
    over F_p (discriminant class -1; a mod-p reduction can land in either class)."""
    f = Q.field
    d = det_mod(Q.gram, f)
    return f.legendre(f.neg(d)) == 1


def hyperbolic_split(Q: QuadraticForm, seed: int = 0):
    """Basis change B with B^T G B equal to the split Gram of x0x1+x2x3+x4x5.

    Q must be a nondegenerate form on a 6-dim space over an odd prime field,
    in the split discriminant class.  The isotropic searches draw from the
    run's seeded generator.
    """
    f = Q.field
    if not f.characteristic:
        raise FieldError("hyperbolic_split requires a finite prime field; reduce mod p first")
    if Q.n != 6 or Q.rank != 6:
        raise ValueError("not a nondegenerate 6-dim form")
    if not is_split_dim6(Q):
        raise ValueError("form is not split over this prime (discriminant class); "
                         "retry over another prime")
    rng = random.Random(f"hyperbolic:{seed}")
    p = f.p
    half_inv = f.inv(2)

    basis_cols = []
    ortho_rows = []
    # rows of `amb` span the orthogonal complement of the pairs found so far
    amb = np.eye(6, dtype=np.int64)
    G = Q.gram
    for _ in range(3):
        sub = QuadraticForm((amb @ G @ amb.T) % p, f)
        e_local = _isotropic_vector(sub, rng)
        e = (e_local @ amb) % p
        u = None
        candidates = list(amb)
        for _ in range(40):
            coeffs = np.array([rng.randrange(p) for _ in range(amb.shape[0])], dtype=np.int64)
            candidates.append((coeffs @ amb) % p)
        for cand in candidates:
            if cand.any() and Q.polarized(e, cand) != 0:
                u = cand % p
                break
        if u is None:
            raise RuntimeError("no hyperbolic partner found")
        beu = Q.polarized(e, u)
        t = Q.value(u) * f.inv(2 * beu % p) % p
        f0 = (u - t * e) % p
        # scale so that the polarized value is exactly 1/2
        c = f.inv(2 * Q.polarized(e, f0) % p)
        fvec = (f0 * c) % p
        basis_cols.extend([e, fvec])
        ortho_rows.extend([(G @ e) % p, (G @ fvec) % p])
        ker = linalg.kernel_basis(np.vstack(ortho_rows), f)
        amb = np.array(ker, dtype=np.int64) if ker else np.zeros((0, 6), dtype=np.int64)
    B = np.array(basis_cols, dtype=np.int64).T % p
    H = standard_hyperbolic_gram(f)
    if not np.array_equal((B.T @ G @ B) % p, H):
        raise RuntimeError("hyperbolic splitting failed verification")
    return B


# ---------------------------------------------------------------------------
# Gr(2,4) dictionary


def skew_matrix(w, field):
    """4x4 skew matrix with entries the Plücker coordinates in PAIRS order."""
    if field.characteristic:
        M = np.zeros((4, 4), dtype=np.int64)
        for c, (i, j) in enumerate(PAIRS):
            M[i, j] = w[c] % field.p
            M[j, i] = (-w[c]) % field.p
        return M
    M = [[field.zero] * 4 for _ in range(4)]
    for c, (i, j) in enumerate(PAIRS):
        M[i][j] = w[c]
        M[j][i] = field.neg(w[c])
    return M


def hodge_star(w, field):
    """Hodge dual in the PAIRS coordinate order: swaps the coordinates of each
    complementary pair (p12<->p34, p13<->p42, p14<->p23)."""
    out = list(w)
    for a in (0, 2, 4):
        out[a], out[a + 1] = out[a + 1], out[a]
    if field.characteristic:
        return np.array(out, dtype=np.int64)
    return out


def plucker_value(w, field):
    """The Plücker quadric w0w1 + w2w3 + w4w5 (vanishes iff w is decomposable)."""
    total = field.zero
    for a in (0, 2, 4):
        total = field.add(total, field.mul(w[a], w[a + 1]))
    return total


def plane_from_plucker(w, field):
    """The 2-plane in F^4 spanned by a nonzero decomposable w: row space of its
    skew matrix, in echelon form."""
    M = skew_matrix(w, field)
    plane = linalg.row_space_echelon(M, field)
    if len(plane) != 2:
        raise ValueError("Plücker vector is zero or not decomposable")
    return plane


def plucker_from_plane(v, u, field):
    """Plücker coordinates (PAIRS order) of span(v, u) in F^4."""
    out = []
    for (i, j) in PAIRS:
        out.append(field.sub(field.mul(v[i], u[j]), field.mul(v[j], u[i])))
    if field.characteristic:
        return np.array(out, dtype=np.int64) % field.p
    return out
