"""Canonical ideal machinery: graded pieces I(n), Petri's quadric basis with
certificates, the multiplication map on Sym^2 I(2), higher-order vanishing
ideals, and rank-4 tangent-cone quadrics from Sing-Theta divisor proxies.

I(n) is computed coordinate-free: the kernel of evaluating degree-n monomials
in the canonical adjoints as plane forms, modulo multiples of f.  No curve
points enter; the evaluation-based oracle in the tests is fully independent.
"""

from __future__ import annotations

import random

import numpy as np

from . import linalg, polys, quadforms, series
from .curves import CurveModel, CurveError, DivisorOnCurve, DegenerateConfiguration
from .quadforms import QuadraticForm


class IdealComponent:
    def __init__(self, model, degree, order, basis):
        self.model = model
        self.degree = degree
        self.order = order
        self.basis = basis  # vectors over monomials_g(g, degree)

    @property
    def dim(self):
        return len(self.basis)

    def matrix(self):
        f = self.model.field
        if f.characteristic:
            return np.array(self.basis, dtype=np.int64)
        return [list(v) for v in self.basis]

    def quadric(self, index) -> QuadraticForm:
        if self.degree != 2:
            raise CurveError("quadric() only for degree-2 components")
        g = self.model.genus
        d = {m: c for m, c in zip(polys.monomials_g(g, 2), self.basis[index])
             if not self.model.field.is_zero(c)}
        return quadforms.gram_from_mpoly(d, g, self.model.field)

    def coords_of(self, vec):
        sol = linalg.solve(linalg.transpose(self.matrix(), self.model.field), vec,
                           self.model.field)
        if sol is None:
            raise CurveError("element does not lie in the ideal component")
        return sol


def expected_i2_dim(g: int) -> int:
    return (g - 2) * (g - 3) // 2


def _canonical_products(model, n):
    """Plane forms of all degree-n monomials in the canonical basis, in the
    monomials_g order."""
    f = model.field
    K = series.canonical_series(model)
    base = [np.asarray(v) if f.characteristic else v for v in K.basis]
    dK = model.degree - 3
    cache = {}

    def power_product(exps):
        key = tuple(exps)
        if key in cache:
            return cache[key]
        total = sum(exps)
        if total == 0:
            out = polys.form_vec({(0, 0, 0): f.one}, 0, f), 0
        else:
            i = next(t for t, e in enumerate(exps) if e > 0)
            rest = list(exps)
            rest[i] -= 1
            prev, pdeg = power_product(rest)
            out = polys.form_mul(prev, pdeg, base[i], dK, f), pdeg + dK
        cache[key] = out
        return out

    cols = []
    for e in polys.monomials_g(model.genus, n):
        vec, deg = power_product(e)
        cols.append(vec)
    return cols, n * dK


def ideal_component(model: CurveModel, n: int) -> IdealComponent:
    """I(n): degree-n forms on canonical space containing the canonical curve."""
    if n < 2:
        raise CurveError("ideal components start at degree 2")
    f = model.field
    g = model.genus
    cols, plane_deg = _canonical_products(model, n)
    fcols = series._f_multiple_vectors(model, plane_deg)
    nsym = len(cols)
    if f.characteristic:
        A = np.array(cols + fcols, dtype=np.int64).T
    else:
        A = linalg.transpose(cols + fcols, f)
    _, kernel = linalg.exact_kernel(A, f)
    basis = []
    for v in kernel:
        head = v[:nsym]
        if f.characteristic:
            head = np.asarray(head, dtype=np.int64)
            if not head.any():
                continue
        else:
            if all(f.is_zero(c) for c in head):
                continue
        basis.append(head)
    if f.characteristic and basis:
        basis = [b.copy() for b in linalg.row_space_echelon(np.array(basis, dtype=np.int64), f)]
    elif basis:
        basis = linalg.row_space_echelon(basis, f)
    comp = IdealComponent(model, n, 1, basis)
    if n == 2 and g >= 4 and comp.dim > expected_i2_dim(g):
        raise CurveError(
            f"dim I(2) = {comp.dim} exceeds {(g-2)*(g-3)//2}: canonical map "
            f"not an embedding (hyperelliptic model?)")
    return comp


def evaluation_ideal_dim(model: CurveModel, n: int, npoints: int, seed) -> int:
    """Independent oracle: dimension of degree-n forms vanishing at sampled
    canonical points (stabilizes to dim I(n) for enough points)."""
    g = model.genus
    pts = series.sample_points(model, npoints, seed)
    rows = []
    for q in pts:
        v = series.canonical_image(model, q)
        rows.append(polys.mpoly_derivative_row_g(g, n, v, (0,) * g, model.field))
    A = np.array(rows, dtype=np.int64)
    _, ker = linalg.exact_kernel(A, model.field)
    return len(ker)


def higher_ideal(model: CurveModel, t: int, n: int) -> IdealComponent:
    """Degree-n forms vanishing to order >= t along the canonical curve,
    by sampling with doubling until the kernel stabilizes."""
    if t < 1 or n < t + 1:
        raise CurveError("need t >= 1 and n >= t+1")
    f = model.field
    g = model.genus
    alphas = [a for order in range(t) for a in polys.derivative_multi_indices(g, order)]
    target = len(polys.monomials_g(g, n))
    count = max(8, (target // max(1, len(alphas))) * 2 + 4)
    prev = None
    for round_ in range(8):
        pts = series.sample_points(model, count, f"higher:{t}:{n}:{round_}")
        rows = []
        for q in pts:
            v = series.canonical_image(model, q)
            for a in alphas:
                rows.append(polys.mpoly_derivative_row_g(g, n, v, a, f))
        _, ker = linalg.exact_kernel(np.array(rows, dtype=np.int64), f)
        if prev is not None and len(ker) == prev:
            basis = [np.asarray(k, dtype=np.int64) for k in ker]
            return IdealComponent(model, n, t, basis)
        prev = len(ker)
        count *= 2
    raise CurveError("higher_ideal sampling did not stabilize; field too small?")


class SyzygyReport:
    def __init__(self, model, i2, sym_dim, rank, kernel):
        self.model = model
        self.i2 = i2
        self.sym_dim = sym_dim
        self.rank = rank
        self.kernel = kernel

    @property
    def kernel_dim(self):
        return len(self.kernel)


def sym2_pairs(h):
    return [(a, b) for a in range(h) for b in range(a, h)]


def syzygy_kernel(model: CurveModel, i2: IdealComponent | None = None) -> SyzygyReport:
    """Kernel of the multiplication map Sym^2 I(2) -> I(4)."""
    f = model.field
    g = model.genus
    if i2 is None:
        i2 = ideal_component(model, 2)
    h = i2.dim
    mons2 = polys.monomials_g(g, 2)
    dicts = []
    for v in i2.basis:
        dicts.append({m: c for m, c in zip(mons2, v) if not f.is_zero(c)})
    cols = []
    for (a, b) in sym2_pairs(h):
        prod = polys.mpoly_mul(dicts[a], dicts[b], f)
        cols.append(polys.mpoly_to_vec(prod, g, 4, f))
    if f.characteristic:
        A = np.array(cols, dtype=np.int64).T
    else:
        A = linalg.transpose(cols, f)
    rank, kernel = linalg.exact_kernel(A, f)
    return SyzygyReport(model, i2, len(cols), rank, kernel)


def syzygy_plane_recheck(model: CurveModel, report: SyzygyReport) -> bool:
    """Expand each kernel element as a plane polynomial identity (through the
    canonical adjoints) and verify it is exactly zero."""
    f = model.field
    i2 = report.i2
    h = i2.dim
    plane_quadrics = []
    cols, plane_deg = _canonical_products(model, 2)
    fcols = series._f_multiple_vectors(model, plane_deg)
    for v in i2.basis:
        vec = None
        for c, col in zip(v, cols):
            term = polys.form_scale(col, c, f)
            vec = term if vec is None else _add(vec, term, f)
        plane_quadrics.append(vec)
    for ker in report.kernel:
        total = None
        for c, (a, b) in zip(ker, sym2_pairs(h)):
            if f.is_zero(c):
                continue
            prod = polys.form_mul(plane_quadrics[a], plane_deg, plane_quadrics[b], plane_deg, f)
            total = polys.form_scale(prod, c, f) if total is None else _add(
                total, polys.form_scale(prod, c, f), f)
        if total is None:
            continue
        if f.characteristic:
            if np.asarray(total).any():
                return False
        else:
            if any(not f.is_zero(c) for c in total):
                return False
    return True


def _add(u, v, field):
    if field.characteristic:
        return (np.asarray(u, dtype=np.int64) + np.asarray(v, dtype=np.int64)) % field.p
    return [field.add(a, b) for a, b in zip(u, v)]


# ---------------------------------------------------------------------------
# Petri quadrics


class PetriBasis:
    def __init__(self, model, points, omega_coords, quadrics, coeffs, i2):
        self.model = model
        self.points = points
        self.omega_coords = omega_coords   # g x g matrix, rows = omega_i in A-coords
        self.quadrics = quadrics           # {(i,j): QuadraticForm} for i<j <= g-3 (0-based)
        self.coeffs = coeffs               # {(i,j): (lam, mu, b)}
        self.i2 = i2

    def pair_indices(self):
        return sorted(self.quadrics)

    def residual_divisor(self, i, j) -> DivisorOnCurve:
        """D_ij: the first g-2 base points with the i-th and j-th removed."""
        g = self.model.genus
        pts = [q for t, q in enumerate(self.points[: g - 2]) if t not in (i, j)]
        return DivisorOnCurve([(q, 1) for q in pts])

    def ranks(self):
        return {ij: Q.rank for ij, Q in self.quadrics.items()}


def general_position_check(model: CurveModel, pts, i2: IdealComponent | None = None):
    """The C(g-2, 2) functionals Q -> Q~(p_i, p_j) must span I(2)^*.
    Returns (ok, witness): witness is a nonzero quadric annihilated by all
    functionals when the check fails."""
    if len(set(pts)) != len(pts):
        return False, "repeated points"
    g = model.genus
    if len(pts) != g - 2:
        raise CurveError(f"need exactly g-2 = {g-2} points")
    if i2 is None:
        i2 = ideal_component(model, 2)
    f = model.field
    imgs = [series.canonical_image(model, q) for q in pts]
    qforms = [i2.quadric(k) for k in range(i2.dim)]
    rows = []
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            rows.append([Q.polarized(imgs[a], imgs[b]) for Q in qforms])
    A = np.array(rows, dtype=np.int64)
    rank, ker = linalg.exact_kernel(A, f)
    if rank == i2.dim:
        return True, None
    return False, ker[0]


def petri_basis(model: CurveModel, pts, i2: IdealComponent | None = None) -> PetriBasis:
    """Petri's rank-<=6 basis of I(2) from g points in general position."""
    f = model.field
    g = model.genus
    if len(pts) != g:
        raise CurveError(f"need exactly g = {g} points")
    ok, _ = general_position_check(model, pts[: g - 2], i2)
    if not ok:
        raise DegenerateConfiguration("first g-2 points fail general position; resample")
    if i2 is None:
        i2 = ideal_component(model, 2)
    K = series.canonical_series(model)
    dK = model.degree - 3
    # dual differentials: omega_i spans H^0(K - sum_{j != i} p_j)
    omegas = []
    for i in range(g):
        minus = DivisorOnCurve([(q, 1) for t, q in enumerate(pts) if t != i])
        space = series.rr_space(model, DivisorOnCurve([]), minus, check_rr=False)
        if space.dim != 1:
            raise DegenerateConfiguration(
                f"H^0(K - sum p_j) for i={i} has dim {space.dim} != 1; resample")
        w = space.basis[0]
        val = series.LinearSeries(model, dK, [w], [], DivisorOnCurve([]),
                                  DivisorOnCurve([]), "rr").point_functional(pts[i])
        if not val.any():
            raise DegenerateConfiguration(f"omega_{i} vanishes at its own point; resample")
        omegas.append(np.asarray(w, dtype=np.int64))
    omega_coords = np.array([K.coords_of(w) for w in omegas], dtype=np.int64)
    # plane products of the omegas needed by the Petri ansatz
    prod = {}
    def omega_prod(a, b):
        key = (min(a, b), max(a, b))
        if key not in prod:
            prod[key] = polys.form_mul(omegas[a], dK, omegas[b], dK, f)
        return prod[key]

    plane_deg = 2 * dK
    fcols = series._f_multiple_vectors(model, plane_deg)
    quadrics = {}
    coeffs = {}
    for i in range(g - 2):
        for j in range(i + 1, g - 2):
            cols = []
            for s in range(g - 2):
                cols.append(omega_prod(s, g - 2))
            for s in range(g - 2):
                cols.append(omega_prod(s, g - 1))
            cols.append(omega_prod(g - 2, g - 1))
            A = np.array(cols + fcols, dtype=np.int64).T
            rhs = np.asarray(omega_prod(i, j), dtype=np.int64)
            sol = linalg.solve(A, rhs, f)
            if sol is None:
                raise CurveError("Petri solve inconsistent: probable bad reduction")
            nker = len(linalg.kernel_basis(A, f))
            if nker:
                raise DegenerateConfiguration("Petri solve not unique; resample points")
            lam = np.asarray(sol[: g - 2], dtype=np.int64)
            mu = np.asarray(sol[g - 2: 2 * (g - 2)], dtype=np.int64)
            b = int(sol[2 * (g - 2)])
            # Gram in canonical coordinates
            G = quadforms.sym_outer(omega_coords[i], omega_coords[j], f)
            eta = (lam @ omega_coords[: g - 2]) % f.p
            nu = (mu @ omega_coords[: g - 2]) % f.p
            G = (G - quadforms.sym_outer(eta, omega_coords[g - 2], f)) % f.p
            G = (G - quadforms.sym_outer(nu, omega_coords[g - 1], f)) % f.p
            G = (G - b * quadforms.sym_outer(omega_coords[g - 2], omega_coords[g - 1], f)) % f.p
            Q = QuadraticForm(G, f, label=f"Q_{i+1}{j+1}")
            if Q.rank > 6:
                raise CurveError("Petri quadric rank exceeds 6: construction bug")
            quadrics[(i, j)] = Q
            coeffs[(i, j)] = (lam, mu, b)
    basis = PetriBasis(model, pts, omega_coords, quadrics, coeffs, i2)
    _verify_charquad(model, basis)
    _verify_span(model, basis)
    return basis


def _verify_charquad(model, basis: PetriBasis):
    f = model.field
    g = model.genus
    imgs = [series.canonical_image(model, q) for q in basis.points[: g - 2]]
    for (i, j), Q in basis.quadrics.items():
        for a in range(g - 2):
            for b in range(a + 1, g - 2):
                val = Q.polarized(imgs[a], imgs[b])
                if {a, b} == {i, j}:
                    if f.is_zero(val):
                        raise CurveError("Petri quadric vanishes on its own pair")
                elif not f.is_zero(val):
                    raise CurveError("Petri quadric fails its characterizing conditions")


def _verify_span(model, basis: PetriBasis):
    f = model.field
    vecs = [petri_vec(model, basis, ij) for ij in basis.pair_indices()]
    if linalg.rank(np.array(vecs, dtype=np.int64), f) != basis.i2.dim:
        raise CurveError("Petri quadrics do not span I(2)")


def petri_vec(model, basis: PetriBasis, ij):
    """Coefficient vector of the Petri quadric over the degree-2 monomials."""
    Q = basis.quadrics[ij]
    return polys.mpoly_to_vec(Q.to_mpoly(), model.genus, 2, model.field)


def quadric_curve_singularity(model: CurveModel, Q: QuadraticForm, candidates=(),
                              nsample=500, seed=0) -> dict:
    """Rank, Sing Q basis, which candidate points lie in Sing Q, and whether
    sampled curve points meet Sing Q (a sampling certificate)."""
    f = model.field
    if Q.rank == 0:
        raise CurveError("zero form")
    sing = Q.sing_basis()
    in_sing = []
    for q in candidates:
        v = series.canonical_image(model, q)
        in_sing.append(bool(Q.in_singular_locus(v)))
    hits = 0
    pts = series.sample_points(model, nsample, f"{seed}:singscan")
    for q in pts:
        v = series.canonical_image(model, q)
        if Q.in_singular_locus(v):
            hits += 1
    return {
        "rank": Q.rank,
        "sing_dim_projective": len(sing) - 1,
        "sing_basis": [list(map(int, v)) for v in sing],
        "candidates_in_sing": in_sing,
        "sampled_points_in_sing": hits,
        "sample_size": len(pts),
    }


# ---------------------------------------------------------------------------
# tangent cones from Sing-Theta proxies


def h0_of_divisor(model: CurveModel, a: DivisorOnCurve) -> int:
    """h^0(O(a)) for effective a of degree g-1, via h^0(K - a) (index zero)."""
    if a.degree != model.genus - 1:
        raise CurveError("proxy divisors must have degree g-1")
    space = series.rr_space(model, DivisorOnCurve([]), a, check_rr=False)
    return space.dim


def tangent_cone_quadric(model: CurveModel, a: DivisorOnCurve, seed=0) -> QuadraticForm:
    """The rank-<=4 quadric spanned by the image of H^0(a) x H^0(K-a) in
    H^0(K): the tangent-cone proxy for a Sing-Theta point with h^0 = 2."""
    f = model.field
    if h0_of_divisor(model, a) != 2:
        raise CurveError("not a Sing Theta proxy: h^0(a) != 2")
    K = series.canonical_series(model)
    dK = model.degree - 3
    u_space = series.rr_space(model, DivisorOnCurve([]), a, check_rr=False)
    s_space = series.function_space(model, a, DivisorOnCurve([]), seed=seed)
    if s_space.dim != 2:
        raise CurveError(f"function space H^0(a) has dim {s_space.dim} != 2")
    denom = s_space.denominator_forms()
    prods = {}
    for si in range(2):
        for uj in range(2):
            h = series.reduce_section_product(
                model,
                [(s_space.basis[si], s_space.h_degree), (u_space.basis[uj], dK)],
                denom, dK)
            prods[(si, uj)] = K.coords_of(h)
    G = (np.asarray(quadforms.sym_outer(prods[(0, 0)], prods[(1, 1)], f), dtype=np.int64)
         - np.asarray(quadforms.sym_outer(prods[(0, 1)], prods[(1, 0)], f), dtype=np.int64)) % f.p
    Q = QuadraticForm(G, f, label="tangent-cone")
    if Q.rank > 4:
        raise CurveError("tangent-cone quadric has rank > 4: construction bug")
    return Q


def quadric_in_i2(model: CurveModel, Q: QuadraticForm, i2: IdealComponent) -> bool:
    vec = polys.mpoly_to_vec(Q.to_mpoly(), model.genus, 2, model.field)
    M = i2.matrix()
    return linalg.solve(np.array(M, dtype=np.int64).T, np.asarray(vec, dtype=np.int64),
                        model.field) is not None


# ---------------------------------------------------------------------------
# plane conic predicate


def points_on_conic(pts, field) -> bool:
    """True iff six plane points lie on a conic (possibly degenerate)."""
    if len(pts) < 6:
        raise CurveError("need six points")
    rows = []
    for q in pts[:6]:
        x, y, z = (field.normalize(c) for c in q)
        rows.append([field.mul(x, x), field.mul(x, y), field.mul(y, y),
                     field.mul(x, z), field.mul(y, z), field.mul(z, z)])
    return linalg.rank(linalg.as_matrix(rows, field), field) < 6
