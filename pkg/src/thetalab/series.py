"""Riemann-Roch spaces on plane models by the Brill-Noether residual method.

A space H^0(K + plus - minus) is modelled as

    { forms H of degree d-3+e :  div_C(H) >= Delta + (div_C(G) - plus) + minus }

for an auxiliary product G of e lines with div_C(G) >= plus, the section being
H/G against the adjoint frame.  Conditions split into three exact kinds:

* multiplicity conditions at singular points (adjoint order m-1, raised by one
  for each G-line through the point; at most one line per singular point),
* divisibility of the restriction H|_L by the squarefree residual polynomial
  of each line (covers residual intersection points without needing their
  coordinates),
* vanishing-order conditions along the curve at rational smooth points,
  via exact local-parameter series.

Function spaces H^0(O(E - F)) use the same model with extra "anchor" lines:
a fixed fully-split adjoint A0 (product of d-3 lines, exactly m-1 through
each singular point) contributes its residual divisibility conditions, and
the section becomes the function H/(G * A0).

Degenerate configurations (tangency where transversality is assumed, special
points colliding with residual points, repeated residual roots) raise
DegenerateConfiguration; samplers catch it and redraw.
"""

from __future__ import annotations

import random

import numpy as np

from . import linalg, polys
from .curves import CurveModel, DivisorOnCurve, DegenerateConfiguration, CurveError, divisor


# ---------------------------------------------------------------------------
# auxiliary lines


class AuxLine:
    """A line with exact intersection bookkeeping against the curve."""

    def __init__(self, model: CurveModel, U, V, subtract=None, role="cover"):
        f = model.field
        if not f.characteristic:
            raise CurveError("auxiliary-line constructions require finite-field mode")
        p = f.p
        self.model = model
        self.role = role
        U = tuple(f.normalize(c) for c in U)
        V = tuple(f.normalize(c) for c in V)
        # reparametrize so the point at t=infinity avoids the curve
        for c in range(p):
            Vc = tuple((V[i] + c * U[i]) % p for i in range(3))
            if linalg.rank(linalg.as_matrix([U, Vc], f), f) < 2:
                continue
            R = polys.line_restriction_matrix(model.degree, U, Vc, f)
            fline = polys.upoly_trim((R @ model.f) % p)
            if polys.upoly_deg(fline) == model.degree:
                break
        else:
            raise DegenerateConfiguration("line lies on the curve")
        self.U, self.V = U, Vc
        self.fline = fline
        # normal vector (for fast membership tests)
        self.normal = _cross(U, Vc, f)
        self.subtract = dict(subtract or {})
        self.sing_hits = []
        res = fline
        for pt, m in model.singularities:
            t = self.t_of(pt)
            if t is None:
                continue
            factor = _linear_power(t, m, p)
            q, r = polys.upoly_divmod(res, factor, p)
            if polys.upoly_deg(r) >= 0:
                raise DegenerateConfiguration(
                    f"line tangent to a branch at singular point {pt}")
            if polys.upoly_eval(q, t, p) == 0:
                raise DegenerateConfiguration(
                    f"line has excess contact at singular point {pt}")
            res = q
            self.sing_hits.append((pt, t, m))
        for t, mult in sorted(self.subtract.items()):
            q, r = polys.upoly_divmod(res, _linear_power(t, mult, p), p)
            if polys.upoly_deg(r) >= 0:
                raise DegenerateConfiguration("line lacks required contact at a covered point")
            res = q
        self.res2 = polys.upoly_trim(res)
        if polys.upoly_deg(self.res2) > 0 and not polys.upoly_is_squarefree(self.res2, p):
            raise DegenerateConfiguration("line residual divisor not reduced")

    def t_of(self, pt):
        """Parameter value of pt on the line, or None if pt not on the line."""
        f = self.model.field
        pt = tuple(f.normalize(c) for c in pt)
        s = f.zero
        for a, b in zip(self.normal, pt):
            s = f.add(s, f.mul(a, b))
        if not f.is_zero(s):
            return None
        # pt ~ U + t V (pt is never the infinity point V for points with z=1
        # when V has z-component 0; solve componentwise)
        p = f.p
        M = np.array([[self.U[i], self.V[i]] for i in range(3)], dtype=np.int64)
        rhs = np.array(pt, dtype=np.int64)
        # find scale s0, t0 with s0*U + t0*V = pt
        sol = None
        for i in range(3):
            for j in range(i + 1, 3):
                sub = np.array([[M[i, 0], M[i, 1]], [M[j, 0], M[j, 1]]], dtype=np.int64)
                det = int(sub[0, 0] * sub[1, 1] - sub[0, 1] * sub[1, 0]) % p
                if det:
                    inv = pow(det, p - 2, p)
                    s0 = (int(sub[1, 1]) * int(rhs[i]) - int(sub[0, 1]) * int(rhs[j])) * inv % p
                    t0 = (-int(sub[1, 0]) * int(rhs[i]) + int(sub[0, 0]) * int(rhs[j])) * inv % p
                    sol = (s0, t0)
                    break
            if sol:
                break
        if sol is None or sol[0] == 0:
            return None
        return sol[1] * pow(sol[0], p - 2, p) % p

    def contact_at(self, t) -> int:
        p = self.model.field.p
        count = 0
        res = self.fline
        while polys.upoly_eval(res, t, p) == 0:
            res, r = polys.upoly_divmod(res, np.array([(-t) % p, 1], dtype=np.int64), p)
            count += 1
        return count

    def divisibility_rows(self, h_degree: int):
        """Rows expressing: remainder of H|_L modulo the residual polynomial is 0."""
        f = self.model.field
        p = f.p
        r = polys.upoly_deg(self.res2)
        if r <= 0:
            return []
        R = polys.line_restriction_matrix(h_degree, self.U, self.V, f)
        T = np.zeros((r, h_degree + 1), dtype=np.int64)
        cur = np.array([1], dtype=np.int64)
        for k in range(h_degree + 1):
            rem = polys.upoly_mod(cur, self.res2, p)
            T[: len(rem), k] = rem
            cur = np.concatenate([[0], cur])
        return list((T @ R) % p)


def _cross(U, V, field):
    a = field.sub(field.mul(U[1], V[2]), field.mul(U[2], V[1]))
    b = field.sub(field.mul(U[2], V[0]), field.mul(U[0], V[2]))
    c = field.sub(field.mul(U[0], V[1]), field.mul(U[1], V[0]))
    return (a, b, c)


def _linear_power(t, m, p):
    out = np.array([1], dtype=np.int64)
    lin = np.array([(-t) % p, 1], dtype=np.int64)
    for _ in range(m):
        out = polys.upoly_mul(out, lin, p)
    return out


def tangent_line(model: CurveModel, pt) -> AuxLine:
    f = model.field
    fx, fy, fz = model.partials_at(pt)
    if f.is_zero(fx) and f.is_zero(fy):
        raise CurveError(f"no tangent line at singular point {pt}")
    direction = (fy, f.neg(fx), f.zero)
    line = AuxLine(model, pt, direction, subtract={})
    t0 = line.t_of(pt)
    contact = line.contact_at(t0)
    if contact < 2:
        raise DegenerateConfiguration("tangent line has contact < 2 (bad reduction)")
    return AuxLine(model, line.U, line.V, subtract={line.t_of(pt): 2}, role="tangent")


def secant_line(model: CurveModel, a, b, subtract_mults=(1, 1)) -> AuxLine:
    line = AuxLine(model, a, tuple(model.field.sub(x, y) for x, y in zip(b, a)))
    sub = {}
    ta, tb = line.t_of(a), line.t_of(b)
    if ta is None or tb is None or ta == tb:
        raise DegenerateConfiguration("secant parametrization failed")
    sub[ta] = subtract_mults[0]
    sub[tb] = subtract_mults[1]
    return AuxLine(model, line.U, line.V, subtract=sub, role="secant")


def line_through_one(model: CurveModel, a, rng) -> AuxLine:
    f = model.field
    for _ in range(60):
        direction = (f.normalize(rng.randrange(f.p)), f.normalize(rng.randrange(f.p)), f.one)
        try:
            line = AuxLine(model, a, direction)
            ta = line.t_of(a)
            if ta is None or line.contact_at(ta) != 1:
                continue
            if line.sing_hits:
                continue
            return AuxLine(model, line.U, line.V, subtract={ta: 1}, role="single")
        except DegenerateConfiguration:
            continue
    raise DegenerateConfiguration("no transversal line through point found")


def cover_with_lines(model: CurveModel, eff: DivisorOnCurve, seed, forbidden_pts=()):
    """Lines whose intersection divisor dominates `eff`, with exact subtraction
    bookkeeping.  At most one line may pass through any singular point."""
    rng = random.Random(f"{seed}:cover")
    remaining = {pt: m for pt, m in sorted(eff.parts)}
    lines = []
    sing_seen = set()
    guard = 0
    while any(v > 0 for v in remaining.values()):
        guard += 1
        if guard > 40:
            raise DegenerateConfiguration("line cover did not converge")
        pt = next(q for q in sorted(remaining) if remaining[q] > 0)
        need = remaining[pt]
        if need > 2:
            raise DegenerateConfiguration("multiplicities > 2 in plus-part unsupported")
        if need == 2:
            line = tangent_line(model, pt)
        else:
            partner = next((q for q in sorted(remaining) if q != pt and remaining[q] > 0), None)
            if partner is not None:
                line = secant_line(model, pt, partner)
            else:
                line = line_through_one(model, pt, rng)
        # absorb every still-needed point lying on this line
        sub = dict(line.subtract)
        for q in sorted(remaining):
            if remaining[q] <= 0:
                continue
            tq = line.t_of(q)
            if tq is None or tq in sub:
                continue
            sub[tq] = min(remaining[q], line.contact_at(tq))
        line = AuxLine(model, line.U, line.V, subtract=sub, role=line.role)
        for spt, _, _ in line.sing_hits:
            if spt in sing_seen:
                raise DegenerateConfiguration("two cover lines through one singular point")
            sing_seen.add(spt)
        for q in forbidden_pts:
            tq = line.t_of(q)
            if tq is not None:
                raise DegenerateConfiguration("forbidden point on a cover line")
        for q in sorted(remaining):
            if remaining[q] <= 0:
                continue
            tq = line.t_of(q)
            if tq is not None and tq in line.subtract:
                remaining[q] -= min(remaining[q], line.subtract[tq])
        lines.append(line)
    return lines


def anchor_lines(model: CurveModel):
    """A fully split adjoint of degree d-3: exactly m-1 lines through each
    singular point, remaining lines free of singular points."""
    cached = getattr(model, "_anchor_lines", None)
    if cached is not None:
        return cached
    f = model.field
    rng = random.Random(f"anchors:{f.p}:{model.name}")
    need = {pt: m - 1 for pt, m in model.singularities}
    lines = []
    guard = 0
    while any(need.values()):
        guard += 1
        if guard > 30:
            raise DegenerateConfiguration("anchor construction stuck")
        pt = next(q for q in sorted(need) if need[q] > 0)
        partner = next((q for q in sorted(need) if q != pt and need[q] > 0), None)
        line = None
        if partner is not None:
            cand = AuxLine(model, pt, tuple(f.sub(a, b) for a, b in zip(partner, pt)), role="anchor")
            hits = {s for s, _, _ in cand.sing_hits}
            if all(need.get(s, 0) > 0 for s in hits):
                line = cand
        if line is None:
            for _ in range(80):
                direction = (rng.randrange(f.p), rng.randrange(f.p), 1)
                try:
                    cand = AuxLine(model, pt, direction, role="anchor")
                except DegenerateConfiguration:
                    continue
                hits = {s for s, _, _ in cand.sing_hits}
                if hits == {tuple(pt)}:
                    line = cand
                    break
            if line is None:
                raise DegenerateConfiguration("no anchor line through singular point")
        for s, _, _ in line.sing_hits:
            need[s] -= 1
            if need[s] < 0:
                raise DegenerateConfiguration("anchor line overshoots a singular point")
        lines.append(line)
    while len(lines) < model.degree - 3:
        for _ in range(80):
            U = (rng.randrange(f.p), rng.randrange(f.p), 1)
            V = (rng.randrange(f.p), rng.randrange(f.p), 1)
            try:
                cand = AuxLine(model, U, V, role="anchor")
            except DegenerateConfiguration:
                continue
            if not cand.sing_hits:
                lines.append(cand)
                break
        else:
            raise DegenerateConfiguration("no free anchor line found")
    if len(lines) != model.degree - 3:
        raise DegenerateConfiguration("anchor count mismatch (too many singular conditions)")
    model._anchor_lines = lines
    return lines


# ---------------------------------------------------------------------------
# the series object


class LinearSeries:
    """An exact basis of forms H of one degree, together with the auxiliary
    line data that fixes the section semantics H / (product of lines)."""

    def __init__(self, model, h_degree, basis, lines, plus, minus, kind, label=None):
        self.model = model
        self.field = model.field
        self.h_degree = h_degree
        self.basis = basis
        self.lines = lines
        self.plus = plus
        self.minus = minus
        self.kind = kind
        self.label = label

    @property
    def dim(self):
        return len(self.basis)

    def basis_matrix(self):
        return np.array(self.basis, dtype=np.int64)

    def required_order_at(self, pt) -> int:
        """Forced vanishing order of every H along the curve at pt."""
        pt = tuple(self.field.normalize(c) for c in pt)
        order = 0
        for line in self.lines:
            t = line.t_of(pt)
            if t is not None:
                order += line.contact_at(t)
        for q, m in self.plus.parts:
            if q == pt:
                order -= m
        for q, m in self.minus.parts:
            if q == pt:
                order += m
        if order < 0:
            raise CurveError("negative forced order (inconsistent divisor data)")
        return order

    def jet(self, pt, count: int):
        """count x dim matrix: trivialized value, then derivatives along the
        local parameter, of each basis section at pt."""
        v = self.required_order_at(pt)
        rows = self.model.curve_order_rows(self.h_degree, pt, v + count)[v:]
        B = self.basis_matrix().T
        p = self.field.p
        return np.array([(np.asarray(r, dtype=np.int64) @ B) % p for r in rows], dtype=np.int64)

    def point_functional(self, pt):
        return self.jet(pt, 1)[0]

    def coords_of(self, form_vec):
        """Coordinates of a form (given over the monomial basis) in this basis."""
        sol = linalg.solve(self.basis_matrix().T, np.asarray(form_vec, dtype=np.int64), self.field)
        if sol is None:
            raise CurveError("form does not lie in the series")
        return sol

    def contains_form(self, form_vec) -> bool:
        return linalg.solve(self.basis_matrix().T,
                            np.asarray(form_vec, dtype=np.int64), self.field) is not None

    def subspace_with_vanishing(self, pt, extra_order: int) -> "LinearSeries":
        """Sections vanishing to order >= extra_order at pt (beyond forced order)."""
        rows = self.jet(pt, extra_order)
        ker = linalg.kernel_basis(np.array(rows, dtype=np.int64), self.field, ncols=self.dim)
        B = self.basis_matrix()
        p = self.field.p
        new_basis = [np.asarray(c, dtype=np.int64) @ B % p for c in ker]
        new_minus = self.minus + divisor((pt, extra_order))
        return LinearSeries(self.model, self.h_degree, new_basis, self.lines,
                            self.plus, new_minus, self.kind, label=self.label)

    def denominator_forms(self):
        """The line forms (as (vec, degree) pairs) making up the denominator."""
        f = self.field
        out = []
        for line in self.lines:
            n = _cross(line.U, line.V, f)
            out.append((polys.form_vec({(1, 0, 0): n[0], (0, 1, 0): n[1], (0, 0, 1): n[2]}, 1, f), 1))
        return out


# ---------------------------------------------------------------------------
# space constructors


def _f_multiple_vectors(model, target_deg):
    f = model.field
    k = target_deg - model.degree
    if k < 0:
        return []
    fdict = polys.vec_form(model.f, model.degree, f)
    out = []
    for mon in polys.monomials3(k):
        shifted = {(mon[0] + m[0], mon[1] + m[1], mon[2] + m[2]): c for m, c in fdict.items()}
        out.append(polys.form_vec(shifted, target_deg, f))
    return out


def _quotient_mod_f(model, raw_basis, target_deg):
    fmul = _f_multiple_vectors(model, target_deg)
    if not fmul or not raw_basis:
        return raw_basis
    field = model.field
    E0 = linalg.row_space_echelon(np.array(fmul, dtype=np.int64), field)
    stacked = np.vstack([E0, np.array(raw_basis, dtype=np.int64)])
    R, pivots = linalg.rref(stacked, field)
    r0 = len(E0)
    total = len(pivots)
    return [R[i].copy() for i in range(r0, total)]


def _build_space(model, cover, anchors, plus, minus, kind, label=None):
    f = model.field
    h_degree = (model.degree - 3) + len(cover)
    lines = list(cover) + list(anchors)
    ncols = polys.dim_forms3(h_degree)
    rows = []
    sing_extra = {}
    for line in cover:
        for spt, _, _ in line.sing_hits:
            sing_extra[spt] = sing_extra.get(spt, 0) + 1
    for pt, m in model.singularities:
        k = sing_extra.get(pt, 0)
        if k > 1:
            raise DegenerateConfiguration("more than one cover line through a singular point")
        rows.extend(polys.multiplicity_rows(h_degree, pt, m - 1 + k, f))
    for line in lines:
        rows.extend(line.divisibility_rows(h_degree))
    for pt, m in minus.parts:
        # pt must not sit on any auxiliary line
        for line in lines:
            if line.t_of(pt) is not None:
                raise DegenerateConfiguration("vanishing point lies on an auxiliary line")
        rows.extend(model.curve_order_rows(h_degree, pt, m))
    if rows:
        A = np.array(rows, dtype=np.int64)
        raw = linalg.kernel_basis(A, f, ncols=ncols)
    else:
        raw = [v for v in np.eye(ncols, dtype=np.int64)]
    basis = _quotient_mod_f(model, raw, h_degree)
    return LinearSeries(model, h_degree, basis, lines, plus, minus, kind, label=label)


def adjoint_space(model: CurveModel, k: int) -> LinearSeries:
    """Degree-k forms vanishing to order m_i - 1 at each singular point."""
    f = model.field
    rows = []
    for pt, m in model.singularities:
        rows.extend(polys.multiplicity_rows(k, pt, m - 1, f))
    ncols = polys.dim_forms3(k)
    if rows:
        raw = linalg.kernel_basis(linalg.as_matrix(rows, f) if not f.characteristic
                                  else np.array(rows, dtype=np.int64), f, ncols=ncols)
    else:
        raw = [v for v in (np.eye(ncols, dtype=np.int64) if f.characteristic
                           else linalg.identity(ncols, f))]
    basis = _quotient_mod_f(model, raw, k) if f.characteristic else raw
    return LinearSeries(model, k, basis, [], divisor(), divisor(), kind="adjoint")


def canonical_series(model: CurveModel) -> LinearSeries:
    cached = getattr(model, "_canonical_series", None)
    if cached is None:
        cached = adjoint_space(model, model.degree - 3)
        if cached.dim != model.genus:
            raise CurveError(f"canonical series has dim {cached.dim} != genus {model.genus}")
        cached.label = "K"
        model._canonical_series = cached
    return cached


def rr_space(model: CurveModel, plus: DivisorOnCurve, minus: DivisorOnCurve,
             seed=0, check_rr=True) -> LinearSeries:
    """Exact basis of H^0(K + plus - minus)."""
    _validate_divisors(model, plus, minus)
    cover = cover_with_lines(model, plus, seed, forbidden_pts=minus.points()) if plus.parts else []
    series = _build_space(model, cover, [], plus, minus, kind="rr")
    if check_rr:
        deg = 2 * model.genus - 2 + plus.degree - minus.degree
        if deg > 2 * model.genus - 2:
            expected = deg - model.genus + 1
            if series.dim != expected:
                raise CurveError(
                    f"rr_space dimension {series.dim} != Riemann-Roch value {expected}")
    return series


def function_space(model: CurveModel, eff_plus: DivisorOnCurve, eff_minus: DivisorOnCurve,
                   seed=0) -> LinearSeries:
    """Exact basis of H^0(O(eff_plus - eff_minus)) as functions H/(G*A0)."""
    _validate_divisors(model, eff_plus, eff_minus)
    cover = cover_with_lines(model, eff_plus, seed, forbidden_pts=eff_minus.points()) \
        if eff_plus.parts else []
    anchors = anchor_lines(model)
    return _build_space(model, cover, anchors, eff_plus, eff_minus, kind="function")


def _validate_divisors(model, plus, minus):
    if not plus.is_effective() or not minus.is_effective():
        raise CurveError("plus and minus parts must be effective")
    if not plus.support_disjoint_from(minus):
        raise CurveError("plus and minus supports must be disjoint")
    for pt in plus.points() + minus.points():
        if model.is_singular_point(pt):
            raise CurveError(f"divisor point {pt} is a singular model point")
        if not model.is_smooth_point(pt):
            raise CurveError(f"divisor point {pt} not a smooth curve point")


# ---------------------------------------------------------------------------
# products of sections


def reduce_section_product(model, numerators, denominators, target_deg):
    """Solve H * prod(denominators) == prod(numerators) (mod f) for the unique
    form H of degree target_deg.  numerators/denominators: (vec, degree) pairs."""
    f = model.field
    p = f.p
    num, ndeg = _product(model, numerators)
    den, ddeg = _product(model, denominators)
    if target_deg + ddeg != ndeg:
        raise CurveError(f"degree mismatch in section product: "
                         f"target {target_deg} + den {ddeg} != num {ndeg}")
    total = target_deg + ddeg
    cols = []
    dden = polys.vec_form(den, ddeg, f)
    for mon in polys.monomials3(target_deg):
        shifted = {(mon[0] + m[0], mon[1] + m[1], mon[2] + m[2]): c for m, c in dden.items()}
        cols.append(polys.form_vec(shifted, total, f))
    fcols = _f_multiple_vectors(model, total)
    A = np.array(cols + fcols, dtype=np.int64).T
    sol = linalg.solve(A, np.asarray(num, dtype=np.int64), f)
    if sol is None:
        raise DegenerateConfiguration("section product does not reduce (bad reduction?)")
    return np.asarray(sol[: polys.dim_forms3(target_deg)], dtype=np.int64) % p


def _product(model, factors):
    f = model.field
    vec = polys.form_vec({(0, 0, 0): f.one}, 0, f)
    deg = 0
    for v, dg in factors:
        vec = polys.form_mul(vec, deg, v, dg, f)
        deg += dg
    return vec, deg


# ---------------------------------------------------------------------------
# point sampling and canonical embedding


def _roots_of_x_slice(model, x0):
    p = model.field.p
    d = model.degree
    coeffs = np.zeros(d + 1, dtype=np.int64)
    fdict = polys.vec_form(model.f, d, model.field)
    xpow = [pow(x0, e, p) for e in range(d + 1)]
    for (i, j, k), c in fdict.items():
        coeffs[j] = (coeffs[j] + int(c) * xpow[i]) % p
    return polys.upoly_roots(coeffs, p)


def sample_points(model: CurveModel, n: int, seed) -> list:
    """n distinct smooth affine points with pairwise distinct canonical images."""
    f = model.field
    if not f.characteristic:
        raise CurveError("point sampling requires finite-field mode")
    p = f.p
    if n == 0:
        return []
    if n > p + 1:
        raise CurveError("requested more points than the field can carry")
    rng = random.Random(f"{seed}:points")
    K = canonical_series(model)
    seen_images = set()
    points = []
    attempts = 0
    while len(points) < n:
        attempts += 1
        if attempts > 400 * n + 2000:
            raise CurveError("not enough smooth points; use a larger prime")
        x0 = rng.randrange(p)
        for y0 in _roots_of_x_slice(model, x0):
            pt = (x0, y0, 1)
            if model.is_singular_point(pt) or not model.is_smooth_point(pt):
                continue
            img = canonical_image(model, pt)
            key = _proj_key(img, p)
            if key in seen_images:
                continue
            seen_images.add(key)
            points.append(pt)
            if len(points) == n:
                break
    return points


def canonical_image(model: CurveModel, pt):
    """Coordinates of the canonical embedding at a smooth point."""
    if model.is_singular_point(pt):
        raise CurveError("canonical image undefined at a singular model point")
    K = canonical_series(model)
    vec = K.point_functional(pt)
    if not vec.any():
        raise CurveError("canonical image vanished (base point?)")
    return vec


def canonical_jet(model: CurveModel, pt, count=2):
    """Canonical image plus derivative vectors along the local parameter."""
    if model.is_singular_point(pt):
        raise CurveError("canonical jet undefined at a singular model point")
    return canonical_series(model).jet(pt, count)


def _proj_key(vec, p):
    vec = np.asarray(vec, dtype=np.int64) % p
    nz = np.nonzero(vec)[0]
    inv = pow(int(vec[nz[0]]), p - 2, p)
    return tuple((vec * inv) % p)


def collinear_in_canonical(model, pts) -> bool:
    rows = [canonical_image(model, q) for q in pts]
    return linalg.rank(np.array(rows, dtype=np.int64), model.field) <= 2


# ---------------------------------------------------------------------------
# split lines: trigonal fibers and Sing-Theta proxies


def split_lines_through(model: CurveModel, base_pt, count, seed, base_mult=None):
    """Lines through base_pt whose residual intersection with the curve is a
    set of distinct rational smooth points; returns a list of point-tuples."""
    f = model.field
    p = f.p
    rng = random.Random(f"{seed}:fibers")
    found = []
    attempts = 0
    while len(found) < count:
        attempts += 1
        if attempts > 20000:
            raise DegenerateConfiguration("no fully split line found; try another seed/prime")
        direction = (rng.randrange(p), rng.randrange(p), 1)
        try:
            line = AuxLine(model, base_pt, direction)
        except DegenerateConfiguration:
            continue
        t0 = line.t_of(base_pt)
        res = line.fline
        sub = 0
        if t0 is not None:
            mult = line.contact_at(t0)
            res, _ = polys.upoly_divmod(res, _linear_power(t0, mult, p), p)
            sub = mult
        expected = model.degree - sub
        if polys.upoly_deg(res) != expected or not polys.upoly_is_squarefree(res, p):
            continue
        roots = polys.upoly_roots(res, p)
        if len(roots) != expected:
            continue
        pts = []
        ok = True
        for t in roots:
            q = tuple((line.U[i] + t * line.V[i]) % p for i in range(3))
            if q[2] == 0:
                ok = False
                break
            zinv = pow(int(q[2]), p - 2, p)
            q = (q[0] * zinv % p, q[1] * zinv % p, 1)
            if model.is_singular_point(q) or not model.is_smooth_point(q):
                ok = False
                break
            pts.append(q)
        if ok:
            found.append(tuple(pts))
    return found


def trigonal_pencil_point(model: CurveModel):
    """The singular point of multiplicity d-3 whose pencil of lines cuts the g^1_3."""
    for pt, m in model.singularities:
        if model.degree - m == 3:
            return pt
    raise CurveError("model has no (d-3)-fold point; not a trigonal plane realization")


def trigonal_fibers(model: CurveModel, count, seed):
    return split_lines_through(model, trigonal_pencil_point(model), count, seed)


def sing_theta_proxy(model: CurveModel, seed) -> DivisorOnCurve:
    """An effective degree g-1 divisor with h^0 = 2: residual points of a split
    line through a singular point (or through a sampled point when smooth),
    padded with generic sampled points."""
    g = model.genus
    if model.singularities:
        base = max(model.singularities, key=lambda sm: sm[1])[0]
        fiber = split_lines_through(model, base, 1, seed)[0]
    else:
        anchor = sample_points(model, 1, f"{seed}:anchor")[0]
        fiber = split_lines_through(model, anchor, 1, seed)[0]
        fiber = tuple(q for q in fiber if q != anchor)
    need = g - 1 - len(fiber)
    if need < 0:
        raise DegenerateConfiguration("proxy fiber too long for this genus")
    pads = []
    k = 0
    while len(pads) < need:
        cand = sample_points(model, need + k + 4, f"{seed}:pad")
        pads = [q for q in cand if q not in fiber][:need]
        k += 4
    parts = [(q, 1) for q in fiber] + [(q, 1) for q in pads]
    return DivisorOnCurve(parts)
