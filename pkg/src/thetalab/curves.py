"""Plane curve models with ordinary singularities.

Genus bookkeeping, adjoint differentials, Riemann-Roch spaces by the
Brill-Noether residual method, point sampling and canonical embedding data.
Everything point-dependent runs over a prime field; dimension-only
computations also run over Q.

A smooth curve point is always kept in the affine chart z = 1 (sampling
rejects the line at infinity, which costs nothing over a large prime field).
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from . import linalg, polys
from .fields import PrimeField, QQ, field_from_descriptor, field_descriptor


class CurveError(ValueError):
    pass


class DegenerateConfiguration(RuntimeError):
    """A seeded geometric choice hit a non-generic configuration; resample."""


# ---------------------------------------------------------------------------
# divisors


class DivisorOnCurve:
    """Formal sum of smooth curve points with integer multiplicities."""

    def __init__(self, parts):
        merged = {}
        for pt, m in parts:
            pt = tuple(int(c) for c in pt)
            if m:
                merged[pt] = merged.get(pt, 0) + m
        self.parts = [(pt, m) for pt, m in merged.items() if m]

    @property
    def degree(self):
        return sum(m for _, m in self.parts)

    def points(self):
        return [pt for pt, _ in self.parts]

    def is_effective(self):
        return all(m > 0 for _, m in self.parts)

    def support_disjoint_from(self, other) -> bool:
        return not (set(self.points()) & set(other.points()))

    def __add__(self, other):
        return DivisorOnCurve(self.parts + other.parts)

    def __repr__(self):
        return "Div(" + " + ".join(f"{m}*{pt}" for pt, m in self.parts) + ")"


def divisor(*parts):
    return DivisorOnCurve(list(parts))


# ---------------------------------------------------------------------------
# the model


class CurveModel:
    """Plane curve f = 0 of degree d with ordinary singularities over an exact field."""

    def __init__(self, field, degree, coeffs: dict, singularities, genus=None, tags=(),
                 name=None, check=True):
        self.field = field
        self.degree = degree
        self.f = polys.form_vec(coeffs, degree, field)
        self.singularities = [(tuple(field.normalize(c) for c in pt), int(m))
                              for pt, m in singularities]
        self.tags = tuple(tags)
        self.name = name
        d = degree
        delta = sum(m * (m - 1) // 2 for _, m in self.singularities)
        self.genus = (d - 1) * (d - 2) // 2 - delta
        if genus is not None and genus != self.genus:
            raise CurveError(f"declared genus {genus} != computed {self.genus}")
        if check:
            self.validate()
        self._canonical_basis = None
        self._local_series_cache = {}

    # -- validation ---------------------------------------------------------

    def validate(self):
        f = self.field
        if self.genus < 3:
            raise CurveError(f"genus {self.genus} < 3 unsupported (canonical-ideal use)")
        for pt, m in self.singularities:
            if m < 2:
                raise CurveError(f"listed singular point {pt} has multiplicity {m} < 2")
            self._check_multiplicity_exact(pt, m)
            self._check_ordinary(pt, m)

    def _check_multiplicity_exact(self, pt, m):
        for rows_order in range(m):
            for row in _order_rows(self.degree, pt, rows_order, self.field):
                if not self.field.is_zero(_dot(row, self.f, self.field)):
                    raise CurveError(f"point {pt} does not have multiplicity >= {m}")
        for row in _order_rows(self.degree, pt, m, self.field):
            if not self.field.is_zero(_dot(row, self.f, self.field)):
                return
        raise CurveError(f"point {pt} has multiplicity > declared {m}")

    def _check_ordinary(self, pt, m):
        """The degree-m tangent cone at pt must be squarefree (distinct tangents)."""
        F = self.affine_at(pt)
        # tangent cone = lowest-degree part; squarefree as binary form
        cone = {}
        for (i, j), c in F.items():
            if i + j == m:
                cone[(i, j)] = c
        if len(cone) == 0:
            raise CurveError(f"vanishing tangent cone at {pt}")
        # dehomogenize the binary form along both charts and gcd-check
        if self.field.characteristic:
            p = self.field.p
            a = np.zeros(m + 1, dtype=np.int64)
            for (i, j), c in cone.items():
                a[j] = c % p
            if polys.upoly_deg(a) < 1:
                # cone is c*x^m (all tangents equal) unless m == deg of other chart
                raise CurveError(f"non-ordinary singularity at {pt}: repeated tangent")
            full_square_free = polys.upoly_is_squarefree(a, p) if polys.upoly_deg(a) == m else (
                polys.upoly_is_squarefree(a, p) and polys.upoly_deg(a) >= m - 1)
            if polys.upoly_deg(a) < m - 1 or not polys.upoly_is_squarefree(a, p):
                raise CurveError(f"non-ordinary singularity at {pt}: repeated tangent")
        else:
            # char 0: check the binary form has no repeated roots via gcd with derivative
            xs = sorted(cone)
            # resultant-free check: convert to univariate in t = y/x plus x-factor count
            a = [Fraction(0)] * (m + 1)
            for (i, j), c in cone.items():
                a[j] = c
            dega = max((k for k, c in enumerate(a) if c != 0), default=-1)
            if dega < m - 1:
                raise CurveError(f"non-ordinary singularity at {pt}: repeated tangent")
            if not _frac_squarefree(a[: dega + 1]):
                raise CurveError(f"non-ordinary singularity at {pt}: repeated tangent")

    def affine_at(self, pt) -> dict:
        """Affine expansion of f around pt in a chart where pt is finite:
        returns dict {(i, j): coeff} of f(pt + (u, v, 0-chart...)) with local
        coordinates along the two coordinate directions of the chosen chart."""
        f = self.field
        x0, y0, z0 = pt
        if not f.is_zero(z0):
            inv = f.inv(z0)
            base = (f.mul(x0, inv), f.mul(y0, inv))
            dirs = ((f.one, f.zero, f.zero), (f.zero, f.one, f.zero))
            origin = (base[0], base[1], f.one)
        elif not f.is_zero(y0):
            inv = f.inv(y0)
            base = (f.mul(x0, inv), f.mul(z0, inv))
            dirs = ((f.one, f.zero, f.zero), (f.zero, f.zero, f.one))
            origin = (base[0], f.one, base[1])
        else:
            inv = f.inv(x0)
            base = (f.mul(y0, inv), f.mul(z0, inv))
            dirs = ((f.zero, f.one, f.zero), (f.zero, f.zero, f.one))
            origin = (f.one, base[0], base[1])
        out = {}
        n = self.degree
        for total in range(n + 1):
            for a in range(total + 1):
                b = total - a
                val = _directional_derivative(self.f, n, origin, dirs[0], dirs[1], a, b, self.field)
                if not f.is_zero(val):
                    denom = 1
                    for t in range(a):
                        denom *= t + 1
                    for t in range(b):
                        denom *= t + 1
                    out[(a, b)] = f.div(val, f.normalize(denom))
        return out

    # -- field changes ------------------------------------------------------

    def to_field(self, new_field) -> "CurveModel":
        """Reduce an integral/rational model into another field."""
        coeffs = polys.vec_form(self.f, self.degree, self.field)
        conv = {m: _convert_scalar(c, self.field, new_field) for m, c in coeffs.items()}
        sings = [(tuple(_convert_scalar(c, self.field, new_field) for c in pt), m)
                 for pt, m in self.singularities]
        return CurveModel(new_field, self.degree, conv, sings, genus=self.genus,
                          tags=self.tags, name=self.name)

    # -- basic geometry -----------------------------------------------------

    def on_curve(self, pt) -> bool:
        return self.field.is_zero(polys.eval_form(self.f, self.degree, pt, self.field))

    def is_singular_point(self, pt) -> bool:
        pt = tuple(self.field.normalize(c) for c in pt)
        for s, _ in self.singularities:
            if _proj_equal(s, pt, self.field):
                return True
        return False

    def partials_at(self, pt):
        f = self.field
        return [_dot(polys.derivative_row(self.degree, pt, tuple(1 if t == v else 0 for t in range(3)), f),
                     self.f, f) for v in range(3)]

    def is_smooth_point(self, pt) -> bool:
        if not self.on_curve(pt):
            return False
        return not all(self.field.is_zero(v) for v in self.partials_at(pt))

    # -- local series -------------------------------------------------------

    def local_series(self, pt, order: int):
        """Truncated parametrization (x(t), y(t)) of the branch at a smooth
        affine point (z = 1), to t^order inclusive.  The local parameter is
        x - x0 where f_y != 0, else y - y0."""
        key = (tuple(pt), order)
        if key in self._local_series_cache:
            return self._local_series_cache[key]
        f = self.field
        x0, y0, z0 = (f.normalize(c) for c in pt)
        if f.is_zero(z0):
            raise CurveError("local series requires an affine (z != 0) point")
        inv = f.inv(z0)
        x0, y0 = f.mul(x0, inv), f.mul(y0, inv)
        fx, fy, _ = self.partials_at((x0, y0, f.one))
        if not f.is_zero(fy):
            chart = "x"
        elif not f.is_zero(fx):
            chart = "y"
        else:
            raise CurveError(f"singular point {pt} has no local series")
        N = order
        one_t = [f.zero, f.one] + [f.zero] * max(0, N - 1)
        if chart == "x":
            xs = [x0] + one_t[1:]
            ys = self._implicit_series(x0, y0, N, swap=False)
        else:
            ys_param = [y0] + one_t[1:]
            xs = self._implicit_series(x0, y0, N, swap=True)
            ys = ys_param
        result = (chart, polys.series_trunc(xs, N, f), polys.series_trunc(ys, N, f))
        self._local_series_cache[key] = result
        return result

    def _implicit_series(self, x0, y0, N, swap: bool):
        """Solve f(x0 + t, y(t)) = 0 (or the swapped version) to order N."""
        f = self.field
        F = polys.vec_form(self.f, self.degree, f)
        ser = [y0] + [f.zero] * N
        # derivative of f wrt the solved variable at the point
        solved_var = 0 if swap else 1
        pt = (x0, y0, f.one)
        dv = self.partials_at(pt)[solved_var]
        dv_inv = f.inv(dv)
        for k in range(1, N + 1):
            if swap:
                xs = polys.series_trunc(ser, k, f)
                ys = polys.series_trunc([y0, f.one], k, f)
            else:
                xs = polys.series_trunc([x0, f.one], k, f)
                ys = polys.series_trunc(ser, k, f)
            val = _eval_form_series(F, self.degree, xs, ys, k, f)
            ck = f.neg(f.mul(val[k], dv_inv))
            ser[k] = ck
        return ser

    def form_series_at(self, vec, n, pt, order: int):
        """Series of a degree-n form along the local parametrization at a
        smooth affine point, to t^order inclusive."""
        chart, xs, ys = self.local_series(pt, order)
        d = polys.vec_form(vec, n, self.field)
        return _eval_dict_series(d, xs, ys, order, self.field)

    def curve_order_rows(self, n, pt, order: int):
        """Condition rows: coefficients of t^0..t^(order-1) of a degree-n form
        along the branch at pt (exact vanishing-order conditions)."""
        chart, xs, ys = self.local_series(pt, order - 1 if order > 0 else 0)
        f = self.field
        rows = []
        mons = polys.monomials3(n)
        series_per_mon = []
        N = order - 1
        powx = _series_powers(xs, n, N, f)
        powy = _series_powers(ys, n, N, f)
        for (i, j, k) in mons:
            s = polys.series_mul(powx[i], powy[j], N, f)
            series_per_mon.append(s)
        for l in range(order):
            if f.characteristic:
                rows.append(np.array([int(s[l]) for s in series_per_mon], dtype=np.int64))
            else:
                rows.append([s[l] for s in series_per_mon])
        return rows

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"field {field_descriptor(self.field)}", f"degree {self.degree}"]
        coeffs = polys.vec_form(self.f, self.degree, self.field)
        for (i, j, k) in polys.monomials3(self.degree):
            if (i, j, k) in coeffs:
                lines.append(f"coeff {i} {j} {k} {_scalar_str(coeffs[(i, j, k)])}")
        for pt, m in self.singularities:
            sx, sy, sz = (_scalar_str(c) for c in pt)
            lines.append(f"singular {sx} {sy} {sz} {m}")
        lines.append(f"genus {self.genus}")
        for tag in self.tags:
            lines.append(f"tag {tag}")
        if self.name:
            lines.append(f"name {self.name}")
        return "\n".join(lines) + "\n"


def _convert_scalar(c, old_field, new_field):
    if old_field.characteristic:
        if new_field.characteristic == old_field.characteristic:
            return c
        raise CurveError("cannot move scalars between distinct prime fields")
    return new_field.normalize(c)


def _scalar_str(c):
    c = Fraction(c) if not isinstance(c, int) and not isinstance(c, np.integer) else c
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _proj_equal(a, b, field):
    rows = [list(a), list(b)]
    return linalg.rank(linalg.as_matrix(rows, field), field) == 1


def _dot(row, vec, field):
    if field.characteristic:
        return int(np.dot(np.asarray(row, dtype=np.int64), np.asarray(vec, dtype=np.int64)) % field.p)
    total = field.zero
    for a, b in zip(row, vec):
        total = field.add(total, field.mul(a, b))
    return total


def _order_rows(n, pt, order, field):
    rows = []
    for a in range(order, -1, -1):
        for b in range(order - a, -1, -1):
            rows.append(polys.derivative_row(n, pt, (a, b, order - a - b), field))
    return rows


def _directional_derivative(vec, n, origin, d1, d2, a, b, field):
    """(d_{d1})^a (d_{d2})^b f evaluated at origin (for affine expansions)."""
    cur = polys.vec_form(vec, n, field)
    deg = n
    for _ in range(a):
        cur = _dir_diff(cur, deg, d1, field)
        deg -= 1
    for _ in range(b):
        cur = _dir_diff(cur, deg, d2, field)
        deg -= 1
    v = polys.form_vec(cur, deg, field) if isinstance(cur, dict) else cur
    return polys.eval_form(v, deg, origin, field)


def _dir_diff(form, deg, direction, field):
    if isinstance(form, dict):
        form = polys.form_vec(form, deg, field)
    out = None
    for var in range(3):
        if field.is_zero(direction[var]):
            continue
        dv = polys.form_derivative(form, deg, var, field)
        dv = polys.form_vec({m: field.mul(c, direction[var])
                             for m, c in polys.vec_form(dv, deg - 1, field).items()}, deg - 1, field)
        if out is None:
            out = dv
        else:
            if field.characteristic:
                out = (np.asarray(out) + np.asarray(dv)) % field.p
            else:
                out = [field.add(x, y) for x, y in zip(out, dv)]
    if out is None:
        out = polys.form_vec({}, deg - 1, field)
    return out


def _series_powers(s, max_e, N, field):
    out = [[field.one] + [field.zero] * N]
    for e in range(1, max_e + 1):
        out.append(polys.series_mul(out[-1], s, N, field))
    return out


def _eval_form_series(Fdict, n, xs, ys, N, field):
    return _eval_dict_series(Fdict, xs, ys, N, field)


def _eval_dict_series(d, xs, ys, N, field):
    powx = {}
    powy = {}
    out = [field.zero] * (N + 1)
    for (i, j, k), c in d.items():
        if i not in powx:
            powx[i] = polys.series_pow(xs, i, N, field)
        if j not in powy:
            powy[j] = polys.series_pow(ys, j, N, field)
        term = polys.series_mul(powx[i], powy[j], N, field)
        for l in range(N + 1):
            out[l] = field.add(out[l], field.mul(c, term[l]))
    return out


# ---------------------------------------------------------------------------
# curve file format


def parse_curve(text: str, check=True) -> CurveModel:
    field = None
    degree = None
    coeffs = {}
    sings = []
    genus = None
    tags = []
    name = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        if key == "field":
            field = field_from_descriptor(parts[1])
        elif key == "degree":
            degree = int(parts[1])
        elif key == "coeff":
            i, j, k = (int(t) for t in parts[1:4])
            if i + j + k != degree:
                raise CurveError(f"coefficient {i},{j},{k} not of degree {degree}")
            coeffs[(i, j, k)] = _parse_scalar(parts[4])
        elif key == "singular":
            pt = tuple(_parse_scalar(t) for t in parts[1:4])
            sings.append((pt, int(parts[4])))
        elif key == "genus":
            genus = int(parts[1])
        elif key == "tag":
            tags.append(parts[1])
        elif key == "name":
            name = parts[1]
        else:
            raise CurveError(f"unknown directive {key!r} in curve file")
    if field is None or degree is None or not coeffs:
        raise CurveError("curve file missing field/degree/coefficients")
    return CurveModel(field, degree, coeffs, sings, genus=genus, tags=tags,
                      name=name, check=check)


def _parse_scalar(tok: str):
    if "/" in tok:
        a, b = tok.split("/")
        return Fraction(int(a), int(b))
    return int(tok)


def load_curve(path, field=None, check=True) -> CurveModel:
    with open(path, "r", encoding="utf-8") as fh:
        model = parse_curve(fh.read(), check=field is None and check)
    if field is not None:
        model = model.to_field(field)
        if check:
            model.validate()
    return model
