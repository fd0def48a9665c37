"""Affine changes of variables taking a critical-set conic to a standard form.

For a map F and affine h, k, the conjugate G = k o F o h^{-1} has critical
set h(J0) and critical image k(J1).  `normalizing_transform` builds h so the
conic pulled back through h^{-1} is a constant multiple of the standard form
for its class; `normalized_map` additionally picks a diagonal range scaling k
that makes the conic of G exactly the standard form.

The constructions stay in exact rational arithmetic whenever no irrational
square root is forced (axis-aligned ellipses/hyperbolas, every parabola, all
rational line configurations), so downstream closed-form cusp data can stay
exact on those inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .conic import (ConicClass, ConicType, classify_conic, conic_center,
                    parabola_vertex, principal_frame, _quadratic_direction_roots)
from .core import (AffineTransform, ConicSection, NotNormalizable, Number,
                   Point, QuadMap, RootFindingFailed, is_exact, scalar_sqrt)
from .jacobian import jacobian_conic

STANDARD_FORMS: dict[ConicType, ConicSection] = {
    ConicType.REAL_ELLIPSE: ConicSection(1, 0, 1, 0, 0, -1),
    ConicType.HYPERBOLA: ConicSection(0, 1, 0, 0, 0, -1),
    ConicType.PARABOLA: ConicSection(1, 0, 0, 0, -1, 0),
    ConicType.INTERSECTING_LINES: ConicSection(0, 1, 0, 0, 0, 0),
    ConicType.DISTINCT_PARALLEL_LINES: ConicSection(1, 0, 0, 0, 0, -1),
    ConicType.COINCIDENT_LINES: ConicSection(1, 0, 0, 0, 0, 0),
    ConicType.SINGLE_LINE: ConicSection(0, 0, 0, 1, 0, 0),
}


def normalizing_transform(conic: ConicSection,
                          cls: ConicClass | None = None
                          ) -> tuple[AffineTransform, Number]:
    """Affine h and multiplier m with conic(h^{-1}(z)) = m * standard_form(z)."""
    if cls is None:
        cls = classify_conic(conic)
    tag = cls.tag
    if tag not in STANDARD_FORMS:
        raise NotNormalizable(f"{tag.value} has no standard form")

    if tag is ConicType.REAL_ELLIPSE:
        return _ellipse_transform(conic, cls)
    if tag is ConicType.HYPERBOLA:
        return _hyperbola_transform(conic, cls)
    if tag is ConicType.PARABOLA:
        return _parabola_transform(conic)
    if tag is ConicType.INTERSECTING_LINES:
        return _intersecting_transform(conic, cls)
    if tag is ConicType.DISTINCT_PARALLEL_LINES:
        return _parallel_transform(conic, cls)
    if tag is ConicType.COINCIDENT_LINES:
        return _coincident_transform(conic, cls)
    return _single_line_transform(conic)


def _frame_vectors(conic: ConicSection):
    lam1, lam2, theta = principal_frame(conic)
    if theta == 0.0:
        e1, e2 = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    else:
        e1 = (math.cos(theta), math.sin(theta))
        e2 = (-e1[1], e1[0])
    return lam1, lam2, e1, e2


def _ellipse_transform(conic, cls):
    center = cls.center
    lam1, lam2, e1, e2 = _frame_vectors(conic)
    f0 = conic.evaluate(center.x, center.y)
    r1 = scalar_sqrt(-f0 / lam1) if is_exact(lam1) else math.sqrt(float(-f0) / lam1)
    r2 = scalar_sqrt(-f0 / lam2) if is_exact(lam2) else math.sqrt(float(-f0) / lam2)
    col1 = (r1 * e1[0], r1 * e1[1])
    col2 = (r2 * e2[0], r2 * e2[1])
    h_inv = AffineTransform.from_columns(col1, col2, (center.x, center.y))
    return h_inv.inverse(), -f0


def _hyperbola_transform(conic, cls):
    center = cls.center
    lam1, lam2, e1, e2 = _frame_vectors(conic)
    f0 = conic.evaluate(center.x, center.y)
    # pick the eigendirection whose eigenvalue has the sign of -f0
    if (float(lam1) > 0) == (float(-f0) > 0):
        lam_p, dir_p, lam_m, dir_m = lam1, e1, lam2, e2
    else:
        lam_p, dir_p, lam_m, dir_m = lam2, e2, lam1, e1
    a2 = -f0 / (4 * lam_p)
    a = scalar_sqrt(a2) if is_exact(a2) else math.sqrt(float(a2))
    b2 = -lam_p * a2 / lam_m if is_exact(a2) and is_exact(lam_m) \
        else -float(lam_p) * float(a2) / float(lam_m)
    b = scalar_sqrt(b2) if is_exact(b2) else math.sqrt(float(b2))
    col1 = (a * dir_p[0] + b * dir_m[0], a * dir_p[1] + b * dir_m[1])
    col2 = (a * dir_p[0] - b * dir_m[0], a * dir_p[1] - b * dir_m[1])
    h_inv = AffineTransform.from_columns(col1, col2, (center.x, center.y))
    return h_inv.inverse(), -f0


def _parabola_transform(conic):
    """Exact rational path: no square roots are needed for a parabola."""
    v = parabola_vertex(conic)
    A, B, C = conic.A, conic.B, conic.C
    if A != 0:
        n_vec = (Fraction(1), B / (2 * A))
        d = (B, -2 * A)
    else:
        n_vec = (B / (2 * C), Fraction(1))
        d = (-2 * C, B)
    mult = (A * n_vec[0] * n_vec[0] + B * n_vec[0] * n_vec[1]
            + C * n_vec[1] * n_vec[1])
    gx, gy = conic.gradient(v.x, v.y)
    slope = gx * d[0] + gy * d[1]
    w = (-mult * d[0] / slope, -mult * d[1] / slope)
    h_inv = AffineTransform.from_columns(n_vec, w, (v.x, v.y))
    return h_inv.inverse(), mult


def _intersecting_transform(conic, cls):
    center = cls.center
    dirs = _quadratic_direction_roots(conic)
    d1, d2 = dirs[0], dirs[1]
    # bilinear form of the quadratic part on the two null directions
    A, B, C = conic.A, conic.B, conic.C
    bil = (A * d1[0] * d2[0]
           + B * (d1[0] * d2[1] + d1[1] * d2[0]) / 2
           + C * d1[1] * d2[1])
    h_inv = AffineTransform.from_columns(d1, d2, (center.x, center.y))
    return h_inv.inverse(), 2 * bil


def _parallel_transform(conic, cls):
    A, B, C, D, E, F = conic.coeffs()
    if A != 0:
        p, q, r = 2 * A, B, D
        gap2 = D * D - 4 * A * F
        kappa_den = 4 * A
    else:
        p, q, r = B, 2 * C, E
        gap2 = E * E - 4 * C * F
        kappa_den = 4 * C
    g = scalar_sqrt(gap2) if is_exact(gap2) else math.sqrt(float(gap2))
    # h: z1 = (p x + q y + r)/g, z2 = (-q x + p y)/g
    h = AffineTransform(p / g, q / g, -q / g, p / g, r / g, 0 * g)
    return h, gap2 / kappa_den


def _coincident_transform(conic, cls):
    A, B, C, D, E, F = conic.coeffs()
    if A != 0:
        p, q, r = 2 * A, B, D
        kappa = A / (p * p)
    else:
        p, q, r = B, 2 * C, E
        kappa = C / (q * q)
    s = p if p != 0 else q
    h = AffineTransform(p / s, q / s, -q / s, p / s, r / s, 0 * s)
    return h, kappa * s * s


def _single_line_transform(conic):
    D, E, F = conic.D, conic.E, conic.F
    s = D if D != 0 else E
    h = AffineTransform(D / s, E / s, -E / s, D / s, F / s, 0 * s)
    return h, s


# ---------------------------------------------------------------------------
# Map conjugation
# ---------------------------------------------------------------------------

def _substitute(coeffs, t: AffineTransform):
    """Coefficient vector of p(T(z)) for a quadratic component p."""
    c0, c1, c2, c3, c4, c5 = coeffs
    m00, m01, m10, m11, t0, t1 = (t.m00, t.m01, t.m10, t.m11, t.t0, t.t1)
    out = [0] * 6
    rows = (
        (c0, (m00 * m00, 2 * m00 * m01, m01 * m01,
              2 * m00 * t0, 2 * m01 * t0, t0 * t0)),
        (c1, (m00 * m10, m00 * m11 + m01 * m10, m01 * m11,
              m00 * t1 + m10 * t0, m01 * t1 + m11 * t0, t0 * t1)),
        (c2, (m10 * m10, 2 * m10 * m11, m11 * m11,
              2 * m10 * t1, 2 * m11 * t1, t1 * t1)),
        (c3, (0, 0, 0, m00, m01, t0)),
        (c4, (0, 0, 0, m10, m11, t1)),
        (c5, (0, 0, 0, 0, 0, 1)),
    )
    for c, row in rows:
        if c == 0:
            continue
        for i, r in enumerate(row):
            out[i] = out[i] + c * r
    return tuple(out)


def conjugate_map(quadmap: QuadMap, h: AffineTransform,
                  k: AffineTransform) -> QuadMap:
    """The map k o F o h^{-1}, expanded back to twelve coefficients."""
    h_inv = h.inverse()
    pa = _substitute(quadmap.a, h_inv)
    pb = _substitute(quadmap.b, h_inv)
    ga = [k.m00 * x + k.m01 * y for x, y in zip(pa, pb)]
    gb = [k.m10 * x + k.m11 * y for x, y in zip(pa, pb)]
    ga[5] = ga[5] + k.t0
    gb[5] = gb[5] + k.t1
    return QuadMap(tuple(ga), tuple(gb))


@dataclass(frozen=True)
class NormalizedMap:
    """k o F o h^{-1} whose Jacobian conic is the standard form of its class."""

    map: QuadMap
    h: AffineTransform
    k: AffineTransform
    multiplier: Number
    tag: ConicType

    @property
    def is_exact(self) -> bool:
        return self.map.is_exact


def normalized_map(quadmap: QuadMap,
                   cls: ConicClass | None = None) -> NormalizedMap:
    conic = jacobian_conic(quadmap)
    if cls is None:
        cls = classify_conic(conic)
    h, mult = normalizing_transform(conic, cls)
    h_inv = h.inverse()
    scale = 1 / (mult * h_inv.det)
    k = AffineTransform.scaling(scale, 1)
    g = conjugate_map(quadmap, h, k)
    _check_standard(g, cls.tag)
    return NormalizedMap(g, h, k, mult, cls.tag)


def _check_standard(g: QuadMap, tag: ConicType, tol: float = 1e-10) -> None:
    got = jacobian_conic(g)
    want = STANDARD_FORMS[tag]
    scale = max(1.0, want.max_abs())
    for gc, wc in zip(got.coeffs(), want.coeffs()):
        if abs(float(gc) - float(wc)) > tol * scale:
            raise RootFindingFailed(
                f"normalized conic deviates from standard form: {got.coeffs()}")


def transport_point(transform: AffineTransform, p: Point) -> Point:
    """Apply an affine transform to a point (used to move payloads between
    original and normalized coordinates)."""
    return transform.apply(p)
