"""Exact classification of conic sections and extraction of geometric payloads.

The tag is a total function of exact sign tests on the coefficients, the
discriminant B^2-4AC and the 3x3 determinant; payloads that need square roots
(axis lengths, rotation angles, irrational line slopes) fall back to float64
and only feed numerical downstream steps, never the dispatch itself.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import (ConicSection, NotACurve, NotDegenerate, Number, Point,
                   is_exact, scalar_sqrt)
from .curves import Branch, BranchKind


class ConicType(str, enum.Enum):
    EMPTY = "Empty"
    SINGLE_POINT = "SinglePoint"
    REAL_ELLIPSE = "RealEllipse"
    IMAGINARY_ELLIPSE = "ImaginaryEllipse"
    HYPERBOLA = "Hyperbola"
    PARABOLA = "Parabola"
    INTERSECTING_LINES = "IntersectingLines"
    DISTINCT_PARALLEL_LINES = "DistinctParallelLines"
    COINCIDENT_LINES = "CoincidentLines"
    IMAGINARY_PARALLEL_LINES = "ImaginaryParallelLines"
    SINGLE_LINE = "SingleLine"
    WHOLE_PLANE = "WholePlane"


CURVE_TAGS = frozenset({
    ConicType.REAL_ELLIPSE, ConicType.HYPERBOLA, ConicType.PARABOLA,
    ConicType.INTERSECTING_LINES, ConicType.DISTINCT_PARALLEL_LINES,
    ConicType.COINCIDENT_LINES, ConicType.SINGLE_LINE,
})


@dataclass(frozen=True)
class Line:
    """The line a*x + b*y + c = 0; coefficients exact where no root appears."""

    a: Number
    b: Number
    c: Number

    def evaluate(self, x: Number, y: Number) -> Number:
        return self.a * x + self.b * y + self.c

    @property
    def exact(self) -> bool:
        return is_exact(self.a) and is_exact(self.b) and is_exact(self.c)

    def norm(self) -> float:
        return math.hypot(float(self.a), float(self.b))

    def unit_normal_offset(self) -> tuple[tuple[float, float], float]:
        n = self.norm()
        return ((float(self.a) / n, float(self.b) / n), float(self.c) / n)

    def direction(self) -> tuple[Number, Number]:
        return (-self.b, self.a)

    def some_point(self) -> Point:
        if self.a != 0:
            return Point(-self.c / self.a, 0 * self.c)
        return Point(0 * self.c, -self.c / self.b)

    def distance(self, x: float, y: float) -> float:
        return abs(float(self.evaluate(x, y))) / self.norm()

    def same_line(self, other: "Line", tol: float = 1e-9) -> bool:
        cross = float(self.a) * float(other.b) - float(self.b) * float(other.a)
        scale = self.norm() * other.norm()
        if abs(cross) > tol * scale:
            return False
        p = other.some_point()
        return self.distance(float(p.x), float(p.y)) <= tol * max(1.0, abs(float(p.x)) + abs(float(p.y)))


@dataclass(frozen=True)
class ConicClass:
    """Classification tag plus the geometric payload needed downstream."""

    tag: ConicType
    center: Optional[Point] = None
    semi_axes: Optional[tuple[Number, Number]] = None
    angle: Optional[float] = None
    vertex: Optional[Point] = None
    axis: Optional[tuple[Number, Number]] = None
    focal: Optional[float] = None
    lines: tuple[Line, ...] = ()


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def conic_center(c: ConicSection) -> Point:
    """Solve grad Q = 0; requires disc != 0 (exact rational center)."""
    det = 4 * c.A * c.C - c.B * c.B
    if det == 0:
        raise NotDegenerate("conic has no unique center")
    cx = (-2 * c.C * c.D + c.B * c.E) / det
    cy = (-2 * c.A * c.E + c.B * c.D) / det
    return Point(cx, cy)


def principal_frame(c: ConicSection) -> tuple[Number, Number, float]:
    """Eigenvalues (lam1 along angle theta, lam2 perpendicular) of the
    quadratic-part matrix [[A, B/2], [B/2, C]], with theta in (-pi/4, pi/4].

    Exact eigenvalues when B == 0 (theta = 0), float otherwise.
    """
    A, B, C = c.A, c.B, c.C
    if B == 0:
        return A, C, 0.0
    theta = 0.5 * math.atan2(float(B), float(A) - float(C))
    while theta > math.pi / 4:
        theta -= math.pi / 2
    while theta <= -math.pi / 4:
        theta += math.pi / 2
    ct, st = math.cos(theta), math.sin(theta)
    fA, fB, fC = float(A), float(B), float(C)
    lam1 = fA * ct * ct + fB * ct * st + fC * st * st
    lam2 = fA * st * st - fB * ct * st + fC * ct * ct
    return lam1, lam2, theta


def _ellipse_payload(c: ConicSection, center: Point) -> tuple[tuple, float]:
    lam1, lam2, theta = principal_frame(c)
    f0 = c.evaluate(center.x, center.y)
    r1 = scalar_sqrt(-f0 / lam1) if is_exact(f0) and is_exact(lam1) \
        else math.sqrt(-float(f0) / float(lam1))
    r2 = scalar_sqrt(-f0 / lam2) if is_exact(f0) and is_exact(lam2) \
        else math.sqrt(-float(f0) / float(lam2))
    return (r1, r2), theta


def _hyperbola_payload(c: ConicSection, center: Point) -> tuple[tuple, float]:
    """Semi-axes (transverse, conjugate) and the transverse-axis angle."""
    lam1, lam2, theta = principal_frame(c)
    f0 = c.evaluate(center.x, center.y)
    if float(-f0) / float(lam1) > 0:
        lam_t, lam_c, ang = lam1, lam2, theta
    else:
        lam_t, lam_c, ang = lam2, lam1, theta + math.pi / 2
    rt = scalar_sqrt(-f0 / lam_t) if is_exact(f0) and is_exact(lam_t) \
        else math.sqrt(-float(f0) / float(lam_t))
    rc = scalar_sqrt(f0 / lam_c) if is_exact(f0) and is_exact(lam_c) \
        else math.sqrt(float(f0) / float(lam_c))
    if ang > math.pi / 2:
        ang -= math.pi
    return (rt, rc), ang


def parabola_axis_direction(c: ConicSection) -> tuple[Number, Number]:
    """Rational direction of the parabola axis, oriented toward the opening."""
    d = (c.B, -2 * c.A) if c.A != 0 else (-2 * c.C, c.B)
    v = parabola_vertex(c)
    gx, gy = c.gradient(v.x, v.y)
    # the parabola opens away from the gradient at the vertex
    if gx * d[0] + gy * d[1] > 0:
        d = (-d[0], -d[1])
    return d


def parabola_vertex(c: ConicSection) -> Point:
    """Exact vertex: intersect the axis-parallel line {grad Q parallel to d}
    with the conic; the quadratic term drops out, leaving a linear solve."""
    d = (c.B, -2 * c.A) if c.A != 0 else (-2 * c.C, c.B)
    dx, dy = d
    # line l: (2A dy - B dx) x + (B dy - 2C dx) y + (D dy - E dx) = 0
    la = 2 * c.A * dy - c.B * dx
    lb = c.B * dy - 2 * c.C * dx
    lc = c.D * dy - c.E * dx
    if la != 0:
        p0 = (-lc / la, 0 * lc)
    else:
        p0 = (0 * lc, -lc / lb)
    # Q(p0 + s d) is linear in s because d is a null direction of the form
    q0 = c.evaluate(p0[0], p0[1])
    gx, gy = c.gradient(p0[0], p0[1])
    slope = gx * dx + gy * dy
    s = -q0 / slope
    return Point(p0[0] + s * dx, p0[1] + s * dy)


def _parabola_payload(c: ConicSection) -> tuple[Point, tuple, float]:
    v = parabola_vertex(c)
    d = parabola_axis_direction(c)
    dn = math.hypot(float(d[0]), float(d[1]))
    axis = (float(d[0]) / dn, float(d[1]) / dn)
    # curvature coefficient kappa in the vertex frame: y' = kappa x'^2
    nx, ny = axis[1], -axis[0]
    q2 = (float(c.A) * nx * nx + float(c.B) * nx * ny + float(c.C) * ny * ny)
    gx, gy = c.gradient(v.x, v.y)
    grad_norm = math.hypot(float(gx), float(gy))
    kappa = abs(q2) / grad_norm
    return v, axis, 1.0 / (4.0 * kappa)


def _quadratic_direction_roots(c: ConicSection) -> list[tuple[Number, Number]]:
    """Directions annihilating the quadratic form (disc > 0: two of them)."""
    A, B, C = c.A, c.B, c.C
    if A != 0:
        root = scalar_sqrt(c.disc)
        s1 = (-B + root) / (2 * A)
        s2 = (-B - root) / (2 * A)
        return [(s1, 1 if is_exact(s1) else 1.0), (s2, 1 if is_exact(s2) else 1.0)]
    if C != 0:
        # symmetric case: directions (1, s) with C s^2 + B s = 0
        return [(1, 0 * C), (-C / c.B if c.B != 0 else C, 1)] if c.B != 0 \
            else [(1, 0 * C)]
    # A = C = 0, B != 0: the two coordinate axes
    return [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]


def _line_through(point: Point, direction: tuple[Number, Number]) -> Line:
    dx, dy = direction
    return Line(dy, -dx, -dy * point.x + dx * point.y)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def classify_conic(c: ConicSection) -> ConicClass:
    """Exact classification of a rational conic into the twelve tags."""
    if not c.is_exact:
        raise TypeError("classification requires exact rational coefficients")
    A, B, C, D, E, F = c.coeffs()
    if A == 0 and B == 0 and C == 0:
        if D == 0 and E == 0:
            if F == 0:
                return ConicClass(ConicType.WHOLE_PLANE)
            return ConicClass(ConicType.EMPTY)
        return ConicClass(ConicType.SINGLE_LINE, lines=(Line(D, E, F),))

    disc, delta = c.disc, c.delta
    if disc < 0:
        center = conic_center(c)
        if delta == 0:
            return ConicClass(ConicType.SINGLE_POINT, center=center)
        if C * delta < 0:
            axes, theta = _ellipse_payload(c, center)
            return ConicClass(ConicType.REAL_ELLIPSE, center=center,
                              semi_axes=axes, angle=theta)
        return ConicClass(ConicType.IMAGINARY_ELLIPSE, center=center)

    if disc > 0:
        center = conic_center(c)
        if delta != 0:
            axes, theta = _hyperbola_payload(c, center)
            return ConicClass(ConicType.HYPERBOLA, center=center,
                              semi_axes=axes, angle=theta)
        lines = tuple(_line_through(center, d)
                      for d in _quadratic_direction_roots(c))
        return ConicClass(ConicType.INTERSECTING_LINES, center=center,
                          lines=lines)

    # disc == 0 with a nonzero quadratic part
    if delta != 0:
        vertex, axis, focal = _parabola_payload(c)
        return ConicClass(ConicType.PARABOLA, vertex=vertex, axis=axis,
                          focal=focal)
    return _parallel_lines_class(c)


def _parallel_lines_class(c: ConicSection) -> ConicClass:
    """disc == 0, delta == 0, quadratic part nonzero: parallel line pair."""
    A, B, C, D, E, F = c.coeffs()
    if A != 0:
        # 4A*Q = (2Ax + By + D)^2 + (4AF - D^2)
        gap2 = D * D - 4 * A * F
        lin = (2 * A, B, D)
    else:
        # A = 0 forces B = 0 here, so C != 0 and Q = Cy^2 + Ey + F
        gap2 = E * E - 4 * C * F
        lin = (B, 2 * C, E)
    if gap2 < 0:
        return ConicClass(ConicType.IMAGINARY_PARALLEL_LINES)
    if gap2 == 0:
        return ConicClass(ConicType.COINCIDENT_LINES,
                          lines=(Line(lin[0], lin[1], lin[2]),))
    g = scalar_sqrt(gap2)
    lines = (Line(lin[0], lin[1], lin[2] - g), Line(lin[0], lin[1], lin[2] + g))
    return ConicClass(ConicType.DISTINCT_PARALLEL_LINES, lines=lines)


def line_factors(c: ConicSection) -> tuple[Line, ...]:
    """Linear factors of a degenerate conic (one line for SingleLine)."""
    cls = classify_conic(c)
    if cls.tag not in (ConicType.INTERSECTING_LINES,
                       ConicType.DISTINCT_PARALLEL_LINES,
                       ConicType.COINCIDENT_LINES,
                       ConicType.SINGLE_LINE):
        raise NotDegenerate(f"no line factors for {cls.tag.value}")
    if cls.tag is ConicType.COINCIDENT_LINES:
        return (cls.lines[0], cls.lines[0])
    return cls.lines


# ---------------------------------------------------------------------------
# Parametrization
# ---------------------------------------------------------------------------

def parametrize_conic(cls: ConicClass) -> list[Branch]:
    """Smooth branches covering the zero set of a one-dimensional conic."""
    tag = cls.tag
    if tag not in CURVE_TAGS:
        raise NotACurve(f"{tag.value} has no curve parametrization")

    if tag is ConicType.REAL_ELLIPSE:
        r1, r2 = cls.semi_axes
        ct, st = math.cos(cls.angle), math.sin(cls.angle)
        u = (float(r1) * ct, float(r1) * st)
        v = (-float(r2) * st, float(r2) * ct)
        return [Branch(BranchKind.CIRCLE, cls.center.as_floats(), u, v,
                       label="ellipse")]

    if tag is ConicType.HYPERBOLA:
        rt, rc = float(cls.semi_axes[0]), float(cls.semi_axes[1])
        ct, st = math.cos(cls.angle), math.sin(cls.angle)
        e1 = (ct, st)
        e2 = (-st, ct)
        out = []
        for sgn, label in ((1, "branch+"), (-1, "branch-")):
            # origin + u t + v / t with t = e^s > 0 covers one cosh branch
            u = (sgn * rt / 2 * e1[0] + rc / 2 * e2[0],
                 sgn * rt / 2 * e1[1] + rc / 2 * e2[1])
            v = (sgn * rt / 2 * e1[0] - rc / 2 * e2[0],
                 sgn * rt / 2 * e1[1] - rc / 2 * e2[1])
            out.append(Branch(BranchKind.HYPERBOLIC, cls.center.as_floats(),
                              u, v, label=label, sign=1))
        return out

    if tag is ConicType.PARABOLA:
        ax, ay = cls.axis
        tangent = (ay, -ax)
        kappa = 1.0 / (4.0 * cls.focal)
        return [Branch(BranchKind.PARABOLIC, cls.vertex.as_floats(),
                       tangent, (kappa * ax, kappa * ay), label="parabola")]

    out = []
    names = ("line1", "line2") if len(cls.lines) > 1 else ("line",)
    for line, name in zip(cls.lines, names):
        p = line.some_point()
        out.append(Branch(BranchKind.LINE, (p.x, p.y), line.direction(),
                          label=name))
    return out
