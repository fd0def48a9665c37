"""Core domain types: exact rational scalars, quadratic plane maps, conics,
affine transforms.

Every classification decision in this package is a sign test, and sign tests
on the boundary between cases are exactly the interesting inputs, so scalars
stay `fractions.Fraction` end to end.  Floats enter only where a value is
inherently numeric (rotations, square roots, sampled curves) and never feed
back into a case dispatch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Scalar = Fraction
Number = Union[Fraction, int, float]


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class QuadCritError(Exception):
    """Base class for library errors."""


class ParseError(QuadCritError):
    """A coefficient, point or bounding box failed to parse."""


class AffineMapNotSupported(QuadCritError):
    """All six quadratic coefficients vanish; the map is affine."""


class SingularTransform(QuadCritError):
    """An affine transform with zero determinant was requested."""


class NotDegenerate(QuadCritError):
    """Line factorization requested for a non-degenerate conic."""


class NotACurve(QuadCritError):
    """Parametrization requested for a zero- or two-dimensional set."""


class NotNormalizable(QuadCritError):
    """No standard form exists for this conic class."""


class PreconditionViolated(QuadCritError):
    """An operation was called outside its stated precondition."""


class RootFindingFailed(QuadCritError):
    """A numeric root could not be certified; signals numerical trouble."""


class DegenerateSystemUnresolved(QuadCritError):
    """Common-component extraction failed for a preimage system."""


class EmptyTarget(QuadCritError):
    """A sampling target (e.g. the critical set of case 1) is empty."""


# ---------------------------------------------------------------------------
# Scalar helpers
# ---------------------------------------------------------------------------

def parse_scalar(text: str) -> Fraction:
    """Parse an integer, p/q or finite-decimal string as an exact rational."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def is_exact(value: Number) -> bool:
    return isinstance(value, (Fraction, int))


def to_float(value: Number) -> float:
    return float(value)


def exact_sqrt(value: Fraction) -> Fraction | None:
    """Square root as an exact rational, or None if irrational."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def scalar_sqrt(value: Number) -> Number:
    """Exact square root when possible, float otherwise."""
    if isinstance(value, (Fraction, int)):
        root = exact_sqrt(Fraction(value))
        if root is not None:
            return root
    return math.sqrt(float(value))


def _exact_icbrt(n: int) -> int | None:
    if n < 0:
        r = _exact_icbrt(-n)
        return None if r is None else -r
    r = round(n ** (1.0 / 3.0)) if n else 0
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c * c == n:
            return c
    return None


def scalar_cbrt(value: Number) -> Number:
    """Exact cube root when possible, float otherwise (sign preserved)."""
    if isinstance(value, (Fraction, int)):
        f = Fraction(value)
        rn = _exact_icbrt(f.numerator)
        rd = _exact_icbrt(f.denominator)
        if rn is not None and rd is not None:
            return Fraction(rn, rd)
    v = float(value)
    return math.copysign(abs(v) ** (1.0 / 3.0), v)


def _coerce(value: Number) -> Number:
    """Normalize ints to Fraction; leave Fraction/float alone."""
    if isinstance(value, bool):
        raise ParseError("bool is not a coefficient")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Fraction, float)):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    raise ParseError(f"unsupported scalar type: {type(value).__name__}")


def _is_zero(value: Number) -> bool:
    return value == 0


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Point:
    """A plane point; coordinates are Fraction where exact, float where not."""

    x: Number
    y: Number

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce(self.x))
        object.__setattr__(self, "y", _coerce(self.y))
        if isinstance(self.x, float) and not math.isfinite(self.x):
            raise ParseError("non-finite point coordinate")
        if isinstance(self.y, float) and not math.isfinite(self.y):
            raise ParseError("non-finite point coordinate")

    @property
    def exact(self) -> bool:
        return is_exact(self.x) and is_exact(self.y)

    def as_floats(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def distance_to(self, other: "Point") -> float:
        return math.hypot(float(self.x) - float(other.x),
                          float(self.y) - float(other.y))


# ---------------------------------------------------------------------------
# Quadratic maps
# ---------------------------------------------------------------------------

# Coefficient order for each component of the map, matching the reading order
#   c0*x^2 + c1*x*y + c2*y^2 + c3*x + c4*y + c5
COEFF_ORDER = ("x^2", "xy", "y^2", "x", "y", "1")


@dataclass(frozen=True)
class QuadMap:
    """A quadratic map of the plane given by 12 coefficients.

    `a` holds the first-component coefficients, `b` the second, each in the
    order x^2, xy, y^2, x, y, 1.  Maps with all six quadratic coefficients
    zero are affine and rejected at construction.
    """

    a: tuple[Number, ...]
    b: tuple[Number, ...]

    def __post_init__(self):
        a = tuple(_coerce(v) for v in self.a)
        b = tuple(_coerce(v) for v in self.b)
        if len(a) != 6 or len(b) != 6:
            raise ParseError("a quadratic map needs 6 + 6 coefficients")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if all(_is_zero(c) for c in (a[0], a[1], a[2], b[0], b[1], b[2])):
            raise AffineMapNotSupported(
                "all quadratic coefficients vanish; affine maps are excluded")

    @classmethod
    def from_strings(cls, coeffs: Sequence[str]) -> "QuadMap":
        vals = [parse_scalar(c) for c in coeffs]
        if len(vals) != 12:
            raise ParseError(f"expected 12 coefficients, got {len(vals)}")
        return cls(tuple(vals[:6]), tuple(vals[6:]))

    @classmethod
    def parse(cls, text: str) -> "QuadMap":
        """Parse a comma- or whitespace-separated list of 12 rationals."""
        parts = [p for p in text.replace(",", " ").split() if p]
        return cls.from_strings(parts)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.a + self.b)

    def coeff_strings(self) -> list[str]:
        return [str(c) for c in self.a + self.b]

    def _component(self, c: tuple[Number, ...], x: Number, y: Number) -> Number:
        return (c[0] * x * x + c[1] * x * y + c[2] * y * y
                + c[3] * x + c[4] * y + c[5])

    def __call__(self, p: Point) -> Point:
        return Point(self._component(self.a, p.x, p.y),
                     self._component(self.b, p.x, p.y))

    def eval_xy(self, x: Number, y: Number) -> tuple[Number, Number]:
        return (self._component(self.a, x, y), self._component(self.b, x, y))

    def jacobian_matrix(self, p: Point) -> tuple[tuple[Number, Number],
                                                 tuple[Number, Number]]:
        """The 2x2 matrix of first partials evaluated at p."""
        x, y = p.x, p.y
        a, b = self.a, self.b
        return ((2 * a[0] * x + a[1] * y + a[3], a[1] * x + 2 * a[2] * y + a[4]),
                (2 * b[0] * x + b[1] * y + b[3], b[1] * x + 2 * b[2] * y + b[4]))

    def jacobian_det(self, p: Point) -> Number:
        (j00, j01), (j10, j11) = self.jacobian_matrix(p)
        return j00 * j11 - j01 * j10

    def quadratic_part(self, vx: Number, vy: Number) -> tuple[Number, Number]:
        """Value of the two pure quadratic forms on the vector (vx, vy)."""
        a, b = self.a, self.b
        return (a[0] * vx * vx + a[1] * vx * vy + a[2] * vy * vy,
                b[0] * vx * vx + b[1] * vx * vy + b[2] * vy * vy)

    def jacobian_homogeneous(self, vx: Number, vy: Number
                             ) -> tuple[tuple[Number, Number], tuple[Number, Number]]:
        """Jacobian of the pure quadratic part at (vx, vy); linear in its argument."""
        a, b = self.a, self.b
        return ((2 * a[0] * vx + a[1] * vy, a[1] * vx + 2 * a[2] * vy),
                (2 * b[0] * vx + b[1] * vy, b[1] * vx + 2 * b[2] * vy))


def evaluate(quadmap: QuadMap, p: Point) -> Point:
    return quadmap(p)


def jacobian_matrix(quadmap: QuadMap, p: Point):
    return quadmap.jacobian_matrix(p)


# ---------------------------------------------------------------------------
# Conic sections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConicSection:
    """A x^2 + B xy + C y^2 + D x + E y + F with derived invariants.

    `disc` is B^2 - 4AC; `delta` is the determinant of the symmetric 3x3
    matrix [[A, B/2, D/2], [B/2, C, E/2], [D/2, E/2, F]], zero exactly for
    degenerate conics.
    """

    A: Number
    B: Number
    C: Number
    D: Number
    E: Number
    F: Number
    disc: Number = None  # type: ignore[assignment]
    delta: Number = None  # type: ignore[assignment]

    def __post_init__(self):
        for name in "ABCDEF":
            object.__setattr__(self, name, _coerce(getattr(self, name)))
        A, B, C, D, E, F = self.A, self.B, self.C, self.D, self.E, self.F
        object.__setattr__(self, "disc", B * B - 4 * A * C)
        half = Fraction(1, 2) if is_exact(B + D + E) else 0.5
        b2, d2, e2 = B * half, D * half, E * half
        delta = (A * (C * F - e2 * e2)
                 - b2 * (b2 * F - d2 * e2)
                 + d2 * (b2 * e2 - C * d2))
        object.__setattr__(self, "delta", delta)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(getattr(self, n)) for n in "ABCDEF")

    def coeffs(self) -> tuple[Number, ...]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def evaluate(self, x: Number, y: Number) -> Number:
        return (self.A * x * x + self.B * x * y + self.C * y * y
                + self.D * x + self.E * y + self.F)

    def gradient(self, x: Number, y: Number) -> tuple[Number, Number]:
        return (2 * self.A * x + self.B * y + self.D,
                self.B * x + 2 * self.C * y + self.E)

    def scaled(self, factor: Number) -> "ConicSection":
        return ConicSection(*(c * factor for c in self.coeffs()))

    def max_abs(self) -> float:
        return max(abs(float(c)) for c in self.coeffs())


# ---------------------------------------------------------------------------
# Affine transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffineTransform:
    """Invertible affine plane map z = M p + t."""

    m00: Number
    m01: Number
    m10: Number
    m11: Number
    t0: Number = 0
    t1: Number = 0

    def __post_init__(self):
        for name in ("m00", "m01", "m10", "m11", "t0", "t1"):
            object.__setattr__(self, name, _coerce(getattr(self, name)))
        if _is_zero(self.det):
            raise SingularTransform("affine transform must be invertible")

    @property
    def det(self) -> Number:
        return self.m00 * self.m11 - self.m01 * self.m10

    @property
    def is_exact(self) -> bool:
        return all(is_exact(getattr(self, n))
                   for n in ("m00", "m01", "m10", "m11", "t0", "t1"))

    @classmethod
    def identity(cls) -> "AffineTransform":
        return cls(1, 0, 0, 1, 0, 0)

    @classmethod
    def rotation(cls, theta: float) -> "AffineTransform":
        c, s = math.cos(theta), math.sin(theta)
        return cls(c, -s, s, c, 0.0, 0.0)

    @classmethod
    def scaling(cls, sx: Number, sy: Number) -> "AffineTransform":
        return cls(sx, 0, 0, sy, 0, 0)

    @classmethod
    def translation(cls, tx: Number, ty: Number) -> "AffineTransform":
        return cls(1, 0, 0, 1, tx, ty)

    @classmethod
    def from_columns(cls, col0, col1, origin=(0, 0)) -> "AffineTransform":
        return cls(col0[0], col1[0], col0[1], col1[1], origin[0], origin[1])

    def apply_xy(self, x: Number, y: Number) -> tuple[Number, Number]:
        return (self.m00 * x + self.m01 * y + self.t0,
                self.m10 * x + self.m11 * y + self.t1)

    def apply(self, p: Point) -> Point:
        return Point(*self.apply_xy(p.x, p.y))

    def apply_vector(self, vx: Number, vy: Number) -> tuple[Number, Number]:
        return (self.m00 * vx + self.m01 * vy, self.m10 * vx + self.m11 * vy)

    def inverse(self) -> "AffineTransform":
        d = self.det
        inv00, inv01 = self.m11 / d, -self.m01 / d
        inv10, inv11 = -self.m10 / d, self.m00 / d
        return AffineTransform(inv00, inv01, inv10, inv11,
                               -(inv00 * self.t0 + inv01 * self.t1),
                               -(inv10 * self.t0 + inv11 * self.t1))

    def compose(self, other: "AffineTransform") -> "AffineTransform":
        """self after other: (self.compose(other))(p) == self(other(p))."""
        return AffineTransform(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
            self.m00 * other.t0 + self.m01 * other.t1 + self.t0,
            self.m10 * other.t0 + self.m11 * other.t1 + self.t1,
        )
