"""Branch parametrizations of critical-set components and curve calculus.

A Branch is one connected piece of a critical set written against a fixed
two-vector frame:

    circle      origin + u*cos(t) + v*sin(t),      t in [0, 2*pi)
    hyperbolic  origin + u*t + v/t,                t > 0 or t < 0
    parabolic   origin + u*t + v*t^2,              t real
    line        origin + u*t,                      t real

Composing a quadratic map with a branch stays inside a small closed algebra
(trigonometric polynomials of harmonic degree <= 2, Laurent polynomials in
t^-2..t^2, or plain polynomials of degree <= 4), which makes derivatives and
critical parameters of the image curve computable without approximation of
the curve itself.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import poly
from .core import AffineTransform, Number, Point, QuadMap

TWO_PI = 2.0 * math.pi


class BranchKind(enum.Enum):
    CIRCLE = "circle"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    LINE = "line"


@dataclass(frozen=True)
class Branch:
    """One smooth branch of a critical set, with the frame that produced it."""

    kind: BranchKind
    origin: tuple[Number, Number]
    u: tuple[Number, Number]
    v: tuple[Number, Number] = (0, 0)
    label: str = "branch"
    sign: int = 1  # hyperbolic: +1 for t > 0, -1 for t < 0
    transform: Optional[AffineTransform] = None  # normalizing map, if any

    def point_at(self, t: Number) -> Point:
        ox, oy = self.origin
        ux, uy = self.u
        vx, vy = self.v
        if self.kind is BranchKind.CIRCLE:
            c, s = math.cos(float(t)), math.sin(float(t))
            return Point(float(ox) + float(ux) * c + float(vx) * s,
                         float(oy) + float(uy) * c + float(vy) * s)
        if self.kind is BranchKind.HYPERBOLIC:
            return Point(ox + ux * t + vx / t, oy + uy * t + vy / t)
        if self.kind is BranchKind.PARABOLIC:
            return Point(ox + ux * t + vx * t * t, oy + uy * t + vy * t * t)
        return Point(ox + ux * t, oy + uy * t)

    @property
    def domain(self) -> tuple[float, float] | None:
        if self.kind is BranchKind.CIRCLE:
            return (0.0, TWO_PI)
        if self.kind is BranchKind.HYPERBOLIC:
            return (0.0, math.inf) if self.sign > 0 else (-math.inf, 0.0)
        return None

    def contains_param(self, t: float, margin: float = 0.0) -> bool:
        if self.kind is BranchKind.HYPERBOLIC:
            return t > margin if self.sign > 0 else t < -margin
        return True

    def sample_params(self, n: int, window: float = 4.0) -> list[float]:
        """n parameter samples covering the branch for plotting/CSV export."""
        if n < 2:
            n = 2
        if self.kind is BranchKind.CIRCLE:
            return [TWO_PI * i / n for i in range(n)]
        if self.kind is BranchKind.HYPERBOLIC:
            span = max(1.0, math.log(window))
            return [self.sign * math.exp(-span + 2 * span * i / (n - 1))
                    for i in range(n)]
        return [-window + 2 * window * i / (n - 1) for i in range(n)]


# ---------------------------------------------------------------------------
# Closed function algebras for map-composed branches
# ---------------------------------------------------------------------------

class _TrigPoly:
    """sum_n c_n cos(n t) + s_n sin(n t), n >= 0, dict harmonic -> [c, s]."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {n: [c, s] for n, (c, s) in (terms or {}).items()
                      if c != 0 or s != 0}

    @classmethod
    def const(cls, value):
        return cls({0: (value, 0)})

    def _get(self, n):
        return self.terms.get(n, [0, 0])

    def add(self, other):
        out = {n: list(cs) for n, cs in self.terms.items()}
        for n, (c, s) in other.terms.items():
            cur = out.setdefault(n, [0, 0])
            cur[0] += c
            cur[1] += s
        return _TrigPoly(out)

    def scale(self, k):
        return _TrigPoly({n: (c * k, s * k) for n, (c, s) in self.terms.items()})

    def mul(self, other):
        acc: dict[int, list] = {}

        def put(n, dc, ds):
            if n < 0:
                n, ds = -n, -ds
            cur = acc.setdefault(n, [0, 0])
            cur[0] += dc
            cur[1] += ds

        for m, (cm, sm) in self.terms.items():
            for n, (cn, sn) in other.terms.items():
                half = _half_like(cm, sm, cn, sn)
                # cos*cos and sin*sin -> cosines
                put(m + n, cm * cn * half, 0)
                put(m - n, cm * cn * half, 0)
                put(m - n, sm * sn * half, 0)
                put(m + n, -(sm * sn * half), 0)
                # sin*cos -> sines
                put(m + n, 0, sm * cn * half)
                put(m - n, 0, sm * cn * half)
                put(m + n, 0, cm * sn * half)
                put(m - n, 0, -(cm * sn * half))
        return _TrigPoly(acc)

    def deriv(self):
        return _TrigPoly({n: (n * s, -n * c)
                          for n, (c, s) in self.terms.items() if n > 0})

    def eval(self, t: float) -> float:
        total = 0.0
        for n, (c, s) in self.terms.items():
            total += float(c) * math.cos(n * t) + float(s) * math.sin(n * t)
        return total

    def max_abs(self) -> float:
        return max((max(abs(float(c)), abs(float(s)))
                    for c, s in self.terms.values()), default=0.0)

    def halfangle_numerator(self) -> list[float]:
        """Numerator polynomial in u = tan(t/2) over denominator (1+u^2)^2."""
        base = {
            (0, "c"): [1, 0, 2, 0, 1],           # (1+u^2)^2
            (1, "c"): [1, 0, 0, 0, -1],          # (1-u^2)(1+u^2)
            (1, "s"): [0, 2, 0, 2, 0],           # 2u(1+u^2)
            (2, "c"): [1, 0, -6, 0, 1],          # u^4 - 6u^2 + 1
            (2, "s"): [0, 4, 0, -4, 0],          # 4u - 4u^3
        }
        num = [0.0] * 5
        for n, (c, s) in self.terms.items():
            if n > 2:
                raise ValueError("harmonic degree above 2")
            for coeff, key in ((c, "c"), (s, "s")):
                if coeff == 0 or (n == 0 and key == "s"):
                    continue
                for i, b in enumerate(base[(n, key)]):
                    num[i] += float(coeff) * b
        return poly.trim([v if abs(v) > 0 else 0.0 for v in num])


def _half_like(cm, sm, cn, sn):
    """1/2 in a type compatible with the operands (exact stays exact)."""
    exact = all(isinstance(v, (int, Fraction)) for v in (cm, sm, cn, sn))
    return Fraction(1, 2) if exact else 0.5


class _Laurent:
    """sum_k c_k t^k with k in a small integer range (here -2..2)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, value):
        return cls({0: value})

    def add(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return _Laurent(out)

    def scale(self, k):
        return _Laurent({p: c * k for p, c in self.terms.items()})

    def mul(self, other):
        acc: dict[int, object] = {}
        for i, ci in self.terms.items():
            for j, cj in other.terms.items():
                acc[i + j] = acc.get(i + j, 0) + ci * cj
        return _Laurent(acc)

    def deriv(self):
        return _Laurent({k - 1: k * c for k, c in self.terms.items() if k != 0})

    def eval(self, t: float) -> float:
        return sum(float(c) * t ** k for k, c in self.terms.items())

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self.terms.values()), default=0.0)

    def as_poly(self) -> tuple[list, int]:
        """Return (polynomial, shift) with self = poly(t) / t^shift."""
        if not self.terms:
            return [], 0
        low = min(self.terms.keys())
        shift = max(0, -low)
        hi = max(self.terms.keys())
        coeffs = [self.terms.get(k - shift, 0) for k in range(0, hi + shift + 1)]
        return poly.trim(coeffs), shift


class _PolyFunc:
    """Plain polynomial wrapper sharing the algebra interface."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = poly.trim(coeffs or [])

    @classmethod
    def const(cls, value):
        return cls([value])

    def add(self, other):
        return _PolyFunc(poly.add(self.coeffs, other.coeffs))

    def scale(self, k):
        return _PolyFunc(poly.scale(self.coeffs, k))

    def mul(self, other):
        return _PolyFunc(poly.mul(self.coeffs, other.coeffs))

    def deriv(self):
        return _PolyFunc(poly.deriv(self.coeffs))

    def eval(self, t: float) -> float:
        return float(poly.eval_poly([float(c) for c in self.coeffs], t))

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self.coeffs), default=0.0)


def _coordinate_functions(branch: Branch):
    ox, oy = branch.origin
    ux, uy = branch.u
    vx, vy = branch.v
    if branch.kind is BranchKind.CIRCLE:
        x = _TrigPoly({0: (ox, 0), 1: (ux, vx)})
        y = _TrigPoly({0: (oy, 0), 1: (uy, vy)})
    elif branch.kind is BranchKind.HYPERBOLIC:
        x = _Laurent({0: ox, 1: ux, -1: vx})
        y = _Laurent({0: oy, 1: uy, -1: vy})
    elif branch.kind is BranchKind.PARABOLIC:
        x = _PolyFunc([ox, ux, vx])
        y = _PolyFunc([oy, uy, vy])
    else:
        x = _PolyFunc([ox, ux])
        y = _PolyFunc([oy, uy])
    return x, y


def _compose_component(coeffs, x, y):
    c0, c1, c2, c3, c4, c5 = coeffs
    out = x.mul(x).scale(c0)
    out = out.add(x.mul(y).scale(c1))
    out = out.add(y.mul(y).scale(c2))
    out = out.add(x.scale(c3))
    out = out.add(y.scale(c4))
    out = out.add(type(x).const(c5))
    return out


class ComposedCurve:
    """The image curve alpha = map o branch with exact-in-frame derivatives."""

    def __init__(self, quadmap: QuadMap, branch: Branch):
        self.map = quadmap
        self.branch = branch
        x, y = _coordinate_functions(branch)
        self.f1 = _compose_component(quadmap.a, x, y)
        self.f2 = _compose_component(quadmap.b, x, y)
        self.d1 = (self.f1.deriv(), self.f2.deriv())
        self.d2 = (self.d1[0].deriv(), self.d1[1].deriv())
        self.d3 = (self.d2[0].deriv(), self.d2[1].deriv())

    def point(self, t: float) -> tuple[float, float]:
        return (self.f1.eval(t), self.f2.eval(t))

    def velocity(self, t: float) -> tuple[float, float]:
        return (self.d1[0].eval(t), self.d1[1].eval(t))

    def accel(self, t: float) -> tuple[float, float]:
        return (self.d2[0].eval(t), self.d2[1].eval(t))

    def gamma(self, t: float) -> float:
        """Cusp nondegeneracy a1''*a2''' - a1'''*a2'' at parameter t."""
        ax, ay = self.d2[0].eval(t), self.d2[1].eval(t)
        jx, jy = self.d3[0].eval(t), self.d3[1].eval(t)
        return ax * jy - jx * ay

    # -- critical parameters (simultaneous zeros of the velocity) ----------

    def _component_scale(self) -> float:
        return max(self.d1[0].max_abs(), self.d1[1].max_abs(), 1.0)

    def _roots_of(self, func) -> list[float] | None:
        """Real roots of one velocity component; None when identically zero."""
        tol = 1e-13 * self._component_scale()
        if func.max_abs() <= tol:
            return None
        kind = self.branch.kind
        if kind is BranchKind.CIRCLE:
            num = func.halfangle_numerator()
            roots = [2.0 * math.atan(u) for u in poly.real_roots_numeric(num)]
            if abs(func.eval(math.pi)) <= 1e-9 * self._component_scale():
                roots.append(math.pi)
            return sorted(r % TWO_PI for r in roots)
        if kind is BranchKind.HYPERBOLIC:
            p, _ = func.as_poly()
            roots = poly.real_roots_numeric([float(c) for c in p])
            return [r for r in roots
                    if r != 0.0 and self.branch.contains_param(r)]
        return poly.real_roots_numeric([float(c) for c in func.coeffs])

    def critical_params(self, match_tol: float = 1e-6) -> list[float]:
        """Parameters where both velocity components vanish, polished."""
        r1 = self._roots_of(self.d1[0])
        r2 = self._roots_of(self.d1[1])
        if r1 is None and r2 is None:
            return []  # constant curve: a point, no fold structure
        if r1 is None:
            candidates = list(r2)
        elif r2 is None:
            candidates = list(r1)
        else:
            candidates = []
            for t in r1:
                if any(self._param_close(t, s, match_tol) for s in r2):
                    candidates.append(t)
        out: list[float] = []
        for t in candidates:
            t = self._polish(t)
            if not self.branch.contains_param(t):
                continue
            if any(self._param_close(t, s, 1e-9) for s in out):
                continue
            out.append(t)
        return sorted(out)

    def _param_close(self, t, s, tol) -> bool:
        if self.branch.kind is BranchKind.CIRCLE:
            d = abs((t - s + math.pi) % TWO_PI - math.pi)
            return d <= tol
        return abs(t - s) <= tol * max(1.0, abs(t))

    def _polish(self, t: float) -> float:
        for _ in range(60):
            vx, vy = self.velocity(t)
            ax, ay = self.accel(t)
            # Newton on the better-conditioned component
            if abs(ax) >= abs(ay):
                f, df = vx, ax
            else:
                f, df = vy, ay
            if df == 0.0:
                break
            step = f / df
            if abs(step) <= 1e-17 * max(1.0, abs(t)):
                break
            t -= step
        if self.branch.kind is BranchKind.CIRCLE:
            t %= TWO_PI
        return t

    def speed_residual(self, t: float) -> float:
        vx, vy = self.velocity(t)
        return math.hypot(vx, vy)
