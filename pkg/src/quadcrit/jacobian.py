"""Cross-determinant table and the Jacobian-determinant conic of a quadratic map.

For a map with coefficient rows a, b the cross determinants are
X[i][j] = a_i*b_j - a_j*b_i.  The determinant of the Jacobian matrix is the
conic

    2*X01 x^2 + 4*X02 xy + 2*X12 y^2 + (2*X04 - X13) x + (X14 - 2*X23) y + X34

and the table satisfies a family of polynomial identities (antisymmetry,
the a/b three-term relations and the Pluecker-style four-index relation)
that double as a self-check for ports and refactors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .core import ConicSection, Number, QuadMap, is_exact


@dataclass(frozen=True)
class CrossTable:
    """All cross determinants X[i][j] for 0 <= i, j <= 5 (antisymmetric)."""

    rows: tuple[tuple[Number, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> Number:
        i, j = ij
        return self.rows[i][j]

    def nonzero(self) -> list[tuple[int, int, Number]]:
        """Entries X[i][j] != 0 with i < j."""
        out = []
        for i in range(6):
            for j in range(i + 1, 6):
                if self.rows[i][j] != 0:
                    out.append((i, j, self.rows[i][j]))
        return out


def cross_table(quadmap: QuadMap) -> CrossTable:
    a, b = quadmap.a, quadmap.b
    rows = tuple(tuple(a[i] * b[j] - a[j] * b[i] for j in range(6))
                 for i in range(6))
    return CrossTable(rows)


def jacobian_conic(quadmap: QuadMap) -> ConicSection:
    """The conic whose zero set is the critical set of the map."""
    X = cross_table(quadmap)
    return ConicSection(
        2 * X[0, 1],
        4 * X[0, 2],
        2 * X[1, 2],
        2 * X[0, 4] - X[1, 3],
        X[1, 4] - 2 * X[2, 3],
        X[3, 4],
    )


class IdentityCheck(NamedTuple):
    name: str
    indices: tuple[int, ...]
    residual: Number


def _residuals(a, b, x) -> list[IdentityCheck]:
    checks: list[IdentityCheck] = []
    for i, j in combinations(range(6), 2):
        checks.append(IdentityCheck("antisymmetry", (i, j), x[i][j] + x[j][i]))
    for k, i, j in combinations(range(6), 3):
        checks.append(IdentityCheck(
            "a-cycle", (k, i, j),
            a[k] * x[i][j] + a[i] * x[j][k] + a[j] * x[k][i]))
        checks.append(IdentityCheck(
            "b-cycle", (k, i, j),
            b[k] * x[i][j] + b[i] * x[j][k] + b[j] * x[k][i]))
    for i, j, k, l in combinations(range(6), 4):
        checks.append(IdentityCheck(
            "quad-relation", (i, j, k, l),
            x[i][j] * x[k][l] - x[i][k] * x[j][l] + x[i][l] * x[j][k]))
    return checks


def verify_identities(quadmap: QuadMap) -> list[IdentityCheck]:
    """Exact residuals of every table identity; all must be zero."""
    x = cross_table(quadmap).rows
    return _residuals(quadmap.a, quadmap.b, x)


def integer_rows(quadmap: QuadMap) -> tuple[list[int], list[int]]:
    """Rescale each coefficient row by a positive integer to clear denominators.

    Row scalings multiply every X[i][j] by the same positive factor, so the
    identities stay identities and the conic class is unchanged.
    """
    if not quadmap.is_exact:
        raise ValueError("integer scaling needs exact coefficients")
    la = math.lcm(*(Fraction(c).denominator for c in quadmap.a))
    lb = math.lcm(*(Fraction(c).denominator for c in quadmap.b))
    ai = [int(c * la) for c in quadmap.a]
    bi = [int(c * lb) for c in quadmap.b]
    return ai, bi


def identities_all_zero(quadmap: QuadMap) -> bool:
    """Fast integer-arithmetic check that every identity residual vanishes."""
    a, b = integer_rows(quadmap)
    x = [[a[i] * b[j] - a[j] * b[i] for j in range(6)] for i in range(6)]
    for i in range(6):
        for j in range(i + 1, 6):
            if x[i][j] + x[j][i]:
                return False
    for k, i, j in combinations(range(6), 3):
        if a[k] * x[i][j] + a[i] * x[j][k] + a[j] * x[k][i]:
            return False
        if b[k] * x[i][j] + b[i] * x[j][k] + b[j] * x[k][i]:
            return False
    for i, j, k, l in combinations(range(6), 4):
        if x[i][j] * x[k][l] - x[i][k] * x[j][l] + x[i][l] * x[j][k]:
            return False
    return True


def integer_conic(quadmap: QuadMap) -> ConicSection:
    """Jacobian conic of the row-rescaled integer map (same class, fast)."""
    a, b = integer_rows(quadmap)
    def x(i, j):
        return a[i] * b[j] - a[j] * b[i]
    return ConicSection(2 * x(0, 1), 4 * x(0, 2), 2 * x(1, 2),
                        2 * x(0, 4) - x(1, 3), x(1, 4) - 2 * x(2, 3), x(3, 4))
