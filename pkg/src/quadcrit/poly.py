"""Dense univariate polynomial utilities.

Polynomials are lists of coefficients in ascending order.  The exact routines
(arithmetic, gcd, Sturm chains, root isolation) expect Fraction coefficients
and never round; the numeric routines use companion-matrix eigenvalues with
Newton polish and are used where locations feed float payloads anyway.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

Poly = list


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    p = trim(p)
    return len(p) - 1 if p else -1


def is_zero(p: Sequence) -> bool:
    return not trim(p)


def add(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                 for i in range(n)])


def neg(p: Sequence) -> list:
    return [-c for c in p]


def sub(p: Sequence, q: Sequence) -> list:
    return add(p, neg(q))


def mul(p: Sequence, q: Sequence) -> list:
    p, q = trim(p), trim(q)
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, ci in enumerate(p):
        if ci == 0:
            continue
        for j, cj in enumerate(q):
            out[i + j] += ci * cj
    return trim(out)

def scale(p: Sequence, s) -> list:
    return trim([c * s for c in p])


def shift_pow(p: Sequence, k: int) -> list:
    """Multiply by x^k."""
    return [0] * k + list(p)


def divmod_poly(p: Sequence, q: Sequence) -> tuple[list, list]:
    """Exact field division with remainder; q must be nonzero."""
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    dq = len(q) - 1
    if len(p) < len(q):
        return [], p
    rem = list(p)
    lead = q[-1]
    quot = [0] * (len(p) - dq)
    for k in range(len(p) - len(q), -1, -1):
        c = rem[k + dq] / lead
        quot[k] = c
        if c != 0:
            for i, qc in enumerate(q):
                rem[k + i] -= c * qc
    return trim(quot), trim(rem[:dq])


def monic(p: Sequence) -> list:
    p = trim(p)
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def gcd_poly(p: Sequence, q: Sequence) -> list:
    """Monic gcd over the rationals."""
    p, q = trim(p), trim(q)
    while q:
        _, r = divmod_poly(p, q)
        p, q = q, r
    return monic(p)


def deriv(p: Sequence) -> list:
    return trim([i * c for i, c in enumerate(p)][1:])


def squarefree_part(p: Sequence) -> list:
    p = trim(p)
    if degree(p) <= 1:
        return monic(p)
    g = gcd_poly(p, deriv(p))
    if degree(g) == 0:
        return monic(p)
    quot, _ = divmod_poly(p, g)
    return monic(quot)


def eval_poly(p: Sequence, x):
    acc = 0
    for c in reversed(trim(p)):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# Sturm sequences and exact real root isolation
# ---------------------------------------------------------------------------

def sturm_chain(p: Sequence) -> list[list]:
    p = trim(p)
    chain = [p, deriv(p)]
    while trim(chain[-1]):
        _, r = divmod_poly(chain[-2], chain[-1])
        chain.append(neg(r))
    chain.pop()
    return chain


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _variations(signs: Sequence[int]) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _chain_signs_at(chain, x) -> list[int]:
    return [_sign(eval_poly(p, x)) for p in chain]


def _chain_signs_at_inf(chain, positive: bool) -> list[int]:
    signs = []
    for p in chain:
        p = trim(p)
        if not p:
            signs.append(0)
            continue
        s = _sign(p[-1])
        if not positive and (len(p) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return signs


def count_real_roots(p: Sequence, lo=None, hi=None) -> int:
    """Distinct real roots of p in (lo, hi]; None means -inf / +inf."""
    p = squarefree_part(p)
    if degree(p) <= 0:
        return 0
    chain = sturm_chain(p)
    lo_signs = (_chain_signs_at_inf(chain, False) if lo is None
                else _chain_signs_at(chain, lo))
    hi_signs = (_chain_signs_at_inf(chain, True) if hi is None
                else _chain_signs_at(chain, hi))
    return _variations(lo_signs) - _variations(hi_signs)


def cauchy_bound(p: Sequence) -> Fraction:
    p = trim(p)
    lead = abs(p[-1])
    if len(p) == 1:
        return Fraction(1)
    return 1 + max(abs(Fraction(c)) / lead for c in p[:-1])


def isolate_real_roots(p: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each containing exactly one real root.

    Rational roots may be returned as degenerate intervals [r, r].
    """
    p = squarefree_part(p)
    if degree(p) <= 0:
        return []
    chain = sturm_chain(p)

    def var_at(x):
        return _variations(_chain_signs_at(chain, x))

    bound = cauchy_bound(p)
    lo, hi = -bound - 1, bound + 1
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(Fraction(lo), Fraction(hi), var_at(lo), var_at(hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if eval_poly(p, m) == 0:
            out.append((m, m))
            # shrink around the exact root so the two halves exclude it
            eps = (b - a) / 4
            lo_m, hi_m = m - eps, m + eps
            while eval_poly(p, lo_m) == 0:
                lo_m = (a + lo_m) / 2
            while eval_poly(p, hi_m) == 0:
                hi_m = (hi_m + b) / 2
            stack.append((a, lo_m, va, var_at(lo_m)))
            stack.append((hi_m, b, var_at(hi_m), vb))
        else:
            vm = var_at(m)
            stack.append((a, m, va, vm))
            stack.append((m, b, vm, vb))
    out.sort(key=lambda iv: iv[0])
    return out


def refine_interval(p: Sequence, lo: Fraction, hi: Fraction,
                    width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of squarefree p down to the given width."""
    if lo == hi:
        return lo, hi
    flo = eval_poly(p, lo)
    if flo == 0:
        return lo, lo
    slo = _sign(flo)
    while hi - lo > width:
        m = (lo + hi) / 2
        fm = eval_poly(p, m)
        if fm == 0:
            return m, m
        if _sign(fm) == slo:
            lo = m
        else:
            hi = m
    return lo, hi


def real_roots_exact(p: Sequence, width=Fraction(1, 10 ** 24)
                     ) -> list[tuple[Fraction, Fraction]]:
    sf = squarefree_part(p)
    return [refine_interval(sf, lo, hi, width)
            for lo, hi in isolate_real_roots(p)]


# ---------------------------------------------------------------------------
# Numeric real roots (companion matrix + Newton polish)
# ---------------------------------------------------------------------------

def real_roots_numeric(p: Sequence, *, imag_tol: float = 1e-9,
                       cluster_tol: float = 1e-12,
                       polish: bool = True) -> list[float]:
    """Real roots of a float polynomial, ascending, near-duplicates merged."""
    c = [float(v) for v in p]
    scale_ref = max((abs(v) for v in c), default=0.0)
    if scale_ref == 0.0:
        return []
    while c and abs(c[-1]) <= 1e-14 * scale_ref:
        c.pop()
    if len(c) <= 1:
        return []
    if len(c) == 2:
        roots = [-c[0] / c[1]]
    else:
        rts = np.roots(list(reversed(c)))
        roots = []
        for z in rts:
            mag = max(1.0, abs(z.real))
            if abs(z.imag) <= imag_tol * mag:
                roots.append(float(z.real))
    if polish:
        d = [i * c[i] for i in range(1, len(c))]
        for _ in range(3):
            roots = [_newton_step(c, d, r) for r in roots]
    roots.sort()
    merged: list[float] = []
    for r in roots:
        if merged and abs(r - merged[-1]) <= cluster_tol * max(1.0, abs(r)):
            continue
        merged.append(r)
    return merged


def _newton_step(c, d, x: float) -> float:
    fx = 0.0
    for v in reversed(c):
        fx = fx * x + v
    dx = 0.0
    for v in reversed(d):
        dx = dx * x + v
    if dx == 0.0 or not np.isfinite(dx):
        return x
    step = fx / dx
    if abs(step) > 1.0 + abs(x):
        return x
    return x - step
