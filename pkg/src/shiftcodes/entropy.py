"""Topological entropy of presented shift spaces.

The entropy of an edge shift is the natural log of the spectral radius of
the adjacency matrix.  For a labeled presentation the same computation is
applied to a determinized presentation of the language, whose path growth
matches word growth.

The spectral radius is computed deterministically: the characteristic
polynomial is found exactly over the integers, and the largest real root
(which for a nonnegative matrix is the spectral radius) is enclosed by
bisection on a Sturm chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .presentation import LabeledPresentation, ShiftSpace, EmptyShiftError
from .language import determinize

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Entropy:
    value: float
    tolerance: float = DEFAULT_TOLERANCE

    def isclose(self, other) -> bool:
        ov = other.value if isinstance(other, Entropy) else float(other)
        tol = max(self.tolerance, getattr(other, "tolerance", 0.0))
        return abs(self.value - ov) <= tol

    def __le__(self, other):
        ov = other.value if isinstance(other, Entropy) else float(other)
        return self.value <= ov + max(self.tolerance, getattr(other, "tolerance", 0.0))


def adjacency_matrix(p: LabeledPresentation):
    n = len(p.vertices)
    idx = {v: i for i, v in enumerate(p.vertices)}
    m = [[0] * n for _ in range(n)]
    for e in p.edges:
        m[idx[e.src]][idx[e.dst]] += 1
    return m


def char_poly(matrix) -> list:
    """Coefficients of det(xI - A), highest degree first, exact integers.

    Faddeev-LeVerrier; the divisions are exact for integer matrices.
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    coeffs = [Fraction(1)]
    m = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(c)
        m = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    out = []
    for c in coeffs:
        assert c.denominator == 1
        out.append(int(c))
    return out


def _poly_eval(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _poly_div(num, den):
    """Polynomial division over the rationals; returns (quot, rem)."""
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        if num[0] == 0:
            num.pop(0)
            continue
        shift = len(num) - len(den)
        factor = num[0] / den[0]
        q[len(q) - 1 - shift] = factor
        for i, d in enumerate(den):
            num[i] -= factor * d
        num.pop(0)
    while len(num) > 1 and num[0] == 0:
        num.pop(0)
    return q, num


def _derivative(coeffs):
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])] or [Fraction(0)]


def _square_free(coeffs):
    """coeffs / gcd(coeffs, coeffs'), removing repeated roots."""
    a = [Fraction(c) for c in coeffs]
    b = _derivative(a)

    def poly_gcd(u, v):
        u, v = list(u), list(v)
        while any(v):
            _, r = _poly_div(u, v)
            u, v = v, r
            while len(u) > 1 and u[0] == 0:
                u.pop(0)
            while len(v) > 1 and v[0] == 0:
                v.pop(0)
        return u

    g = poly_gcd(a, b)
    if len(g) <= 1:
        return a
    q, _ = _poly_div(a, g)
    return q


def _sturm_chain(coeffs):
    chain = [list(coeffs), _derivative(coeffs)]
    while any(chain[-1]) and len(chain[-1]) > 1:
        _, r = _poly_div(chain[-2], chain[-1])
        if not any(r):
            break
        chain.append([-c for c in r])
    return [c for c in chain if any(c)]


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for poly in chain:
        v = _poly_eval(poly, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def spectral_radius(matrix, precision: Fraction = Fraction(1, 10**12)):
    """Certified enclosure (lo, hi) of the spectral radius of a
    nonnegative integer matrix, with hi - lo <= precision.

    The radius is the largest real root of the characteristic polynomial,
    located by counting roots with a Sturm chain and bisecting.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    coeffs = [Fraction(c) for c in _square_free(char_poly(matrix))]
    chain = _sturm_chain(coeffs)
    hi = Fraction(max(sum(row) for row in matrix))
    if _poly_eval(coeffs, hi) == 0:
        return hi, hi
    # rational roots of a monic integer polynomial are integers, so a
    # non-integral bracket endpoint is never a root
    lo = Fraction(-1, 2)

    def roots_in(a: Fraction, b: Fraction) -> int:
        return _sign_changes(chain, a) - _sign_changes(chain, b)

    total = roots_in(lo, hi)
    if total == 0:
        raise ArithmeticError("no real eigenvalue found below the row-sum bound")
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if _poly_eval(coeffs, mid) == 0:
            return mid, mid
        if roots_in(mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return lo, hi


def entropy(x: ShiftSpace, tolerance: float = DEFAULT_TOLERANCE) -> Entropy:
    """Natural log of the spectral radius of the (determinized)
    presentation's adjacency matrix.

    Raises EmptyShiftError on the empty space.
    """
    x.require_nonempty()
    pres = x.presentation if x.kind == "edge" else determinize(x.presentation)
    lo, hi = spectral_radius(adjacency_matrix(pres))
    mid = (lo + hi) / 2
    if mid <= 0:
        raise ArithmeticError("nonpositive spectral radius on a nonempty space")
    return Entropy(math.log(mid), tolerance)
