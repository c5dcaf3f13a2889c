"""Incidence matrices and Perron-Frobenius data of substitutions.

The dominant eigenvalue and the letter-frequency vector are returned exactly
when the dominant factor of the characteristic polynomial has degree at most
two (as :class:`~fractions.Fraction` or :class:`~permulex.scalars.Quadratic`),
and as certified :class:`~permulex.scalars.Ball` enclosures otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np
import sympy

from .errors import NotPrimitive, ValidationError
from .scalars import DEFAULT_PRECISION, Ball, Quadratic, Scalar, compare
from .words import Morphism

_X = sympy.Symbol("x")


def incidence_matrix(morphism: Morphism) -> np.ndarray:
    """``A[i, j]`` is the number of occurrences of letter ``i`` in ``phi(j)``."""
    q = morphism.q
    A = np.zeros((q, q), dtype=np.int64)
    for j, img in enumerate(morphism.images):
        for i in img:
            A[i, j] += 1
    return A


class Primitivity(NamedTuple):
    primitive: bool
    power: int | None

    def __bool__(self):
        return self.primitive


def is_primitive(A) -> Primitivity:
    """Least ``n`` (up to Wielandt's bound ``(q-1)**2 + 1``) with ``A**n > 0``."""
    P = np.asarray(A) > 0
    q = P.shape[0]
    M = P.copy()
    for n in range(1, (q - 1) ** 2 + 2):
        if M.all():
            return Primitivity(True, n)
        M = (M.astype(np.int64) @ P.astype(np.int64)) > 0
    return Primitivity(False, None)


@dataclass(frozen=True)
class SpectralData:
    """Dominant eigenvalue ``theta`` and frequency vector ``mu`` (sums to 1).

    ``min_poly`` holds the integer coefficients (leading first) of the
    irreducible factor of the characteristic polynomial that vanishes at
    ``theta``; ``precision`` is ``None`` for exact data.
    """

    theta: Scalar
    mu: tuple
    min_poly: tuple
    precision: int | None = None

    @property
    def exact(self) -> bool:
        return self.precision is None

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1


def characteristic_polynomial(A) -> sympy.Poly:
    return sympy.Matrix(np.asarray(A).tolist()).charpoly(_X)


def _dominant_factor(A) -> sympy.Poly:
    cp = characteristic_polynomial(A).as_expr()
    _, factors = sympy.factor_list(cp, _X)
    best, best_root = None, None
    for f, _mult in factors:
        poly = sympy.Poly(f, _X)
        reals = [r for r in poly.nroots(n=50) if abs(sympy.im(r)) < 1e-40]
        if not reals:
            continue
        top = max(sympy.re(r) for r in reals)
        if best_root is None or top > best_root:
            best, best_root = poly, top
    if best.LC() < 0:
        best = -best
    return best


def _sign_at_dyadic(coeffs, m: int, k: int) -> int:
    """Sign of ``p(m / 2**k)`` for integer coefficients (leading first)."""
    d = len(coeffs) - 1
    total = sum(c * m ** (d - i) * (1 << (k * i)) for i, c in enumerate(coeffs))
    return (total > 0) - (total < 0)


def _isolate_largest_root(poly: sympy.Poly, bits: int) -> tuple[Fraction, Fraction]:
    """Rational interval of width ``<= 2**-bits`` around the largest real root."""
    (lo, hi), _ = poly.intervals()[-1]
    lo, hi = Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))
    coeffs = [int(c) for c in poly.all_coeffs()]
    if lo == hi:
        return lo, hi
    k = bits + 2
    # dyadic grid of step 2**-k, snapped outward
    m_lo = (lo.numerator << k) // lo.denominator
    m_hi = -((-hi.numerator << k) // hi.denominator)
    s_lo = _sign_at_dyadic(coeffs, m_lo, k)
    if s_lo == 0:
        v = Fraction(m_lo, 1 << k)
        return v, v
    while m_hi - m_lo > 1:
        mid = (m_lo + m_hi) // 2
        s = _sign_at_dyadic(coeffs, mid, k)
        if s == 0:
            v = Fraction(mid, 1 << k)
            return v, v
        if s == s_lo:
            m_lo = mid
        else:
            m_hi = mid
    return Fraction(m_lo, 1 << k), Fraction(m_hi, 1 << k)


def _kernel_vector(M: list[list]) -> list:
    """A nonzero vector in the kernel of a square corank-one matrix over an exact field."""
    rows = [list(r) for r in M]
    n = len(rows)
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise ValidationError(f"eigenspace has dimension {len(free)}, expected 1")
    f = free[0]
    v = [Fraction(0)] * n
    v[f] = Fraction(1)
    for i, c in enumerate(pivots):
        v[c] = -rows[i][f]
    return v


def _adjugate_column(A) -> list[sympy.Poly]:
    q = len(A)
    adj = (_X * sympy.eye(q) - sympy.Matrix(np.asarray(A).tolist())).adjugate()
    return [sympy.Poly(adj[i, 0], _X) for i in range(q)]


def _eval_poly(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + int(c)
    return acc


def perron_data(A, precision: int = DEFAULT_PRECISION) -> SpectralData:
    """Perron-Frobenius eigenvalue and normalized eigenvector of a primitive matrix."""
    A = np.asarray(A, dtype=np.int64)
    if not is_primitive(A):
        raise NotPrimitive("incidence matrix is not primitive")
    poly = _dominant_factor(A)
    coeffs = tuple(int(c) for c in poly.all_coeffs())
    deg = len(coeffs) - 1
    q = A.shape[0]
    if deg <= 2:
        if deg == 1:
            theta = Fraction(-coeffs[1], coeffs[0])
        else:
            a, b, c = coeffs
            theta = (Quadratic.sqrt(Fraction(b * b - 4 * a * c)) - b) / (2 * a)
        M = [[int(A[i, j]) - (theta if i == j else 0) for j in range(q)] for i in range(q)]
        v = _kernel_vector(M)
        total = sum(v, Fraction(0))
        mu = tuple(x / total for x in v)
        return SpectralData(theta, mu, coeffs, None)
    lo, hi = _isolate_largest_root(poly, precision + 8)
    theta = Ball.from_bounds(lo, hi, precision + 8)
    v = [_eval_poly(p.all_coeffs(), theta) for p in _adjugate_column(A)]
    total = v[0]
    for x in v[1:]:
        total = total + x
    mu = tuple(x / total for x in v)
    return SpectralData(theta, mu, coeffs, precision)


def spectral_of(morphism: Morphism, precision: int = DEFAULT_PRECISION) -> SpectralData:
    return perron_data(incidence_matrix(morphism), precision)


def residual_ok(A, data: SpectralData) -> bool:
    """``A mu == theta mu`` exactly, or consistently within the ball enclosures."""
    A = np.asarray(A)
    q = A.shape[0]
    for i in range(q):
        lhs = 0
        for j in range(q):
            lhs = lhs + int(A[i, j]) * data.mu[j]
        rhs = data.theta * data.mu[i]
        if data.exact:
            if compare(lhs, rhs) != 0:
                return False
        elif not (lhs - rhs).contains(0):
            return False
    return True
