"""Scalar arithmetic shared by every geometric predicate.

Two modes exist.  Rational mode stores coordinates as ``fractions.Fraction``
and every comparison is exact.  Float mode stores plain ``float`` values and
carries an explicit tolerance ``eps`` that each comparison must use.  Mixing
the two modes in one predicate is an error, enforced by the callers.
"""

from __future__ import annotations

import math
from fractions import Fraction

RATIONAL = "rational"
FLOAT = "float"

DEFAULT_EPS = 1e-9

Scalar = Fraction | float  # a coordinate in either mode


def is_rational_value(x) -> bool:
    return isinstance(x, (Fraction, int))


def le(x, y, eps: float = 0.0) -> bool:
    """x <= y, slackened by eps in float mode (eps == 0 means exact)."""
    if eps:
        return x <= y + eps
    return x <= y


def lt(x, y, eps: float = 0.0) -> bool:
    if eps:
        return x < y - eps
    return x < y


def ratio(num, den):
    """Exact division: Fraction for integer operands, '/' otherwise."""
    if isinstance(num, int) and isinstance(den, int):
        return Fraction(num, den)
    return num / den


def half(x):
    """Exact x/2 for ints and Fractions, plain halving for floats."""
    if isinstance(x, float):
        return x / 2.0
    return Fraction(x, 2)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def scale(u, c):
    return tuple(a * c for a in u)


def dist2(u, v):
    return sum((a - b) ** 2 for a, b in zip(u, v))


def cross3(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def is_zero_vec(u) -> bool:
    return all(x == 0 for x in u)


def sqrt_lower(q: Fraction) -> Fraction:
    """Largest convenient rational lower bound on sqrt(q), q >= 0."""
    if q < 0:
        raise ValueError("negative operand")
    n, d = q.numerator, q.denominator
    return Fraction(math.isqrt(n * d), d)


def sqrt_upper(q: Fraction) -> Fraction:
    """Rational upper bound on sqrt(q): sqrt_lower + 1/denominator."""
    if q < 0:
        raise ValueError("negative operand")
    n, d = q.numerator, q.denominator
    s = math.isqrt(n * d)
    if s * s == n * d:
        return Fraction(s, d)
    return Fraction(s + 1, d)


def pow2(k: int):
    """2**k as an exact Fraction, k may be negative."""
    if k >= 0:
        return Fraction(1 << k)
    return Fraction(1, 1 << (-k))


def smallest_pow2_geq(x) -> int:
    """Exponent k of the smallest power of two with 2**k >= x > 0."""
    if x <= 0:
        raise ValueError("need positive value")
    k = math.ceil(math.log2(float(x))) if float(x) > 0 else 0
    # log2 on a float approximation can be off by one either way; fix exactly.
    while pow2(k) < x:
        k += 1
    while k - 1 >= -(10**6) and pow2(k - 1) >= x:
        k -= 1
    return k


def floor_div(x, cell) -> int:
    """floor(x / cell) computed exactly for Fractions, directly for floats."""
    if isinstance(x, Fraction) or isinstance(cell, Fraction):
        return (Fraction(x) / Fraction(cell)).__floor__()
    return math.floor(x / cell)
