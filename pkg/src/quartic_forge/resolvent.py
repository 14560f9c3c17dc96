"""Triple-sum resolvent and the two general-position tests for B_f.

Three points (a^3 : a : 1) are collinear iff the three roots sum to zero, and
six are on a conic iff the remaining seventh root equals the sum of all roots.
Both tests are answered with exact symmetric-function computations; roots are
never constructed.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .arith import Series, UniPoly, discriminant, poly_from_power_sums, power_sums
from .errors import InputError

TRUNCATION_ORDER = 36


def _exp_power_sum_series(p: list[Fraction], m: int, order: int, n_roots: int) -> Series:
    """sum_i exp(m * alpha_i * x) truncated at ``order``; p[k-1] = p_k."""
    coeffs = [Fraction(n_roots)]
    for k in range(1, order):
        coeffs.append(Fraction(m) ** k * p[k - 1] / factorial(k))
    return Series(coeffs, order)


def triple_sum_resolvent(f: UniPoly) -> UniPoly:
    """prod_{i<j<k} (x - (a_i + a_j + a_k)) over the roots of the degree-7 f."""
    if f.degree != 7:
        raise InputError("WRONG_DEGREE", f"triple-sum resolvent needs degree 7, got {f.degree}")
    if discriminant(f) == 0:
        raise InputError("INSEPARABLE", "polynomial has a repeated root")
    g = f.monic()
    n_out = comb(7, 3)
    order = TRUNCATION_ORDER
    p = power_sums(g, order - 1)
    q1, q2, q3 = (_exp_power_sum_series(p, m, order, 7) for m in (1, 2, 3))
    # e3 of the exponentials (x_i = exp(a_i x)) via Newton: (p1^3 - 3 p1 p2 + 2 p3) / 6
    e3 = (q1 * q1 * q1 - q1 * q2 * 3 + q3 * 2) * Fraction(1, 6)
    triple_sums = [e3[k] * factorial(k) for k in range(1, n_out + 1)]
    return poly_from_power_sums(triple_sums)


def collinear_triple_exists(f: UniPoly) -> bool:
    return triple_sum_resolvent(f)(Fraction(0)) == 0


def sum_of_roots(f: UniPoly) -> Fraction:
    return -f.coeff(f.degree - 1) / f.lc


def six_on_conic_exists(f: UniPoly) -> bool:
    if f.degree != 7:
        raise InputError("WRONG_DEGREE", f"conic test needs degree 7, got {f.degree}")
    return f(sum_of_roots(f)) == 0
