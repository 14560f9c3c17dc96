"""Exact arithmetic in Q(zeta_N), elements reduced modulo the N-th
cyclotomic polynomial.

Bulk sums (orthogonality relations) are accumulated as integer exponent
counts and reduced once through a cached table of zeta^e mod Phi_N; the
table lookup runs as an int64 matrix product when the magnitudes allow it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from .arith import RatLike, as_rat

_INT64_SAFE = 1 << 62


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _int_poly_divexact(a: list[int], b: list[int]) -> list[int]:
    """Exact quotient of integer polynomials, b monic (low degree first)."""
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        q[k] = c
        if c:
            for j, bc in enumerate(b):
                a[k + j] -= c * bc
    if any(a[:db]):
        raise ArithmeticError("inexact cyclotomic division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _int_poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds zeta_n^e reduced mod Phi_n, for e = 0..n-1."""
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    rows = []
    cur = [1] + [0] * (d - 1) if d > 0 else []
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by zeta: shift, then fold the x^d term back with Phi_n
        top = cur[-1] if d > 0 else 0
        nxt = [0] + cur[:-1] if d > 0 else []
        if top:
            nxt = [nxt[i] - top * phi[i] for i in range(d)]
        cur = nxt
    return tuple(rows)


@lru_cache(maxsize=None)
def _power_array(n: int) -> np.ndarray:
    return np.array(power_table(n), dtype=np.int64)


@lru_cache(maxsize=None)
def _sparse_rows(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    return tuple(tuple((i, x) for i, x in enumerate(row) if x) for row in power_table(n))


_ZERO = Fraction(0)
_SPARSE_LIMIT = 16


def _to_fractions(ints) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(x)) if x else _ZERO for x in ints)


@lru_cache(maxsize=None)
def _table_bound(n: int) -> int:
    return max((abs(x) for row in power_table(n) for x in row), default=0)


def reduce_counts(counts: Mapping[int, RatLike] | Sequence[int], n: int) -> tuple[Fraction, ...]:
    """Reduce sum_e counts[e] * zeta_n^e to canonical coefficients."""
    items = counts.items() if isinstance(counts, Mapping) else enumerate(counts)
    items = [(e % n, c) for e, c in items if c]
    table = power_table(n)
    d = len(table[0]) if table else 0
    if all(isinstance(c, int) for _, c in items):
        if len(items) <= _SPARSE_LIMIT:
            acc_int = [0] * d
            rows = _sparse_rows(n)
            for e, c in items:
                for i, x in rows[e]:
                    acc_int[i] += c * x
            return _to_fractions(acc_int)
        total = sum(abs(c) for _, c in items)
        bound = _table_bound(n)
        if total * max(bound, 1) < _INT64_SAFE:
            vec = np.zeros(n, dtype=np.int64)
            for e, c in items:
                vec[e] += c
            out = vec @ _power_array(n)
            return _to_fractions(out.tolist())
    acc = [Fraction(0)] * d
    for e, c in items:
        c = as_rat(c)
        for i, x in enumerate(table[e]):
            if x:
                acc[i] += c * x
    return tuple(acc)


def exponent_product(a: Mapping[int, int], b: Mapping[int, int], n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            k = (e1 + e2) % n
            out[k] = out.get(k, 0) + c1 * c2
    return out


def exponent_conj(a: Mapping[int, int], n: int) -> dict[int, int]:
    return {(-e) % n: c for e, c in a.items()}


def exponent_galois(a: Mapping[int, int], k: int, n: int) -> dict[int, int]:
    """Apply zeta_N -> zeta_N^k (k a unit mod N)."""
    if gcd(k, n) != 1:
        raise ValueError(f"{k} is not a unit mod {n}")
    out: dict[int, int] = {}
    for e, c in a.items():
        j = e * k % n
        out[j] = out.get(j, 0) + c
    return out


def galois_lift(k: int, m: int, n: int) -> int:
    """A unit mod n that is congruent to k mod m (m divides n, gcd(k, m) = 1)."""
    if n % m or gcd(k, m) != 1:
        raise ValueError(f"cannot lift {k} mod {m} to a unit mod {n}")
    for j in range(n // m):
        u = k % m + j * m
        if gcd(u, n) == 1:
            return u
    raise ValueError(f"cannot lift {k} mod {m} to a unit mod {n}")


class CycloNum:
    """Element of Q(zeta_N), stored as coefficients of 1, zeta, ..., zeta^(phi(N)-1)."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable[RatLike]):
        cs = tuple(as_rat(c) for c in coeffs)
        d = len(cyclotomic_poly(conductor)) - 1
        if len(cs) != d:
            cs = reduce_counts(dict(enumerate(cs)), conductor) if len(cs) > d else cs + (Fraction(0),) * (d - len(cs))
        self.conductor = conductor
        self.coeffs = cs

    @classmethod
    def from_exponents(cls, conductor: int, terms: Iterable[tuple[int, int]] | Mapping[int, int]) -> "CycloNum":
        items = terms.items() if isinstance(terms, Mapping) else terms
        counts: dict[int, int] = {}
        for e, m in items:
            counts[e % conductor] = counts.get(e % conductor, 0) + m
        return cls(conductor, reduce_counts(counts, conductor))

    @classmethod
    def rational(cls, conductor: int, x: RatLike) -> "CycloNum":
        d = len(cyclotomic_poly(conductor)) - 1
        return cls(conductor, (as_rat(x),) + (Fraction(0),) * (d - 1))

    @classmethod
    def zeta(cls, conductor: int, k: int = 1) -> "CycloNum":
        return cls.from_exponents(conductor, [(k, 1)])

    def _check(self, other: "CycloNum") -> None:
        if not isinstance(other, CycloNum):
            raise TypeError("CycloNum arithmetic needs CycloNum operands")
        if other.conductor != self.conductor:
            raise ValueError(f"conductor mismatch: {self.conductor} vs {other.conductor}")

    def __add__(self, other: "CycloNum") -> "CycloNum":
        self._check(other)
        return CycloNum(self.conductor, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycloNum":
        return CycloNum(self.conductor, (-a for a in self.coeffs))

    def __sub__(self, other: "CycloNum") -> "CycloNum":
        return self + (-other)

    def __mul__(self, other) -> "CycloNum":
        if not isinstance(other, CycloNum):
            c = as_rat(other)
            return CycloNum(self.conductor, (c * a for a in self.coeffs))
        self._check(other)
        counts: dict[int, Fraction] = {}
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        counts[i + j] = counts.get(i + j, Fraction(0)) + a * b
        return CycloNum(self.conductor, reduce_counts(counts, self.conductor))

    __rmul__ = __mul__

    def conj(self) -> "CycloNum":
        n = self.conductor
        counts = {(-k) % n: c for k, c in enumerate(self.coeffs) if c}
        return CycloNum(n, reduce_counts(counts, n))

    def embed(self, conductor: int) -> "CycloNum":
        if conductor % self.conductor:
            raise ValueError(f"cannot embed conductor {self.conductor} into {conductor}")
        step = conductor // self.conductor
        return CycloNum(conductor, reduce_counts({k * step: c for k, c in enumerate(self.coeffs) if c}, conductor))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("cyclotomic number is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def to_complex(self) -> complex:
        """Numerical value under zeta = exp(2 pi i / N); diagnostics only."""
        z = np.exp(2j * np.pi / self.conductor)
        return complex(sum(float(c) * z ** k for k, c in enumerate(self.coeffs)))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloNum):
            return self.conductor == other.conductor and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_rational() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.conductor, self.coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycloNum({self.conductor}, {self.to_rational()})"
        terms = [f"{c}*z^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"CycloNum({self.conductor}, {' + '.join(terms)})"


def cyclo_add(x: CycloNum, y: CycloNum) -> CycloNum:
    return x + y


def cyclo_mul(x: CycloNum, y: CycloNum) -> CycloNum:
    return x * y


def cyclo_conj(x: CycloNum) -> CycloNum:
    return x.conj()
