"""Exact rational arithmetic: dense univariate polynomials, truncated power
series and the quotient ring Q[t]/(f).

Rationals are :class:`fractions.Fraction`; nothing here ever touches floats.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Fraction
RatLike = Union[int, Fraction, str]


def as_rat(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rat_to_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class UniPoly:
    """Dense univariate polynomial with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``t**i``; trailing zeros are stripped
    so the zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- construction -----------------------------------------------------
    @classmethod
    def monomial(cls, degree: int, coeff: RatLike = 1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c: RatLike) -> "UniPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable[RatLike]) -> "UniPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_rat(r), 1])
        return p

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        return self.to_text()

    # -- ring operations --------------------------------------------------
    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "UniPoly":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result, base = UniPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        return poly_divmod(self, _coerce(other))

    def __floordiv__(self, other) -> "UniPoly":
        return poly_divmod(self, _coerce(other))[0]

    def __mod__(self, other) -> "UniPoly":
        return poly_divmod(self, _coerce(other))[1]

    def scale(self, c: RatLike) -> "UniPoly":
        c = as_rat(c)
        return UniPoly(c * a for a in self.coeffs)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic normalization")
        return self.scale(1 / self.lc)

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a rational or anything supporting
        ``*`` and ``+`` with rationals (polynomials, :class:`NfElem`)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def primitive_integer(self) -> "UniPoly":
        """Positive rational multiple with coprime integer coefficients."""
        if self.is_zero():
            return self
        from math import gcd, lcm

        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return UniPoly(Fraction(v // g) for v in ints)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> list[str]:
        return [rat_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "UniPoly":
        return cls(Fraction(s) for s in data)

    def to_text(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = rat_to_str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{rat_to_str(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _coerce(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    return UniPoly([as_rat(x)])


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+(?:/\d+)?)?\s*
        (?P<star>\*)?\s*
        (?P<var>[a-zA-Z])?
        (?:\s*(?:\^|\*\*)\s*(?P<exp>\d+))?\s*""",
    re.VERBOSE,
)


class PolyParseError(ValueError):
    pass


def parse_poly(text: str) -> UniPoly:
    """Parse ``"t^7 - t - 1"``-style text (one variable, rational coefficients).

    >>> parse_poly("3/2*t^2 - t + 1").to_json()
    ['1', '-1', '3/2']
    """
    s = text.strip()
    if not s:
        raise PolyParseError("empty polynomial text")
    var = None
    coeffs: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise PolyParseError(f"cannot parse polynomial at position {pos}: {s[pos:]!r}")
        sign, coef, star, v, exp = m.group("sign", "coef", "star", "var", "exp")
        if sign is None and not first:
            raise PolyParseError(f"missing operator before {m.group(0).strip()!r}")
        if coef is None and v is None:
            raise PolyParseError(f"empty term at position {pos}")
        if star and (coef is None or v is None):
            raise PolyParseError(f"dangling '*' at position {pos}")
        if exp is not None and v is None:
            raise PolyParseError(f"exponent without variable at position {pos}")
        if v is not None:
            if var is None:
                var = v
            elif v != var:
                raise PolyParseError(f"mixed variables {var!r} and {v!r}")
        c = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            c = -c
        e = 0 if v is None else (int(exp) if exp is not None else 1)
        coeffs[e] = coeffs.get(e, Fraction(0)) + c
        pos = m.end()
        first = False
    if not coeffs:
        raise PolyParseError("no terms")
    top = max(coeffs)
    return UniPoly(coeffs.get(i, 0) for i in range(top + 1))


# -- division, resultants ------------------------------------------------------

def poly_divmod(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db = b.degree
    inv_lc = 1 / b.lc
    if len(rem) - 1 < db:
        return UniPoly(), a
    quot = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] * inv_lc
        quot[k] = c
        if c:
            for j, bc in enumerate(b.coeffs):
                rem[k + j] -= c * bc
    return UniPoly(quot), UniPoly(rem[:db])


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a if a.is_zero() else a.monic()


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """Res(a, b) = lc(a)^deg(b) * prod b(alpha) over the roots of a.

    Euclidean remainder sequence over Q, using
    Res(b, a) = lc(b)^(deg a - deg r) Res(b, r) for a = q b + r.
    """
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant with the zero polynomial is undefined")
    result = Fraction(1)
    while True:
        n, m = a.degree, b.degree
        if n == 0:
            return result * a.lc ** m
        if m == 0:
            return result * b.lc ** n
        # Res(a, b) = (-1)^{nm} Res(b, a)
        if n < m:
            if (n * m) % 2:
                result = -result
            a, b = b, a
            continue
        r = poly_divmod(a, b)[1]
        if r.is_zero():
            return Fraction(0)
        # Res(a, b) = (-1)^{nm} Res(b, a) = (-1)^{nm} lc(b)^{n - deg r} Res(b, r)
        if (n * m) % 2:
            result = -result
        result *= b.lc ** (n - r.degree)
        a, b = b, r


def discriminant(f: UniPoly) -> Fraction:
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs a polynomial of degree >= 1")
    if n == 1:
        return Fraction(1)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


# -- Newton's identities ------------------------------------------------------

def power_sums(f: UniPoly, count: int) -> list[Fraction]:
    """Root power sums p_1..p_count of a monic polynomial."""
    if not f.is_monic():
        raise ValueError("power_sums requires a monic polynomial")
    if count < 0:
        raise ValueError("count must be non-negative")
    n = f.degree
    # elementary symmetric functions: f = sum_k (-1)^k e_k t^(n-k)
    e = [Fraction(1)] + [(-1) ** k * f.coeff(n - k) for k in range(1, n + 1)]
    p: list[Fraction] = []
    for k in range(1, count + 1):
        acc = Fraction(0)
        for i in range(1, min(k - 1, n) + 1):
            acc += (-1) ** (i - 1) * e[i] * p[k - i - 1]
        if k <= n:
            acc += (-1) ** (k - 1) * k * e[k]
        p.append(acc)
    return p


def poly_from_power_sums(p: Sequence[RatLike]) -> UniPoly:
    """Monic degree-len(p) polynomial whose roots have power sums ``p``."""
    ps = [as_rat(x) for x in p]
    n = len(ps)
    e = [Fraction(1)]
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * ps[i - 1]
        e.append(acc / k)
    return UniPoly((-1) ** (n - j) * e[n - j] for j in range(n + 1))


# -- truncated power series ----------------------------------------------------

class Series:
    """Power series truncated at ``order``: coefficients of x^0..x^(order-1)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[RatLike], order: int):
        if order < 0:
            raise ValueError("negative truncation order")
        cs = [as_rat(c) for c in coeffs][:order]
        cs += [Fraction(0)] * (order - len(cs))
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.order = order

    def _check(self, other: "Series") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "Series") -> "Series":
        n = self._check(other)
        return Series((self.coeffs[i] + other.coeffs[i] for i in range(n)), n)

    def __sub__(self, other: "Series") -> "Series":
        n = self._check(other)
        return Series((self.coeffs[i] - other.coeffs[i] for i in range(n)), n)

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            c = as_rat(other)
            return Series((c * a for a in self.coeffs), self.order)
        n = self._check(other)
        out = [Fraction(0)] * n
        for i in range(n):
            a = self.coeffs[i]
            if a == 0:
                continue
            for j in range(n - i):
                out[i + j] += a * other.coeffs[j]
        return Series(out, n)

    __rmul__ = __mul__

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k < self.order:
            raise IndexError(f"coefficient {k} is beyond truncation order {self.order}")
        return self.coeffs[k]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Series) and (self.order, self.coeffs) == (other.order, other.coeffs)

    def __repr__(self) -> str:
        return f"Series({[rat_to_str(c) for c in self.coeffs]}, order={self.order})"


# -- Q[t]/(f) ------------------------------------------------------------------

class NfElem:
    """Element of Q[t]/(f), stored as its canonical remainder mod f."""

    __slots__ = ("rep", "modulus")

    def __init__(self, rep: UniPoly, modulus: UniPoly):
        if modulus.degree < 1 or not modulus.is_monic():
            raise ValueError("modulus must be monic of degree >= 1")
        self.modulus = modulus
        self.rep = rep if rep.degree < modulus.degree else poly_divmod(rep, modulus)[1]

    def _same(self, other) -> "NfElem":
        if not isinstance(other, NfElem):
            return NfElem(_coerce(other), self.modulus)
        if other.modulus != self.modulus:
            raise ValueError("NfElem moduli differ")
        return other

    def __add__(self, other) -> "NfElem":
        other = self._same(other)
        return NfElem(self.rep + other.rep, self.modulus)

    __radd__ = __add__

    def __neg__(self) -> "NfElem":
        return NfElem(-self.rep, self.modulus)

    def __sub__(self, other) -> "NfElem":
        return self + (-self._same(other))

    def __mul__(self, other) -> "NfElem":
        other = self._same(other)
        return NfElem(self.rep * other.rep, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "NfElem":
        result, base = NfElem(UniPoly([1]), self.modulus), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NfElem):
            return self.modulus == other.modulus and self.rep == other.rep
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.rep, self.modulus))

    def __repr__(self) -> str:
        return f"NfElem({self.rep} mod {self.modulus})"


def nf_reduce(a: UniPoly, f: UniPoly) -> NfElem:
    return NfElem(a, f)


def nf_add(x: NfElem, y: NfElem) -> NfElem:
    return x + y


def nf_mul(x: NfElem, y: NfElem) -> NfElem:
    return x * y
