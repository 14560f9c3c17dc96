"""Ternary forms vanishing on B_f = {(a^3 : a : 1) : f(a) = 0}.

Gives the cubic basis u, v, w of the space of cubics through B_f, the
Jacobian-determinant sextic of that net, and the general-position
certificate for B_f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .arith import NfElem, RatLike, UniPoly, as_rat, discriminant, poly_divmod, rat_to_str
from .errors import InputError
from .resolvent import six_on_conic_exists, sum_of_roots, triple_sum_resolvent

Exps = tuple[int, int, int]
VARS = ("x", "y", "z")


class TriForm:
    """Homogeneous form in x, y, z with rational coefficients."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[Exps, RatLike] | Iterable[tuple[Exps, RatLike]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exps, Fraction] = {}
        for e, c in items:
            e = tuple(int(k) for k in e)
            if len(e) != 3 or min(e) < 0 or sum(e) != degree:
                raise ValueError(f"exponent {e} does not match degree {degree}")
            acc[e] = acc.get(e, Fraction(0)) + as_rat(c)
        self.degree = degree
        self.terms: dict[Exps, Fraction] = {e: c for e, c in acc.items() if c != 0}

    @classmethod
    def zero(cls, degree: int) -> "TriForm":
        return cls(degree)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TriForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.terms.items())))

    def __add__(self, other: "TriForm") -> "TriForm":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError("adding forms of different degrees")
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        return TriForm(self.degree, acc)

    def __neg__(self) -> "TriForm":
        return TriForm(self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "TriForm") -> "TriForm":
        return self + (-other)

    def __mul__(self, other) -> "TriForm":
        if not isinstance(other, TriForm):
            c = as_rat(other)
            return TriForm(self.degree, {e: c * v for e, v in self.terms.items()})
        acc: dict[Exps, Fraction] = {}
        for (a, b, c), s in self.terms.items():
            for (d, e, g), t in other.terms.items():
                k = (a + d, b + e, c + g)
                acc[k] = acc.get(k, Fraction(0)) + s * t
        return TriForm(self.degree + other.degree, acc)

    __rmul__ = __mul__

    def partial(self, var: int) -> "TriForm":
        acc = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                acc[tuple(ne)] = c * e[var]
        return TriForm(self.degree - 1, acc)

    def substitute_linear(self, images: tuple["TriForm", "TriForm", "TriForm"]) -> "TriForm":
        """Compose with (x, y, z) -> images, each a linear form."""
        out = TriForm.zero(self.degree)
        for (a, b, c), coeff in self.terms.items():
            term = TriForm(0, {(0, 0, 0): coeff})
            for img, k in zip(images, (a, b, c)):
                for _ in range(k):
                    term = term * img
            out = out + term
        return out

    def evaluate(self, x, y, z):
        acc = 0
        for (a, b, c), coeff in self.terms.items():
            acc = acc + coeff * (x ** a) * (y ** b) * (z ** c)
        return acc

    def on_curve(self) -> UniPoly:
        """Univariate polynomial q(t^3, t, 1)."""
        out = [Fraction(0)] * (3 * self.degree + 1)
        for (a, b, _), c in self.terms.items():
            out[3 * a + b] += c
        return UniPoly(out)

    def monomials(self) -> list[tuple[Exps, Fraction]]:
        """Terms in graded-lex order, x > y > z."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"exponents": list(e), "coefficient": rat_to_str(c)} for e, c in self.monomials()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TriForm":
        return cls(int(data["degree"]), [(tuple(t["exponents"]), Fraction(t["coefficient"])) for t in data["terms"]])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.monomials():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(VARS, e) if k
            )
            a = abs(c)
            if not mono:
                body = rat_to_str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{rat_to_str(a)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"TriForm({self.degree}, {self})"


def linear(a: RatLike, b: RatLike, c: RatLike) -> TriForm:
    return TriForm(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})


def monomial(i: int, j: int, k: int, coeff: RatLike = 1) -> TriForm:
    return TriForm(i + j + k, {(i, j, k): coeff})


# -- the orbit and its certificate ----------------------------------------------

@dataclass(frozen=True)
class OrbitB:
    """B_f, held symbolically through the (original, non-normalized) f."""

    f: UniPoly

    def __post_init__(self):
        if self.f.degree != 7:
            raise InputError("WRONG_DEGREE", f"B_f needs a degree-7 polynomial, got degree {self.f.degree}")
        if discriminant(self.f) == 0:
            raise InputError("INSEPARABLE", "B_f needs a separable polynomial")

    @property
    def monic(self) -> UniPoly:
        return self.f.monic()

    def point(self) -> tuple[NfElem, NfElem, NfElem]:
        """The generic point (T^3 : T : 1) with T the class of t in Q[t]/(f)."""
        g = self.monic
        t = NfElem(UniPoly([0, 1]), g)
        return t ** 3, t, NfElem(UniPoly([1]), g)


@dataclass
class GeneralPositionCert:
    no_three_collinear: bool
    resolvent_at_zero: Fraction
    no_six_on_conic: bool
    f_at_root_sum: Fraction

    @property
    def valid(self) -> bool:
        return self.no_three_collinear and self.no_six_on_conic

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "no_three_collinear": self.no_three_collinear,
            "resolvent_at_zero": rat_to_str(self.resolvent_at_zero),
            "no_six_on_conic": self.no_six_on_conic,
            "f_at_root_sum": rat_to_str(self.f_at_root_sum),
        }


def general_position_certificate(orbit: OrbitB, resolvent: Optional[UniPoly] = None) -> GeneralPositionCert:
    f = orbit.f
    r3 = resolvent if resolvent is not None else triple_sum_resolvent(f)
    r0 = r3(Fraction(0))
    fs = f(sum_of_roots(f))
    return GeneralPositionCert(
        no_three_collinear=r0 != 0,
        resolvent_at_zero=r0,
        no_six_on_conic=not six_on_conic_exists(f),
        f_at_root_sum=fs,
    )


# -- cubic basis and sextic ------------------------------------------------------------

_V_TEMPLATE: tuple[Exps, ...] = (
    (0, 0, 3),  # c0 z^3
    (0, 1, 2),  # c1 y z^2
    (0, 2, 1),  # c2 y^2 z
    (1, 0, 2),  # c3 x z^2
    (1, 1, 1),  # c4 x y z
    (1, 2, 0),  # c5 x y^2
    (2, 0, 1),  # c6 x^2 z
    (2, 1, 0),  # c7 x^2 y
)


def ninth_power_remainder(f: UniPoly) -> UniPoly:
    """h with t^9 - h(t) divisible by f, deg h < 7."""
    return poly_divmod(UniPoly.monomial(9), f)[1]


def cubic_basis(f: UniPoly) -> tuple[TriForm, TriForm, TriForm]:
    if f.degree != 7:
        if f.coeff(7) == 0 and f.degree < 7:
            raise InputError("ZERO_LEADING", "c7 must be nonzero")
        raise InputError("WRONG_DEGREE", f"cubic basis needs degree 7, got {f.degree}")
    u = TriForm(3, {(1, 0, 2): 1, (0, 3, 0): -1})
    v = TriForm(3, {e: f.coeff(i) for i, e in enumerate(_V_TEMPLATE)})
    h = ninth_power_remainder(f)
    w_terms: dict[Exps, Fraction] = {(3, 0, 0): Fraction(1)}
    for i, e in enumerate(_V_TEMPLATE[:7]):
        w_terms[e] = -h.coeff(i)
    w = TriForm(3, w_terms)
    return u, v, w


def verify_vanishing(q: TriForm, orbit: OrbitB) -> bool:
    """True iff q vanishes at every point of B_f."""
    x, y, z = orbit.point()
    val = NfElem(UniPoly(), orbit.monic)
    for (a, b, c), coeff in q.terms.items():
        val = val + (x ** a) * (y ** b) * (z ** c) * coeff
    return val.is_zero()


def jacobian_determinant(u: TriForm, v: TriForm, w: TriForm) -> TriForm:
    rows = [[q.partial(k) for k in range(3)] for q in (u, v, w)]
    (a, b, c), (d, e, g), (h, i, j) = rows
    return a * (e * j - g * i) - b * (d * j - g * h) + c * (d * i - e * h)


def branch_sextic(u: TriForm, v: TriForm, w: TriForm) -> TriForm:
    for q in (u, v, w):
        if q.degree != 3 and not q.is_zero():
            raise ValueError(f"branch_sextic needs cubic forms, got degree {q.degree}")
    s = jacobian_determinant(u, v, w)
    return s if not s.is_zero() else TriForm.zero(6)
