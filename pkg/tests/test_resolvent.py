import itertools
import random
from fractions import Fraction

import mpmath
import pytest

from quartic_forge.errors import InputError
from quartic_forge.arith import UniPoly, parse_poly, poly_gcd
from quartic_forge.resolvent import (
    collinear_triple_exists,
    six_on_conic_exists,
    sum_of_roots,
    triple_sum_resolvent,
)

F = parse_poly("t^7 - t - 1")


def random_monic(seed: int, n: int = 10) -> list[UniPoly]:
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        f = UniPoly([rng.randint(-10, 10) for _ in range(7)] + [1])
        if poly_gcd(f, f.derivative()).degree == 0:
            out.append(f)
    return out


def brute_force_resolvent(f: UniPoly) -> list:
    """Oracle: expand prod (x - (r_i + r_j + r_k)) over mpmath roots."""
    with mpmath.workdps(60):
        roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(f.coeffs)], maxsteps=200, extraprec=200)
        coeffs = [mpmath.mpc(1)]
        for i, j, k in itertools.combinations(range(7), 3):
            s = roots[i] + roots[j] + roots[k]
            nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
            for d, c in enumerate(coeffs):
                nxt[d + 1] += c
                nxt[d] -= s * c
            coeffs = nxt
        return coeffs, roots


CORPUS = random_monic(2024)


def test_degree_and_integrality_examples():
    r = triple_sum_resolvent(F)
    assert r.degree == 35 and r.is_monic() and r.has_integer_coeffs()
    assert r(Fraction(0)) == 128


def test_consecutive_roots_have_triple_sum_six():
    f = UniPoly.from_roots(range(1, 8))
    assert triple_sum_resolvent(f)(Fraction(6)) == 0


def test_resolvent_exact_on_rational_roots():
    roots = [1, 2, 3, 4, 5, 6, 7]
    expect = UniPoly([1])
    for tri in itertools.combinations(roots, 3):
        expect = expect * UniPoly([-sum(tri), 1])
    assert triple_sum_resolvent(UniPoly.from_roots(roots)) == expect


@pytest.mark.parametrize("f", CORPUS, ids=[f"poly{i}" for i in range(len(CORPUS))])
def test_matches_floating_point_product(f):
    r = triple_sum_resolvent(f)
    assert r.degree == 35 and r.has_integer_coeffs() and r.is_monic()
    approx, _ = brute_force_resolvent(f)
    for d, c in enumerate(r.coeffs):
        z = approx[d]
        scale = max(1, abs(c))
        assert abs(z.imag) / scale < 1e-6
        assert abs(z.real - float(c)) / scale < 1e-6


@pytest.mark.parametrize("f", CORPUS, ids=[f"poly{i}" for i in range(len(CORPUS))])
def test_squarefree_when_triple_sums_distinct(f):
    _, roots = brute_force_resolvent(f)
    sums = [roots[i] + roots[j] + roots[k] for i, j, k in itertools.combinations(range(7), 3)]
    distinct = min(abs(a - b) for a, b in itertools.combinations(sums, 2)) > 1e-12
    r = triple_sum_resolvent(f)
    if distinct:
        assert poly_gcd(r, r.derivative()).degree == 0


def test_non_monic_input_normalized():
    f = parse_poly("3t^7 - 2t + 5")
    assert triple_sum_resolvent(f) == triple_sum_resolvent(f.monic())


def test_rejects_wrong_degree():
    with pytest.raises(InputError) as exc:
        triple_sum_resolvent(parse_poly("t^6 - 1"))
    assert exc.value.code == "WRONG_DEGREE"


def test_collinear_examples():
    assert collinear_triple_exists(UniPoly.from_roots([-1, 0, 1, 2, 3, 4, 5]))
    assert not collinear_triple_exists(F)
    assert not collinear_triple_exists(parse_poly("t^7 - 2"))
    assert triple_sum_resolvent(parse_poly("t^7 - 2"))(Fraction(0)) == 4096


def test_conic_examples():
    assert not six_on_conic_exists(F)
    g = parse_poly("t^2 - 1") * parse_poly("t^2 - 4") * parse_poly("t^2 - 9") * parse_poly("t - 5")
    assert six_on_conic_exists(g)
    assert six_on_conic_exists(parse_poly("t^7"))


def test_sum_of_roots_uses_raw_coefficients():
    assert sum_of_roots(parse_poly("2t^7 + 3t^6 + 1")) == Fraction(-3, 2)
