"""Galois group certification for degree-7 polynomials over Q.

The verdict is assembled from three sound witnesses:

* a prime p with f mod p irreducible (Gal(f) is transitive),
* a prime whose Frobenius cycle type has a 5-part (5 divides |Gal(f)|; among
  transitive subgroups of S7, of orders 7, 14, 21, 42, 168, 2520, 5040, only
  A7 and S7 qualify),
* the discriminant square test (inside A7 or not).

A missing witness gives ``INCONCLUSIVE``, never a false certificate.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Iterator, Optional, Sequence

from .arith import UniPoly, discriminant
from .errors import InputError, NotUsableError

log = logging.getLogger(__name__)

CERTIFIED_S7 = "CERTIFIED_S7"
CERTIFIED_A7 = "CERTIFIED_A7"
INCONCLUSIVE = "INCONCLUSIVE"

DEFAULT_PRIME_BOUND = 10_000
DEFAULT_FIVE_PART_BUDGET = 200
DEFAULT_SEED = 20240601


# -- F_p[x] with coefficient lists (low degree first) --------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def mp_reduce(coeffs: Sequence[int], p: int) -> list[int]:
    return _trim([c % p for c in coeffs])


def mp_add(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def mp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    rem = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(rem) - 1 < db:
        return [], _trim(rem)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] * inv % p
        quot[k] = c
        if c:
            for j, bc in enumerate(b):
                rem[k + j] = (rem[k + j] - c * bc) % p
    return _trim(quot), _trim(rem[:db])


def mp_mod(a: list[int], b: list[int], p: int) -> list[int]:
    return mp_divmod(a, b, p)[1]


def mp_monic(a: list[int], p: int) -> list[int]:
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def mp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, mp_mod(a, b, p)
    return mp_monic(a, p) if a else a


def mp_derivative(a: list[int], p: int) -> list[int]:
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def mp_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = mp_mod(base, m, p)
    while e:
        if e & 1:
            result = mp_mod(mp_mul(result, base, p), m, p)
        base = mp_mod(mp_mul(base, base, p), m, p)
        e >>= 1
    return result


X = [0, 1]


def distinct_degree(f: list[int], p: int) -> list[tuple[int, list[int]]]:
    """Split squarefree monic f into (d, product of all degree-d factors)."""
    out = []
    rest = f
    h = X
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = mp_powmod(h, p, rest, p)
        g = mp_gcd(rest, mp_sub(h, X, p), p)
        if len(g) > 1:
            out.append((d, g))
            rest = mp_divmod(rest, g, p)[0]
            h = mp_mod(h, rest, p)
    if len(rest) > 1:
        out.append((len(rest) - 1, rest))
    return out


def _random_poly(deg_below: int, p: int, rng: random.Random) -> list[int]:
    return _trim([rng.randrange(p) for _ in range(deg_below)])


def equal_degree(g: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    n = len(g) - 1
    if n == d:
        return [g]
    while True:
        a = _random_poly(n, p, rng)
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t = a
            acc = a
            for _ in range(d - 1):
                t = mp_mod(mp_mul(t, t, p), g, p)
                acc = mp_add(acc, t, p)
            b = acc
        else:
            b = mp_sub(mp_powmod(a, (p ** d - 1) // 2, g, p), [1], p)
        h = mp_gcd(g, b, p)
        if 1 < len(h) < len(g):
            other = mp_divmod(g, h, p)[0]
            return equal_degree(h, d, p, rng) + equal_degree(mp_monic(other, p), d, p, rng)


def is_irreducible_mod_p(g: Sequence[int], p: int) -> bool:
    """Rabin's test."""
    g = mp_monic(mp_reduce(g, p), p)
    n = len(g) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if mp_powmod(X, p ** n, g, p) != mp_mod(X, g, p):
        return False
    for q in _prime_factors(n):
        h = mp_sub(mp_powmod(X, p ** (n // q), g, p), X, p)
        if len(mp_gcd(g, h, p)) > 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


# -- integer-coefficient entry points -------------------------------------------

def integer_coeffs(f: UniPoly) -> list[int]:
    """Coefficients of the primitive integer multiple of f."""
    return [int(c) for c in f.primitive_integer().coeffs]


def factor_mod_p(f: UniPoly, p: int, rng: Optional[random.Random] = None) -> list[list[int]]:
    """Monic irreducible factors of f mod p, sorted by (degree, coefficients).

    Raises :class:`NotUsableError` if p divides lc(f) or f mod p is not
    squarefree (equivalently, p divides lc(f) * disc(f)).
    """
    coeffs = integer_coeffs(f)
    if coeffs[-1] % p == 0:
        raise NotUsableError(f"p={p} divides the leading coefficient")
    fp = mp_monic(mp_reduce(coeffs, p), p)
    if len(mp_gcd(fp, mp_derivative(fp, p), p)) > 1:
        raise NotUsableError(f"f mod {p} is not squarefree")
    rng = rng or random.Random(DEFAULT_SEED ^ p)
    factors: list[list[int]] = []
    for d, g in distinct_degree(fp, p):
        factors.extend(equal_degree(g, d, p, rng))
    return sorted((mp_monic(g, p) for g in factors), key=lambda g: (len(g), g))


def factor_degrees_mod_p(f: UniPoly, p: int, rng: Optional[random.Random] = None) -> list[int]:
    return sorted((len(g) - 1 for g in factor_mod_p(f, p, rng)), reverse=True)


def product_mod_p(factors: Sequence[Sequence[int]], p: int) -> list[int]:
    acc = [1]
    for g in factors:
        acc = mp_mul(acc, mp_reduce(g, p), p)
    return acc


# -- rational-root and square tests -----------------------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(f: UniPoly) -> list[Fraction]:
    """All rational roots, by the rational root theorem."""
    cs = integer_coeffs(f)
    roots = set()
    # strip the factor t^k first
    k = 0
    while k < len(cs) and cs[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    cs = cs[k:]
    if len(cs) > 1:
        g = UniPoly(cs)
        for a in _divisors(cs[0]):
            for b in _divisors(cs[-1]):
                for cand in (Fraction(a, b), Fraction(-a, b)):
                    if g(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def is_rational_square(x: Fraction) -> bool:
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


# -- verdict ------------------------------------------------------------------------

@dataclass
class CycleTypeWitness:
    prime: int
    degrees: list[int]
    factors: list[list[int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"prime": self.prime, "cycle_type": list(self.degrees), "factors": [list(g) for g in self.factors]}


@dataclass
class GaloisVerdict:
    status: str
    discriminant: Fraction
    disc_is_square: bool
    irreducibility: Optional[CycleTypeWitness] = None
    five_part: Optional[CycleTypeWitness] = None
    primes_scanned: int = 0
    usable_primes: int = 0
    seed: int = DEFAULT_SEED
    diagnostic: str = ""

    @property
    def certified(self) -> bool:
        return self.status in (CERTIFIED_S7, CERTIFIED_A7)

    @property
    def group(self) -> Optional[str]:
        return {CERTIFIED_S7: "S7", CERTIFIED_A7: "A7"}.get(self.status)

    def to_json(self) -> dict:
        five = self.five_part
        return {
            "status": self.status,
            "witness_primes": {
                "irreducibility": self.irreducibility.prime if self.irreducibility else None,
                "five_part": five.prime if five else None,
            },
            "cycle_type": sorted(five.degrees, reverse=True) if five else None,
            "witnesses": {
                "irreducibility": self.irreducibility.to_json() if self.irreducibility else None,
                "five_part": five.to_json() if five else None,
            },
            "discriminant": str(self.discriminant),
            "disc_is_square": self.disc_is_square,
            "primes_scanned": self.primes_scanned,
            "usable_primes": self.usable_primes,
            "seed": self.seed,
            "diagnostic": self.diagnostic,
        }


ScanLookup = Callable[[int], Optional[list[list[int]]]]


def _check_degree7(f: UniPoly) -> None:
    if f.degree != 7:
        raise InputError("WRONG_DEGREE", f"expected a degree-7 polynomial, got degree {f.degree}")


def irreducibility_witness(f: UniPoly, prime_bound: int = DEFAULT_PRIME_BOUND, seed: int = DEFAULT_SEED) -> Optional[int]:
    """Smallest usable prime p <= prime_bound with f irreducible mod p, else None."""
    _check_degree7(f)
    if discriminant(f) == 0:
        raise InputError("INSEPARABLE", "polynomial has a repeated root")
    for p in primes_up_to(prime_bound):
        try:
            degs = factor_degrees_mod_p(f, p, random.Random(seed ^ p))
        except NotUsableError:
            continue
        if degs == [7]:
            return p
    return None


def scan_primes(
    f: UniPoly,
    prime_bound: int,
    seed: int,
    cache: Optional[dict] = None,
) -> Iterator[tuple[int, Optional[list[list[int]]]]]:
    """Yield (p, factors or None if unusable) in ascending prime order.

    ``cache`` maps str(p) -> factor list (or None) and is filled as we go.
    """
    for p in primes_up_to(prime_bound):
        key = str(p)
        if cache is not None and key in cache:
            yield p, cache[key]
            continue
        try:
            factors = factor_mod_p(f, p, random.Random(seed ^ p))
        except NotUsableError:
            factors = None
        if cache is not None:
            cache[key] = factors
        yield p, factors


def classify_galois(
    f: UniPoly,
    prime_bound: int = DEFAULT_PRIME_BOUND,
    sample_budget: int = DEFAULT_FIVE_PART_BUDGET,
    seed: int = DEFAULT_SEED,
    cache: Optional[dict] = None,
) -> GaloisVerdict:
    _check_degree7(f)
    disc = discriminant(f)
    if disc == 0:
        raise InputError("INSEPARABLE", "polynomial has a repeated root")
    roots = rational_roots(f)
    if roots:
        raise InputError("REDUCIBLE", f"rational root {roots[0]} found")
    square = is_rational_square(disc)

    irred = five = None
    scanned = usable = 0
    for p, factors in scan_primes(f, prime_bound, seed, cache):
        scanned += 1
        if factors is None:
            continue
        usable += 1
        degs = sorted((len(g) - 1 for g in factors), reverse=True)
        if irred is None and degs == [7]:
            irred = CycleTypeWitness(p, degs, factors)
        if five is None and 5 in degs:
            five = CycleTypeWitness(p, degs, factors)
        if irred is not None and five is not None:
            break
        if usable >= sample_budget:
            break

    verdict = GaloisVerdict(
        status=INCONCLUSIVE,
        discriminant=disc,
        disc_is_square=square,
        irreducibility=irred,
        five_part=five,
        primes_scanned=scanned,
        usable_primes=usable,
        seed=seed,
    )
    if irred is not None and five is not None:
        verdict.status = CERTIFIED_A7 if square else CERTIFIED_S7
    else:
        missing = [name for name, w in (("irreducibility", irred), ("five-part", five)) if w is None]
        verdict.diagnostic = (
            f"no {' or '.join(missing)} witness among {usable} usable primes "
            f"(scanned {scanned} primes <= {prime_bound})"
        )
        log.info("galois stage inconclusive: %s", verdict.diagnostic)
    return verdict


def verify_witness(f: UniPoly, witness: dict) -> Optional[str]:
    """Re-check a serialized cycle-type witness; return a failure reason or None."""
    p = int(witness["prime"])
    factors = [[int(c) for c in g] for g in witness["factors"]]
    claimed = sorted((int(d) for d in witness["cycle_type"]), reverse=True)
    if not factors:
        return "witness has no factors"
    if p < 2 or _prime_factors(p) != [p]:
        return f"witness prime {p} is not prime"
    coeffs = integer_coeffs(f)
    if coeffs[-1] % p == 0:
        return f"witness prime {p} divides the leading coefficient"
    disc = discriminant(UniPoly(coeffs))
    if disc.numerator % p == 0:
        return f"witness prime {p} divides the discriminant"
    fp = mp_monic(mp_reduce(coeffs, p), p)
    if product_mod_p(factors, p) != fp:
        return f"factors do not multiply back to f mod {p}"
    for g in factors:
        if not is_irreducible_mod_p(g, p):
            return f"factor {g} is reducible mod {p}"
    degs = sorted((len(mp_reduce(g, p)) - 1 for g in factors), reverse=True)
    if degs != claimed:
        return f"cycle type {claimed} disagrees with factor degrees {degs} mod {p}"
    return None
