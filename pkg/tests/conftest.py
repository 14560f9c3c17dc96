import random

import pytest

from quartic_forge.arith import UniPoly, discriminant
from quartic_forge.galois import classify_galois, rational_roots


def random_degree7(rng: random.Random, lo: int = -10, hi: int = 10, monic: bool = False) -> UniPoly:
    while True:
        cs = [rng.randint(lo, hi) for _ in range(7)] + [1 if monic else rng.choice([c for c in range(lo, hi + 1) if c])]
        f = UniPoly(cs)
        if discriminant(f) != 0:
            return f


def certified_corpus(n: int, seed: int = 7) -> list:
    """First n random degree-7 integer polynomials (coefficients in [-10, 10]) that certify."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        f = random_degree7(rng)
        if rational_roots(f):
            continue
        v = classify_galois(f)
        if v.certified:
            out.append((f, v))
    return out


@pytest.fixture(scope="session")
def corpus():
    return certified_corpus(20)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
