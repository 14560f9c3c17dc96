import random

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from quartic_forge.f2 import F2Mat, bits_to_int, int_to_bits, nullspace, rank, rref, solve, span


def naive_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(m)) % 2 for j in range(p)] for i in range(n)]


def naive_rank(rows):
    rows = [list(r) for r in rows]
    rk = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        for i in range(len(rows)):
            if i != rk and rows[i][c]:
                rows[i] = [(x + y) % 2 for x, y in zip(rows[i], rows[rk])]
        rk += 1
    return rk


def naive_apply(a, v):
    return [sum(x * y for x, y in zip(row, v)) % 2 for row in a]


def matrices(rows, cols):
    return st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows)


shapes = st.tuples(st.integers(1, 9), st.integers(1, 9), st.integers(1, 9))


@settings(max_examples=150)
@given(shapes.flatmap(lambda s: st.tuples(matrices(s[0], s[1]), matrices(s[1], s[2]))))
def test_matmul_matches_naive(ab):
    a, b = ab
    assert (F2Mat.from_lists(a) @ F2Mat.from_lists(b)).to_lists() == naive_mul(a, b)


@settings(max_examples=150)
@given(st.tuples(st.integers(1, 10), st.integers(1, 10)).flatmap(lambda s: matrices(*s)))
def test_rank_and_nullspace_match_naive(a):
    m = F2Mat.from_lists(a)
    ncols = len(a[0])
    assert m.rank() == naive_rank(a)
    null = m.nullspace()
    assert len(null) == ncols - naive_rank(a)
    for v in null:
        assert naive_apply(a, list(int_to_bits(v, ncols))) == [0] * len(a)
    assert rank(null, ncols) == len(null)


@settings(max_examples=150)
@given(st.tuples(st.integers(1, 8), st.integers(1, 8)).flatmap(lambda s: st.tuples(matrices(*s), st.integers(0, 2 ** s[0] - 1))))
def test_solve_matches_naive(ab):
    a, b = ab
    m = F2Mat.from_lists(a)
    x = solve(m, b)
    nrows, ncols = len(a), len(a[0])
    target = list(int_to_bits(b, nrows))
    brute = [v for v in range(1 << ncols) if naive_apply(a, list(int_to_bits(v, ncols))) == target]
    if x is None:
        assert brute == []
    else:
        assert x in brute


@given(st.tuples(st.integers(1, 8), st.integers(1, 8)).flatmap(lambda s: matrices(*s)))
def test_transpose_involution(a):
    m = F2Mat.from_lists(a)
    assert m.transpose().transpose() == m
    assert m.transpose().to_lists() == [list(c) for c in zip(*a)]


def test_identity_and_invertibility():
    i6 = F2Mat.identity(6)
    assert i6.is_invertible() and (i6 @ i6) == i6
    assert not F2Mat.zeros(3, 3).is_invertible()
    assert (i6 + i6) == F2Mat.zeros(6, 6)


def test_rref_pivots():
    rows, piv = rref([0b011, 0b110, 0b101], 3)
    assert piv == [0, 1] and len(rows) == 2


def test_span_is_echelon():
    rng = random.Random(5)
    vecs = [rng.randrange(1 << 8) for _ in range(12)]
    basis = span(vecs, 8)
    assert len(basis) == rank(vecs, 8)
    for v in vecs:
        assert rank(basis + [v], 8) == len(basis)


def test_bit_packing_roundtrip():
    assert bits_to_int([1, 0, 1, 1]) == 0b1101
    assert int_to_bits(0b1101, 4) == (1, 0, 1, 1)


def test_shape_checks():
    with pytest.raises(ValueError):
        F2Mat.identity(2) @ F2Mat.identity(3)
    with pytest.raises(ValueError):
        F2Mat.from_lists([[1, 0], [1]])
    assert nullspace([], 3) == [1, 2, 4]
