"""Dense linear algebra over F_2 with rows packed into Python ints.

Bit j of a row is column j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def bits_to_int(bits: Iterable[int]) -> int:
    out = 0
    for j, b in enumerate(bits):
        if b & 1:
            out |= 1 << j
    return out


def int_to_bits(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> j) & 1 for j in range(n))


@dataclass(frozen=True)
class F2Mat:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        mask = (1 << self.ncols) - 1
        if any(r & ~mask for r in self.rows):
            raise ValueError("row has bits beyond ncols")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "F2Mat":
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), ncols, tuple(bits_to_int(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "F2Mat":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Mat":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def from_columns(cls, cols: Sequence[int], nrows: int) -> "F2Mat":
        rows = [0] * nrows
        for j, c in enumerate(cols):
            for i in range(nrows):
                if c >> i & 1:
                    rows[i] |= 1 << j
        return cls(nrows, len(cols), tuple(rows))

    def to_lists(self) -> list[list[int]]:
        return [list(int_to_bits(r, self.ncols)) for r in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i] >> j & 1

    def transpose(self) -> "F2Mat":
        return F2Mat.from_columns(self.rows, self.ncols)

    def column(self, j: int) -> int:
        return bits_to_int(r >> j & 1 for r in self.rows)

    def __matmul__(self, other: "F2Mat") -> "F2Mat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        out = []
        for r in self.rows:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc ^= other.rows[k]
                r >>= 1
                k += 1
            out.append(acc)
        return F2Mat(self.nrows, other.ncols, tuple(out))

    def __add__(self, other: "F2Mat") -> "F2Mat":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in addition")
        return F2Mat(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def apply(self, v: int) -> int:
        """Matrix times column vector (packed as an int of length ncols)."""
        out = 0
        for i, r in enumerate(self.rows):
            if bin(r & v).count("1") & 1:
                out |= 1 << i
        return out

    def rank(self) -> int:
        return len(rref(self.rows, self.ncols)[1])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def nullspace(self) -> list[int]:
        return nullspace(self.rows, self.ncols)


def rref(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = list(rows)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows: Sequence[int], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of {x : A x = 0}, each vector packed as an int."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = 1 << fcol
        for row, pcol in zip(red, pivots):
            if row >> fcol & 1:
                v |= 1 << pcol
        basis.append(v)
    return basis


def solve(a: F2Mat, b: int) -> int | None:
    """Some x with a x = b, or None."""
    aug = [r | ((b >> i & 1) << a.ncols) for i, r in enumerate(a.rows)]
    red, pivots = rref(aug, a.ncols + 1)
    if a.ncols in pivots:
        return None
    x = 0
    for row, p in zip(red, pivots):
        if row >> a.ncols & 1:
            x |= 1 << p
    return x


def span(vectors: Iterable[int], ncols: int) -> list[int]:
    return rref(list(vectors), ncols)[0]
