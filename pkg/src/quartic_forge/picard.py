"""Picard lattice of the blow-up of P^2 at seven points, its mod-2 reduction,
and the permutation module Q_B of zero-sum F_2-functions on B.

Points of B are indexed 0..6. Permutations are tuples of images:
``sigma[i]`` is the image of point i, and composition is
``(sigma * tau)[i] = sigma[tau[i]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from . import f2
from .f2 import F2Mat

NPTS = 7
QB_DIM = NPTS - 1
Perm = tuple[int, ...]


# -- the integral lattice ---------------------------------------------------------------

@dataclass(frozen=True)
class PicClass:
    """a0 * l0 + sum_b ab[b] * l_b."""

    a0: int
    ab: tuple[int, ...]

    def __post_init__(self):
        if len(self.ab) != NPTS:
            raise ValueError(f"expected {NPTS} exceptional coefficients, got {len(self.ab)}")

    def __add__(self, other: "PicClass") -> "PicClass":
        return PicClass(self.a0 + other.a0, tuple(x + y for x, y in zip(self.ab, other.ab)))

    def __neg__(self) -> "PicClass":
        return PicClass(-self.a0, tuple(-x for x in self.ab))

    def __sub__(self, other: "PicClass") -> "PicClass":
        return self + (-other)

    def __rmul__(self, k: int) -> "PicClass":
        return PicClass(k * self.a0, tuple(k * x for x in self.ab))

    def permute(self, sigma: Perm) -> "PicClass":
        """Image under l_b -> l_sigma(b)."""
        out = [0] * NPTS
        for b, x in enumerate(self.ab):
            out[sigma[b]] = x
        return PicClass(self.a0, tuple(out))

    def mod2(self) -> int:
        """Packed F_2 vector: bit 0 is l0, bit 1 + b is l_b."""
        v = self.a0 & 1
        for b, x in enumerate(self.ab):
            v |= (x & 1) << (b + 1)
        return v

    def to_json(self) -> dict:
        return {"a0": self.a0, "ab": list(self.ab)}

    @classmethod
    def from_json(cls, data: Mapping) -> "PicClass":
        return cls(int(data["a0"]), tuple(int(x) for x in data["ab"]))


def l0() -> PicClass:
    return PicClass(1, (0,) * NPTS)


def lb(b: int) -> PicClass:
    ab = [0] * NPTS
    ab[b] = 1
    return PicClass(0, tuple(ab))


def canonical_class() -> PicClass:
    return PicClass(-3, (1,) * NPTS)


def intersect(x: PicClass, y: PicClass) -> int:
    return x.a0 * y.a0 - sum(a * b for a, b in zip(x.ab, y.ab))


def pic0_membership(x: PicClass) -> bool:
    return intersect(x, canonical_class()) == 0


def pic0_basis() -> list[PicClass]:
    """Z-basis of the orthogonal complement of K: l_i - l_(i+1) and l0 - l_0 - l_1 - l_2."""
    basis = [lb(i) - lb(i + 1) for i in range(NPTS - 1)]
    basis.append(l0() - lb(0) - lb(1) - lb(2))
    return basis


def gram_matrix(classes: Sequence[PicClass]) -> list[list[int]]:
    return [[intersect(x, y) for y in classes] for x in classes]


# -- mod-2 reduction --------------------------------------------------------------------------

PIC2_DIM = NPTS + 1
V0_BAR = (1 << PIC2_DIM) - 1  # l0 + sum l_b, all coordinates one


def pic2_basis() -> list[int]:
    return [l0().mod2()] + [lb(b).mod2() for b in range(NPTS)]


def psi(x: int, y: int) -> int:
    """Mod-2 intersection form on Pic/2, read off the integral lifts."""
    return intersect(_lift(x), _lift(y)) & 1


def _lift(v: int) -> PicClass:
    return PicClass(v & 1, tuple((v >> (b + 1)) & 1 for b in range(NPTS)))


def pic0_mod2_basis() -> list[int]:
    return [c.mod2() for c in pic0_basis()]


def in_pic0_mod2(v: int) -> bool:
    """v in Pic_0/2: psi-orthogonal to the reduction of K."""
    return psi(v, canonical_class().mod2()) == 0


def psi0_radical() -> list[int]:
    """Radical of psi restricted to Pic_0/2, as a list of packed Pic/2 vectors (a basis)."""
    basis = pic0_mod2_basis()
    n = len(basis)
    gram_rows = [f2.bits_to_int(psi(x, y) for y in basis) for x in basis]
    kernel = f2.nullspace(gram_rows, n)
    out = []
    for coeffs in kernel:
        v = 0
        for i in range(n):
            if coeffs >> i & 1:
                v ^= basis[i]
        out.append(v)
    return out


def pic0_mod2_elements() -> list[int]:
    """All 2^7 elements of Pic_0/2."""
    basis = pic0_mod2_basis()
    out = []
    for coeffs in range(1 << len(basis)):
        v = 0
        for i, b in enumerate(basis):
            if coeffs >> i & 1:
                v ^= b
        out.append(v)
    return out


def permute_mod2(v: int, sigma: Perm) -> int:
    return _lift(v).permute(sigma).mod2()


# -- Q_B ------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class QBElem:
    """phi: B -> F_2 with even support; bit b is phi(b)."""

    bits: int

    def __post_init__(self):
        if self.bits >> NPTS:
            raise ValueError("QBElem has bits beyond the 7 points")
        if bin(self.bits).count("1") & 1:
            raise ValueError("QBElem must have zero sum over B")

    @classmethod
    def indicator(cls, points: Iterable[int]) -> "QBElem":
        v = 0
        for b in points:
            v ^= 1 << b
        return cls(v)

    def __call__(self, b: int) -> int:
        return self.bits >> b & 1

    def __add__(self, other: "QBElem") -> "QBElem":
        return QBElem(self.bits ^ other.bits)

    def coords(self) -> int:
        """Coordinates in the basis e_i = indicator{b_i, b_6}, i = 0..5."""
        return self.bits & ((1 << QB_DIM) - 1)

    @classmethod
    def from_coords(cls, c: int) -> "QBElem":
        parity = bin(c).count("1") & 1
        return cls(c | (parity << QB_DIM))

    def permute(self, sigma: Perm) -> "QBElem":
        """(sigma . phi)(b) = phi(sigma^-1 b)."""
        out = 0
        for b in range(NPTS):
            if self.bits >> b & 1:
                out |= 1 << sigma[b]
        return QBElem(out)


def kappa(z: int) -> QBElem:
    """Pic_0/2 -> Q_B, z = a0 l0 + sum a_b l_b maps to b -> a_b + a0."""
    if not in_pic0_mod2(z):
        raise ValueError("kappa is defined on Pic_0/2 only")
    a0 = z & 1
    bits = 0
    for b in range(NPTS):
        if ((z >> (b + 1)) & 1) ^ a0:
            bits |= 1 << b
    return QBElem(bits)


def theta_iso(phi: Sequence[int]) -> QBElem:
    """(Z^B)^0 / 2 -> Q_B: reduce a zero-sum integer function mod 2."""
    if len(phi) != NPTS:
        raise ValueError(f"expected a function on {NPTS} points")
    if sum(phi) != 0:
        raise ValueError("theta_iso needs a zero-sum integer function")
    return QBElem(f2.bits_to_int(x & 1 for x in phi))


# -- permutation groups on Q_B ----------------------------------------------------------------

def check_perm(sigma: Sequence[int]) -> Perm:
    sigma = tuple(int(x) for x in sigma)
    if sorted(sigma) != list(range(NPTS)):
        raise ValueError(f"{sigma} is not a permutation of {NPTS} points")
    return sigma


def perm_compose(sigma: Perm, tau: Perm) -> Perm:
    return tuple(sigma[tau[i]] for i in range(NPTS))


def cycle(*points: int) -> Perm:
    out = list(range(NPTS))
    for a, b in zip(points, points[1:] + points[:1]):
        out[a] = b
    return tuple(out)


SEVEN_CYCLE = cycle(0, 1, 2, 3, 4, 5, 6)

GENERATORS: dict[str, tuple[Perm, ...]] = {
    "S7": (SEVEN_CYCLE, cycle(0, 1)),
    "A7": (SEVEN_CYCLE, cycle(0, 1, 2)),
    "C7": (SEVEN_CYCLE,),
}


def qb_action(sigma: Sequence[int]) -> F2Mat:
    """6x6 matrix of phi -> phi o sigma^-1 in the basis e_i = indicator{b_i, b_6}."""
    sigma = check_perm(sigma)
    cols = [QBElem.indicator((i, QB_DIM)).permute(sigma).coords() for i in range(QB_DIM)]
    return F2Mat.from_columns(cols, QB_DIM)


def _check_gens(gens: Sequence[F2Mat]) -> int:
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].nrows
    for g in gens:
        if g.nrows != n or g.ncols != n:
            raise ValueError("generators must be square of equal size")
        if not g.is_invertible():
            raise ValueError("singular generator")
    return n


def spin(v: int, gens: Sequence[F2Mat]) -> list[int]:
    """Echelon basis of the smallest gens-stable subspace containing v."""
    n = gens[0].ncols
    basis = f2.span([v], n)
    frontier = [v]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                u = g.apply(w)
                grown = f2.span(basis + [u], n)
                if len(grown) > len(basis):
                    basis = grown
                    new.append(u)
        frontier = new
    return basis


def is_simple_module(gens: Sequence[F2Mat]) -> bool:
    """Spin every nonzero vector; simple iff each one generates the whole space."""
    n = _check_gens(gens)
    return all(len(spin(v, gens)) == n for v in range(1, 1 << n))


def proper_submodules_found(gens: Sequence[F2Mat]) -> list[list[int]]:
    n = _check_gens(gens)
    seen = []
    for v in range(1, 1 << n):
        s = spin(v, gens)
        if len(s) < n and s not in seen:
            seen.append(s)
    return seen


def endomorphism_dim(gens: Sequence[F2Mat]) -> int:
    """dim over F_2 of {X : X M = M X for every generator M}."""
    n = _check_gens(gens)
    eqs = []
    for m in gens:
        for i in range(n):
            for k in range(n):
                # (XM)_{ik} + (MX)_{ik} = sum_j X_ij M_jk + M_ij X_jk
                row = 0
                for j in range(n):
                    if m[j, k]:
                        row ^= 1 << (i * n + j)
                    if m[i, j]:
                        row ^= 1 << (j * n + k)
                eqs.append(row)
    return n * n - f2.rank(eqs, n * n)


def group_matrices(name_or_perms: str | Sequence[Sequence[int]]) -> list[F2Mat]:
    perms = GENERATORS[name_or_perms] if isinstance(name_or_perms, str) else name_or_perms
    return [qb_action(s) for s in perms]


# -- suites used by the pipeline -------------------------------------------------------------

def lattice_suite() -> dict:
    K = canonical_class()
    basis = pic0_basis()
    radical = psi0_radical()
    elems = pic0_mod2_elements()
    images = {kappa(z).bits for z in elems}
    kernel = [z for z in elems if kappa(z).bits == 0]
    return {
        "K_dot_K": intersect(K, K),
        "pic0_rank": len(basis),
        "pic0_basis_in_pic0": all(pic0_membership(x) for x in basis),
        "psi_gram_is_identity": all(
            psi(x, y) == (1 if i == j else 0)
            for i, x in enumerate(pic2_basis())
            for j, y in enumerate(pic2_basis())
        ),
        "pic0_mod2_dim": f2.rank(pic0_mod2_basis(), PIC2_DIM),
        "psi0_radical_dim": len(radical),
        "psi0_radical_is_v0": sorted({0, *radical}) == [0, V0_BAR],
        "kappa_kernel_dim": len(kernel).bit_length() - 1,
        "kappa_image_dim": len(images).bit_length() - 1,
        "kappa_surjective": len(images) == 1 << QB_DIM,
    }


def lattice_suite_passes(res: Mapping) -> bool:
    return (
        res["K_dot_K"] == 2
        and res["pic0_rank"] == 7
        and res["pic0_basis_in_pic0"]
        and res["psi_gram_is_identity"]
        and res["pic0_mod2_dim"] == 7
        and res["psi0_radical_dim"] == 1
        and res["psi0_radical_is_v0"]
        and res["kappa_kernel_dim"] == 1
        and res["kappa_image_dim"] == 6
        and res["kappa_surjective"]
    )


def module_suite(group: str) -> dict:
    gens = group_matrices(group)
    return {
        "group": group,
        "generators": [list(p) for p in GENERATORS[group]],
        "simple": is_simple_module(gens),
        "end_dim": endomorphism_dim(gens),
    }
