"""Character tables shipped as data, made self-certifying by exact
orthogonality checks, plus Frobenius-Schur indicators.

Table files are JSON::

    {"group", "order", "conductor",
     "classes": [{"name", "size", "order", "square_class"}, ...],
     "irreps": [{"label", "degree", "values": [[[exponent, multiplicity], ...], ...]}, ...]}

Each value is sum(multiplicity * zeta_N^exponent) with N the conductor.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd
from pathlib import Path
from typing import Any, Mapping, Optional

from .cyclotomic import (
    CycloNum,
    exponent_conj,
    exponent_galois,
    exponent_product,
    galois_lift,
    reduce_counts,
)
from .errors import ValidationError

DATA_ENV_VAR = "QUARTIC_FORGE_DATA"
TABLE_FILES = {"a7": "a7.json", "2a7": "2a7.json"}


@dataclass(frozen=True)
class ClassInfo:
    name: str
    size: int
    order: int
    square_class: int


@dataclass
class Irrep:
    label: str
    degree: int
    exps: list[dict[int, int]]
    values: list[CycloNum] = field(repr=False)


@dataclass
class CharTable:
    group: str
    order: int
    conductor: int
    classes: list[ClassInfo]
    irreps: list[Irrep]

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "CharTable":
        n = int(data["conductor"])
        classes = [
            ClassInfo(str(c["name"]), int(c["size"]), int(c["order"]), int(c["square_class"]))
            for c in data["classes"]
        ]
        irreps = []
        for r in data["irreps"]:
            exps = []
            for v in r["values"]:
                counts: dict[int, int] = {}
                for e, m in v:
                    counts[int(e) % n] = counts.get(int(e) % n, 0) + int(m)
                exps.append({e: m for e, m in counts.items() if m})
            irreps.append(
                Irrep(str(r["label"]), int(r["degree"]), exps, [CycloNum.from_exponents(n, x) for x in exps])
            )
        return cls(str(data["group"]), int(data["order"]), n, classes, irreps)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "conductor": self.conductor,
            "classes": [
                {"name": c.name, "size": c.size, "order": c.order, "square_class": c.square_class}
                for c in self.classes
            ],
            "irreps": [
                {
                    "label": r.label,
                    "degree": r.degree,
                    "values": [[[e, m] for e, m in sorted(x.items())] for x in r.exps],
                }
                for r in self.irreps
            ],
        }

    def irrep(self, label: str) -> Irrep:
        for r in self.irreps:
            if r.label == label:
                return r
        raise KeyError(label)


def data_dir(explicit: Optional[str | os.PathLike] = None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get(DATA_ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("quartic_forge") / "data"))


def load_table(name: str, directory: Optional[str | os.PathLike] = None) -> CharTable:
    key = name.lower().replace(".", "")
    if key not in TABLE_FILES:
        raise KeyError(f"unknown table {name!r}; expected one of {sorted(TABLE_FILES)}")
    path = data_dir(directory) / TABLE_FILES[key]
    with open(path, encoding="utf-8") as fh:
        return CharTable.from_json(json.load(fh))


# -- validation -------------------------------------------------------------------------------

class _StopValidation(Exception):
    pass


@dataclass
class ValidationReport:
    group: str
    failures: list[str] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)
    fail_fast: bool = field(default=False, repr=False)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, check: str, ok: bool, detail: str = "") -> None:
        self.checks[check] = self.checks.get(check, True) and ok
        if not ok:
            self.failures.append(f"{check}: {detail}" if detail else check)
            if self.fail_fast:
                raise _StopValidation

    def raise_if_failed(self) -> None:
        if self.failures:
            raise ValidationError(f"{self.group} table invalid: " + "; ".join(self.failures[:5]))

    def to_json(self) -> dict:
        return {"group": self.group, "ok": self.ok, "checks": dict(self.checks), "failures": list(self.failures)}


def _is_constant(coeffs: tuple[Fraction, ...], value: int) -> bool:
    return coeffs[0] == value and not any(coeffs[1:])


def validate_table(t: CharTable, fail_fast: bool = False) -> ValidationReport:
    """Exact consistency checks; ``fail_fast`` stops at the first failed relation."""
    rep = ValidationReport(t.group, fail_fast=fail_fast)
    try:
        _validate(t, rep)
    except _StopValidation:
        pass
    return rep


def _validate(t: CharTable, rep: ValidationReport) -> None:
    n = t.conductor
    k = len(t.classes)

    # class data
    rep.record("class_count_matches_irreps", len(t.irreps) == k, f"{len(t.irreps)} irreps vs {k} classes")
    first = t.classes[0] if t.classes else None
    rep.record(
        "identity_class_first",
        first is not None and first.size == 1 and first.order == 1,
        f"first class is {first}",
    )
    total = sum(c.size for c in t.classes)
    rep.record("class_sizes_sum_to_order", total == t.order, f"sum {total} != {t.order}")
    for i, c in enumerate(t.classes):
        rep.record("class_size_divides_order", c.size > 0 and t.order % c.size == 0, f"class {c.name} size {c.size}")
        rep.record("class_order_divides_conductor", c.order > 0 and n % c.order == 0, f"class {c.name} order {c.order}")
        sq = c.square_class
        if not 0 <= sq < k:
            rep.record("square_map_in_range", False, f"class {c.name} squares to index {sq}")
            continue
        want = c.order // gcd(2, c.order)
        rep.record(
            "square_map_order",
            t.classes[sq].order == want,
            f"class {c.name} (order {c.order}) squares to {t.classes[sq].name} (order {t.classes[sq].order})",
        )
    if not rep.ok:
        return

    # irreps well-formed
    for r in t.irreps:
        rep.record("values_per_class", len(r.exps) == k, f"row {r.label} has {len(r.exps)} values")
        if len(r.exps) == k:
            rep.record(
                "degree_matches_identity_value",
                r.values[0] == r.degree,
                f"row {r.label} degree {r.degree} vs value {r.values[0]}",
            )
    sq_deg = sum(r.degree ** 2 for r in t.irreps)
    rep.record("sum_of_squared_degrees", sq_deg == t.order, f"sum {sq_deg} != {t.order}")
    if not rep.ok:
        return

    # first orthogonality: sum_C |C| chi(C) conj(psi(C)) = |G| delta
    conjs = [[exponent_conj(x, n) for x in r.exps] for r in t.irreps]
    for a, ra in enumerate(t.irreps):
        for b in range(a, len(t.irreps)):
            counts: dict[int, int] = {}
            for c, cls in enumerate(t.classes):
                for e, m in exponent_product(ra.exps[c], conjs[b][c], n).items():
                    counts[e] = counts.get(e, 0) + cls.size * m
            got = reduce_counts(counts, n)
            want = t.order if a == b else 0
            rep.record(
                "row_orthogonality",
                _is_constant(got, want),
                f"rows {ra.label},{t.irreps[b].label}",
            )

    # second orthogonality: sum_chi chi(C) conj(chi(D)) = |C_G(g)| delta
    for c1 in range(k):
        for c2 in range(c1, k):
            counts = {}
            for r, rc in zip(t.irreps, conjs):
                for e, m in exponent_product(r.exps[c1], rc[c2], n).items():
                    counts[e] = counts.get(e, 0) + m
            got = reduce_counts(counts, n)
            cent = t.order // t.classes[c1].size
            want = cent if c1 == c2 else 0
            rep.record(
                "column_orthogonality",
                _is_constant(got, want),
                f"columns {t.classes[c1].name},{t.classes[c2].name}",
            )
    if not rep.ok:
        return

    # square map: on odd-order g, chi(g^2) is the Galois image of chi(g) under zeta -> zeta^2
    for c, cls in enumerate(t.classes):
        if cls.order % 2 == 0:
            continue
        k2 = galois_lift(2, cls.order, n)
        for r in t.irreps:
            image = CycloNum.from_exponents(n, exponent_galois(r.exps[c], k2, n))
            rep.record(
                "square_map_galois",
                image == r.values[cls.square_class],
                f"row {r.label} at {cls.name} vs its square {t.classes[cls.square_class].name}",
            )
    if not rep.ok:
        return

    # g -> chi(g^2) is a virtual character: integral multiplicities
    for ra in t.irreps:
        for rb, cb in zip(t.irreps, conjs):
            counts = {}
            for c, cls in enumerate(t.classes):
                for e, m in exponent_product(ra.exps[cls.square_class], cb[c], n).items():
                    counts[e] = counts.get(e, 0) + cls.size * m
            got = reduce_counts(counts, n)
            rep.record(
                "square_map_virtual_character",
                not any(got[1:]) and got[0] % t.order == 0,
                f"chi(g^2) for {ra.label} against {rb.label}",
            )


# -- Frobenius-Schur ------------------------------------------------------------------------------

def frobenius_schur(chi: Irrep, t: CharTable) -> int:
    """(1/|G|) sum_C |C| chi(C^2); must come out as -1, 0 or +1."""
    counts: dict[int, int] = {}
    for cls in t.classes:
        for e, m in chi.exps[cls.square_class].items():
            counts[e] = counts.get(e, 0) + cls.size * m
    got = reduce_counts(counts, t.conductor)
    if any(got[1:]):
        raise ValidationError(f"indicator of {chi.label} in {t.group} is irrational")
    value = got[0] / t.order
    if value not in (-1, 0, 1):
        raise ValidationError(f"indicator of {chi.label} in {t.group} is {value}, not in {{-1, 0, 1}}")
    return int(value)


def symplectic_irreps_of_degree(t: CharTable, d: int) -> list[str]:
    return [r.label for r in t.irreps if r.degree == d and frobenius_schur(r, t) == -1]


def involution_count(t: CharTable) -> int:
    """#{g : g^2 = 1} from class data."""
    return sum(c.size for c in t.classes if c.order <= 2)


def indicator_degree_sum(t: CharTable) -> int:
    return sum(frobenius_schur(r, t) * r.degree for r in t.irreps)


def character_suite(directory: Optional[str | os.PathLike] = None, degree: int = 6) -> dict:
    """Validation + symplectic-degree check for A7 and 2.A7."""
    return _character_suite(str(data_dir(directory)), degree)


@lru_cache(maxsize=None)
def _character_suite(directory: str, degree: int) -> dict:
    out = {}
    for key in ("a7", "2a7"):
        t = load_table(key, directory)
        rep = validate_table(t)
        entry: dict[str, Any] = {"group": t.group, "validated": rep.ok, "failures": rep.failures[:5]}
        if rep.ok:
            entry["indicators"] = {r.label: frobenius_schur(r, t) for r in t.irreps}
            entry["involution_identity"] = indicator_degree_sum(t) == involution_count(t)
            entry[f"symplectic_degree_{degree}"] = symplectic_irreps_of_degree(t, degree)
        out[key] = entry
    return out


def character_suite_passes(res: Mapping, degree: int = 6) -> bool:
    key = f"symplectic_degree_{degree}"
    return all(
        e["validated"] and e.get("involution_identity") and e.get(key) == [] for e in res.values()
    )
