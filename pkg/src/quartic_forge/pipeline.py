"""Certificate pipeline: runs every check for one degree-7 polynomial and
renders a JSON report whose witnesses can be replayed independently.

The verdict is conditional. When every stage passes, the hypotheses of the
endomorphism criterion (seven Galois-orbit points in general position with
image A7 or S7 in Perm(B)) are certified, and End(J(B_f)) = Z follows from
it; the endomorphism ring itself is never computed.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from . import chartab, galois, picard
from .arith import UniPoly, discriminant, parse_poly, rat_to_str
from .errors import InputError
from .forms import (
    GeneralPositionCert,
    OrbitB,
    TriForm,
    branch_sextic,
    cubic_basis,
    verify_vanishing,
)
from .resolvent import six_on_conic_exists, sum_of_roots, triple_sum_resolvent

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
END_Z_CERTIFIED = "END_Z_CERTIFIED"
HYPOTHESES_NOT_CERTIFIED = "HYPOTHESES_NOT_CERTIFIED"
STAGES = ("separability", "galois", "general_position", "forms", "sextic", "lattice", "module", "characters")
PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

CONDITIONAL_STATEMENT = (
    "Conditional certificate: the seven points B_f = {(a^3 : a : 1) : f(a) = 0} are in general "
    "position and Gal(Q) acts on them through A7 or S7, which are the hypotheses under which "
    "End(J(B_f)) = Z holds for the jacobian of the associated plane quartic. The endomorphism "
    "ring is not computed directly."
)
OUT_OF_SCOPE = [
    "positive characteristic ground fields (including the supersingular case)",
    "direct computation of End(J) or of the quartic curve C_B",
    "very-simplicity beyond its necessary conditions (simplicity, End = F_2)",
]


@dataclass
class PipelineConfig:
    prime_bound: int = galois.DEFAULT_PRIME_BOUND
    five_part_budget: int = galois.DEFAULT_FIVE_PART_BUDGET
    seed: int = galois.DEFAULT_SEED
    data_dir: Optional[str] = None
    cache_dir: Optional[str] = None
    out: Optional[str] = None
    verbosity: int = 0

    def __post_init__(self):
        if self.prime_bound < 2:
            raise ValueError("prime_bound must be at least 2")
        if self.five_part_budget < 1:
            raise ValueError("five_part_budget must be positive")


@dataclass
class CertificateReport:
    data: dict
    cache_status: str = "disabled"

    @property
    def verdict(self) -> str:
        return self.data["verdict"]["final"]

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict == END_Z_CERTIFIED else 1

    def to_json_text(self) -> str:
        return dumps(self.data)


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def error_report(err: InputError, text: Optional[str] = None) -> dict:
    return {"schema_version": SCHEMA_VERSION, "input": {"text": text}, "error": {"code": err.code, "message": err.message}}


# -- prime scan cache ---------------------------------------------------------------------

def poly_digest(f: UniPoly) -> str:
    coeffs = galois.integer_coeffs(f)
    return hashlib.sha256(json.dumps(coeffs).encode()).hexdigest()


def _payload_checksum(primes: dict) -> str:
    return hashlib.sha256(json.dumps(primes, sort_keys=True).encode()).hexdigest()


class PrimeScanCache:
    """Per-polynomial JSON file of factorizations keyed by prime."""

    def __init__(self, directory: Optional[str | os.PathLike]):
        self.directory = Path(directory) if directory else None

    def path_for(self, f: UniPoly) -> Optional[Path]:
        if self.directory is None:
            return None
        return self.directory / f"scan-{poly_digest(f)}.json"

    def load(self, f: UniPoly) -> tuple[dict, str]:
        path = self.path_for(f)
        if path is None:
            return {}, "disabled"
        if not path.exists():
            return {}, "miss"
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            primes = data["primes"]
            if data.get("digest") != poly_digest(f):
                log.warning("prime-scan cache %s belongs to another polynomial; ignoring", path)
                return {}, "ignored"
            if data.get("checksum") != _payload_checksum(primes):
                log.warning("prime-scan cache %s failed its checksum; ignoring", path)
                return {}, "ignored"
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("prime-scan cache %s unreadable (%s); rescanning", path, exc)
            return {}, "ignored"
        return dict(primes), "hit"

    def store(self, f: UniPoly, primes: dict) -> bool:
        path = self.path_for(f)
        if path is None:
            return False
        payload = {
            "digest": poly_digest(f),
            "poly": galois.integer_coeffs(f),
            "primes": primes,
            "checksum": _payload_checksum(primes),
        }
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")
            tmp.replace(path)
        except OSError as exc:
            log.warning("cannot write prime-scan cache %s (%s); continuing uncached", path, exc)
            return False
        return True


def prime_scan_cache(f: UniPoly, config: PipelineConfig) -> Optional[Path]:
    """Run (or reuse) the prime scan for f and return the cache file path."""
    cache = PrimeScanCache(config.cache_dir)
    primes, _ = cache.load(f)
    galois.classify_galois(f, config.prime_bound, config.five_part_budget, config.seed, cache=primes)
    return cache.path_for(f) if cache.store(f, primes) else None


# -- stages ---------------------------------------------------------------------------------

def _form_entry(q: TriForm) -> dict:
    return {"text": str(q), "form": q.to_json()}


def _check_input(f: UniPoly) -> None:
    if f.is_zero() or f.degree != 7:
        raise InputError("WRONG_DEGREE", f"expected a degree-7 polynomial, got degree {f.degree}")


def run_pipeline(f: UniPoly | str, config: Optional[PipelineConfig] = None) -> CertificateReport:
    config = config or PipelineConfig()
    text = f if isinstance(f, str) else None
    if isinstance(f, str):
        try:
            f = parse_poly(f)
        except ValueError as exc:
            raise InputError("PARSE", str(exc)) from exc
    _check_input(f)
    stages: dict[str, dict] = {}

    disc = discriminant(f)
    stages["separability"] = {"status": PASS if disc != 0 else FAIL, "discriminant": rat_to_str(disc)}
    if disc == 0:
        raise InputError("INSEPARABLE", "polynomial has a repeated root (discriminant 0)")

    # cheap conic test before the prime scan and the resolvent
    orbit = OrbitB(f)
    conic = six_on_conic_exists(f)

    cache = PrimeScanCache(config.cache_dir)
    primes, cache_status = cache.load(f)
    verdict = galois.classify_galois(f, config.prime_bound, config.five_part_budget, config.seed, cache=primes)
    cache.store(f, primes)
    stages["galois"] = {"status": PASS if verdict.certified else FAIL, "verdict": verdict.to_json()}

    r3 = triple_sum_resolvent(f)
    r0 = r3(Fraction(0))
    cert = GeneralPositionCert(
        no_three_collinear=r0 != 0,
        resolvent_at_zero=r0,
        no_six_on_conic=not conic,
        f_at_root_sum=f(sum_of_roots(f)),
    )
    stages["general_position"] = {"status": PASS if cert.valid else FAIL, "certificate": cert.to_json()}

    u, v, w = cubic_basis(f)
    vanish = {name: verify_vanishing(q, orbit) for name, q in zip("uvw", (u, v, w))}
    stages["forms"] = {
        "status": PASS if all(vanish.values()) else FAIL,
        "u": _form_entry(u),
        "v": _form_entry(v),
        "w": _form_entry(w),
        "vanishing": vanish,
    }

    sextic = branch_sextic(u, v, w)
    s_vanish = verify_vanishing(sextic, orbit)
    stages["sextic"] = {
        "status": PASS if (s_vanish and sextic.degree == 6 and not sextic.is_zero()) else FAIL,
        "degree": sextic.degree,
        **_form_entry(sextic),
        "vanishes_on_B": s_vanish,
        "partials_vanish_on_B": [verify_vanishing(sextic.partial(k), orbit) for k in range(3)],
        "char_not_3_required": True,
    }

    lat = picard.lattice_suite()
    stages["lattice"] = {"status": PASS if picard.lattice_suite_passes(lat) else FAIL, "results": lat}

    if verdict.certified:
        mod = picard.module_suite(verdict.group)
        ok = mod["simple"] and mod["end_dim"] == 1
        stages["module"] = {"status": PASS if ok else FAIL, "results": mod}
    else:
        stages["module"] = {"status": SKIPPED, "reason": "Galois image not certified"}

    chars = chartab.character_suite(config.data_dir)
    stages["characters"] = {"status": PASS if chartab.character_suite_passes(chars) else FAIL, "results": chars}

    final, first_bad = derive_verdict(stages)
    data = {
        "schema_version": SCHEMA_VERSION,
        "tool": "quartic-forge",
        "input": {
            "text": text if text is not None else f.to_text(),
            "coefficients": f.to_json(),
        },
        "config": {
            "prime_bound": config.prime_bound,
            "five_part_budget": config.five_part_budget,
            "seed": config.seed,
        },
        "ground_field": "Q",
        "out_of_scope": OUT_OF_SCOPE,
        "stage_order": list(STAGES),
        "stages": stages,
        "verdict": {
            "final": final,
            "first_failing_stage": first_bad,
            "conditional": True,
            "statement": CONDITIONAL_STATEMENT if final == END_Z_CERTIFIED else None,
        },
    }
    return CertificateReport(data, cache_status)


def derive_verdict(stages: dict) -> tuple[str, Optional[str]]:
    for name in STAGES:
        if stages.get(name, {}).get("status") != PASS:
            return HYPOTHESES_NOT_CERTIFIED, name
    return END_Z_CERTIFIED, None


# -- replay ---------------------------------------------------------------------------------

@dataclass
class ReplayResult:
    failures: list[str] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checked.append(name)
        if not ok:
            self.failures.append(f"{name}: {detail}" if detail else name)


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def replay_certificate(report: dict | str | os.PathLike, data_dir: Optional[str] = None) -> ReplayResult:
    """Re-verify every recorded witness and claim of a report without searching."""
    if not isinstance(report, dict):
        report = json.loads(Path(report).read_text(encoding="utf-8"))
    res = ReplayResult()
    try:
        _replay(report, res, data_dir)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        res.check("report_structure", False, f"{type(exc).__name__}: {exc}")
    return res


def _replay(rep: dict, res: ReplayResult, data_dir: Optional[str]) -> None:
    res.check("schema_version", rep.get("schema_version") == SCHEMA_VERSION, f"got {rep.get('schema_version')}")
    if "error" in rep:
        res.check("report_has_stages", False, "error reports carry no certificate")
        return
    f = UniPoly.from_json(rep["input"]["coefficients"])
    res.check("input_degree", f.degree == 7, f"degree {f.degree}")
    if f.degree != 7:
        return
    st = rep["stages"]

    # separability
    disc = discriminant(f)
    sep = st["separability"]
    res.check("separability.discriminant", Fraction(sep["discriminant"]) == disc, "discriminant mismatch")
    res.check("separability.status", sep["status"] == _status(disc != 0))

    # galois witnesses
    gv = st["galois"]["verdict"]
    status = gv["status"]
    res.check("galois.discriminant", Fraction(gv["discriminant"]) == disc, "discriminant mismatch")
    is_sq = galois.is_rational_square(disc)
    res.check("galois.square_test", gv["disc_is_square"] == is_sq, "square verdict mismatch")
    wit = gv["witnesses"]
    for name in ("irreducibility", "five_part"):
        w = wit.get(name)
        if w is None:
            continue
        reason = galois.verify_witness(f, w)
        res.check(f"galois.{name}_witness", reason is None, reason or "")
        if gv["witness_primes"].get(name) != w["prime"]:
            res.check(f"galois.{name}_prime", False, "witness prime disagrees with summary")
    if wit.get("five_part") is not None:
        res.check(
            "galois.cycle_type_summary",
            sorted(gv["cycle_type"], reverse=True) == sorted(wit["five_part"]["cycle_type"], reverse=True),
            "cycle type summary disagrees with witness",
        )
    certified = status in (galois.CERTIFIED_S7, galois.CERTIFIED_A7)
    if certified:
        irr, five = wit.get("irreducibility"), wit.get("five_part")
        res.check("galois.irreducibility_present", irr is not None and sorted(irr["cycle_type"]) == [7])
        res.check("galois.five_part_present", five is not None and 5 in five["cycle_type"])
        want = galois.CERTIFIED_A7 if is_sq else galois.CERTIFIED_S7
        res.check("galois.group_matches_square_test", status == want, f"{status} vs {want}")
    else:
        res.check("galois.status_known", status == galois.INCONCLUSIVE, f"unknown status {status}")
    res.check("galois.stage_status", st["galois"]["status"] == _status(certified))

    # general position
    gp = st["general_position"]["certificate"]
    r0 = triple_sum_resolvent(f)(Fraction(0))
    fs = f(sum_of_roots(f))
    res.check("general_position.resolvent_at_zero", Fraction(gp["resolvent_at_zero"]) == r0, "R3(0) mismatch")
    res.check("general_position.f_at_root_sum", Fraction(gp["f_at_root_sum"]) == fs, "f(s1) mismatch")
    valid = r0 != 0 and fs != 0
    res.check(
        "general_position.flags",
        gp["no_three_collinear"] == (r0 != 0) and gp["no_six_on_conic"] == (fs != 0) and gp["valid"] == valid,
    )
    res.check("general_position.stage_status", st["general_position"]["status"] == _status(valid))

    # forms
    orbit = OrbitB(f)
    forms = cubic_basis(f)
    fst = st["forms"]
    all_vanish = True
    for name, q in zip("uvw", forms):
        res.check(f"forms.{name}", TriForm.from_json(fst[name]["form"]) == q, f"{name} differs from recomputation")
        ok = verify_vanishing(q, orbit)
        all_vanish &= ok
        res.check(f"forms.{name}_vanishing", fst["vanishing"][name] == ok)
    res.check("forms.stage_status", fst["status"] == _status(all_vanish))

    # sextic
    sx = st["sextic"]
    sextic = branch_sextic(*forms)
    res.check("sextic.form", TriForm.from_json(sx["form"]) == sextic, "sextic differs from recomputation")
    s_ok = verify_vanishing(sextic, orbit)
    res.check("sextic.vanishing", sx["vanishes_on_B"] == s_ok)
    res.check("sextic.stage_status", sx["status"] == _status(s_ok and sextic.degree == 6 and not sextic.is_zero()))

    # lattice
    lat = picard.lattice_suite()
    res.check("lattice.results", st["lattice"]["results"] == lat, "lattice claims differ from re-run")
    res.check("lattice.stage_status", st["lattice"]["status"] == _status(picard.lattice_suite_passes(lat)))

    # module
    mod = st["module"]
    if certified:
        group = "A7" if status == galois.CERTIFIED_A7 else "S7"
        again = picard.module_suite(group)
        res.check("module.results", mod.get("results") == again, "module claims differ from re-run")
        res.check("module.stage_status", mod["status"] == _status(again["simple"] and again["end_dim"] == 1))
    else:
        res.check("module.stage_status", mod["status"] == SKIPPED, "module stage must be skipped without a certified group")

    # characters: re-validate the tables from scratch
    chars = {}
    for key in ("a7", "2a7"):
        t = chartab.load_table(key, data_dir)
        vrep = chartab.validate_table(t)
        res.check(f"characters.{key}_orthogonality", vrep.ok, "; ".join(vrep.failures[:3]))
        chars[key] = vrep.ok and chartab.symplectic_irreps_of_degree(t, 6) == []
    reported = st["characters"]["results"]
    for key, ok in chars.items():
        claimed = reported[key]["validated"] and reported[key].get("symplectic_degree_6") == []
        res.check(f"characters.{key}_claim", claimed == ok, "character claim differs from re-run")
    res.check("characters.stage_status", st["characters"]["status"] == _status(all(chars.values())))

    # verdict consistency
    final, first_bad = derive_verdict(st)
    v = rep["verdict"]
    res.check("verdict.final", v["final"] == final, f"reported {v['final']} but stages give {final}")
    res.check("verdict.first_failing_stage", v.get("first_failing_stage") == first_bad)
