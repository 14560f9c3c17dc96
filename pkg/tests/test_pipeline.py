import copy
import json
import logging

import pytest

from quartic_forge.arith import parse_poly
from quartic_forge.errors import InputError
from quartic_forge.pipeline import (
    END_Z_CERTIFIED,
    HYPOTHESES_NOT_CERTIFIED,
    STAGES,
    PipelineConfig,
    PrimeScanCache,
    derive_verdict,
    poly_digest,
    prime_scan_cache,
    replay_certificate,
    run_pipeline,
)


@pytest.fixture(scope="module")
def certified():
    return run_pipeline("t^7 - t - 1").data


@pytest.fixture(scope="module")
def negative():
    return run_pipeline("t^7 - 2").data


def test_certified_report(certified):
    st = certified["stages"]
    assert certified["verdict"]["final"] == END_Z_CERTIFIED
    assert certified["verdict"]["first_failing_stage"] is None
    assert certified["verdict"]["conditional"] is True and "End(J(B_f)) = Z" in certified["verdict"]["statement"]
    assert certified["ground_field"] == "Q" and certified["out_of_scope"]
    assert all(st[s]["status"] == "pass" for s in STAGES)
    assert st["separability"]["discriminant"] == "-776887"
    assert st["galois"]["verdict"]["status"] == "CERTIFIED_S7"
    assert st["forms"]["v"]["text"] == "x^2*y - y*z^2 - z^3"
    assert st["forms"]["w"]["text"] == "x^3 - x*z^2 - y^2*z"
    assert st["sextic"]["degree"] == 6 and st["sextic"]["vanishes_on_B"]
    assert st["module"]["results"]["group"] == "S7"
    assert certified["config"]["seed"] == 20240601


def test_negative_control(negative):
    st = negative["stages"]
    assert negative["verdict"] == {
        "final": HYPOTHESES_NOT_CERTIFIED,
        "first_failing_stage": "galois",
        "conditional": True,
        "statement": None,
    }
    assert st["galois"]["verdict"]["status"] == "INCONCLUSIVE"
    assert st["general_position"]["status"] == "pass"
    assert st["module"]["status"] == "skipped"


@pytest.mark.parametrize(
    "text,code",
    [("t^7 + t", "REDUCIBLE"), ("t^6 - 1", "WRONG_DEGREE"), ("t^7 +", "PARSE"), ("(t-1)^2", "PARSE")],
)
def test_input_errors(text, code):
    with pytest.raises(InputError) as exc:
        run_pipeline(text)
    assert exc.value.code == code


def test_inseparable_input():
    f = parse_poly("t^5 + t + 3") * parse_poly("t - 1") ** 2
    with pytest.raises(InputError) as exc:
        run_pipeline(f)
    assert exc.value.code == "INSEPARABLE"


def test_report_is_deterministic(certified):
    again = run_pipeline("t^7 - t - 1").data
    assert json.dumps(again, sort_keys=True) == json.dumps(certified, sort_keys=True)


def test_non_monic_certifies():
    rep = run_pipeline("2t^7 - 3t + 5")
    assert rep.verdict == END_Z_CERTIFIED
    # non-monic input keeps its raw coefficients in v
    assert rep.data["stages"]["forms"]["v"]["text"].startswith("2*x^2*y")
    assert rep.data["stages"]["forms"]["status"] == "pass"


def test_config_validation():
    with pytest.raises(ValueError):
        PipelineConfig(prime_bound=1)
    with pytest.raises(ValueError):
        PipelineConfig(five_part_budget=0)


def test_derive_verdict_order():
    stages = {s: {"status": "pass"} for s in STAGES}
    assert derive_verdict(stages) == (END_Z_CERTIFIED, None)
    stages["lattice"]["status"] = "fail"
    stages["galois"]["status"] = "fail"
    assert derive_verdict(stages) == (HYPOTHESES_NOT_CERTIFIED, "galois")


# -- replay ---------------------------------------------------------------------------------

def test_replay_passes(certified, negative, tmp_path):
    assert replay_certificate(certified).ok
    assert replay_certificate(negative).ok
    path = tmp_path / "r.json"
    path.write_text(json.dumps(certified))
    assert replay_certificate(path).ok


def corrupt_cycle_type(rep):
    rep["stages"]["galois"]["verdict"]["witnesses"]["five_part"]["cycle_type"] = [7]


def corrupt_verdict(rep):
    rep["verdict"]["final"] = END_Z_CERTIFIED
    rep["verdict"]["first_failing_stage"] = None


def corrupt_resolvent(rep):
    rep["stages"]["general_position"]["certificate"]["resolvent_at_zero"] = "129"


def corrupt_factor(rep):
    fac = rep["stages"]["galois"]["verdict"]["witnesses"]["five_part"]["factors"][0]
    fac[0] = (fac[0] + 1) % rep["stages"]["galois"]["verdict"]["witnesses"]["five_part"]["prime"]


def corrupt_sextic(rep):
    rep["stages"]["sextic"]["form"]["terms"][0]["coefficient"] = "7"


def corrupt_status(rep):
    rep["stages"]["galois"]["verdict"]["status"] = "CERTIFIED_A7"


def corrupt_lattice(rep):
    rep["stages"]["lattice"]["results"]["K_dot_K"] = 3


@pytest.mark.parametrize(
    "corrupt,which,needle",
    [
        (corrupt_cycle_type, "certified", "galois.five_part_witness"),
        (corrupt_verdict, "negative", "verdict.final"),
        (corrupt_resolvent, "certified", "general_position.resolvent_at_zero"),
        (corrupt_factor, "certified", "galois.five_part_witness"),
        (corrupt_sextic, "certified", "sextic.form"),
        (corrupt_status, "certified", "galois.group_matches_square_test"),
        (corrupt_lattice, "certified", "lattice.results"),
    ],
)
def test_replay_catches_corruption(certified, negative, corrupt, which, needle):
    rep = copy.deepcopy(certified if which == "certified" else negative)
    corrupt(rep)
    res = replay_certificate(rep)
    assert not res.ok
    assert any(f.startswith(needle) for f in res.failures), res.failures


def test_replay_reports_structure_errors(certified):
    rep = copy.deepcopy(certified)
    del rep["stages"]["forms"]
    res = replay_certificate(rep)
    assert not res.ok and res.failures[-1].startswith("report_structure")


# -- prime scan cache ------------------------------------------------------------------------

F = parse_poly("t^7 - t - 1")


def test_cache_roundtrip(tmp_path):
    cfg = PipelineConfig(cache_dir=str(tmp_path))
    first = run_pipeline(F, cfg)
    assert first.cache_status == "miss"
    path = tmp_path / f"scan-{poly_digest(F)}.json"
    assert path.exists()
    second = run_pipeline(F, cfg)
    assert second.cache_status == "hit"
    assert second.data == first.data


def test_cache_digest_mismatch_rescans(tmp_path, caplog):
    cache = PrimeScanCache(tmp_path)
    other = parse_poly("t^7 - 2")
    run_pipeline(other, PipelineConfig(cache_dir=str(tmp_path)))
    # plant the other polynomial's scan under F's file name
    cache.path_for(F).write_text(cache.path_for(other).read_text())
    with caplog.at_level(logging.WARNING):
        rep = run_pipeline(F, PipelineConfig(cache_dir=str(tmp_path)))
    assert rep.cache_status == "ignored"
    assert "another polynomial" in caplog.text
    assert rep.verdict == END_Z_CERTIFIED
    assert cache.load(F)[1] == "hit"  # rewritten correctly


def test_cache_truncation_rescans(tmp_path, caplog):
    cfg = PipelineConfig(cache_dir=str(tmp_path))
    run_pipeline(F, cfg)
    path = PrimeScanCache(tmp_path).path_for(F)
    text = path.read_text()
    path.write_text(text[: len(text) // 2])
    with caplog.at_level(logging.WARNING):
        rep = run_pipeline(F, cfg)
    assert rep.cache_status == "ignored" and "unreadable" in caplog.text
    assert rep.verdict == END_Z_CERTIFIED


def test_cache_tampered_payload_rejected(tmp_path, caplog):
    cfg = PipelineConfig(cache_dir=str(tmp_path))
    run_pipeline(F, cfg)
    path = PrimeScanCache(tmp_path).path_for(F)
    data = json.loads(path.read_text())
    data["primes"]["3"] = [[1, 1]]
    path.write_text(json.dumps(data))
    with caplog.at_level(logging.WARNING):
        rep = run_pipeline(F, cfg)
    assert rep.cache_status == "ignored" and "checksum" in caplog.text
    assert replay_certificate(rep.data).ok


def test_unwritable_cache_is_only_a_warning(tmp_path, caplog):
    blocker = tmp_path / "file"
    blocker.write_text("not a directory")
    with caplog.at_level(logging.WARNING):
        rep = run_pipeline(F, PipelineConfig(cache_dir=str(blocker / "sub")))
    assert rep.verdict == END_Z_CERTIFIED
    assert "cannot write" in caplog.text


def test_prime_scan_cache_helper(tmp_path):
    path = prime_scan_cache(F, PipelineConfig(cache_dir=str(tmp_path)))
    assert path is not None and path.exists()
    assert prime_scan_cache(F, PipelineConfig()) is None
