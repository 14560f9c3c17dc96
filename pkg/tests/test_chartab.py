import copy
import itertools
import json
import math
import random
from collections import Counter

import pytest

from quartic_forge import chartab
from quartic_forge.chartab import (
    CharTable,
    character_suite,
    character_suite_passes,
    frobenius_schur,
    indicator_degree_sum,
    involution_count,
    load_table,
    symplectic_irreps_of_degree,
    validate_table,
)
from quartic_forge.cyclotomic import exponent_conj
from quartic_forge.errors import ValidationError


@pytest.fixture(scope="module")
def a7():
    return load_table("a7")


@pytest.fixture(scope="module")
def a7_2():
    return load_table("2a7")


def raw(name):
    return json.loads((chartab.data_dir() / chartab.TABLE_FILES[name]).read_text())


def cycle_type(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i not in seen:
            n, j = 0, i
            while j not in seen:
                seen.add(j)
                j = p[j]
                n += 1
            out.append(n)
    return tuple(sorted(out, reverse=True))


def is_even(p):
    return sum(c - 1 for c in cycle_type(p)) % 2 == 0


def a7_cycle_types():
    """Brute-force oracle: (order, class size) -> fixed points, from all 2520 even permutations."""
    counts = Counter(cycle_type(p) for p in itertools.permutations(range(7)) if is_even(p))
    out = {}
    for ct, size in counts.items():
        order = 1
        for c in ct:
            order = order * c // math.gcd(order, c)
        fix = ct.count(1)
        if ct == (7,):
            out[(order, size // 2)] = fix  # 7-cycles split into two classes
        else:
            out[(order, size)] = fix
    return out


# -- validation ---------------------------------------------------------------------------------

def test_tables_validate(a7, a7_2):
    for t, order in ((a7, 2520), (a7_2, 5040)):
        rep = validate_table(t)
        assert rep.ok, rep.failures
        assert t.order == order == sum(r.degree**2 for r in t.irreps)
        assert len(t.classes) == len(t.irreps)


def test_degrees(a7, a7_2):
    assert sorted(r.degree for r in a7.irreps) == [1, 6, 10, 10, 14, 14, 15, 21, 35]
    faithful = [r.degree for r in a7_2.irreps if r.values[1] == -r.degree]
    assert sorted(faithful) == [4, 4, 14, 14, 20, 20, 36]


def test_a7_classes_match_permutations(a7):
    oracle = a7_cycle_types()
    got = Counter((c.order, c.size) for c in a7.classes)
    want = Counter()
    for (order, size) in oracle:
        want[(order, size)] += 2 if order == 7 else 1
    assert got == want


def test_degree_six_row_is_deleted_permutation_character(a7):
    oracle = a7_cycle_types()
    chi = a7.irrep("6a")
    for c, v in zip(a7.classes, chi.values):
        assert v == oracle[(c.order, c.size)] - 1, c.name


def test_conjugate_rows_are_rows(a7, a7_2):
    for t in (a7, a7_2):
        rows = {tuple(tuple(sorted(x.items())) for x in r.exps) for r in t.irreps}
        normalized = {tuple(v.coeffs for v in r.values) for r in t.irreps}
        for r in t.irreps:
            conj = tuple(v.conj().coeffs for v in r.values)
            assert conj in normalized, r.label
        assert len(rows) == len(t.irreps)


def test_class_size_perturbation_named(a7):
    data = a7.to_json()
    data["classes"][3]["size"] += 1
    rep = validate_table(CharTable.from_json(data))
    assert not rep.ok
    assert any("class_sizes_sum_to_order" in f for f in rep.failures)


def test_value_mutation_names_rows(a7):
    data = a7.to_json()
    data["irreps"][2]["values"][4].append([0, 1])
    rep = validate_table(CharTable.from_json(data))
    assert not rep.ok
    assert any("10a" in f or "rows" in f for f in rep.failures)
    with pytest.raises(ValidationError):
        rep.raise_if_failed()


def mutate(data: dict, rng: random.Random) -> str:
    """Apply one single-entry corruption in place and describe it."""
    n = data["conductor"]
    kind = rng.choice(["value", "value", "value", "size", "square", "degree", "order"])
    ci = rng.randrange(len(data["classes"]))
    if kind == "value":
        ri = rng.randrange(len(data["irreps"]))
        e = rng.randrange(n)
        data["irreps"][ri]["values"][ci].append([e, rng.choice([-1, 1])])
        return f"value {ri},{ci} += +-zeta^{e}"
    if kind == "size":
        data["classes"][ci]["size"] += rng.choice([-1, 1])
        return f"size of class {ci}"
    if kind == "square":
        k = len(data["classes"])
        old = data["classes"][ci]["square_class"]
        data["classes"][ci]["square_class"] = rng.choice([j for j in range(k) if j != old])
        return f"square class of {ci}"
    if kind == "degree":
        ri = rng.randrange(len(data["irreps"]))
        data["irreps"][ri]["degree"] += rng.choice([-1, 1])
        return f"degree of irrep {ri}"
    data["classes"][ci]["order"] += 1
    return f"order of class {ci}"


@pytest.mark.parametrize("name", ["a7", "2a7"])
def test_mutation_fuzzing(name):
    base = raw(name)
    rng = random.Random(20240601 + len(name))
    missed = []
    for _ in range(120):
        data = copy.deepcopy(base)
        what = mutate(data, rng)
        if data == base:
            continue
        if validate_table(CharTable.from_json(data), fail_fast=True).ok:
            missed.append(what)
    assert not missed


def test_square_map_error_detected(a7):
    data = a7.to_json()
    # send the 3A class to 2A under squaring
    data["classes"][2]["square_class"] = 1
    rep = validate_table(CharTable.from_json(data))
    assert any("square_map_order" in f for f in rep.failures)


@pytest.mark.parametrize("name", ["a7", "2a7"])
def test_every_square_class_reassignment_detected(name):
    base = raw(name)
    for i, cls in enumerate(base["classes"]):
        for j in range(len(base["classes"])):
            if j == cls["square_class"]:
                continue
            data = copy.deepcopy(base)
            data["classes"][i]["square_class"] = j
            assert not validate_table(CharTable.from_json(data), fail_fast=True).ok, (cls["name"], j)


def test_swapped_seven_classes_named(a7):
    data = a7.to_json()
    names = [c["name"] for c in data["classes"]]
    a, b = names.index("7A"), names.index("7B")
    data["classes"][b]["square_class"] = a
    rep = validate_table(CharTable.from_json(data))
    assert any("square_map_galois" in f for f in rep.failures)


# -- indicators -------------------------------------------------------------------------------

def test_indicator_examples(a7, a7_2):
    assert frobenius_schur(a7.irrep("1a"), a7) == 1
    assert frobenius_schur(a7.irrep("6a"), a7) == 1
    for t in (a7, a7_2):
        for r in t.irreps:
            assert frobenius_schur(r, t) in (-1, 0, 1)


def test_known_indicators(a7, a7_2):
    ind = {r.label: frobenius_schur(r, a7) for r in a7.irreps}
    assert ind == {"1a": 1, "6a": 1, "10a": 0, "10b": 0, "14a": 1, "14b": 1, "15a": 1, "21a": 1, "35a": 1}
    ind2 = {r.label: frobenius_schur(r, a7_2) for r in a7_2.irreps}
    assert {k: ind2[k] for k in ("4a", "4b", "14c", "14d", "20a", "20b", "36a")} == {
        "4a": 0, "4b": 0, "14c": -1, "14d": -1, "20a": -1, "20b": -1, "36a": -1,
    }
    # an indicator is 0 exactly when the character is not real
    for t in (a7, a7_2):
        for r in t.irreps:
            real = all(v == v.conj() for v in r.values)
            assert (frobenius_schur(r, t) != 0) == real


def test_involution_identity(a7, a7_2):
    assert indicator_degree_sum(a7) == involution_count(a7) == 106
    assert indicator_degree_sum(a7_2) == involution_count(a7_2) == 2
    # oracle: count g with g^2 = 1 among the even permutations directly
    assert sum(1 for p in itertools.permutations(range(7)) if is_even(p) and all(p[p[i]] == i for i in range(7))) == 106


def test_symplectic_examples(a7, a7_2):
    assert symplectic_irreps_of_degree(a7, 6) == []
    assert symplectic_irreps_of_degree(a7_2, 6) == []
    assert symplectic_irreps_of_degree(a7, 1) == []
    assert sorted(symplectic_irreps_of_degree(a7_2, 20)) == ["20a", "20b"]


def test_corrupt_indicator_raises(a7):
    data = a7.to_json()
    data["irreps"][1]["values"][1] = [[0, 5]]
    bad = CharTable.from_json(data)
    with pytest.raises(ValidationError):
        frobenius_schur(bad.irrep("6a"), bad)


# -- loading and suite --------------------------------------------------------------------------

def test_data_dir_resolution(tmp_path, monkeypatch):
    for key, fname in chartab.TABLE_FILES.items():
        (tmp_path / fname).write_text(json.dumps(raw(key)))
    monkeypatch.setenv(chartab.DATA_ENV_VAR, str(tmp_path))
    assert chartab.data_dir() == tmp_path
    assert load_table("A7").group == "A7"
    assert chartab.data_dir("/elsewhere").as_posix() == "/elsewhere"
    with pytest.raises(KeyError):
        load_table("s7")


def test_json_roundtrip(a7_2):
    again = CharTable.from_json(a7_2.to_json())
    assert [r.values for r in again.irreps] == [r.values for r in a7_2.irreps]


def test_character_suite():
    res = character_suite()
    assert character_suite_passes(res)
    assert res["a7"]["symplectic_degree_6"] == [] and res["2a7"]["symplectic_degree_6"] == []


def test_character_suite_flags_corrupt_data(tmp_path):
    for key, fname in chartab.TABLE_FILES.items():
        data = raw(key)
        if key == "2a7":
            data["irreps"][-1]["values"][3].append([1, 1])
        (tmp_path / fname).write_text(json.dumps(data))
    res = character_suite(tmp_path)
    assert not character_suite_passes(res)
    assert res["a7"]["validated"] and not res["2a7"]["validated"]
