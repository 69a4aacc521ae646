import json
import subprocess
import sys

import jsonschema
import pytest

from domlab.cli import CACHE_ENV, EXIT_CAPACITY, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, SCHEMA_PATH, main

SCHEMA = json.loads(SCHEMA_PATH.read_text())
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    payload = json.loads(out)
    VALIDATOR.validate(payload)
    return code, payload


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


@pytest.mark.parametrize(
    "argv,value",
    [
        (("gamma", "--sizes", "3,3,3"), 4),
        (("gamma", "--sizes", "2,3", "--total"), 4),
        (("gamma", "--sizes", "3,3", "--oracle"), 3),
        (("gamma", "--sizes", "5,5,5,5", "--threads", "1"), 5),
    ],
)
def test_gamma(capsys, argv, value):
    code, payload = run_json(capsys, *argv)
    assert code == EXIT_OK
    assert payload["status"] == "exact" and payload["value"] == value
    assert payload["lower"] == payload["upper"] == value


def test_gamma_text_and_witness_file(capsys, tmp_path):
    out_file = tmp_path / "w.json"
    code, out, _ = run(capsys, "gamma", "--sizes", "3,3,3", "-o", str(out_file))
    assert code == EXIT_OK and "4" in out
    VALIDATOR.validate(json.loads(out_file.read_text()))
    code, payload = run_json(capsys, "verify", str(out_file))
    assert code == EXIT_OK and payload["ok"]


def test_gamma_timeout_is_interval(capsys):
    code, payload = run_json(capsys, "gamma", "--sizes", "4,4,4,5", "--time-limit", "0.1", "--threads", "1")
    assert code == EXIT_CAPACITY
    assert payload["status"] == "interval" and payload["value"] is None
    assert payload["lower"] <= payload["upper"]


@pytest.mark.parametrize(
    "argv",
    [
        ("gamma", "--sizes", "1,3"),
        ("gamma",),
        ("gamma", "--sizes", "a,b"),
        ("nonsense",),
        ("jacobsthal", "g", "--primes", "4,3"),
        ("construct", "diagonal", "--sizes", "4,4,4,4"),
        ("construct", "lift", "--s", "2,3", "--r", "7,13"),
        ("construct", "prefix"),
    ],
)
def test_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_capacity_errors(capsys):
    assert run(capsys, "gamma", "--sizes", "10,10,10,10,10")[0] == EXIT_CAPACITY
    assert run(capsys, "gamma", "--sizes", "5,5,5", "--oracle")[0] == EXIT_CAPACITY
    assert run(capsys, "jacobsthal", "h", "--n", "12")[0] == EXIT_CAPACITY


def test_classify(capsys):
    code, payload = run_json(capsys, "classify", "--sizes", "4,4,4,6")
    assert code == EXIT_OK
    assert payload["classification"]["verdict"] == "exact"
    assert payload["classification"]["value"] == 6
    code, payload = run_json(capsys, "classify", "--sizes", "2,2,4,4,4,6")
    assert payload["classification"]["verdict"] == "reduced_k2"
    assert payload["classification"]["multiplier"] == 2
    code, payload = run_json(capsys, "classify", "--sizes", "2,2,5")
    assert payload["classification"]["verdict"] == "small_t"
    code, out, _ = run(capsys, "classify", "--sizes", "3,3,3")
    assert code == EXIT_OK and out.strip()


def test_bounds(capsys):
    code, payload = run_json(capsys, "bounds", "--sizes", "3,3")
    assert code == EXIT_OK
    assert (payload["lower"], payload["upper"]) == (3, 5)
    code, payload = run_json(capsys, "bounds", "--sizes", "5,5,5,5", "--k", "2")
    assert payload["lower"] <= 5 <= payload["upper"]


def test_jacobsthal(capsys):
    code, payload = run_json(capsys, "jacobsthal", "g", "--primes", "2,3,5,7")
    assert code == EXIT_OK and payload["result"]["g"] == 10
    code, payload = run_json(capsys, "jacobsthal", "h", "--n", "5")
    assert payload["result"]["g"] == 14 and payload["result"]["witness"]["start"] == "114"
    code, payload = run_json(capsys, "jacobsthal", "H", "--n", "2")
    assert payload["result"]["g"] == 4 and "warning" in payload
    code, out, _ = run(capsys, "jacobsthal", "H", "--n", "2")
    assert "pool" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("construct", "prefix", "--primes", "2,3,5"),
        ("construct", "mekis3", "--sizes", "3,3,3"),
        ("construct", "diagonal", "--sizes", "5,5,5,5"),
        ("construct", "tplus2", "--sizes", "4,4,4,6"),
        ("construct", "lift", "--s", "2,3", "--k", "1", "--r", "11,13"),
    ],
)
def test_construct(capsys, argv):
    code, payload = run_json(capsys, *argv)
    assert code == EXIT_OK and payload["verified"]


def test_lift_files_round_trip(capsys, tmp_path):
    path = tmp_path / "lift.json"
    code, out, _ = run(capsys, "construct", "lift", "--s", "2,3", "--r", "11,13", "-o", str(path))
    assert code == EXIT_OK and "858" in out
    for p in (path, path.with_suffix(".run.json")):
        VALIDATOR.validate(json.loads(p.read_text()))
        assert run(capsys, "verify", str(p))[0] == EXIT_OK


def test_verify_failures(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "dominating", "instance": {"sizes": [3, 3]}, "vertices": [[0, 0]]}))
    code, payload = run_json(capsys, "verify", str(bad))
    assert code == EXIT_VERIFY and not payload["ok"] and "counterexample" in payload
    malformed = tmp_path / "malformed.json"
    malformed.write_text(json.dumps({"kind": "dominating", "instance": {"sizes": [3, 3]}, "vertices": [[0, 9]]}))
    code, payload = run_json(capsys, "verify", str(malformed))
    assert code == EXIT_VERIFY and not payload["ok"]
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    assert run(capsys, "verify", str(garbage))[0] == EXIT_INPUT
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == EXIT_INPUT


def test_csv_output(capsys):
    code, out, _ = run(capsys, "bounds", "--sizes", "3,3", "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith("name,kind,value")
    assert len(lines) > 2


def test_conjecture_search(capsys):
    code, payload = run_json(capsys, "conjecture-search", "--n", "2", "--pool-first", "6")
    assert code == EXIT_OK and payload["gap"] >= 0


def test_repro_subset(capsys):
    code, payload = run_json(capsys, "repro", "--only", "8,9")
    assert code == EXIT_OK
    assert [r["criterion"] for r in payload["rows"]] == [8, 9]
    assert all(r["status"] == "pass" for r in payload["rows"])


def test_cache_is_byte_identical(capsys, tmp_path, monkeypatch):
    cache = tmp_path / "cache.jsonl"
    monkeypatch.setenv(CACHE_ENV, str(cache))
    argv = ("gamma", "--sizes", "4,4,4,6", "--threads", "1", "--cache", "--format", "json")
    first = run(capsys, *argv)
    assert cache.exists() and len(cache.read_text().splitlines()) == 1
    second = run(capsys, *argv)
    assert first[0] == second[0] == EXIT_OK
    assert first[1] == second[1]
    # the second call was served from the cache, nothing new appended
    assert len(cache.read_text().splitlines()) == 1
    fresh = run(capsys, *argv[:-3], "--format", "json")
    assert fresh[1] == first[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "domlab", "gamma", "--sizes", "2,5", "--format", "json"],
        capture_output=True, text=True, timeout=300,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == 2
