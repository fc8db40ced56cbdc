import io
import json
import subprocess
import sys

import jsonschema
import pytest

from npocert.cli import EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, EXIT_VERIFY, RunConfig, main
from npocert.schema import SCHEMA


@pytest.fixture(autouse=True)
def _cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv("NPOCERT_CACHE_DIR", str(tmp_path / "default-cache"))


def run(argv, stdin=""):
    out = io.StringIO()
    code = main(argv, stdout=out, stdin=io.StringIO(stdin))
    return code, out.getvalue()


def run_json(argv, stdin=""):
    code, text = run(argv, stdin)
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_schema_flag():
    code, text = run(["--schema"])
    assert code == EXIT_OK
    jsonschema.Draft202012Validator.check_schema(json.loads(text))


def test_construct():
    assert run(["construct", "complete", "3"]) == (EXIT_OK, "Bw\n")
    code, doc = run_json(["construct", "petersen", "--format", "json"])
    assert code == EXIT_OK and doc["n"] == 10
    assert run(["construct", "cycle"])[0] == EXIT_INPUT
    assert run(["construct", "bogus"])[0] == EXIT_INPUT


def test_inertia():
    code, doc = run_json(["inertia"], "Bw\nDhc\n")
    assert code == EXIT_OK
    assert [r["inertia"] for r in doc["results"]] == [[1, 2, 0], [3, 2, 0]]
    assert doc["results"][1]["nonpositive"] == 2
    code, text = run(["inertia", "--format", "text"], "Bw\n")
    assert "nonpositive=2" in text


def test_spectrum():
    code, doc = run_json(["spectrum"], "Bw\n")
    assert code == EXIT_OK and doc["results"][0]["spectrum"] == [2.0, -1.0, -1.0]


def test_bad_graph6_input():
    assert run(["inertia"], "Bw\nB\n")[0] == EXIT_INPUT


def test_missing_file():
    assert run(["inertia", "/nonexistent/file.g6"])[0] == EXIT_INPUT


@pytest.mark.parametrize("k,value", [(1, 1), (2, 3), (3, 6), (4, 10)])
def test_npo(k, value, tmp_path):
    code, doc = run_json(["npo", str(k), "--workers", "1", "--cache-dir", str(tmp_path)])
    assert code == EXIT_OK and doc["value"] == value and doc["complete"]


def test_npo_k_option():
    code, doc = run_json(["npo", "--k", "3", "--workers", "1"])
    assert code == EXIT_OK and doc["value"] == 6 and doc["witness_graph6"] == "DLo"


def test_npo_truncated_persists_to_default_cache(tmp_path):
    code, doc = run_json(["npo", "4", "--max-level", "8", "--workers", "1"])
    assert code == EXIT_RESOURCE and not doc["complete"] and doc["value"] is None
    cache = tmp_path / "default-cache"
    assert doc["cache_dir"] == str(cache)
    assert (cache / "frontier_k4_n8.g6").read_text().count("\n") == 7
    code, doc = run_json(["npo", "4", "--resume", "--workers", "1"])
    assert code == EXIT_OK and doc["value"] == 10


def test_npo_no_cache(tmp_path):
    code, doc = run_json(["npo", "3", "--no-cache", "--workers", "1"])
    assert code == EXIT_OK and doc["cache_dir"] is None
    assert not (tmp_path / "default-cache").exists()


def test_npo_resume_and_corruption(tmp_path):
    assert run(["npo", "4", "--max-level", "6", "--workers", "1", "--cache-dir", str(tmp_path)])[0] == EXIT_RESOURCE
    code, doc = run_json(["npo", "4", "--resume", "--workers", "1", "--cache-dir", str(tmp_path)])
    assert code == EXIT_OK and doc["value"] == 10
    f = tmp_path / "frontier_k4_n10.g6"
    f.write_text("Bw\n")
    assert run(["npo", "4", "--resume", "--workers", "1", "--cache-dir", str(tmp_path)])[0] == EXIT_INPUT


def test_npo_restricted_truncated():
    code, doc = run_json(["npo", "5", "--restricted", "--max-level", "7", "--workers", "1", "--no-cache"])
    assert code == EXIT_RESOURCE
    assert doc["restricted"] and doc["level_counts"][7] == 68 and doc["pattern_graph6"]


def test_npo_mismatch_is_verify_failure(monkeypatch):
    import npocert.cli as cli
    from npocert.search import BoundRow

    monkeypatch.setattr(cli, "best_bounds", lambda k: BoundRow(k, 7, 7, "tampered"))
    assert run(["npo", "3", "--workers", "1"])[0] == EXIT_VERIFY


def test_npo_needs_k():
    assert run(["npo"])[0] == EXIT_INPUT
    assert run(["npo", "0"])[0] == EXIT_INPUT


def test_laplacian():
    code, doc = run_json(["laplacian"], "Bw\n")
    assert code == EXIT_OK
    assert [v["k"] for v in doc["results"][0]["verdicts"]] == [1, 2]
    code, text = run(["laplacian", "--format", "text", "--k", "2"], "Bw\n")
    assert "holds" in text
    assert run(["laplacian", "--k", "3"], "Bw\n")[0] == EXIT_INPUT


def test_bounds():
    code, doc = run_json(["bounds", "--max-k", "8"])
    assert code == EXIT_OK
    assert {r["k"] for r in doc["results"]} == set(range(1, 9))
    code, doc = run_json(["bounds", "--k", "6"])
    assert doc["results"][0]["lower"] == 22


def test_usage_errors():
    assert run([])[0] == EXIT_INPUT
    assert run(["frobnicate"])[0] == EXIT_INPUT
    assert run(["npo", "3", "--tolerance", "-1"])[0] == EXIT_INPUT


def test_run_config_validation(tmp_path):
    with pytest.raises(ValueError):
        RunConfig("npo", k=0)
    with pytest.raises(ValueError):
        RunConfig("npo", max_level=65)
    with pytest.raises(ValueError):
        RunConfig("npo", workers=0)
    RunConfig("npo", cache_dir=str(tmp_path / "new"))
    assert (tmp_path / "new").is_dir()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "npocert", "construct", "complete", "3"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and proc.stdout == "Bw\n"
