import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from loccoh import cli

DATA = Path(__file__).parent / "data"
CORPUS = cli.corpus_dir()


def test_z_p_example_passes(tmp_path):
    out = tmp_path / "zp.json"
    code = cli.main(["--job", str(CORPUS / "z-p-example.json"), "--out", str(out)])
    assert code == cli.EXIT_OK
    report = json.loads(out.read_text())
    gamma = next(t for t in report["tasks"] if t["task"] == "zp-gamma")
    assert gamma["result"]["1"] == ["Zpinf"] and gamma["result"]["0"] == []
    assert report["passed"] and all(t["passed"] for t in report["tasks"])


def test_malformed_json_is_schema_error(tmp_path):
    code, report = cli.run_job(DATA / "malformed.json", tmp_path / "r.json")
    assert code == cli.EXIT_SCHEMA
    assert report["error_type"] == "SchemaError"
    assert json.loads((tmp_path / "r.json").read_text())["passed"] is False


@pytest.mark.parametrize("name", ["missing-ideal.json", "unknown-task.json"])
def test_invalid_jobs_are_schema_errors(name):
    code, report = cli.run_job(DATA / name)
    assert code == cli.EXIT_SCHEMA and not report["passed"]


def test_failing_assertion_reports_witness():
    code, report = cli.run_job(DATA / "failing-assertion.json")
    assert code == cli.EXIT_FAILED
    (task,) = report["tasks"]
    assert task["status"] == "failed"
    assert task["witness"] == [{"index": 2, "degree": [-1, -1], "expected": 0, "got": 1}]


def test_not_stabilized_is_computation_error():
    code, report = cli.run_job(DATA / "not-stabilized.json")
    assert code == cli.EXIT_COMPUTE
    (task,) = report["tasks"]
    assert task["error_type"] == "NotStabilized" and task["status"] == "error"


def test_report_embeds_inputs_and_parameters():
    _, report = cli.run_job(DATA / "failing-assertion.json")
    inputs = report["tasks"][0]["inputs"]
    assert inputs["box"] == {"lo": [-2, -2], "hi": [2, 2]}
    assert inputs["field"] == "QQ" and inputs["ideal"] == [[1, 0], [0, 1]]
    assert report["parameters"] == dict(cli.DEFAULTS)


def test_reports_are_deterministic_up_to_timing():
    dumps = []
    for threads in (1, 2, 1):
        _, report = cli.run_job(CORPUS / "kxy-maximal.json", threads=threads)
        assert "generated_at" in report["timing"]
        dumps.append(json.dumps(cli.strip_volatile(report), sort_keys=True))
    assert dumps[0] == dumps[1] == dumps[2]


def test_seeded_random_samples_are_reproducible():
    a = json.dumps(cli.strip_volatile(cli.run_job(CORPUS / "zp-laws.json", seed=7)[1]))
    b = json.dumps(cli.strip_volatile(cli.run_job(CORPUS / "zp-laws.json", seed=7)[1]))
    assert a == b


def test_empty_suite_warns_and_passes(tmp_path, capsys):
    assert cli.main(["--suite", str(tmp_path)]) == cli.EXIT_OK
    assert "zero jobs" in capsys.readouterr().out


def test_suite_with_failing_job_is_nonzero(tmp_path):
    for name in ("z-p-example.json", "zp-modules.json"):
        shutil.copy(CORPUS / name, tmp_path / name)
    assert cli.main(["--suite", str(tmp_path), "--out", str(tmp_path / "reports")]) == cli.EXIT_OK
    shutil.copy(DATA / "failing-assertion.json", tmp_path / "failing-assertion.json")
    code, rows = cli.run_suite(tmp_path, stream=io.StringIO())
    assert code == cli.EXIT_FAILED
    assert [r["exit"] for r in rows if r["job"] == "failing-assertion.json"] == [cli.EXIT_FAILED]
    assert (tmp_path / "reports" / "z-p-example.report.json").exists()


def test_job_and_suite_are_exclusive(capsys):
    assert cli.main([]) == cli.EXIT_SCHEMA
    assert cli.main(["--job", "a.json", "--suite", "b"]) == cli.EXIT_SCHEMA


def test_environment_defaults_and_flag_precedence(monkeypatch):
    monkeypatch.setenv("LOCCOH_THREADS", "3")
    monkeypatch.setenv("LOCCOH_SEED", "11")
    monkeypatch.setenv("LOCCOH_CSV", "yes")
    args = cli.build_parser().parse_args(["--job", "x.json"])
    assert (args.threads, args.seed, args.csv) == (3, 11, True)
    args = cli.build_parser().parse_args(["--job", "x.json", "--threads", "1", "--seed", "2"])
    assert (args.threads, args.seed) == (1, 2)


def test_csv_tables_written(tmp_path):
    out = tmp_path / "kxy.json"
    code = cli.main(["--job", str(CORPUS / "kxy-maximal.json"), "--out", str(out), "--csv"])
    assert code == cli.EXIT_OK
    csvs = sorted(p.name for p in tmp_path.glob("kxy-*.csv"))
    assert csvs and all("local-cohomology" in n or "cech" in n for n in csvs)
    header = (tmp_path / csvs[0]).read_text().splitlines()[0]
    assert "dim" in header


def test_console_entry_point_runs(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "loccoh", "--job", str(DATA / "failing-assertion.json"),
                           "--out", str(tmp_path / "r.json")], capture_output=True, text=True)
    assert proc.returncode == cli.EXIT_FAILED
    assert "FAIL (exit 1)" in proc.stdout


def test_bundled_jobs_validate():
    for path in sorted(CORPUS.glob("*.json")):
        cli.validate_job(cli.load_job(path))
