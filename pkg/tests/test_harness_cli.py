import json

import pytest

from crown.cli import main
from crown.fields import GF, QQ
from crown.harness import (
    CHECK_ORDER,
    CheckReport,
    RunConfig,
    exit_code_for,
    export_objects,
    report_json,
    run_suite,
)


def scrub_timing(payload: str) -> str:
    data = json.loads(payload)
    for report in data["reports"]:
        report["elapsed_ms"] = 0
    return json.dumps(data, sort_keys=True, indent=2)


# -- run_suite ----------------------------------------------------------------

def test_full_suite_level_two_passes():
    reports = run_suite(RunConfig(n=2))
    statuses = {r.check: r.status for r in reports}
    assert [r.check for r in reports] == list(CHECK_ORDER)
    for check in ("monoid", "graphs", "lemma", "transport", "iso", "noniso", "functor"):
        assert statuses[check] == "pass", statuses
    assert statuses["explore"] == "info"
    assert exit_code_for(reports) == 0


def test_subset_of_checks_runs_in_canonical_order():
    reports = run_suite(RunConfig(n=2, checks=("iso", "monoid")))
    assert [r.check for r in reports] == ["monoid", "iso"]


def test_crown_checks_skipped_at_level_one():
    reports = run_suite(RunConfig(n=1, checks=("monoid", "iso", "graphs")))
    statuses = {r.check: r.status for r in reports}
    assert statuses["monoid"] == "pass"
    assert statuses["iso"] == "skipped"
    assert statuses["graphs"] == "skipped"
    assert exit_code_for(reports) == 0


def test_reconstruction_downgrades_on_cap():
    reports = run_suite(RunConfig(n=2, checks=("noniso",), max_proj_points=100))
    (report,) = reports
    assert report.status == "pass"  # graph-level checks still run
    assert "skipped" in report.details["reconstruction"]


def test_noniso_uses_f2_for_rational_configs():
    (report,) = run_suite(RunConfig(n=2, field=QQ, checks=("noniso",)))
    assert "fp:2" in report.details["reconstruction_field_note"]
    assert report.details["reconstruction"]["plus"]["round_trip"]


def test_prime_field_suite_passes():
    reports = run_suite(RunConfig(n=2, field=GF(2), checks=("monoid", "lemma", "noniso")))
    assert all(r.status == "pass" for r in reports)


def test_invalid_config_rejected():
    with pytest.raises(ValueError):
        run_suite(RunConfig(n=2, checks=("nosuch",)))
    with pytest.raises(ValueError):
        run_suite(RunConfig(n=0))
    with pytest.raises(ValueError):
        run_suite(RunConfig(n=2, max_tensor_dim=0))


def test_exit_code_logic():
    ok = CheckReport("monoid", {}, "pass", {}, 1)
    bad = CheckReport("iso", {}, "fail", {}, 1)
    info = CheckReport("explore", {}, "info", {}, 1)
    skip = CheckReport("noniso", {}, "skipped", {}, 1)
    assert exit_code_for([ok, info, skip]) == 0
    assert exit_code_for([ok, bad]) == 1


def test_report_json_deterministic_modulo_timing():
    cfg = RunConfig(n=2, checks=("monoid", "graphs", "lemma", "iso"))
    first = report_json(cfg, run_suite(cfg))
    second = report_json(cfg, run_suite(cfg))
    assert scrub_timing(first) == scrub_timing(second)
    data = json.loads(first)
    assert data["version"] == 1
    assert data["config"]["n"] == 2


# -- exports ------------------------------------------------------------------

def test_export_graphs(tmp_path):
    cfg = RunConfig(n=2)
    path = tmp_path / "graphs.json"
    export_objects(cfg, "graphs", str(path))
    data = json.loads(path.read_text())
    assert len(data["crown_plus"]["vertices"]) == 10
    assert len(data["crown_plus"]["edges"]) == 16
    assert len(data["strip"]["vertices"]) == 12


def test_export_algebras(tmp_path):
    cfg = RunConfig(n=2)
    path = tmp_path / "algebras.json"
    export_objects(cfg, "algebras", str(path))
    data = json.loads(path.read_text())
    assert len(data["crown_plus"]["basis"]) == 36
    assert len(data["strip"]["basis"]) == 40


def test_export_nat_trans(tmp_path):
    cfg = RunConfig(n=2)
    path = tmp_path / "nt.json"
    export_objects(cfg, "nat_trans", str(path))
    data = json.loads(path.read_text())
    assert data["twist_family"]["r"] == 1
    assert data["twist_family"]["dims"] == [36, 36]


def test_export_is_byte_deterministic(tmp_path):
    cfg = RunConfig(n=2)
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    export_objects(cfg, "matrices", str(a))
    export_objects(cfg, "matrices", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_export_unknown_kind(tmp_path):
    with pytest.raises(ValueError):
        export_objects(RunConfig(n=2), "pictures", str(tmp_path / "x.json"))


# -- CLI ----------------------------------------------------------------------

def test_cli_verify_exit_zero(tmp_path, capsys):
    path = tmp_path / "report.json"
    rc = main(["verify", "--n", "2", "--checks", "monoid,graphs", "--json", str(path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    data = json.loads(path.read_text())
    assert {r["check"] for r in data["reports"]} == {"monoid", "graphs"}


def test_cli_verify_skips_at_level_one(capsys):
    rc = main(["verify", "--n", "1", "--checks", "iso"])
    assert rc == 0
    assert "SKIPPED" in capsys.readouterr().out.upper()


def test_cli_rejects_bad_usage(capsys):
    assert main(["verify", "--field", "float32"]) == 2
    assert main(["nosuchcommand"]) == 2
    assert main(["verify", "--checks", "nosuch"]) == 2


def test_cli_info(capsys):
    rc = main(["info", "--n", "2"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "|W_2| = 18" in out
    assert "12 vertices" in out


def test_cli_export(tmp_path, capsys):
    out = tmp_path / "g.json"
    rc = main(["export", "--what", "graphs", "--n", "2", "--out", str(out)])
    assert rc == 0
    assert out.exists()
