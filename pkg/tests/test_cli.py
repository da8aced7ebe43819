import io
import json
import sys

import pytest

from wreathcover.cli import main


def run_cli(args, capsys):
    status = main(args)
    out = capsys.readouterr().out
    return status, out


def run_json(args, capsys):
    status, out = run_cli([*args, "--json"], capsys)
    return status, json.loads(out)


def test_sigma_a5(capsys, _cache_dir):
    status, report = run_json(["sigma", "A5", "--exact"], capsys)
    assert status == 0
    assert report["certificate"]["value"] == 10
    assert report["verified"] is True


def test_sigma_greedy(capsys):
    status, report = run_json(["sigma", "A5", "--greedy"], capsys)
    assert status == 0
    assert report["certificate"]["kind"] == "upper-bound"


def test_sigma_target(capsys):
    status, report = run_json(["sigma", "A5", "--target", "orders:5"], capsys)
    assert status == 0
    assert report["certificate"]["value"] == 6  # the six D10s are forced


def test_catalog_command(capsys):
    status, report = run_json(["catalog", "M11"], capsys)
    assert status == 0
    assert report["order"] == 7920
    assert len(report["maximal_classes"]) == 5


def test_formula_commands(capsys):
    status, report = run_json(["formula", "c1", "-m", "3"], capsys)
    assert status == 0 and report["value"] == str(1 + 11**3 + 12**3)
    status, report = run_json(["formula", "main2", "-n", "14", "-m", "1"], capsys)
    assert status == 0 and report["value"] == "4096"
    status, report = run_json(["formula", "f-ratio", "-n", "16", "-m", "2"], capsys)
    assert status == 0 and 0 < report["value_float"] < 1
    status, report = run_json(["formula", "stirling", "-n", "10"], capsys)
    assert status == 0


def test_check_inequalities(capsys):
    status, report = run_json(
        ["check-inequalities", "--lemma", "sec13-1", "--n-range", "15..98"], capsys
    )
    assert status == 0
    assert report["passed"] and report["cases_checked"] == 23


def test_verify_c1_m2(capsys, _cache_dir):
    status, report = run_json(["verify-c1", "-m", "2"], capsys)
    assert status == 0
    assert report["passed"]
    assert report["formula_value"] == "266"


def test_verify_c2(capsys, _cache_dir):
    status, report = run_json(["verify-c2", "-p", "11", "-m", "5"], capsys)
    assert status == 0 and report["passed"]


def test_verify_unbeatable_failure_exit_code(capsys, _cache_dir):
    status, report = run_json(
        [
            "verify-unbeatable",
            "A5",
            "--sigma-spec",
            "orders:5,3",
            "--families",
            "D10,S3",
            "-m",
            "2",
        ],
        capsys,
    )
    assert status == 1  # U4 fails at this scale; witness embedded
    u4 = [c for c in report["unbeatability"]["conditions"] if c["condition"].startswith("U4")][0]
    assert u4["witness"] is not None


def test_construct_and_verify_cover_roundtrip(tmp_path, capsys, _cache_dir):
    fam = tmp_path / "family.txt"
    status, report = run_json(
        ["construct-cover", "A5", "-m", "2", "--out", str(fam)], capsys
    )
    assert status == 0 and report["verified"] is True
    assert report["family_count"] == 57
    status, report = run_json(
        ["verify-cover", "A5", "-m", "2", "--family-file", str(fam)], capsys
    )
    assert status == 0 and report["covered"] is True
    # corrupt the family: drop a product-type line
    lines = fam.read_text().splitlines()
    removed = [ln for ln in lines if ln.startswith("product-type")][0]
    fam.write_text("\n".join(ln for ln in lines if ln != removed) + "\n")
    status, report = run_json(
        ["verify-cover", "A5", "-m", "2", "--family-file", str(fam)], capsys
    )
    assert status == 1 and report["covered"] is False
    assert "uncovered_witness" in report


def test_usage_errors_exit_2(capsys):
    assert main(["sigma", "NoSuchGroup"]) == 2
    assert main(["verify-c2", "-p", "9", "-m", "5"]) == 2
    assert main(["check-inequalities", "--lemma", "bogus", "--n-range", "5..6"]) == 2


def test_json_byte_determinism_across_threads(capsys, _cache_dir):
    outputs = []
    for threads in ("1", "4"):
        status, out = run_cli(
            ["construct-cover", "A5", "-m", "2", "--threads", threads, "--json"],
            capsys,
        )
        assert status == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_human_rendering(capsys):
    status, out = run_cli(["formula", "c1", "-m", "2"], capsys)
    assert status == 0
    assert "value: 266" in out
