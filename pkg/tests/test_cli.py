"""Tests for the qmodes command-line harness."""

import json
import subprocess
import sys

import pytest

from qmodes.cli import (
    EQUATION_TAGS,
    SCHEMA_VERSION,
    CheckRecord,
    ConfigError,
    RunConfig,
    assemble_report,
    build_parser,
    canonical_json,
    config_from_namespace,
    main,
    render_text,
    strip_timing,
)
from qmodes.fock import RELATION_FAMILIES

CORRUPTION_SENSITIVE = {
    "annihilator_annihilator_swap",
    "annihilator_creator_swap",
    "ladder_commutator_scale_product",
    "mode_contraction",
    "normal_product_diagonal",
}


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# exit codes


def test_verify_algebra_all_pass(capsys):
    code, out, _ = run_cli(
        ["verify", "algebra", "--q", "0.5", "--modes", "2", "--cutoff", "5"], capsys
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert len([l for l in lines if l.startswith("PASS ")]) == len(RELATION_FAMILIES)
    assert lines[-1] == f"overall PASS ({len(RELATION_FAMILIES)} checks)"


def test_bad_q_is_a_config_error(capsys):
    code, _, err = run_cli(["verify", "algebra", "--q", "1.5"], capsys)
    assert code == 2
    assert "configuration error" in err


def test_unknown_command_exits_2(capsys):
    assert run_cli(["summon"], capsys)[0] == 2
    assert run_cli([], capsys)[0] == 2


def test_version_flag_exits_0(capsys):
    code, out, err = run_cli(["--version"], capsys)
    assert code == 0
    assert "qmodes" in out + err


def test_failing_check_exits_1(capsys):
    code, out, _ = run_cli(
        ["coherent", "check", "--q", "0.5", "--z", "5.0"], capsys
    )
    assert code == 1
    assert "FAIL coherent_domain" in out


def test_zero_points_rejected(capsys):
    code, _, err = run_cli(["qexp", "eval", "--points", "0"], capsys)
    assert code == 2
    assert "points" in err


# ---------------------------------------------------------------------------
# documented one-line outputs


def test_norm_of_two_one_word(capsys):
    code, out, _ = run_cli(["qsym", "norm", "--word", "2,1", "--q", "0.5"], capsys)
    assert code == 0
    assert out.split("\n")[0] == "0.25"


def test_norm_of_sorted_word_is_one(capsys):
    code, out, _ = run_cli(["qsym", "norm", "--word", "1,2,3", "--q", "0.7"], capsys)
    assert code == 0
    assert out.split("\n")[0] == "1.0"


def test_qexp_point_evaluation_prints_value(capsys):
    code, out, _ = run_cli(
        ["qexp", "eval", "--q", "0.5", "--x", "0.25"], capsys
    )
    assert code == 0
    assert out.startswith("exp_q(")


def test_qexp_outside_disk_fails_without_deviation(capsys):
    code, out, _ = run_cli(["qexp", "eval", "--q", "0.5", "--x", "2.0"], capsys)
    assert code == 1
    assert "deviation=n/a" in out


# ---------------------------------------------------------------------------
# negative control


def test_injected_corruption_trips_exactly_the_sensitive_families(capsys):
    code, out, _ = run_cli(
        [
            "verify",
            "algebra",
            "--q",
            "0.5",
            "--modes",
            "2",
            "--cutoff",
            "5",
            "--inject-corruption",
        ],
        capsys,
    )
    assert code == 1
    failed = {
        line.split()[1] for line in out.strip().split("\n") if line.startswith("FAIL ")
    }
    assert failed == CORRUPTION_SENSITIVE


def test_corruption_needs_two_modes(capsys):
    code, _, err = run_cli(
        ["verify", "algebra", "--modes", "1", "--inject-corruption"], capsys
    )
    assert code == 2
    assert "negative control" in err


# ---------------------------------------------------------------------------
# JSON report shape and determinism


def test_json_report_schema(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, _, _ = run_cli(
        [
            "verify",
            "algebra",
            "--q",
            "0.5",
            "--modes",
            "2",
            "--cutoff",
            "4",
            "--format",
            "json",
            "--out",
            str(out_path),
        ],
        capsys,
    )
    assert code == 0
    text = out_path.read_text()
    report = json.loads(text)
    assert set(report) == {"schema_version", "tool_version", "config", "checks"}
    assert report["schema_version"] == SCHEMA_VERSION
    assert report["config"]["command"] == "verify algebra"
    for check in report["checks"]:
        assert set(check) >= {"name", "paper_ref", "params", "pass", "millis"}
        assert ("deviation" in check) != ("exact_match" in check)
        assert check["paper_ref"] == EQUATION_TAGS[check["name"]]
    # canonical serialization round-trips byte for byte
    assert canonical_json(report) == text


def test_json_reports_are_deterministic_modulo_timing(capsys):
    argv = [
        "qsym",
        "exchange",
        "--q",
        "0.5",
        "--modes",
        "2",
        "--N",
        "3",
        "--format",
        "json",
    ]
    first = json.loads(run_cli(argv, capsys)[1])
    second = json.loads(run_cli(argv, capsys)[1])
    assert canonical_json(strip_timing(first)) == canonical_json(strip_timing(second))


def test_checks_are_sorted_by_name_then_params(capsys):
    _, out, _ = run_cli(
        ["jackson", "moments", "--q", "0.5", "0.3", "--N", "2", "--format", "json"],
        capsys,
    )
    report = json.loads(out)
    keys = [
        (check["name"], json.dumps(check["params"], sort_keys=True))
        for check in report["checks"]
    ]
    assert keys == sorted(keys)


# ---------------------------------------------------------------------------
# text rendering and config plumbing


def test_render_text_formats():
    report = {
        "checks": [
            {
                "name": "alpha",
                "paper_ref": "Eq.1",
                "params": {"q": 0.5},
                "pass": True,
                "deviation": 1e-15,
                "millis": 3,
            },
            {
                "name": "beta",
                "paper_ref": "Eq.25",
                "params": {"N": 4},
                "pass": True,
                "exact_match": True,
                "millis": 0,
            },
        ]
    }
    text = render_text(report)
    assert "PASS alpha [Eq.1] q=0.5 deviation=1.000e-15" in text
    assert "PASS beta [Eq.25] N=4 exact_match=True" in text
    assert text.endswith("overall PASS (2 checks)\n")


def test_config_defaults_per_verb():
    parser = build_parser()
    ns = parser.parse_args(["verify", "algebra"])
    config = config_from_namespace(ns)
    assert config.q_values == (0.3, 0.5, 0.9)
    assert (config.modes, config.cutoff, config.particles) == (2, 6, 4)
    assert config.tol == 1e-12
    assert config.weight_variant == "squared-q"
    assert config.variant.value == "squared_q"
    ns = parser.parse_args(["coherent", "check"])
    config = config_from_namespace(ns)
    assert config.cutoff == 8
    assert config.tol == 1e-9
    assert config.points == 4


def test_runconfig_validate_rejects_bad_values():
    base = dict(command="verify algebra")
    for overrides in (
        {"q_values": (0.0,)},
        {"q_values": ()},
        {"modes": 0},
        {"cutoff": 1},
        {"particles": -1},
        {"tol": 0.0},
        {"points": 0},
        {"weight_variant": "cubed-q"},
    ):
        with pytest.raises(ConfigError):
            RunConfig(**base, **overrides).validate()


def test_assemble_report_echoes_config():
    config = RunConfig(command="jackson moments", q_values=(0.5,))
    record = CheckRecord(
        name="jackson_moment", params={"q": 0.5, "n": 0}, passed=True, deviation=0.0
    )
    report = assemble_report(config, [record])
    assert report["config"]["q"] == [0.5]
    assert report["checks"][0]["pass"] is True


def test_every_record_name_has_an_equation_tag(capsys):
    for argv in (
        ["verify", "algebra", "--q", "0.5", "--cutoff", "4"],
        ["qexp", "eval", "--q", "0.5", "--points", "2"],
        ["jackson", "moments", "--q", "0.5", "--N", "1"],
        ["qsym", "exchange", "--q", "0.5", "--modes", "2", "--N", "2"],
        ["qsym", "norm", "--q", "0.5", "--modes", "2", "--N", "3"],
        ["qsym", "identity", "--modes", "2", "--N", "3"],
        ["qsym", "appendix", "--modes", "2", "--N", "3"],
        ["coherent", "check", "--q", "0.5", "--points", "1", "--modes", "1"],
    ):
        code, out, err = run_cli(argv + ["--format", "json"], capsys)
        assert code == 0, (argv, err)
        report = json.loads(out)
        assert report["checks"], argv
        for check in report["checks"]:
            assert check["pass"], (argv, check)
            assert check["paper_ref"].startswith("Eq."), check


# ---------------------------------------------------------------------------
# installed entry points


def test_module_invocation():
    result = subprocess.run(
        [sys.executable, "-m", "qmodes", "--version"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert result.returncode == 0
    assert "qmodes" in result.stdout + result.stderr
