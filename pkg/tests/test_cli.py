"""Dispatch, report formats, exit codes, and byte determinism."""

import json

import pytest

from slitlogic.cli import dispatch
from slitlogic.lattice import builtin

NOGO_ARGS = [
    "nogo",
    "--lattice", "builtin:boolean:2",
    "--bind", "X1=a,X2=b",
    "--amp1", "1/2,1/2",
    "--amp2", "1/2,1/2",
]


def test_nogo_default_run():
    report = dispatch(NOGO_ARGS)
    assert report.exit_code == 0
    assert report.verdict == "no-go holds"
    assert "(X1=0, X2=1) -> violates C-INT" in report.body
    assert "(X1=1, X2=1) -> violates C-COLLAPSE" in report.body
    assert "derivation traces:" in report.body


def test_nogo_defaults_match_explicit_flags():
    assert dispatch(["nogo"]).render() == dispatch(NOGO_ARGS).render()


def test_nogo_json_payload_round_trips():
    report = dispatch(NOGO_ARGS + ["--format", "json"])
    text = report.render()
    payload = json.loads(text)
    assert json.loads(json.dumps(payload)) == payload
    assert payload["verdict"] == "no-go holds"
    corners = {
        tuple(c["assignment"].values()): c["violation"]["constraint"]
        for c in payload["corners"]
    }
    assert corners == {
        ("0", "0"): "C-TRUE",
        ("0", "1"): "C-INT",
        ("1", "0"): "C-INT",
        ("1", "1"): "C-COLLAPSE",
    }


def test_nogo_degenerate_scenario_fails():
    report = dispatch(["nogo", "--amp2", "0,0", "--allow-degenerate"])
    assert report.exit_code == 1
    assert report.verdict == "no-go fails"


def test_nogo_rejects_degenerate_without_flag():
    report = dispatch(["nogo", "--amp2", "0,0"])
    assert report.exit_code == 2
    assert report.verdict.startswith("error:")


def test_nogo_direct_probability_inputs():
    report = dispatch(["nogo", "--p-or", "1", "--p1", "1/2", "--p2", "1/2"])
    assert report.exit_code == 0
    assert "I12=1/2" in report.body


def test_scan_values_3():
    report = dispatch(["scan", "--values", "3"])
    assert report.exit_code == 0
    assert report.verdict == "corners violated: 4/4; consistent: 5/9"
    assert "(X1=1/2, X2=1/2) -> consistent" in report.body
    payload = dispatch(["scan", "--values", "3", "--format", "json"]).payload
    assert ["1/2", "1/2"] in payload["consistent"]
    assert payload["corners"] == {
        "(0, 0)": "C-TRUE",
        "(0, 1)": "C-INT",
        "(1, 0)": "C-INT",
        "(1, 1)": "C-COLLAPSE",
    }


def test_scan_default_denominator_is_10():
    report = dispatch(["scan"])
    assert report.exit_code == 0
    assert "infinite(10)" in report.body
    assert "assignments checked: 121" in report.body


def test_scan_rejects_conflicting_grid_flags():
    report = dispatch(["scan", "--values", "3", "--denominator", "4"])
    assert report.exit_code == 2


def test_parse_command():
    report = dispatch(["parse", "(X1 | X2) & !(X1 & X2)"])
    assert report.exit_code == 0
    lines = report.body.splitlines()
    assert lines[0] == "And"
    assert "  Or" in lines
    assert report.payload["desugared"] == "(X1 | X2) & !(X1 & X2)"


def test_parse_reports_syntax_error():
    report = dispatch(["parse", "X1 &"])
    assert report.exit_code == 2
    assert "position" in report.verdict


def test_eval_lukasiewicz():
    report = dispatch([
        "eval", "--formula", "X1 ^ X2", "--mode", "lukasiewicz",
        "--assign", "X1=0.5,X2=0.5",
    ])
    assert report.exit_code == 0
    assert report.verdict == "value: 1"


def test_eval_super_mode():
    report = dispatch([
        "eval", "--formula", "X1", "--mode", "super",
        "--lattice", "builtin:boolean:2", "--assign", "X1=a",
    ])
    assert report.verdict == "value: undefined"
    report = dispatch([
        "eval", "--formula", "X1 ^ X2", "--mode", "super",
        "--lattice", "builtin:boolean:2", "--assign", "X1=a,X2=b",
    ])
    assert report.verdict == "value: 1"
    assert report.payload["element"] == "1"


def test_eval_lattice_mode_with_values():
    report = dispatch([
        "eval", "--formula", "X1 | X2", "--mode", "lattice",
        "--lattice", "builtin:boolean:2", "--assign", "X1=a,X2=b",
        "--values", "a=1/2,b=1/2",
    ])
    assert report.verdict == "value: 1"
    assert report.payload["element"] == "1"


def test_eval_lattice_mode_needs_values():
    report = dispatch([
        "eval", "--formula", "X1", "--mode", "lattice",
        "--lattice", "builtin:boolean:2", "--assign", "X1=a",
    ])
    assert report.exit_code == 2
    assert "--values" in report.verdict


def test_eval_mode_lattice_needs_lattice():
    report = dispatch([
        "eval", "--formula", "X1", "--mode", "super", "--assign", "X1=a",
    ])
    assert report.exit_code == 2


def test_interference_direct_and_amplitudes():
    report = dispatch(["interference", "--p-or", "1", "--p1", "1/4", "--p2", "1/4"])
    assert report.verdict == "I12 = 3/4"
    report = dispatch(["interference", "--amp1", "1/2,1/2", "--amp2", "1/2,1/2"])
    assert report.verdict == "I12 = 1/2"
    assert report.payload["p_or"] == "1"


def test_interference_rejects_oversized_amplitudes():
    report = dispatch(["interference", "--amp1", "1,0", "--amp2", "1,0"])
    assert report.exit_code == 2
    assert "exceeds 1" in report.verdict


def test_lattice_check_builtin_and_file(tmp_path):
    report = dispatch(["lattice-check", "builtin:lantern:2"])
    assert report.exit_code == 0
    assert report.verdict.startswith("ok:")

    path = tmp_path / "diamond.json"
    path.write_text(json.dumps(builtin("boolean", 2).to_dict()))
    report = dispatch(["lattice-check", str(path)])
    assert report.exit_code == 0

    bad = tmp_path / "poset.json"
    bad.write_text(json.dumps({
        "elements": ["0", "x", "y"],
        "order": [["0", "x"], ["0", "y"]],
        "involution": [["0", "x"], ["y", "y"]],
    }))
    report = dispatch(["lattice-check", str(bad)])
    assert report.exit_code == 2  # not even a lattice: construction fails


def test_lattice_check_missing_file():
    report = dispatch(["lattice-check", "no-such-file.json"])
    assert report.exit_code == 2


def test_super_command():
    report = dispatch(["super"])
    assert report.exit_code == 0
    assert report.verdict == "supervaluation consistent"
    assert "X1 -> undefined" in report.body
    assert "compound value: 1" in report.body


def test_super_rejects_extreme_binding():
    report = dispatch(["super", "--bind", "X1=0,X2=b"])
    assert report.exit_code == 2
    assert "extreme" in report.verdict


def test_usage_errors_are_exit_2():
    assert dispatch([]).exit_code == 2
    assert dispatch(["frobnicate"]).exit_code == 2
    assert dispatch(["nogo", "--amp1", "not-a-number,0"]).exit_code == 2
    assert dispatch(["nogo", "--bind", "X1=a"]).exit_code == 2
    assert dispatch(["nogo", "--bind", "X1=a,X1=b"]).exit_code == 2
    assert dispatch(["scan", "--values", "x"]).exit_code == 2


def test_reports_are_byte_identical_across_runs():
    for argv in (NOGO_ARGS, ["scan", "--values", "3"], ["super"]):
        first = dispatch(list(argv))
        second = dispatch(list(argv))
        assert first.render() == second.render()
        assert json.dumps(first.payload) == json.dumps(second.payload)


def test_builtin_reference_validation():
    assert dispatch(["lattice-check", "builtin:boolean"]).exit_code == 2
    assert dispatch(["lattice-check", "builtin:boolean:x"]).exit_code == 2
    assert dispatch(["lattice-check", "builtin:pentagon:2"]).exit_code == 2


def test_scan_degenerate_corners_survive():
    report = dispatch(["scan", "--values", "3", "--amp2", "0,0", "--allow-degenerate"])
    assert report.exit_code == 1
    assert "(X1=1, X2=0) -> consistent" in report.body
