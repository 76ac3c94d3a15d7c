"""Command-line surface: grammars, report contracts, exit codes."""

import json
import os

import pytest

from slopelab.cli import main
from slopelab.polygon import np_from_breakpoints
from slopelab.serialize import np_from_json


def run(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def test_attain_reports_witness(capsys):
    rc, out = run(capsys, "np", "attain", "--poly", "1/2x6", "--lambda", "1/3")
    assert rc == 0
    assert out == 'attainable, witness "(1/3 x3)(2/3 x3)"\n'


def test_attain_negative_is_still_a_clean_answer(capsys):
    rc, out = run(capsys, "np", "attain", "--poly", "1/2x6", "--lambda", "1/5")
    assert rc == 0
    assert out == "not attainable\n"


def test_compare_text(capsys):
    rc, out = run(capsys, "np", "compare", "1/2x6", "1/2x6")
    assert (rc, out) == (0, "equal\n")
    rc, out = run(capsys, "np", "compare", "1/3x3 2/3x3", "1/2x6")
    assert (rc, out) == (0, "below\n")
    rc, out = run(capsys, "np", "compare", "1/2x6", "1/3x3 2/3x3")
    assert (rc, out) == (0, "above\n")


def test_adjoin_json_round_trips(capsys):
    rc, out = run(capsys, "np", "adjoin", "--poly", "1/2x6",
                  "--point", "3,1", "--format", "json")
    assert rc == 0
    rep = json.loads(out)
    assert rep["pretty"] == "(1/3 x3)(2/3 x3)"
    assert np_from_json(rep["result"]) == np_from_breakpoints([(0, 0), (3, 1),
                                                              (6, 3)])


def test_symmetric_needs_a_symmetric_polygon(capsys):
    rc, _ = run(capsys, "np", "symmetric", "--poly", "1/3x3",
                "--lambda", "1/3")
    assert rc == 2


def test_adjoin_unreachable_point(capsys):
    rc, _ = run(capsys, "np", "adjoin", "--poly", "1/2x6", "--point", "9,1")
    assert rc == 2


def test_deform_text_lines(capsys):
    rc, out = run(capsys, "deform", "--base", "ss6", "--lambda", "1/3")
    assert rc == 0
    assert out.splitlines() == [
        "strata {(2,1),(3,1),(3,2),(4,2)} and 4-term chi",
        "np(*) = (1/3 x3)(2/3 x3)",
        "equation terms at F-offsets [2, 3, 4, 6]",
    ]


def test_deform_json_contract(capsys, tmp_path):
    out = tmp_path / "deform.json"
    rc = main(["deform", "--base", "ss6", "--lambda", "1/3",
               "--format", "json", "-o", str(out)])
    assert rc == 0
    rep = json.loads(out.read_text())
    assert rep["chi_terms"] == 4
    assert np_from_json(rep["deformed_polygon"]) == np_from_breakpoints(
        [(0, 0), (3, 1), (6, 3)])
    assert rep["base"] == {"d": 3, "c": 3, "polygon": {
        "segments": [{"slope": "1/2", "width": 6}]}}
    # repeated runs are byte-identical
    again = tmp_path / "again.json"
    main(["deform", "--base", "ss6", "--lambda", "1/3",
          "--format", "json", "-o", str(again)])
    assert out.read_bytes() == again.read_bytes()


def test_certify_small_guard_is_honestly_inconclusive(capsys):
    rc, out = run(capsys, "certify", "--base", "ss6", "--lambda", "1/3",
                  "--guard", "20000")
    assert rc == 3
    assert "verdict inconclusive" in out
    assert "pieces {0,1,3} certified" in out
    assert "{closure} failed" in out


def test_certify_rejects_top_numerator(capsys):
    assert main(["certify", "--base", "ss6", "--lambda", "2/3"]) == 2


def test_as_exhaustive_agreement(capsys):
    rc, out = run(capsys, "as", "test", "--q", "4", "--field", "F4", "--all")
    assert (rc, out) == (0, "4/4 agreement criterion vs oracle\n")


def test_as_single_element_with_witness(capsys):
    rc, out = run(capsys, "as", "test", "--q", "4", "--field", "F4",
                  "--a", "1", "--format", "json")
    assert rc == 0
    rep = json.loads(out)
    case = rep["cases"][0]
    assert case["criterion"] and case["oracle"]
    assert case["witness"] == {"subgroup": [0, 1], "preimage": 2}


def test_as_needs_a_target(capsys):
    assert main(["as", "test", "--q", "4", "--field", "F4"]) == 4


def test_as_rejects_non_subfield(capsys):
    assert main(["as", "test", "--q", "4", "--field", "F9", "--all"]) == 2


def test_units_verify_text(capsys):
    rc, out = run(capsys, "units", "verify", "--p", "3", "--s", "2",
                  "--n", "3")
    assert rc == 0
    assert out.splitlines() == [
        "commutator classes ok (3 depths)",
        "p-th power congruence ok",
        "generation true (order 648)",
    ]


def test_units_verify_residue_only_fails(capsys):
    rc, out = run(capsys, "units", "verify", "--p", "3", "--s", "2",
                  "--n", "2", "--covered", "0")
    assert rc == 3
    assert "generation false (order 8)" in out


def test_units_verify_p2_reports_depth_one_finding(capsys):
    rc, out = run(capsys, "units", "verify", "--p", "2", "--s", "3",
                  "--n", "2", "--format", "json")
    assert rc == 0
    rep = json.loads(out)
    finding = rep["pth_power"]["depth_one_finding"]
    assert finding["observed_law"] == "alpha + alpha^2"
    assert finding["holds"]
    assert finding["failing_alphas"] == list(range(1, 8))


def test_plot_svg_shape(tmp_path):
    out = tmp_path / "fig.svg"
    rc = main(["plot", "--d", "3", "--c", "3", "--lambda", "1/3",
               "-o", str(out)])
    assert rc == 0
    svg = out.read_text()
    assert svg.count("<circle") == 9
    assert svg.count("<polyline") >= 2
    assert "stroke-dasharray" in svg


def test_outdir_env_var_resolves_relative_paths(tmp_path, monkeypatch):
    monkeypatch.setenv("SLOPELAB_OUTDIR", str(tmp_path))
    rc = main(["np", "attain", "--poly", "1/2x6", "--lambda", "1/3",
               "--format", "json", "-o", "wit.json"])
    assert rc == 0
    rep = json.loads((tmp_path / "wit.json").read_text())
    assert rep["attainable"]


def test_parse_errors_exit_4(capsys):
    assert main(["np", "attain", "--poly", "bogusx3", "--lambda", "1/3"]) == 4
    assert "segment 1" in capsys.readouterr().err
    assert main(["np", "attain", "--poly", "1/2x6", "--lambda", "x"]) == 4
    assert main(["certify", "--base", "h7", "--lambda", "1/3"]) == 4
    assert main(["certify", "--lambda", "1/3"]) == 4            # missing flag
    assert main(["nope"]) == 4
    assert main(["np", "compare", "1/2x6", "1/2x6",
                 "--format", "yaml"]) == 4
    assert main(["units", "verify", "--p", "3", "--s", "2", "--n", "2",
                 "--covered", "a,b"]) == 4


def test_format_svg_outside_plot_is_rejected(capsys):
    assert main(["np", "compare", "1/2x6", "1/2x6", "--format", "svg"]) == 4
