"""Report payloads stay inside their published schemas."""

import contextlib
import io
import json
import pathlib

import pytest
from jsonschema import Draft202012Validator

from slopelab.cli import main
from slopelab.polygon import np_make
from fractions import Fraction as F

SCHEMA_DIR = pathlib.Path(__file__).resolve().parent.parent / "schemas"


def load(name):
    schema = json.loads((SCHEMA_DIR / name).read_text())
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def cli_json(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = main([*argv, "--format", "json"])
    return rc, json.loads(buf.getvalue())


def test_every_schema_is_wellformed_and_versioned():
    files = sorted(p.name for p in SCHEMA_DIR.glob("*.schema.json"))
    assert files == ["as-report.v1.schema.json", "certificate.v1.schema.json",
                     "deform-report.v1.schema.json", "equation.v1.schema.json",
                     "polygon.v1.schema.json", "units-report.v1.schema.json"]
    for name in files:
        validator = load(name)
        assert validator.schema["$id"].endswith(":v1")


def test_polygon_payloads_validate():
    v = load("polygon.v1.schema.json")
    v.validate(np_make([(F(1, 3), 3), (F(2, 3), 3)]).to_json())
    v.validate(np_make([(F(1, 2), 6)]).to_json())
    with pytest.raises(Exception):
        v.validate({"segments": [{"slope": "1/2"}]})


def test_deform_report_validates():
    rc, rep = cli_json("deform", "--base", "ss6", "--lambda", "1/3")
    assert rc == 0
    load("deform-report.v1.schema.json").validate(rep)
    load("equation.v1.schema.json").validate(rep["equation"])
    load("polygon.v1.schema.json").validate(rep["deformed_polygon"])


def test_certificate_validates_even_when_inconclusive():
    rc, rep = cli_json("certify", "--base", "ss6", "--lambda", "1/3",
                       "--guard", "20000")
    assert rc == 3
    load("certificate.v1.schema.json").validate(rep)


def test_units_report_validates_including_p2_finding():
    v = load("units-report.v1.schema.json")
    rc, rep = cli_json("units", "verify", "--p", "3", "--s", "2", "--n", "2")
    assert rc == 0
    v.validate(rep)
    rc, rep = cli_json("units", "verify", "--p", "2", "--s", "3", "--n", "2")
    assert rc == 0
    assert "depth_one_finding" in rep["pth_power"]
    v.validate(rep)


def test_as_report_validates():
    rc, rep = cli_json("as", "test", "--q", "4", "--field", "F16", "--all")
    assert rc == 0
    load("as-report.v1.schema.json").validate(rep)
