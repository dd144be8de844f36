import json
from fractions import Fraction

import pytest

from arakount import parse_polynomial
from arakount.cli import main
from arakount.errors import InvalidParams
from arakount.heights import ProjectivePoint
from arakount.rational_points import enumerate_S
from arakount.reporting import SCHEMA, emit_report, to_json, to_plain


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--curve", "x*z-y^2", "--bound", "4")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 8 and next(iter(doc)) == "schema" and doc["schema"] == SCHEMA


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--curve", "x*z-y^2", "--bound", "4", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x,y,z" and len(lines) == 9


def test_bounds_with_grh(capsys):
    code, out, _ = run(capsys, "bounds", "--n", "2", "--delta", "3", "--B", "100", "--field", "Q", "--grh")
    doc = json.loads(out)
    assert code == 0
    for key in ("c1", "log_c3", "a_n", "log_bound"):
        assert isinstance(doc[key], float)
    assert doc["log_c3"] == pytest.approx(50215.396, abs=1e-3)


def test_bounds_without_grh_is_symbolic(capsys):
    code, out, _ = run(capsys, "bounds", "--n", "2", "--delta", "3", "--B", "100")
    doc = json.loads(out)
    assert code == 0 and doc["log_c3"] is None


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["enumerate", "--frobnicate"], 2),
        ([], 2),
        (["frobnicate"], 2),
        (["enumerate", "--curve", "x**2", "--bound", "3"], 2),
        (["bounds", "--n", "1", "--delta", "3", "--B", "100"], 2),
        (["count-fq", "--curve", "x*z-y^2", "--prime", "9"], 2),
        (["enumerate", "--curve", "x*z-y^2", "--bound", "4", "--budget-enum", "2"], 1),
        (["primes", "--x", "1e9"], 1),
        (["heights", "--curve", "x*z-y^2", "--point", "1,2,4"], 0),
        (["count-fq", "--curve", "x^2+y^2", "--prime", "5"], 0),
        (["primes", "--x", "100", "--field", "Qi"], 0),
        (["aux", "--curve", "x*z-y^2", "--bound", "4"], 0),
    ],
)
def test_exit_codes(capsys, argv, expected):
    code, out, err = run(capsys, *argv)
    assert code == expected
    if expected:
        assert err and not out
    else:
        json.loads(out)


def test_usage_text_on_unknown_flag(capsys):
    code, _, err = run(capsys, "enumerate", "--frobnicate")
    assert code == 2 and "usage" in err


def test_count_fq_output(capsys):
    _, out, _ = run(capsys, "count-fq", "--curve", "y^2*z-x^3-x^2*z", "--prime", "5")
    doc = json.loads(out)
    assert doc["count"] == 5 and doc["weighted"] == 6 and doc["singular"] == {"[0:0:1]": 2}


def test_verify_single_criterion(capsys):
    code, _, err = run(capsys, "verify", "--only", "2")
    assert code == 0 and "PASS" in err


def test_to_plain_conversions():
    assert to_plain(Fraction(3, 4)) == "3/4"
    assert to_plain(Fraction(6, 3)) == 2
    assert to_plain(ProjectivePoint((2, -4, 6))) == [1, -2, 3]
    assert to_plain(parse_polynomial("x*z - y^2")) == "x*z - y^2"
    assert to_plain({(1, 0, 2): 5}) == {"[1:0:2]": 5}


def test_float_formatting():
    text = to_json({"a": 1 / 3, "b": float("inf"), "c": float("nan"), "d": 2.0, "e": -float("inf")})
    doc = json.loads(text)
    assert doc["a"] == pytest.approx(1 / 3, rel=1e-11) and doc["b"] == "inf" and doc["c"] == "nan"
    assert doc["d"] == 2.0 and doc["e"] == "-inf"
    assert '"d": 2.0' in text


def test_emit_round_trip():
    ps = enumerate_S(parse_polynomial("x*z - y^2"), 10)
    doc = json.loads(emit_report(ps, "json"))
    assert doc["count"] == 16 and [tuple(p) for p in doc["points"]] == [p.coords for p in ps]
    assert emit_report(ps, "csv").decode() == ps.to_csv()
    text = emit_report({"x": {"y": 1}}, "text").decode()
    assert "x.y: 1" in text


def test_emit_rejects_untabular_csv():
    with pytest.raises(InvalidParams):
        emit_report({"a": 1}, "csv")
    with pytest.raises(InvalidParams):
        emit_report({"a": 1}, "xml")
