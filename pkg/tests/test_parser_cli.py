import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import family
from qsl4.cli import main
from qsl4.errors import DegreeError, InputError
from qsl4.lines import extract_lines
from qsl4.parser import format_system, parse_system, system_to_json
from qsl4.scalars import from_json
from qsl4.system import COEFF_NAMES, QuadSystem

CONFIG_17 = "x' = x ; y' = y^2 - x*y"


# ---------------------------------------------------------------------- parser

def test_text_and_json_agree():
    a = parse_system(CONFIG_17)
    b = parse_system({"p": {"x": "1"}, "q": {"y2": "1", "xy": "-1"}})
    assert a == b == family("x", "y*(y-x)")


def test_tensorial_convention():
    # a11 is half the xy coefficient of p
    S = parse_system("x' = 4*x*y ; y' = 0")
    assert S.a11 == 2


@pytest.mark.parametrize("text,err", [
    ("x' = x^3 ; y' = y", DegreeError),
    ("x' = x + z ; y' = y", InputError),
    ("x' = x +* y ; y' = y", InputError),
    ("x' = x ; y' = ", InputError),
    ("x' = x / y ; y' = y", InputError),
    ("x' = x", InputError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_system(text)


def test_parse_error_reports_position():
    with pytest.raises(InputError) as e:
        parse_system("x' = x + 2$ ; y' = y")
    assert e.value.position is not None


def test_json_errors():
    with pytest.raises(InputError):
        parse_system({"p": {"x3": 1}, "q": {}})
    with pytest.raises(InputError):
        parse_system({"p": {"x": 1.5}, "q": {}})
    with pytest.raises(InputError):
        parse_system('{"a00": "1/0"}')


rats = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@settings(max_examples=60, deadline=None)
@given(st.lists(rats, min_size=12, max_size=12).filter(lambda c: any(c[3:6] + c[9:12])))
def test_print_parse_round_trip(coeffs):
    S = QuadSystem.from_tuple(coeffs)
    assert parse_system(format_system(S)) == S
    assert parse_system(system_to_json(S)) == S
    assert parse_system(json.dumps(dict(zip(COEFF_NAMES, (f"{c.numerator}/{c.denominator}" for c in coeffs))))) == S


# ---------------------------------------------------------------------- command line

def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json(capsys):
    code, out, _ = run(["--format", "json", "classify", "x' = 1 ; y' = y - x^2"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1
    assert rep["verdict"]["config"] == "4.46"
    inf = [l for l in rep["verdict"]["lines"]["lines"] if l["infinite"]]
    assert inf[0]["multiplicity"] == 4


def test_classify_text(capsys):
    code, out, _ = run(["classify", CONFIG_17], capsys)
    assert code == 0 and "4.17" in out


def test_comitants_report_matches_closed_form(capsys):
    v = dict(k=2, c=3, f=-1, g=5, h=Fraction(1, 2), l=7)
    S = family("k+c*x+g*x^2+(h-1)*x*y", "l+f*y+(g-1)*x*y+h*y^2", **v)
    code, out, _ = run(["--format", "json", "comitants", format_system(S)], capsys)
    h7 = json.loads(out)["comitants"]["H7"]["value"]
    assert Fraction(h7) == 4 * (v["f"] - v["c"]) * (v["g"] - 1) * (v["h"] - 1)


def test_lines_report_round_trips_exact_scalars(capsys):
    S = family("2*l*x+2*y", "l^2+1-x^2-y^2", l=3)
    code, out, _ = run(["--format", "json", "lines", format_system(S)], capsys)
    rep = json.loads(out)["lines"]
    got = [tuple(from_json(c) for c in l["coefficients"]) for l in rep["lines"]]
    want = [l.line.coeffs for l in extract_lines(S).lines]
    assert got == want
    assert not rep["inexact"]


def test_singular_report(capsys):
    code, out, _ = run(["--format", "json", "singular", CONFIG_17], capsys)
    rep = json.loads(out)["singular"]
    assert code == 0 and len(rep["infinite"]) == 3


def test_representative_and_perturb(capsys):
    code, out, _ = run(["representative", "1", "-p", "b=2", "-p", "l=3"], capsys)
    assert code == 0 and "4.1" in out
    code, out, _ = run(["--format", "json", "representative", "1", "-p", "b=2", "-p", "l=3"], capsys)
    assert parse_system(json.loads(out)["system"]["text"]) == parse_system("x'=3x+3x^2+xy; y'=-2y+2xy+2y^2")
    code, out, _ = run(["--format", "json", "perturb", "17", "--eps", "1/8"], capsys)
    rep = json.loads(out)
    assert code == 0 and all(l["invariant"] for l in rep["lines"]) and len(rep["lines"]) == 3


@pytest.mark.parametrize("argv,code", [
    (["classify", "x' = x^3 ; y' = y"], 2),
    (["classify", "x' = x*(x+y) ; y' = x*y"], 2),
    (["classify", "x' = x + x^2 ; y' = 1 + y + x*y"], 3),
    (["classify", "x' = x ; y' = y"], 2),
    (["classify", "x' = 1 + x + x^2 ; y' = 2 + y + x*y"], 3),
    (["representative", "1", "-p", "b=1", "-p", "l=0"], 2),
    (["representative", "99"], 2),
    (["perturb", "3", "-p", "b=2", "-p", "l=3"], 2),
    (["perturb", "17", "--eps", "abc"], 2),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv, capsys)[0] == code


def test_batch_preserves_order(tmp_path, capsys):
    f = tmp_path / "systems.txt"
    f.write_text("# comment\nx' = 1 ; y' = y - x^2\nx' = x ; y' = y*(y-x)\nnot a system\n")
    code, out, _ = run(["--format", "json", "classify", "--batch", str(f), "--jobs", "2"], capsys)
    res = json.loads(out)["results"]
    assert [r.get("verdict", {}).get("config") for r in res[:2]] == ["4.46", "4.17"]
    assert "error" in res[2] and code == 2


def test_emit_config_data(capsys):
    code, out, _ = run(["--format", "json", "classify", "--emit-config-data", CONFIG_17], capsys)
    data = json.loads(out)["config_data"]
    assert {"finite", "infinite", "lines"} <= set(data)


def test_stdin_and_file(tmp_path, capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(CONFIG_17))
    assert run(["classify", "-"], capsys)[0] == 0
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"p": {"x": "1"}, "q": {"y2": "1", "xy": "-1"}}))
    code, out, _ = run(["classify", f"@{p}"], capsys)
    assert code == 0 and "4.17" in out


def test_console_script_selftest():
    r = subprocess.run([sys.executable, "-m", "qsl4.cli", "--format", "json", "selftest"],
                       capture_output=True, text=True, timeout=300)
    rep = json.loads(r.stdout)
    assert r.returncode == 0 and not rep["failures"]
