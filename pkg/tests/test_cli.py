import json
from fractions import Fraction as Q

import pytest

from padicforms.cli import dispatch
from padicforms.cyclotomic import CyclotomicElement
from padicforms.jsonio import (cyclotomic_from_json, cyclotomic_to_json, dumps,
                               rational_from_json, rational_to_json)
from padicforms.padic import Padic


def run_cli(capsys, argv):
    code = dispatch(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_zeta_command(capsys):
    code, out, err = run_cli(capsys, ["zeta", "--p", "5", "--s", "2",
                                      "--x", "1/5", "--prec", "4"])
    assert code == 0 and not err
    doc = json.loads(out)
    assert doc["zeta"]["p"] == 5
    # value = 1 mod 5
    assert (int(doc["zeta"]["unit"]) - 1) % 5 == 0 and doc["zeta"]["val"] == 0


def test_zeta_nonpositive(capsys):
    code, out, _ = run_cli(capsys, ["zeta", "--p", "5", "--s", "0", "--x", "1/5"])
    assert code == 0
    doc = json.loads(out)
    assert doc["exact"] == "3/2"


def test_lvalue_command(capsys):
    code, out, _ = run_cli(capsys, ["lvalue", "--i", "-1", "--p", "5", "--l", "1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["exact"] is True and doc["value"] == {"num": "1", "den": "3"}


def test_integrate_engines(capsys):
    code, out, _ = run_cli(capsys, ["integrate", "--expr", "(1/3+t)^-1",
                                    "--p", "3", "--prec", "6"])
    assert code == 0 and json.loads(out)["engine"] == "mahler"
    code, out, _ = run_cli(capsys, ["integrate", "--expr", "(1/3+t)^-1", "--p", "3",
                                    "--engine", "riemann", "--level", "4",
                                    "--prec", "6"])
    assert code == 0
    code, out, _ = run_cli(capsys, ["integrate", "--expr", "t^2", "--p", "5",
                                    "--engine", "wavelet", "--depth", "2",
                                    "--tail", "1"])
    assert code == 0
    # polynomial via mahler is exact
    code, out, _ = run_cli(capsys, ["integrate", "--expr", "t^2", "--p", "5"])
    assert json.loads(out)["value"] == {"num": "1", "den": "6"}


def test_integrate_domain_violation_exit3(capsys):
    code, out, err = run_cli(capsys, ["integrate", "--expr", "(1/2+t)^-1",
                                      "--p", "2", "--prec", "4"])
    assert code == 3 and not out
    assert json.loads(err)["error"] == "precondition"


def test_wavelet_requires_tail(capsys):
    code, _, err = run_cli(capsys, ["integrate", "--expr", "t", "--p", "2",
                                    "--engine", "wavelet"])
    assert code == 3 and "tail" in json.loads(err)["detail"]


def test_unknown_flag_exit2(capsys):
    with pytest.raises(SystemExit) as exc:
        dispatch(["zeta", "--p", "5", "--s", "2", "--x", "1/5", "--bogus"])
    assert exc.value.code == 2


def test_nesterenko_command(capsys):
    code, out, _ = run_cli(capsys, ["nesterenko", "--tau", "1",
                                    "--tau1", "1", "--tau2", "0"])
    assert code == 0 and json.loads(out)["bound"] == "1/2"
    code, _, err = run_cli(capsys, ["nesterenko", "--tau", "1",
                                    "--tau1", "1", "--tau2", "3"])
    assert code == 3


def test_forms_build_hurwitz(capsys):
    code, out, _ = run_cli(capsys, ["forms", "build", "--p", "2", "--s", "18",
                                    "--n", "1", "--l", "2", "--hurwitz", "9/4",
                                    "--digits", "6"])
    assert code == 0
    doc = json.loads(out)
    assert doc["x_reduced"] == "1/4" and len(doc["corrections"]) == 2
    assert doc["identity"]["agrees"] is True


def test_verify_single_checks(capsys):
    code, out, _ = run_cli(capsys, ["verify", "growth", "--p", "2", "--s", "16",
                                    "--l", "1", "--n", "1"])
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, out, _ = run_cli(capsys, ["verify", "chi-congruence", "--p", "2",
                                    "--s", "64", "--l", "2", "--n", "3", "--j", "5"])
    assert code == 0


def test_verify_failing_check_exit1(capsys):
    # below the threshold the rate inequality is not certified: exit 1
    code, out, _ = run_cli(capsys, ["verify", "lambert", "--p", "2", "--s", "50",
                                    "--epsilon", "1/2"])
    assert code == 1 and json.loads(out)["verdict"] == "fail"


def test_verify_all_requires_catalog(capsys):
    code, _, err = run_cli(capsys, ["verify", "all"])
    assert code == 3


def test_cli_determinism(capsys):
    argv = ["zeta", "--p", "5", "--s", "2", "--x", "1/5", "--prec", "6"]
    _, out1, _ = run_cli(capsys, argv)
    _, out2, _ = run_cli(capsys, argv)
    assert out1.encode() == out2.encode()
    argv2 = ["verify", "growth", "--p", "2", "--s", "16", "--l", "1", "--n", "1"]
    _, g1, _ = run_cli(capsys, argv2)
    _, g2, _ = run_cli(capsys, argv2)
    assert g1.encode() == g2.encode()


def test_verify_all_catalog_exit0(capsys):
    # the full fixture catalog through the CLI: one report line per check,
    # every verdict pass, exit code 0
    code, out, err = run_cli(capsys, ["verify", "all", "--catalog",
                                      "--digits", "20"])
    assert code == 0, err
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) >= 12
    assert all(doc["verdict"] == "pass" for doc in lines)
    names = {doc["check"] for doc in lines}
    assert {"valuation-formula", "fj-integral", "chi-congruence", "growth-bound",
            "integrality", "form-identity", "hurwitz-identity"} <= names


def test_json_codecs_roundtrip():
    assert rational_from_json(rational_to_json(Q(-7, 3))) == Q(-7, 3)
    assert rational_from_json("5/4") == Q(5, 4)
    x = CyclotomicElement(4, [Q(1, 2), Q(-3)])
    assert cyclotomic_from_json(cyclotomic_to_json(x)) == x
    p = Padic.from_fraction(Q(9, 5), 5, 4)
    assert p.to_json() == {"p": 5, "val": -1, "unit": str(p.unit), "prec": 4}
    assert dumps({"a": Q and 1}) == '{"a":1}'
