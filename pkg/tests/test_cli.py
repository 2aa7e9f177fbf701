import json
from fractions import Fraction

import pytest

from whitkl import LaurentPoly, Weight
from whitkl.cli import (
    InputError,
    main,
    parse_lambda,
    parse_output,
    parse_theta,
    parse_type,
)

from conftest import lambda_golden_a3

GOLDEN_A3_ARGS = [
    "--type",
    "A3",
    "--theta",
    "α,β",
    "--lambda",
    "-5-4*t1,-5+4*t1,-5",
]


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_lambda_golden_a3():
    lam = parse_lambda("-5-4*t1,-5+4*t1,-5", 3)
    assert lam == lambda_golden_a3()


def test_parse_lambda_minus_rho():
    assert parse_lambda("-1,-1,-1", 3) == Weight.minus_rho(3)


def test_parse_lambda_zero():
    assert parse_lambda("0,0", 2) == Weight.zero(2)


def test_parse_lambda_rationals_and_sums():
    lam = parse_lambda("1/2-3/2, -1+2*t2-1*t1", 2)
    assert lam.coords[0] == (Fraction(-1), (Fraction(0), Fraction(0)))
    assert lam.coords[1] == (Fraction(-1), (Fraction(-1), Fraction(2)))


def test_parse_lambda_errors_have_positions():
    with pytest.raises(InputError, match="position"):
        parse_lambda("-5-4*t1,-5+4*t1,junk", 3)
    with pytest.raises(InputError, match="t9"):
        parse_lambda("-5*t9,-5,-5", 3)
    with pytest.raises(InputError, match="coordinates"):
        parse_lambda("-1,-1", 3)
    with pytest.raises(InputError):
        parse_lambda("-1,-1 7,-1", 3)


def test_parse_theta_variants():
    assert parse_theta("α,β", 3) == (0, 1)
    assert parse_theta("alpha,gamma", 3) == (0, 2)
    assert parse_theta("1,3", 3) == (0, 2)
    assert parse_theta("", 3) == ()
    with pytest.raises(InputError):
        parse_theta("delta", 3)
    with pytest.raises(InputError):
        parse_theta("ω", 3)


def test_parse_type():
    assert parse_type("A3") == ("A", 3)
    assert parse_type("g2") == ("G", 2)
    with pytest.raises(InputError):
        parse_type("X9")


def test_klpolys_golden_a3(capsys):
    code, out, err = run_cli(capsys, *GOLDEN_A3_ARGS, "--format", "json", "klpolys")
    assert code == 0, err
    data = json.loads(out)
    assert data["context"]["type"] == "A3"
    assert data["context"]["theta"] == ["α", "β"]
    assert data["context"]["flags"] == {
        "antidominant": True,
        "regular": True,
        "integral": False,
    }
    polys = {(e["c"], e["d"]): e["poly"] for e in data["kl_polynomials"]}
    assert polys[(1, 0)] == "q"
    assert polys[(3, 1)] == "q"
    assert (3, 0) not in polys
    models = data["models"]
    assert models[0]["theta_u_lambda"] == ["α+β"]
    assert models[1]["theta_u_lambda"] == ["γ", "α+β"]


def test_characters_golden_a3(capsys):
    code, out, err = run_cli(capsys, *GOLDEN_A3_ARGS, "characters")
    assert code == 0, err
    lines = [line for line in out.splitlines() if line.startswith("ch L")]
    assert lines == [
        "ch L(s_α s_β s_α) = ch M(s_α s_β s_α)",
        "ch L(s_α s_β s_α s_γ) = -ch M(s_α s_β s_α) + ch M(s_α s_β s_α s_γ)",
        "ch L(s_α s_β s_α s_γ s_β) = ch M(s_α s_β s_α s_γ s_β)",
        "ch L(s_α s_β s_α s_γ s_β s_α) = -ch M(s_α s_β s_α s_γ) + ch M(s_α s_β s_α s_γ s_β s_α)",
    ]


def test_characters_verma_a2(capsys):
    code, out, err = run_cli(
        capsys,
        "--type",
        "A2",
        "--theta",
        "",
        "--lambda",
        "-1,-1",
        "--format",
        "json",
        "characters",
        "--verma",
    )
    assert code == 0, err
    data = json.loads(out)
    assert len(data["characters"]) == 6
    w0_row = next(r for r in data["characters"] if r["irreducible"] == "s_α s_β s_α")
    coeffs = sorted(e["coeff"] for e in w0_row["entries"])
    assert coeffs == [-1, -1, -1, 1, 1, 1]


def test_characters_invert(capsys):
    code, out, err = run_cli(
        capsys, *GOLDEN_A3_ARGS, "--format", "json", "characters", "--invert"
    )
    assert code == 0, err
    data = json.loads(out)
    assert "multiplicities" in data
    rows = {
        r["standard_id"]: {e["irreducible_id"]: e["coeff"] for e in r["entries"]}
        for r in data["multiplicities"]
    }
    assert rows[3] == {0: 1, 1: 1, 3: 1}


def test_info_golden_a3(capsys):
    code, out, err = run_cli(capsys, *GOLDEN_A3_ARGS, "info")
    assert code == 0, err
    assert "Sigma_lambda^+ = {γ, α+β, α+β+γ}" in out
    assert "A_lambda = {e, s_α, s_β, s_γ s_β}" in out
    assert "A_theta_lambda = {e, s_γ s_β}" in out


def test_output_byte_stable(capsys):
    runs = []
    for _ in range(2):
        code, out, err = run_cli(
            capsys, *GOLDEN_A3_ARGS, "--format", "json", "klpolys"
        )
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]


def test_json_round_trip(capsys):
    code, out, err = run_cli(capsys, *GOLDEN_A3_ARGS, "--format", "json", "klpolys")
    assert code == 0
    parsed = parse_output(out)
    polys = {(e["c"], e["d"]): e["poly"] for e in parsed["kl_polynomials"]}
    assert polys[(1, 0)] == LaurentPoly.q()
    assert polys[(0, 0)] == LaurentPoly.one()
    # re-rendering the loaded JSON reproduces the bytes
    assert json.dumps(json.loads(out), indent=2, ensure_ascii=False) + "\n" == out


def test_latex_klpolys(capsys):
    code, out, err = run_cli(capsys, *GOLDEN_A3_ARGS, "--format", "latex", "klpolys")
    assert code == 0
    assert "\\begin{tabular}" in out
    assert "$q$" in out
    assert "$s_\\alpha s_\\beta s_\\alpha$" in out


def test_format_flag_after_subcommand(capsys):
    code, out, err = run_cli(capsys, *GOLDEN_A3_ARGS, "klpolys", "--format", "json")
    assert code == 0, err
    data = json.loads(out)
    assert data["context"]["type"] == "A3"


def test_latex_characters(capsys):
    code, out, err = run_cli(capsys, *GOLDEN_A3_ARGS, "--format", "latex", "characters")
    assert code == 0
    assert "\\begin{align*}" in out


def test_input_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "--type", "A9", "info")
    assert code == 1
    assert "error" in err
    code, out, err = run_cli(capsys, "--type", "A3", "info")  # missing lambda
    assert code == 1
    code, out, err = run_cli(
        capsys, "--type", "A3", "--lambda", "-1,-1,-1", "--max-rank", "2", "info"
    )
    assert code == 1
    assert "max-rank" in err


def test_precondition_violation_names_condition(capsys):
    # the zero weight is singular: regular-mode commands reject it and the
    # error names the violated condition with the offending pairing
    code, out, err = run_cli(
        capsys, "--type", "A2", "--theta", "", "--lambda", "0,0", "characters",
        "--verma",
    )
    assert code == 1
    assert "not antidominant" in err
    assert "coroot pairing 0" in err
    code, out, err = run_cli(
        capsys, "--type", "A2", "--theta", "", "--lambda", "1,-1", "characters"
    )
    assert code == 1
    assert "not antidominant" in err
    assert "coroot pairing 1" in err


def test_verify_exit_codes(capsys, monkeypatch):
    code, out, err = run_cli(capsys, *GOLDEN_A3_ARGS, "verify")
    assert code == 0
    assert "pass" in out and "FAIL" not in out
    # a failing report must exit 2
    import whitkl.cli as cli_mod
    from whitkl.oracle import OracleReport

    def fake_verify(job):
        report = OracleReport()
        report.add("forced", "unit", False, "synthetic counterexample")
        return report

    monkeypatch.setattr(cli_mod, "run_verify", fake_verify)
    code, out, err = run_cli(capsys, *GOLDEN_A3_ARGS, "verify")
    assert code == 2
    assert "FAIL" in out


def test_verify_json_format(capsys):
    code, out, err = run_cli(
        capsys,
        "--type",
        "A2",
        "--theta",
        "1",
        "--lambda",
        "-1,-1",
        "--format",
        "json",
        "verify",
    )
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True


def test_singular_characters_via_cli(capsys):
    code, out, err = run_cli(
        capsys,
        "--type",
        "A2",
        "--theta",
        "",
        "--lambda",
        "0,-1",
        "--format",
        "json",
        "characters",
    )
    assert code == 0, err
    data = json.loads(out)
    assert len(data["characters"]) == 3
