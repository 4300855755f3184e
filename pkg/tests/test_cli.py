"""Front-end behavior: exit codes, JSON shapes, round trips."""
import json
from fractions import Fraction

import pytest

from bcwheel.cli import (
    _scalar_from_json,
    _scalar_to_json,
    main,
    poly_from_report,
    poly_report,
)
from bcwheel.cyclotomic import Cyclotomic, scalar_field
from bcwheel.koornwinder import koornwinder_polynomial


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_dims_json_shape(capsys):
    code, out = run(capsys, "dims", "--k", "1", "--r", "2", "--n", "2", "--M", "3")
    assert code == 0
    assert json.loads(out) == {"admissible": 3, "wheel_kernel": 3,
                               "dual_quotient": 3, "equal": True}


def test_dims_is_deterministic_for_a_seed(capsys):
    first = run(capsys, "dims", "--k", "1", "--r", "2", "--n", "2", "--M", "2",
                "--seed", "5")
    second = run(capsys, "dims", "--k", "1", "--r", "2", "--n", "2", "--M", "2",
                 "--seed", "5")
    assert first == second


def test_invalid_parameters_exit_two(capsys):
    assert run(capsys, "dims", "--k", "5", "--r", "2", "--n", "2", "--M", "1")[0] == 2
    assert run(capsys, "dims", "--k", "1", "--r", "1", "--n", "2", "--M", "1")[0] == 2
    assert run(capsys, "dims", "--k", "1", "--r", "2", "--n", "2")[0] == 2
    assert run(capsys, "poly", "--n", "2", "--lambda", "1,2")[0] == 2
    assert run(capsys, "poly", "--n", "2")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_basis_cap_exits_two(capsys):
    code, _ = run(capsys, "dims", "--k", "1", "--r", "2", "--n", "2", "--M", "3",
                  "--max-basis", "5")
    assert code == 2


def test_poly_json_is_monic_and_round_trips(capsys):
    code, out = run(capsys, "poly", "--n", "2", "--lambda", "1,0")
    assert code == 0
    data = json.loads(out)
    top = next(c for c in data["coefficients"] if c["partition"] == [1, 0])
    assert top["numerator"] == [{"exponents": [0] * 6, "coeff": ["1/1"]}]
    assert top["denominator"] == [{"exponents": [0] * 6, "coeff": ["1/1"]}]
    rebuilt = poly_from_report(data)
    assert poly_report(rebuilt) == data
    original = koornwinder_polynomial((1, 0), 2)
    assert rebuilt.coefficients == original.coefficients


def test_report_round_trip_larger_instance():
    poly = koornwinder_polynomial((2, 1), 2)
    data = poly_report(poly)
    rebuilt = poly_from_report(data)
    assert rebuilt.coefficients == poly.coefficients
    assert poly_report(rebuilt) == data


def test_scalar_serialization():
    assert _scalar_to_json(Fraction(-3, 7)) == ["-3/7"]
    fld = scalar_field(4)
    value = fld.root() + fld.coerce(Fraction(1, 2))
    rendered = _scalar_to_json(value)
    assert _scalar_from_json(fld, rendered) == value
    assert _scalar_from_json(scalar_field(1), ["2/3"]) == Fraction(2, 3)


def test_dual_grid_and_single_pair(capsys):
    code, out = run(capsys, "dual", "--n", "2", "--max-weight", "2")
    assert code == 0 and "16/16" in out
    code, out = run(capsys, "dual", "--n", "2", "--lambda", "2,0", "--mu", "1,1")
    assert code == 0 and "1/1" in out


def test_eval_grid(capsys):
    code, out = run(capsys, "eval", "--n", "1", "--max-weight", "3")
    assert code == 0 and "4/4" in out


def test_zcount_sweep(capsys):
    code, out = run(capsys, "zcount", "--k", "1", "--r", "3", "--n", "2", "--M", "4")
    assert code == 0
    assert "15/15" in out


def test_wheel_vacuous_and_passing(capsys):
    code, out = run(capsys, "wheel", "--k", "1", "--r", "2", "--n", "3", "--M", "3")
    assert code == 0 and "vacuous" in out
    code, out = run(capsys, "wheel", "--k", "1", "--r", "2", "--n", "2", "--M", "2")
    assert code == 0 and "pass" in out


def test_collision_check(capsys):
    code, out = run(capsys, "wheel", "--k", "3", "--r", "3", "--n", "4",
                    "--collision-check", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["spectra_collide"] and data["generically_distinct"]
    code, _ = run(capsys, "wheel", "--k", "2", "--r", "3", "--n", "4",
                  "--collision-check")
    assert code == 2


def test_wheel_json_report(capsys):
    code, out = run(capsys, "wheel", "--k", "1", "--r", "2", "--n", "2", "--M", "2",
                    "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data[0]["partition"] == [2, 0]
    assert data[0]["all_pass"]
