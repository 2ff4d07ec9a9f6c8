import json
import math

import pytest

import etclosure


def test_closure_table_rows():
    rows = etclosure.closure_table(2, 1, 1)
    assert len(rows) == 3
    assert rows[0]["s"] is None and rows[0]["prefactor"] == "0"
    assert {(r["s"], r["q"]) for r in rows[1:]} == {(0, 0), (1, 0)}


def test_closure_coeff_terms():
    terms = etclosure.closure_coeff(2, 1, 1, 0, 1)
    assert len(terms) == 1
    assert terms[0]["gamma_pow"] == -6
    assert terms[0]["sym"] == [0, 1]


def test_csv_format():
    text = etclosure.closure_table(2, 3, 1, 1, format="csv")
    assert text.splitlines()[0] == "h,k,s,q,prefactor,gamma_pow,msq_pow,order"


def test_verify_and_mutation():
    report = etclosure.verify(2, 1, suite="characteristic")
    assert report["passed"]
    bad = etclosure.verify(2, 1, suite="characteristic", mutate=1)
    assert not bad["passed"]
    with pytest.raises(etclosure.VerificationFailed):
        etclosure.verify(2, 1, suite="characteristic", mutate=1, check=True)


def test_equilibrium_bessel():
    z = 1.0
    r = etclosure.equilibrium(0.3, z)
    # the potential's sign convention gives n = -4 pi m^3 e^-lambda K1(z)/z
    k1 = 0.6019072301972346
    assert r["n"] == pytest.approx(-4 * math.pi * math.exp(-0.3) * k1 / z, rel=1e-9)
    assert r["p"] > 0 and r["e"] > 0
    assert r["gibbs_residual"] < 1e-8
    for stats in ("fd", "be"):
        assert etclosure.equilibrium(0.3, z, stats=stats)["gibbs_residual"] < 1e-8


def test_moments_symmetry():
    r = etclosure.moments(2, 1, 0.1, [1.2, 0.3, 0.0, 0.1], dev_scale=3e-6)
    assert r["residuals"]["symmetry"]["mu"] < 1e-6


def test_errors():
    with pytest.raises(etclosure.DomainError):
        etclosure.closure_table(1, 1, 1)
    with pytest.raises(etclosure.CapExceeded):
        etclosure.closure_table(8, 3, 2, 2)
    with pytest.raises(etclosure.SingularRatioError):
        raise etclosure.SingularRatioError("x")
    with pytest.raises(etclosure.DomainError):
        etclosure.moments(2, 1, 0.0, [0.1, 1.0, 0.0, 0.0])


def test_cli_passthrough():
    code, out, _ = etclosure.cli("equilibrium", "--lambda", 0, "--gamma", 2, "--format", "json")
    assert code == 0
    assert json.loads(out)["statistics"] == "mb"
