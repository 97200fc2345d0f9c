"""Smoke tests for the Python bindings and the installed CLI binary."""

import math
import os
import subprocess
from fractions import Fraction

import pytest

import hyperint

HORN_HALF = {
    "kind": "classical",
    "n": 3,
    "m": 2,
    "C": [[1, 1], [-1, 1], [1, -1]],
    "theta": ["1/2", "1/2", "1/2"],
    "D": 2,
    "h": 1,
}

HORN_TWO_THIRDS = {
    "kind": "classical",
    "n": 3,
    "m": 2,
    "C": [[1, 1], [-1, 1], [1, -1]],
    "theta": ["2/3", "2/3", "2/3"],
    "D": 3,
    "h": 1,
}

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def test_certify_positive():
    result = hyperint.certify(HORN_HALF, window=6)
    assert result.exit_code == 0
    assert result["schema"] == "hyperint/1"
    assert result["verdict"] == "CERTIFIED"
    assert result["period"] == 1
    assert all(e["integral"] for e in result["empirical"])
    assert result.summary.startswith("CERTIFIED")


def test_certify_negative_with_offender():
    result = hyperint.certify(HORN_TWO_THIRDS, window=8, primes=[7])
    assert result.exit_code == 1
    assert result["verdict"] == "NOT-CERTIFIED"
    offenders = result["empirical"][0]["offenders"]
    assert offenders and all(int(o["ord"]) < 0 for o in offenders)


def test_orbit_period_two():
    instance = {
        "kind": "aset",
        "n": 2,
        "N": 2,
        "vectors": [[1, 0], [0, 1]],
        "v": ["-1/3", "-2/3"],
        "D": 3,
        "h": 2,
    }
    result = hyperint.orbit(instance)
    assert result["period"] == 2
    assert result["states"][1]["v"] == ["-2/3", "-1/3"]


def test_expand_unit_coefficient_at_origin():
    result = hyperint.expand(HORN_HALF, prime=7, window=4)
    assert result.exit_code == 0
    origin = [t for t in result["terms"] if all(x == 0 for x in t["l"])]
    assert origin and origin[0]["coefficient"] == "1/1"
    assert Fraction(origin[0]["coefficient"]) == 1


def test_classical_both_verdicts():
    good = hyperint.classical(HORN_HALF, rho_mode="exact")
    assert good.exit_code == 0
    assert good["verdict"] == "NONNEGATIVE"
    bad = hyperint.classical(HORN_TWO_THIRDS)
    assert bad.exit_code == 1
    assert bad["states"][0]["min_value"] == -1


def test_padic_selftest_passes():
    result = hyperint.padic_selftest(5, precision=3)
    assert result.exit_code == 0
    assert result["verdict"] == "PASS"
    assert all(c["pass"] for c in result["checks"])


def test_scalar_helpers_are_exact():
    assert hyperint.bracket(Fraction(-1, 2), 3) == Fraction(8, 15)
    assert hyperint.pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)
    assert hyperint.bracket_ord(Fraction(-1, 2), 3, 5) == -1
    assert hyperint.bracket_ord(3, -5, 7) == math.inf


def test_invalid_instance_raises_value_error():
    with pytest.raises(ValueError):
        hyperint.certify({"kind": "nonsense"})
    with pytest.raises(ValueError):
        hyperint.bracket(Fraction(-1), 2)  # zero factor in the denominator


def test_cli_binary_roundtrip():
    cli = os.environ.get("HYPERINT_CLI")
    if not cli:
        pytest.skip("HYPERINT_CLI not set")
    fixture = os.path.join(FIXTURES, "horn-half.json")
    done = subprocess.run(
        [cli, "certify", fixture, "--window", "6", "--quiet"],
        capture_output=True,
        text=True,
    )
    assert done.returncode == 0
    assert "CERTIFIED" in done.stderr
