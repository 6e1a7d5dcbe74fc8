import os
import pathlib
import subprocess
import sys
from fractions import Fraction

import pytest

import pct

HERE = pathlib.Path(__file__).resolve().parent


@pytest.fixture(scope="module")
def doc():
    path = os.environ.get("PCT_EXAMPLE")
    return pathlib.Path(path).read_text() if path else pct.example_document()


def test_sat_level_of_first_component(doc):
    assert pct.sat_level(doc, "M1", "P1") == Fraction(81, 100)
    assert pct.sat_level(doc, "M2", "P2") == Fraction(16, 25)


def test_refine_level_reports_conditioning(doc):
    r = pct.refine_level(doc, "P", "Pprime")
    assert r["degenerate"] is False
    assert r["level"] == 0
    assert r["p_good1"] == Fraction(199, 10000)
    d = pct.refine_level(doc, "P", "P")
    assert d["degenerate"] is True
    assert d["level"] is None


def test_compose_round_trips_through_text(doc):
    text = pct.compose(doc, "P1", "P2", "P12")
    assert "probcontract P12" in text
    assert pct.format(text) == text


def test_errors_are_value_errors(doc):
    with pytest.raises(pct.ContractError) as err:
        pct.compose(doc, "C1", "C1")
    assert isinstance(err.value, ValueError)
    with pytest.raises(ValueError, match="'z'"):
        pct.format("horizon 1; port y : bool; predicate p = y == z;")


def test_verify_small_run():
    suites = pct.verify(seeds=5)
    assert suites["theorem1"]["passed"] == 5
    assert suites["oracle-agreement"]["oracle_mismatches"] == 0


def test_example_matches_independent_brute_force():
    out = subprocess.run(
        [sys.executable, str(HERE.parent / "oracle_scripts" / "example_bruteforce.py")],
        check=True, capture_output=True, text=True).stdout
    ref = dict(line.split(" ", 1) for line in out.splitlines())
    ex = pct.example()
    assert ex["alpha"] == Fraction(ref["alpha"])
    assert ex["beta"] == Fraction(ref["beta"])
    assert ex["composed"] == Fraction(ref["composed"])
    assert ex["vs_prime"] == Fraction(ref["vs_prime"])
    assert ex["composed_pports"] == ["f1", "f2"]
