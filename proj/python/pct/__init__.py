"""Exact satisfaction and refinement levels for probabilistic contracts.

Documents are `.pct` text. Levels come back as `fractions.Fraction`.
"""

from fractions import Fraction

from . import _core
from ._core import ContractError

__all__ = [
    "ContractError",
    "compose",
    "example",
    "example_document",
    "format",
    "refine_level",
    "sat_level",
    "verify",
]


def _frac(value):
    return None if value is None else Fraction(value)


def sat_level(text, impl, contract):
    return Fraction(_core.sat_level(text, impl, contract))


def refine_level(text, refining, refined):
    r = _core.refine_level(text, refining, refined)
    return {
        "level": _frac(r["level"]),
        "p_good1": Fraction(r["p_good1"]),
        "p_good_both": Fraction(r["p_good_both"]),
        "degenerate": r["degenerate"],
    }


def compose(text, left, right, name=None):
    return _core.compose(text, left, right, name or f"{left}_{right}")


def format(text):
    return _core.format(text)


def verify(seeds=50, first_seed=0, budget=""):
    return _core.verify(seeds, first_seed, budget)


def example():
    r = _core.example()
    return {k: (v if k == "composed_pports" else _frac(v)) for k, v in r.items()}


def example_document():
    return _core.example_document()
