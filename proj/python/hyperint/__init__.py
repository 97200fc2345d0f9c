"""Exact certification of p-integrality for A-hypergeometric series.

The five pipeline verbs (:func:`certify`, :func:`orbit`, :func:`expand`,
:func:`classical`, :func:`padic_selftest`) accept an instance as a dict or a
JSON string and return a :class:`Result`: the parsed report (a dict, schema
``hyperint/1``) with ``exit_code``, ``summary`` and the raw ``text``
attached.  Scalar helpers expose the exact bracket/Pochhammer arithmetic with
:class:`fractions.Fraction` values.
"""

import json as _json
import math as _math
from fractions import Fraction

from . import _core

__all__ = [
    "Result",
    "bracket",
    "bracket_ord",
    "certify",
    "classical",
    "expand",
    "load_instance",
    "orbit",
    "padic_selftest",
    "pochhammer",
]

__version__ = "0.1.0"


class Result(dict):
    """A parsed report with the process-style exit code and summary attached.

    ``exit_code`` follows the CLI convention: 0 for a positive verdict, 1 for
    a negative one (invalid input raises instead of returning).
    """

    def __init__(self, exit_code, report_text, summary):
        super().__init__(_json.loads(report_text))
        self.exit_code = exit_code
        self.summary = summary
        self.text = report_text


def _instance_text(instance, **overrides):
    if isinstance(instance, str):
        instance = _json.loads(instance)
    if not isinstance(instance, dict):
        raise TypeError("instance must be a dict or a JSON object string")
    merged = dict(instance)
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value
    return _json.dumps(merged)


def _rat_text(value):
    return str(Fraction(value))


def load_instance(path):
    """Read an instance file into a dict (no validation; the verbs validate)."""
    with open(path, "r", encoding="utf-8") as handle:
        return _json.load(handle)


def certify(instance, *, window=None, primes=None):
    """Orbit + weight-maximality certificate with empirical prime checks."""
    text = _instance_text(instance, window=window,
                          primes=list(primes) if primes is not None else None)
    return Result(*_core.run_certify(text))


def orbit(instance):
    """Parameter orbit table."""
    return Result(*_core.run_orbit(_instance_text(instance)))


def expand(instance, *, shift=(), prime=None, window=None):
    """Series expansion at ``base point + shift`` with exact valuations.

    ``prime=None`` selects the first prime congruent to h mod D that keeps
    the parameter vector p-integral.
    """
    text = _instance_text(instance, window=window)
    return Result(*_core.run_expand(text, [int(s) for s in shift], int(prime or 0)))


def classical(instance, *, rho_mode=None):
    """Step-function analysis of a classical instance across its orbit."""
    return Result(*_core.run_classical(_instance_text(instance), rho_mode or ""))


def padic_selftest(p, *, precision=12, v=(), min_samples=10):
    """Verification suite for the ramified p-adic layer."""
    v_list = [_rat_text(x) for x in v]
    return Result(*_core.run_padic_selftest(int(p), int(precision), v_list, int(min_samples)))


def bracket(z, l):
    """The bracket symbol [z]_l as an exact Fraction."""
    return Fraction(_core.bracket_value(_rat_text(z), int(l)))


def pochhammer(z, l):
    """The Pochhammer symbol (z)_l as an exact Fraction."""
    return Fraction(_core.pochhammer_value(_rat_text(z), int(l)))


def bracket_ord(z, l, p):
    """ord_p([z]_l): an int, or ``math.inf`` when the bracket vanishes."""
    text = _core.bracket_ord(_rat_text(z), int(l), int(p))
    return _math.inf if text == "inf" else int(text)
