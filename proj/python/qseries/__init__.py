"""Exact q-series toolkit: expansions, partition statistics, cusp data and
certification of eta-quotient identities."""

import json
from dataclasses import dataclass
from fractions import Fraction

from ._core import QSeriesError, ResourceLimit, cusps, stats, suite_names, verify_suite
from . import _core

__all__ = [
    "Series", "expand", "mathcal_f", "stats", "cusps", "bound", "certify",
    "verify_suite", "suite_names", "QSeriesError", "ResourceLimit",
]


@dataclass(frozen=True)
class Series:
    """Coefficients of q^lo .. q^(prec-1); nothing is known from q^prec on."""

    lo: int
    prec: int
    coeffs: tuple

    def __getitem__(self, n):
        if n >= self.prec:
            raise IndexError(f"q^{n} is beyond the known precision {self.prec}")
        if n < self.lo:
            return Fraction(0)
        return self.coeffs[n - self.lo]


def _series(raw):
    lo, prec, coeffs = raw
    return Series(lo, prec, tuple(Fraction(c) for c in coeffs))


def expand(text, order):
    return _series(_core._expand(text, order))


def mathcal_f(b, order):
    """Generating function of M_w(b,11,n) - M_w(11-b,11,n)."""
    return _series(_core._mathcal_f(b, order))


def bound(lhs, rhs, level=121):
    return Fraction(_core._bound(lhs, rhs, level))


def certify(lhs, rhs, level=121, name="identity"):
    return json.loads(_core._certify(name, lhs, rhs, level))
