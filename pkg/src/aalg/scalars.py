"""Scalar kernel shared by every container in the package.

Two scalar kinds exist and are never mixed inside one container:

* ``exact`` -- :class:`fractions.Fraction`; used on classification paths,
  where the claims are equalities and rounding is not acceptable;
* ``float`` -- IEEE doubles, compared against a single tolerance epsilon
  (default ``1e-9``, overridable per call and via the ``AALG_EPSILON``
  environment variable in the CLI).

Integers are accepted everywhere and coerced to Fractions.
"""

from __future__ import annotations

import math
from fractions import Fraction

EXACT = "exact"
FLOAT = "float"

DEFAULT_EPS = 1e-9


def resolve_eps(eps=None) -> float:
    return DEFAULT_EPS if eps is None else float(eps)


def kind_of(x) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (Fraction, int)):
        return EXACT
    if isinstance(x, float):
        return FLOAT
    raise TypeError(f"unsupported scalar {x!r}")


def coerce(x, kind: str):
    """Coerce a number to the requested scalar kind.

    Floats never silently enter the exact path.
    """
    if kind == EXACT:
        if isinstance(x, bool) or not isinstance(x, (Fraction, int)):
            raise TypeError(f"cannot put {x!r} on the exact path")
        return Fraction(x)
    if kind == FLOAT:
        return float(x)
    raise ValueError(f"unknown scalar kind {kind!r}")


def zero(kind: str):
    return Fraction(0) if kind == EXACT else 0.0


def one(kind: str):
    return Fraction(1) if kind == EXACT else 1.0


def is_zero(x, eps=None) -> bool:
    if isinstance(x, (Fraction, int)):
        return x == 0
    return abs(x) <= resolve_eps(eps)


def eq(x, y, eps=None) -> bool:
    return is_zero(x - y, eps)


def exact_sqrt(q):
    """Square root of a non-negative Fraction, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0)
    ns = math.isqrt(q.numerator)
    ds = math.isqrt(q.denominator)
    if ns * ns == q.numerator and ds * ds == q.denominator:
        return Fraction(ns, ds)
    return None


def sqrt_scalar(x):
    """Scalar square root; returns None on the exact path when irrational."""
    if isinstance(x, (Fraction, int)):
        return exact_sqrt(x)
    if x < 0:
        raise ValueError("negative radicand")
    return math.sqrt(x)


def fmt(x) -> str:
    """Render a scalar the way the document grammar expects."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return repr(x)
