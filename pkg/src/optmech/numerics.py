"""Exact rational scalars plus a positive-infinity element.

All scalar quantities (values, welfare, edge costs, payments) are GMP
rationals (``gmpy2.mpq``): arbitrary precision, so arithmetic never
overflows and equality on tie boundaries is exact. ``mpq`` compares and
hashes equal to ``fractions.Fraction`` of the same value.
"""
from __future__ import annotations

import functools
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Union

from gmpy2 import mpq

Rat = mpq


@functools.total_ordering
class _PosInfinity:
    """The +inf element of the extended rationals. Use the ``INF`` singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("optmech.INF")

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_PosInfinity, ())


INF = _PosInfinity()

ExtRat = Union[mpq, _PosInfinity]


def is_inf(x) -> bool:
    return x is INF


class ParseError(ValueError):
    pass


def to_rat(x) -> Rat:
    """Convert an int, Fraction, or decimal/fraction string to an exact Rat.

    Floats are rejected: they are binary approximations and would leak
    rounding into tie-breaking.
    """
    if isinstance(x, bool):
        raise ParseError(f"not a number: {x!r}")
    if isinstance(x, (int, Fraction)) or type(x) is mpq:
        return mpq(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, _, den = s.partition("/")
            try:
                q = mpq(int(num), int(den))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational literal: {x!r}") from exc
            return q
        try:
            d = Decimal(s)
        except InvalidOperation as exc:
            raise ParseError(f"bad decimal literal: {x!r}") from exc
        if not d.is_finite():
            raise ParseError(f"non-finite literal: {x!r}")
        return mpq(Fraction(d))
    raise ParseError(f"unsupported numeric value {x!r} (use int or string)")


def to_ext(x) -> ExtRat:
    """Like ``to_rat`` but ``None``, ``"inf"`` and INF map to +inf."""
    if x is None or x is INF:
        return INF
    if isinstance(x, str) and x.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return to_rat(x)


def render(x: ExtRat) -> str:
    """Canonical text form: ``p`` when the denominator is 1, else ``p/q``."""
    if x is INF:
        return "inf"
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse(s: str) -> ExtRat:
    """Inverse of ``render``."""
    return to_ext(s)


def ext_add(a: ExtRat, b: ExtRat) -> ExtRat:
    if a is INF or b is INF:
        return INF
    return a + b


def ext_min(*xs: ExtRat) -> ExtRat:
    best: ExtRat = INF
    for x in xs:
        if x < best:
            best = x
    return best


def rat_cmp(a: ExtRat, b: ExtRat) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if a == b:
        return 0
    return -1 if a < b else 1
