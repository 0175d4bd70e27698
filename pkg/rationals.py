# -*- coding: utf-8 -*-
"""
rationals.py
------------
Razionali esatti (fractions.Fraction) in ingresso e in uscita.
"0.65" e "13/20" sono lo stesso valore; i float non sono mai accettati.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Optional

from errors import SVError

_RATIONAL_RE = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)(\s*/\s*\d+)?\s*$")


def parse_rational(raw: Any, key: str = "valore") -> Fraction:
    """Accetta Fraction, int o stringhe "a/b" / decimali. Rifiuta float e bool."""
    if isinstance(raw, Fraction):
        return raw
    if isinstance(raw, bool) or isinstance(raw, float):
        raise SVError("bad-rational", f"{key}: {raw!r} non è un razionale esatto (usa \"a/b\" o una stringa decimale)")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str) and _RATIONAL_RE.match(raw):
        try:
            return Fraction(raw.replace(" ", ""))
        except (ValueError, ZeroDivisionError):
            pass
    raise SVError("bad-rational", f"{key}: {raw!r} non è un razionale valido")


def parse_unit(raw: Any, key: str = "valore") -> Fraction:
    q = parse_rational(raw, key)
    if not 0 <= q <= 1:
        raise SVError("element-not-in-carrier", f"{key}: {format_rational(q)} fuori da [0,1]")
    return q


def decimal_string(q: Fraction) -> Optional[str]:
    """Scrittura decimale esatta, oppure None se il denominatore non divide una potenza di 10."""
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    digits = max(twos, fives)
    scaled = abs(q.numerator) * 10 ** digits // q.denominator
    sign = "-" if q < 0 else ""
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10 ** digits)
    frac_txt = str(frac).rjust(digits, "0").rstrip("0")
    return f"{sign}{whole}.{frac_txt}" if frac_txt else f"{sign}{whole}"


def format_rational(q: Fraction) -> str:
    """Decimale quando è esatto ("0.645"), altrimenti "num/den" ai minimi termini ("4/7")."""
    dec = decimal_string(q)
    if dec is not None:
        return dec
    return f"{q.numerator}/{q.denominator}"


def fraction_string(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
