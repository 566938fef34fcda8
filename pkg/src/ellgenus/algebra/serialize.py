"""JSON encoding of scalars and q-series.

Exact rationals become strings ``"a/b"``, cyclotomic elements become arrays
of such strings (the field order is stored once per series under
``"field"``), complex numbers become ``[re, im]``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd

from .cyclotomic import CycElt
from .qseries import QSeries


def fraction_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def str_to_fraction(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


def scalar_to_json(c):
    if isinstance(c, CycElt):
        if c.is_rational():
            return fraction_to_str(c.c[0])
        return [fraction_to_str(v) for v in c.c]
    if isinstance(c, complex) or isinstance(c, float):
        c = complex(c)
        return [c.real, c.imag]
    return fraction_to_str(c)


def scalar_from_json(v, field: int = 1):
    if isinstance(v, str) or isinstance(v, int):
        return str_to_fraction(v)
    if isinstance(v, list):
        if v and all(isinstance(x, str) for x in v):
            return CycElt(field, [str_to_fraction(x) for x in v])
        if len(v) == 2:
            return complex(float(v[0]), float(v[1]))
    raise ValueError(f"unrecognized scalar encoding: {v!r}")


def series_field(s: QSeries) -> int:
    D = 1
    for c in s.terms.values():
        if isinstance(c, CycElt) and not c.is_rational():
            D = D * c.D // gcd(D, c.D)
    return D


def qseries_to_json(s: QSeries) -> dict:
    doc = {
        "denom": s.denom,
        "terms": [{"num": e, "value": scalar_to_json(s.terms[e])} for e in sorted(s.terms)],
        "order": None if s.prec is None else fraction_to_str(s.prec),
    }
    D = series_field(s)
    if D > 1:
        doc["field"] = D
    return doc


def qseries_from_json(doc: dict) -> QSeries:
    D = int(doc.get("field", 1))
    terms = {int(t["num"]): scalar_from_json(t["value"], D) for t in doc["terms"]}
    order = doc.get("order")
    prec = None if order is None else str_to_fraction(order)
    return QSeries(terms, int(doc["denom"]), prec)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
