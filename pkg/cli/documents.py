"""
Output documents: every result object is flattened into plain JSON values.
Polynomials, curves and scalars print in the same grammar the parser reads.
"""

import dataclasses
import json
import math
from fractions import Fraction
from functools import singledispatch
from typing import Any

import pandas as pd
from sympy import QQ

from algebra.curves import BivarCurve
from algebra.fields import FieldDescriptor, Scalar, qq_to_fraction
from algebra.poly import LinearPoly, Poly
from periodic.bounds import ConstantExpr


@singledispatch
def to_plain(value: Any) -> Any:
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_plain(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if QQ.of_type(value):
        return to_plain(qq_to_fraction(value))
    raise TypeError(f"no document form for {type(value).__name__}")


@to_plain.register(type(None))
@to_plain.register(bool)
@to_plain.register(str)
@to_plain.register(int)
def _(value):
    return value


@to_plain.register(float)
def _(value: float):
    return value if math.isfinite(value) else str(value)


@to_plain.register(Fraction)
def _(value: Fraction):
    return value.numerator if value.denominator == 1 else str(value)


@to_plain.register(Scalar)
@to_plain.register(Poly)
@to_plain.register(LinearPoly)
@to_plain.register(BivarCurve)
def _(value):
    return str(value)


@to_plain.register(FieldDescriptor)
def _(value: FieldDescriptor):
    return value.label


@to_plain.register(ConstantExpr)
def _(value: ConstantExpr):
    doc = {"kind": value.kind, "expression": str(value), "log2": to_plain(value.log2),
           "log2_log2": to_plain(value.log2_log2), "integral": value.is_integral}
    if value.is_exact:
        doc["value"] = to_plain(value.value)
    return doc


@to_plain.register(list)
@to_plain.register(tuple)
def _(value):
    return [to_plain(v) for v in value]


@to_plain.register(set)
@to_plain.register(frozenset)
def _(value):
    return [to_plain(v) for v in sorted(value)]


@to_plain.register(dict)
def _(value: dict):
    return {str(to_plain(k)): to_plain(v) for k, v in value.items()}


@to_plain.register(pd.DataFrame)
def _(value: pd.DataFrame):
    return [to_plain({k: _unbox(v) for k, v in row.items()}) for row in value.to_dict(orient="records")]


def _unbox(value):
    # numpy scalars coming out of a DataFrame
    return value.item() if hasattr(value, "item") and not isinstance(value, (tuple, list)) else value


def render(document: dict) -> str:
    return json.dumps(to_plain(document), indent=2, sort_keys=True, ensure_ascii=False)
