"""Coefficient rings and truncated series."""

from .cyclotomic import (
    BackendMismatch,
    CycElt,
    CyclotomicField,
    InversionOfZero,
    common_field,
    cyclotomic_poly,
    euler_phi,
    scalar_inverse,
    scalar_is_zero,
)
from .multipoly import MultiPoly, compose_linear
from .qseries import NonUnitInversion, QSeries
from .serialize import qseries_from_json, qseries_to_json
from .wseries import PoleInComposition, WSeries, exp_series

__all__ = [
    "BackendMismatch",
    "CycElt",
    "CyclotomicField",
    "InversionOfZero",
    "MultiPoly",
    "NonUnitInversion",
    "PoleInComposition",
    "QSeries",
    "WSeries",
    "common_field",
    "compose_linear",
    "cyclotomic_poly",
    "euler_phi",
    "exp_series",
    "qseries_from_json",
    "qseries_to_json",
    "scalar_inverse",
    "scalar_is_zero",
]
