"""Division points, theta products and Jacobi functions on the Tate curve."""

from .context import ExactContext, NumericContext
from .jacobi import (
    CharacterNotConstant,
    JacobiFunction,
    Level2Data,
    ModulusNotConstant,
    NoPoleAtOrigin,
    ODEMismatch,
    ThetaSpec,
    TrivialCoset,
    TruncationInsufficient,
    build_genus_function,
    build_level2,
    build_special,
    build_group_quotient,
    build_theorem6,
    character_of,
    level2_data,
    modulus,
    normalize,
    ode_residual,
    w_expansion,
)
from .points import ORIGIN, DivisionPoint, NomeSpec
from .theta import PoleError, theta_basic, theta_n_a, theta_shifted

__all__ = [
    "CharacterNotConstant",
    "DivisionPoint",
    "ExactContext",
    "JacobiFunction",
    "Level2Data",
    "ModulusNotConstant",
    "NoPoleAtOrigin",
    "NomeSpec",
    "NumericContext",
    "ODEMismatch",
    "ORIGIN",
    "PoleError",
    "ThetaSpec",
    "TrivialCoset",
    "TruncationInsufficient",
    "build_genus_function",
    "build_level2",
    "build_special",
    "build_group_quotient",
    "build_theorem6",
    "character_of",
    "level2_data",
    "modulus",
    "normalize",
    "ode_residual",
    "theta_basic",
    "theta_n_a",
    "theta_shifted",
    "w_expansion",
]
