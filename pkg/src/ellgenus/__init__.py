"""Elliptic genera from division points of elliptic curves.

Subpackages and modules:

``algebra``   exact cyclotomic scalars and truncated series
``elliptic``  division points, theta products, Jacobi functions
``intlat``    Smith normal form and division-point enumeration
``genus``     residue and division-sum formulas for complete intersections
``lg``        Landau-Ginzburg orbifold elliptic genus
``cli``       command-line front end (``python -m ellgenus``)
"""

from .algebra import CycElt, CyclotomicField, QSeries, WSeries
from .elliptic import DivisionPoint, ExactContext, NomeSpec, NumericContext
from .genus import (
    CIModel,
    GenusSpec,
    ci_example_level2,
    division_sum_genus,
    hypersurface_level2,
    residue_genus,
    verify_partial_fraction,
    verify_residue_sum,
)
from .intlat import DegreeMatrix, coset_reps, cy_condition, snf, solve_division
from .lg import LGModel, QYSeries, assembled, ell_at_y_one, ell_genus, ell_genus_numeric

__version__ = "0.1.0"

__all__ = [
    "CIModel",
    "CycElt",
    "CyclotomicField",
    "DegreeMatrix",
    "DivisionPoint",
    "ExactContext",
    "GenusSpec",
    "LGModel",
    "NomeSpec",
    "NumericContext",
    "QSeries",
    "QYSeries",
    "WSeries",
    "assembled",
    "ci_example_level2",
    "coset_reps",
    "cy_condition",
    "division_sum_genus",
    "ell_at_y_one",
    "ell_genus",
    "ell_genus_numeric",
    "hypersurface_level2",
    "residue_genus",
    "snf",
    "solve_division",
    "verify_partial_fraction",
    "verify_residue_sum",
]
