"""mocktheta: exact verification toolkit for a family of vector-valued
mock theta functions built from rank generating functions.

The package provides exact cyclotomic arithmetic, truncated Puiseux
q-series, the special series (Eulerian, rank, fifth order, Appell-Lerch),
the Weil representation on Z/12c^2, the closed-form coefficient tables with
their exact identity checks, and a floating-point solver reproducing the
coefficient-discovery linear systems.
"""

from .cyclotomic import (
    CycNumber,
    cos_pi,
    embed_float,
    imag_unit,
    kronecker_12,
    root_of_unity,
    root_sum,
    sin_pi,
    sqrt12,
    sqrt_neg12i,
)
from .qseries import QSeries, compare_series, geometric_inverse, pochhammer

__all__ = [
    "CycNumber",
    "QSeries",
    "compare_series",
    "cos_pi",
    "embed_float",
    "geometric_inverse",
    "imag_unit",
    "kronecker_12",
    "pochhammer",
    "root_of_unity",
    "root_sum",
    "sin_pi",
    "sqrt12",
    "sqrt_neg12i",
]
