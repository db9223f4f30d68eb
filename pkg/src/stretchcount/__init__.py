"""Lattice point counting under area-preserving stretches of concave curves.

Counts first-quadrant lattice points inside the curve obtained by scaling a
concave decreasing profile radially by r and stretching it by the
area-preserving factor s, computes the exact optimal-stretch sets by an
event sweep, audits explicit two-term counting bounds, and solves the dual
rectangle-eigenvalue optimization problems.
"""

from ._backend import backend_name
from .counting import (CountQuery, count, count_p1_balanced, count_p1_sqrt2,
                       count_pcircle, relation_residual)
from .curves import Curve, curve_for_exponent, diamond, from_spec, load_spec, pcircle, quadrant_area
from .estimates import (BoundReport, GeneralCurveParams, balanced_deviation_bound,
                        neumann_lower_bound, remainder_bound_general,
                        remainder_bound_smooth, rough_lower_bound, sawtooth,
                        sawtooth_antiderivative, sawtooth_sum, two_term_upper_bound,
                        vdc_bound)
from .spectral import (EigenResult, dirichlet_eigenvalue, maximize_neumann,
                       minimize_dirichlet, minimize_oscillator, neumann_eigenvalue,
                       oscillator_eigenvalue)
from .sweep import Event, StretchResult, events_p, events_p1, maximize_count, minimize_count_nonneg

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "CountQuery", "count", "count_pcircle", "count_p1_balanced", "count_p1_sqrt2",
    "relation_residual",
    "Curve", "pcircle", "diamond", "curve_for_exponent", "quadrant_area",
    "from_spec", "load_spec",
    "BoundReport", "GeneralCurveParams", "sawtooth", "sawtooth_antiderivative",
    "sawtooth_sum", "vdc_bound", "rough_lower_bound", "two_term_upper_bound",
    "neumann_lower_bound", "remainder_bound_smooth", "remainder_bound_general",
    "balanced_deviation_bound",
    "EigenResult", "dirichlet_eigenvalue", "neumann_eigenvalue",
    "oscillator_eigenvalue", "minimize_dirichlet", "maximize_neumann",
    "minimize_oscillator",
    "Event", "StretchResult", "events_p1", "events_p", "maximize_count",
    "minimize_count_nonneg",
    "__version__",
]
