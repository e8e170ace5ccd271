"""Closed-form shock constants, lattice geometry and Tracy-Widom reference laws."""

from theory.constants import (
    crossing_law_coefficients,
    limit_law_coefficients,
    pt_point_scaling,
    shock_constants,
    side_slope,
    upsilon_vanishing_path,
)
from theory.geometry import (
    characteristic_points,
    d_eta_points,
    exit_point_P,
    point_P,
    point_P_real,
    rescale,
    unrescale,
)

__all__ = [
    # Constants
    "crossing_law_coefficients",
    "limit_law_coefficients",
    "pt_point_scaling",
    "shock_constants",
    "side_slope",
    "upsilon_vanishing_path",
    # Geometry
    "characteristic_points",
    "d_eta_points",
    "exit_point_P",
    "point_P",
    "point_P_real",
    "rescale",
    "unrescale",
]
