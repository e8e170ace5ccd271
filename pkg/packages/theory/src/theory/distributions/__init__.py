"""Tracy-Widom reference distributions and limit laws."""

from typing import Protocol

import numpy as np

from theory.distributions.airy import airy_ai
from theory.distributions.fredholm import (
    f_goe_cdf,
    f_gue_cdf,
    goe_scaled_cdf,
    goe_scaled_cdf_by_kernel,
    gue_point_to_point_cdf,
)
from theory.distributions.limit_law import combination_cdf, goe_table, limit_law_cdf
from theory.distributions.tables import DistTable, tabulate


class Cdf(Protocol):
    """Anything evaluating a distribution function pointwise."""

    def __call__(self, s: np.ndarray) -> np.ndarray: ...


__all__ = [
    # Types
    "Cdf",
    "DistTable",
    # Special functions
    "airy_ai",
    # Tracy-Widom
    "f_goe_cdf",
    "f_gue_cdf",
    "goe_scaled_cdf",
    "goe_scaled_cdf_by_kernel",
    "gue_point_to_point_cdf",
    "tabulate",
    # Limit laws
    "combination_cdf",
    "goe_table",
    "limit_law_cdf",
]
