"""
Fredholm determinants of Airy-type kernels by Nystrom quadrature.

    det(I - K)_{L^2(s, inf)} ~ det(delta_ij - sqrt(w_i) K(x_i, x_j) sqrt(w_j))

Gauss-Legendre nodes xi on (-1, 1) are mapped to (s, inf) by

    x = s + L tan(pi (1 + xi) / 4),     dx = L (pi / 4) sec^2(pi (1 + xi) / 4) dxi

with decay length L = 10 by default.

    GUE:  K(x, y) = (Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y),  K(x, x) = Ai'(x)^2 - x Ai(x)^2
    GOE:  F_GOE(s) = det(I - Ai(x + y)) on L^2(s/2, inf)
"""

from collections.abc import Callable
from functools import lru_cache

import numpy as np
from domain.errors import AccuracyError
from domain.types import Kernel
from numpy.polynomial.legendre import leggauss
from scipy.special import airy

MIN_ORDER = 8
DEFAULT_ORDER = 64
DEFAULT_DECAY = 10.0

KernelFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _check_order(order: int) -> None:
    if order < MIN_ORDER:
        raise AccuracyError(f"Quadrature order must be >= {MIN_ORDER}, got {order}")


@lru_cache(maxsize=16)
def _legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    return leggauss(order)


def mapped_nodes(lower: float, order: int, decay: float = DEFAULT_DECAY) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on (lower, inf) after the tangent change of variables."""
    _check_order(order)
    xi, w = _legendre(order)
    theta = np.pi * (1.0 + xi) / 4.0
    x = lower + decay * np.tan(theta)
    weights = w * decay * (np.pi / 4.0) / np.cos(theta) ** 2
    return x, weights


def fredholm_det(kernel: KernelFn, lower: float, order: int = DEFAULT_ORDER, decay: float = DEFAULT_DECAY) -> float:
    """det(I - K) on L^2(lower, inf)."""
    x, w = mapped_nodes(lower, order, decay)
    root_w = np.sqrt(w)
    matrix = np.eye(order) - root_w[:, None] * kernel(x, x) * root_w[None, :]
    return float(np.linalg.det(matrix))


# ---------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------


def airy_kernel(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Airy kernel on the tensor grid x (rows) by y (columns), diagonal filled by its limit."""
    ai_x, aip_x, _, _ = airy(x)
    ai_y, aip_y, _, _ = airy(y)
    dx = x[:, None] - y[None, :]
    num = ai_x[:, None] * aip_y[None, :] - aip_x[:, None] * ai_y[None, :]
    same = dx == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        k = np.where(same, 0.0, num / np.where(same, 1.0, dx))
    diag = aip_x**2 - x * ai_x**2
    rows, cols = np.nonzero(same)
    k[rows, cols] = diag[rows]
    return k


def goe_kernel(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Scalar GOE kernel Ai(x + y)."""
    ai, _, _, _ = airy(x[:, None] + y[None, :])
    return ai


def scaled_goe_kernel(kappa: float) -> KernelFn:
    """kappa Ai(kappa (x + y)); its determinant on (s, inf) is the one of Ai(x+y) on (kappa s, inf)."""

    def kernel(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        ai, _, _, _ = airy(kappa * (x[:, None] + y[None, :]))
        return kappa * ai

    return kernel


# ---------------------------------------------------------------------
# Distribution functions
# ---------------------------------------------------------------------


def _clip_probability(p: float) -> float:
    return min(1.0, max(0.0, p))


def f_gue_cdf(s: float, order: int = DEFAULT_ORDER) -> float:
    """Tracy-Widom GUE distribution function."""
    return _clip_probability(fredholm_det(airy_kernel, s, order))


def f_goe_cdf(s: float, order: int = DEFAULT_ORDER) -> float:
    """Tracy-Widom GOE distribution function, det(I - Ai(x+y)) on (s/2, inf)."""
    return _clip_probability(fredholm_det(goe_kernel, 0.5 * s, order))


def tw_cdf(kind: Kernel, s: float, order: int = DEFAULT_ORDER) -> float:
    return f_gue_cdf(s, order) if kind == "gue" else f_goe_cdf(s, order)


def goe_scaled_cdf(s: float, sigma: float, order: int = DEFAULT_ORDER) -> float:
    """F_GOE(2^{2/3} s / sigma) by scaling the argument."""
    return f_goe_cdf(2.0 ** (2.0 / 3.0) * s / sigma, order)


def goe_scaled_cdf_by_kernel(s: float, sigma: float, order: int = DEFAULT_ORDER) -> float:
    """
    F_GOE(2^{2/3} s / sigma) by scaling the kernel window instead of the argument.

    With kappa = 2^{-1/3} / sigma the determinant of kappa Ai(kappa(x+y)) on (s, inf)
    equals the one of Ai(x+y) on (kappa s, inf). The decay length is stretched by
    1/kappa so both evaluations see corresponding nodes.
    """
    kappa = 2.0 ** (-1.0 / 3.0) / sigma
    return _clip_probability(fredholm_det(scaled_goe_kernel(kappa), s, order, decay=DEFAULT_DECAY / kappa))


def gue_point_to_point_cdf(s: float, order: int = DEFAULT_ORDER) -> float:
    """Limit CDF of (L_{(0,0)->(eta N, N)} - mu_pp N) / (sigma_eta N^{1/3})."""
    return f_gue_cdf(s, order)
