"""
Lattice geometry around the shock end-point.

    P(U, V)     = ((1+gamma)(N+V), (1-gamma)(N+V)) + U (1, -1)
    Pbar(u, v)  = P(u N^{1/3}, v N^{1/3})
    E_s         = P - ((1-s)^2, s^2) N^nu                      (points on the characteristics)
    D_eta       = (floor(eta (1+gamma) N), floor(eta (1-gamma) N)),  eta in [0, 1 - N^{beta-1}]
    P^rho(x)    = ((1-rho)^2 N + x, rho^2 N - x)               (stationary end-point)

Rescaled last-passage values:

    L^resc_s(u, v) = (L - (mu0 (N + v N^{1/3}) - c_s u N^{1/3})) / N^{1/3},   c_s = (1-2s)/(s(1-s))

Real coordinates are rounded to the lattice coordinatewise (nearest integer, halves up).
"""

from math import floor

from domain.errors import InvalidParameterError
from domain.models import Point, ShockConstants
from domain.types import Side

from theory.constants import side_density, side_slope, side_start


def lattice_round(x: float) -> int:
    return floor(x + 0.5)


def _round_point(p: tuple[float, float]) -> Point:
    return lattice_round(p[0]), lattice_round(p[1])


def point_P_real(N: float, u: float, v: float, sc: ShockConstants) -> tuple[float, float]:
    """Pre-rounding coordinates of Pbar(u, v)."""
    scale = N ** (1.0 / 3.0)
    n_tilde = N + v * scale
    shift = u * scale
    return (1.0 + sc.gamma) * n_tilde + shift, (1.0 - sc.gamma) * n_tilde - shift


def point_P(N: float, u: float, v: float, sc: ShockConstants) -> Point:
    """
    Lattice point Pbar(u, v).

    Raises
    ------
    InvalidParameterError
        If a rounded coordinate is not positive.
    """
    point = _round_point(point_P_real(N, u, v, sc))
    if point[0] <= 0 or point[1] <= 0:
        raise InvalidParameterError(f"Pbar({u}, {v}) at N={N} has a nonpositive coordinate: {point}")
    return point


def characteristic_points(N: float, nu: float, sc: ShockConstants) -> tuple[Point, Point]:
    """Return (E_lambda, E_rho), the points at distance N^nu before P on each characteristic."""
    if not 0.0 < nu < 1.0:
        raise InvalidParameterError(f"nu must lie in (0, 1), got {nu}")
    px, py = point_P_real(N, 0.0, 0.0, sc)
    step = N**nu
    (lx, ly), (rx, ry) = sc.char_dir_lambda, sc.char_dir_rho
    return _round_point((px - lx * step, py - ly * step)), _round_point((px - rx * step, py - ry * step))


def characteristic_point(N: float, nu: float, sc: ShockConstants, side: Side) -> Point:
    e_lambda, e_rho = characteristic_points(N, nu, sc)
    return e_lambda if side == "lambda" else e_rho


def start_point(N: float, sc: ShockConstants, side: Side) -> Point:
    """Lattice-rounded start A_s of the characteristic, on the line of side s."""
    a_x, a_y = side_start(sc, side)
    return _round_point((a_x * N, a_y * N))


def d_eta_points(N: int, beta: float, sc: ShockConstants) -> list[Point]:
    """
    Distinct points D_eta for eta in [0, 1 - N^{beta-1}], ordered by eta.

    Raises
    ------
    InvalidParameterError
        If beta is outside (2/3, 1).
    """
    if not 2.0 / 3.0 < beta < 1.0:
        raise InvalidParameterError(f"beta must lie in (2/3, 1), got {beta}")
    eta_max = 1.0 - N ** (beta - 1.0)
    a, b = (1.0 + sc.gamma) * N, (1.0 - sc.gamma) * N
    # a resolution finer than one lattice step in each coordinate
    n_eta = int(2 * max(a, b) * eta_max) + 2
    points: list[Point] = []
    for k in range(n_eta + 1):
        eta = eta_max * k / n_eta
        p = (floor(eta * a), floor(eta * b))
        if not points or points[-1] != p:
            points.append(p)
    return points


def rescale(value_raw: float, N: float, u: float, v: float, side: Side, sc: ShockConstants) -> float:
    scale = N ** (1.0 / 3.0)
    centre = sc.mu0 * (N + v * scale) - side_slope(side_density(sc, side)) * u * scale
    return (value_raw - centre) / scale


def unrescale(value: float, N: float, u: float, v: float, side: Side, sc: ShockConstants) -> float:
    scale = N ** (1.0 / 3.0)
    centre = sc.mu0 * (N + v * scale) - side_slope(side_density(sc, side)) * u * scale
    return value * scale + centre


def exit_point_P(N: float, varrho: float, x: float) -> Point:
    """End-point P^rho(x) of the stationary model, lattice-rounded."""
    if not 0.0 < varrho < 1.0:
        raise InvalidParameterError(f"varrho must lie in (0, 1), got {varrho}")
    return _round_point(((1.0 - varrho) ** 2 * N + x, varrho**2 * N - x))
