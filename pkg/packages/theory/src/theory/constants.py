"""
Closed-form constants of the shock limit theorem.

For densities 0 < lambda < rho < 1 write D = 1 - lambda - rho + 2*lambda*rho. Then

    v       = 1 - lambda - rho                          (shock speed)
    gamma   = (1 - lambda - rho) / D
    mu0     = 2 / D
    Upsilon = (1-2l)/(l(1-l)) - (1-2r)/(r(1-r))          (> 0 when lambda < rho)
    sigma_s = 2^{1/3} / (s(1-s) D)^{1/3}                 (s = lambda or rho)
    xi_l    = 2 (rho - lambda) lambda / D               (> 0)
    xi_r    = -2 (rho - lambda) rho / D                 (< 0)

The characteristic of density s has direction ((1-s)^2, s^2); the lambda and rho
characteristics start at A_s = ((s-1)/s, 1) xi_s N and meet at P = ((1+gamma)N, (1-gamma)N).
"""

from math import sqrt

from domain.errors import InvalidParameterError
from domain.models import PtPointScaling, ShockConstants
from domain.types import LimitLaw, Side

CBRT2 = 2.0 ** (1.0 / 3.0)


def _validate_densities(lambda_: float, rho: float) -> None:
    if not 0.0 < lambda_ < rho < 1.0:
        raise InvalidParameterError(f"Need 0 < lambda < rho < 1, got lambda={lambda_}, rho={rho}")


def side_slope(density: float) -> float:
    """Slope (1-2s)/(s(1-s)) of the centering along the anti-diagonal for density s."""
    if not 0.0 < density < 1.0:
        raise InvalidParameterError(f"Density must lie in (0, 1), got {density}")
    return (1.0 - 2.0 * density) / (density * (1.0 - density))


def characteristic_direction(density: float) -> tuple[float, float]:
    return ((1.0 - density) ** 2, density**2)


def upsilon(lambda_: float, rho: float) -> float:
    """Difference of the two side slopes; positive whenever lambda < rho."""
    return side_slope(lambda_) - side_slope(rho)


def shock_constants(lambda_: float, rho: float) -> ShockConstants:
    """
    Compute every deterministic constant of the limit theorem.

    Raises
    ------
    InvalidParameterError
        If the ordering 0 < lambda < rho < 1 is violated.
    """
    _validate_densities(lambda_, rho)

    d = 1.0 - lambda_ - rho + 2.0 * lambda_ * rho
    gap = rho - lambda_
    xi_lambda = 2.0 * gap * lambda_ / d
    xi_rho = -2.0 * gap * rho / d

    return ShockConstants(
        lambda_=lambda_,
        rho=rho,
        v=1.0 - lambda_ - rho,
        gamma=(1.0 - lambda_ - rho) / d,
        mu0=2.0 / d,
        sigma1=CBRT2 / (lambda_ * (1.0 - lambda_) * d) ** (1.0 / 3.0),
        sigma2=CBRT2 / (rho * (1.0 - rho) * d) ** (1.0 / 3.0),
        upsilon=upsilon(lambda_, rho),
        xi_lambda=xi_lambda,
        xi_rho=xi_rho,
        a_lambda=((lambda_ - 1.0) / lambda_ * xi_lambda, xi_lambda),
        a_rho=((rho - 1.0) / rho * xi_rho, xi_rho),
        char_dir_lambda=characteristic_direction(lambda_),
        char_dir_rho=characteristic_direction(rho),
    )


# ---------------------------------------------------------------------
# Per-side accessors
# ---------------------------------------------------------------------


def side_density(sc: ShockConstants, side: Side) -> float:
    return sc.lambda_ if side == "lambda" else sc.rho


def side_sigma(sc: ShockConstants, side: Side) -> float:
    return sc.sigma1 if side == "lambda" else sc.sigma2


def side_start(sc: ShockConstants, side: Side) -> tuple[float, float]:
    return sc.a_lambda if side == "lambda" else sc.a_rho


def side_char_dir(sc: ShockConstants, side: Side) -> tuple[float, float]:
    return sc.char_dir_lambda if side == "lambda" else sc.char_dir_rho


# ---------------------------------------------------------------------
# Point-to-point scaling
# ---------------------------------------------------------------------


def pt_point_scaling(eta: float) -> PtPointScaling:
    """Scaling of L_{(0,0) -> (eta N, N)}: mean (1+sqrt(eta))^2 N, fluctuations sigma_eta N^{1/3}."""
    if eta <= 0.0:
        raise InvalidParameterError(f"eta must be positive, got {eta}")
    root = sqrt(eta)
    return PtPointScaling(
        eta=eta,
        mu_pp=(1.0 + root) ** 2,
        sigma_eta=eta ** (-1.0 / 6.0) * (1.0 + root) ** (4.0 / 3.0),
    )


# ---------------------------------------------------------------------
# Limit-law coefficients
# ---------------------------------------------------------------------


def limit_law_coefficients(sc: ShockConstants, which: LimitLaw) -> tuple[float, float]:
    """
    Coefficients (a, b) with limit = a * xi1 + b * xi2 for independent GOE variables.

    X:  a =  2^{1/3} sigma1 / (mu0^{4/3} Upsilon rho(1-rho)),
        b = -2^{1/3} sigma2 / (mu0^{4/3} Upsilon lambda(1-lambda)).
    N:  the same with the extra factors (1-2 rho) and (1-2 lambda).
    """
    lam, rho = sc.lambda_, sc.rho
    prefactor = CBRT2 / (sc.mu0 ** (4.0 / 3.0) * sc.upsilon)
    a = prefactor * sc.sigma1 / (rho * (1.0 - rho))
    b = -prefactor * sc.sigma2 / (lam * (1.0 - lam))
    if which == "N":
        a *= 1.0 - 2.0 * rho
        b *= 1.0 - 2.0 * lam
    return a, b


def crossing_law_coefficients(sc: ShockConstants) -> tuple[float, float]:
    """Coefficients of (chi_lambda - chi_rho) / Upsilon in terms of two GOE variables."""
    scale = 2.0 ** (-2.0 / 3.0) / sc.upsilon
    return sc.sigma1 * scale, -sc.sigma2 * scale


def upsilon_vanishing_path(lambda_: float, rho: float, *, steps: int = 8) -> list[tuple[float, float]]:
    """
    Upsilon along pairs that close the density gap symmetrically about the midpoint.

    Returns (gap, upsilon) pairs with the gap halved at every step.
    """
    _validate_densities(lambda_, rho)
    mid = 0.5 * (lambda_ + rho)
    half = 0.5 * (rho - lambda_)
    path: list[tuple[float, float]] = []
    for _ in range(steps):
        path.append((2.0 * half, upsilon(mid - half, mid + half)))
        half *= 0.5
    return path
