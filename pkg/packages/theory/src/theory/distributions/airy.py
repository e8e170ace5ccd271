"""
Standalone Airy function Ai on |x| <= 40.

- |x| <= 5.5: Maclaurin series Ai(x) = c1 f(x) - c2 g(x)
- |x| >= 6.5: asymptotic expansions (exponential decay for x > 0, oscillatory for x < 0)
- in between: linear blend of the two

The Fredholm kernels use scipy.special.airy; this implementation serves as an
independent cross-check of those values.
"""

from math import cos, exp, pi, sin, sqrt

from domain.errors import AiryRangeError

AIRY_RANGE = 40.0
AI0 = 0.355028053887817239  # Ai(0) = 3^{-2/3} / Gamma(2/3)
AIP0 = 0.258819403792806798  # -Ai'(0) = 3^{-1/3} / Gamma(1/3)

_SERIES_MAX = 5.5
_ASYMPTOTIC_MIN = 6.5
_MAX_TERMS = 200


def _maclaurin(x: float) -> float:
    """Power series; each term of f and g is built from the previous one."""
    x3 = x * x * x
    f_term, g_term = 1.0, x
    f_sum, g_sum = f_term, g_term
    for k in range(1, _MAX_TERMS):
        f_term *= x3 / ((3 * k - 1) * (3 * k))
        g_term *= x3 / ((3 * k) * (3 * k + 1))
        f_sum += f_term
        g_sum += g_term
        if abs(f_term) < 1e-18 * abs(f_sum) and abs(g_term) < 1e-18 * max(abs(g_sum), 1e-300):
            break
    return AI0 * f_sum - AIP0 * g_sum


def _u_coefficients(n: int) -> list[float]:
    u = [1.0]
    for k in range(1, n):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    return u


_U = _u_coefficients(40)


def _asymptotic_positive(x: float) -> float:
    zeta = 2.0 / 3.0 * x**1.5
    total, prev = 0.0, float("inf")
    for k, u in enumerate(_U):
        term = u / zeta**k
        if term > prev:
            break
        total += term if k % 2 == 0 else -term
        prev = term
    return exp(-zeta) / (2.0 * sqrt(pi) * x**0.25) * total


def _asymptotic_negative(x: float) -> float:
    y = -x
    zeta = 2.0 / 3.0 * y**1.5
    even, odd, prev = 0.0, 0.0, float("inf")
    for k, u in enumerate(_U):
        term = u / zeta**k
        if term > prev:
            break
        sign = 1.0 if (k // 2) % 2 == 0 else -1.0
        if k % 2 == 0:
            even += sign * term
        else:
            odd += sign * term
        prev = term
    phase = zeta + pi / 4.0
    return (sin(phase) * even - cos(phase) * odd) / (sqrt(pi) * y**0.25)


def _asymptotic(x: float) -> float:
    return _asymptotic_positive(x) if x > 0 else _asymptotic_negative(x)


def airy_ai(x: float) -> float:
    """
    Airy function Ai(x).

    Raises
    ------
    AiryRangeError
        If |x| > 40.
    """
    ax = abs(x)
    if ax > AIRY_RANGE:
        raise AiryRangeError(f"airy_ai is defined on |x| <= {AIRY_RANGE}, got {x}")
    if ax <= _SERIES_MAX:
        return _maclaurin(x)
    if ax >= _ASYMPTOTIC_MIN:
        return _asymptotic(x)
    weight = (ax - _SERIES_MAX) / (_ASYMPTOTIC_MIN - _SERIES_MAX)
    return (1.0 - weight) * _maclaurin(x) + weight * _asymptotic(x)
