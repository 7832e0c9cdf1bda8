"""Closed-form constants of the convolution operator bounds.

All constants are functions of c(p) = (sum_{j != 0} |j|^{-2p})^{1/2},
evaluated through the Riemann zeta function.
"""

import math

from scipy.special import zeta

from app.exceptions import InvalidParameterError


def lattice_constant(p: float) -> float:
    """
    c(p) = (2 zeta(2p))^{1/2}.

    Args:
        p: Exponent, p > 1/2

    Returns:
        float: The lattice sum constant

    Raises:
        InvalidParameterError: If p <= 1/2 (the sum diverges)
    """
    if not p > 0.5:
        raise InvalidParameterError(f"c(p) needs p > 1/2, got p={p}")
    return math.sqrt(2.0 * float(zeta(2.0 * p, 1.0)))


def b1_constant(theta: float) -> float:
    """1/2 c(theta - 1) for ||B1||_{-theta} against H^0 x H^0."""
    return 0.5 * lattice_constant(theta - 1.0)


def b2_constant(s: float) -> float:
    """2 max(2^s, 1) c(s + 1) for B2: H^s x H^s -> H^{s+1}."""
    return 2.0 * max(2.0**s, 1.0) * lattice_constant(s + 1.0)


def product_constant(s: float) -> float:
    """K1(s) = 3 + max(2^s, 2) c(s) for the algebra property of H^s."""
    return 3.0 + max(2.0**s, 2.0) * lattice_constant(s)


def negative_b2_constant(S: float) -> float:
    """c(S) for B2: H^{-1} x H^{-1} -> H^{-S}."""
    return lattice_constant(S)


def b3_constant(s: float) -> float:
    """3^{s+1} pi^2 / 2 for B3: (H^s)^3 -> H^{s+2}."""
    return 3.0 ** (s + 1.0) * math.pi**2 / 2.0


def b30_constant(s: float, n: int) -> float:
    """pi^2 / n^s for the split trilinear term against ||v||_0^2 ||v||_s."""
    return math.pi**2 / float(n) ** s


def b4_constant(s: float, epsilon: float) -> float:
    """4^s c(1 - eps) pi^2 (3 2^{-eps-1} + 2/3) for B4 into H^{s+eps}."""
    return (
        4.0**s
        * lattice_constant(1.0 - epsilon)
        * math.pi**2
        * (3.0 * 2.0 ** (-epsilon - 1.0) + 2.0 / 3.0)
    )


def r3_constant(s: float) -> float:
    """c6(s) = 3^s c(s)^2 for R3: (H^s)^3 -> H^s."""
    return 3.0**s * lattice_constant(s) ** 2


def r3_lipschitz_constant(s: float) -> float:
    """10 c6(s), the Lipschitz constant of v -> R3(v, v, v) on H^s."""
    return 10.0 * r3_constant(s)
