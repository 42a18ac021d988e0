"""Hermitian form between the states Psi_z.

For labels z1, z2 the pairing depends only on z12 = conj(z1) + z2:

    G(z12) = sigma * K(z12)/pi * sin(pi z12) Gamma(z12) zeta(z12),
    K(z12) = exp(-alpha |z12|^2).

sigma = +1 (INNER) or -1 (INDUCED). INDUCED gives critical-line states
unit norm when K(1) = 1, and is the default. The closed route goes through
the pole-free M(z) = pi zeta(z)/Gamma(1-z); the integral route goes
through the Mellin quadratures and never calls zeta or Gamma.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import complexfn
from .errors import DomainError, SingularJacobian
from .quadrature import sin_mellin

__all__ = [
    "SignConvention",
    "Route",
    "KernelParams",
    "MetricValue",
    "metric_argument",
    "kernel_K",
    "metric_closed",
    "metric_integral",
    "g_closed",
    "crossing_check",
    "hermiticity_residual",
    "jacobian_weight",
    "full_metric_entry",
]


class SignConvention(enum.Enum):
    INNER = 1
    INDUCED = -1


class Route(enum.Enum):
    CLOSED = "closed"
    INTEGRAL = "integral"


@dataclass(frozen=True)
class KernelParams:
    alpha: float = 0.0
    sign_convention: SignConvention = SignConvention.INDUCED

    def __post_init__(self):
        if not self.alpha >= 0:
            raise DomainError("alpha must be non-negative")

    @property
    def sign(self) -> float:
        return float(self.sign_convention.value)


DEFAULT_KERNEL = KernelParams()


@dataclass(frozen=True)
class MetricValue:
    g: complex
    route: Route
    error_estimate: float


def metric_argument(z1: complex, z2: complex) -> complex:
    return complex(z1).conjugate() + complex(z2)


def kernel_K(z12: complex, params: KernelParams = DEFAULT_KERNEL) -> float:
    z12 = complex(z12)
    return math.exp(-params.alpha * (z12.real**2 + z12.imag**2))


def g_closed(z12: complex, params: KernelParams = DEFAULT_KERNEL) -> complex:
    """G as a function of the single argument z12 (closed route)."""
    k = kernel_K(z12, params)
    if k == 0.0:
        return 0j
    return params.sign * k / math.pi * complexfn.metric_product_M(z12)


def metric_closed(
    z1: complex, z2: complex, params: KernelParams = DEFAULT_KERNEL
) -> MetricValue:
    z12 = metric_argument(z1, z2)
    g = g_closed(z12, params)
    # nominal: the special functions carry ~1e-13 relative error
    return MetricValue(g, Route.CLOSED, 1e-12 * max(abs(g), kernel_K(z12, params)))


def metric_integral(
    z1: complex,
    z2: complex,
    params: KernelParams = DEFAULT_KERNEL,
    tol: float = 1e-13,
) -> MetricValue:
    """G(z1, z2) with Gamma*zeta replaced by a Mellin quadrature; Re z12 > 0."""
    z12 = metric_argument(z1, z2)
    if not z12.real > 0:
        raise DomainError("metric_integral needs Re(conj(z1) + z2) > 0")
    k = kernel_K(z12, params)
    if k == 0.0:
        return MetricValue(0j, Route.INTEGRAL, 0.0)
    res = sin_mellin(z12, tol)
    scale = k / math.pi
    return MetricValue(params.sign * scale * res.value, Route.INTEGRAL, scale * res.error_estimate)


def crossing_check(
    z1: complex, z2: complex, params: KernelParams = DEFAULT_KERNEL
) -> float:
    """|<Psi_z1|Psi_z2> - <Psi_0|Psi_{conj(z1)+z2}>|."""
    lhs = metric_closed(z1, z2, params).g
    rhs = metric_closed(0.0, metric_argument(z1, z2), params).g
    return abs(lhs - rhs)


def hermiticity_residual(
    z1: complex,
    z2: complex,
    params: KernelParams = DEFAULT_KERNEL,
    route: Route = Route.CLOSED,
) -> float:
    """|<Psi_z1|Psi_z2> - conj(<Psi_z2|Psi_z1>)| on the chosen route."""
    pair = metric_closed if route is Route.CLOSED else metric_integral
    a = pair(z1, z2, params).g
    b = pair(z2, z1, params).g
    return abs(a - b.conjugate())


def jacobian_weight(s: complex) -> float:
    """D(s) = 1/sqrt(det) with det = |zeta'(s)|^2, the Jacobian of s -> zeta(s)."""
    d = abs(complexfn.zeta_prime(s))
    if d < 1e-12:
        raise SingularJacobian(f"|zeta'({s})| = {d:.3g} below 1e-12")
    return 1.0 / d


def full_metric_entry(
    s1: complex, s2: complex, params: KernelParams = DEFAULT_KERNEL
) -> complex:
    """D(s1) G(s1, s2) D(s2)."""
    return jacobian_weight(s1) * metric_closed(s1, s2, params).g * jacobian_weight(s2)
