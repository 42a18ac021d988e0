"""Scaling eigenfunctions Psi_s(t) = t^s F(t) and the operators acting on them.

F(t)^2 = e^{-t} / (1 - e^{-t}) and V = t F'/F. The operators are

    L0 = t d/dt,   D = L0 + V,   D+ = -L0 + V,   L_z = t^z D+,

Psi_s is an eigenfunction of D+ for every complex s. Because
L0 t^s = s t^s, its eigenvalue is -s (``dplus_eigenvalue``), while
D Psi_s = (s + 2V) Psi_s. The residual functions check these identities
with central differences taken in log t, so the step is relative to t.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = [
    "T_MIN",
    "T_MAX",
    "eval_F",
    "eval_V",
    "psi",
    "apply_L0",
    "apply_dplus",
    "apply_d",
    "dplus_eigenvalue",
    "dplus_residual",
    "d_action_identity",
    "conformal_apply",
    "conformal_residual",
]

T_MIN = 1e-8
T_MAX = 700.0
FD_STEP = 1e-6


def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)):
        raise DomainError("t must be strictly positive")
    return t


def _log_F(t):
    # log F = -(t + log(1 - e^{-t}))/2 = -log(expm1(t))/2
    small = t <= 30.0
    out = np.empty_like(t)
    out[small] = -0.5 * np.log(np.expm1(t[small]))
    big = t[~small]
    out[~small] = -0.5 * (big + np.log1p(-np.exp(-big)))
    return out


def eval_F(t):
    """F(t) = sqrt(e^{-t}/(1 - e^{-t})) for t > 0."""
    arr = _check_t(t)
    out = np.exp(_log_F(np.atleast_1d(arr)))
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def eval_V(t):
    """V(t) = t F'(t)/F(t) = -(t/2)/(1 - e^{-t})."""
    arr = _check_t(t)
    a = np.atleast_1d(arr)
    out = -0.5 * a / -np.expm1(-a)
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def psi(s: complex, t):
    """Psi_s(t) = t^s F(t), evaluated in log space on [T_MIN, T_MAX]."""
    arr = _check_t(t)
    a = np.atleast_1d(arr)
    if np.any((a < T_MIN) | (a > T_MAX)):
        raise DomainError(f"t outside [{T_MIN}, {T_MAX}]")
    out = np.exp(complex(s) * np.log(a) + _log_F(a))
    return complex(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def apply_L0(f, t: float, h: float = FD_STEP) -> complex:
    """(t d/dt f)(t) by a central difference in log t."""
    return (complex(f(t * math.exp(h))) - complex(f(t * math.exp(-h)))) / (2.0 * h)


def apply_dplus(f, t: float) -> complex:
    return -apply_L0(f, t) + eval_V(t) * complex(f(t))


def apply_d(f, t: float) -> complex:
    return apply_L0(f, t) + eval_V(t) * complex(f(t))


def dplus_eigenvalue(s: complex) -> complex:
    """Eigenvalue of D+ on Psi_s = t^s F."""
    return -complex(s)


def dplus_residual(s: complex, t: float, eigenvalue: complex | None = None) -> float:
    """|D+ Psi_s(t) - lam Psi_s(t)|, D+ applied numerically.

    ``lam`` defaults to the label s itself; pass ``dplus_eigenvalue(s)``
    to test against the eigenvalue D+ actually has.
    """
    lam = complex(s) if eigenvalue is None else complex(eigenvalue)

    def f(x):
        return psi(s, x)
    return abs(apply_dplus(f, t) - lam * psi(s, t))


def d_action_identity(s: complex, t: float) -> float:
    """|D Psi_s(t) - (s + 2V(t)) Psi_s(t)|, D applied numerically."""
    def f(x):
        return psi(s, x)
    return abs(apply_d(f, t) - (complex(s) + 2.0 * eval_V(t)) * psi(s, t))


def conformal_apply(z: complex, s: complex) -> tuple[complex, complex]:
    """Label map of L_z = t^z D+ on Psi_s, written as Psi_s -> s Psi_{s+z}.

    Returns (coefficient, new label). Pointwise the operator gives
    t^z D+ Psi_s = dplus_eigenvalue(s) Psi_{s+z} = -s Psi_{s+z}; the label
    shift is the same either way.
    """
    s = complex(s)
    return s, s + complex(z)


def conformal_residual(
    z: complex, s: complex, t: float, coefficient: complex | None = None
) -> float:
    """|t^z (D+ Psi_s)(t) - c Psi_{s+z}(t)|.

    ``c`` defaults to the coefficient returned by ``conformal_apply``.
    """
    def f(x):
        return psi(s, x)
    coef, label = conformal_apply(z, s)
    if coefficient is not None:
        coef = complex(coefficient)
    lhs = t ** complex(z) * apply_dplus(f, t)
    return abs(lhs - coef * psi(label, t))
