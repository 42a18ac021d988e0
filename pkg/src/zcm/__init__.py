"""Coherent-state metric built on the Riemann zeta function.

Modules: complexfn (Gamma, zeta, M), quadrature (Mellin integrals),
states (Psi_s and its operators), metric (the Hermitian form), zeros
(critical-line zeros), analysis (Gram, induced metric, flow), cli.
"""
from .errors import (
    BoundaryTooClose,
    DomainError,
    NonConvergence,
    NonFiniteResult,
    NotBracketed,
    PoleError,
    SingularJacobian,
    ZcmError,
)

__version__ = "0.1.0"
