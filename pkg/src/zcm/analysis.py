"""Gram matrices over critical-line zeros, positivity in alpha, the 2x2
induced metric on span{Psi_s, Psi_(1-conj s)}, and the H(s, a) flow."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import complexfn
from .errors import DomainError, NonConvergence, NotBracketed
from .metric import KernelParams, SignConvention, full_metric_entry
from .quadrature import sin_mellin
from .zeros import first_zeros

__all__ = [
    "GramMatrix",
    "AlphaSearch",
    "InducedMetric2x2",
    "FlowSample",
    "jacobi_eigvalsh",
    "gram_matrix",
    "minimal_alpha",
    "minimal_alpha_search",
    "schwartz_margin",
    "induced_metric",
    "stated_boundary_metric",
    "det_scan",
    "flow_J",
    "flow_H",
    "flow_taylor",
    "ALPHA_BRACKET",
]

ALPHA_BRACKET = (0.0, 16.0)


# -- eigenvalues --------------------------------------------------------------

def _jacobi_symmetric(a: np.ndarray, tol: float = 1e-15, max_sweeps: int = 60) -> np.ndarray:
    """Cyclic Jacobi rotations on a real symmetric matrix; returns eigenvalues."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off <= tol * scale:
            return np.sort(a.diagonal())
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(1.0, theta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
    raise NonConvergence("Jacobi iteration did not converge")


def jacobi_eigvalsh(h: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending.

    H = A + iB is embedded as the real symmetric [[A, -B], [B, A]], whose
    spectrum is that of H with every eigenvalue doubled.
    """
    h = np.asarray(h, dtype=complex)
    h = 0.5 * (h + h.conj().T)
    a, b = h.real, h.imag
    big = np.block([[a, -b], [b, a]])
    return _jacobi_symmetric(big)[::2]


# -- Gram matrices ------------------------------------------------------------

@dataclass
class GramMatrix:
    zero_indices: list
    ordinates: np.ndarray
    entries: np.ndarray
    alpha: float
    eigenvalues: np.ndarray

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


def _ordinates(n_zeros: int, ordinates=None) -> np.ndarray:
    if ordinates is None:
        ordinates = [r.ordinate for r in first_zeros(n_zeros)]
    ordinates = np.asarray(ordinates, dtype=float)
    if len(ordinates) < n_zeros:
        raise DomainError(f"zero table holds {len(ordinates)} < {n_zeros} zeros")
    return ordinates[:n_zeros]


def _gram_entries(gam: np.ndarray, alpha: float) -> np.ndarray:
    # z12 = conj(s_i) + s_j = 1 + i(gamma_j - gamma_i); divide by K(1) so
    # the kernel factor is exp(-alpha (gamma_j - gamma_i)^2)
    delta = gam[None, :] - gam[:, None]
    z12 = 1.0 + 1j * delta
    m = complexfn.metric_product_M(z12)
    sigma = float(SignConvention.INDUCED.value)
    return sigma * np.exp(-alpha * delta**2) / math.pi * m


def gram_matrix(n_zeros: int, alpha: float, ordinates=None) -> GramMatrix:
    """Gram matrix of the first n critical-line states, INDUCED sign, K(1) = 1."""
    if n_zeros < 1:
        raise DomainError("n_zeros must be >= 1")
    if not alpha >= 0:
        raise DomainError("alpha must be non-negative")
    gam = _ordinates(n_zeros, ordinates)
    g = _gram_entries(gam, alpha)
    np.fill_diagonal(g, g.diagonal().real)
    return GramMatrix(
        list(range(1, n_zeros + 1)), gam, g, float(alpha), jacobi_eigvalsh(g)
    )


@dataclass
class AlphaSearch:
    alpha: float
    min_eigenvalue: float
    trace: list = field(default_factory=list)  # (alpha, min_eigenvalue) per probe

    @property
    def monotone(self) -> bool:
        pts = sorted(self.trace)
        return all(b[1] >= a[1] for a, b in zip(pts, pts[1:]))


def minimal_alpha_search(
    n_zeros: int, tol: float = 1e-10, alpha_tol: float = 1e-9, ordinates=None
) -> AlphaSearch:
    """Bisection for the smallest alpha in [0, 16] with min eigenvalue >= -tol."""
    gam = _ordinates(n_zeros, ordinates)
    trace = []

    def probe(alpha):
        lam = float(jacobi_eigvalsh(_gram_entries(gam, alpha))[0])
        trace.append((alpha, lam))
        return lam

    lo, hi = ALPHA_BRACKET
    lam_lo = probe(lo)
    if lam_lo >= -tol:
        return AlphaSearch(lo, lam_lo, trace)
    lam_hi = probe(hi)
    if lam_hi < -tol:
        raise NotBracketed(f"Gram matrix still indefinite at alpha = {hi}")
    while hi - lo > alpha_tol:
        mid = 0.5 * (lo + hi)
        lam = probe(mid)
        if lam >= -tol:
            hi, lam_hi = mid, lam
        else:
            lo = mid
    return AlphaSearch(hi, lam_hi, trace)


def minimal_alpha(n_zeros: int, tol: float = 1e-10) -> float:
    return minimal_alpha_search(n_zeros, tol).alpha


def schwartz_margin(i: int, j: int, alpha: float, weighted: bool = False) -> float:
    """G_ii G_jj - |G_ij|^2 for zeros i, j (1-based); ``weighted`` uses D G D."""
    if i == j:
        raise DomainError("schwartz_margin needs i != j")
    if min(i, j) < 1:
        raise DomainError("zero indices start at 1")
    recs = first_zeros(max(i, j))
    si = 0.5 + 1j * recs[i - 1].ordinate
    sj = 0.5 + 1j * recs[j - 1].ordinate
    if weighted:
        params = KernelParams(alpha, SignConvention.INDUCED)
        gii = full_metric_entry(si, si, params).real
        gjj = full_metric_entry(sj, sj, params).real
        gij = full_metric_entry(si, sj, params)
        return gii * gjj - abs(gij) ** 2
    g = _gram_entries(np.array([recs[i - 1].ordinate, recs[j - 1].ordinate]), alpha)
    return float(g[0, 0].real * g[1, 1].real - abs(g[0, 1]) ** 2)


# -- induced 2x2 metric -------------------------------------------------------

@dataclass(frozen=True)
class InducedMetric2x2:
    x: float
    g11: float
    g22: float
    g12: float
    det: float
    eigenvalues: tuple
    source: str = "limit"


def _two_by_two(x, g11, g22, source):
    tr = g11 + g22
    det = g11 * g22 - 1.0
    r = math.hypot(0.5 * (g11 - g22), 1.0)
    return InducedMetric2x2(x, g11, g22, 1.0, det, (0.5 * tr - r, 0.5 * tr + r), source)


def induced_metric(x: float) -> InducedMetric2x2:
    """g11 = -M(2x)/pi, g22 = -M(2-2x)/pi, g12 = g21 = 1, for 0 <= x <= 1."""
    if not 0.0 <= x <= 1.0:
        raise DomainError("x must lie in [0, 1]")
    m = complexfn.metric_product_M(np.array([2.0 * x, 2.0 * (1.0 - x)], dtype=complex))
    g11, g22 = (-m.real / math.pi).tolist()
    return _two_by_two(float(x), g11, g22, "limit")


def stated_boundary_metric() -> InducedMetric2x2:
    """The stated x = 0 matrix [[-1, 1], [1, 0]], kept for comparison with the limit."""
    return _two_by_two(0.0, -1.0, 0.0, "stated")


def det_scan(grid_points: int) -> list[InducedMetric2x2]:
    if grid_points < 3:
        raise DomainError("grid_points must be >= 3")
    n = grid_points - 1
    return [induced_metric(k / n) for k in range(grid_points)]


# -- H(s, a) flow --------------------------------------------------------------

@dataclass(frozen=True)
class FlowSample:
    s: complex
    a: float
    H: complex
    dH_da: complex
    dH_da_fd: complex


@lru_cache(maxsize=4096)
def flow_J(w: complex, tol: float = 1e-13) -> complex:
    """Contour integral of dt/t e^{-t}/(1-e^{-t}) (-t)^w around the positive axis.

    Principal branch; equals -2i sin(pi w) Gamma(w) zeta(w), taken here
    from the quadrature route.
    """
    return -2j * sin_mellin(complex(w), tol).value


_MAX_TERMS = 80


def _flow_terms(s: complex, tol: float):
    """Taylor coefficients c_k = J(s + k(1-2x))/k! of H(s, a) in a."""
    c = 1.0 - 2.0 * s.real
    coeffs = []
    small = 0
    for k in range(_MAX_TERMS):
        ck = flow_J(s + k * c, tol) / math.factorial(k)
        coeffs.append(ck)
        if k > 2 and abs(ck) * 0.5**k <= 1e-17 * max(abs(v) for v in coeffs):
            small += 1
            if small >= 3:
                return coeffs
        else:
            small = 0
    raise NonConvergence("Taylor series of H(s, a) did not settle")


def _poly(coeffs, a):
    return sum(ck * a**k for k, ck in enumerate(coeffs))


def _dpoly(coeffs, a):
    return sum(k * ck * a ** (k - 1) for k, ck in enumerate(coeffs) if k)


def flow_H(s: complex, a: float, h: float = 1e-5, tol: float = 1e-13) -> FlowSample:
    """H(s, a) = contour integral with the extra factor exp(a (-t)^{1-2x}).

    Expanding the factor term by term shifts the weight by k(1-2x), so
    H = sum_k a^k/k! J(s + k(1-2x)). dH/da is returned twice: from the
    shifted series (analytic) and by a central difference in a.
    """
    s = complex(s)
    if not 0.0 < s.real < 1.0:
        raise DomainError("flow_H needs 0 < Re s < 1")
    if abs(a) > 0.5:
        raise DomainError("flow_H needs |a| <= 0.5")
    coeffs = _flow_terms(s, tol)
    H = _poly(coeffs, a)
    d_an = _dpoly(coeffs, a)
    d_fd = (_poly(coeffs, a + h) - _poly(coeffs, a - h)) / (2.0 * h)
    return FlowSample(s, float(a), complex(H), complex(d_an), complex(d_fd))


def flow_taylor(s: complex, order: int, tol: float = 1e-13) -> list[complex]:
    """[c_0, ..., c_order] with H(s, a) = sum c_k a^k."""
    if not 0 <= order <= 6:
        raise DomainError("order must be in [0, 6]")
    s = complex(s)
    c = 1.0 - 2.0 * s.real
    return [complex(flow_J(s + k * c, tol) / math.factorial(k)) for k in range(order + 1)]
