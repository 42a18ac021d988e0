"""Complex special functions in double precision.

Gamma uses a Lanczos approximation (g = 7, nine coefficients) with the
reflection formula below Re z = 1/2. Zeta uses Euler-Maclaurin summation
for Re s >= 0 and the functional equation for Re s < 0.

Every public function accepts a scalar or an array. Scalars come back as
Python ``complex``; arrays come back as ``complex128`` arrays of the same
shape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, NonConvergence, NonFiniteResult, PoleError

__all__ = [
    "PrecisionConfig",
    "DEFAULT_PRECISION",
    "gamma",
    "rgamma",
    "loggamma",
    "digamma",
    "zeta",
    "zeta_prime",
    "zeta_times_sm1",
    "metric_product_M",
    "sinpi",
    "bernoulli",
]

_LOG_2PI = math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

_LANCZOS_G = 7.0
_LANCZOS_COEF = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])

_CHUNK = 1024


@dataclass(frozen=True)
class PrecisionConfig:
    """Accuracy knobs for the Euler-Maclaurin zeta evaluator.

    ``max_terms`` caps the length of the direct Dirichlet sum. The number
    of terms actually used is derived from ``target_abs_tol`` and ``|s|``.
    """

    target_abs_tol: float = 1e-12
    max_terms: int = 4096
    euler_maclaurin_order: int = 20

    def __post_init__(self):
        if not self.target_abs_tol > 0:
            raise DomainError("target_abs_tol must be positive")
        if self.max_terms < 16:
            raise DomainError("max_terms must be at least 16")
        if self.euler_maclaurin_order < 1:
            raise DomainError("euler_maclaurin_order must be at least 1")


DEFAULT_PRECISION = PrecisionConfig()


def _bernoulli_table(n_max: int) -> list[Fraction]:
    # Akiyama-Tanigawa, exact rationals; B_1 = +1/2 convention.
    out = []
    a = [Fraction(0)] * (n_max + 1)
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


_BERNOULLI = _bernoulli_table(80)


def bernoulli(n: int) -> float:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n == 1:
        return -0.5
    return float(_BERNOULLI[n])


# B_{2k} / (2k)! for k = 1..40
_EM_COEF = np.array(
    [float(_BERNOULLI[2 * k] / math.factorial(2 * k)) for k in range(1, 41)]
)


# ---------------------------------------------------------------- helpers

def _prep(z):
    arr = np.asarray(z, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise DomainError("arguments must be finite")
    return arr, arr.ndim == 0


def _out(arr, scalar):
    if scalar:
        return complex(arr.reshape(()))
    return arr


def _check_finite(arr, name):
    if not np.all(np.isfinite(arr)):
        raise NonFiniteResult(f"{name} produced a non-finite value")


def _is_nonpos_int(z):
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def _sinpi(z):
    # sin(pi z) with the real part reduced to [-1/2, 1/2]; exact zeros at integers
    n = np.round(z.real)
    r = z - n
    sign = np.where(np.mod(n, 2) == 0, 1.0, -1.0)
    return sign * np.sin(np.pi * r)


def _log_sinpi(z):
    """A logarithm of sin(pi z), stable for large |Im z| (branch unspecified)."""
    n = np.round(z.real)
    r = z - n
    w = np.pi * r
    out = np.empty_like(w)
    small = np.abs(w.imag) <= 20.0
    with np.errstate(divide="ignore"):
        out[small] = np.log(np.sin(w[small]))
    up = ~small & (w.imag > 0)
    dn = ~small & (w.imag < 0)
    out[up] = np.log(0.5j) - 1j * w[up] + np.log1p(-np.exp(2j * w[up]))
    out[dn] = np.log(-0.5j) + 1j * w[dn] + np.log1p(-np.exp(-2j * w[dn]))
    return out + 1j * np.pi * n


def sinpi(z):
    """sin(pi z) with exact zeros at the integers."""
    arr, scalar = _prep(z)
    return _out(_sinpi(arr), scalar)


# ---------------------------------------------------------------- gamma

def _lanczos_parts(z):
    zm = z - 1.0
    k = np.arange(1, len(_LANCZOS_COEF))
    denom = zm[..., None] + k
    a = _LANCZOS_COEF[0] + np.sum(_LANCZOS_COEF[1:] / denom, axis=-1)
    da = -np.sum(_LANCZOS_COEF[1:] / denom**2, axis=-1)
    t = zm + _LANCZOS_G + 0.5
    return zm, t, a, da


def _loggamma_right(z):
    zm, t, a, _ = _lanczos_parts(z)
    return 0.5 * _LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(a)


def _loggamma(z):
    out = np.empty_like(z)
    right = z.real >= 0.5
    out[right] = _loggamma_right(z[right])
    left = ~right
    if np.any(left):
        zl = z[left]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[left] = _LOG_PI - _log_sinpi(zl) - _loggamma_right(1.0 - zl)
    return out


def loggamma(z):
    """A logarithm of Gamma(z); exp(loggamma(z)) == gamma(z).

    The imaginary part is not guaranteed to be the principal branch.
    """
    arr, scalar = _prep(z)
    flat = arr.reshape(-1)
    if np.any(_is_nonpos_int(flat)):
        raise PoleError("loggamma has poles at non-positive integers")
    out = _loggamma(flat)
    _check_finite(out, "loggamma")
    return _out(out.reshape(arr.shape), scalar)


def gamma(z):
    """Gamma(z) for complex z; raises PoleError at 0, -1, -2, ..."""
    arr, scalar = _prep(z)
    flat = arr.reshape(-1)
    if np.any(_is_nonpos_int(flat)):
        raise PoleError("gamma has poles at non-positive integers")
    with np.errstate(over="ignore"):
        out = np.exp(_loggamma(flat))
    _check_finite(out, "gamma")
    return _out(out.reshape(arr.shape), scalar)


def _rgamma(z):
    out = np.zeros_like(z)
    ok = ~_is_nonpos_int(z)
    with np.errstate(over="ignore"):
        out[ok] = np.exp(-_loggamma(z[ok]))
    return out


def rgamma(z):
    """1/Gamma(z), entire; exactly zero at the non-positive integers."""
    arr, scalar = _prep(z)
    out = _rgamma(arr.reshape(-1))
    _check_finite(out, "rgamma")
    return _out(out.reshape(arr.shape), scalar)


def _digamma(z):
    out = np.empty_like(z)
    right = z.real >= 0.5
    zr = z[right]
    zm, t, a, da = _lanczos_parts(zr)
    out[right] = np.log(t) + (zm + 0.5) / t - 1.0 + da / a
    left = ~right
    if np.any(left):
        zl = z[left]
        zm, t, a, da = _lanczos_parts(1.0 - zl)
        psi_reflected = np.log(t) + (zm + 0.5) / t - 1.0 + da / a
        out[left] = psi_reflected - np.pi * _cotpi(zl)
    return out


def _cotpi(z):
    w = np.pi * (z - np.round(z.real))
    up = w.imag >= 0
    e = np.exp(np.where(up, 2j * w, -2j * w))
    return np.where(up, -1j, 1j) * (1.0 + e) / (1.0 - e)


def digamma(z):
    """Logarithmic derivative of Gamma."""
    arr, scalar = _prep(z)
    flat = arr.reshape(-1)
    if np.any(_is_nonpos_int(flat)):
        raise PoleError("digamma has poles at non-positive integers")
    out = _digamma(flat)
    _check_finite(out, "digamma")
    return _out(out.reshape(arr.shape), scalar)


# ---------------------------------------------------------------- zeta

def _em_length(smax: float, cfg: PrecisionConfig) -> int:
    # successive tail terms shrink by (|s+2k| / (2 pi N))^2; pick N so that
    # the first neglected term sits below target_abs_tol
    m = cfg.euler_maclaurin_order
    factor = (0.5 / cfg.target_abs_tol) ** (1.0 / (2 * m))
    n = int(math.ceil(factor * (smax + 2 * m + 1) / (2 * math.pi)))
    n = max(n, 16)
    if n > cfg.max_terms:
        raise NonConvergence(
            f"Euler-Maclaurin needs {n} terms for |s|={smax:.4g}, "
            f"max_terms={cfg.max_terms}"
        )
    return n


def _em_chunk(s, cfg, derivative):
    """Euler-Maclaurin pieces for a 1-D chunk.

    Returns (S, P) with zeta(s) = S + P/(s-1), P = N^(1-s); with
    ``derivative`` also (dS, logN).
    """
    m = cfg.euler_maclaurin_order
    n_terms = _em_length(float(np.max(np.abs(s))), cfg)
    logn = np.log(np.arange(1, n_terms, dtype=float))
    terms = np.exp(-np.multiply.outer(s, logn))
    big_n = float(n_terms)
    log_big_n = math.log(big_n)
    n_pow = np.exp(-s * log_big_n)  # N^-s
    total = terms.sum(axis=1) + 0.5 * n_pow
    poch = s.copy()  # (s)_{2k-1}
    tail_pow = n_pow / big_n  # N^{-s-2k+1}
    if derivative:
        dpoch = np.ones_like(s)
        dtotal = -(terms * logn).sum(axis=1) - 0.5 * log_big_n * n_pow
    for k in range(1, m + 1):
        c = _EM_COEF[k - 1]
        total = total + c * poch * tail_pow
        if derivative:
            dtotal = dtotal + c * (dpoch - log_big_n * poch) * tail_pow
            for j in (2 * k - 1, 2 * k):
                dpoch = dpoch * (s + j) + poch
                poch = poch * (s + j)
        else:
            poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        tail_pow = tail_pow / (big_n * big_n)
    p = n_pow * big_n
    if derivative:
        return total, p, dtotal, log_big_n
    return total, p


def _em_map(s, cfg, fn):
    out = np.empty_like(s)
    order = np.argsort(np.abs(s), kind="stable")
    for start in range(0, len(s), _CHUNK):
        idx = order[start:start + _CHUNK]
        out[idx] = fn(s[idx], cfg)
    return out


def _zeta_em(s, cfg):
    def fn(chunk, cfg):
        total, p = _em_chunk(chunk, cfg, False)
        return total + p / (chunk - 1.0)
    return _em_map(s, cfg, fn)


def _zeta_sm1_em(s, cfg):
    def fn(chunk, cfg):
        total, p = _em_chunk(chunk, cfg, False)
        return (chunk - 1.0) * total + p
    return _em_map(s, cfg, fn)


def _zeta_prime_em(s, cfg):
    def fn(chunk, cfg):
        _, p, dtotal, log_n = _em_chunk(chunk, cfg, True)
        sm1 = chunk - 1.0
        return dtotal - log_n * p / sm1 - p / sm1**2
    return _em_map(s, cfg, fn)


def _chi_parts(s):
    """(2 pi)^s / pi * Gamma(1 - s) * e^{pi|Im s|/2} and scaled sin, cos of pi s/2."""
    half = 0.5 * s
    scale = np.pi * np.abs(half.imag)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        amp = np.exp(s * _LOG_2PI - _LOG_PI + _loggamma(1.0 - s) + scale)
    # sin/cos(pi s/2) * e^{-pi|Im s|/2}, computed without overflow
    w = np.pi * (half - np.round(half.real))
    n = np.round(half.real)
    sgn = np.where(np.mod(n, 2) == 0, 1.0, -1.0)
    e1 = np.exp(1j * w - np.abs(w.imag))
    e2 = np.exp(-1j * w - np.abs(w.imag))
    sin_s = sgn * (e1 - e2) / 2j
    cos_s = sgn * (e1 + e2) / 2.0
    # exact zeros of sin at the trivial zeros
    sin_s = np.where((half.imag == 0) & (half.real == n), 0.0, sin_s)
    return amp, sin_s, cos_s


def _zeta(s, cfg):
    out = np.empty_like(s)
    right = s.real >= 0
    if np.any(right):
        out[right] = _zeta_em(s[right], cfg)
    left = ~right
    if np.any(left):
        sl = s[left]
        amp, sin_s, _ = _chi_parts(sl)
        out[left] = amp * sin_s * _zeta_em(1.0 - sl, cfg)
    return out


def zeta(s, config: PrecisionConfig = DEFAULT_PRECISION):
    """Riemann zeta function; raises PoleError at s = 1."""
    arr, scalar = _prep(s)
    flat = arr.reshape(-1)
    if np.any(flat == 1.0):
        raise PoleError("zeta has a pole at s = 1")
    out = _zeta(flat, config)
    _check_finite(out, "zeta")
    return _out(out.reshape(arr.shape), scalar)


def zeta_prime(s, config: PrecisionConfig = DEFAULT_PRECISION):
    """Derivative of zeta; raises PoleError at s = 1."""
    arr, scalar = _prep(s)
    flat = arr.reshape(-1)
    if np.any(flat == 1.0):
        raise PoleError("zeta' has a pole at s = 1")
    out = np.empty_like(flat)
    right = flat.real >= 0
    if np.any(right):
        out[right] = _zeta_prime_em(flat[right], config)
    left = ~right
    if np.any(left):
        # zeta(s) = chi(s) zeta(1-s), chi(s) = (2pi)^s/pi sin(pi s/2) Gamma(1-s)
        sl = flat[left]
        amp, sin_s, cos_s = _chi_parts(sl)
        psi = _digamma(1.0 - sl)
        chi = amp * sin_s
        dchi = amp * (sin_s * (_LOG_2PI - psi) + 0.5 * np.pi * cos_s)
        out[left] = dchi * _zeta_em(1.0 - sl, config) - chi * _zeta_prime_em(
            1.0 - sl, config
        )
    _check_finite(out, "zeta_prime")
    return _out(out.reshape(arr.shape), scalar)


def zeta_times_sm1(s, config: PrecisionConfig = DEFAULT_PRECISION):
    """(s - 1) zeta(s), entire; equals 1 at s = 1."""
    arr, scalar = _prep(s)
    flat = arr.reshape(-1)
    out = np.empty_like(flat)
    right = flat.real >= 0
    if np.any(right):
        out[right] = _zeta_sm1_em(flat[right], config)
    left = ~right
    if np.any(left):
        out[left] = (flat[left] - 1.0) * _zeta(flat[left], config)
    _check_finite(out, "zeta_times_sm1")
    return _out(out.reshape(arr.shape), scalar)


def _metric_product(s, cfg):
    out = np.empty_like(s)
    # split at Re s = -1/2, not 0: on the left zeta(1 - s) must stay clear of its pole
    right = s.real >= -0.5
    if np.any(right):
        # sin(pi s) Gamma(s) zeta(s) = pi zeta(s)/Gamma(1-s) = -pi (s-1) zeta(s)/Gamma(2-s)
        sr = s[right]
        out[right] = -np.pi * _zeta_sm1_em(sr, cfg) * _rgamma(2.0 - sr)
    left = ~right
    if np.any(left):
        # functional equation: the Gamma factors cancel exactly
        sl = s[left]
        with np.errstate(over="ignore"):
            pref = np.exp(sl * _LOG_2PI)
        out[left] = pref * _sinpi(0.5 * sl) * _zeta_em(1.0 - sl, cfg)
    return out


def metric_product_M(s, config: PrecisionConfig = DEFAULT_PRECISION):
    """M(s) = sin(pi s) Gamma(s) zeta(s), evaluated pole-free.

    Computed as pi zeta(s) / Gamma(1 - s). The removable singularities are
    exact: M(0) = -pi/2, M(1) = -pi, M(n) = 0 for integers n >= 2.
    """
    arr, scalar = _prep(s)
    out = _metric_product(arr.reshape(-1), config)
    _check_finite(out, "metric_product_M")
    return _out(out.reshape(arr.shape), scalar)
