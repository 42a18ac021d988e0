"""Adaptive quadrature on the real line and Mellin integrals of 1/(e^t - 1).

Contour integrals around the positive real t-axis are evaluated in the
logarithmic variable u = log t, where the measure dt/t becomes du and the
kernel becomes 1/(exp(e^u) - 1). Three routes give Gamma(w) zeta(w):

* ``mellin_family``       Re w > 1, the plain integral over the u-line
* ``mellin_regularized``  0 < Re w < 1, with 1/t subtracted from the kernel
* ``mellin_continued``    any w, small-t part by its Bernoulli series and
                          the t >= 1 part by quadrature

None of them touches the Euler-Maclaurin code in ``complexfn``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .complexfn import bernoulli, sinpi
from .errors import DomainError, NonConvergence

__all__ = [
    "QuadratureDomain",
    "QuadratureResult",
    "integrate_real_line",
    "family_window",
    "bose_kernel",
    "ray_angle",
    "mellin_family",
    "mellin_regularized",
    "mellin_continued",
    "sin_mellin",
]

# Gauss-Kronrod 7/15 (QUADPACK qk15), non-negative half
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_W_KRONROD = np.concatenate([_WK[:-1], _WK[::-1]])
_W_GAUSS = np.zeros(15)
_W_GAUSS[1:7:2] = _WG[:3]
_W_GAUSS[7] = _WG[3]
_W_GAUSS[9:14:2] = _WG[2::-1]

_EPS = np.finfo(float).eps
TRUNCATION_EPS = 1e-18


@dataclass(frozen=True)
class QuadratureDomain:
    lower: float
    upper: float
    transform: str = "identity"  # "identity" | "double_exponential"

    def __post_init__(self):
        if not self.lower < self.upper:
            raise DomainError("QuadratureDomain needs lower < upper")
        if self.transform not in ("identity", "double_exponential"):
            raise DomainError(f"unknown transform {self.transform!r}")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int


# ---------------------------------------------------------------- Gauss-Kronrod

def _gk(f, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c[:, None] + h[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=np.complex128).reshape(x.shape)
    k = h * (fx @ _W_KRONROD)
    g = h * (fx @ _W_GAUSS)
    resabs = np.abs(h) * (np.abs(fx) @ _W_KRONROD)
    return k, np.abs(k - g), resabs


def _adaptive_gk(f, lo, hi, tol, rel_tol, max_panel_width, max_evals):
    n0 = 1
    if max_panel_width is not None and max_panel_width > 0:
        n0 = max(1, int(math.ceil((hi - lo) / max_panel_width)))
    edges = np.linspace(lo, hi, n0 + 1)
    a, b = edges[:-1], edges[1:]
    val, err, resabs = _gk(f, a, b)
    evals = 15 * len(a)
    while True:
        # panels already at the round-off floor cannot be improved by splitting
        floor = 10.0 * _EPS * resabs
        total = complex(np.sum(val))
        total_err = float(np.sum(np.maximum(err, floor)))
        target = max(tol, rel_tol * abs(total))
        if total_err <= target:
            return QuadratureResult(total, total_err, evals)
        split = (err > floor) & (err > target / len(a))
        if not np.any(split):
            split = err > floor
        if not np.any(split) or evals + 30 * int(split.sum()) > max_evals:
            exc = NonConvergence(
                f"integrate_real_line: error estimate {total_err:.3g} > "
                f"tolerance {target:.3g} after {evals} evaluations"
            )
            exc.partial = QuadratureResult(total, total_err, evals)
            raise exc
        mid = 0.5 * (a[split] + b[split])
        na = np.concatenate([a[split], mid])
        nb = np.concatenate([mid, b[split]])
        nv, ne, nr = _gk(f, na, nb)
        evals += 15 * len(na)
        keep = ~split
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        val = np.concatenate([val[keep], nv])
        err = np.concatenate([err[keep], ne])
        resabs = np.concatenate([resabs[keep], nr])
        order = np.argsort(a, kind="stable")
        a, b, val, err, resabs = a[order], b[order], val[order], err[order], resabs[order]


def _auto_window(f, lo, hi, eps=TRUNCATION_EPS):
    """Replace infinite ends by points where |f| has dropped below eps * scale."""
    anchor_lo = hi if math.isfinite(hi) else 0.0
    anchor_hi = lo if math.isfinite(lo) else 0.0
    if math.isinf(lo) and math.isinf(hi):
        anchor_lo = anchor_hi = 0.0
    probe = np.linspace(
        anchor_lo if math.isinf(lo) else lo,
        anchor_hi if math.isinf(hi) else hi,
        33,
    )
    scale = float(np.max(np.abs(f(probe)))) or 1.0

    def walk(start, direction):
        step = 1.0
        quiet = 0
        u = start
        for _ in range(64):
            u = start + direction * step
            if abs(float(np.abs(f(np.array([u])))[0])) < eps * scale:
                quiet += 1
                if quiet == 3:
                    return u
            else:
                quiet = 0
            step *= 1.5
        raise NonConvergence("integrand does not decay; cannot truncate the domain")

    if math.isinf(lo):
        lo = walk(anchor_lo, -1.0)
    if math.isinf(hi):
        hi = walk(anchor_hi, 1.0)
    return lo, hi


# ---------------------------------------------------------------- double exponential

def _de_rule(lo, hi):
    """Node map x(v) and weight x'(v) for the double-exponential substitution."""
    if math.isfinite(lo) and math.isfinite(hi):
        c, h = 0.5 * (lo + hi), 0.5 * (hi - lo)

        def xmap(v):
            u = 0.5 * math.pi * np.sinh(v)
            # distance to the nearer endpoint, computed without cancellation
            d = h * np.exp(-np.abs(u)) / np.cosh(u)
            x = np.where(v >= 0, hi - d, lo + d)
            w = h * 0.5 * math.pi * np.cosh(v) / np.cosh(u) ** 2
            return x, w

        vmax = 3.2
    elif math.isinf(lo) and math.isinf(hi):

        def xmap(v):
            u = 0.5 * math.pi * np.sinh(v)
            return np.sinh(u), 0.5 * math.pi * np.cosh(v) * np.cosh(u)

        vmax = math.asinh(2.0 / math.pi * math.asinh(700.0))
    else:
        a = lo if math.isfinite(lo) else hi
        sgn = 1.0 if math.isfinite(lo) else -1.0

        def xmap(v):
            e = np.exp(0.5 * math.pi * np.sinh(v))
            return a + sgn * e, 0.5 * math.pi * np.cosh(v) * e

        vmax = math.asinh(2.0 / math.pi * math.log(700.0))
    return xmap, vmax


def _double_exponential(f, lo, hi, tol, rel_tol, max_evals):
    xmap, vmax = _de_rule(lo, hi)
    step = 0.5
    v = np.arange(-vmax, vmax + 0.5 * step, step)
    x, w = xmap(v)
    fx = np.asarray(f(x), dtype=np.complex128)
    fx[~np.isfinite(fx)] = 0.0
    total = step * complex(np.sum(w * fx))
    evals = len(v)
    while True:
        step *= 0.5
        vnew = np.arange(-vmax + step, vmax, 2 * step)
        x, w = xmap(vnew)
        fx = np.asarray(f(x), dtype=np.complex128)
        fx[~np.isfinite(fx)] = 0.0
        evals += len(vnew)
        new = 0.5 * total + step * complex(np.sum(w * fx))
        err = abs(new - total)
        total = new
        if err <= max(tol, rel_tol * abs(total)):
            return QuadratureResult(total, err, evals)
        if evals * 2 > max_evals:
            exc = NonConvergence(
                f"double-exponential rule: error estimate {err:.3g} > "
                f"tolerance {tol:.3g} after {evals} evaluations"
            )
            exc.partial = QuadratureResult(total, err, evals)
            raise exc


def integrate_real_line(
    f: Callable[[np.ndarray], np.ndarray],
    domain: QuadratureDomain,
    tol: float = 1e-12,
    *,
    rel_tol: float = 0.0,
    max_panel_width: float | None = None,
    window: tuple[float, float] | None = None,
    max_evals: int = 2_000_000,
) -> QuadratureResult:
    """Integrate a vectorised complex integrand over ``domain``.

    With the identity transform, infinite ends are cut at ``window`` (or
    at an automatically located point where the integrand has decayed by
    eighteen orders of magnitude) and the result is built from adaptive
    Gauss-Kronrod 7/15 panels. ``max_panel_width`` bounds the phase change
    per panel for oscillatory integrands. Raises NonConvergence when the
    error estimate stays above ``max(tol, rel_tol*|value|)``.
    """
    lo, hi = domain.lower, domain.upper
    if domain.transform == "double_exponential":
        return _double_exponential(f, lo, hi, tol, rel_tol, max_evals)
    if window is not None:
        lo = window[0] if math.isinf(lo) else lo
        hi = window[1] if math.isinf(hi) else hi
    if math.isinf(lo) or math.isinf(hi):
        lo, hi = _auto_window(f, lo, hi)
    return _adaptive_gk(f, lo, hi, tol, rel_tol, max_panel_width, max_evals)


# ---------------------------------------------------------------- Bose-type integrand family

def bose_kernel(u):
    """1/(exp(e^u) - 1), i.e. F(t)^2 at t = e^u."""
    t = np.exp(u)
    with np.errstate(over="ignore"):
        return 1.0 / np.expm1(t)


# t/(e^t - 1) = sum B_n t^n / n!, so 1/(e^t-1) - 1/t = sum_{n>=1} B_n t^{n-1}/n!
_BOSE_SERIES = np.array([bernoulli(n) / math.factorial(n) for n in range(1, 24)])
_CONTINUED_SERIES = np.array([bernoulli(n) / math.factorial(n) for n in range(0, 60)])


def _ray_t(u, phi):
    t = np.exp(u)
    return t * complex(math.cos(phi), math.sin(phi)) if phi else t


def _bose_ray(u, phi=0.0):
    """1/(e^t - 1) at t = e^{u + i phi}."""
    t = _ray_t(u, phi)
    out = np.zeros_like(t)
    live = np.real(t) < 700.0
    with np.errstate(over="ignore"):
        out[live] = 1.0 / np.expm1(t[live])
    return out


def _bose_minus_pole(u, phi=0.0):
    """1/(e^t - 1) - 1/t at t = e^{u + i phi}, by its Taylor series near 0."""
    t = _ray_t(u, phi)
    out = np.empty_like(t)
    small = np.abs(t) < 0.5
    ts = t[small]
    acc = np.zeros_like(ts)
    for c in _BOSE_SERIES[::-1]:
        acc = acc * ts + c
    out[small] = acc
    tb = t[~small]
    live = np.real(tb) < 700.0
    big = -1.0 / tb
    with np.errstate(over="ignore"):
        big[live] += 1.0 / np.expm1(tb[live])
    out[~small] = big
    return out


def family_window(
    x: float, left_rate: float, eps: float = TRUNCATION_EPS, decay: float = 1.0
):
    """Truncation window [L-, L+] in u for integrands ~ e^{x u} / (exp(e^u) - 1).

    On the right the kernel decays like exp(-decay e^u); L+ solves
    e^{x u} exp(-decay e^u) = eps. On the left the integrand decays like
    e^{left_rate u} and L- solves e^{left_rate L-} = eps * left_rate.
    """
    if left_rate <= 0:
        raise DomainError("left decay rate must be positive")
    if not 0 < decay <= 1:
        raise DomainError("decay must lie in (0, 1]")
    t = 45.0 / decay
    for _ in range(50):
        t = (-math.log(eps) + max(x, 0.0) * math.log(t)) / decay
    upper = math.log(t)
    lower = math.log(eps * min(left_rate, 1.0)) / left_rate
    return lower, upper


def _phase_cap(w):
    y = abs(complex(w).imag)
    return 2.0 * math.pi / y if y > 0 else None


def ray_angle(w: complex) -> float:
    """Rotation of the Mellin ray t = r e^{i phi} used for weight w.

    For large |Im w| the integral along the positive axis is exponentially
    smaller than its integrand and the value is lost to cancellation.
    Turning the ray towards the imaginary axis (never reaching the poles
    of 1/(e^t-1) at 2 pi i k) moves that smallness into the prefactor
    e^{i phi w}; the cancellation left over is about e^{delta |Im w|}
    with delta = pi/2 - |phi|. The ray never turns past arg w, the
    saddle direction of t^{w-1} e^{-t}; beyond it the integrand grows
    like cos(phi)^{-Re w}.
    """
    w = complex(w)
    y = w.imag
    if abs(y) <= 2.0:
        return 0.0
    delta = max(0.1, 3.0 / abs(y))
    phi = min(0.5 * math.pi - delta, math.atan2(abs(y), max(w.real, 0.5)))
    return math.copysign(phi, y)


def _rotated(w, res, phi, extra=0.0):
    pref = np.exp(1j * phi * w)
    return QuadratureResult(
        complex(pref * (res.value + extra)), abs(pref) * res.error_estimate, res.evaluations
    )


def mellin_family(w: complex, tol: float = 1e-13) -> QuadratureResult:
    """Gamma(w) zeta(w) = int_R e^{w u} / (exp(e^u) - 1) du for Re w > 1.

    Integrated along the ray of ``ray_angle``; ``tol`` is an absolute or
    relative bound on the ray integral, whichever is looser.
    """
    w = complex(w)
    if not w.real > 1:
        raise DomainError("mellin_family needs Re w > 1")
    phi = ray_angle(w)
    window = family_window(w.real, w.real - 1.0, decay=math.cos(phi))

    def f(u):
        return np.exp(w * u) * _bose_ray(u, phi)

    res = integrate_real_line(
        f,
        QuadratureDomain(-math.inf, math.inf),
        tol,
        rel_tol=tol,
        max_panel_width=_phase_cap(w),
        window=window,
    )
    return _rotated(w, res, phi)


def mellin_regularized(s: complex, tol: float = 1e-13) -> complex:
    """Gamma(s) zeta(s) = int_0^inf (1/(e^t-1) - 1/t) t^{s-1} dt, 0 < Re s < 1.

    Evaluated in u = log|t| along the ray t = e^{u + i phi} on [L-, L+];
    beyond L+ only the -1/t piece is left and its tail
    e^{-i phi} e^{(s-1) L+}/(s-1) is added in closed form.
    """
    return _mellin_regularized(complex(s), tol).value


def _mellin_regularized(s, tol):
    if not 0 < s.real < 1:
        raise DomainError("mellin_regularized needs 0 < Re s < 1")
    phi = ray_angle(s)
    lower, upper = family_window(s.real, s.real, decay=math.cos(phi))

    def f(u):
        return np.exp(s * u) * _bose_minus_pole(u, phi)

    res = integrate_real_line(
        f,
        QuadratureDomain(lower, upper),
        tol,
        rel_tol=tol,
        max_panel_width=_phase_cap(s),
    )
    tail = np.exp(-1j * phi + (s - 1.0) * upper) / (s - 1.0)
    return _rotated(s, res, phi, tail)


def _continued_series(w, with_sin, phi=0.0):
    # int_0^{e^{i phi}} t^{w-1} sum_n B_n t^{n-1}/n! dt, without the common
    # factor e^{i phi w}: sum_n B_n e^{i phi (n-1)} / (n! (w + n - 1)),
    # optionally times sin(pi w) with the poles cancelled
    total = 0.0 + 0.0j
    rot = complex(math.cos(phi), math.sin(phi))
    for n, c in enumerate(_CONTINUED_SERIES):
        if c == 0.0:
            continue
        d = w + n - 1.0
        c = c * rot ** (n - 1)
        if with_sin:
            # sin(pi w)/(w + n - 1) = (-1)^(1-n) pi sinc(w + n - 1)
            total += c * (-1.0) ** (n - 1) * math.pi * complex(np.sinc(d))
        else:
            total += c / d
    return total


def _bose_tail(w, tol, phi=0.0):
    # int_{e^{i phi}}^{e^{i phi} inf} t^{w-1}/(e^t-1) dt, without e^{i phi w}
    upper = family_window(w.real, 1.0, decay=math.cos(phi))[1]

    def f(u):
        return np.exp(w * u) * _bose_ray(u, phi)

    return integrate_real_line(
        f, QuadratureDomain(0.0, upper), tol, rel_tol=tol, max_panel_width=_phase_cap(w)
    )


def mellin_continued(w: complex, tol: float = 1e-13) -> complex:
    """Gamma(w) zeta(w) for any w off the poles 1, 0, -1, -3, -5, ...

    With the path of integration turned onto the ray arg t = phi,
    Gamma(w) zeta(w) = e^{i phi w} [sum_n B_n e^{i phi (n-1)}/(n!(w+n-1))
    + int_1^inf r^{w-1}/(e^{r e^{i phi}}-1) dr]; phi = 0 is the plain split at t = 1.
    """
    w = complex(w)
    for n, c in enumerate(_CONTINUED_SERIES):
        if c != 0.0 and w == 1.0 - n:
            raise DomainError(f"Gamma*zeta has a pole at w = {1 - n}")
    phi = ray_angle(w)
    tail = _bose_tail(w, tol, phi).value
    return complex(np.exp(1j * phi * w) * (_continued_series(w, False, phi) + tail))


def sin_mellin(w: complex, tol: float = 1e-13) -> QuadratureResult:
    """sin(pi w) Gamma(w) zeta(w) by quadrature, routed by Re w.

    0.05 <= Re w < 1 uses the regularized integral, Re w >= 1.25 the plain
    family integral, and everything else the continued representation,
    where the removable singularities are cancelled term by term.
    """
    w = complex(w)
    sw = complex(sinpi(w))
    x = w.real
    if 0.05 <= x < 1.0:
        r = _mellin_regularized(w, tol)
        return QuadratureResult(sw * r.value, abs(sw) * r.error_estimate, r.evaluations)
    if x >= 1.25:
        r = mellin_family(w, tol)
        return QuadratureResult(sw * r.value, abs(sw) * r.error_estimate, r.evaluations)
    phi = ray_angle(w)
    pref = np.exp(1j * phi * w)
    r = _bose_tail(w, tol, phi)
    value = pref * (_continued_series(w, True, phi) + sw * r.value)
    return QuadratureResult(complex(value), abs(pref * sw) * r.error_estimate, r.evaluations)
