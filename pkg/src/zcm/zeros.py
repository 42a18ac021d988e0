"""Critical-line zeros: sign scan of xi, bisection, rectangle counts, zero table cache."""
from __future__ import annotations

import csv
import hashlib
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import complexfn
from .errors import BoundaryTooClose, DomainError, NonConvergence

__all__ = [
    "ZeroRecord",
    "RectangleCount",
    "T_LIMIT",
    "SCAN_PITCH",
    "real_xi",
    "find_zeros",
    "count_zeros_rectangle",
    "write_zeros_csv",
    "read_zeros_csv",
    "zero_cache_path",
    "zeros_up_to",
    "first_zeros",
]

T_LIMIT = 500.0
SCAN_PITCH = 0.05
_LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class ZeroRecord:
    index: int
    ordinate: float
    residual: float


@dataclass(frozen=True)
class RectangleCount:
    re_range: tuple
    im_range: tuple
    count: int


def real_xi(t, scaled: bool = False):
    """xi(1/2 + it), real for real t.

    With ``scaled`` the value is multiplied by exp(pi |t| / 4), which keeps
    it O(t^c) on the scanning range; the sign is unchanged.
    """
    arr = np.asarray(t, dtype=float)
    tt = np.atleast_1d(arr)
    s = 0.5 + 1j * tt
    log_fac = -0.5 * s * _LOG_PI + complexfn.loggamma(0.5 * s)
    if scaled:
        log_fac = log_fac + 0.25 * math.pi * np.abs(tt)
    # s(s-1) = -(t^2 + 1/4) on the line
    val = -0.5 * (tt**2 + 0.25) * np.exp(log_fac) * complexfn.zeta(s)
    out = np.real(val)
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def _bisect(lo, hi, f_lo, n_iter=80):
    lo = lo.copy()
    hi = hi.copy()
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        active = (mid > lo) & (mid < hi)
        if not active.any():
            break
        f_mid = real_xi(mid, scaled=True)
        same = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(active & same, mid, lo)
        f_lo = np.where(active & same, f_mid, f_lo)
        hi = np.where(active & ~same, mid, hi)
    return 0.5 * (lo + hi), hi - lo


def find_zeros(t_max: float, pitch: float = SCAN_PITCH) -> list[ZeroRecord]:
    """Zeros 1/2 + i gamma with 0 < gamma <= t_max, refined to full precision."""
    if not t_max <= T_LIMIT:
        raise DomainError(f"t_max must be <= {T_LIMIT}")
    if t_max <= 0:
        return []
    n = int(math.ceil(t_max / pitch))
    grid = np.arange(n + 1) * pitch
    grid[-1] = min(grid[-1], t_max)
    vals = real_xi(grid, scaled=True)
    idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    exact = np.nonzero(vals[1:] == 0.0)[0] + 1
    roots, width = _bisect(grid[idx], grid[idx + 1], vals[idx])
    if np.any(width > 1e-9):
        raise NonConvergence("bisection did not reach |dgamma| < 1e-9")
    ordinates = np.sort(np.concatenate([roots, grid[exact]]))
    ordinates = ordinates[(ordinates > 0) & (ordinates <= t_max)]
    resid = np.abs(complexfn.zeta(0.5 + 1j * ordinates)) if len(ordinates) else []
    return [
        ZeroRecord(k + 1, float(g), float(r))
        for k, (g, r) in enumerate(zip(ordinates, resid))
    ]


# -- argument principle -------------------------------------------------------

def _edge_phase(f, a: complex, b: complex, h0: float, min_step: float) -> float:
    """Total change of arg f along the segment a -> b with adaptive refinement."""
    length = abs(b - a)
    n = max(2, int(math.ceil(length / h0)) + 1)
    p = np.linspace(0.0, 1.0, n)
    vals = f(a + (b - a) * p)
    while True:
        d = np.angle(vals[1:] / vals[:-1])
        gap = (p[1:] - p[:-1]) * length
        bad = (np.abs(d) > math.pi / 4) & (gap > min_step)
        if not bad.any():
            break
        mids = 0.5 * (p[:-1][bad] + p[1:][bad])
        new_vals = f(a + (b - a) * mids)
        p = np.concatenate([p, mids])
        vals = np.concatenate([vals, new_vals])
        order = np.argsort(p, kind="stable")
        p, vals = p[order], vals[order]
    if np.any(np.abs(d) > math.pi / 2):
        raise BoundaryTooClose(f"phase step > pi/2 on edge {a} -> {b}")
    return float(d.sum())


def count_zeros_rectangle(
    re_range, im_range, step: float = 0.05, min_step: float = 1e-6
) -> int:
    """Zeros of zeta in [re0, re1] x [im0, im1] by the argument principle.

    The winding is taken for (s - 1) zeta(s), which is entire and has the
    same zeros, so the boundary may pass through s = 1.
    """
    x0, x1 = map(float, re_range)
    y0, y1 = map(float, im_range)
    if not (x0 < x1 and y0 < y1):
        raise DomainError("rectangle must have positive width and height")
    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]

    def f(s):
        v = complexfn.zeta_times_sm1(s)
        if np.any(np.abs(v) < 1e-300):
            raise BoundaryTooClose("zero on the rectangle boundary")
        return v

    total = sum(
        _edge_phase(f, corners[k], corners[(k + 1) % 4], step, min_step)
        for k in range(4)
    )
    winding = total / (2.0 * math.pi)
    count = round(winding)
    if abs(winding - count) > 1e-6:
        raise NonConvergence(f"winding {winding} not an integer")
    return int(count)


# -- persisted zero table -----------------------------------------------------

def write_zeros_csv(records, path, digits: int | None = 12) -> None:
    """Write ``index,ordinate,residual``; digits=None writes round-trip precision."""
    fmt = "%.17g" if digits is None else f"%.{digits}g"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "ordinate", "residual"])
        for r in records:
            w.writerow([r.index, fmt % r.ordinate, "%.3e" % r.residual])


def read_zeros_csv(path) -> list[ZeroRecord]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [ZeroRecord(int(r["index"]), float(r["ordinate"]), float(r["residual"])) for r in rows]


def zero_cache_path() -> Path:
    env = os.environ.get("ZCM_ZERO_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "zcm" / "zeros.csv"


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _load_cache(path: Path, t_max: float):
    meta_path = path.with_name(path.name + ".json")
    try:
        meta = json.loads(meta_path.read_text())
        if meta.get("sha256") != _sha256(path) or meta.get("t_max", 0) < t_max:
            return None
        return [r for r in read_zeros_csv(path) if r.ordinate <= t_max]
    except (OSError, ValueError, KeyError):
        return None


def _store_cache(path: Path, records, t_max: float) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + ".tmp")
        write_zeros_csv(records, tmp, digits=None)
        os.replace(tmp, path)
        meta = {"sha256": _sha256(path), "t_max": t_max, "pitch": SCAN_PITCH}
        path.with_name(path.name + ".json").write_text(json.dumps(meta, sort_keys=True))
    except OSError:
        pass  # cache is an optimisation only


def zeros_up_to(t_max: float, use_cache: bool = True) -> list[ZeroRecord]:
    """find_zeros(t_max) through the checksummed CSV cache."""
    path = zero_cache_path()
    if use_cache:
        hit = _load_cache(path, t_max)
        if hit is not None:
            return hit
    records = find_zeros(t_max)
    if use_cache:
        _store_cache(path, records, t_max)
    return records


def _count_estimate(t: float) -> float:
    # smooth part of the zero counting function
    x = t / (2 * math.pi)
    return x * math.log(x / math.e) + 7.0 / 8.0


def first_zeros(n: int, use_cache: bool = True) -> list[ZeroRecord]:
    """The first n critical-line zeros (n <= number of zeros below T_LIMIT)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    t = 20.0
    while _count_estimate(t) < n + 3 and t < T_LIMIT:
        t *= 1.25
    t = min(math.ceil(t), T_LIMIT)
    while True:
        recs = zeros_up_to(t, use_cache)
        if len(recs) >= n:
            return recs[:n]
        if t >= T_LIMIT:
            raise DomainError(f"only {len(recs)} zeros available below {T_LIMIT}")
        t = min(t * 1.25, T_LIMIT)
