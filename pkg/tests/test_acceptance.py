"""Acceptance criteria 1-10, one test and one PASS/FAIL line each."""
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from zcm import analysis as A
from zcm import complexfn as C
from zcm import metric as G
from zcm import states as S
from zcm import zeros as Z

from oracle_values import ZERO_ORDINATES

RHO = [complex(0.5, g) for g in ZERO_ORDINATES]
ALPHA0 = G.KernelParams(0.0, G.SignConvention.INDUCED)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}: {detail}")
    return emit


def test_criterion_1_special_functions(report):
    t0 = time.perf_counter()
    e2 = abs(complex(C.zeta(2.0)) - math.pi**2 / 6)
    e0 = abs(complex(C.zeta(0.0)) + 0.5)
    s = (np.linspace(-2, 3, 10)[:, None] + 1j * np.linspace(-50, 50, 20)[None, :]).ravel()
    rhs = 2.0**s * np.pi ** (s - 1) * np.sin(np.pi * s / 2) * C.gamma(1 - s) * C.zeta(1 - s)
    fe = float(np.max(np.abs(C.zeta(s) - rhs)))
    dt = time.perf_counter() - t0
    ok = e2 < 1e-10 and e0 < 1e-12 and fe < 1e-9 and dt < 1.0
    report(1, ok, f"|zeta(2)-pi^2/6|={e2:.2e} |zeta(0)+1/2|={e0:.2e} FE residual={fe:.2e} on {s.size} pts, {dt:.2f}s")
    assert e2 < 1e-10 and e0 < 1e-12
    assert s.size == 200 and fe < 1e-9
    assert dt < 1.0


def test_criterion_2_zeros(report):
    t0 = time.perf_counter()
    got = np.array([r.ordinate for r in Z.find_zeros(50.0)])
    err = float(np.max(np.abs(got[:10] - np.array(ZERO_ORDINATES[:10]))))
    on = Z.count_zeros_rectangle((0, 1), (0, 50))
    off = Z.count_zeros_rectangle((0.55, 0.95), (0, 100))
    dt = time.perf_counter() - t0
    ok = len(got) >= 10 and err < 1e-6 and on == 10 and off == 0 and dt < 30
    report(2, ok, f"max ordinate error={err:.2e}, strip count={on}, off-line count={off}, {dt:.2f}s")
    assert len(got) >= 10 and err < 1e-6
    assert on == 10 and off == 0
    assert dt < 30


def test_criterion_3_metric_routes(report):
    # |Im z12| <= 5 keeps |G| small enough that an absolute 1e-6 is a test of
    # the routes rather than of the last bits of a large number
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    strip = rng.uniform(0.02, 0.98, 50) + 1j * rng.uniform(-5, 5, 50)
    right = rng.uniform(1.02, 3.0, 20) + 1j * rng.uniform(-5, 5, 20)
    worst = 0.0
    for z12 in np.concatenate([strip, right]):
        a = G.metric_closed(0, z12, ALPHA0).g
        b = G.metric_integral(0, z12, ALPHA0).g
        worst = max(worst, abs(a - b))
    dt = time.perf_counter() - t0
    ok = worst < 1e-6 and dt < 60
    report(3, ok, f"max |closed - integral| = {worst:.2e} on 50 strip + 20 Re>1 points, {dt:.2f}s")
    assert worst < 1e-6
    assert dt < 60


def test_criterion_4_orthogonality(report):
    # alpha = 0: the pairing is then sin(pi rho) Gamma(rho) zeta(rho)/pi itself
    closed = [abs(G.metric_closed(0, r, ALPHA0).g) for r in RHO[:10]]
    integral = [abs(G.metric_integral(0, r, ALPHA0).g) for r in RHO[:10]]
    near = [abs(G.metric_closed(0, r + 0.01, ALPHA0).g) for r in RHO[:10]]
    ratio = max(c / n for c, n in zip(closed, near))
    zres = max(abs(complex(C.zeta(r))) for r in RHO[:10])
    worst = max(closed + integral)
    ok = worst < 1e-8
    report(
        4,
        ok,
        f"alpha=0 max |<Psi_0|Psi_rho>| closed={max(closed):.2e} integral={max(integral):.2e} "
        f"(first zero {closed[0]:.2e}); |zeta(rho)| <= {zres:.1e}; "
        f"relative to rho+0.01: {ratio:.1e}",
    )
    assert max(closed) < 1e-8
    assert max(integral) < 1e-8


def test_criterion_5_normalization(report):
    diag = [G.metric_closed(r, r, ALPHA0).g for r in RHO[:20]]
    dev = max(abs(d - 1.0) for d in diag)
    vac = G.metric_closed(0, 0, ALPHA0).g
    target = 0.5 * G.kernel_K(0, ALPHA0)
    vdev = abs(vac - target)
    ok = dev < 1e-10 and vdev < 1e-10
    report(
        5,
        ok,
        f"max |G(rho,rho)-1|={dev:.2e} over 20 zeros; vacuum limit {vac.real:+.12g} = +K(0)/2 "
        f"(flag: positive, not the negative vacuum norm)",
    )
    assert dev < 1e-10
    assert vdev < 1e-10


def test_criterion_6_induced_metric(report):
    scan = A.det_scan(101)
    dets = np.array([m.det for m in scan])
    xs = np.array([m.x for m in scan])
    d_half = abs(A.induced_metric(0.5).det)
    d0 = abs(A.induced_metric(0.0).det + 1.0)
    d1 = abs(A.induced_metric(1.0).det + 1.0)
    neg = bool(np.all(dets[xs != 0.5] < 0))
    sym = float(np.max(np.abs(dets - dets[::-1])))
    lo, hi = A.stated_boundary_metric().eigenvalues
    eig = max(abs(lo - (-1 - math.sqrt(5)) / 2), abs(hi - (-1 + math.sqrt(5)) / 2))
    ok = d_half < 1e-10 and d0 < 1e-8 and d1 < 1e-8 and neg and sym < 1e-10 and eig < 1e-10
    report(
        6,
        ok,
        f"|det(1/2)|={d_half:.1e} |det(0)+1|={d0:.1e} |det(1)+1|={d1:.1e} "
        f"det<0 off 1/2: {neg}, symmetry {sym:.1e}, stated x=0 eigenvalue error {eig:.1e}",
    )
    assert d_half < 1e-10
    assert d0 < 1e-8 and d1 < 1e-8
    assert neg
    assert sym < 1e-10
    assert eig < 1e-10


def test_criterion_7_gram_positivity(report):
    t0 = time.perf_counter()
    margins = [A.schwartz_margin(i, j, 0.0) for i in range(1, 11) for j in range(i + 1, 11)]
    search = A.minimal_alpha_search(20, 1e-10)
    lo, hi = A.ALPHA_BRACKET
    lam = A.gram_matrix(20, search.alpha).min_eigenvalue
    dt = time.perf_counter() - t0
    ok = min(margins) < 0 and lo <= search.alpha <= hi and lam >= -1e-10 and dt < 120
    report(
        7,
        ok,
        f"{sum(m < 0 for m in margins)}/45 negative Schwartz margins at alpha=0; "
        f"minimal alpha(20)={search.alpha:.9f}, min eigenvalue there {lam:.2e}, "
        f"trace monotone {search.monotone}, {dt:.1f}s",
    )
    assert min(margins) < 0
    assert lo <= search.alpha <= hi
    assert lam >= -1e-10
    assert dt < 120


def test_criterion_8_flow(report):
    f0 = A.flow_H(RHO[0], 0.0)
    probes = [(0.3 + 5j, 0.2), (0.7 + 3j, -0.3), (0.2 + 8j, 0.5), (0.9 + 2j, 0.1), (0.4 + 12j, -0.5)]
    mism = 0.0
    for s, a in probes:
        f = A.flow_H(s, a)
        mism = max(mism, abs(f.dH_da - f.dH_da_fd) / abs(f.dH_da))
    h0, d0 = abs(f0.H), abs(f0.dH_da)
    ok = h0 < 1e-7 and d0 < 1e-7 and mism < 1e-6
    report(
        8,
        ok,
        f"|H(rho1,0)|={h0:.2e} |dH/da(rho1,0)|={d0:.2e} (bound 1e-7); "
        f"analytic vs FD max relative mismatch {mism:.2e} at 5 probes",
    )
    assert mism < 1e-6
    assert h0 < 1e-7
    assert d0 < 1e-7


def test_criterion_9_operator_identities(report):
    rng = np.random.default_rng(9)
    eig_lbl = eig_true = d_id = 0.0
    for _ in range(100):
        s = complex(rng.uniform(-3, 3), rng.uniform(-50, 50))
        t = float(rng.uniform(0.01, 30))
        norm = abs(S.psi(s, t))
        eig_lbl = max(eig_lbl, S.dplus_residual(s, t) / norm)
        eig_true = max(eig_true, S.dplus_residual(s, t, S.dplus_eigenvalue(s)) / norm)
        d_id = max(d_id, S.d_action_identity(s, t) / norm)
    ok = eig_lbl < 1e-6 and d_id < 1e-6
    report(
        9,
        ok,
        f"D+ Psi_s = s Psi_s residual {eig_lbl:.2e}; D Psi = (s + 2V) Psi residual {d_id:.2e} "
        f"(info: with eigenvalue -s the first residual is {eig_true:.2e})",
    )
    assert d_id < 1e-6
    assert eig_lbl < 1e-6


def _cli_snapshot(cwd, args):
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "zcm.cli", *args, "--out", "run"],
        cwd=cwd, env=env, capture_output=True,
    )
    assert proc.returncode == 0, proc.stderr
    out = cwd / "run"
    files = {p.name: p.read_bytes() for p in sorted(out.iterdir())}
    return proc.stdout, files


def test_criterion_10_determinism(tmp_path, report):
    runs = [
        ["zeros", "--t-max", "50"],
        ["gram", "--n", "8", "--alpha", "1"],
        ["positivity", "--n", "3"],
        ["detscan", "--grid", "101"],
        ["flow", "--grid", "5"],
        ["crossing", "--seed", "7"],
        ["hermiticity"],
        ["eval"],
    ]
    same = []
    for k, args in enumerate(runs):
        snaps = []
        for rep in range(2):
            d = tmp_path / f"{k}_{rep}"
            d.mkdir()
            snaps.append(_cli_snapshot(d, args))
        same.append(snaps[0] == snaps[1])
    ok = all(same)
    report(10, ok, f"{sum(same)}/{len(runs)} commands byte-identical on rerun")
    assert ok
