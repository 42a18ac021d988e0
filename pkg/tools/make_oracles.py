"""Regenerate tests/oracle_values.py from mpmath at 30 digits.

Independent of the package: nothing from zcm is imported here.
"""
import mpmath as mp

mp.mp.dps = 30


def c(z):
    z = mp.mpc(z)
    return complex(float(z.real), float(z.imag))


def M(s):
    s = mp.mpc(s)
    return mp.pi * mp.zeta(s) * mp.rgamma(1 - s)


def xi(s):
    return s * (s - 1) / 2 * mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)


out = {}
gam = [mp.im(mp.zetazero(k)) for k in range(1, 21)]
out["ZERO_ORDINATES"] = [float(g) for g in gam]
rho1 = mp.mpc(0.5, gam[0])
out["ZETA_PRIME_RHO1"] = c(mp.zeta(rho1, derivative=1))
out["XI_HALF"] = float(mp.re(xi(mp.mpf(0.5))))
out["F_AT_1"] = float(mp.sqrt(mp.e ** -1 / (1 - mp.e ** -1)))
out["V_AT_1"] = float(-0.5 / (1 - mp.e ** -1))
out["GAMMA_ZETA_HALF"] = float(mp.gamma(0.5) * mp.zeta(0.5))
out["INDUCED_X03"] = (float(-M(0.6).real / mp.pi), float(-M(1.4).real / mp.pi))
d12 = gam[1] - gam[0]
out["GRAM12_ALPHA0_ABS"] = float(abs(M(mp.mpc(1, d12))) / mp.pi)
# 2x2 Gram [[1, g], [conj g, 1]]: min eigenvalue 1 - |g| with |g| = e^{-a d^2} |M|/pi
tol = mp.mpf("1e-10")
out["MINIMAL_ALPHA_2"] = float(mp.log(abs(M(mp.mpc(1, d12))) / mp.pi / (1 + tol)) / d12**2)
margins = {}
for (i, j, a) in [(1, 10, 0), (1, 2, 2)]:
    d = gam[j - 1] - gam[i - 1]
    g = mp.exp(-a * d**2) * abs(M(mp.mpc(1, d))) / mp.pi
    margins[(i, j, a)] = float(1 - g**2)
out["SCHWARTZ_MARGINS"] = margins
pts = [0.3 + 2j, 0.5 + 14.134725141734695j, 2.5 - 4j, -1.5 + 3j, 1.1 + 0.5j, 0.02 + 7j]
out["SIN_MELLIN"] = {p: c(mp.sin(mp.pi * p) * mp.gamma(p) * mp.zeta(p)) for p in pts}
flow = {}
for s, a in [(0.3 + 5j, 0.2), (0.7 + 3j, -0.3), (0.2 + 8j, 0.5), (0.9 + 2j, 0.1), (0.4 + 12j, -0.5)]:
    cc = 1 - 2 * s.real
    H = mp.nsum(lambda k: mp.mpf(a) ** k / mp.factorial(k) * (-2j) * M(s + k * cc), [0, mp.inf])
    dH = mp.nsum(lambda k: mp.mpf(a) ** (k - 1) / mp.factorial(k - 1) * (-2j) * M(s + k * cc), [1, mp.inf])
    flow[(s, a)] = (c(H), c(dH))
out["FLOW"] = flow
out["M_AT_1_RICHARDSON"] = float(mp.re(M(1 + mp.mpf("1e-12"))))

print('"""Frozen reference values; regenerate with tools/make_oracles.py (mpmath, 30 digits)."""')
for k, v in out.items():
    print(f"{k} = {v!r}")
