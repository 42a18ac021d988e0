import math

import numpy as np
import pytest

from zcm import analysis as A
from zcm import complexfn as C
from zcm.errors import DomainError, NotBracketed

from oracle_values import (
    FLOW,
    GRAM12_ALPHA0_ABS,
    INDUCED_X03,
    MINIMAL_ALPHA_2,
    SCHWARTZ_MARGINS,
    ZERO_ORDINATES,
)

RHO1 = complex(0.5, ZERO_ORDINATES[0])


# -- eigenvalues --------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_jacobi_matches_numpy(n):
    rng = np.random.default_rng(n)
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = x + x.conj().T
    assert np.allclose(A.jacobi_eigvalsh(h), np.linalg.eigvalsh(h), atol=1e-12 * np.abs(h).max())


def test_jacobi_diagonal_and_zero():
    assert np.array_equal(A.jacobi_eigvalsh(np.diag([3.0, -1.0, 2.0])), [-1.0, 2.0, 3.0])
    assert np.array_equal(A.jacobi_eigvalsh(np.zeros((3, 3))), np.zeros(3))


# -- Gram matrices ------------------------------------------------------------

def test_gram_single_zero():
    g = A.gram_matrix(1, 0.0)
    assert g.entries.shape == (1, 1)
    assert g.entries[0, 0] == pytest.approx(1.0, abs=1e-12)


def test_gram_two_alpha_zero():
    g = A.gram_matrix(2, 0.0)
    assert abs(g.entries[0, 1]) == pytest.approx(GRAM12_ALPHA0_ABS, rel=1e-10)
    assert g.hermiticity_residual() <= 1e-10 * abs(g.entries[0, 1])
    assert g.min_eigenvalue < 0


def test_gram_twenty_alpha_one():
    g = A.gram_matrix(20, 1.0)
    assert np.allclose(g.entries.diagonal(), 1.0, atol=1e-10)
    assert np.all(g.entries.diagonal().imag == 0)
    assert g.min_eigenvalue >= -1e-10
    assert g.zero_indices == list(range(1, 21))


def test_gram_domain():
    with pytest.raises(DomainError):
        A.gram_matrix(0, 1.0)
    with pytest.raises(DomainError):
        A.gram_matrix(3, -1.0)


def test_minimal_alpha_two():
    res = A.minimal_alpha_search(2)
    assert res.alpha == pytest.approx(MINIMAL_ALPHA_2, abs=1e-8)
    assert res.min_eigenvalue >= -1e-10
    assert res.monotone


def test_minimal_alpha_grows_with_n():
    assert A.minimal_alpha(6) >= A.minimal_alpha(2)


def test_not_bracketed():
    # two nearly coincident ordinates keep the pair indefinite at every alpha
    with pytest.raises(NotBracketed):
        A.minimal_alpha_search(2, ordinates=[14.0, 14.0 + 1e-9], tol=-1.0)


@pytest.mark.parametrize("key", sorted(SCHWARTZ_MARGINS))
def test_schwartz_margins(key):
    i, j, alpha = key
    ref = SCHWARTZ_MARGINS[key]
    assert A.schwartz_margin(i, j, alpha) == pytest.approx(ref, rel=1e-9)


def test_schwartz_some_negative_at_alpha_zero():
    margins = [A.schwartz_margin(i, j, 0.0) for i in range(1, 11) for j in range(i + 1, 11)]
    assert min(margins) < 0


def test_schwartz_weighted_and_domain():
    m = A.schwartz_margin(1, 2, 2.0, weighted=True)
    w = 1.0 / (abs(C.zeta_prime(RHO1)) * abs(C.zeta_prime(0.5 + 1j * ZERO_ORDINATES[1])))
    # unnormalized kernel: each diagonal entry carries K(1) = exp(-alpha)
    assert m == pytest.approx(w**2 * math.exp(-4.0), rel=1e-9)
    with pytest.raises(DomainError):
        A.schwartz_margin(3, 3, 0.0)
    with pytest.raises(DomainError):
        A.schwartz_margin(0, 3, 0.0)


# -- induced 2x2 metric -------------------------------------------------------

def test_induced_examples():
    m = A.induced_metric(0.3)
    assert (m.g11, m.g22) == pytest.approx(INDUCED_X03, rel=1e-12)
    assert m.g12 == 1.0
    half = A.induced_metric(0.5)
    assert half.g11 == pytest.approx(1.0, abs=1e-12)
    assert abs(half.det) < 1e-10
    for x in (0.0, 1.0):
        assert A.induced_metric(x).det == pytest.approx(-1.0, abs=1e-8)


def test_det_scan_properties():
    scan = A.det_scan(101)
    assert len(scan) == 101
    dets = np.array([m.det for m in scan])
    assert np.all(dets[np.arange(101) != 50] < 0)
    assert np.max(np.abs(dets - dets[::-1])) < 1e-10
    for m in scan:
        assert m.eigenvalues[0] * m.eigenvalues[1] == pytest.approx(m.det, abs=1e-12)


def test_stated_boundary_metric():
    m = A.stated_boundary_metric()
    lo, hi = m.eigenvalues
    assert lo == pytest.approx((-1 - math.sqrt(5)) / 2, abs=1e-12)
    assert hi == pytest.approx((-1 + math.sqrt(5)) / 2, abs=1e-12)
    # the limit computed here differs from the stated matrix at x = 0
    assert A.induced_metric(0.0).g11 != m.g11


def test_induced_domain():
    with pytest.raises(DomainError):
        A.induced_metric(1.2)
    with pytest.raises(DomainError):
        A.det_scan(2)


# -- flow ---------------------------------------------------------------------

@pytest.mark.parametrize("key", list(FLOW))
def test_flow_against_oracle(key):
    s, a = key
    H, dH = FLOW[key]
    f = A.flow_H(s, a)
    assert abs(f.H - H) <= 1e-9 * abs(H)
    assert abs(f.dH_da - dH) <= 1e-9 * abs(dH)
    assert abs(f.dH_da_fd - f.dH_da) <= 1e-6 * abs(f.dH_da)


def test_flow_at_zero_is_vacuum_pairing():
    s = 0.3 + 4j
    assert A.flow_H(s, 0.0).H == pytest.approx(-2j * complex(C.metric_product_M(s)), rel=1e-10)


def test_flow_taylor_on_critical_line():
    # on Re s = 1/2 the exponent 1-2x vanishes: every coefficient is J(s)/k!
    s = 0.5 + 6j
    c = A.flow_taylor(s, 4)
    for k in range(5):
        assert c[k] == pytest.approx(c[0] / math.factorial(k), rel=1e-13)


def test_flow_domain():
    with pytest.raises(DomainError):
        A.flow_H(1.2 + 1j, 0.1)
    with pytest.raises(DomainError):
        A.flow_H(0.5 + 1j, 0.6)
    with pytest.raises(DomainError):
        A.flow_taylor(0.5, 7)
