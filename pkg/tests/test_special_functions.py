import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epstein.errors import BranchCutError, ConvergenceError, DomainError
from epstein.special_functions import (
    agm,
    agm_array,
    bessel_k_half,
    catalan,
    dirichlet_beta,
    elliptic_k,
    elliptic_k_complement,
    zeta_int,
)

mp.mp.dps = 30


def test_agm_real():
    assert agm(1.0, math.sqrt(2.0)) == pytest.approx(float(mp.agm(1, mp.sqrt(2))), rel=1e-15)


def test_agm_rejects_opposite_signs():
    with pytest.raises(DomainError):
        agm(1.0, -1.0)


def test_agm_array_matches_scalar():
    b = np.array([0.3, 0.7 + 0.2j, 2.0 - 1.0j])
    got = agm_array(1.0, b)
    for g, bb in zip(got, b):
        assert abs(g - agm(1.0, complex(bb))) < 1e-15


def test_k_at_zero_and_half():
    assert elliptic_k(0.0) == pytest.approx(math.pi / 2, rel=1e-16)
    assert elliptic_k(0.5) == pytest.approx(float(mp.ellipk(0.5)), rel=1e-15)


@pytest.mark.parametrize("t", [0.3 + 0.4j, -2.0, -0.5 + 3j, 0.99 - 0.01j, 5.0 + 1e-3j])
def test_k_complex_against_mpmath(t):
    assert abs(elliptic_k(t) - complex(mp.ellipk(t))) < 1e-14 * abs(complex(mp.ellipk(t)))


@pytest.mark.parametrize("t", [1.0, 1.5, 20.0])
def test_k_branch_cut(t):
    with pytest.raises(BranchCutError):
        elliptic_k(t)


def test_complement_small_t():
    # K(sqrt(1-t)) ~ log(16/t)/2 near t = 0; forming 1 - t would lose it all
    t = 1e-30
    with mp.workdps(80):
        ref = float(mp.ellipk(1 - mp.mpf(t)))
    assert elliptic_k_complement(t) == pytest.approx(ref, rel=1e-14)
    with pytest.raises(BranchCutError):
        elliptic_k_complement(0.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-12, 1 - 1e-9))
def test_k_real_interval(t):
    assert elliptic_k(t) == pytest.approx(float(mp.ellipk(t)), rel=5e-15)
    assert elliptic_k_complement(t) == pytest.approx(float(mp.ellipk(1 - mp.mpf(t))), rel=5e-15)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 9), st.floats(0.05, 60.0))
def test_bessel_half(m, y):
    ref = float(mp.besselk(m + 0.5, y))
    assert bessel_k_half(m, y) == pytest.approx(ref, rel=1e-13)


def test_bessel_vectorised_and_order_zero():
    y = np.array([0.5, 1.0, 2.0])
    np.testing.assert_allclose(bessel_k_half(0, y), np.sqrt(np.pi / (2 * y)) * np.exp(-y), rtol=1e-15)
    with pytest.raises(DomainError):
        bessel_k_half(-1, 1.0)


@pytest.mark.parametrize("k", range(2, 27))
def test_zeta(k):
    assert zeta_int(k) == pytest.approx(float(mp.zeta(k)), rel=1e-15)


@pytest.mark.parametrize("s", range(1, 15))
def test_beta(s):
    ref = float((mp.zeta(s, 0.25) - mp.zeta(s, 0.75)) / 4**s) if s > 1 else math.pi / 4
    assert dirichlet_beta(s) == pytest.approx(ref, rel=1e-15)


def test_catalan():
    assert catalan() == pytest.approx(float(mp.catalan), rel=1e-16)


def test_zeta_domain():
    with pytest.raises(DomainError):
        zeta_int(1)


def test_convergence_error_is_precision_error():
    from epstein.errors import PrecisionError

    assert issubclass(ConvergenceError, PrecisionError)
