import cmath
import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epstein.errors import DomainError, RegionError, TruncationBudgetError
from epstein.modular_functions import (
    HalfPlanePoint,
    TruncationPolicy,
    dedekind_eta,
    degree2_lambda,
    eisenstein_e4,
    eisenstein_e4_lambda,
    in_fundamental_domain,
    in_theorem2_region,
    lambda_inversion_check,
    lambda_k_inverse_check,
    landen_descend,
    modular_lambda,
)

mp.mp.dps = 30


def mp_eta(z):
    z = mp.mpc(z)
    q = mp.exp(2j * mp.pi * z)
    return complex(mp.exp(1j * mp.pi * z / 12) * mp.qp(q))


def mp_lambda(z):
    qh = mp.exp(1j * mp.pi * mp.mpc(z))
    return complex((mp.jtheta(2, 0, qh) / mp.jtheta(3, 0, qh)) ** 4)


def mp_e4(z):
    qh = mp.exp(1j * mp.pi * mp.mpc(z))
    return complex((mp.jtheta(2, 0, qh) ** 8 + mp.jtheta(3, 0, qh) ** 8 + mp.jtheta(4, 0, qh) ** 8) / 2)


upper = st.builds(complex, st.floats(-1.0, 1.0), st.floats(0.3, 3.0))


@settings(max_examples=40, deadline=None)
@given(upper)
def test_eta_against_q_pochhammer(z):
    ref = mp_eta(z)
    assert abs(dedekind_eta(z) - ref) < 1e-14 * max(1.0, abs(ref))


@settings(max_examples=40, deadline=None)
@given(upper)
def test_lambda_against_theta_quotient(z):
    ref = mp_lambda(z)
    assert abs(modular_lambda(z) - ref) < 1e-12 * max(1.0, abs(ref))


@settings(max_examples=40, deadline=None)
@given(upper)
def test_e4_against_theta_form(z):
    ref = mp_e4(z)
    assert abs(eisenstein_e4(z) - ref) < 1e-12 * max(1.0, abs(ref))


def test_eta_at_i():
    ref = math.gamma(0.25) / (2 * math.pi**0.75)
    assert abs(dedekind_eta(1j) - ref) < 1e-15


def test_lambda_values():
    assert abs(modular_lambda(1j) - 0.5) < 1e-14
    # lambda(6i) ~ 16 q^(1/2) with q = e^{-12 pi}
    assert modular_lambda(6j).real == pytest.approx(complex(mp_lambda(6j)).real, rel=1e-12)
    assert modular_lambda(6j).real == pytest.approx(1.04199e-7, rel=1e-5)


def test_e4_at_i():
    ref = 3 * math.gamma(0.25) ** 8 / (2 * math.pi) ** 6
    assert abs(eisenstein_e4(1j) - ref) < 1e-13


@pytest.mark.parametrize("z", [1j, 0.3 + 0.9j, -0.6 + 0.55j, 0.6 + 0.55j, 0.1 + 2.2j])
def test_e4_lambda_closed_form(z):
    assert abs(eisenstein_e4_lambda(z) - eisenstein_e4(z)) < 1e-11 * abs(eisenstein_e4(z))


@pytest.mark.parametrize("z", [0.3 + 0.8j, -0.6 + 0.5j, 0.1 + 2.0j, 0.9 + 0.45j, 0.6 + 0.55j])
def test_lambda_k_inverse(z):
    assert lambda_k_inverse_check(z) < 1e-11


def test_lambda_k_inverse_outside_domain():
    with pytest.raises(RegionError):
        lambda_k_inverse_check(0.6 + 0.35j)


@pytest.mark.parametrize("lam", [0.3 + 0.2j, 0.5, 0.9 - 0.05j, 1e-6 + 1e-6j, -0.4 + 0.1j])
def test_landen(lam):
    for pair in landen_descend(lam):
        assert pair.residual < 1e-12 * max(1.0, abs(pair.lhs))


@pytest.mark.parametrize("lam", [-0.5, 0.0, 1.0, 2.0j])
def test_landen_domain(lam):
    with pytest.raises(DomainError):
        landen_descend(lam)


@pytest.mark.parametrize("z", [0.2 + 1.1j, -0.4 + 0.7j, 1j])
def test_degree2(z):
    for pair in degree2_lambda(z):
        assert pair.residual < 1e-12


@pytest.mark.parametrize("z", [-0.35 + 0.45j, -0.2 + 0.5j, -0.5 + 0.7j, (-1 + 1j) / 2])
def test_lambda_inversion(z):
    assert lambda_inversion_check(z).residual < 1e-12


def test_regions():
    assert in_fundamental_domain(1j)
    assert not in_fundamental_domain(0.6 + 0.35j)
    assert not in_fundamental_domain(1.2 + 1j)
    assert in_theorem2_region((-1 + 1j) / 2)
    # 2z + 1 = 1 + i sits on the boundary Re = 1
    assert not in_theorem2_region(0.5j)
    with pytest.raises(RegionError):
        lambda_inversion_check(0.5j)


@given(upper)
def test_theorem2_region_is_shifted_domain(z):
    assert in_theorem2_region(z) == in_fundamental_domain(2 * z + 1)


def test_half_plane_point():
    p = HalfPlanePoint.of(0.5 + 2j)
    assert complex(p) == 0.5 + 2j
    for bad in (1.0, -1j, complex(math.nan, 1)):
        with pytest.raises(DomainError):
            HalfPlanePoint.of(bad)


def test_eta_budget():
    with pytest.raises(TruncationBudgetError):
        dedekind_eta(0.01j)
    with pytest.raises(TruncationBudgetError):
        dedekind_eta(0.06j, TruncationPolicy(max_terms=10))
    with pytest.raises(DomainError):
        TruncationPolicy(tol=0.0)


def test_eta_modular_transformation():
    z = 0.3 + 0.8j
    assert abs(dedekind_eta(-1 / z) - cmath.sqrt(-1j * z) * dedekind_eta(z)) < 1e-14
