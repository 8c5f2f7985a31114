import math
from fractions import Fraction

import mpmath as mp
import pytest

from epstein import eichler_integrals as ei
from epstein.epstein_core import epstein_levelN, epstein_ramanujan_level4
from epstein.errors import DomainError, RegionError
from epstein.quadrature import QuadratureSpec

mp.mp.dps = 30


def test_poly_helpers_exact():
    p = ei.poly(1, -2)
    assert ei.poly_mul(p, p) == (Fraction(1), Fraction(-4), Fraction(4))
    # f(1 - t) for f = 1 - 2t is 2t - 1
    assert ei.poly_reflect(p) == ei.TWO_T_MINUS_1
    assert ei.poly_eval(ei.Q3, 0.5) == pytest.approx(2 - 17 / 4)
    assert ei.poly_trim((Fraction(1), Fraction(0))) == (Fraction(1),)


@pytest.mark.parametrize("n,weight", sorted(ei.WAN_ZUCKER_WEIGHTS.items()))
def test_weights_have_the_right_parity(n, weight):
    # the weight multiplying K'^(2n) must be symmetric or antisymmetric under t -> 1-t
    assert not any(ei.parity_defect(n, weight))


def test_q_polynomials_are_in_t_one_minus_t():
    for q in (ei.Q3, ei.Q4, ei.Q6, ei.Q5_ZETA11, ei.Q5_VANISH):
        assert ei.poly_reflect(q) == q


@pytest.mark.parametrize("n", sorted(ei.ODD_ZETA_TABLE))
def test_odd_zeta_ratio(n):
    assert abs(ei.odd_zeta_integral(n) - 1) < (1e-9 if n <= 2 else 1e-8)


def test_first_odd_zeta_against_mpmath():
    # 2/7 int_0^1 K(sqrt(1-t))^2 dt = zeta(3)
    ref = mp.quad(lambda t: mp.ellipk(1 - t) ** 2, [0, 1])
    assert ei._k_power_integral(ei.ONE, 2, 0, QuadratureSpec()) == pytest.approx(float(ref), rel=1e-11)


def test_zeta11_both_orientations():
    assert abs(ei.zeta11_integral() - 1) < 1e-8
    assert abs(ei.zeta11_integral(reflected=True) - 1) < 1e-8


@pytest.mark.parametrize("key", sorted(ei.VANISHING_TABLE))
def test_vanishing(key):
    assert abs(ei.vanishing_integral(key)) < 1e-7


def test_coarse_quadrature_is_still_close():
    spec = QuadratureSpec(max_level=6, tol=1e-4)
    assert abs(ei.odd_zeta_integral(1, spec) - 1) < 1e-4


@pytest.mark.parametrize("z", [-0.2 + 0.5j, -0.35 + 0.45j, (-1 + 1j) / 2])
@pytest.mark.parametrize("s", sorted(ei.THEOREM2_TABLE))
def test_theorem2_against_series(z, s):
    a = ei.theorem2_epstein(z, s).value
    b = epstein_ramanujan_level4(z, s - 1).value
    c = epstein_levelN(-1 / (4 * z), s, 4).value
    assert abs(a - b) < 1e-8
    assert abs(a - c) < 1e-8


def test_theorem2_imaginary_part_vanishes_on_symmetry_line():
    assert abs(ei.theorem2_imag_part(-0.5 + 0.7j, 3)) < 1e-12


def test_theorem2_domain():
    with pytest.raises(RegionError):
        ei.theorem2_epstein(0.5j, 2)
    with pytest.raises(DomainError):
        ei.theorem2_epstein(-0.2 + 0.5j, 6)


@pytest.mark.parametrize("s", [2, 3, 4, 5, 7])
def test_catalan_family(s):
    assert ei.catalan_k_integrals(s).residual < 1e-8


def test_catalan_family_s2_against_mpmath():
    # int_0^{1/2} (K'^2 - K^2) dt, both with the parameter convention K(sqrt t)
    ref = mp.quad(lambda t: mp.ellipk(1 - t) ** 2 - mp.ellipk(t) ** 2, [0, 0.5])
    assert ei._k_power_integral(ei.ONE, 2, 0, QuadratureSpec(), ei.ComplexSegment(0, 0.5)) - ei._k_power_integral(
        ei.ONE, 0, 2, QuadratureSpec(), ei.ComplexSegment(0, 0.5)
    ) == pytest.approx(float(ref), rel=1e-11)


@pytest.mark.parametrize("y", [0.3, 0.7, 1.0, 2.5])
def test_eichler_ray(y):
    for r in ei.eichler_e4_check(1j * y):
        assert r.residual < 1e-10


def test_eichler_series_against_mpmath():
    y = 0.8
    ref = mp.nsum(lambda n: n**-3 / (mp.exp(2 * mp.pi * n * y) - 1), [1, mp.inf])
    assert ei.eichler_series(y) == pytest.approx(float(ref), rel=1e-14)


@pytest.mark.parametrize("y", [0.3, 0.5, 1.0, 2.0])
def test_elliptic_substitution(y):
    for r in ei.elliptic_substitution_identities(1j * y):
        assert r.residual < 1e-10, r.name


def test_odd_ray_form():
    y = 0.6
    assert ei.eichler_odd_ray_form(y) == pytest.approx(ei.odd_lambert_sum(y, -1), abs=1e-12)


def test_eichler_domains():
    with pytest.raises(DomainError):
        ei.eichler_e4_check(0.1 + 1j)
    with pytest.raises(DomainError):
        ei.elliptic_substitution_identities(5j)
    with pytest.raises(DomainError):
        ei.vanishing_integral("9")
    with pytest.raises(DomainError):
        ei.odd_zeta_integral(5)


def test_k_pair_near_one():
    k, kc = ei.k_pair(1 - 1e-20, 1e-20)
    assert math.isfinite(abs(k)) and abs(kc - math.pi / 2) < 1e-15
