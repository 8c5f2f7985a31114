import math
import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epstein.epstein_core import (
    EvalResult,
    addition_formula_residuals,
    derivative_operator,
    epstein_fourier,
    epstein_lattice_oracle,
    epstein_level1,
    epstein_levelN,
    epstein_ramanujan_level1,
    epstein_ramanujan_level4,
    laplacian_eigencheck,
    reduce_sl2z,
)
from epstein.errors import DomainError, TruncationBudgetError

EPS = float(np.finfo(float).eps)


def mp_epstein(z, s, dps=30):
    """Fourier expansion of the real-analytic Eisenstein series in mpmath."""
    with mp.workdps(dps):
        x, y = mp.mpf(z.real), mp.mpf(z.imag)
        s = mp.mpf(s)
        phi = mp.sqrt(mp.pi) * mp.gamma(s - 0.5) / mp.gamma(s) * mp.zeta(2 * s - 1) / mp.zeta(2 * s)
        pref = 4 * mp.pi**s * mp.sqrt(y) / (mp.gamma(s) * mp.zeta(2 * s))
        acc = mp.mpf(0)
        n = 1
        while True:
            sig = sum(mp.mpf(d) ** (1 - 2 * s) for d in range(1, n + 1) if n % d == 0)
            t = n ** (s - 0.5) * sig * mp.besselk(s - 0.5, 2 * mp.pi * n * y) * mp.cos(2 * mp.pi * n * x)
            acc += t
            if 2 * mp.pi * n * y > 60 and abs(t) < mp.mpf(10) ** (-dps):
                break
            n += 1
        return float(y**s + phi * y ** (1 - s) + pref * acc)


def scale(z, s):
    y = z.imag
    c = math.sqrt(math.pi) * math.gamma(s - 0.5) / math.gamma(s) * float(mp.zeta(2 * s - 1) / mp.zeta(2 * s))
    return y**s + c * y ** (1 - s)


@pytest.mark.parametrize("z", [1j, 0.3 + 0.7j, -0.45 + 1.3j, 0.1 + 3.0j])
@pytest.mark.parametrize("s", [2, 3, 5, 8])
def test_fourier_against_mpmath(z, s):
    ref = mp_epstein(z, s)
    assert abs(epstein_fourier(z, s).value - ref) < 1e-13 * scale(z, s)


def test_catalan_value():
    assert epstein_fourier(1j, 2).value == pytest.approx(30 * float(mp.catalan) / math.pi**2, rel=1e-14)


def test_closed_form_at_i():
    # E(i, s) = 2 zeta(s) beta(s) / zeta(2s) for the square lattice
    beta = lambda s: (mp.zeta(s, 0.25) - mp.zeta(s, 0.75)) / 4**s
    for s in (3, 4, 6):
        ref = float(2 * mp.zeta(s) * beta(s) / mp.zeta(2 * s))
        assert epstein_ramanujan_level1(1j, s - 1).value == pytest.approx(ref, rel=1e-14)


@pytest.mark.parametrize("m", range(0, 7))
def test_derivative_operator_against_mpmath(m):
    op = derivative_operator(m)
    alpha, y = 2.7, 0.8

    def g(yy):
        return mp.exp(-alpha * yy)

    # apply (d/dy . 1/y) m times symbolically via mpmath differentiation
    f = g
    for _ in range(m):
        f = (lambda h: (lambda yy: mp.diff(lambda t: h(t) / t, yy)))(f)
    with mp.workdps(40):
        ref = float(f(mp.mpf(y)))
    assert float(op.apply(np.array([alpha]), y)[0]) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("m", range(0, 12))
def test_derivative_operator_is_bessel_polynomial(m):
    # c_k = (m+k)! / (2^k k! (m-k)!)
    want = tuple(math.factorial(m + k) // (2**k * math.factorial(k) * math.factorial(m - k)) for k in range(m + 1))
    assert derivative_operator(m).coefficients == want


@settings(max_examples=40, deadline=None)
@given(st.floats(-1.0, 1.0), st.floats(0.3, 4.0), st.integers(2, 8))
def test_ramanujan1_matches_fourier(x, y, s):
    z = complex(x, y)
    a = epstein_ramanujan_level1(z, s - 1).value
    b = epstein_fourier(z, s).value
    assert abs(a - b) < 1e-11 + 64 * EPS * scale(z, s)


@settings(max_examples=25, deadline=None)
@given(st.floats(-1.0, 1.0), st.floats(0.4, 3.0), st.integers(2, 6))
def test_modular_invariance(x, y, s):
    z = complex(x, y)
    f = epstein_fourier(z, s).value
    tol = 1e-11 + 64 * EPS * max(scale(z, s), scale(-1 / z, s))
    assert abs(epstein_fourier(z + 1, s).value - f) < tol
    assert abs(epstein_fourier(-1 / z, s).value - f) < tol


def test_ill_conditioned_point_is_bounded_by_scale():
    # Im z ~ 0.2 and s = 8: the constant term is ~3e4 while |E| ~ 2, so the
    # two direct methods may differ by ~eps * scale rather than 1e-11.
    z, s = -0.5736853085320646 + 0.2169742167273746j, 8
    a = epstein_ramanujan_level1(z, s - 1).value
    b = epstein_fourier(z, s).value
    ref = mp_epstein(z, s, dps=40)
    sc = scale(z, s)
    assert sc > 1e4 and abs(ref) < 10
    assert abs(a - ref) < 64 * EPS * sc
    assert abs(b - ref) < 64 * EPS * sc


@pytest.mark.parametrize("z,s", [(1j, 2), (0.3 + 0.7j, 3), (-0.2 + 1.5j, 4)])
def test_lattice_oracle_within_bound(z, s):
    r = epstein_lattice_oracle(z, s, 300)
    assert abs(r.value - epstein_fourier(z, s).value) <= r.err_estimate


def test_ramanujan4_against_levelN():
    for z in (-0.2 + 0.5j, 0.3 + 0.8j, 0.1 + 1.2j):
        for s in (2, 3, 5):
            a = epstein_ramanujan_level4(z, s - 1).value
            b = epstein_levelN(-1 / (4 * z), s, 4).value
            assert abs(a - b) < 1e-11 * max(1.0, abs(b))


@pytest.mark.parametrize("N", [2, 3, 4, 6])
def test_levelN_against_lattice_sum(N):
    # direct sum over (m, n) with N | m, divided by the same normalisation
    z, s = 0.2 + 0.9j, 3
    with mp.workdps(25):
        zz = mp.mpc(z)
        R = 60
        tot = mp.mpf(0)
        for m in range(-R, R + 1):
            if m % N:
                continue
            for n in range(-R * N, R * N + 1):
                if m == 0 and n == 0:
                    continue
                if math.gcd(m, n) != 1:
                    continue
                tot += zz.imag**s / abs(m * zz + n) ** (2 * s)
        ref = float(tot / 2)
    assert epstein_levelN(z, s, N).value == pytest.approx(ref, rel=2e-5)


def test_level1_reduction_agrees():
    z = 3.4 + 0.08j
    assert epstein_level1(z, 3).value == pytest.approx(epstein_fourier(reduce_sl2z(z), 3).value, rel=1e-15)
    w = reduce_sl2z(z)
    assert abs(w.real) <= 0.5 and abs(w) >= 1


@pytest.mark.parametrize("z", [0.13 + 0.9j, 1j, -0.3 + 0.6j])
def test_addition_formulas(z):
    for key, res in addition_formula_residuals(z, 3).items():
        assert res < 1e-11, key


def test_laplacian_is_second_order():
    r1 = laplacian_eigencheck(1j, 3, 1e-3)
    r2 = laplacian_eigencheck(1j, 3, 5e-4)
    assert r1 < 1e-5 and 3.5 < r1 / r2 < 4.5


def test_error_estimates_cover_truncation():
    z, s = 0.2 + 0.6j, 4
    ref = epstein_fourier(z, s).value
    for n in (1, 2, 3, 5):
        r = epstein_fourier(z, s, n_max=n)
        assert abs(r.value - ref) <= r.err_estimate + 1e-15
        r = epstein_ramanujan_level1(z, s - 1, n_max=n)
        assert abs(r.value - ref) <= r.err_estimate + 1e-15


def test_domain_errors():
    with pytest.raises(DomainError):
        epstein_fourier(1j, 1)
    with pytest.raises(DomainError):
        epstein_fourier(1j, 2.5)
    with pytest.raises(DomainError):
        epstein_fourier(-1j, 2)
    with pytest.raises(DomainError):
        epstein_ramanujan_level1(1j, 0)
    with pytest.raises(DomainError):
        epstein_lattice_oracle(1j, 2, 5)
    with pytest.raises(DomainError):
        epstein_levelN(1j, 2, 0)
    with pytest.raises((DomainError, TruncationBudgetError)):
        epstein_fourier(1e-6j, 2)


def test_eval_result_validation():
    with pytest.raises(ValueError):
        EvalResult(1.0, -1.0, 1, "fourier")
    with pytest.raises(ValueError):
        EvalResult(1.0, 0.0, 1, "magic")
    assert float(EvalResult(2.5, 0.0, 1, "fourier")) == 2.5
