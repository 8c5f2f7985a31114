"""Elliptic-integral representations of level-4 Epstein zeta values.

This module carries

* the weight polynomials and constants that express
  ``E^{Gamma_0(4)}(-1/(4z), s)``, ``s in {2, 3, 4, 5, 7}``, as an integral of
  products of ``K(sqrt(t))`` and ``K(sqrt(1 - t))`` along ``[0, lambda(2z+1)]``;
* the odd-zeta, vanishing and Catalan-family integrals over ``[0, 1]`` and
  ``[0, 1/2]``;
* the Eichler integral of E4 along the imaginary axis and its elliptic
  substitution forms.

Polynomials are stored as exact rational coefficient tuples, lowest degree
first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .epstein_core import EvalResult
from .errors import DomainError, RegionError
from .modular_functions import (
    DEFAULT_POLICY,
    as_point,
    eisenstein_e4_series,
    in_theorem2_region,
    modular_lambda,
)
from .quadrature import DEFAULT_SPEC, ComplexSegment, QuadratureSpec, quad_segment
from .special_functions import dirichlet_beta, elliptic_k_complement, zeta_int

Poly = tuple[Fraction, ...]

THEOREM2_WEIGHTS = (2, 3, 4, 5, 7)


def k_pair(t, tc):
    """``(K(sqrt t), K(sqrt(1 - t)))``, each from the argument that keeps it accurate."""
    return elliptic_k_complement(tc), elliptic_k_complement(t)

# ---------------------------------------------------------------------------
# Exact polynomial helpers
# ---------------------------------------------------------------------------


def poly(*coeffs) -> Poly:
    return tuple(Fraction(c) for c in coeffs)


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def poly_add(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    n = max(len(p), len(q))
    p = list(p) + [Fraction(0)] * (n - len(p))
    q = list(q) + [Fraction(0)] * (n - len(q))
    return tuple(a + b for a, b in zip(p, q))


def poly_scale(p: Sequence[Fraction], c) -> Poly:
    return tuple(Fraction(c) * a for a in p)


def poly_reflect(p: Sequence[Fraction]) -> Poly:
    """Coefficients of ``p(1 - t)``."""
    out: Poly = (Fraction(0),)
    power: Poly = (Fraction(1),)
    one_minus_t = poly(1, -1)
    for a in p:
        out = poly_add(out, poly_scale(power, a))
        power = poly_mul(power, one_minus_t)
    return out


def poly_trim(p: Sequence[Fraction]) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_eval(p: Sequence[Fraction], t):
    acc = np.zeros_like(t) if isinstance(t, np.ndarray) else 0.0
    for a in reversed(p):
        acc = acc * t + float(a)
    return acc


def _tt() -> Poly:
    # t (1 - t)
    return poly(0, 1, -1)


def _in_tt(*coeffs) -> Poly:
    """``sum_k c_k [t(1-t)]^k``."""
    out: Poly = (Fraction(0),)
    power: Poly = (Fraction(1),)
    for c in coeffs:
        out = poly_add(out, poly_scale(power, c))
        power = poly_mul(power, _tt())
    return poly_trim(out)


ONE = poly(1)
ONE_MINUS_2T = poly(1, -2)
TWO_T_MINUS_1 = poly(-1, 2)
Q3 = _in_tt(2, -17)  # 2 - 17 t(1-t)
Q4 = _in_tt(1, -31)  # 1 - 31 t(1-t)
Q6 = _in_tt(1, -512, 5461)  # 1 - 512 t(1-t) + 5461 t^2 (1-t)^2
Q5_ZETA11 = _in_tt(2, -259, 1382)
Q5_VANISH = _in_tt(8, -1049)


# ---------------------------------------------------------------------------
# Level-4 K-integral representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Theorem2Entry:
    """Exact data for one weight ``s``.

    The integrand is ``prefactor * pi^-(2s-1) / y^(s-1) * P(t) * ...``; the
    constant term is ``zeta_coeff * zeta(2s-1) * pi^-(2s-1) / y^(s-1)``.
    """

    s: int
    weight: Poly
    prefactor: Fraction
    zeta_coeff: Fraction

    @property
    def pi_power(self) -> int:
        return 2 * self.s - 1

    def constant(self) -> float:
        return float(self.zeta_coeff) * zeta_int(2 * self.s - 1) / math.pi**self.pi_power

    def scale(self) -> float:
        return float(self.prefactor) / math.pi**self.pi_power


THEOREM2_TABLE: dict[int, Theorem2Entry] = {
    2: Theorem2Entry(2, poly_scale(ONE, 3), Fraction(1, 4), Fraction(21, 8)),
    3: Theorem2Entry(3, poly_scale(TWO_T_MINUS_1, 15), Fraction(1, 32), Fraction(1395, 256)),
    4: Theorem2Entry(4, poly_scale(Q3, 70), Fraction(1, 1088), Fraction(200025, 17408)),
    5: Theorem2Entry(
        5, poly_scale(poly_mul(TWO_T_MINUS_1, Q4), 315), Fraction(1, 15872), Fraction(50703975, 2031616)
    ),
    7: Theorem2Entry(
        7,
        poly_scale(poly_mul(TWO_T_MINUS_1, Q6), 3003),
        Fraction(1, 22368256),
        Fraction(11506129710075, 91620376576),
    ),
}


def theorem2_integrand(z: complex, s: int, scale: float = 1.0):
    """Integrand ``f(t, 1-t)`` of the level-4 K-integral representation times ``scale``."""
    entry = THEOREM2_TABLE[s]
    w = 2.0 * z + 1.0
    wbar = 2.0 * z.conjugate() + 1.0

    def f(t, tc):
        k, kc = k_pair(t, tc)
        # K^{2(s-1)} [i K'/K - w]^{s-1} [i K'/K - wbar]^{s-1}
        core = (1j * kc - w * k) * (1j * kc - wbar * k)
        return scale * poly_eval(entry.weight, t) * core ** (s - 1)

    return f


def theorem2_epstein(z, s: int, spec: QuadratureSpec = DEFAULT_SPEC) -> EvalResult:
    """``E^{Gamma_0(4)}(-1/(4z), s)`` for ``s in {2, 3, 4, 5, 7}`` by quadrature.

    The path is the straight segment from 0 to ``lambda(2z + 1)``; ``z`` must
    satisfy ``in_theorem2_region``.
    """
    z = as_point(z)
    if s not in THEOREM2_TABLE:
        raise DomainError(f"s must be one of {THEOREM2_WEIGHTS}")
    if not in_theorem2_region(z):
        raise RegionError(f"2z+1 = {2 * z + 1} is outside the lambda fundamental domain")
    entry = THEOREM2_TABLE[s]
    y = z.imag
    w = 2.0 * z + 1.0
    lam = modular_lambda(w, DEFAULT_POLICY)
    lam_c = modular_lambda(-1.0 / w, DEFAULT_POLICY)  # = 1 - lambda(w), no cancellation
    seg = ComplexSegment(0.0, lam, lam_c)
    scale = entry.scale() / y ** (s - 1)
    res = quad_segment(theorem2_integrand(z, s, scale), seg, spec)
    value = entry.constant() / y ** (s - 1) + res.value.real
    return EvalResult(float(value), res.error, res.n_evals, "eichler")


def theorem2_imag_part(z, s: int, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Imaginary part of the scaled level-4 K-integral (zero on ``Re z = -1/2``)."""
    z = as_point(z)
    entry = THEOREM2_TABLE[s]
    w = 2.0 * z + 1.0
    seg = ComplexSegment(0.0, modular_lambda(w), modular_lambda(-1.0 / w))
    res = quad_segment(theorem2_integrand(z, s, entry.scale() / z.imag ** (s - 1)), seg, spec)
    return float(res.value.imag)


# ---------------------------------------------------------------------------
# Integrals over [0, 1]
# ---------------------------------------------------------------------------

UNIT = ComplexSegment(0.0, 1.0)


def _k_power_integral(weight: Poly, pow_kc: int, pow_k: int, spec: QuadratureSpec, seg=UNIT) -> float:
    # int weight(t) K(sqrt(1-t))^pow_kc K(sqrt t)^pow_k dt
    def f(t, tc):
        k, kc = k_pair(t, tc)
        return poly_eval(weight, t.real) * kc**pow_kc * k**pow_k

    return quad_segment(f, seg, spec).value.real


# n -> (rational coefficient, weight in t, power of K(sqrt(1-t)))
ODD_ZETA_TABLE: dict[int, tuple[Fraction, Poly]] = {
    1: (Fraction(2, 7), ONE),
    2: (Fraction(8, 93), ONE_MINUS_2T),
    3: (Fraction(32, 5715), Q3),
    4: (Fraction(128, 160965), poly_mul(ONE_MINUS_2T, Q4)),
    6: (Fraction(4096, 3831545025), poly_mul(ONE_MINUS_2T, Q6)),
}


def odd_zeta_integral(n: int, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Ratio of the rational-weight K-integral to ``zeta(2n+1)``; exactly 1 in theory."""
    if n not in ODD_ZETA_TABLE:
        raise DomainError(f"n must be one of {sorted(ODD_ZETA_TABLE)}")
    coeff, weight = ODD_ZETA_TABLE[n]
    integral = _k_power_integral(weight, 2 * n, 0, spec)
    return float(coeff) * integral / zeta_int(2 * n + 1)


# key -> (weight, power of K(sqrt(1-t)), power of K(sqrt t))
VANISHING_TABLE: dict[str, tuple[Poly, int, int]] = {
    "1": (Q3, 2, 4),
    "2": (poly_mul(ONE_MINUS_2T, Q4), 2, 6),
    "3": (poly_mul(ONE_MINUS_2T, Q6), 2, 10),
    "4": (poly_mul(ONE_MINUS_2T, Q6), 4, 8),
    "w10": (Q5_VANISH, 0, 10),
}


def vanishing_integral(idx, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """One of the mixed-power K integrals that vanish identically."""
    key = str(idx)
    if key not in VANISHING_TABLE:
        raise DomainError(f"idx must be one of {sorted(VANISHING_TABLE)}")
    weight, pkc, pk = VANISHING_TABLE[key]
    return _k_power_integral(weight, pkc, pk, spec)


ZETA11_COEFF = Fraction(512, 29016225)


def zeta11_integral(spec: QuadratureSpec = DEFAULT_SPEC, reflected: bool = False) -> float:
    """Ratio to ``zeta(11)`` of the weight-10 representation.

    With ``reflected`` the integrand is written with ``K(sqrt(1-t))`` instead,
    which is the same integral after ``t -> 1 - t`` because the weight is even.
    """
    if reflected:
        integral = _k_power_integral(Q5_ZETA11, 10, 0, spec)
    else:
        integral = _k_power_integral(Q5_ZETA11, 0, 10, spec)
    return float(ZETA11_COEFF) * integral / zeta_int(11)


WAN_ZUCKER_WEIGHTS: dict[int, Poly] = {
    1: ONE,
    2: ONE_MINUS_2T,
    3: Q3,
    4: poly_mul(ONE_MINUS_2T, Q4),
    5: Q5_ZETA11,
    6: poly_mul(ONE_MINUS_2T, Q6),
}


def parity_defect(n: int, weight: Poly) -> Poly:
    """Exact coefficients of ``f(t) - (-1)^(n+1) f(1 - t)``."""
    sign = 1 if (n + 1) % 2 == 0 else -1
    return poly_trim(poly_add(weight, poly_scale(poly_reflect(weight), -sign)))


# ---------------------------------------------------------------------------
# Catalan family over [0, 1/2]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegralReport:
    """Both sides of an integral identity."""

    name: str
    lhs: float
    rhs: float
    n_evals: int = 0

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def _catalan_family_lhs(s: int) -> float:
    pi = math.pi
    G = dirichlet_beta(2)
    if s == 2:
        return 3 * G / (2 * pi**2)
    if s == 3:
        return 105 * zeta_int(3) / (128 * pi**3)
    if s == 4:
        return 105 * dirichlet_beta(4) / (136 * pi**4)
    if s == 5:
        return 4725 * zeta_int(5) / (8192 * pi**5)
    return 8243235 * zeta_int(7) / (22544384 * pi**7)


# s -> (zeta coefficient of zeta(2s-1)/pi^(2s-1), integral coefficient / pi^(2s-1), weight)
CATALAN_FAMILY: dict[int, tuple[Fraction, Fraction, Poly]] = {
    2: (Fraction(21, 4), Fraction(-3, 2), ONE),
    3: (Fraction(1395, 64), Fraction(15, 8), TWO_T_MINUS_1),
    4: (Fraction(200025, 2176), Fraction(-70, 136), Q3),
    5: (Fraction(50703975, 126976), Fraction(315, 992), poly_mul(TWO_T_MINUS_1, Q4)),
    7: (Fraction(11506129710075, 1431568384), Fraction(3003, 349504), poly_mul(TWO_T_MINUS_1, Q6)),
}


def catalan_k_integrals(idx: int, spec: QuadratureSpec = DEFAULT_SPEC) -> IntegralReport:
    """Closed-form L-values at ``(1+i)/4`` against their K-integrals over ``[0, 1/2]``."""
    if idx not in CATALAN_FAMILY:
        raise DomainError(f"idx must be one of {sorted(CATALAN_FAMILY)}")
    zc, ic, weight = CATALAN_FAMILY[idx]
    s = idx
    p = 2 * s - 1

    def f(t, tc):
        k, kc = k_pair(t, tc)
        # K^{2(s-1)} {(K'/K)^2 - 1}^{s-1} = (K'^2 - K^2)^{s-1}
        return poly_eval(weight, t.real) * (kc * kc - k * k) ** (s - 1)

    res = quad_segment(f, ComplexSegment(0.0, 0.5, 0.5), spec)
    rhs = float(zc) * zeta_int(p) / math.pi**p + float(ic) / math.pi**p * res.value.real
    return IntegralReport(f"catalan_K_{idx}", _catalan_family_lhs(s), rhs, res.n_evals)


# ---------------------------------------------------------------------------
# Eichler integrals of E4
# ---------------------------------------------------------------------------

EICHLER_RAY_CUTOFF = 1e-18


def _ray_top(y: float, scale: float = 1.0) -> float:
    # smallest Y with 240 e^{-2 pi scale Y} (Y - y)^2 < cutoff
    Y = y + 1.0
    while 240.0 * math.exp(-2.0 * math.pi * scale * Y) * (Y - y) ** 2 * 8 >= EICHLER_RAY_CUTOFF:
        Y += 0.25
    return Y


def eichler_ray_integral(y: float, doubled: bool = False, n_nodes: int = 128) -> complex:
    """``(2 pi i)^3/480 int_{iy}^{i inf} [1 - E4(c zeta)] (zeta - iy)^2 d zeta``, ``c = 1`` or 2.

    Runs up the imaginary axis to the height where the integrand drops below
    1e-18, split into unit panels of Gauss-Legendre.
    """
    c = 2.0 if doubled else 1.0
    top = _ray_top(y, c)
    edges = np.arange(y, top, 1.0).tolist() + [top]

    def integrand(v):
        e4 = eisenstein_e4_series(1j * c * v)
        # d zeta = i dv, (zeta - z)^2 = -(v - y)^2
        return ((1.0 - e4) * (-(v - y) ** 2) * 1j).astype(complex)

    total = 0j
    for a, b in zip(edges[:-1], edges[1:]):
        x, w = np.polynomial.legendre.leggauss(n_nodes // 4)
        vm = 0.5 * (b - a) * x + 0.5 * (b + a)
        total += 0.5 * (b - a) * np.sum(w * integrand(vm))
    return (2j * math.pi) ** 3 / 480.0 * total


def eichler_series(y: float, doubled: bool = False) -> float:
    """``sum n^-3 / (e^{-2 pi i n z} - 1)`` at ``z = iy`` (``(2n)^-3`` and ``2z`` if doubled)."""
    c = 2.0 if doubled else 1.0
    n_max = max(1, math.ceil(40.0 / (2.0 * math.pi * c * y)))
    n = np.arange(1, n_max + 1, dtype=float)
    vals = (c * n) ** -3 / np.expm1(2.0 * math.pi * c * n * y)
    return math.fsum(vals)


def eichler_e4_check(z, spec: QuadratureSpec = DEFAULT_SPEC) -> list[IntegralReport]:
    """Lambert series against the Eichler integral of E4 (and of ``E4(2 zeta)``) at ``z = iy``."""
    z = as_point(z)
    if z.real != 0.0 or not (0.3 <= z.imag <= 3.0):
        raise DomainError("eichler_e4_check needs z = iy with y in [0.3, 3]")
    y = z.imag
    out = []
    for doubled, name in ((False, "Eichler_E4a"), (True, "Eichler_E4b")):
        out.append(IntegralReport(name, eichler_series(y, doubled), eichler_ray_integral(y, doubled).real))
    return out


def odd_lambert_sum(y: float, sign: int) -> float:
    """``sum_{n>=0} (2n+1)^-3 / (e^{2 pi (2n+1) y} + sign)``, sign = -1 or +1."""
    n_max = max(1, math.ceil(40.0 / (2.0 * math.pi * y)))
    k = np.arange(1, 2 * n_max + 2, 2, dtype=float)
    if sign < 0:
        vals = k**-3 / np.expm1(2.0 * math.pi * k * y)
    else:
        vals = k**-3 / (np.exp(2.0 * math.pi * k * y) + 1.0)
    return math.fsum(vals)


def _lambda_segment(w: complex) -> ComplexSegment:
    return ComplexSegment(0.0, modular_lambda(w), modular_lambda(-1.0 / w))


def elliptic_substitution_identities(z, spec: QuadratureSpec = DEFAULT_SPEC) -> list[IntegralReport]:
    """Odd Lambert sums against their K-integral forms at ``z = iy``.

    Returns three reports: the two integral forms of the ``e^u - 1`` sum (one
    over ``[0, lambda(z)]``, one over ``[0, lambda(2z)]``) and the ``e^u + 1``
    sum over ``[0, lambda(2z)]``.
    """
    z = as_point(z)
    if z.real != 0.0 or not (0.3 <= z.imag <= 2.0):
        raise DomainError("elliptic_substitution_identities needs z = iy with y in [0.3, 2]")
    y = z.imag
    minus = odd_lambert_sum(y, -1)
    plus = odd_lambert_sum(y, +1)

    def core(t, tc, w):
        # K^2 [i K'/K - w]^2 = (i K' - w K)^2
        k, kc = k_pair(t, tc)
        return (1j * kc - w * k) ** 2

    def f_first(t, tc):
        return core(t, tc, z) / 16.0 * t / tc

    def f_second(t, tc):
        return core(t, tc, 2.0 * z) / 8.0 / tc

    def f_plus(t, tc):
        return core(t, tc, 2.0 * z) / 8.0

    seg1 = _lambda_segment(z)
    seg2 = _lambda_segment(2.0 * z)
    first = -quad_segment(f_first, seg1, spec).value.real
    second = -quad_segment(f_second, seg2, spec).value.real
    third = -quad_segment(f_plus, seg2, spec).value.real
    return [
        IntegralReport("E-3_E4_Eichler_first", minus, first),
        IntegralReport("E-3_E4_Eichler_second", minus, second),
        IntegralReport("sum_Eichler_a", plus, third),
    ]


def eichler_odd_ray_form(y: float) -> float:
    """Odd Lambert sum from the vertical-ray Eichler integrals: series(z) - series_even(z)."""
    return (eichler_ray_integral(y) - eichler_ray_integral(y, doubled=True)).real
