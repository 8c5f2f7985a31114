"""Ramanujan-type reflection formulas and the Catalan sums they produce."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TruncationBudgetError
from .modular_functions import DEFAULT_POLICY, TruncationPolicy, as_point
from .special_functions import catalan, zeta_int

MIN_DECAY = 0.05


@dataclass(frozen=True)
class ReflectionReport:
    """Both sides of a reflection identity at ``(z, m)``."""

    lhs: complex
    rhs: complex
    m: int
    z: complex

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def _lambert(w: complex, power: int, policy: TruncationPolicy, odd: bool = False, sign: int = -1) -> complex:
    """``sum n^-power / (e^{2 pi n w} + sign)`` over ``n >= 1`` (odd ``n`` only if ``odd``).

    With ``odd`` the exponent is ``pi n w`` instead, matching the odd-index
    sums of the level-4 formula.
    """
    rate = (math.pi if odd else 2.0 * math.pi) * w.real
    if rate <= 0.0:
        raise DomainError("Lambert series needs Re w > 0")
    n_max = math.ceil(-math.log(policy.tol) / rate) + 1
    if odd:
        n_max = 2 * n_max + 1
    if n_max > policy.max_terms:
        raise TruncationBudgetError(f"{n_max} Lambert terms needed, budget is {policy.max_terms}")
    n = np.arange(1, n_max + 1, 2 if odd else 1, dtype=float)
    q = np.exp(-(math.pi if odd else 2.0 * math.pi) * n * w)
    # 1/(e^a + sign) = e^-a / (1 + sign e^-a)
    return complex(np.sum(n ** (-power) * q / (1.0 + sign * q)))


def _check_args(z: complex, m: int) -> None:
    if m < 1:
        raise DomainError("m must be >= 1")
    if z.imag < MIN_DECAY or (-1.0 / z).imag < MIN_DECAY:
        raise TruncationBudgetError("Im z and Im(-1/z) must both be >= 0.05")


def reflection_notebook(z, m: int, policy: TruncationPolicy = DEFAULT_POLICY) -> ReflectionReport:
    """Ramanujan's notebook reflection formula for ``sum n^-(2m+1) / (e^{2 pi n z/i} - 1)``."""
    z = as_point(z)
    _check_args(z, m)
    w = z / 1j
    p = 2 * m + 1
    lhs = w ** (-m) * _lambert(w, p, policy) - (-w) ** m * _lambert(1j / z, p, policy)
    rhs = zeta_int(2 * m + 2) / (2.0 * math.pi) * (w ** (-m - 1) + (-w) ** (m + 1))
    rhs -= zeta_int(2 * m + 1) / 2.0 * (w ** (-m) - (-w) ** m)
    rhs += sum(
        zeta_int(2 * k + 2) * zeta_int(2 * m - 2 * k) / ((-1) ** k * w ** (m - 2 * k - 1)) for k in range(m)
    ) / math.pi
    return ReflectionReport(complex(lhs), complex(rhs), m, z)


def reflection_type2(z, m: int, policy: TruncationPolicy = DEFAULT_POLICY) -> ReflectionReport:
    """Odd-index ``e^u + 1`` analogue with ``2z/i`` in place of ``z/i``."""
    z = as_point(z)
    _check_args(2.0 * z, m)
    w = 2.0 * z / 1j
    p = 2 * m + 1
    lhs = w ** (-m) * _lambert(w, p, policy, odd=True, sign=1)
    lhs -= (-w) ** m * _lambert(1j / (2.0 * z), p, policy, odd=True, sign=1)
    rhs = (1.0 - 2.0 ** (-p)) / 2.0 * zeta_int(p) * (w ** (-m) - (-w) ** m)
    acc = 0j
    for k in range(m):
        c = zeta_int(2 * k + 2) * zeta_int(2 * m - 2 * k)
        c *= (2.0 ** (-2 * k - 2) - 1.0) * (1.0 - 2.0 ** (2 * k - 2 * m))
        acc += c / ((-1) ** k * w ** (m - 2 * k - 1))
    rhs += 2.0 / math.pi * acc
    return ReflectionReport(complex(lhs), complex(rhs), m, z)


def catalan_sinh_sum(n_terms: int = 20) -> ReflectionReport:
    """``sum 1/(n^2 sinh^2(n pi)) = 2G/3 - 11 pi^2/180``."""
    n = np.arange(1, n_terms + 1, dtype=float)
    lhs = math.fsum(1.0 / (n * np.sinh(n * math.pi)) ** 2)
    return ReflectionReport(lhs, 2.0 * catalan() / 3.0 - 11.0 * math.pi**2 / 180.0, 0, 1j)


def catalan_cosh_sum(n_terms: int = 15) -> ReflectionReport:
    """``sum_{n>=0} 1/((2n+1)^2 cosh^2((2n+1) pi/2)) = pi^2/16 - G/2``."""
    k = np.arange(1, 2 * n_terms + 1, 2, dtype=float)
    lhs = math.fsum(1.0 / (k * np.cosh(k * math.pi / 2.0)) ** 2)
    return ReflectionReport(lhs, math.pi**2 / 16.0 - catalan() / 2.0, 0, 0.5j)


def lambert_zeta3_at_i() -> ReflectionReport:
    """``sum n^-3 / (e^{2 pi n} - 1) = 7 pi^3/360 - zeta(3)/2``."""
    lhs = _lambert(1.0 + 0j, 3, DEFAULT_POLICY).real
    return ReflectionReport(lhs, 7.0 * math.pi**3 / 360.0 - zeta_int(3) / 2.0, 1, 1j)


def catalan_chain() -> ReflectionReport:
    """``E(i, 2) = 30G/pi^2`` rebuilt from the two special sums at ``z = i``."""
    pi = math.pi
    s3 = lambert_zeta3_at_i().lhs
    s_sinh = catalan_sinh_sum().lhs
    lhs = 1.0 + 45.0 * zeta_int(3) / pi**3 + 90.0 / pi**3 * s3 + 45.0 / pi**2 * s_sinh
    return ReflectionReport(lhs, 30.0 * catalan() / pi**2, 2, 1j)
