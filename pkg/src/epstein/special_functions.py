"""Special functions and number-theoretic constants in double precision.

Complete elliptic integrals of the first kind are computed from the
arithmetic-geometric mean, with the "right" square-root choice at every step
so that complex parameters off the cut ``[1, +inf)`` land on the principal
branch. Half-integer K-Bessel functions use their terminating closed form.
Zeta values, Catalan's constant and Dirichlet beta values are built once and
cached.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .errors import BranchCutError, ConvergenceError, DomainError

AGM_MAX_ITER = 64
_EPS = np.finfo(float).eps

__all__ = [
    "AGM_MAX_ITER",
    "ConstantsCache",
    "agm",
    "agm_array",
    "bessel_k_half",
    "catalan",
    "check_elliptic_parameter",
    "constants",
    "dirichlet_beta",
    "elliptic_k",
    "elliptic_k_complement",
    "zeta_int",
]


# ---------------------------------------------------------------------------
# Arithmetic-geometric mean and K
# ---------------------------------------------------------------------------


def agm(a: complex, b: complex) -> complex:
    """Arithmetic-geometric mean of two complex numbers.

    At each step the geometric mean ``g = sqrt(a*b)`` takes the sign for which
    ``|a' - g| <= |a' + g|``. Raises :class:`ConvergenceError` if the iteration
    has not settled after ``AGM_MAX_ITER`` steps.
    """
    a = complex(a)
    b = complex(b)
    if a == 0 or b == 0:
        raise DomainError("agm requires nonzero arguments")
    ratio = a / b
    if ratio.imag == 0.0 and ratio.real < 0.0:
        raise DomainError("agm(a, b) is degenerate for a/b on the negative real axis")
    for _ in range(AGM_MAX_ITER):
        if abs(a - b) <= 4.0 * _EPS * abs(a):
            return 0.5 * (a + b)
        a1 = 0.5 * (a + b)
        g = cmath.sqrt(a * b)
        if abs(a1 - g) > abs(a1 + g):
            g = -g
        a, b = a1, g
    raise ConvergenceError(f"agm did not converge in {AGM_MAX_ITER} iterations")


def agm_array(a, b) -> np.ndarray:
    """Vectorised :func:`agm` over broadcastable complex arrays."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
    a = a.copy()
    b = b.copy()
    if np.any(a == 0) or np.any(b == 0):
        raise DomainError("agm requires nonzero arguments")
    for _ in range(AGM_MAX_ITER):
        if np.all(np.abs(a - b) <= 4.0 * _EPS * np.abs(a)):
            return 0.5 * (a + b)
        a1 = 0.5 * (a + b)
        g = np.sqrt(a * b)
        g = np.where(np.abs(a1 - g) > np.abs(a1 + g), -g, g)
        a, b = a1, g
    raise ConvergenceError(f"agm did not converge in {AGM_MAX_ITER} iterations")


def check_elliptic_parameter(t) -> None:
    """Raise :class:`BranchCutError` if any ``t`` lies on ``[1, +inf)``."""
    t = np.asarray(t, dtype=complex)
    bad = (t.imag == 0.0) & (t.real >= 1.0)
    if np.any(bad):
        raise BranchCutError("elliptic parameter on the cut [1, +inf)")
    if not np.all(np.isfinite(t)):
        raise DomainError("elliptic parameter must be finite")


def elliptic_k(t):
    r"""Complete elliptic integral ``K(sqrt(t))`` for ``t`` off ``[1, +inf)``.

    Equals :math:`\int_0^{\pi/2} (1 - t\sin^2\theta)^{-1/2}\,d\theta` and is
    evaluated as ``pi / (2 agm(1, sqrt(1 - t)))``. Accepts scalars or arrays.
    """
    check_elliptic_parameter(t)
    if np.ndim(t) == 0:
        return math.pi / (2.0 * agm(1.0, cmath.sqrt(1.0 - complex(t))))
    t = np.asarray(t, dtype=complex)
    return math.pi / (2.0 * agm_array(1.0, np.sqrt(1.0 - t)))


def elliptic_k_complement(t):
    """``K(sqrt(1 - t))`` evaluated without forming ``1 - t``.

    Keeps full relative accuracy when ``t`` is tiny, where ``K(sqrt(1 - t))``
    has its logarithmic singularity. ``t`` must avoid ``(-inf, 0]``.
    """
    tt = np.asarray(t, dtype=complex)
    if np.any((tt.imag == 0.0) & (tt.real <= 0.0)):
        raise BranchCutError("complementary parameter on the cut: t in (-inf, 0]")
    if np.ndim(t) == 0:
        return math.pi / (2.0 * agm(1.0, cmath.sqrt(complex(t))))
    return math.pi / (2.0 * agm_array(1.0, np.sqrt(tt)))


# ---------------------------------------------------------------------------
# K-Bessel of half-integer order
# ---------------------------------------------------------------------------


def bessel_k_half(m: int, y):
    """``K_{m+1/2}(y)`` from the terminating Bessel-polynomial expansion.

    ``sqrt(pi/(2y)) e^{-y} sum_{k=0}^{m} (m+k)! / (k! (m-k)! (2y)^k)``.
    Vectorised over ``y``.
    """
    if m < 0:
        raise DomainError("order index m must be >= 0")
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainError("bessel_k_half requires y > 0")
    inv2y = 1.0 / (2.0 * y)
    poly = np.zeros_like(y)
    # Horner in 1/(2y), highest power first.
    for k in range(m, -1, -1):
        coeff = math.factorial(m + k) // (math.factorial(k) * math.factorial(m - k))
        poly = poly * inv2y + coeff
    out = np.sqrt(math.pi * inv2y) * np.exp(-y) * poly
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Zeta, Dirichlet beta, Catalan
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    # B_1 = -1/2 convention; only even indices are used here.
    b = [Fraction(1)]
    for k in range(1, n + 1):
        acc = Fraction(0)
        for j in range(k):
            acc += math.comb(k + 1, j) * b[j]
        b.append(-acc / (k + 1))
    return b[n]


def _zeta_even(k: int) -> float:
    half = k // 2
    b = _bernoulli(k)
    coeff = (-1) ** (half + 1) * b * Fraction(2 ** (k - 1), math.factorial(k))
    return float(coeff) * math.pi**k


ODD_ZETA_TERMS = 10**6


def _zeta_direct(k: int, n_terms: int = ODD_ZETA_TERMS) -> float:
    # Direct sum to N, then Euler-Maclaurin for sum_{n>N} n^{-k}.
    # Past N ~ 10^(32/(k-1)) the Euler-Maclaurin remainder is below 1e-30.
    n_terms = min(n_terms, int(10 ** (32.0 / (k - 1))) + 1)
    n = np.arange(n_terms, 0, -1, dtype=float)
    head = math.fsum(n ** (-k))
    N = float(n_terms)
    tail = (
        N ** (1 - k) / (k - 1)
        - 0.5 * N ** (-k)
        + k * N ** (-k - 1) / 12.0
        - k * (k + 1) * (k + 2) * N ** (-k - 3) / 720.0
    )
    return head + tail


def _cvz_alternating(terms) -> float:
    # Cohen, Rodriguez Villegas, Zagier acceleration of sum (-1)^k a_k.
    n = len(terms)
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    s = 0.0
    for k in range(n):
        c = b - c
        s += c * terms[k]
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return s / d


def _beta(s: int) -> float:
    terms = [(2 * k + 1.0) ** (-s) for k in range(30)]
    return _cvz_alternating(terms)


@dataclass(frozen=True)
class ConstantsCache:
    """Read-only table of ``zeta(k)``, ``L(s, chi_{-4})`` and Catalan's G."""

    zeta_values: Mapping[int, float] = field(repr=False)
    beta_values: Mapping[int, float] = field(repr=False)
    catalan: float

    @classmethod
    def build(cls, max_zeta: int = 26, max_beta: int = 14) -> "ConstantsCache":
        zeta_values = {}
        for k in range(2, max_zeta + 1):
            zeta_values[k] = _zeta_even(k) if k % 2 == 0 and k <= 14 else _zeta_direct(k)
        beta_values = {s: _beta(s) for s in range(1, max_beta + 1)}
        return cls(
            zeta_values=MappingProxyType(zeta_values),
            beta_values=MappingProxyType(beta_values),
            catalan=beta_values[2],
        )


@lru_cache(maxsize=1)
def constants() -> ConstantsCache:
    """The process-wide constants table, built on first use."""
    return ConstantsCache.build()


def zeta_int(k: int) -> float:
    """Riemann zeta at an integer ``k >= 2``.

    Even ``k <= 14`` use the Bernoulli closed form; everything else is a direct
    sum with an Euler-Maclaurin tail, so odd values never depend on the
    reflection identities this package checks.
    """
    if k < 2:
        raise DomainError("zeta_int requires k >= 2")
    table = constants().zeta_values
    if k in table:
        return table[k]
    return _zeta_direct(k)


def dirichlet_beta(s: int) -> float:
    """``L(s, chi_{-4}) = sum_n (-1)^n (2n+1)^{-s}`` for integer ``s >= 1``."""
    if s < 1:
        raise DomainError("dirichlet_beta requires s >= 1")
    table = constants().beta_values
    return table[s] if s in table else _beta(s)


def catalan() -> float:
    """Catalan's constant ``G = L(2, chi_{-4})``."""
    return constants().catalan
