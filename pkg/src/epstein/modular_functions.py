"""Dedekind eta, modular lambda, E4 and the degree-2 / Landen toolkit.

Everything here works directly with q-products and q-series; no theta
functions and no modular reduction of the argument. Callers are expected to
keep ``Im z`` away from zero (``Im z >= 0.05`` for every eta factor).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import sigma_table
from .errors import DomainError, RegionError, TruncationBudgetError
from .special_functions import elliptic_k, elliptic_k_complement

ETA_MIN_IM = 0.05


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point ``re + i*im`` of the upper half-plane."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError("point must be finite")
        if self.im <= 0.0:
            raise DomainError(f"Im z must be > 0, got {self.im!r}")

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    def __complex__(self) -> complex:
        return self.z

    @classmethod
    def of(cls, z) -> "HalfPlanePoint":
        if isinstance(z, cls):
            return z
        z = complex(z)
        return cls(z.real, z.imag)


def as_point(z) -> complex:
    """Validate ``z`` as an upper half-plane point and return it as complex."""
    return HalfPlanePoint.of(z).z


@dataclass(frozen=True)
class TruncationPolicy:
    """Series truncation budget: stop once terms drop below ``tol``."""

    tol: float = 1e-16
    max_terms: int = 5000

    def __post_init__(self):
        if not (0.0 < self.tol < 1.0):
            raise DomainError("tol must lie in (0, 1)")
        if self.max_terms < 1:
            raise DomainError("max_terms must be positive")


DEFAULT_POLICY = TruncationPolicy()


def nome(z) -> complex:
    """``q = exp(2 pi i z)``."""
    return cmath.exp(2j * math.pi * as_point(z))


def _terms_needed(abs_q: float, threshold: float, policy: TruncationPolicy) -> int:
    n = max(1, math.ceil(math.log(threshold) / math.log(abs_q)))
    if n > policy.max_terms:
        raise TruncationBudgetError(
            f"{n} terms needed for |q| = {abs_q:.3g}, budget is {policy.max_terms}"
        )
    return n


def dedekind_eta(z, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``eta(z) = e^{pi i z/12} prod_{n>=1} (1 - q^n)``.

    The product stops once ``|q|^n < tol/16``. Points with ``Im z < 0.05`` are
    rejected rather than transformed.
    """
    z = as_point(z)
    if z.imag < ETA_MIN_IM:
        raise TruncationBudgetError(f"Im z = {z.imag:.3g} below {ETA_MIN_IM} for eta")
    q = cmath.exp(2j * math.pi * z)
    n_max = _terms_needed(abs(q), policy.tol / 16.0, policy)
    prod = 1.0 + 0.0j
    qn = 1.0 + 0.0j
    for _ in range(n_max):
        qn *= q
        prod *= 1.0 - qn
    return cmath.exp(1j * math.pi * z / 12.0) * prod


def modular_lambda(z, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``lambda(z) = 16 eta(z/2)^8 eta(2z)^16 / eta(z)^24``."""
    z = as_point(z)
    num = dedekind_eta(z / 2.0, policy) ** 8 * dedekind_eta(2.0 * z, policy) ** 16
    return 16.0 * num / dedekind_eta(z, policy) ** 24


def eisenstein_e4(z, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Normalised weight-4 Eisenstein series ``1 + 240 sum sigma_3(n) q^n``.

    See :func:`eisenstein_e4_lambda` for the elliptic-integral closed form.
    """
    z = as_point(z)
    return complex(eisenstein_e4_series(np.array([z]), policy)[0])


def eisenstein_e4_series(zs, policy: TruncationPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Vectorised q-series of E4 over an array of upper half-plane points."""
    zs = np.asarray(zs, dtype=complex)
    if np.any(zs.imag <= 0):
        raise DomainError("E4 requires Im z > 0")
    abs_q = math.exp(-2.0 * math.pi * float(np.min(zs.imag)))
    # sigma_3(n) <= zeta(3) n^3 < 1.21 n^3
    n_max = 1
    while 240.0 * 1.21 * n_max**3 * abs_q**n_max >= policy.tol:
        n_max += 1
        if n_max > policy.max_terms:
            raise TruncationBudgetError("E4 q-series exceeds term budget")
    sig = sigma_table(3, n_max)
    n = np.arange(1, n_max + 1)
    q = np.exp(2j * math.pi * np.multiply.outer(zs, n))
    return 1.0 + 240.0 * (q @ sig)


def eisenstein_e4_lambda(z, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``E4 = [2 K(sqrt(lam))/pi]^4 (1 - lam + lam^2)`` with ``lam = lambda(z)``.

    Valid for ``z`` in the fundamental domain of the lambda group, where
    ``z = i K(sqrt(1 - lam)) / K(sqrt(lam))``.
    """
    lam = modular_lambda(z, policy)
    k = elliptic_k(lam)
    return (2.0 * k / math.pi) ** 4 * (1.0 - lam + lam * lam)


# ---------------------------------------------------------------------------
# Regions
# ---------------------------------------------------------------------------


def in_fundamental_domain(z) -> bool:
    """Open fundamental domain of the lambda group.

    ``|Re z| < 1``, ``|z + 1/2| > 1/2`` and ``|z - 1/2| > 1/2``.
    """
    z = as_point(z)
    return abs(z.real) < 1.0 and abs(z + 0.5) > 0.5 and abs(z - 0.5) > 0.5


def in_theorem2_region(z) -> bool:
    """True iff ``2z + 1`` lies in the open fundamental domain of lambda."""
    z = as_point(z)
    return abs((2 * z + 1).real) < 1.0 and abs(2 * z + 0.5) > 0.5 and abs(2 * z + 1.5) > 0.5


def _require_fundamental(z) -> complex:
    z = as_point(z)
    if not in_fundamental_domain(z):
        raise RegionError(f"{z} is outside the lambda fundamental domain")
    return z


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityPair:
    """Both sides of a numerical identity."""

    name: str
    lhs: complex
    rhs: complex

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def landen_descend(lam) -> tuple[IdentityPair, IdentityPair]:
    """Both sides of the two Landen transformations at parameter ``lam``.

    The first pair needs ``lam`` off ``(-inf, 0]``; the second needs
    ``|lam| < 1``.
    """
    lam = complex(lam)
    if lam.imag == 0.0 and lam.real <= 0.0:
        raise DomainError("first Landen transformation needs lam off (-inf, 0]")
    if abs(lam) >= 1.0:
        raise DomainError("second Landen transformation needs |lam| < 1")
    r = cmath.sqrt(lam)
    k1 = (1.0 - r) / (1.0 + r)
    first = IdentityPair(
        "Landen_1",
        elliptic_k_complement(lam),
        2.0 / (1.0 + r) * elliptic_k(k1 * k1),
    )
    second = IdentityPair(
        "Landen_2",
        elliptic_k(lam),
        elliptic_k(4.0 * r / (1.0 + r) ** 2) / (1.0 + r),
    )
    return first, second


def lambda_k_inverse_check(z, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """``|z - i K(sqrt(1 - lam)) / K(sqrt(lam))|`` for ``z`` in the domain."""
    z = _require_fundamental(z)
    lam = modular_lambda(z, policy)
    return abs(z - 1j * elliptic_k_complement(lam) / elliptic_k(lam))


def degree2_lambda(z, policy: TruncationPolicy = DEFAULT_POLICY) -> tuple[IdentityPair, IdentityPair]:
    """Duplication and halving formulas for lambda at ``z``."""
    z = _require_fundamental(z)
    lam = modular_lambda(z, policy)
    rc = cmath.sqrt(1.0 - lam)
    r = cmath.sqrt(lam)
    double = IdentityPair(
        "lambda(2z)", modular_lambda(2.0 * z, policy), ((1.0 - rc) / (1.0 + rc)) ** 2
    )
    half = IdentityPair("lambda(z/2)", modular_lambda(z / 2.0, policy), 4.0 * r / (1.0 + r) ** 2)
    return double, half


def lambda_inversion_check(z, policy: TruncationPolicy = DEFAULT_POLICY) -> IdentityPair:
    """``lambda(-1/(2z+1)) = 1 - lambda(2z+1)`` whenever ``in_theorem2_region(z)``."""
    z = as_point(z)
    if not in_theorem2_region(z):
        raise RegionError(f"2z+1 = {2 * z + 1} is outside the lambda fundamental domain")
    w = 2.0 * z + 1.0
    return IdentityPair("lambda_inv", modular_lambda(-1.0 / w, policy), 1.0 - modular_lambda(w, policy))
