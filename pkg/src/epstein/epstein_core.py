"""Evaluators for the Epstein zeta function ``E^{Gamma_0(N)}(z, s)``.

Four independent routes are provided for integer ``s >= 2``:

* ``epstein_lattice_oracle`` -- brute-force lattice sum over a square box.
* ``epstein_fourier`` -- constant terms plus a K-Bessel Fourier series.
* ``epstein_ramanujan_level1`` / ``epstein_ramanujan_level4`` -- Ramanujan
  series built from divisor sums and the operator ``(d/dy . 1/y)^m``.
* ``epstein_levelN`` -- Moebius assembly of level ``N`` from level 1.

Every evaluator returns an :class:`EvalResult` with a truncation error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from .arithmetic import divisors, mobius, prime_divisors, sigma_nu, sigma_table
from .errors import DomainError, TruncationBudgetError
from .modular_functions import DEFAULT_POLICY, TruncationPolicy, as_point
from .special_functions import bessel_k_half, zeta_int

__all__ = [
    "EvalResult",
    "InversePolyExpansion",
    "addition_formula_residuals",
    "default_n_max",
    "derivative_operator",
    "epstein_fourier",
    "epstein_lattice_oracle",
    "epstein_level1",
    "epstein_levelN",
    "epstein_ramanujan_level1",
    "epstein_ramanujan_level4",
    "laplacian_eigencheck",
    "mobius",
    "reduce_sl2z",
    "sigma_nu",
]

Method = Literal["lattice", "fourier", "ramanujan1", "ramanujan4", "mobius", "eichler"]
METHODS = ("lattice", "fourier", "ramanujan1", "ramanujan4", "mobius", "eichler")

SERIES_TOL = 1e-16
_EPS = float(np.finfo(float).eps)
MAX_SERIES_TERMS = 5000
FOURIER_MIN_IM = 0.05


@dataclass(frozen=True)
class EvalResult:
    """A value with its truncation-error bound, work counter and method tag."""

    value: float
    err_estimate: float
    work: int
    method: str

    def __post_init__(self):
        if self.err_estimate < 0:
            raise ValueError("err_estimate must be non-negative")
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")

    def __float__(self) -> float:
        return float(self.value)


def _check_s(s: int) -> int:
    if int(s) != s or s < 2:
        raise DomainError(f"s must be an integer >= 2, got {s!r}")
    return int(s)


def _check_m(m: int) -> int:
    if int(m) != m or m < 1:
        raise DomainError(f"m must be an integer >= 1, got {m!r}")
    return int(m)


def default_n_max(y: float, tol: float = SERIES_TOL, cap: int = MAX_SERIES_TERMS) -> int:
    """Smallest ``N`` with ``exp(-2 pi N y) < tol``; raises past ``cap``."""
    n = max(1, math.floor(-math.log(tol) / (2.0 * math.pi * y)) + 1)
    if n > cap:
        raise TruncationBudgetError(f"Im z = {y:.3g} needs {n} terms, cap is {cap}")
    return n


def _adaptive_n_max(bound, y: float, scale: float, tol: float = SERIES_TOL, cap: int = MAX_SERIES_TERMS) -> int:
    """Grow ``default_n_max(y)`` until ``bound(n) <= tol * max(1, scale)``.

    The plain exponential cutoff ignores the polynomial prefactors, which
    matter for large ``s`` at small ``Im z``.
    """
    n = default_n_max(y, tol, cap)
    target = tol * max(1.0, abs(scale))
    while bound(n) > target:
        if n >= cap:
            raise TruncationBudgetError(f"Im z = {y:.3g} needs more than {cap} terms")
        n = min(cap, n + max(1, n // 4))
    return n


def _geometric_tail(first: float, ratio: float) -> float:
    # Bound for sum_{k>=0} first * ratio^k when successive terms shrink by <= ratio.
    if first == 0.0:
        return 0.0
    if ratio >= 1.0:
        return math.inf
    return first / (1.0 - ratio)


# ---------------------------------------------------------------------------
# The operator (d/dy . 1/y)^m on exp(-alpha y)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InversePolyExpansion:
    """Exact form of ``(d/dy . 1/y)^m exp(-alpha y)``.

    Equal to ``(-1)^m exp(-alpha y) sum_k c[k] alpha^(m-k) y^-(m+k)``.
    """

    m: int
    coefficients: tuple[int, ...]

    @property
    def sign(self) -> int:
        return -1 if self.m % 2 else 1

    def poly(self, alpha, y):
        """``sum_k c[k] alpha^(m-k) y^-(m+k)`` (no sign, no exponential)."""
        alpha = np.asarray(alpha, dtype=float)
        inv_y = 1.0 / y
        # Horner in (1/(alpha y)): alpha^m y^-m sum_k c_k (alpha y)^-k
        ay = alpha * y
        acc = np.zeros_like(alpha)
        for c in reversed(self.coefficients):
            acc = acc / ay + c
        return acc * (alpha * inv_y) ** self.m

    def apply(self, alpha, y):
        """Numerical value of ``(d/dy . 1/y)^m exp(-alpha y)`` at ``y``."""
        alpha = np.asarray(alpha, dtype=float)
        return self.sign * np.exp(-alpha * y) * self.poly(alpha, y)


@lru_cache(maxsize=None)
def derivative_operator(m: int) -> InversePolyExpansion:
    """Coefficients of ``(d/dy . 1/y)^m exp(-alpha y)`` by exact recurrence.

    Writing the result as ``exp(-alpha y) q_m`` gives
    ``q_m = q_{m-1}'/y - q_{m-1}/y^2 - alpha q_{m-1}/y`` with ``q_0 = 1``;
    ``q_m`` is tracked as a map ``(power of alpha, power of 1/y) -> int``.
    """
    if m < 0:
        raise DomainError("m must be >= 0")
    q: dict[tuple[int, int], int] = {(0, 0): 1}
    for _ in range(m):
        nxt: dict[tuple[int, int], int] = {}
        for (a, b), c in q.items():
            # d/dy(alpha^a y^-b)/y - alpha^a y^-b/y^2
            nxt[(a, b + 2)] = nxt.get((a, b + 2), 0) - (b + 1) * c
            nxt[(a + 1, b + 1)] = nxt.get((a + 1, b + 1), 0) - c
        q = {k: v for k, v in nxt.items() if v}
    sign = -1 if m % 2 else 1
    coeffs = []
    for k in range(m + 1):
        coeffs.append(sign * q.get((m - k, m + k), 0))
    assert sum(abs(v) for v in q.values()) == sum(abs(c) for c in coeffs)
    return InversePolyExpansion(m, tuple(coeffs))


# ---------------------------------------------------------------------------
# Level 1
# ---------------------------------------------------------------------------


def _constant_terms(y: float, s: int) -> float:
    # y^s + sqrt(pi) Gamma(s-1/2)/Gamma(s) zeta(2s-1)/zeta(2s) y^(1-s)
    c = math.sqrt(math.pi) * math.gamma(s - 0.5) / math.gamma(s) * zeta_int(2 * s - 1) / zeta_int(2 * s)
    return y**s + c * y ** (1 - s)


def _cosines(x: float, n: np.ndarray) -> np.ndarray:
    # Reduce n*x mod 1 first so large n keep the phase accurate.
    frac = np.mod(n * x, 1.0)
    return np.cos(2.0 * math.pi * frac)


def _fourier_tail(y: float, s: int, n_max: int) -> float:
    # sigma_{1-2s}(n) <= zeta(2s-1); terms shrink at least geometrically past n_max.
    pref = 2.0 * math.pi**s / (math.gamma(s) * zeta_int(2 * s))
    n1 = n_max + 1.0
    first = pref * 2.0 * zeta_int(2 * s - 1) * n1 ** (s - 0.5) * math.sqrt(y) * float(
        bessel_k_half(s - 1, 2.0 * math.pi * n1 * y)
    )
    ratio = ((n1 + 1.0) / n1) ** (s - 1) * math.exp(-2.0 * math.pi * y)
    return _geometric_tail(first, ratio)


def epstein_fourier(z, s: int, n_max: int | None = None) -> EvalResult:
    """Level-1 Epstein zeta from its K-Bessel Fourier expansion.

    The ``+n`` and ``-n`` terms are folded into one cosine term. Without an
    explicit ``n_max`` the series runs until its tail bound is below ``1e-16``
    relative to the constant terms.
    """
    z = as_point(z)
    s = _check_s(s)
    x, y = z.real, z.imag
    if y < FOURIER_MIN_IM:
        raise DomainError(f"Im z = {y:.3g} too small for the Fourier expansion")
    const = _constant_terms(y, s)
    if n_max is None:
        n_max = _adaptive_n_max(lambda n: _fourier_tail(y, s, n), y, const)
    m = s - 1
    n = np.arange(1, n_max + 1, dtype=float)
    pref = 2.0 * math.pi**s / (math.gamma(s) * zeta_int(2 * s))
    coeff = 2.0 * n ** (s - 0.5) * sigma_table(1 - 2 * s, n_max) * math.sqrt(y)
    terms = coeff * bessel_k_half(m, 2.0 * math.pi * n * y) * _cosines(x, n)
    value = const + pref * math.fsum(terms)
    return EvalResult(value, _fourier_tail(y, s, n_max), n_max, "fourier")


def _ramanujan1_pref(m: int, y: float) -> float:
    return -math.pi * y**m / ((-1) ** (m - 1) * 2.0 ** (m - 1) * math.gamma(m + 1) * zeta_int(2 * m + 2))


def _ramanujan1_tail(y: float, m: int, n_max: int) -> float:
    op = derivative_operator(m)
    n1 = n_max + 1.0
    first = abs(_ramanujan1_pref(m, y)) * zeta_int(2 * m + 1) * math.exp(-2.0 * math.pi * n1 * y) * float(
        op.poly(2.0 * math.pi * n1, y)
    )
    ratio = ((n1 + 1.0) / n1) ** m * math.exp(-2.0 * math.pi * y)
    return _geometric_tail(first, ratio)


def epstein_ramanujan_level1(z, m: int, n_max: int | None = None) -> EvalResult:
    """``E^{Gamma_0(1)}(z, m+1)`` from the Ramanujan series.

    The Lambert series ``sum n^{-2m-1}/(e^{2 pi n z/i} - 1)`` is rearranged to
    ``sum sigma_{-2m-1}(N) e^{2 pi i N z}``; its real part is taken term by
    term and ``(d/dy . 1/y)^m`` acts on each ``e^{-2 pi N y}`` exactly.
    """
    z = as_point(z)
    m = _check_m(m)
    x, y = z.real, z.imag
    if y < FOURIER_MIN_IM:
        raise DomainError(f"Im z = {y:.3g} too small for the Ramanujan series")
    const = _constant_terms(y, m + 1)
    if n_max is None:
        n_max = _adaptive_n_max(lambda n: _ramanujan1_tail(y, m, n), y, const)
    op = derivative_operator(m)
    N = np.arange(1, n_max + 1, dtype=float)
    terms = sigma_table(-2 * m - 1, n_max) * _cosines(x, N) * op.apply(2.0 * math.pi * N, y)
    value = const + _ramanujan1_pref(m, y) * math.fsum(terms)
    return EvalResult(value, _ramanujan1_tail(y, m, n_max), n_max, "ramanujan1")


def ramanujan_level1_terms(z, m: int, n_max: int) -> np.ndarray:
    """Scaled series terms of :func:`epstein_ramanujan_level1` (for benchmarks)."""
    z = as_point(z)
    x, y = z.real, z.imag
    op = derivative_operator(m)
    N = np.arange(1, n_max + 1, dtype=float)
    return _ramanujan1_pref(m, y) * sigma_table(-2 * m - 1, n_max) * _cosines(x, N) * op.apply(2.0 * math.pi * N, y)


# ---------------------------------------------------------------------------
# Level 4 (evaluated at -1/(4z))
# ---------------------------------------------------------------------------


def epstein_ramanujan_level4(z, m: int, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """``E^{Gamma_0(4)}(-1/(4z), m+1)`` from the level-4 Ramanujan series.

    Note the input/output convention: the argument is ``z``, the value is the
    Epstein function at ``-1/(4z)``. ``1/(e^u + 1)`` is expanded as
    ``sum_l (-1)^(l-1) e^{-l u}``, giving a double sum over odd ``2n+1`` and
    ``l >= 1`` with ``alpha = 2 pi (2n+1) l``; pairs are kept while
    ``e^{-alpha y} >= policy.tol``.
    """
    z = as_point(z)
    m = _check_m(m)
    x, y = z.real, z.imag
    if y < FOURIER_MIN_IM:
        raise DomainError(f"Im z = {y:.3g} too small for the Ramanujan series")
    j_max = default_n_max(y, policy.tol, policy.max_terms)  # bound on (2n+1) l
    op = derivative_operator(m)

    odd = np.arange(1, j_max + 1, 2)
    odd_list, ell_list = [], []
    for k in odd:
        ells = np.arange(1, j_max // k + 1)
        odd_list.append(np.full(ells.shape, k))
        ell_list.append(ells)
    k = np.concatenate(odd_list).astype(float)
    ell = np.concatenate(ell_list).astype(float)
    j = k * ell
    alpha = 2.0 * math.pi * j
    signs = np.where(ell % 2 == 1, 1.0, -1.0)
    # cos((2n+1) l pi (2x+1)) = cos(2 pi j (x + 1/2))
    terms = signs * k ** (-(2 * m + 1)) * _cosines(x + 0.5, j) * op.apply(alpha, y)

    zr = zeta_int(2 * m + 2)
    first_term = (
        (2.0 ** (2 * m + 1) - 1.0)
        / (2.0 ** (2 * m + 2) - 1.0)
        * math.sqrt(math.pi)
        * math.gamma(m + 0.5)
        / (2.0 * math.gamma(m + 1))
        * zeta_int(2 * m + 1)
        / zr
        / (4.0 * y) ** m
    )
    pref = math.pi * y**m / (
        (-1) ** (m - 1) * 2.0 ** (m - 1) * (2.0 ** (2 * m + 2) - 1.0) * math.gamma(m + 1) * zr
    )
    value = first_term + pref * math.fsum(terms)

    # Remaining pairs have j > j_max; at most j of them per j, each <= |D^m| at j.
    j1 = j_max + 1.0
    first = abs(pref) * j1 * math.exp(-2.0 * math.pi * j1 * y) * float(op.poly(2.0 * math.pi * j1, y))
    ratio = ((j1 + 1.0) / j1) ** (m + 1) * math.exp(-2.0 * math.pi * y)
    err = _geometric_tail(first, ratio)
    return EvalResult(value, err, int(j.size), "ramanujan4")


# ---------------------------------------------------------------------------
# Lattice oracle
# ---------------------------------------------------------------------------


def epstein_lattice_oracle(z, s: int, radius: int) -> EvalResult:
    """Direct lattice sum over ``max(|m|, |n|) <= radius``.

    ``(1/(2 zeta(2s))) sum' y^s / |m z + n|^{2s}``. The pair ``(m, n)`` and
    ``(-m, -n)`` contribute equally, so only half the box is visited.

    The error bound uses ``|m z + n|^2 >= mu (m^2 + n^2)``, ``mu`` the least
    eigenvalue of the binary quadratic form, and counts the ``8k`` lattice
    points on the shell ``max(|m|, |n|) = k``: the tail is at most
    ``y^s mu^-s * 8 R^{2-2s} / (2s - 2) / (2 zeta(2s))``. All summands are
    positive, so rounding adds at most ``(2s + 8) eps`` relative; that term is
    included in ``err_estimate``.
    """
    z = as_point(z)
    s = _check_s(s)
    R = int(radius)
    if R < 10:
        raise DomainError("radius must be >= 10")
    x, y = z.real, z.imag
    n = np.arange(-R, R + 1, dtype=float)
    # m = 0, n > 0
    total = math.fsum((1.0 / np.arange(1, R + 1, dtype=float)) ** (2 * s))
    chunk = max(1, 2_000_000 // n.size)
    partial = []
    for m0 in range(1, R + 1, chunk):
        mm = np.arange(m0, min(R, m0 + chunk - 1) + 1, dtype=float)[:, None]
        q = (mm * x + n) ** 2 + (mm * y) ** 2
        partial.append(np.sum(q ** (-s), axis=1))
    total += math.fsum(np.concatenate(partial))
    value = y**s * total / zeta_int(2 * s)

    tr = x * x + y * y + 1.0
    mu = 0.5 * (tr - math.sqrt(max(tr * tr - 4.0 * y * y, 0.0)))
    err = (y / mu) ** s * 8.0 * float(R) ** (2 - 2 * s) / (2 * s - 2) / (2.0 * zeta_int(2 * s))
    err += (2 * s + 8) * _EPS * value
    work = n.size * R + R
    return EvalResult(value, err, int(work), "lattice")


# ---------------------------------------------------------------------------
# SL(2, Z) reduction and level N
# ---------------------------------------------------------------------------


def reduce_sl2z(z, max_iter: int = 1000) -> complex:
    """Map ``z`` into the standard fundamental domain of ``SL(2, Z)``."""
    z = as_point(z)
    for _ in range(max_iter):
        z = complex(z.real - math.floor(z.real + 0.5), z.imag)
        if abs(z) < 1.0:
            z = -1.0 / z
        else:
            return z
    raise TruncationBudgetError("SL(2,Z) reduction did not terminate")


def epstein_level1(z, s: int, reduce: bool = True) -> EvalResult:
    """``E^{Gamma_0(1)}(z, s)`` by the Fourier expansion, optionally after reduction."""
    z = as_point(z)
    if reduce:
        z = reduce_sl2z(z)
    return epstein_fourier(z, s)


def epstein_levelN(z, s: int, N: int = 1, n_max: int | None = None, reduce: bool = True) -> EvalResult:
    """Level-``N`` Epstein zeta assembled from level 1 by Moebius inversion.

    ``(N^s prod_{p|N}(1 - p^{-2s}))^{-1} sum_{d|N} mu(d) d^{-s} E(Nz/d, s)``.
    With ``reduce`` each level-1 argument is first moved into the standard
    ``SL(2, Z)`` fundamental domain, which keeps the Fourier series short.
    """
    z = as_point(z)
    s = _check_s(s)
    if int(N) != N or N < 1:
        raise DomainError("level N must be a positive integer")
    N = int(N)
    norm = float(N) ** s
    for p in prime_divisors(N):
        norm *= 1.0 - float(p) ** (-2 * s)
    acc = []
    err = 0.0
    work = 0
    for d in divisors(N):
        mu = mobius(d)
        if mu == 0:
            continue
        w = N * z / d
        if reduce:
            w = reduce_sl2z(w)
        r = epstein_fourier(w, s, n_max)
        acc.append(mu * float(d) ** (-s) * r.value)
        err += float(d) ** (-s) * r.err_estimate
        work += r.work
    return EvalResult(math.fsum(acc) / norm, err / norm, work, "mobius")


def addition_formula_residuals(z, s: int) -> dict[str, float]:
    """Residuals of the level-1/2/4 addition formulae at ``z``.

    Keys follow the identities: ``hecke4_shift``, ``hecke2_add_first``,
    ``hecke2_add_second``, ``sl2z_add``, ``hecke2_expn``, ``hecke4_expn``.
    """
    z = as_point(z)
    s = _check_s(s)

    def E(w, level):
        return epstein_levelN(w, s, level).value

    two_s = 2.0**s
    c = two_s - 1.0 / two_s
    e2 = E(z, 2)
    e4 = E(z, 4)
    return {
        "hecke4_shift": abs(e4 - E(z + 0.5, 4)),
        "hecke2_add_first": abs(e2 - two_s * E(z / 2.0, 4)),
        "hecke2_add_second": abs(e2 - (e4 + E(-1.0 / (2.0 * (2.0 * z + 1.0)), 4))),
        "sl2z_add": abs(E(z, 1) - two_s * (E(z / 2.0, 4) + two_s * E(-1.0 / (4.0 * z), 4))),
        "hecke2_expn": abs(e2 - (E(2.0 * z, 1) - E(z, 1) / two_s) / c),
        "hecke4_expn": abs(e4 - (E(4.0 * z, 1) - E(2.0 * z, 1) / two_s) / (two_s * c)),
    }


def laplacian_eigencheck(z, s: int, h: float = 1e-3) -> float:
    """Relative residual of ``y^2 (f_xx + f_yy) = s(s-1) f`` by a 5-point stencil."""
    z = as_point(z)
    s = _check_s(s)
    if not (1e-4 <= h <= 1e-2):
        raise DomainError("stencil step h must lie in [1e-4, 1e-2]")
    if z.imag <= 2 * h:
        raise DomainError("Im z must exceed 2h")

    def f(w):
        return epstein_fourier(w, s).value

    centre = f(z)
    lap = (f(z + h) + f(z - h) + f(z + 1j * h) + f(z - 1j * h) - 4.0 * centre) / (h * h)
    target = s * (s - 1) * centre
    return abs(z.imag**2 * lap - target) / abs(target)
