"""Tanh-sinh and Gauss-Legendre quadrature over straight complex segments.

Integrands receive two arrays, ``t`` and ``tc = 1 - t``, where ``tc`` is
formed from whichever endpoint is nearer so that it keeps full relative
accuracy close to ``t = 1``. This matters for ``K(sqrt(t))``, whose log
singularity sits there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import AccuracyError, DomainError, PathError

Integrand = Callable[[np.ndarray, np.ndarray], np.ndarray]

# Abscissae beyond |t| = 5 sit within 1e-110 of the endpoints; weights there
# are negligible against any polylog endpoint growth.
TANH_SINH_TMAX = 5.0
MIN_LEVEL = 3
# Cancelling integrands cannot be resolved below ~eps * int |f|; the stopping
# test uses max(tol, ROUNDOFF_FACTOR * eps * int |f|).
ROUNDOFF_FACTOR = 1000.0
_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class QuadratureSpec:
    """Quadrature rule and accuracy budget."""

    rule: Literal["tanh_sinh", "gauss_legendre"] = "tanh_sinh"
    max_level: int = 12
    tol: float = 1e-10

    def __post_init__(self):
        if self.rule not in ("tanh_sinh", "gauss_legendre"):
            raise DomainError(f"unknown quadrature rule {self.rule!r}")
        if not (1 <= self.max_level <= 14):
            raise DomainError("max_level must lie in [1, 14]")
        if self.tol < 1e-13:
            raise DomainError("tol must be >= 1e-13")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class ComplexSegment:
    """Straight path ``t(u) = start + u (end - start)``, ``u`` in ``[0, 1]``.

    ``end_complement`` optionally supplies ``1 - end`` computed more
    accurately than the subtraction would give.
    """

    start: complex
    end: complex
    end_complement: complex | None = None

    def crosses_cut(self) -> bool:
        """True if an interior point lies on ``[1, +inf)`` or an end lies beyond 1."""
        a, b = complex(self.start), complex(self.end)
        for p in (a, b):
            if p.imag == 0.0 and p.real > 1.0:
                return True
        d = b - a
        if d.imag == 0.0:
            if a.imag != 0.0:
                return False
            lo, hi = sorted((a.real, b.real))
            # interior (lo, hi) meets [1, inf)?
            return hi > 1.0 and lo < hi and max(lo, 1.0) < hi
        u = -a.imag / d.imag
        if not (0.0 < u < 1.0):
            return False
        return (a + u * d).real >= 1.0


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    n_evals: int
    level: int


def _node_arrays(h: float, odd_only: bool):
    k_max = int(math.ceil(TANH_SINH_TMAX / h))
    k = np.arange(-k_max, k_max + 1)
    if odd_only:
        k = k[k % 2 != 0]
    t = k * h
    s = 0.5 * math.pi * np.sinh(t)
    # u = 1/(1 + e^{-2s}), v = 1 - u = 1/(1 + e^{2s})
    u = 1.0 / (1.0 + np.exp(-2.0 * s))
    v = 1.0 / (1.0 + np.exp(2.0 * s))
    w = math.pi * np.cosh(t) * u * v
    return u, v, w


def _evaluate(f: Integrand, seg: ComplexSegment, u, v):
    a, b = complex(seg.start), complex(seg.end)
    d = b - a
    ca = 1.0 - a
    cb = (1.0 - b) if seg.end_complement is None else complex(seg.end_complement)
    near_start = u <= 0.5
    t = np.where(near_start, a + u * d, b - v * d)
    tc = np.where(near_start, ca - u * d, cb + v * d)
    keep = (u > 0.0) & (v > 0.0)
    out = np.zeros(u.shape, dtype=complex)
    if np.any(keep):
        out[keep] = f(t[keep], tc[keep])
    return out


def tanh_sinh(f: Integrand, seg: ComplexSegment, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """Tanh-sinh quadrature of ``f`` along ``seg``.

    Halves the step from ``h = 1`` until two successive levels agree to
    ``spec.tol`` (and at least ``MIN_LEVEL`` halvings are done). The reported
    error is the difference of the last two levels. For integrands with heavy
    cancellation the target is relaxed to the rounding floor of ``int |f|``.
    """
    d = complex(seg.end) - complex(seg.start)
    h = 1.0
    u, v, w = _node_arrays(h, odd_only=False)
    vals = w * _evaluate(f, seg, u, v)
    s = np.sum(vals)
    s_abs = np.sum(np.abs(vals))
    n_evals = u.size
    prev = s * h
    err = math.inf
    for level in range(1, spec.max_level + 1):
        h *= 0.5
        u, v, w = _node_arrays(h, odd_only=True)
        vals = w * _evaluate(f, seg, u, v)
        s = s + np.sum(vals)
        s_abs = s_abs + np.sum(np.abs(vals))
        n_evals += u.size
        cur = s * h
        err = abs(cur - prev) * abs(d)
        prev = cur
        floor = ROUNDOFF_FACTOR * _EPS * s_abs * h * abs(d)
        if level >= MIN_LEVEL and err <= max(spec.tol, floor):
            return QuadResult(complex(cur * d), float(err), n_evals, level)
    raise AccuracyError(f"tanh-sinh error estimate {err:.3g} above tol {spec.tol:.3g}")


def tanh_sinh_levels(f: Integrand, seg: ComplexSegment, max_level: int = 8) -> list[tuple[int, complex, float]]:
    """Per-level ``(level, value, error estimate)`` history for convergence studies."""
    d = complex(seg.end) - complex(seg.start)
    h = 1.0
    u, v, w = _node_arrays(h, odd_only=False)
    s = np.sum(w * _evaluate(f, seg, u, v))
    prev = s * h
    out = [(0, complex(prev * d), math.inf)]
    for level in range(1, max_level + 1):
        h *= 0.5
        u, v, w = _node_arrays(h, odd_only=True)
        s = s + np.sum(w * _evaluate(f, seg, u, v))
        cur = s * h
        out.append((level, complex(cur * d), float(abs(cur - prev) * abs(d))))
        prev = cur
    return out


def gauss_legendre(f: Integrand, seg: ComplexSegment, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """Gauss-Legendre on ``seg``, doubling the node count until stable.

    Only suitable for integrands smooth on the closed segment.
    """
    d = complex(seg.end) - complex(seg.start)
    prev = None
    n_evals = 0
    n = 8
    err = math.inf
    for level in range(spec.max_level + 1):
        x, w = np.polynomial.legendre.leggauss(n)
        u = 0.5 * (x + 1.0)
        v = 0.5 * (1.0 - x)
        cur = 0.5 * np.sum(w * _evaluate(f, seg, u, v)) * d
        n_evals += n
        if prev is not None:
            err = abs(cur - prev)
            if err <= spec.tol:
                return QuadResult(complex(cur), float(err), n_evals, level)
        prev = cur
        n *= 2
        if n > 4096:
            break
    raise AccuracyError(f"Gauss-Legendre error estimate {err:.3g} above tol {spec.tol:.3g}")


def quad_segment(f: Integrand, seg: ComplexSegment, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """Integrate ``f(t, 1 - t)`` along ``seg`` with the rule named in ``spec``.

    Raises :class:`PathError` if the segment runs into the cut ``[1, +inf)``
    of ``K(sqrt(t))``; touching ``t = 1`` at an endpoint is allowed.
    """
    if seg.crosses_cut():
        raise PathError(f"segment {seg.start} -> {seg.end} meets the cut [1, +inf)")
    if spec.rule == "gauss_legendre":
        return gauss_legendre(f, seg, spec)
    return tanh_sinh(f, seg, spec)


def gauss_legendre_interval(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int = 96) -> float:
    """Fixed-order Gauss-Legendre on a real interval ``[a, b]``."""
    x, w = np.polynomial.legendre.leggauss(n)
    xm = 0.5 * (b - a) * x + 0.5 * (b + a)
    return 0.5 * (b - a) * float(np.sum(w * f(xm)))
