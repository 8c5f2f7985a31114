"""Convergence tables for the Epstein evaluators."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .epstein_core import (
    epstein_fourier,
    epstein_lattice_oracle,
    epstein_ramanujan_level1,
    ramanujan_level1_terms,
)

BENCH_POINTS = (1j, 0.3 + 0.7j, 2j)
BENCH_WEIGHTS = (2, 3, 5)
LATTICE_RADII = (10, 20, 40, 80, 160, 320)


@dataclass(frozen=True)
class BenchRow:
    id: str
    method: str
    z: str
    s: int
    work: int
    error: float


def series_tail_slope(z: complex = 1j, m: int = 1, n_lo: int = 1, n_hi: int = 30) -> float:
    """Fitted slope of ``log |sum_{n>N} term_n|`` against ``N``.

    The tail is summed exactly from the computed terms, so no reference
    value is subtracted and no cancellation floor appears.
    """
    terms = ramanujan_level1_terms(z, m, n_hi + 20)
    N = np.arange(n_lo, n_hi + 1)
    tails = np.array([abs(math.fsum(terms[k:])) for k in N])
    return float(np.polyfit(N, np.log(tails), 1)[0])


def lattice_exponent(z: complex = 1j, s: int = 2, radii=LATTICE_RADII) -> float:
    """Fitted exponent ``p`` in ``|lattice(R) - fourier| ~ R^p``."""
    ref = epstein_fourier(z, s).value
    R = np.asarray(radii, dtype=float)
    err = np.array([abs(epstein_lattice_oracle(z, s, int(r)).value - ref) for r in radii])
    return float(np.polyfit(np.log(R), np.log(err), 1)[0])


def _fmt(z: complex) -> str:
    return f"{z.real:g}{z.imag:+g}i"


def convergence_table(points=BENCH_POINTS, weights=BENCH_WEIGHTS) -> list[BenchRow]:
    rows: list[BenchRow] = []
    for z in points:
        for s in weights:
            ref = epstein_fourier(z, s).value
            full = epstein_fourier(z, s).work
            for n in range(1, full + 1):
                for method, fn in (("fourier", epstein_fourier), ("ramanujan1", None)):
                    if fn is None:
                        val = epstein_ramanujan_level1(z, s - 1, n_max=n).value
                    else:
                        val = fn(z, s, n_max=n).value
                    rows.append(BenchRow(f"{method}/{_fmt(z)}/s={s}/n={n}", method, _fmt(z), s, n, abs(val - ref)))
            for R in LATTICE_RADII:
                r = epstein_lattice_oracle(z, s, R)
                rows.append(BenchRow(f"lattice/{_fmt(z)}/s={s}/R={R}", "lattice", _fmt(z), s, r.work, abs(r.value - ref)))
    return rows


def run_bench(seed: int = 0) -> dict:
    """Convergence table plus fitted rates.

    ``seed`` adds one random point in ``0.5 <= Im z <= 2`` to the fixed ones.
    """
    rng = np.random.default_rng(seed)
    extra = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.0))
    rows = convergence_table(BENCH_POINTS + (extra,))
    slope = series_tail_slope()
    fits = {
        "ramanujan1_log_slope": slope,
        "ramanujan1_slope_over_minus_2pi": slope / (-2.0 * math.pi),
        "lattice_exponent_s2": lattice_exponent(),
    }
    return {"rows": [asdict(r) for r in sorted(rows, key=lambda r: (r.method, r.z, r.s, r.work))], "fits": fits}
