"""Registry of numerical identities run by ``epstein verify``."""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import eichler_integrals as ei
from . import reflection_identities as ri
from .epstein_core import (
    addition_formula_residuals,
    epstein_fourier,
    epstein_lattice_oracle,
    epstein_levelN,
    epstein_ramanujan_level1,
    epstein_ramanujan_level4,
    laplacian_eigencheck,
)
from .modular_functions import (
    degree2_lambda,
    eisenstein_e4,
    eisenstein_e4_lambda,
    lambda_inversion_check,
    lambda_k_inverse_check,
    landen_descend,
    modular_lambda,
)
from .special_functions import catalan, zeta_int

# (lhs, rhs, work)
Outcome = tuple[complex, complex, int]


@dataclass(frozen=True)
class Identity:
    id: str
    tol: float
    run: Callable[[], Outcome]
    relative: bool = False


@dataclass(frozen=True)
class IdentityResult:
    id: str
    lhs: complex
    rhs: complex
    residual: float
    tol: float
    passed: bool
    work: int
    wall_ms: float

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "residual": self.residual,
            "tol": self.tol,
            "pass": self.passed,
            "work": self.work,
            "wall_ms": round(self.wall_ms, 3),
        }


def _jsonable(v):
    v = complex(v)
    return v.real if v.imag == 0.0 else str(v)


def catalan_value() -> float:
    return 30.0 * catalan() / math.pi**2


def level1_at_i(s: int) -> float:
    """``E(i, s) = 4 zeta(s) beta(s) / (2 zeta(2s))`` closed form for even or odd ``s``."""
    from .special_functions import dirichlet_beta

    return 2.0 * zeta_int(s) * dirichlet_beta(s) / zeta_int(2 * s)


def cusp_constant(s: int) -> float:
    c = math.sqrt(math.pi) * math.gamma(s - 0.5) * zeta_int(2 * s - 1) / (2.0 * math.gamma(s) * zeta_int(2 * s))
    return (2.0 ** (s - 1) - 2.0**-s) / (2.0**s - 2.0**-s) * c


# ---------------------------------------------------------------------------
# Identity builders
# ---------------------------------------------------------------------------


def _report(r) -> Outcome:
    return r.lhs, r.rhs, getattr(r, "n_evals", 0)


def _pair(p) -> Outcome:
    return p.lhs, p.rhs, 0


def _catalan_E() -> Outcome:
    r = epstein_ramanujan_level1(1j, 1)
    return r.value, catalan_value(), r.work


def _odd_zeta(n: int) -> Callable[[], Outcome]:
    return lambda: (ei.odd_zeta_integral(n), 1.0, 0)


def _vanishing(key: str) -> Callable[[], Outcome]:
    return lambda: (ei.vanishing_integral(key), 0.0, 0)


def _theorem2(s: int, z: complex = -0.2 + 0.5j) -> Callable[[], Outcome]:
    def run():
        a = ei.theorem2_epstein(z, s)
        b = epstein_ramanujan_level4(z, s - 1)
        return a.value, b.value, a.work + b.work

    return run


def _theorem2_special() -> Outcome:
    # 2z + 1 = i gives E^(4)((1+i)/4, 3) = E(i, 3) / (2^3 (2^3 + 1))
    r = ei.theorem2_epstein(-0.5 + 0.5j, 3)
    return r.value, level1_at_i(3) / 72.0, r.work


def _theorem2_real_path() -> Outcome:
    return ei.theorem2_imag_part(-0.5 + 0.7j, 3), 0.0, 0


def _eichler(idx: int, y: float) -> Callable[[], Outcome]:
    return lambda: _report(ei.eichler_e4_check(1j * y)[idx])


def _substitution(idx: int, y: float) -> Callable[[], Outcome]:
    return lambda: _report(ei.elliptic_substitution_identities(1j * y)[idx])


def _eichler_ray_vs_lambda() -> Outcome:
    ray = ei.eichler_odd_ray_form(0.8)
    sub = ei.elliptic_substitution_identities(0.8j)[0].rhs
    return ray, sub, 0


def _addition(key: str, z: complex = 0.13 + 0.9j, s: int = 3) -> Callable[[], Outcome]:
    return lambda: (addition_formula_residuals(z, s)[key], 0.0, 0)


def _fourier_vs_r1() -> Outcome:
    a = epstein_ramanujan_level1(0.37 + 1.41j, 3)
    b = epstein_fourier(0.37 + 1.41j, 4)
    return a.value, b.value, a.work + b.work


def _lattice_vs_fourier() -> Outcome:
    a = epstein_lattice_oracle(2j, 3, 500)
    b = epstein_fourier(2j, 3)
    return a.value, b.value, a.work


def _lattice_within_bound() -> Outcome:
    a = epstein_lattice_oracle(2j, 3, 500)
    b = epstein_fourier(2j, 3)
    # passes iff the gap is inside the lattice bound
    return abs(a.value - b.value) / a.err_estimate, 0.0, a.work


def _hecke4_spec() -> Outcome:
    r = epstein_ramanujan_level4(-0.5 + 0.5j, 1)
    return r.value, catalan_value() / 20.0, r.work


def _hecke2_spec() -> Outcome:
    r = epstein_levelN(0.5 + 0.5j, 2, 2)
    return r.value, catalan_value() / 5.0, r.work


def _asympt() -> Outcome:
    y, s = 10.0, 2
    c = math.sqrt(math.pi) * math.gamma(s - 0.5) / math.gamma(s) * zeta_int(2 * s - 1) / zeta_int(2 * s)
    r = epstein_fourier(1j * y, s)
    return r.value, y**s + c * y ** (1 - s), r.work


def _cusp() -> Outcome:
    y, s = 0.01, 2
    r = epstein_levelN(1j * y, s, 4)
    return r.value * y ** (1 - s), cusp_constant(s), r.work


def _laplacian() -> Outcome:
    return laplacian_eigencheck(1j, 2, 1e-3), 0.0, 5


def _grid(seed: int) -> Callable[[], Outcome]:
    def run():
        rng = np.random.default_rng(seed)
        zs = rng.uniform(-1.0, 1.0, 5) + 1j * rng.uniform(0.5, 3.0, 5)
        worst = 0.0
        work = 0
        for z in zs:
            for s in (2, 5, 8):
                a = epstein_ramanujan_level1(z, s - 1)
                b = epstein_fourier(z, s)
                worst = max(worst, abs(a.value - b.value) / max(1.0, abs(b.value)))
                work += a.work + b.work
        return worst, 0.0, work

    return run


def _lambda_i() -> Outcome:
    return modular_lambda(1j), 0.5, 0


def _lambda_k() -> Outcome:
    return lambda_k_inverse_check(0.3 + 0.8j), 0.0, 0


def _landen(idx: int) -> Callable[[], Outcome]:
    return lambda: _pair(landen_descend(0.3 + 0.2j)[idx])


def _degree2(idx: int) -> Callable[[], Outcome]:
    return lambda: _pair(degree2_lambda(0.2 + 1.1j)[idx])


def _lambda_inv() -> Outcome:
    return _pair(lambda_inversion_check(-0.35 + 0.45j))


def _e4_lambda() -> Outcome:
    z = 0.25 + 0.9j
    return eisenstein_e4(z), eisenstein_e4_lambda(z), 0


def _notebook() -> Outcome:
    return _report(ri.reflection_notebook(cmath.exp(1j * math.pi / 3.0), 2))


def _type2() -> Outcome:
    return _report(ri.reflection_type2(0.97j, 3))


def _zeta11() -> Outcome:
    return ei.zeta11_integral(), 1.0, 0


def build_registry(seed: int = 0) -> list[Identity]:
    """All identities, sorted by id."""
    items = [
        Identity("catalan_E_i_2", 1e-12, _catalan_E),
        Identity("G_sinh", 1e-13, lambda: _report(ri.catalan_sinh_sum())),
        Identity("G_cosh", 1e-13, lambda: _report(ri.catalan_cosh_sum())),
        Identity("lambert_zeta3_i", 1e-13, lambda: _report(ri.lambert_zeta3_at_i())),
        Identity("catalan_chain", 1e-12, lambda: _report(ri.catalan_chain())),
        Identity("reflection_notebook", 1e-11, _notebook),
        Identity("reflection_type2", 1e-11, _type2),
        Identity("zeta3_int", 1e-9, _odd_zeta(1)),
        Identity("zeta5_int", 1e-9, _odd_zeta(2)),
        Identity("zeta7_int", 1e-8, _odd_zeta(3)),
        Identity("zeta9_int", 1e-8, _odd_zeta(4)),
        Identity("zeta13_int", 1e-8, _odd_zeta(6)),
        Identity("zeta11_int", 1e-8, _zeta11),
        Identity("vanish_int1", 1e-7, _vanishing("1")),
        Identity("vanish_int2", 1e-7, _vanishing("2")),
        Identity("vanish_int3", 1e-7, _vanishing("3")),
        Identity("vanish_int4", 1e-7, _vanishing("4")),
        Identity("vanish_w10", 1e-7, _vanishing("w10")),
        Identity("K_int_repn_special_point", 1e-9, _theorem2_special),
        Identity("K_int_repn_real_path", 1e-10, _theorem2_real_path),
        Identity("Eichler_E4a", 1e-10, _eichler(0, 1.0)),
        Identity("Eichler_E4b", 1e-10, _eichler(1, 1.0)),
        Identity("E-3_E4_Eichler_first", 1e-10, _substitution(0, 0.5)),
        Identity("E-3_E4_Eichler_second", 1e-10, _substitution(1, 0.5)),
        Identity("sum_Eichler_a", 1e-10, _substitution(2, 0.5)),
        Identity("Eichler_ray_vs_lambda", 1e-10, _eichler_ray_vs_lambda),
        Identity("Epstein_Hecke4_shift", 1e-11, _addition("hecke4_shift")),
        Identity("Epstein_Hecke2_add_first", 1e-11, _addition("hecke2_add_first")),
        Identity("Epstein_Hecke2_add_second", 1e-11, _addition("hecke2_add_second")),
        Identity("Epstein_SL2Z_add_form", 1e-11, _addition("sl2z_add")),
        Identity("Epstein_Hecke2_expn", 1e-11, _addition("hecke2_expn")),
        Identity("Epstein_Hecke4_expn", 1e-11, _addition("hecke4_expn")),
        Identity("Epstein_Hecke4_special_point", 1e-12, _hecke4_spec),
        Identity("Epstein_Hecke2_special_point", 1e-12, _hecke2_spec),
        Identity("ramanujan1_vs_fourier", 1e-12, _fourier_vs_r1),
        Identity("lattice_vs_fourier", 1e-8, _lattice_vs_fourier),
        Identity("lattice_within_bound", 1.0, _lattice_within_bound),
        Identity("method_grid", 1e-11, _grid(seed)),
        Identity("Epstein_SL2Z_asympt", 1e-12, _asympt, relative=True),
        Identity("Hecke4_bottom_cusp_expn", 1e-6, _cusp),
        Identity("laplacian_eigencheck", 1e-5, _laplacian),
        Identity("lambda_i", 1e-13, _lambda_i),
        Identity("lambda_K_inverse", 1e-11, _lambda_k),
        Identity("Landen_1", 1e-12, _landen(0)),
        Identity("Landen_2", 1e-12, _landen(1)),
        Identity("lambda_inv", 1e-12, _lambda_inv),
        Identity("lambda_double", 1e-12, _degree2(0)),
        Identity("lambda_half", 1e-12, _degree2(1)),
        Identity("E4_lambda", 1e-11, _e4_lambda),
    ]
    items += [Identity(f"K_int_repn{s}", 1e-8, _theorem2(s)) for s in ei.THEOREM2_WEIGHTS]
    items += [
        Identity(f"G_zeta3_K_int_{s}", 1e-8, lambda s=s: _report(ei.catalan_k_integrals(s)))
        for s in ei.CATALAN_FAMILY
    ]
    return sorted(items, key=lambda it: it.id)


def run_identity(identity: Identity, tol: float | None = None) -> IdentityResult:
    """Evaluate one identity; ``tol`` only ever loosens the stored threshold."""
    threshold = identity.tol if tol is None else max(identity.tol, tol)
    t0 = time.perf_counter()
    lhs, rhs, work = identity.run()
    wall = (time.perf_counter() - t0) * 1e3
    residual = abs(complex(lhs) - complex(rhs))
    if identity.relative:
        residual /= max(1.0, abs(complex(rhs)))
    passed = bool(residual < threshold)
    return IdentityResult(identity.id, complex(lhs), complex(rhs), float(residual), threshold, passed, int(work), wall)


def run_verify(only: str | None = None, tol: float | None = None, seed: int = 0) -> list[IdentityResult]:
    registry = build_registry(seed)
    if only is not None:
        registry = [it for it in registry if it.id == only]
        if not registry:
            raise KeyError(only)
    return [run_identity(it, tol) for it in registry]
