"""Invariant checks run by ``exho verify``.

Each check yields one ``Check`` row: a measured number, the tolerance it is
held to, and whether it passed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .coherent import (CatSpec, CoherentSpec, c_normalization, coherent_state, overlap_D,
                       overlap_from_coefficients)
from .config import DEFAULT_CONFIG, SystemConfig
from .dynamics import (cat_density_report, count_peaks, density, density_field, energy_closed_form,
                       energy_closed_form_c, energy_expectation)
from .ladder import (MUS, CoefficientVector, LadderKind, apply_c_differential, c_element,
                     commutator_cc_dagger_eigenvalue, difference_norm, ladder_of, lower, lower_c,
                     raise_c, scaled)
from .specfun import integration_half_width, quadrature_rule
from .spectrum import SpatialGrid, minus_basis

ALL_LADDERS = [LadderKind.A()] + [LadderKind(kind, mu) for kind in ("c", "ctilde") for mu in MUS]


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    tolerance: float
    passed: bool
    note: str = ""

    def row(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name},{self.measured:.6e},{self.tolerance:.1e},{status},{self.note}"


def _le(name, measured, tol, note="") -> Check:
    return Check(name, float(measured), tol, bool(measured <= tol), note)


def minus_gram_error(nus, config: SystemConfig = DEFAULT_CONFIG) -> float:
    nus = list(nus)
    xs, ws = quadrature_rule(integration_half_width(max(nus)), config.quad_nodes, config.panel_width)
    psi = minus_basis(nus, xs)
    gram = (psi * ws) @ psi.T
    return float(np.max(np.abs(gram - np.eye(len(nus)))))


def commutator_errors(nu_max: int = 20) -> tuple[float, float]:
    """Relative diagonal error and largest off-diagonal entry of [c, c^dagger] on |nu>."""
    worst_diag = 0.0
    worst_off = 0.0
    for nu in [-3] + list(range(0, nu_max + 1)):
        mu = ladder_of(nu)
        lad = LadderKind.C(mu)
        k = (nu - mu) // 3
        e = CoefficientVector.basis_vector(lad, k, k + 2)
        cc_dag = lower_c(raise_c(e, mu), mu).amplitudes()
        c_dag_c = raise_c(lower_c(e, mu), mu).amplitudes()
        n = max(cc_dag.size, c_dag_c.size)
        diff = np.zeros(n, complex)
        diff[: cc_dag.size] += cc_dag
        diff[: c_dag_c.size] -= c_dag_c
        expect = commutator_cc_dagger_eigenvalue(nu)
        worst_diag = max(worst_diag, abs(diff[k] - expect) / abs(expect))
        diff[k] = 0.0
        worst_off = max(worst_off, float(np.max(np.abs(diff))))
    return worst_diag, worst_off


def differential_interior_grid() -> np.ndarray:
    x = np.round(np.arange(-8.0, 8.0 + 1e-9, 0.01), 10)
    return x[np.abs(x) >= DEFAULT_CONFIG.exclusion_radius]


def differential_error(nu: int, x: np.ndarray | None = None) -> float:
    """Relative L2 mismatch between the differential chain and the matrix action.

    For zero modes (nu = -3, 1, 2) this is ||c psi_nu|| / ||psi_nu||.
    """
    x = differential_interior_grid() if x is None else x
    got = apply_c_differential(nu, x)
    if nu in (-3, 1, 2):
        return float(np.linalg.norm(got) / np.linalg.norm(minus_basis([nu], x)[0]))
    want = float(c_element(nu)) * minus_basis([nu - 3], x)[0]
    return float(np.linalg.norm(got - want) / np.linalg.norm(want))


def eigen_residual(ladder: LadderKind, z: complex, config: SystemConfig = DEFAULT_CONFIG) -> float:
    v = coherent_state(ladder, z, config)
    return difference_norm(lower(v), scaled(v, z))


def gaussian_law_error(z: float = 2.0, times=(0.0, math.pi / 8, math.pi / 4)) -> float:
    grid = SpatialGrid(-20.0, 20.0, 4001)
    x = grid.points()
    v = coherent_state(LadderKind.A(), z)
    field = density_field(v, grid, times)
    exact = np.exp(-(x[:, None] - z * np.cos(2.0 * np.asarray(times))[None, :]) ** 2) / math.sqrt(math.pi)
    return float(np.max(np.abs(field.values - exact)))


def periodicity_error(ladder: LadderKind, z: complex, grid: SpatialGrid,
                      times=(0.0, 0.1, 0.37)) -> float:
    v = coherent_state(ladder, z)
    times = np.asarray(times)
    a = density_field(v, grid, times).values
    b = density_field(v, grid, times + ladder.period).values
    return float(np.max(np.abs(a - b)))


def c_energy_adjudication(mu: int, zs=(1.0, 5.0, 15.0)) -> tuple[float, float]:
    """Worst relative error of the shifted and unshifted closed forms against the series."""
    shifted = unshifted = 0.0
    for za in zs:
        series = energy_expectation(coherent_state(LadderKind.C(mu), za))
        cf = energy_closed_form_c(za, mu)
        shifted = max(shifted, abs(cf.shifted - series) / abs(series))
        unshifted = max(unshifted, abs(cf.unshifted - series) / abs(series))
    return shifted, unshifted


def _checks(config: SystemConfig) -> Iterator[Check]:
    yield _le("orthonormality.minus_gram", minus_gram_error([-3] + list(range(31)), config), 1e-8)

    diag, off = commutator_errors(20)
    yield _le("algebra.commutator_diag", diag, 1e-10)
    yield _le("algebra.commutator_offdiag", off, 1e-10)
    e = CoefficientVector.basis_vector(LadderKind.C(-3), 0)
    ground = raise_c(e, -3).norm2() - lower_c(e, -3).norm2()
    yield _le("algebra.ground_commutator_48", abs(ground - 48.0) / 48.0, 1e-10)

    yield _le("ladder.differential_lowering",
              max(differential_error(nu) for nu in range(3, 13)), 1e-5)
    yield _le("ladder.differential_zero_modes",
              max(differential_error(nu) for nu in (-3, 1, 2)), 1e-5)

    worst = max(eigen_residual(lad, z, config) for lad in ALL_LADDERS for z in (1.0, 15.0))
    worst = max(worst, max(eigen_residual(LadderKind.C(mu), 100.0, config) for mu in MUS))
    yield _le("coherent.eigen_residual", worst, 1e-8)

    worst = 0.0
    for mu in MUS:
        for za in (1.0, 15.0, 100.0):
            v = coherent_state(LadderKind.C(mu), za, config)
            # normalized a_0 = 1/sqrt(termwise sum of |z|^2k/|D_k|^2)
            termwise = math.exp(-2.0 * v.log_mag[0])
            worst = max(worst, abs(termwise / c_normalization(za, mu) - 1.0))
    yield _le("coherent.normalization_1F3", worst, 1e-10)

    for lad in (LadderKind.A(), LadderKind.CTilde(-3), LadderKind.CTilde(1), LadderKind.CTilde(2)):
        e15 = energy_expectation(coherent_state(lad, 15.0, config))
        yield _le(f"energy.closed_form[{lad}]", abs(e15 - energy_closed_form(lad, 15.0)) / e15, 1e-10)

    for mu in MUS:
        shifted, unshifted = c_energy_adjudication(mu)
        ok_shift, ok_unshifted = shifted <= 1e-8, unshifted <= 1e-8
        if ok_shift != ok_unshifted:
            winner = "shifted" if ok_shift else "unshifted"
        else:
            winner = "none"
        yield Check(f"energy.c_closed_form_adjudication[c({mu})]", unshifted if winner == "unshifted" else shifted,
                    1e-8, winner != "none", f"winner={winner} shifted={shifted:.2e} unshifted={unshifted:.2e}")

    worst = max(abs(overlap_D(za, LadderKind.C(mu)) - overlap_from_coefficients(za, LadderKind.C(mu), config))
                for mu in MUS for za in (1.0, 5.0, 15.0))
    yield _le("overlap.c_closed_vs_series", worst, 1e-10)
    worst = max(abs(overlap_from_coefficients(za, lad, config) - math.exp(-za * za))
                for lad in (LadderKind.A(), LadderKind.CTilde(-3)) for za in (0.5, 1.0, 3.0, 6.0))
    yield _le("overlap.gaussian_closed_vs_series", worst, 1e-12)

    yield _le("density.gaussian_law", gaussian_law_error(), 1e-6)

    grid = SpatialGrid(config.xmin, config.xmax, config.nx)
    worst_norm = worst_period = 0.0
    for lad in ALL_LADDERS:
        for z in (0.0, 2.0, 15.0):
            v = coherent_state(lad, z, config)
            f = density_field(v, grid, [0.0, 0.2], config)
            worst_norm = max(worst_norm, f.max_deficit())
        worst_period = max(worst_period, periodicity_error(lad, 15.0, grid))
    yield _le("density.normalization", worst_norm, 1e-6)
    yield _le("density.periodicity", worst_period, 1e-8)

    x = grid.points()
    v = coherent_state(LadderKind.CTilde(-3), 15.0, config)
    n_sep = len(count_peaks(density(v, grid, math.pi / 24, config), x))
    n_t0 = len(count_peaks(density(v, grid, 0.0, config), x))
    yield Check("density.ctilde_three_packets", n_sep, 3, n_sep == 3, f"peaks at t=pi/24; t=0 shows {n_t0}")

    worst = 0.0
    for lad in (LadderKind.A(), LadderKind.C(-3)):
        spec = CatSpec(CoherentSpec(lad, 15.0), "odd")
        rep = cat_density_report(spec, SpatialGrid(-20.0, 20.0, 401), np.linspace(0, lad.period, 16), config)
        worst = max(worst, rep.max_at_origin())
    yield _le("cat.odd_nodal_line", worst, 1e-10)


def run_checks(config: SystemConfig = DEFAULT_CONFIG,
               progress: Callable[[Check], None] | None = None) -> list[Check]:
    out = []
    for check in _checks(config):
        out.append(check)
        if progress is not None:
            progress(check)
    return out


REPORT_HEADER = "check,measured,tolerance,status,note"
