"""Time evolution, position densities and energy expectations."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np
from scipy.signal import find_peaks

from .coherent import CatSpec, c_parameters, cat_state, coherent_state
from .config import DEFAULT_CONFIG, SystemConfig
from .ladder import CoefficientVector, LadderKind
from .specfun import hyp1f3
from .spectrum import SpatialGrid, basis


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def evolve(v: CoefficientVector, t: float) -> CoefficientVector:
    """Apply exp(-iHt): each phase drops by E_nu t."""
    if t == 0:
        return v
    phase = np.mod(v.phase - v.energies() * t, 2.0 * math.pi)
    return CoefficientVector(v.ladder, v.log_mag, phase, v.dropped_weight)


def _kept(v: CoefficientVector, drop_weight: float) -> np.ndarray:
    """Indices retained after discarding the lightest entries up to ``drop_weight``."""
    w = v.weights()
    order = np.argsort(w)
    cum = np.cumsum(w[order])
    ndrop = int(np.searchsorted(cum, drop_weight, side="left"))
    keep = np.sort(order[ndrop:])
    return keep if keep.size else np.array([int(np.argmax(w))])


def _points(grid) -> np.ndarray:
    if isinstance(grid, SpatialGrid):
        return grid.points()
    return np.atleast_1d(np.asarray(grid, dtype=float))


def _density_matrix(v: CoefficientVector, x: np.ndarray, times: Sequence[float],
                    config: SystemConfig) -> np.ndarray:
    keep = _kept(v, config.drop_weight)
    nus = v.nus[keep]
    psi = basis(v.ladder.system, [int(n) for n in nus], x)
    energies = v.energies()[keep]
    amps = v.amplitudes()[keep]
    times = np.asarray(times, dtype=float)
    phases = np.exp(-1j * np.mod(np.outer(times, energies), 2.0 * math.pi))
    wave = (phases * amps[None, :]) @ psi
    return (wave.real ** 2 + wave.imag ** 2).T


def density(v: CoefficientVector, grid, t: float = 0.0,
            config: SystemConfig = DEFAULT_CONFIG) -> np.ndarray:
    """|sum_k a_k exp(-i E t) psi_nu(x)|^2 on the grid."""
    return _density_matrix(v, _points(grid), [t], config)[:, 0]


@dataclass(frozen=True)
class DensityField:
    """rho(x_i, t_j), stored with x along axis 0 and t along axis 1."""

    grid: SpatialGrid
    times: np.ndarray
    values: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return self.grid.points()

    def norms(self) -> np.ndarray:
        return np.trapezoid(self.values, self.x, axis=0)

    def max_deficit(self) -> float:
        return float(np.max(np.abs(1.0 - self.norms())))

    def to_csv(self, path) -> None:
        """Header ``x,t,rho``; rows ordered by t, then x."""
        x = self.x
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "t", "rho"])
            for j, t in enumerate(self.times):
                ts = _fmt(t)
                for i, xi in enumerate(x):
                    w.writerow([_fmt(xi), ts, _fmt(self.values[i, j])])

    @classmethod
    def from_csv(cls, path) -> "DensityField":
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        times = np.unique(data[:, 1])
        nt = times.size
        nx = data.shape[0] // nt
        xs = data[:nx, 0]
        values = data[:, 2].reshape(nt, nx).T
        grid = SpatialGrid(float(xs[0]), float(xs[-1]), nx)
        return cls(grid, data[::nx, 1], values)


def density_field(v: CoefficientVector, grid: SpatialGrid, times: Sequence[float],
                  config: SystemConfig = DEFAULT_CONFIG) -> DensityField:
    times = np.asarray(times, dtype=float)
    return DensityField(grid, times, _density_matrix(v, grid.points(), times, config))


def one_period(ladder: LadderKind, samples: int = DEFAULT_CONFIG.t_samples, cat: bool = False) -> np.ndarray:
    period = ladder.period / (2.0 if cat else 1.0)
    return np.linspace(0.0, period, samples, endpoint=False)


def count_peaks(rho: np.ndarray, x: np.ndarray, threshold: float = DEFAULT_CONFIG.peak_threshold,
                separation: float = DEFAULT_CONFIG.peak_separation) -> np.ndarray:
    """Indices of local maxima above ``threshold`` at least ``separation`` apart in x."""
    dx = float(x[1] - x[0])
    distance = max(1, int(math.ceil(separation / dx - 1e-9)))
    idx, _ = find_peaks(rho, height=threshold, distance=distance)
    return idx


def energy_expectation(v: CoefficientVector) -> float:
    """sum_k |a_k|^2 E_nu(k)."""
    return float(np.dot(v.weights(), v.energies()))


class ClosedFormEnergy(NamedTuple):
    shifted: float
    unshifted: float


def energy_closed_form_c(zabs: float, mu: int) -> ClosedFormEnergy:
    """Two closed forms of the c-state energy.

    ``shifted`` uses 1F3(2; b + 1; x) in the numerator, which is what the
    termwise sum over z^k / D_k gives; ``unshifted`` keeps the lower parameters
    b of the normalization series.
    """
    b = c_parameters(mu)
    x = zabs * zabs / 216.0
    base = 6.0 + 2.0 * mu
    pref = 0.75 * zabs * zabs / ((mu + 2) * (mu + 1) * (mu + 6))
    denom = hyp1f3(1.0, *b, x)
    shifted = base + pref * hyp1f3(2.0, *(bi + 1.0 for bi in b), x) / denom
    unshifted = base + pref * hyp1f3(2.0, *b, x) / denom
    return ClosedFormEnergy(shifted, unshifted)


def energy_closed_form(ladder: LadderKind, zabs: float) -> float:
    if ladder.kind == "a":
        return 6.0 + zabs * zabs
    if ladder.kind == "ctilde":
        return 6.0 + 2.0 * ladder.mu + 3.0 * zabs * zabs
    return energy_closed_form_c(zabs, ladder.mu).shifted


@dataclass(frozen=True)
class EnergyCurve:
    ladder: LadderKind
    samples: np.ndarray       # columns: |z|, energy from the coefficient sum
    closed_form: np.ndarray

    def is_monotone(self) -> bool:
        return bool(np.all(np.diff(self.samples[:, 1]) >= -1e-12 * np.abs(self.samples[1:, 1]).max()))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["z_abs", "energy", "closed_form"])
            for (za, e), cf in zip(self.samples, self.closed_form):
                w.writerow([_fmt(za), _fmt(e), _fmt(cf)])

    @classmethod
    def from_csv(cls, path, ladder: LadderKind) -> "EnergyCurve":
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        return cls(ladder, data[:, :2], data[:, 2])


def energy_curve(ladder: LadderKind, zabs_values: Sequence[float],
                 config: SystemConfig = DEFAULT_CONFIG) -> EnergyCurve:
    zabs_values = np.asarray(zabs_values, dtype=float)
    energies = [energy_expectation(coherent_state(ladder, za, config)) for za in zabs_values]
    closed = [energy_closed_form(ladder, za) for za in zabs_values]
    return EnergyCurve(ladder, np.column_stack([zabs_values, energies]), np.array(closed))


@dataclass(frozen=True)
class CatReport:
    field: DensityField
    origin_trace: np.ndarray  # rho(0, t_j)

    def max_at_origin(self) -> float:
        return float(np.max(self.origin_trace))

    def trace_to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "rho_at_0"])
            for t, r in zip(self.field.times, self.origin_trace):
                w.writerow([_fmt(t), _fmt(r)])


def cat_density_report(spec: CatSpec, grid: SpatialGrid, times: Sequence[float],
                       config: SystemConfig = DEFAULT_CONFIG) -> CatReport:
    """Density field of a cat state plus rho(0, t), evaluated at x = 0 exactly."""
    v = cat_state(spec, config)
    field = density_field(v, grid, times, config)
    origin = _density_matrix(v, np.array([0.0]), field.times, config)[0]
    return CatReport(field, origin)


def read_table(path) -> dict[str, np.ndarray]:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    cols = list(zip(*body)) if body else [()] * len(header)
    return {h: np.array([float(v) for v in c]) for h, c in zip(header, cols)}
