"""Potentials, spectra and position eigenfunctions.

Three systems share the index conventions used throughout the package:

* ``ZERO``  - the bare oscillator -d2/dx2 + x^2, levels 2n + 1.
* ``PLUS``  - the same oscillator shifted by +5, levels 2(n + 3).
* ``MINUS`` - the rationally extended partner with potential
  ``potential_minus(x) + 5``, levels 2(n + 3) for n in {-3, 0, 1, 2, ...}.

The MINUS eigenfunctions are built from the type-III Hermite exceptional
polynomials y_k and share their energies with PLUS, plus a zero-energy
ground state at n = -3.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import BadIndex
from .specfun import hermite, hermite_functions, modified_hermite

# Offset turning potential_minus into the Hamiltonian with ground energy 0.
MINUS_OFFSET = 5.0
_LOG_NORM_FROM = 30


class SystemTag(enum.Enum):
    ZERO = "zero"
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform grid of ``n_points`` samples on [x_min, x_max]."""

    x_min: float = -40.0
    x_max: float = 40.0
    n_points: int = 8001

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be below x_max")
        if self.n_points < 2:
            raise ValueError("n_points must be at least 2")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def symmetric(self) -> bool:
        return self.x_min == -self.x_max

    def points(self) -> np.ndarray:
        x = np.linspace(self.x_min, self.x_max, self.n_points)
        if self.symmetric:
            # exact mirror symmetry, and an exact 0 for odd n_points
            x = 0.5 * (x - x[::-1])
        return x


def potential_minus(x):
    """x^2 + 16(4x^2 - 2)/(4x^2 + 2)^2 - 2; a deep narrow well at the origin."""
    x = np.asarray(x, dtype=float)
    h2 = 4.0 * x * x + 2.0
    v = x * x + 16.0 * (4.0 * x * x - 2.0) / (h2 * h2) - 2.0
    return v if v.ndim else float(v)


def valid_index(system: SystemTag, nu: int) -> bool:
    if system is SystemTag.MINUS:
        return nu == -3 or nu >= 0
    return nu >= 0


def _check(system: SystemTag, nu: int) -> None:
    if not valid_index(system, nu):
        raise BadIndex(f"index {nu} is not a state of the {system.value} system")


def energy(system: SystemTag, nu: int) -> float:
    _check(system, nu)
    if system is SystemTag.ZERO:
        return 2.0 * nu + 1.0
    return 2.0 * (nu + 3)


def eop_polynomial(k: int, x):
    """Exceptional Hermite polynomial y_k for k = 0 or k >= 3."""
    if k == 0:
        x = np.asarray(x, dtype=float)
        y = np.ones_like(x)
        return y if y.ndim else float(y)
    if k < 3:
        raise BadIndex(f"y_{k} does not exist; degrees 1 and 2 are missing")
    nu = k - 3
    y = -modified_hermite(2, x) * hermite(nu + 1, x) - 4.0 * modified_hermite(1, x) * hermite(nu, x)
    return y


def _log_norm_minus(nu: int) -> float:
    # log of [sqrt(pi) 2^(nu+1) (nu+3) nu!]^(-1/2)
    return -0.5 * (0.5 * math.log(math.pi) + (nu + 1) * math.log(2.0)
                   + math.log(nu + 3) + math.lgamma(nu + 1))


def eigenfunction_minus(nu: int, x):
    """Normalized eigenfunction of the extended system with energy 2(nu + 3)."""
    _check(SystemTag.MINUS, nu)
    x = np.asarray(x, dtype=float)
    if nu > _LOG_NORM_FROM:
        out = minus_basis([nu], np.atleast_1d(x))[0]
        return out.reshape(x.shape) if x.ndim else float(out[0])
    h2 = modified_hermite(2, x)
    gauss = np.exp(-0.5 * x * x)
    if nu == -3:
        return math.sqrt(8.0 / math.sqrt(math.pi)) * gauss / h2
    norm = 1.0 / math.sqrt(math.sqrt(math.pi) * 2.0 ** (nu + 1) * (nu + 3) * math.factorial(nu))
    return norm * gauss * eop_polynomial(nu + 3, x) / h2


def eigenfunction_plus(nu: int, x):
    """Normalized oscillator eigenfunction, shared by the ZERO and PLUS systems."""
    _check(SystemTag.PLUS, nu)
    x = np.asarray(x, dtype=float)
    if nu > _LOG_NORM_FROM:
        out = hermite_functions(nu, np.atleast_1d(x), keep=[nu])[nu]
        return out.reshape(x.shape) if x.ndim else float(out[0])
    lognorm = -0.5 * (0.5 * math.log(math.pi) + nu * math.log(2.0) + math.lgamma(nu + 1))
    return math.exp(lognorm) * np.exp(-0.5 * x * x) * hermite(nu, x)


def minus_basis(nus: Iterable[int], x) -> np.ndarray:
    """Rows psi_nu^(-)(x) for each requested index, stable for any nu.

    Rewrites the exceptional eigenfunction in terms of normalized oscillator
    functions phi_n:

        psi_nu = -sqrt((nu+1)/(nu+3)) phi_{nu+1} - 4 M1/(M2 sqrt(2(nu+3))) phi_nu

    with M1 = 2x, M2 = 4x^2 + 2.
    """
    nus = list(nus)
    for nu in nus:
        _check(SystemTag.MINUS, nu)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((len(nus), x.size))
    if not nus:
        return out
    needed = {n for nu in nus if nu >= 0 for n in (nu, nu + 1)}
    phi = hermite_functions(max(needed), x, keep=needed) if needed else {}
    ratio = 2.0 * x / (4.0 * x * x + 2.0)
    ground = math.sqrt(8.0 / math.sqrt(math.pi)) * np.exp(-0.5 * x * x) / (4.0 * x * x + 2.0)
    for i, nu in enumerate(nus):
        if nu == -3:
            out[i] = ground
        else:
            out[i] = (-math.sqrt((nu + 1) / (nu + 3)) * phi[nu + 1]
                      - 4.0 * ratio / math.sqrt(2.0 * (nu + 3)) * phi[nu])
    return out


def plus_basis(nus: Iterable[int], x) -> np.ndarray:
    nus = list(nus)
    for nu in nus:
        _check(SystemTag.PLUS, nu)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if not nus:
        return np.empty((0, x.size))
    phi = hermite_functions(max(nus), x, keep=set(nus))
    return np.array([phi[nu] for nu in nus])


def basis(system: SystemTag, nus: Iterable[int], x) -> np.ndarray:
    if system is SystemTag.MINUS:
        return minus_basis(nus, x)
    return plus_basis(nus, x)
