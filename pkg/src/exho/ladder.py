"""Ladder operators on truncated coefficient vectors.

Three annihilation operators are supported:

* ``a``      - oscillator lowering on the PLUS basis, a|n> = sqrt(2n)|n-1>.
* ``c``      - step-three lowering on the MINUS basis,
  c|n> = -[8(n-1)(n-2)(n+3)]^(1/2) |n-3>, with zero modes n = -3, 1, 2.
* ``ctilde`` - the same ladders rescaled to a Heisenberg action,
  ctilde|k, mu> = sqrt(2k)|k-1, mu>.

Coefficients are stored as (log-magnitude, phase) pairs so that states with
|z| of order 100 stay representable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .config import DEFAULT_CONFIG
from .errors import BadIndex, BadMu, LadderMismatch, SingularRegion
from .spectrum import SystemTag, energy, minus_basis, valid_index

MUS = (-3, 1, 2)
Q_ROOTS = (0.0, 8.0, 10.0)
_DROP_REPORT = 1e-12


class TruncationWarning(UserWarning):
    pass


@dataclass(frozen=True)
class LadderKind:
    """Which annihilation operator (and which ladder of the basis) a state uses."""

    kind: str
    mu: int | None = None

    def __post_init__(self):
        if self.kind not in ("a", "c", "ctilde"):
            raise ValueError(f"unknown ladder kind {self.kind!r}")
        if self.kind == "a":
            if self.mu is not None:
                raise BadMu("the a ladder takes no lowest weight")
        elif self.mu not in MUS:
            raise BadMu(f"mu must be one of {MUS}, got {self.mu!r}")

    @classmethod
    def A(cls) -> "LadderKind":
        return cls("a")

    @classmethod
    def C(cls, mu: int) -> "LadderKind":
        return cls("c", mu)

    @classmethod
    def CTilde(cls, mu: int) -> "LadderKind":
        return cls("ctilde", mu)

    @property
    def system(self) -> SystemTag:
        return SystemTag.PLUS if self.kind == "a" else SystemTag.MINUS

    @property
    def step(self) -> int:
        return 1 if self.kind == "a" else 3

    @property
    def lowest(self) -> int:
        return 0 if self.kind == "a" else self.mu

    @property
    def frequency(self) -> float:
        """Energy spacing between neighbouring ladder states."""
        return 2.0 * self.step

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.frequency

    def nu(self, k):
        """Physical eigenstate index of ladder position k."""
        return self.lowest + self.step * np.asarray(k)

    def same_basis(self, other: "LadderKind") -> bool:
        return self.system is other.system and self.lowest == other.lowest

    def label(self) -> str:
        return "a" if self.kind == "a" else f"{self.kind}({self.mu})"

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class CoefficientVector:
    """Immutable truncated expansion over one ladder, entries k = 0..K."""

    ladder: LadderKind
    log_mag: np.ndarray
    phase: np.ndarray
    dropped_weight: float = field(default=0.0, compare=False)

    def __post_init__(self):
        log_mag = np.array(self.log_mag, dtype=float)
        phase = np.array(self.phase, dtype=float)
        if log_mag.shape != phase.shape or log_mag.ndim != 1:
            raise ValueError("log_mag and phase must be matching 1-d arrays")
        phase = np.where(np.isneginf(log_mag), 0.0, phase)
        log_mag.flags.writeable = False
        phase.flags.writeable = False
        object.__setattr__(self, "log_mag", log_mag)
        object.__setattr__(self, "phase", phase)

    @classmethod
    def from_amplitudes(cls, ladder: LadderKind, amplitudes) -> "CoefficientVector":
        amps = np.asarray(amplitudes, dtype=complex)
        with np.errstate(divide="ignore"):
            log_mag = np.log(np.abs(amps))
        return cls(ladder, log_mag, np.angle(amps))

    @classmethod
    def from_physical(cls, ladder: LadderKind, amplitudes: dict[int, complex]) -> "CoefficientVector":
        """Build from ``{nu: amplitude}``; every nonzero nu must sit on the ladder."""
        entries = {}
        for nu, amp in amplitudes.items():
            if amp == 0:
                continue
            if not valid_index(ladder.system, nu):
                raise BadIndex(f"{nu} is not a {ladder.system.value} state")
            k, rem = divmod(nu - ladder.lowest, ladder.step)
            if rem or k < 0:
                raise LadderMismatch(f"state {nu} is not on ladder {ladder}")
            entries[k] = amp
        size = max(entries, default=0) + 1
        amps = np.zeros(size, dtype=complex)
        for k, amp in entries.items():
            amps[k] = amp
        return cls.from_amplitudes(ladder, amps)

    @classmethod
    def basis_vector(cls, ladder: LadderKind, k: int, size: int | None = None) -> "CoefficientVector":
        size = k + 1 if size is None else size
        log_mag = np.full(size, -np.inf)
        log_mag[k] = 0.0
        return cls(ladder, log_mag, np.zeros(size))

    @property
    def K(self) -> int:
        return self.log_mag.size - 1

    @property
    def nus(self) -> np.ndarray:
        return self.ladder.nu(np.arange(self.log_mag.size))

    def weights(self) -> np.ndarray:
        return np.exp(2.0 * self.log_mag)

    def norm2(self) -> float:
        return float(self.weights().sum())

    def amplitudes(self) -> np.ndarray:
        return np.exp(self.log_mag) * np.exp(1j * self.phase)

    def energies(self) -> np.ndarray:
        return np.array([energy(self.ladder.system, int(nu)) for nu in self.nus])

    def with_ladder(self, ladder: LadderKind) -> "CoefficientVector":
        if not ladder.same_basis(self.ladder):
            raise LadderMismatch(f"{ladder} and {self.ladder} use different bases")
        return CoefficientVector(ladder, self.log_mag, self.phase, self.dropped_weight)


def inner(u: CoefficientVector, v: CoefficientVector) -> complex:
    """<u|v>; zero when the vectors live on different ladders."""
    if not u.ladder.same_basis(v.ladder):
        return 0.0j
    n = min(u.log_mag.size, v.log_mag.size)
    lm = u.log_mag[:n] + v.log_mag[:n]
    dphi = v.phase[:n] - u.phase[:n]
    return complex(np.sum(np.exp(lm) * np.exp(1j * dphi)))


def difference_norm(u: CoefficientVector, v: CoefficientVector) -> float:
    """||u - v|| for vectors on the same ladder, padding the shorter one."""
    if not u.ladder.same_basis(v.ladder):
        raise LadderMismatch("vectors live on different ladders")
    n = max(u.log_mag.size, v.log_mag.size)
    a = np.zeros(n, complex)
    b = np.zeros(n, complex)
    a[: u.log_mag.size] = u.amplitudes()
    b[: v.log_mag.size] = v.amplitudes()
    return float(np.linalg.norm(a - b))


def scaled(v: CoefficientVector, s: complex) -> CoefficientVector:
    if s == 0:
        return CoefficientVector(v.ladder, np.full_like(v.log_mag, -np.inf), np.zeros_like(v.phase))
    return CoefficientVector(v.ladder, v.log_mag + math.log(abs(s)), v.phase + np.angle(s))


def _log_factors(f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    with np.errstate(divide="ignore"):
        return np.log(np.abs(f)), np.where(f < 0, math.pi, 0.0)


def _lower(v: CoefficientVector, factors: np.ndarray) -> CoefficientVector:
    # factors[k] multiplies entry k as it moves to k - 1 (k = 1..K)
    lf, ph = _log_factors(factors[1:])
    log_mag = np.append(lf + v.log_mag[1:], -np.inf)
    phase = np.append(ph + v.phase[1:], 0.0)
    return CoefficientVector(v.ladder, log_mag, phase)


def _raise(v: CoefficientVector, factors: np.ndarray, extend: bool) -> CoefficientVector:
    # factors[k] multiplies entry k as it moves to k + 1 (k = 0..K)
    lf, ph = _log_factors(factors)
    log_mag = np.concatenate([[-np.inf], lf + v.log_mag])
    phase = np.concatenate([[0.0], ph + v.phase])
    dropped = 0.0
    if not extend:
        dropped = float(np.exp(2.0 * log_mag[-1]))
        log_mag, phase = log_mag[:-1], phase[:-1]
        if dropped > _DROP_REPORT:
            warnings.warn(f"raising dropped weight {dropped:.3e} at the truncation edge",
                          TruncationWarning, stacklevel=3)
    return CoefficientVector(v.ladder, log_mag, phase, dropped)


def _require(v: CoefficientVector, system: SystemTag, mu: int | None = None) -> None:
    if v.ladder.system is not system:
        raise LadderMismatch(f"operator acts on the {system.value} basis, vector is {v.ladder}")
    if mu is not None:
        if mu not in MUS:
            raise BadMu(f"mu must be one of {MUS}, got {mu!r}")
        if v.ladder.lowest != mu:
            raise LadderMismatch(f"vector lives on ladder {v.ladder}, operator on mu={mu}")


def lower_a(v: CoefficientVector) -> CoefficientVector:
    _require(v, SystemTag.PLUS)
    k = np.arange(v.log_mag.size, dtype=float)
    return _lower(v, np.sqrt(2.0 * k))


def raise_a(v: CoefficientVector, extend: bool = True) -> CoefficientVector:
    _require(v, SystemTag.PLUS)
    k = np.arange(v.log_mag.size, dtype=float)
    return _raise(v, np.sqrt(2.0 * (k + 1.0)), extend)


def c_element(nu) -> np.ndarray:
    """Coefficient of |nu - 3> in c|nu>."""
    nu = np.asarray(nu, dtype=float)
    return -np.sqrt(8.0 * (nu - 1.0) * (nu - 2.0) * (nu + 3.0))


def c_dagger_element(nu) -> np.ndarray:
    """Coefficient of |nu + 3> in c^dagger|nu>."""
    nu = np.asarray(nu, dtype=float)
    return -np.sqrt(8.0 * (nu + 2.0) * (nu + 1.0) * (nu + 6.0))


def lower_c(v: CoefficientVector, mu: int) -> CoefficientVector:
    _require(v, SystemTag.MINUS, mu)
    return _lower(v, c_element(v.nus))


def raise_c(v: CoefficientVector, mu: int, extend: bool = True) -> CoefficientVector:
    _require(v, SystemTag.MINUS, mu)
    return _raise(v, c_dagger_element(v.nus), extend)


def lower_ctilde(v: CoefficientVector, mu: int) -> CoefficientVector:
    _require(v, SystemTag.MINUS, mu)
    k = np.arange(v.log_mag.size, dtype=float)
    return _lower(v, np.sqrt(2.0 * k))


def raise_ctilde(v: CoefficientVector, mu: int, extend: bool = True) -> CoefficientVector:
    _require(v, SystemTag.MINUS, mu)
    k = np.arange(v.log_mag.size, dtype=float)
    return _raise(v, np.sqrt(2.0 * (k + 1.0)), extend)


def lower(v: CoefficientVector, ladder: LadderKind | None = None) -> CoefficientVector:
    """Apply the annihilation operator that defines ``ladder`` (default: v's own)."""
    ladder = v.ladder if ladder is None else ladder
    if ladder.kind == "a":
        return lower_a(v)
    if ladder.kind == "c":
        return lower_c(v, ladder.mu)
    return lower_ctilde(v, ladder.mu)


def Q(x):
    """Cubic x(x - 8)(x - 10) governing [c, c^dagger]."""
    x = np.asarray(x, dtype=float)
    out = (x - Q_ROOTS[0]) * (x - Q_ROOTS[1]) * (x - Q_ROOTS[2])
    return out if out.ndim else float(out)


def commutator_cc_dagger_eigenvalue(nu: int) -> float:
    """Eigenvalue of [c, c^dagger] on |nu>: Q(E + 6) - Q(E)."""
    e = energy(SystemTag.MINUS, nu)
    return Q(e + 6.0) - Q(e)


def ladder_of(nu: int) -> int:
    """Lowest weight mu of the c-ladder containing state nu."""
    if not valid_index(SystemTag.MINUS, nu):
        raise BadIndex(f"{nu} is not a MINUS state")
    for mu in MUS:
        if (nu - mu) % 3 == 0 and nu >= mu:
            return mu
    raise AssertionError("unreachable: ladders cover every MINUS index")


# 7-point central first derivative
_D7 = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0


def _superpotentials():
    def w_a(x):  # x + M2'/M2
        return x + 8.0 * x / (4.0 * x * x + 2.0)

    def w_1(x):  # x + M0'/M0 - M1'/M1
        return x - 1.0 / x

    def w_2(x):  # x + M1'/M1 - M2'/M2
        return x + 1.0 / x - 8.0 * x / (4.0 * x * x + 2.0)

    # application order: rightmost factor first
    return (w_a, w_1, w_2)


def apply_c_differential(nu: int, x: Iterable[float] | np.ndarray, h: float = DEFAULT_CONFIG.fd_step,
                         exclusion: float = DEFAULT_CONFIG.exclusion_radius) -> np.ndarray:
    """Apply c as a chain of first-order differential operators to psi_nu^(-).

    The chain is d/dx + W for W in (x + M2'/M2, x - 1/x, x + 1/x - M2'/M2),
    applied right to left, with the derivatives taken by 7-point central
    differences at spacing ``h``. The first factor is the supercharge that
    annihilates the ground state. An overall sign of -1 aligns the result
    with ``c_element`` for nu >= 3; under the eigenfunction phases used here
    the 0 -> -3 element comes out with the opposite sign.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) < exclusion):
        raise SingularRegion(f"grid enters |x| < {exclusion}, where the 1/x terms blow up")
    if not valid_index(SystemTag.MINUS, nu):
        raise BadIndex(f"{nu} is not a MINUS state")
    ops = _superpotentials()
    half = 3 * len(ops)
    offsets = np.arange(-half, half + 1) * h
    X = x[:, None] + offsets[None, :]
    F = minus_basis([nu], X.ravel())[0].reshape(X.shape)
    for w in ops:
        width = F.shape[1] - 6
        dF = sum(_D7[i] * F[:, i:i + width] for i in range(7)) / h
        X = X[:, 3:-3]
        F = dF + w(X) * F[:, 3:-3]
    return -F[:, 0]
