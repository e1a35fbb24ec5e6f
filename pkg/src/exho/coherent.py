"""Barut-Girardello coherent states and Schrodinger cat states.

Each state is returned as a normalized ``CoefficientVector``. Coefficients
are accumulated as log-magnitudes and phases; the expansion is extended
until the geometric tail estimate falls below ``SystemConfig.tail_tol`` of
the total weight.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.special import gammaln, logsumexp

from .config import DEFAULT_CONFIG, SystemConfig
from .errors import BadMu, DegenerateCat, TruncationCapError
from .ladder import MUS, CoefficientVector, LadderKind, inner
from .specfun import hyp1f3, log_pochhammer_table

_INITIAL_K = 64


@dataclass(frozen=True)
class CoherentSpec:
    ladder: LadderKind
    z: complex


@dataclass(frozen=True)
class CatSpec:
    base: CoherentSpec
    parity: str

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError("parity must be 'even' or 'odd'")


def c_parameters(mu: int) -> tuple[float, float, float]:
    """Lower parameters ((mu+2)/3, (mu+1)/3, (mu+6)/3) of the c-ladder series."""
    if mu not in MUS:
        raise BadMu(f"mu must be one of {MUS}, got {mu!r}")
    return ((mu + 2) / 3.0, (mu + 1) / 3.0, (mu + 6) / 3.0)


def log_abs_D(mu: int, kmax: int) -> tuple[np.ndarray, np.ndarray]:
    """log|D_k| and the sign of D_k for k = 0..kmax.

    D_k = (-1)^k 6^(3k/2) [prod_i (b_i)_k]^(1/2).
    """
    k = np.arange(kmax + 1)
    logmag = 1.5 * k * math.log(6.0)
    sign = np.where(k % 2 == 0, 1, -1)
    prod_sign = np.ones(kmax + 1, dtype=int)
    for b in c_parameters(mu):
        lp, sp = log_pochhammer_table(b, kmax)
        logmag = logmag + 0.5 * lp
        prod_sign = prod_sign * sp
    if np.any(prod_sign <= 0):
        raise ValueError("Pochhammer product is not positive on this ladder")
    return logmag, sign


def _heisenberg_terms(z: complex, kmax: int) -> tuple[np.ndarray, np.ndarray]:
    # (z/sqrt 2)^k / sqrt(k!), unnormalized
    k = np.arange(kmax + 1)
    logmag = k * math.log(abs(z) / math.sqrt(2.0)) - 0.5 * gammaln(k + 1.0)
    return logmag, k * np.angle(z)


def _c_terms(mu: int):
    def terms(z: complex, kmax: int) -> tuple[np.ndarray, np.ndarray]:
        # z^k / D_k, unnormalized
        k = np.arange(kmax + 1)
        logd, sign = log_abs_D(mu, kmax)
        return k * math.log(abs(z)) - logd, k * np.angle(z) + np.where(sign < 0, math.pi, 0.0)
    return terms


def _build(ladder: LadderKind, z: complex, terms, config: SystemConfig) -> CoefficientVector:
    z = complex(z)
    if z == 0:
        return CoefficientVector.basis_vector(ladder, 0)
    log_tol = math.log(config.tail_tol)
    kmax = min(_INITIAL_K, config.kmax)
    while True:
        logmag, phase = terms(z, kmax)
        logw = 2.0 * logmag
        total = logsumexp(logw)
        step = logw[-1] - logw[-2]
        if step < 0:
            # geometric tail r/(1-r) with r = exp(step), kept in logs
            tail = logw[-1] + step - math.log(-math.expm1(step))
            if tail - total < log_tol and logw[-1] - total < log_tol:
                break
        if kmax >= config.kmax:
            raise TruncationCapError(f"{ladder} at |z|={abs(z):g} needs more than {config.kmax} terms")
        kmax = min(2 * kmax, config.kmax)
    # trim trailing entries whose cumulative weight stays below tolerance
    rel = np.exp(logw - total)
    trailing = np.cumsum(rel[::-1])[::-1]
    keep = int(np.argmax(trailing < config.tail_tol)) if trailing[-1] < config.tail_tol else kmax + 1
    keep = max(keep, 1)
    dropped = float(trailing[keep]) if keep <= kmax else 0.0
    logmag = logmag[:keep] - 0.5 * logsumexp(logw[:keep])
    return CoefficientVector(ladder, logmag, np.mod(phase[:keep], 2.0 * math.pi), dropped)


def coherent_a(z: complex, config: SystemConfig = DEFAULT_CONFIG) -> CoefficientVector:
    """Eigenstate of the oscillator lowering operator a with eigenvalue z."""
    return _build(LadderKind.A(), z, _heisenberg_terms, config)


def coherent_c(z: complex, mu: int, config: SystemConfig = DEFAULT_CONFIG) -> CoefficientVector:
    """Eigenstate of c on the ladder with lowest weight ``mu``: entries z^k / D_k, normalized."""
    ladder = LadderKind.C(mu)
    return _build(ladder, z, _c_terms(mu), config)


def coherent_ctilde(z: complex, mu: int, config: SystemConfig = DEFAULT_CONFIG) -> CoefficientVector:
    """Eigenstate of the linearized operator; Poisson weights over the mu ladder."""
    return _build(LadderKind.CTilde(mu), z, _heisenberg_terms, config)


def coherent_state(ladder: LadderKind, z: complex, config: SystemConfig = DEFAULT_CONFIG) -> CoefficientVector:
    if ladder.kind == "a":
        return coherent_a(z, config)
    if ladder.kind == "c":
        return coherent_c(z, ladder.mu, config)
    return coherent_ctilde(z, ladder.mu, config)


def c_normalization(zabs: float, mu: int) -> float:
    """1F3(1; b; |z|^2/216), the squared norm of the unnormalized c state."""
    return hyp1f3(1.0, *c_parameters(mu), zabs * zabs / 216.0)


def overlap_D(zabs: float, ladder: LadderKind) -> float:
    """Closed-form overlap <+z|-z>, real and dependent on |z| only."""
    if ladder.kind in ("a", "ctilde"):
        return math.exp(-zabs * zabs)
    b = c_parameters(ladder.mu)
    x = zabs * zabs / 216.0
    return hyp1f3(1.0, *b, -x) / hyp1f3(1.0, *b, x)


def overlap_from_coefficients(zabs: float, ladder: LadderKind,
                              config: SystemConfig = DEFAULT_CONFIG) -> float:
    """<+z|-z> summed over the constructed coefficient vectors."""
    plus = coherent_state(ladder, zabs, config)
    minus = coherent_state(ladder, -zabs, config)
    return inner(plus, minus).real


def cat_state(spec: CatSpec, config: SystemConfig = DEFAULT_CONFIG) -> CoefficientVector:
    """(|+z> +/- |-z>) / sqrt(2(1 +/- D)).

    The even (odd) cat keeps only even (odd) ladder positions. Its norm
    2(1 +/- D) is taken from the parity-projected weights, which equals the
    closed-form overlap without the cancellation in 1 - D at small |z|.
    """
    z = complex(spec.base.z)
    if spec.parity == "odd" and z == 0:
        raise DegenerateCat("the odd cat state vanishes at z = 0")
    base = coherent_state(spec.base.ladder, z, config)
    k = np.arange(base.log_mag.size)
    keep = (k % 2 == 0) if spec.parity == "even" else (k % 2 == 1)
    logmag = np.where(keep, base.log_mag, -np.inf)
    logmag = logmag - 0.5 * logsumexp(2.0 * logmag[keep])
    return CoefficientVector(base.ladder, logmag, base.phase, base.dropped_weight)


def write_coefficients(v: CoefficientVector, path) -> None:
    """CSV with header ``k,nu,log_mag,phase``; floats at 17 significant digits."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "nu", "log_mag", "phase"])
        for k, (nu, lm, ph) in enumerate(zip(v.nus, v.log_mag, v.phase)):
            w.writerow([k, int(nu), format(lm, ".17g"), format(ph, ".17g")])


def read_coefficients(path, ladder: LadderKind) -> CoefficientVector:
    rows = list(csv.DictReader(Path(path).open(newline="")))
    log_mag = np.array([float(r["log_mag"]) for r in rows])
    phase = np.array([float(r["phase"]) for r in rows])
    nus = np.array([int(r["nu"]) for r in rows])
    if not np.array_equal(nus, ladder.nu(np.arange(len(rows)))):
        raise ValueError(f"nu column does not match ladder {ladder}")
    return CoefficientVector(ladder, log_mag, phase)
