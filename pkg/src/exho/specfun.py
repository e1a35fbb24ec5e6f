"""Special functions and quadrature.

Hermite and modified Hermite polynomials, rising factorials (plain and
log-magnitude), the 1F3 hypergeometric series, normalized oscillator
eigenfunctions by a scaled recurrence, and composite Gauss-Legendre
quadrature.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from .config import DEFAULT_CONFIG, SystemConfig
from .errors import ParameterPole

_SERIES_RTOL = 1e-16
_SERIES_QUIET_TERMS = 3
_SERIES_MAX_TERMS = 100_000


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for j in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * j * h_prev
    return h if h.ndim else float(h)


def modified_hermite(m: int, x):
    """Modified Hermite polynomial (-i)^m H_m(ix), evaluated with real arithmetic.

    Satisfies the recurrence M_{m+1} = 2x M_m + 2m M_{m-1}; positive
    everywhere for even m.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if m == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for j in range(1, m):
        h_prev, h = h, 2.0 * x * h + 2.0 * j * h_prev
    return h if h.ndim else float(h)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k as an explicit product.

    A product rather than a Gamma ratio so that (a)_k is exactly zero when
    a is a non-positive integer with -a < k.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    out = 1.0
    for j in range(k):
        out *= a + j
    return out


def log_pochhammer(a: float, k: int) -> tuple[float, int]:
    """Return ``(log|(a)_k|, sign)``; an exact zero gives ``(-inf, 0)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    logmag = 0.0
    sign = 1
    for j in range(k):
        f = a + j
        if f == 0.0:
            return -math.inf, 0
        if f < 0.0:
            sign = -sign
        logmag += math.log(abs(f))
    return logmag, sign


def log_pochhammer_table(a: float, kmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``log_pochhammer(a, k)`` for k = 0..kmax."""
    factors = a + np.arange(kmax, dtype=float)
    logmag = np.empty(kmax + 1)
    sign = np.empty(kmax + 1, dtype=int)
    logmag[0] = 0.0
    sign[0] = 1
    with np.errstate(divide="ignore"):
        logmag[1:] = np.cumsum(np.log(np.abs(factors)))
    sign[1:] = np.cumprod(np.where(factors < 0, -1, 1))
    zero = np.flatnonzero(factors == 0.0)
    if zero.size:
        first = zero[0] + 1
        logmag[first:] = -np.inf
        sign[first:] = 0
    return logmag, sign


def _is_pole(b: float) -> bool:
    return b <= 0 and float(b).is_integer()


def _hyp1f3_partial_sums(a, b1, b2, b3, x) -> list[float]:
    for b in (b1, b2, b3):
        if _is_pole(b):
            raise ParameterPole(f"lower parameter {b} is a non-positive integer")
    term = 1.0
    total = 1.0
    sums = [total]
    quiet = 0
    n = 0
    while quiet < _SERIES_QUIET_TERMS:
        if n >= _SERIES_MAX_TERMS:
            raise RuntimeError("1F3 series did not converge")
        term *= x * (a + n) / ((n + 1) * (b1 + n) * (b2 + n) * (b3 + n))
        total += term
        sums.append(total)
        n += 1
        quiet = quiet + 1 if abs(term) <= _SERIES_RTOL * abs(total) else 0
    return sums


def hyp1f3(a: float, b1: float, b2: float, b3: float, x: float) -> float:
    """Generalized hypergeometric 1F3(a; b1, b2, b3; x) by direct summation.

    Summation stops after three consecutive terms each below 1e-16 of the
    running sum.
    """
    return _hyp1f3_partial_sums(a, b1, b2, b3, x)[-1]


def hermite_functions(nmax: int, x, keep: Iterable[int] | None = None) -> dict[int, np.ndarray] | np.ndarray:
    """Normalized oscillator eigenfunctions psi_n(x), n = 0..nmax.

    Uses the normalized three-term recurrence on the polynomial part and
    carries a per-point log scale, so neither large n nor large |x|
    overflows or loses the Gaussian factor to underflow.

    Returns an ``(nmax + 1, len(x))`` array, or a dict of the requested
    rows when ``keep`` is given.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    wanted = None if keep is None else set(keep)
    rows: dict[int, np.ndarray] = {}
    out = None if wanted is not None else np.empty((nmax + 1, x.size))
    gauss = -0.5 * x * x
    logscale = np.zeros_like(x)

    def emit(n, p):
        val = p * np.exp(logscale + gauss)
        if out is not None:
            out[n] = val
        elif n in wanted:
            rows[n] = val

    p_prev = np.full_like(x, np.pi ** -0.25)
    emit(0, p_prev)
    if nmax >= 1:
        p = math.sqrt(2.0) * x * p_prev
        emit(1, p)
        for n in range(1, nmax):
            p_prev, p = p, math.sqrt(2.0 / (n + 1)) * x * p - math.sqrt(n / (n + 1)) * p_prev
            big = np.abs(p) > 1e150
            if big.any():
                p = np.where(big, p * 1e-150, p)
                p_prev = np.where(big, p_prev * 1e-150, p_prev)
                logscale = np.where(big, logscale + 150 * math.log(10.0), logscale)
            emit(n + 1, p)
    return out if out is not None else rows


@lru_cache(maxsize=32)
def quadrature_rule(half_width: float, nodes: int, panel_width: float) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on [-L, L], mirror-symmetric."""
    t, w = np.polynomial.legendre.leggauss(nodes)
    npan = max(1, math.ceil(half_width / panel_width))
    edges = np.linspace(0.0, half_width, npan + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * np.diff(edges)
    xs = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    ws = (half[:, None] * w[None, :]).ravel()
    return np.concatenate([-xs[::-1], xs]), np.concatenate([ws[::-1], ws])


def integration_half_width(nu_max: int) -> float:
    return max(12.0, math.sqrt(2 * nu_max + 1) + 8.0)


def integrate(f: Callable[[np.ndarray], np.ndarray], nu_max: int = 60,
              config: SystemConfig = DEFAULT_CONFIG) -> float:
    """Integrate a Gaussian-decaying ``f`` over the real line.

    ``f`` is called once on the array of nodes. The domain is truncated to
    [-L, L] with L = max(12, sqrt(2 nu_max + 1) + 8).
    """
    xs, ws = quadrature_rule(integration_half_width(nu_max), config.quad_nodes, config.panel_width)
    return float(np.dot(ws, f(xs)))
