from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SystemConfig:
    """Numerical policy shared by every module.

    Attributes
    ----------
    tail_tol : float
        Coherent-state truncation stops once the estimated tail weight is
        below this fraction of the total weight.
    kmax : int
        Hard cap on the number of ladder coefficients.
    drop_weight : float
        Density sums skip the smallest coefficients whose cumulative weight
        stays below this value.
    quad_nodes, panel_width : int, float
        Gauss-Legendre nodes per panel and panel width for ``integrate``.
    xmin, xmax, nx : float, float, int
        Default spatial grid.
    t_samples : int
        Default number of time samples per period.
    """

    tail_tol: float = 1e-30
    kmax: int = 5000
    drop_weight: float = 1e-12
    quad_nodes: int = 20
    panel_width: float = 0.5
    xmin: float = -40.0
    xmax: float = 40.0
    nx: int = 8001
    t_samples: int = 64
    fd_step: float = 1e-3
    exclusion_radius: float = 0.25
    peak_threshold: float = 0.02
    peak_separation: float = 0.5


DEFAULT_CONFIG = SystemConfig()
