"""Central tolerance registry.

Every numeric threshold used by the verification suites lives here, so the
``QSGEOM_TOL_SCALE`` environment variable can loosen (or tighten) all of them
uniformly.  Library functions take explicit tolerance arguments and only use
these values as defaults.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_TOL_SCALE = "QSGEOM_TOL_SCALE"


@dataclass(frozen=True)
class Tolerances:
    # finite-difference / distance consistency
    fs_order_min: float = 2.9           # log-log slope floor for ds^2 ~ 4 g dl^2
    fs_gram_agreement: float = 1e-10    # pullback vs covariant-derivative Gram
    # gauge behaviour
    gauge_ray_tol: float = 1e-6         # ray metric entrywise drift under phase
    gauge_config_min: float = 1e-3      # field metric must move at least this
    # catalog closed forms
    hydrogen_rel: float = 1e-6          # FD vs closed-form, relative, diagonal
    signature_zero: float = 1e-9        # relative eigenvalue cutoff for zeros
    dirac_ratio_band: float = 0.2       # O(Zalpha^2) halving ratio, +/-20% of 4
    # model geometries
    sphere_entry_tol: float = 1e-6      # 4x pullback vs round-sphere entries
    sphere_scalar_tol: float = 1e-4     # |R - 2| on the unit sphere
    einstein_rel_std: float = 1e-3      # stddev/mean of Ricci/metric ratio
    lambda_repro: float = 1e-6          # best-fit constant, rerun reproducibility
    # dynamics
    aa_residual: float = 1e-6           # |ds/dt - 2 dE/hbar|
    aa_shrink_min: float = 3.5          # residual ratio per dt halving
    geodesic_resid: float = 1e-4        # great-circle projected-path residual
    tilt_resid_min: float = 0.05        # latitude-circle residual floor
    # coherent states and wave operator
    gauss_translation: float = 1e-8     # g_ll variation across centers
    gauss_scaling: float = 1e-6         # 1/lambda^2 ratio test
    kg_residual: float = 1e-6           # on-shell wave-operator residual

    def scaled(self, factor: float) -> "Tolerances":
        """Every tolerance multiplied by ``factor`` (floors/slopes divided)."""
        if factor == 1.0:
            return self
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            # "min" thresholds are lower bounds on a measured quantity;
            # loosening the suite means lowering them.
            if f.name.endswith("_min") or f.name == "fs_order_min":
                out[f.name] = v / factor
            else:
                out[f.name] = v * factor
        return replace(self, **out)


def default_tolerances() -> Tolerances:
    """Tolerances honouring the ``QSGEOM_TOL_SCALE`` environment variable."""
    raw = os.environ.get(ENV_TOL_SCALE)
    if not raw:
        return Tolerances()
    try:
        factor = float(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_TOL_SCALE} must be a number, got {raw!r}") from exc
    if factor <= 0:
        raise ValueError(f"{ENV_TOL_SCALE} must be positive, got {factor}")
    return Tolerances().scaled(factor)
