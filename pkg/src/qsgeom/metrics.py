"""Metric structures on state space.

Distance between rays
    ``fs_distance_sq(a, b) = 4 (1 - |<a_hat|b_hat>|^2)``
computed in the cancellation-free form ``4 <d|d>`` with
``d = b_hat - <a_hat|b_hat> a_hat``; the two expressions are identical for
unit vectors, but only the second keeps full relative accuracy when the rays
nearly coincide.

Pullback to a parameter chart (no factor 4 here; the conventional factor
lives in the squared distance only):

    g_mn = Re[ <d_m psi|d_n psi> - <d_m psi|psi><psi|d_n psi> ]

evaluated on the normalized family.  This equals the Gram matrix of the
ray-space covariant derivatives, is gauge invariant, and is positive
semidefinite.

Configuration-space metric of a wavefunction family, two conventions:

* ``analytic_square``: ``g_mn = Re[(d_m psi)(d_n psi)]`` -- no conjugation;
  generally indefinite, and sensitive to local phase.
* ``hermitian``: ``g_mn = Re[conj(d_m psi)(d_n psi)]`` -- positive
  semidefinite.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StructureError
from .families import Chart, FieldFamily, ParamPoint, RayFamily, Stencil, partial_field, partial_ray, second_partial_field
from .hilbert import State, combine, inner, normalize

__all__ = [
    "MetricMatrix",
    "Signature",
    "ConfigMode",
    "fs_distance_sq",
    "fs_pullback",
    "fs_symplectic",
    "config_metric",
    "kg_invariant_residual",
    "line_element",
    "signature",
    "transform_metric",
    "metric_to_json",
    "metric_from_json",
    "metric_dumps",
    "metric_loads",
]


@dataclass(frozen=True)
class MetricMatrix:
    """Symmetric real matrix of metric components on a chart."""

    chart: Chart
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=np.float64)
        d = self.chart.dim
        if m.shape != (d, d):
            raise StructureError(f"metric entries must be {d}x{d}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise StructureError("metric entries must be finite")
        m = 0.5 * (m + m.T)
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.chart.dim


class ConfigMode(enum.Enum):
    ANALYTIC_SQUARE = "analytic_square"
    HERMITIAN = "hermitian"


@dataclass(frozen=True)
class Signature:
    n_plus: int
    n_minus: int
    n_zero: int

    def as_tuple(self):
        return (self.n_plus, self.n_minus, self.n_zero)


def fs_distance_sq(a: State, b: State) -> float:
    """Squared projective distance ``4 (1 - |<a|b>|^2)`` between the rays.

    Evaluated as ``4 <d|d>``, ``d = b_hat - <a_hat|b_hat> a_hat``, which is
    exact for unit vectors and immune to the catastrophic cancellation the
    ``1 - |...|^2`` form suffers for nearly identical rays.  Range [0, 4].
    """
    ah = normalize(a)
    bh = normalize(b)
    ov = inner(ah, bh)
    d = combine([1.0, -ov], [bh, ah])
    return float(4.0 * max(inner(d, d).real, 0.0))


def _unit_family(R: RayFamily) -> RayFamily:
    return RayFamily(R.chart, lambda q: normalize(R.eval_state(q)), R.domain)


def _ray_derivatives(R: RayFamily, p: ParamPoint, s: Stencil):
    unit = _unit_family(R)
    psi = unit.eval_state(p)
    ds = [partial_ray(unit, p, mu, s) for mu in range(R.chart.dim)]
    return psi, ds


def fs_pullback(R: RayFamily, p: ParamPoint, s: Stencil = Stencil()) -> MetricMatrix:
    """Projective metric pulled back to the family's chart (no factor 4)."""
    psi, ds = _ray_derivatives(R, p, s)
    n = R.chart.dim
    c = np.array([inner(psi, d) for d in ds])          # <psi|d_mu psi>
    g = np.empty((n, n))
    for m in range(n):
        for nu in range(m, n):
            val = inner(ds[m], ds[nu]) - np.conj(c[m]) * c[nu]
            g[m, nu] = g[nu, m] = val.real
    return MetricMatrix(R.chart, g)


def fs_symplectic(R: RayFamily, p: ParamPoint, s: Stencil = Stencil()) -> np.ndarray:
    """Imaginary (antisymmetric) partner of the pullback; diagnostic only."""
    psi, ds = _ray_derivatives(R, p, s)
    n = R.chart.dim
    c = np.array([inner(psi, d) for d in ds])
    w = np.empty((n, n))
    for m in range(n):
        for nu in range(n):
            w[m, nu] = (inner(ds[m], ds[nu]) - np.conj(c[m]) * c[nu]).imag
    return 0.5 * (w - w.T)


def config_metric(
    F: FieldFamily,
    p: ParamPoint,
    s: Stencil = Stencil(),
    mode: ConfigMode = ConfigMode.ANALYTIC_SQUARE,
) -> MetricMatrix:
    """Configuration-space metric of a single-amplitude family at ``p``."""
    if not isinstance(mode, ConfigMode):
        mode = ConfigMode(mode)
    n = F.chart.dim
    d = np.array([partial_field(F, p, mu, s) for mu in range(n)])
    if mode is ConfigMode.ANALYTIC_SQUARE:
        g = np.real(np.outer(d, d))
    else:
        g = np.real(np.outer(np.conj(d), d))
    return MetricMatrix(F.chart, 0.5 * (g + g.T))


def kg_invariant_residual(
    F: FieldFamily,
    p: ParamPoint,
    m0: float,
    c: float = 1.0,
    hbar: float = 1.0,
    s: Stencil = Stencil(),
) -> float:
    """Deviation of the family from the free relativistic wave equation.

    For a chart ``(t, x, y, z)`` (first coordinate tagged ``time``) returns

        | -conj(psi) box(psi) - (m0 c / hbar)^2 |psi|^2 |

    with ``box = (1/c^2) d_t^2 - laplacian`` in the (+,-,-,-) convention.
    Zero (to stencil accuracy) exactly on shell.
    """
    if F.chart.dim != 4:
        raise StructureError("wave-operator residual needs a 4-coordinate chart")
    if F.chart.units[0] != "time":
        raise StructureError("first chart coordinate must be tagged 'time'")
    if m0 < 0 or c <= 0 or hbar <= 0:
        raise DomainError("need m0 >= 0, c > 0, hbar > 0")
    psi = complex(F(p))
    dtt = second_partial_field(F, p, 0, s)
    lap = sum(second_partial_field(F, p, mu, s) for mu in (1, 2, 3))
    box = dtt / (c * c) - lap
    kappa2 = (m0 * c / hbar) ** 2
    return float(abs(-np.conj(psi) * box - kappa2 * abs(psi) ** 2))


def line_element(M: MetricMatrix, dx: np.ndarray) -> float:
    """Quadratic form ``g_mn dx^m dx^n`` (sign carries the causal character)."""
    v = np.asarray(dx, dtype=np.float64)
    if v.shape != (M.dim,):
        raise StructureError(f"displacement needs {M.dim} components, got {v.shape}")
    return float(v @ M.entries @ v)


def signature(M: MetricMatrix, zero_tol: float = 1e-9) -> Signature:
    """Eigenvalue sign counts; ``zero_tol`` is relative to the largest |eig|."""
    eig = np.linalg.eigvalsh(M.entries)
    scale = float(np.max(np.abs(eig))) if eig.size else 0.0
    cut = zero_tol * scale if scale > 0 else zero_tol
    n_zero = int(np.sum(np.abs(eig) <= cut))
    n_plus = int(np.sum(eig > cut))
    n_minus = int(np.sum(eig < -cut))
    return Signature(n_plus, n_minus, n_zero)


def transform_metric(M: MetricMatrix, J: np.ndarray, new_chart: Chart) -> MetricMatrix:
    """Rank-2 covariant transformation ``g' = J^T g J``.

    ``J[i, j] = d old_i / d new_j`` evaluated at the point in question.
    """
    J = np.asarray(J, dtype=np.float64)
    if J.shape != (M.dim, new_chart.dim):
        raise StructureError(
            f"Jacobian must be {M.dim}x{new_chart.dim}, got {J.shape}"
        )
    return MetricMatrix(new_chart, J.T @ M.entries @ J)


# ---------------------------------------------------------------------------
# JSON serialization


def metric_to_json(M: MetricMatrix) -> dict:
    return {
        "chart": [[n, u] for n, u in M.chart.coords],
        "entries": M.entries.tolist(),
    }


def metric_from_json(d: dict) -> MetricMatrix:
    try:
        chart = Chart(tuple((n, u) for n, u in d["chart"]))
        return MetricMatrix(chart, np.asarray(d["entries"], dtype=np.float64))
    except KeyError as exc:
        raise StructureError(f"metric payload missing key {exc}") from exc


def metric_dumps(M: MetricMatrix) -> str:
    return json.dumps(metric_to_json(M), separators=(",", ":"))


def metric_loads(text: str) -> MetricMatrix:
    return metric_from_json(json.loads(text))
