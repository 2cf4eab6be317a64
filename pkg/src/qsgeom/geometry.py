"""Connection, curvature, and geodesics of a numerically supplied metric.

Everything here consumes a :class:`MetricField` -- a callable chart-point ->
:class:`MetricMatrix` -- so analytic test metrics and finite-difference
pullbacks plug in interchangeably.

Derivative structure: Christoffel symbols differentiate the metric with an
inner step ``h_in``; curvature differentiates the Christoffel field with an
outer step ``h_out = 10 h_in``.  Keeping the two scales an order of magnitude
apart stops the outer stencil from resolving the inner stencil's own
truncation wiggle.
"""

from __future__ import annotations

import io
import csv as _csv
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, DomainExitError, StructureError
from .families import Box, Chart, ParamPoint, RayFamily, Stencil
from .metrics import MetricMatrix, fs_pullback

__all__ = [
    "MetricField",
    "ChristoffelAtPoint",
    "CurvatureReport",
    "LambdaFit",
    "GeodesicPath",
    "metric_field_from_ray",
    "scaled_field",
    "christoffel",
    "curvature",
    "best_fit_lambda",
    "geodesic_integrate",
    "geodesic_residual",
    "path_to_csv",
    "path_from_csv",
]

CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class MetricField:
    """A metric matrix at every point of a chart region."""

    chart: Chart
    at: Callable[[ParamPoint], MetricMatrix]
    domain: Box

    def __post_init__(self):
        if self.domain.lo.size != self.chart.dim:
            raise StructureError("domain box dimension does not match chart")

    def __call__(self, p: ParamPoint) -> MetricMatrix:
        if p.chart != self.chart:
            raise StructureError("point chart does not match field chart")
        if not self.domain.contains(p.values):
            raise DomainError(f"point {tuple(p.values)} outside metric-field domain")
        return self.at(p)

    def matrix(self, values: np.ndarray) -> np.ndarray:
        return self(ParamPoint(self.chart, values)).entries


def metric_field_from_ray(R: RayFamily, s: Stencil = Stencil()) -> MetricField:
    """Projective pullback metric of a ray family, as a field."""
    return MetricField(R.chart, lambda p: fs_pullback(R, p, s), R.domain)


def scaled_field(MF: MetricField, factor: float) -> MetricField:
    f = float(factor)
    return MetricField(
        MF.chart,
        lambda p: MetricMatrix(MF.chart, f * MF.at(p).entries),
        MF.domain,
    )


@dataclass(frozen=True)
class ChristoffelAtPoint:
    """Connection coefficients ``gamma[a, b, c] = Gamma^a_{bc}`` at a point."""

    chart: Chart
    gamma: np.ndarray

    def __post_init__(self):
        d = self.chart.dim
        g = np.array(self.gamma, dtype=np.float64)
        if g.shape != (d, d, d):
            raise StructureError(f"connection must be {d}^3, got {g.shape}")
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)


def _inverse_metric(g: np.ndarray) -> np.ndarray:
    eig = np.linalg.eigvalsh(g)
    amax = float(np.max(np.abs(eig)))
    amin = float(np.min(np.abs(eig)))
    if amax == 0.0 or amin == 0.0 or amax / amin > CONDITION_LIMIT:
        cond = np.inf if amin == 0.0 else amax / amin
        raise DomainError(
            f"metric is numerically singular (condition {cond:.3e} exceeds "
            f"{CONDITION_LIMIT:.0e}); cannot raise indices"
        )
    return np.linalg.inv(g)


def _fd_field(values_at: Callable[[np.ndarray], np.ndarray], x: np.ndarray,
              h: float, order: int) -> np.ndarray:
    """Central first derivatives of an array-valued map; axis 0 = direction."""
    if order == 2:
        offs, coeffs = (-1, 1), (-0.5, 0.5)
    elif order == 4:
        offs, coeffs = (-2, -1, 1, 2), (1 / 12, -8 / 12, 8 / 12, -1 / 12)
    else:
        raise StructureError(f"unsupported derivative order {order}")
    n = x.size
    out = None
    for mu in range(n):
        acc = None
        for o, c in zip(offs, coeffs):
            xp = x.copy()
            xp[mu] += o * h
            term = c * values_at(xp)
            acc = term if acc is None else acc + term
        acc = acc / h
        if out is None:
            out = np.empty((n,) + acc.shape)
        out[mu] = acc
    return out


def christoffel(
    MF: MetricField, p: ParamPoint, h: float = 1e-3, order: int = 4
) -> ChristoffelAtPoint:
    """Levi-Civita connection from finite differences of the metric field."""
    if h <= 0:
        raise StructureError("christoffel step must be positive")
    g0 = MF(p).entries
    ginv = _inverse_metric(g0)
    dg = _fd_field(MF.matrix, np.array(p.values), h, order)  # dg[m, i, j] = d_m g_{ij}
    # Gamma^a_{bc} = 1/2 g^{ad} (d_b g_{dc} + d_c g_{db} - d_d g_{bc})
    bracket = (
        np.einsum("bdc->dbc", dg)
        + np.einsum("cdb->dbc", dg)
        - dg
    )
    gamma = 0.5 * np.einsum("ad,dbc->abc", ginv, bracket)
    gamma = 0.5 * (gamma + np.transpose(gamma, (0, 2, 1)))
    return ChristoffelAtPoint(MF.chart, gamma)


@dataclass(frozen=True)
class LambdaFit:
    """Least-squares constant for ``ricci - (R/2) g + const * g ~ 0``."""

    value: float
    two_dim_degenerate: bool = False

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class CurvatureReport:
    chart: Chart
    point: np.ndarray
    ricci: np.ndarray
    scalar: float
    einstein_residual: np.ndarray
    lambda_fit: LambdaFit


def curvature(
    MF: MetricField,
    p: ParamPoint,
    h: float = 1e-2,
    order: int = 4,
    lam: Optional[float] = None,
) -> CurvatureReport:
    """Ricci tensor, scalar curvature, and vacuum-balance residual at ``p``.

    The residual is ``ricci - (R/2) g + lambda g`` with ``lambda`` either
    supplied or fitted at this point.  In two dimensions the first two terms
    cancel identically, so the fit degenerates; that case is flagged and the
    fitted constant reported as 0.
    """
    if h <= 0:
        raise StructureError("curvature step must be positive")
    h_in = h / 10.0
    x0 = np.array(p.values)
    d = MF.chart.dim

    def gamma_at(x: np.ndarray) -> np.ndarray:
        return christoffel(MF, ParamPoint(MF.chart, x), h_in, order).gamma

    g0 = MF(p).entries
    ginv = _inverse_metric(g0)
    gam = gamma_at(x0)
    dgam = _fd_field(gamma_at, x0, h, order)  # dgam[c, a, b, d] = d_c Gamma^a_{bd}

    # R^a_{b c d} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
    #             + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb}
    riem = (
        np.einsum("cadb->abcd", dgam)
        - np.einsum("dacb->abcd", dgam)
        + np.einsum("ace,edb->abcd", gam, gam)
        - np.einsum("ade,ecb->abcd", gam, gam)
    )
    ricci = np.einsum("abad->bd", riem)
    ricci = 0.5 * (ricci + ricci.T)
    scalar = float(np.einsum("bd,bd->", ginv, ricci))

    einstein = ricci - 0.5 * scalar * g0
    if lam is None:
        if d == 2:
            fit = LambdaFit(0.0, two_dim_degenerate=True)
        else:
            denom = float(np.sum(g0 * g0))
            fit = LambdaFit(-float(np.sum(einstein * g0)) / denom)
    else:
        fit = LambdaFit(float(lam))
    residual = einstein + fit.value * g0
    return CurvatureReport(MF.chart, x0, ricci, scalar, residual, fit)


def best_fit_lambda(
    MF: MetricField,
    samples: Sequence[ParamPoint],
    h: float = 1e-2,
    order: int = 4,
) -> LambdaFit:
    """Single constant minimizing ``|ricci - (R/2) g + c g|^2`` over samples.

    In two dimensions the Einstein combination vanishes identically and any
    constant fits; that degeneracy is flagged and 0 returned.
    """
    if not samples:
        raise StructureError("best_fit_lambda needs at least one sample point")
    if MF.chart.dim == 2:
        return LambdaFit(0.0, two_dim_degenerate=True)
    num = 0.0
    den = 0.0
    for p in samples:
        rep = curvature(MF, p, h, order, lam=0.0)
        g = MF(p).entries
        e = rep.ricci - 0.5 * rep.scalar * g
        num -= float(np.sum(e * g))
        den += float(np.sum(g * g))
    return LambdaFit(num / den)


# ---------------------------------------------------------------------------
# Geodesics


@dataclass(frozen=True)
class GeodesicPath:
    """Arc-length samples of a trajectory: positions ``xs`` and velocities ``us``."""

    chart: Chart
    s: np.ndarray
    xs: np.ndarray
    us: np.ndarray

    def __post_init__(self):
        s = np.array(self.s, dtype=np.float64)
        xs = np.array(self.xs, dtype=np.float64)
        us = np.array(self.us, dtype=np.float64)
        d = self.chart.dim
        if s.ndim != 1 or xs.shape != (s.size, d) or us.shape != (s.size, d):
            raise StructureError("path arrays must be (n,), (n, dim), (n, dim)")
        for a in (s, xs, us):
            a.setflags(write=False)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "us", us)

    @property
    def n_samples(self) -> int:
        return self.s.size


def geodesic_integrate(
    MF: MetricField,
    x0: ParamPoint,
    u0: np.ndarray,
    ds: float,
    steps: int,
    h_christoffel: float = 1e-3,
    order: int = 4,
) -> GeodesicPath:
    """Classical RK4 integration of the geodesic equation.

    The initial velocity is rescaled to unit speed under the metric at
    ``x0``; a non-positive initial speed-squared is a domain error.  Leaving
    the metric field's box mid-integration raises :class:`DomainExitError`
    carrying the partial path.
    """
    if ds <= 0 or steps < 1:
        raise StructureError("need ds > 0 and steps >= 1")
    u = np.array(u0, dtype=np.float64)
    if u.shape != (MF.chart.dim,):
        raise StructureError(f"velocity needs {MF.chart.dim} components")
    g0 = MF(x0).entries
    q = float(u @ g0 @ u)
    if q <= 0 or not np.isfinite(q):
        raise DomainError(
            f"initial speed-squared {q:g} is not positive; unit-speed "
            "normalization undefined"
        )
    u = u / np.sqrt(q)
    x = np.array(x0.values)

    def accel(xv: np.ndarray, uv: np.ndarray) -> np.ndarray:
        pt = ParamPoint(MF.chart, xv)
        if not MF.domain.contains(xv):
            raise DomainError(f"left domain at {tuple(xv)}")
        gam = christoffel(MF, pt, h_christoffel, order).gamma
        return -np.einsum("abc,b,c->a", gam, uv, uv)

    n = MF.chart.dim
    xs = np.empty((steps + 1, n))
    us = np.empty((steps + 1, n))
    xs[0], us[0] = x, u
    for k in range(steps):
        try:
            k1x, k1u = u, accel(x, u)
            k2x, k2u = u + 0.5 * ds * k1u, accel(x + 0.5 * ds * k1x, u + 0.5 * ds * k1u)
            k3x, k3u = u + 0.5 * ds * k2u, accel(x + 0.5 * ds * k2x, u + 0.5 * ds * k2u)
            k4x, k4u = u + ds * k3u, accel(x + ds * k3x, u + ds * k3u)
        except DomainError as exc:
            partial = GeodesicPath(
                MF.chart, ds * np.arange(k + 1), xs[: k + 1].copy(), us[: k + 1].copy()
            )
            raise DomainExitError(
                f"geodesic left the domain after {k} of {steps} steps: {exc}",
                partial_path=partial,
            ) from exc
        x = x + (ds / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x)
        u = u + (ds / 6.0) * (k1u + 2 * k2u + 2 * k3u + k4u)
        if not MF.domain.contains(x):
            partial = GeodesicPath(
                MF.chart, ds * np.arange(k + 1), xs[: k + 1].copy(), us[: k + 1].copy()
            )
            raise DomainExitError(
                f"geodesic left the domain after {k + 1} of {steps} steps",
                partial_path=partial,
            )
        xs[k + 1], us[k + 1] = x, u
    return GeodesicPath(MF.chart, ds * np.arange(steps + 1), xs, us)


def geodesic_residual(
    path: GeodesicPath, MF: MetricField, h_christoffel: float = 1e-3, order: int = 4
) -> np.ndarray:
    """Per-interior-sample norm of ``du/ds + Gamma(u, u)`` along the path.

    ``du/ds`` uses central differences of the stored velocities, so the first
    and last samples carry no residual; an array of length ``n - 2`` is
    returned.  Fewer than three samples is a structural error.
    """
    if path.chart != MF.chart:
        raise StructureError("path and metric field live on different charts")
    n = path.n_samples
    if n < 3:
        raise StructureError("residual needs at least three samples")
    out = np.empty(n - 2)
    for k in range(1, n - 1):
        dsm = path.s[k] - path.s[k - 1]
        dsp = path.s[k + 1] - path.s[k]
        if dsm <= 0 or dsp <= 0:
            raise StructureError("path arc-length samples must increase")
        # nonuniform central difference, second-order accurate
        du = (
            path.us[k + 1] * (dsm / (dsp * (dsm + dsp)))
            - path.us[k - 1] * (dsp / (dsm * (dsm + dsp)))
            + path.us[k] * ((dsp - dsm) / (dsm * dsp))
        )
        gam = christoffel(
            MF, ParamPoint(path.chart, path.xs[k]), h_christoffel, order
        ).gamma
        res = du + np.einsum("abc,b,c->a", gam, path.us[k], path.us[k])
        out[k - 1] = float(np.linalg.norm(res))
    return out


# ---------------------------------------------------------------------------
# CSV serialization


def path_to_csv(
    path: GeodesicPath,
    residuals: Optional[np.ndarray] = None,
    fmt: Callable[[float], str] = repr,
) -> str:
    """Rows ``s, x_*, u_*, residual``; residual blank where undefined."""
    d = path.chart.dim
    buf = io.StringIO()
    w = _csv.writer(buf, lineterminator="\n")
    header = ["s"] + [f"x_{i}" for i in range(d)] + [f"u_{i}" for i in range(d)] + ["residual"]
    w.writerow(header)
    for k in range(path.n_samples):
        row = [fmt(float(path.s[k]))]
        row += [fmt(float(v)) for v in path.xs[k]]
        row += [fmt(float(v)) for v in path.us[k]]
        if residuals is not None and 1 <= k <= path.n_samples - 2:
            row.append(fmt(float(residuals[k - 1])))
        else:
            row.append("")
        w.writerow(row)
    return buf.getvalue()


def path_from_csv(text: str, chart: Chart) -> GeodesicPath:
    rows = list(_csv.reader(io.StringIO(text)))
    if not rows or rows[0][0] != "s":
        raise StructureError("path CSV must start with an 's' header row")
    d = chart.dim
    body = rows[1:]
    s = np.array([float(r[0]) for r in body])
    xs = np.array([[float(v) for v in r[1 : 1 + d]] for r in body])
    us = np.array([[float(v) for v in r[1 + d : 1 + 2 * d]] for r in body])
    return GeodesicPath(chart, s, xs, us)
