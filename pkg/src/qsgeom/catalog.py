"""Worked-example wavefunction families and their closed-form metrics.

Hydrogen-like stationary states of the shape ``Psi = C0 f(x) e^{-i omega t}``
with real spatial profile ``f``, plus a relativistic ground-state variant
with exponent ``gamma = sqrt(1 - (Z alpha)^2)``, plus a Gaussian
coherent-state ray family parametrized by its center.

For the stationary families the unconjugated-square metric has closed-form
diagonal coefficients

    g_mm = C0^2 (d_m f)^2 cos(2 omega t)   (spatial)
    g_tt = -C0^2 omega^2 f^2 cos(2 omega t)

(:func:`oracle_metric`; the derivations are worked line by line in
``docs/metric-derivations.md``).  :func:`compare` grades finite-difference
metrics against these oracles entry by entry.
"""

from __future__ import annotations

import enum
import io
import json
import csv as _csv
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError, StructureError
from .families import Box, Chart, FieldFamily, ParamPoint, RayFamily, Stencil
from .hilbert import GridState, tensor_weights, trapezoid_weights, uniform_axis
from .metrics import ConfigMode, MetricMatrix, config_metric, fs_pullback

__all__ = [
    "FamilyId",
    "HydrogenParams",
    "GaussianParams",
    "DIRAC_R_FLOOR_FACTOR",
    "make_family",
    "oracle_metric",
    "compare",
    "CompareReport",
    "standard_grid",
    "default_compare_stencil",
    "bohr_radius",
    "gaussian_limit_check",
    "GaussianLimitReport",
]


class FamilyId(enum.Enum):
    PSI100 = "psi100"
    PSI200 = "psi200"
    PSI210R = "psi210"
    PSI211R = "psi211"
    DIRAC_GROUND_R = "dirac"
    DIRAC_LIMIT_R = "dirac-limit"
    GAUSSIAN_COHERENT = "gaussian"

    @classmethod
    def from_name(cls, name: str) -> "FamilyId":
        for fid in cls:
            if fid.value == name:
                return fid
        raise StructureError(
            f"unknown family {name!r}; choose from {[f.value for f in cls]}"
        )


@dataclass(frozen=True)
class HydrogenParams:
    """Parameters of the hydrogen-like families.

    ``C0`` multiplies the whole amplitude; ``a0`` is the radial length scale;
    ``omega`` the level frequency; ``Zalpha`` the dimensionless coupling.
    The relativistic exponent ``gamma`` is always recomputed from ``Zalpha``.
    """

    C0: float = 1.0
    a0: float = 1.0
    omega: float = 1.0
    Zalpha: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.a0) and self.a0 > 0):
            raise StructureError("a0 must be positive")
        if not (np.isfinite(self.omega) and self.omega > 0):
            raise StructureError("omega must be positive")
        if not (0.0 <= self.Zalpha < 1.0):
            raise StructureError("Zalpha must satisfy 0 <= Zalpha < 1")
        if not np.isfinite(self.C0):
            raise StructureError("C0 must be finite")

    @property
    def gamma(self) -> float:
        return float(np.sqrt(1.0 - self.Zalpha**2))


@dataclass(frozen=True)
class GaussianParams:
    lam: float = 1.0
    hbar: float = 1.0
    dim: int = 1

    def __post_init__(self):
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise StructureError("lambda must be positive")
        if not (np.isfinite(self.hbar) and self.hbar > 0):
            raise StructureError("hbar must be positive")
        if self.dim not in (1, 3):
            raise StructureError("dim must be 1 or 3")

    @property
    def width(self) -> float:
        """Gaussian width: |psi|^2 falls as exp(-(x-l)^2 / width^2)."""
        return float(self.lam * np.sqrt(self.hbar))


DIRAC_R_FLOOR_FACTOR = 0.05

_CHART_RT = Chart((("r", "length"), ("t", "time")))
_CHART_RTHT = Chart((("r", "length"), ("theta", "angle"), ("t", "time")))
_CHART_FULL = Chart(
    (("r", "length"), ("theta", "angle"), ("phi", "angle"), ("t", "time"))
)

_HYDROGEN_CHARTS = {
    FamilyId.PSI100: _CHART_RT,
    FamilyId.PSI200: _CHART_RT,
    FamilyId.PSI210R: _CHART_RTHT,
    FamilyId.PSI211R: _CHART_FULL,
    FamilyId.DIRAC_GROUND_R: _CHART_FULL,
    FamilyId.DIRAC_LIMIT_R: _CHART_FULL,
}


def _hydrogen_domain(fid: FamilyId, hp: HydrogenParams) -> Box:
    chart = _HYDROGEN_CHARTS[fid]
    r_lo = 0.0
    if fid is FamilyId.DIRAC_GROUND_R:
        # r^(gamma-1) has a singular derivative at the origin
        r_lo = DIRAC_R_FLOOR_FACTOR * hp.a0
    bounds = {
        "r": (r_lo, 10.0 * hp.a0),
        "theta": (0.0, np.pi),
        "phi": (0.0, 2.0 * np.pi),
        "t": (-np.inf, np.inf),
    }
    lo = np.array([bounds[n][0] for n in chart.names])
    hi = np.array([bounds[n][1] for n in chart.names])
    return Box(lo, hi)


def _effective_gamma(fid: FamilyId, hp: HydrogenParams) -> float:
    return 1.0 if fid is FamilyId.DIRAC_LIMIT_R else hp.gamma


def make_family(fid: FamilyId, params) -> FieldFamily | RayFamily:
    """Family evaluator over its declared domain box."""
    if fid is FamilyId.GAUSSIAN_COHERENT:
        if not isinstance(params, GaussianParams):
            raise StructureError("gaussian family needs GaussianParams")
        return _gaussian_family(params)
    if not isinstance(params, HydrogenParams):
        raise StructureError(f"{fid.value} needs HydrogenParams")
    hp = params
    chart = _HYDROGEN_CHARTS[fid]
    dom = _hydrogen_domain(fid, hp)
    C0, a0, w = hp.C0, hp.a0, hp.omega

    if fid is FamilyId.PSI100:
        def amp(p):
            r, t = p.values
            return C0 * np.exp(-r / a0) * np.exp(-1j * w * t)
    elif fid is FamilyId.PSI200:
        def amp(p):
            r, t = p.values
            return C0 * (1.0 - r / (2 * a0)) * np.exp(-r / (2 * a0)) * np.exp(-1j * w * t)
    elif fid is FamilyId.PSI210R:
        def amp(p):
            r, th, t = p.values
            return C0 * (r / a0) * np.cos(th) * np.exp(-r / (2 * a0)) * np.exp(-1j * w * t)
    elif fid is FamilyId.PSI211R:
        def amp(p):
            r, th, ph, t = p.values
            return (
                C0 * (r / a0) * np.sin(th) * np.cos(ph)
                * np.exp(-r / (2 * a0)) * np.exp(-1j * w * t)
            )
    elif fid in (FamilyId.DIRAC_GROUND_R, FamilyId.DIRAC_LIMIT_R):
        gamma = _effective_gamma(fid, hp)

        def amp(p):
            r, th, ph, t = p.values
            return (
                C0 * (r / a0) ** (gamma - 1.0) * np.exp(-r / a0)
                * np.sin(th) * np.sin(ph) * np.exp(-1j * w * t)
            )
    else:  # pragma: no cover - closed enumeration
        raise StructureError(f"unhandled family {fid}")
    return FieldFamily(chart, amp, dom)


def _gaussian_family(gp: GaussianParams) -> RayFamily:
    """Coherent-state ray family over the center coordinate(s)."""
    sigma = gp.width
    if gp.dim == 1:
        l_half = 4.0 * gp.lam
        grid_half = 8.0 * sigma + l_half
        n = 193
        chart = Chart((("l", "length"),))
    else:
        l_half = 2.0 * gp.lam
        grid_half = 8.0 * sigma + l_half
        n = 81
        chart = Chart((("l1", "length"), ("l2", "length"), ("l3", "length")))
    axis = uniform_axis(-grid_half, grid_half, n)
    w1 = trapezoid_weights(axis)
    axes = (axis,) * gp.dim
    weights = tensor_weights(*([w1] * gp.dim))
    mesh = np.meshgrid(*axes, indexing="ij") if gp.dim > 1 else [axis]

    def ev(p):
        sq = np.zeros(mesh[0].shape)
        for x, l in zip(mesh, p.values):
            sq = sq + (x - l) ** 2
        return GridState(axes, weights, np.exp(-sq / (2.0 * sigma * sigma)))

    dom = Box(np.full(gp.dim, -l_half), np.full(gp.dim, l_half))
    return RayFamily(chart, ev, dom)


# ---------------------------------------------------------------------------
# Closed-form oracles


def oracle_metric(fid: FamilyId, params: HydrogenParams, p: ParamPoint) -> MetricMatrix:
    """Diagonal closed-form coefficients of the unconjugated-square metric.

    Hand-derived from the family definitions (docs/metric-derivations.md);
    off-diagonal entries of the finite-difference metric are excluded on
    purpose -- the printed coefficient lists are diagonal, and at generic
    times the cross terms are nonzero, so they are reported separately by
    :func:`compare` instead of being graded against zero.
    """
    if fid is FamilyId.GAUSSIAN_COHERENT:
        raise StructureError(
            "gaussian family has no pointwise closed form; use gaussian_limit_check"
        )
    if not isinstance(params, HydrogenParams):
        raise StructureError(f"{fid.value} needs HydrogenParams")
    hp = params
    chart = _HYDROGEN_CHARTS[fid]
    if p.chart != chart:
        raise StructureError(f"point chart does not match {fid.value} chart")
    if not _hydrogen_domain(fid, hp).contains(p.values):
        raise DomainError(f"point {tuple(p.values)} outside {fid.value} domain")
    C0, a0, w = hp.C0, hp.a0, hp.omega
    c2 = np.cos(2.0 * w * p.values[-1])
    A2 = C0 * C0

    if fid is FamilyId.PSI100:
        r = p.values[0]
        e = np.exp(-2.0 * r / a0)
        diag = [A2 / a0**2 * e * c2, -A2 * w * w * e * c2]
    elif fid is FamilyId.PSI200:
        r = p.values[0]
        e = np.exp(-r / a0)
        f = 1.0 - r / (2 * a0)
        df = -(2.0 - r / (2 * a0)) / (2 * a0)
        diag = [A2 * df * df * e * c2, -A2 * w * w * f * f * e * c2]
    elif fid is FamilyId.PSI210R:
        r, th = p.values[0], p.values[1]
        e = np.exp(-r / a0)
        diag = [
            A2 / a0**2 * (1.0 - r / (2 * a0)) ** 2 * np.cos(th) ** 2 * e * c2,
            A2 * (r / a0) ** 2 * np.sin(th) ** 2 * e * c2,
            -A2 * w * w * (r / a0) ** 2 * np.cos(th) ** 2 * e * c2,
        ]
    elif fid is FamilyId.PSI211R:
        r, th, ph = p.values[0], p.values[1], p.values[2]
        e = np.exp(-r / a0)
        st, ct = np.sin(th), np.cos(th)
        sp, cp = np.sin(ph), np.cos(ph)
        diag = [
            A2 / a0**2 * (1.0 - r / (2 * a0)) ** 2 * st**2 * cp**2 * e * c2,
            A2 * (r / a0) ** 2 * ct**2 * cp**2 * e * c2,
            A2 * (r / a0) ** 2 * st**2 * sp**2 * e * c2,
            -A2 * w * w * (r / a0) ** 2 * st**2 * cp**2 * e * c2,
        ]
    elif fid in (FamilyId.DIRAC_GROUND_R, FamilyId.DIRAC_LIMIT_R):
        gamma = _effective_gamma(fid, hp)
        r, th, ph = p.values[0], p.values[1], p.values[2]
        S = (r / a0) ** (2.0 * (gamma - 1.0)) * np.exp(-2.0 * r / a0)
        st, ct = np.sin(th), np.cos(th)
        sp, cp = np.sin(ph), np.cos(ph)
        dr = (gamma - 1.0) / r - 1.0 / a0 if r > 0 else -1.0 / a0
        diag = [
            A2 * S * dr * dr * st**2 * sp**2 * c2,
            A2 * S * ct**2 * sp**2 * c2,
            A2 * S * st**2 * cp**2 * c2,
            -A2 * w * w * S * st**2 * sp**2 * c2,
        ]
    else:  # pragma: no cover - closed enumeration
        raise StructureError(f"unhandled family {fid}")
    return MetricMatrix(chart, np.diag(diag))


def default_compare_stencil(fid: FamilyId, hp: HydrogenParams) -> Stencil:
    """Order-4 stencil with steps 1e-4 in each coordinate's natural unit."""
    chart = _HYDROGEN_CHARTS[fid]
    step = []
    for name in chart.names:
        if name == "r":
            step.append(1e-4 * hp.a0)
        elif name == "t":
            step.append(1e-4 / hp.omega)
        else:
            step.append(1e-4)
    return Stencil(order=4, step=np.array(step))


def standard_grid(fid: FamilyId, hp: HydrogenParams) -> list:
    """Verification points away from nodes, poles, and cos(2 omega t) zeros."""
    chart = _HYDROGEN_CHARTS[fid]
    rs = [0.5 * hp.a0, 1.0 * hp.a0, 2.0 * hp.a0]
    if fid is FamilyId.PSI200:
        rs = [0.5 * hp.a0, 1.0 * hp.a0]  # r = 2 a0 is the radial node
    thetas = [np.pi / 6, np.pi / 3]
    phis = [np.pi / 6, np.pi / 3]
    ts = [0.0, 0.1 / hp.omega]
    pools = {"r": rs, "theta": thetas, "phi": phis, "t": ts}
    grids = [pools[n] for n in chart.names]
    out = []
    for combo in np.stack(np.meshgrid(*grids, indexing="ij"), axis=-1).reshape(-1, chart.dim):
        out.append(ParamPoint(chart, combo))
    return out


@dataclass(frozen=True)
class CompareReport:
    """Finite-difference vs closed-form grading over a point set."""

    family: FamilyId
    points: tuple
    max_rel_err: float
    entries: tuple          # rows: point values, coord name, oracle, measured, rel err
    offdiag_max: tuple      # rows: point values, largest |off-diagonal| measured

    def to_json_dict(self) -> dict:
        return {
            "family": self.family.value,
            "points": [list(p) for p in self.points],
            "max_rel_err": self.max_rel_err,
            "entries": [
                {
                    "point": list(pt),
                    "coord": coord,
                    "oracle": oracle,
                    "measured": measured,
                    "rel_err": rel,
                }
                for pt, coord, oracle, measured, rel in self.entries
            ],
            "offdiag_max": [
                {"point": list(pt), "measured": v} for pt, v in self.offdiag_max
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = _csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "point", "coord", "oracle", "measured", "rel_err"])
        for pt, coord, oracle, measured, rel in self.entries:
            w.writerow(
                [self.family.value, " ".join(repr(v) for v in pt), coord,
                 repr(oracle), repr(measured), repr(rel)]
            )
        return buf.getvalue()


def compare(
    fid: FamilyId,
    params: HydrogenParams,
    points: Optional[Iterable[ParamPoint]] = None,
    stencil: Optional[Stencil] = None,
) -> CompareReport:
    """Grade the finite-difference unconjugated-square metric against the oracle.

    Relative error per diagonal entry; the off-diagonal magnitudes of the
    finite-difference matrix are recorded per point but not graded (the
    closed forms are diagonal by construction).
    """
    if fid is FamilyId.GAUSSIAN_COHERENT:
        raise StructureError("compare applies to the closed-form families only")
    fam = make_family(fid, params)
    if points is None:
        points = standard_grid(fid, params)
    points = list(points)
    if not points:
        raise StructureError("compare needs at least one point")
    if stencil is None:
        stencil = default_compare_stencil(fid, params)
    entries = []
    offdiag = []
    worst = 0.0
    for p in points:
        fd = config_metric(fam, p, stencil, ConfigMode.ANALYTIC_SQUARE)
        orc = oracle_metric(fid, params, p)
        odiag = np.diag(orc.entries)
        mdiag = np.diag(fd.entries)
        scale = float(np.max(np.abs(odiag)))
        floor = 1e-12 * max(scale, 1.0)
        for i, name in enumerate(fam.chart.names):
            rel = abs(mdiag[i] - odiag[i]) / max(abs(odiag[i]), floor)
            worst = max(worst, float(rel))
            entries.append(
                (tuple(p.values), name, float(odiag[i]), float(mdiag[i]), float(rel))
            )
        off = fd.entries - np.diag(mdiag)
        offdiag.append((tuple(p.values), float(np.max(np.abs(off)))))
    return CompareReport(
        fid,
        tuple(tuple(p.values) for p in points),
        float(worst),
        tuple(entries),
        tuple(offdiag),
    )


def bohr_radius(m: float, Zalpha: float, hbar: float = 1.0, c: float = 1.0) -> float:
    """Radial scale ``hbar / (2 m c Zalpha)``.

    Note the factor 2 relative to the textbook ``hbar / (m c Zalpha)``; the
    convention implemented here is the one the catalog families are built
    around, and the difference is documented rather than silently corrected.
    """
    if m <= 0 or hbar <= 0 or c <= 0:
        raise DomainError("m, hbar, c must all be positive")
    if Zalpha <= 0:
        raise DomainError("Zalpha must be positive (coupling switched off has no scale)")
    return hbar / (2.0 * m * c * Zalpha)


# ---------------------------------------------------------------------------
# Gaussian coherent-state limit


@dataclass(frozen=True)
class GaussianLimitReport:
    """Measured center-space metric behaviour of the coherent family.

    ``constant`` records the measured value of ``g_ll * hbar * lam^2`` (no
    asserted theory value; the report is the oracle).  ``ratio_vs_double``
    is g_ll(lam) / g_ll(2 lam), which the 1/lam^2 law fixes at 4.
    """

    params: GaussianParams
    l_samples: tuple
    g_ll: tuple
    variation_rel: float
    constant: float
    ratio_vs_double: float
    isotropy_dev: float
    matrices: tuple = field(repr=False, default=())


def gaussian_limit_check(
    gp: GaussianParams, l_samples: Sequence[float] | Sequence[Sequence[float]]
) -> GaussianLimitReport:
    """Pull the ray metric back to the center chart and measure its law.

    Checks performed (measured, not asserted -- thresholds live with the
    callers): translation invariance of ``g_ll`` across the sample centers,
    the ``1/lam^2`` scaling against a doubled-width family, and isotropy in
    the 3-D case.
    """
    fam = make_family(FamilyId.GAUSSIAN_COHERENT, gp)
    sten = Stencil(order=4, step=1e-3 * gp.lam)
    pts = []
    for l in l_samples:
        vals = np.atleast_1d(np.asarray(l, dtype=np.float64))
        if vals.size != gp.dim:
            raise StructureError(f"center sample needs {gp.dim} component(s)")
        if not fam.domain.contains(vals):
            raise DomainError(
                f"center {tuple(vals)} outside the supported box; the sampling "
                "grid keeps 8 widths of margin and cannot follow it"
            )
        pts.append(ParamPoint(fam.chart, vals))
    if not pts:
        raise StructureError("need at least one center sample")
    mats = [fs_pullback(fam, p, sten).entries for p in pts]
    g_ll = [float(m[0, 0]) for m in mats]
    mean = float(np.mean(g_ll))
    variation = float((np.max(g_ll) - np.min(g_ll)) / abs(mean))
    iso = 0.0
    if gp.dim == 3:
        for m in mats:
            iso = max(iso, float(np.max(np.abs(m - m[0, 0] * np.eye(3))) / m[0, 0]))
    doubled = GaussianParams(2.0 * gp.lam, gp.hbar, gp.dim)
    fam2 = make_family(FamilyId.GAUSSIAN_COHERENT, doubled)
    origin = ParamPoint(fam2.chart, np.zeros(gp.dim))
    g2 = float(
        fs_pullback(fam2, origin, Stencil(order=4, step=1e-3 * doubled.lam)).entries[0, 0]
    )
    return GaussianLimitReport(
        params=gp,
        l_samples=tuple(tuple(p.values) for p in pts),
        g_ll=tuple(g_ll),
        variation_rel=variation,
        constant=mean * gp.hbar * gp.lam**2,
        ratio_vs_double=mean / g2,
        isotropy_dev=iso,
        matrices=tuple(m.tolist() for m in mats),
    )
