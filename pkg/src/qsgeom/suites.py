"""Named verification suites behind ``qsgeom verify``.

Each suite returns an ordered list of :class:`CheckRecord`; the pass/fail
decision lives here so the CLI and the test suite grade identically.  All
randomness flows from ``numpy.random.default_rng`` seeded with
``[seed, suite_offset]`` so records are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from .catalog import (
    FamilyId,
    GaussianParams,
    HydrogenParams,
    bohr_radius,
    compare,
    gaussian_limit_check,
    make_family,
    oracle_metric,
    standard_grid,
)
from .config import Tolerances
from .dynamics import (
    Hamiltonian,
    aa_speed_residual,
    energy_dispersion,
    evolve,
    projected_trajectory,
    proper_time,
)
from .errors import QsgeomError
from .families import (
    Box,
    Chart,
    FieldFamily,
    ParamPoint,
    RayFamily,
    Stencil,
    covariant_partial_ray,
    gauge_transform,
    reparametrize,
)
from .geometry import (
    best_fit_lambda,
    christoffel,
    curvature,
    geodesic_integrate,
    geodesic_residual,
)
from .hilbert import StateVector, inner
from .metrics import (
    ConfigMode,
    config_metric,
    fs_distance_sq,
    fs_pullback,
    kg_invariant_residual,
    line_element,
    signature,
)
from .model_spaces import (
    bloch_family,
    cp1_field_scaled,
    cp2_field,
    flat_field,
    sphere_field,
)

__all__ = ["CheckRecord", "SUITE_NAMES", "run_suite"]


@dataclass(frozen=True)
class CheckRecord:
    name: str
    passed: bool
    measured: float
    tolerance: float

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def _upper(name: str, measured: float, tol: float) -> CheckRecord:
    """measured must stay at or under tol."""
    return CheckRecord(name, bool(measured <= tol), float(measured), float(tol))


def _lower(name: str, measured: float, floor: float) -> CheckRecord:
    """measured must stay at or above floor (contrast/convergence checks)."""
    return CheckRecord(name, bool(measured >= floor), float(measured), float(floor))


# ---------------------------------------------------------------------------
# shared fixtures

_LAM_CHART = Chart((("lam", "dimensionless"),))


def _random_quadratic_family(rng: np.random.Generator, dim: int = 4) -> RayFamily:
    """psi(lam) = a + lam b + lam^2 c / 2 with standard-normal complex a, b, c."""
    a, b, c = (
        rng.standard_normal(dim) + 1j * rng.standard_normal(dim) for _ in range(3)
    )

    def ev(p):
        lam = p.values[0]
        return StateVector(a + lam * b + 0.5 * lam * lam * c)

    return RayFamily(_LAM_CHART, ev, Box(np.array([-1.0]), np.array([1.0])))


def _random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def _kg_plane_wave(kvec, omega) -> FieldFamily:
    chart = Chart(
        (("t", "time"), ("x", "length"), ("y", "length"), ("z", "length"))
    )
    k = np.asarray(kvec, dtype=np.float64)

    def amp(p):
        t = p.values[0]
        x = p.values[1:]
        return np.exp(1j * (k @ x - omega * t))

    return FieldFamily(chart, amp, Box.unbounded(4))


# ---------------------------------------------------------------------------
# fs suite: distance arithmetic, pullback consistency, CP(1), Gaussian limit


def suite_fs(tol: Tolerances, seed: int) -> List[CheckRecord]:
    rng = np.random.default_rng([seed, 0])
    out: List[CheckRecord] = []

    # squared-distance arithmetic on known overlaps
    e0 = StateVector([1.0, 0.0, 0.0])
    e1 = StateVector([0.0, 1.0, 0.0])
    half = StateVector([1.0, 1.0, 0.0])
    out.append(_upper("fs-distance-orthogonal", abs(fs_distance_sq(e0, e1) - 4.0), 1e-12))
    out.append(_upper("fs-distance-half-overlap", abs(fs_distance_sq(e0, half) - 2.0), 1e-12))

    # finite distance vs quadratic form: measured convergence order
    deltas = np.array([1e-2, 5e-3, 2.5e-3])
    slopes = []
    for _ in range(20):
        fam = _random_quadratic_family(rng)
        lam0 = 0.1 + 0.2 * rng.random()
        p0 = ParamPoint(_LAM_CHART, np.array([lam0]))
        g = fs_pullback(fam, p0).entries[0, 0]
        errs = []
        for d in deltas:
            pd = ParamPoint(_LAM_CHART, np.array([lam0 + d]))
            ds2 = fs_distance_sq(fam.eval_state(p0), fam.eval_state(pd))
            errs.append(abs(ds2 - 4.0 * g * d * d))
        slopes.append(np.polyfit(np.log(deltas), np.log(errs), 1)[0])
    # Median over the ensemble: a single family can have its cubic error term
    # pass through zero inside the delta window, which wrecks that one fit
    # without saying anything about the convergence order itself.
    out.append(_lower("fs-consistency-order", float(np.median(slopes)), tol.fs_order_min))

    # pullback equals the Gram matrix of covariant derivatives
    fam = _random_quadratic_family(rng)
    p0 = ParamPoint(_LAM_CHART, np.array([0.3]))
    dcov = covariant_partial_ray(fam, p0, 0)
    gram = inner(dcov, dcov).real
    dev = abs(fs_pullback(fam, p0).entries[0, 0] - gram)
    bfam = bloch_family()
    pb = bfam.chart.point(theta=1.1, phi=0.7)
    covs = [covariant_partial_ray(bfam, pb, mu) for mu in range(2)]
    gmat = np.array([[inner(ci, cj).real for cj in covs] for ci in covs])
    dev = max(dev, float(np.max(np.abs(fs_pullback(bfam, pb).entries - gmat))))
    out.append(_upper("fs-gram-agreement", dev, tol.fs_gram_agreement))

    # CP(1): four times the pullback is the round unit sphere
    worst = 0.0
    for th in np.linspace(0.5, np.pi - 0.5, 5):
        for ph in np.linspace(0.3, 5.9, 5):
            g4 = 4.0 * fs_pullback(bfam, bfam.chart.point(theta=th, phi=ph)).entries
            ref = np.diag([1.0, np.sin(th) ** 2])
            worst = max(worst, float(np.max(np.abs(g4 - ref))))
    out.append(_upper("cp1-roundsphere-entries", worst, tol.sphere_entry_tol))

    mf = cp1_field_scaled()
    worst = 0.0
    for th, ph in ((1.0, 1.0), (np.pi / 2, 2.0), (2.0, 4.0)):
        rep = curvature(mf, mf.chart.point(theta=th, phi=ph), h=5e-2)
        worst = max(worst, abs(rep.scalar - 2.0))
    out.append(_upper("cp1-scalar-curvature", worst, tol.sphere_scalar_tol))

    # Gaussian coherent family: translation invariance and 1/lam^2 law
    gp = GaussianParams(lam=1.0, hbar=1.0, dim=1)
    rep = gaussian_limit_check(gp, [-1.0, -0.3, 0.0, 0.5, 1.0])
    out.append(_upper("gauss-translation-invariance", rep.variation_rel, tol.gauss_translation))
    consts = []
    for lam in (0.5, 1.0, 2.0):
        r = gaussian_limit_check(GaussianParams(lam=lam), [0.0])
        consts.append(r.constant)
    cmid = consts[1]
    dev = max(abs(c / cmid - 1.0) for c in consts)
    out.append(_upper("gauss-inverse-square-scaling", dev, tol.gauss_scaling))
    out.append(_upper("gauss-double-width-ratio", abs(rep.ratio_vs_double / 4.0 - 1.0), tol.gauss_scaling))
    return out


# ---------------------------------------------------------------------------
# gauge suite


def suite_gauge(tol: Tolerances, seed: int) -> List[CheckRecord]:
    rng = np.random.default_rng([seed, 1])
    out: List[CheckRecord] = []
    fam = _random_quadratic_family(rng)
    p0 = ParamPoint(_LAM_CHART, np.array([0.25]))
    base = fs_pullback(fam, p0).entries
    for k in (0.5, 2.0, 7.0):
        gauged = gauge_transform(fam, lambda p, k=k: k * p.values[0])
        dev = float(np.max(np.abs(fs_pullback(gauged, p0).entries - base)))
        out.append(_upper(f"gauge-ray-invariance-k{k:g}", dev, tol.gauge_ray_tol))

    bfam = bloch_family()
    pb = bfam.chart.point(theta=1.2, phi=0.9)
    base_b = fs_pullback(bfam, pb).entries
    gauged_b = gauge_transform(bfam, lambda p: 0.7 * p.values[0] + 1.3 * p.values[1])
    dev = float(np.max(np.abs(fs_pullback(gauged_b, pb).entries - base_b)))
    out.append(_upper("gauge-ray-invariance-bloch", dev, tol.gauge_ray_tol))

    # contrast: the pointwise unconjugated-square metric is NOT gauge invariant
    hp = HydrogenParams()
    f100 = make_family(FamilyId.PSI100, hp)
    pt = f100.chart.point(r=1.0, t=0.0)
    g_plain = config_metric(f100, pt, mode=ConfigMode.ANALYTIC_SQUARE).entries
    f100_gauged = gauge_transform(f100, lambda p: p.values[0])
    g_gauged = config_metric(f100_gauged, pt, mode=ConfigMode.ANALYTIC_SQUARE).entries
    change = float(np.max(np.abs(g_gauged - g_plain)))
    out.append(_lower("gauge-config-contrast", change, tol.gauge_config_min))
    return out


# ---------------------------------------------------------------------------
# hydrogen suite


def suite_hydrogen(tol: Tolerances, seed: int) -> List[CheckRecord]:
    out: List[CheckRecord] = []
    hp = HydrogenParams()

    for fid in (FamilyId.PSI100, FamilyId.PSI200, FamilyId.PSI210R, FamilyId.PSI211R):
        rep = compare(fid, hp)
        out.append(_upper(f"compare-{fid.value}", rep.max_rel_err, tol.hydrogen_rel))
    rep = compare(FamilyId.DIRAC_GROUND_R, HydrogenParams(Zalpha=0.3))
    out.append(_upper("compare-dirac-za0.3", rep.max_rel_err, tol.hydrogen_rel))

    # spot values of the closed forms
    e2 = np.exp(-2.0)
    m100 = oracle_metric(FamilyId.PSI100, hp, _chart_of(FamilyId.PSI100).point(r=1.0, t=0.0))
    dev = max(abs(m100.entries[0, 0] - e2), abs(m100.entries[1, 1] + e2))
    out.append(_upper("psi100-point-values", dev, 1e-12))
    le = line_element(m100, np.array([0.1, 0.2]))
    out.append(_upper("psi100-line-element", abs(le - (-0.03 * e2)), 1e-12))
    e1 = np.exp(-1.0)
    m211 = oracle_metric(
        FamilyId.PSI211R, hp, _chart_of(FamilyId.PSI211R).point(r=1.0, theta=np.pi / 2, phi=0.0, t=0.0)
    )
    dev = max(
        abs(m211.entries[0, 0] - 0.25 * e1),
        abs(m211.entries[1, 1]),
        abs(m211.entries[2, 2]),
        abs(m211.entries[3, 3] + e1),
    )
    out.append(_upper("psi211-point-values", dev, 1e-12))

    # signature of the closed-form coefficient matrices at generic times
    for fid, params in (
        (FamilyId.PSI211R, hp),
        (FamilyId.DIRAC_GROUND_R, HydrogenParams(Zalpha=0.3)),
    ):
        chart = _chart_of(fid)
        bad = 0
        pts = [
            chart.point(r=r, theta=th, phi=ph, t=0.0)
            for r in (0.6, 1.3)
            for th in (np.pi / 5, 2.1)
            for ph in (0.7, 2.4)
        ]
        for p in pts:
            sig = signature(oracle_metric(fid, params, p)).as_tuple()
            if sig != (3, 1, 0):
                bad += 1
        out.append(_upper(f"signature-{fid.value}", float(bad), 0.0))

    # relativistic exponent: coefficients approach the limit family as Zalpha^2
    ratios = _dirac_limit_ratios((0.3, 0.15, 0.075))
    dev = max(abs(r / 4.0 - 1.0) for r in ratios)
    out.append(_upper("dirac-limit-quadratic-rate", dev, tol.dirac_ratio_band))

    # structural radial factor of the relativistic family
    hp3 = HydrogenParams(Zalpha=0.3)
    gam = hp3.gamma
    chart = _chart_of(FamilyId.DIRAC_GROUND_R)
    p1 = chart.point(r=0.8, theta=1.0, phi=1.1, t=0.0)
    p2 = chart.point(r=1.6, theta=1.0, phi=1.1, t=0.0)
    m1 = oracle_metric(FamilyId.DIRAC_GROUND_R, hp3, p1).entries
    m2 = oracle_metric(FamilyId.DIRAC_GROUND_R, hp3, p2).entries
    pred = (0.8 / 1.6) ** (2.0 * (gam - 1.0)) * np.exp(-2.0 * (0.8 - 1.6))
    dev = 0.0
    for i in (1, 2, 3):  # angular and time entries carry exactly the S factor
        dev = max(dev, abs(m1[i, i] / m2[i, i] - pred))
    out.append(_upper("dirac-structural-ratio", dev, 1e-10))

    # dimensionless radial coordinate removes every trace of a0
    out.append(_upper("psi210-a0-homogeneity", _a0_homogeneity_dev(), 1e-10))

    out.append(_upper("bohr-radius-coupling-1-137", abs(bohr_radius(1.0, 1.0 / 137.0) - 68.5), 1e-12))
    return out


def _chart_of(fid: FamilyId) -> Chart:
    return make_family(fid, HydrogenParams()).chart


def _dirac_limit_ratios(zalphas) -> List[float]:
    """Max-relative-deviation ratios between successive halved couplings."""
    hp0 = HydrogenParams()
    grid = standard_grid(FamilyId.DIRAC_LIMIT_R, hp0)
    errs = []
    for za in zalphas:
        hp = HydrogenParams(Zalpha=za)
        worst = 0.0
        for p in grid:
            md = oracle_metric(FamilyId.DIRAC_GROUND_R, hp, p).entries
            ml = oracle_metric(FamilyId.DIRAC_LIMIT_R, hp0, p).entries
            scale = float(np.max(np.abs(np.diag(ml))))
            worst = max(worst, float(np.max(np.abs(np.diag(md - ml)))) / scale)
        errs.append(worst)
    return [errs[i] / errs[i + 1] for i in range(len(errs) - 1)]


def _a0_homogeneity_dev() -> float:
    """Entries of the dimensionless-chart metric must not feel a0."""
    rho_chart = Chart((("rho", "dimensionless"), ("theta", "angle"), ("t", "time")))
    q = rho_chart.point(rho=1.2, theta=0.8, t=0.05)
    sten = Stencil(order=4, step=1e-4)
    mats = []
    for a0 in (1.0, 2.5):
        fam = make_family(FamilyId.PSI210R, HydrogenParams(a0=a0))
        dom = Box(np.array([0.0, 0.0, -np.inf]), np.array([9.0, np.pi, np.inf]))
        scaled = reparametrize(
            fam,
            rho_chart,
            dom,
            lambda p, a0=a0, fam=fam: ParamPoint(
                fam.chart, np.array([p.values[0] * a0, p.values[1], p.values[2]])
            ),
        )
        mats.append(config_metric(scaled, q, sten, ConfigMode.ANALYTIC_SQUARE).entries)
    return float(np.max(np.abs(mats[0] - mats[1])))


# ---------------------------------------------------------------------------
# curvature suite


def suite_curvature(tol: Tolerances, seed: int) -> List[CheckRecord]:
    rng = np.random.default_rng([seed, 3])
    out: List[CheckRecord] = []
    sph = sphere_field()

    p = sph.chart.point(theta=np.pi / 3, phi=1.0)
    gam = christoffel(sph, p, h=1e-3).gamma
    th = np.pi / 3
    dev = max(
        abs(gam[0, 1, 1] - (-np.sin(th) * np.cos(th))),
        abs(gam[1, 0, 1] - (np.cos(th) / np.sin(th))),
    )
    out.append(_upper("sphere-christoffel-closed-form", dev, 1e-6))

    worst = 0.0
    for thv, phv in ((0.9, 0.5), (np.pi / 2, 2.5), (2.1, 4.0)):
        rep = curvature(sph, sph.chart.point(theta=thv, phi=phv), h=5e-2)
        worst = max(worst, abs(rep.scalar - 2.0))
    out.append(_upper("sphere-scalar-curvature", worst, tol.sphere_scalar_tol))

    flat = flat_field(3)
    rep = curvature(flat, flat.chart.point(0.3, -0.2, 0.9), h=1e-2)
    worst = max(
        float(np.max(np.abs(rep.ricci))),
        abs(rep.scalar),
        float(np.max(np.abs(rep.einstein_residual))),
    )
    out.append(_upper("flat3-curvature-zero", worst, 1e-8))

    # CP(2): proportionality of Ricci to the metric, one constant everywhere
    mf = cp2_field()
    pts = [
        ParamPoint(mf.chart, v)
        for v in rng.uniform(-0.6, 0.6, size=(20, 4))
    ]
    ks = []
    for p4 in pts:
        rep = curvature(mf, p4, h=1e-2)
        g = mf(p4).entries
        ks.append(float(np.sum(rep.ricci * g) / np.sum(g * g)))
    ks = np.array(ks)
    out.append(_upper("cp2-einstein-constancy", float(np.std(ks) / np.mean(ks)), tol.einstein_rel_std))

    lam_fit = best_fit_lambda(mf, pts, h=1e-2)
    out.append(_lower("cp2-lambda-positive", lam_fit.value, 0.0))
    pts2 = [ParamPoint(mf.chart, v) for v in rng.uniform(-0.6, 0.6, size=(20, 4))]
    lam_fit2 = best_fit_lambda(mf, pts2, h=1e-2)
    out.append(
        _upper("cp2-lambda-rerun-agreement", abs(lam_fit.value - lam_fit2.value), tol.lambda_repro)
    )
    cp1lam = best_fit_lambda(cp1_field_scaled(), [sph.chart.point(theta=1.0, phi=1.0)])
    ok = cp1lam.two_dim_degenerate and cp1lam.value == 0.0
    out.append(CheckRecord("cp1-lambda-2d-degenerate", ok, cp1lam.value, 0.0))

    # geodesics on the analytic sphere
    start = sph.chart.point(theta=np.pi / 2, phi=0.0)
    n_eq = 1256
    path = geodesic_integrate(
        sph, start, np.array([0.0, 1.0]), ds=2.0 * np.pi / n_eq, steps=n_eq
    )
    closure = float(np.hypot(path.xs[-1, 0] - np.pi / 2, path.xs[-1, 1] - 2.0 * np.pi))
    out.append(_upper("sphere-equator-closure-2pi", closure, 1e-4))

    # Launched tangent to the theta = pi/4 latitude; the geodesic is the great
    # circle that dives toward the equator, so max |theta - pi/4| is large.
    # Step kept small because the residual's central differences are O(ds^2)
    # and u'' is steepest near the turning point of this circle.
    n_tilt = 1056
    tilt = geodesic_integrate(
        sph,
        sph.chart.point(theta=np.pi / 4, phi=0.0),
        np.array([0.0, 1.0]),
        ds=(np.pi / 2.0) / n_tilt,
        steps=n_tilt,
    )
    departure = float(np.max(np.abs(tilt.xs[:, 0] - np.pi / 4)))
    out.append(_lower("sphere-latitude-not-geodesic", departure, 0.01))
    resid = geodesic_residual(tilt, sph)
    out.append(_upper("sphere-geodesic-self-residual", float(np.max(resid)), 1e-5))
    return out


# ---------------------------------------------------------------------------
# dynamics suite


def suite_dynamics(tol: Tolerances, seed: int) -> List[CheckRecord]:
    rng = np.random.default_rng([seed, 4])
    out: List[CheckRecord] = []

    # dispersion-speed relation across random operators
    worst_res = 0.0
    worst_ratio = np.inf
    for i in range(10):
        n = 2 + (i % 7)
        H = Hamiltonian(_random_hermitian(rng, n))
        psi = StateVector(rng.standard_normal(n) + 1j * rng.standard_normal(n))
        r1 = aa_speed_residual(H, psi, 1e-4)
        r2 = aa_speed_residual(H, psi, 5e-5)
        worst_res = max(worst_res, r1)
        worst_ratio = min(worst_ratio, r1 / max(r2, 1e-300))
    out.append(_upper("aa-residual-dt1e-4", worst_res, tol.aa_residual))
    out.append(_lower("aa-residual-halving-ratio", worst_ratio, tol.aa_shrink_min))

    H2 = Hamiltonian(np.diag([0.0, 1.0]).astype(complex))
    plus = StateVector([1.0, 1.0])
    out.append(
        _upper("aa-two-level-closed-form", aa_speed_residual(H2, plus, 1e-4), tol.aa_residual)
    )

    # proper time integrates to projective path length
    tr = evolve(H2, plus, dt=1e-3, steps=1000)
    dE = energy_dispersion(H2, plus)
    total_tau = sum(proper_time(1e-3, dE, H2.hbar) for _ in range(1000))
    chord = sum(
        np.sqrt(fs_distance_sq(tr.states[k], tr.states[k + 1])) for k in range(1000)
    )
    out.append(_upper("proper-time-vs-path-length", abs(total_tau - chord), 1e-5))

    # ray period of the two-level splitting
    trp = evolve(H2, plus, dt=2.0 * np.pi / 400.0, steps=400)
    out.append(
        _upper("two-level-ray-period", fs_distance_sq(trp.states[0], trp.states[-1]), 1e-8)
    )

    # unitarity and moment conservation over a long trace
    H8 = Hamiltonian(_random_hermitian(rng, 8))
    psi8 = StateVector(rng.standard_normal(8) + 1j * rng.standard_normal(8))
    tr8 = evolve(H8, psi8, dt=1e-3, steps=10_000)
    drift = max(abs(inner(s, s).real - 1.0) for s in tr8.states[:: 500])
    out.append(_upper("unitarity-drift-1e4-steps", drift, 1e-12))
    moments = []
    for s in tr8.states[::1000]:
        hs = H8.apply(s)
        moments.append((inner(s, hs).real, inner(hs, hs).real))
    moments = np.array(moments)
    drift_m = float(np.max(np.abs(moments - moments[0])))
    out.append(_upper("energy-moments-constant", drift_m, 1e-10))

    # projected Bloch trajectories against the round metric
    sph = sphere_field()
    eq = evolve(H2, plus, dt=2e-3, steps=400)
    path_eq = projected_trajectory(eq)
    res_eq = geodesic_residual(path_eq, sph)
    out.append(_upper("projected-equator-residual", float(np.max(res_eq)), tol.geodesic_resid))

    tilted0 = StateVector([np.cos(np.pi / 8), np.sin(np.pi / 8)])
    lat = evolve(H2, tilted0, dt=2e-3, steps=400)
    path_lat = projected_trajectory(lat)
    res_lat = geodesic_residual(path_lat, sph)
    out.append(_lower("projected-latitude-residual", float(np.min(res_lat)), tol.tilt_resid_min))

    # relativistic wave-operator residual on plane waves
    k = np.array([0.7, 0.4, -0.2])
    k2 = float(k @ k)
    sten = Stencil(order=4, step=1e-2)
    on = _kg_plane_wave(k, np.sqrt(k2 + 1.0))
    p0 = ParamPoint(on.chart, np.array([0.2, 0.1, -0.3, 0.4]))
    out.append(
        _upper("kg-onshell-residual", kg_invariant_residual(on, p0, m0=1.0, s=sten), tol.kg_residual)
    )
    light = _kg_plane_wave(k, np.sqrt(k2))
    out.append(
        _upper("kg-massless-residual", kg_invariant_residual(light, p0, m0=0.0, s=sten), tol.kg_residual)
    )
    off = kg_invariant_residual(light, p0, m0=1.0, s=sten)
    out.append(_upper("kg-offshell-mass-term", abs(off - 1.0), tol.kg_residual))
    return out


SUITES: Dict[str, Callable[[Tolerances, int], List[CheckRecord]]] = {
    "fs": suite_fs,
    "gauge": suite_gauge,
    "hydrogen": suite_hydrogen,
    "curvature": suite_curvature,
    "dynamics": suite_dynamics,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, tol: Tolerances, seed: int) -> List[CheckRecord]:
    if name == "all":
        records: List[CheckRecord] = []
        for key in SUITES:
            records.extend(SUITES[key](tol, seed))
        return records
    if name not in SUITES:
        raise QsgeomError(f"unknown suite {name!r}")
    return SUITES[name](tol, seed)
