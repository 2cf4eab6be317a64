import json

import numpy as np
import pytest

from qsgeom.catalog import FamilyId, HydrogenParams, make_family, oracle_metric
from qsgeom.errors import DomainError, StructureError
from qsgeom.families import Box, Chart, FieldFamily, RayFamily, Stencil, covariant_partial_ray
from qsgeom.hilbert import StateVector, inner
from qsgeom.metrics import (
    ConfigMode,
    MetricMatrix,
    Signature,
    config_metric,
    fs_distance_sq,
    fs_pullback,
    fs_symplectic,
    kg_invariant_residual,
    line_element,
    metric_from_json,
    metric_loads,
    metric_dumps,
    signature,
    transform_metric,
)
from qsgeom.model_spaces import bloch_family

from conftest import random_state

RT = Chart((("r", "length"), ("t", "time")))


# ---------------------------------------------------------------------------
# distance


def test_fs_distance_endpoints():
    e0 = StateVector([1, 0, 0])
    e1 = StateVector([0, 1, 0])
    half = StateVector([1, 1, 0])
    assert fs_distance_sq(e0, e0) == 0.0
    assert fs_distance_sq(e0, e1) == pytest.approx(4.0, abs=1e-12)
    assert fs_distance_sq(e0, half) == pytest.approx(2.0, abs=1e-12)


def test_fs_distance_symmetric_phase_invariant_bounded(rng):
    from qsgeom.hilbert import apply_phase

    for _ in range(20):
        a = random_state(rng, 4)
        b = random_state(rng, 4)
        d = fs_distance_sq(a, b)
        assert 0.0 <= d <= 4.0 + 1e-12
        assert d == pytest.approx(fs_distance_sq(b, a), abs=1e-12)
        assert d == pytest.approx(fs_distance_sq(apply_phase(a, 1.7), b), abs=1e-12)


def test_fs_distance_zero_state_is_domain_error():
    with pytest.raises(DomainError):
        fs_distance_sq(StateVector([0, 0]), StateVector([1, 0]))


def test_fs_distance_no_cancellation_for_close_rays():
    # the naive 4(1 - |<a|b>|^2) form loses ~half the digits here
    eps = 1e-8
    a = StateVector([1.0, 0.0])
    b = StateVector([np.cos(eps), np.sin(eps)])
    assert fs_distance_sq(a, b) == pytest.approx(4.0 * np.sin(eps) ** 2, rel=1e-10)


# ---------------------------------------------------------------------------
# ray-space pullback


def test_fs_pullback_pure_phase_vanishes():
    lam = Chart((("lam", "dimensionless"),))
    psi0 = np.array([0.6, 0.8j])
    fam = RayFamily(
        lam, lambda p: StateVector(np.exp(1j * p.values[0]) * psi0), Box.unbounded(1)
    )
    g = fs_pullback(fam, lam.point(0.2)).entries
    assert np.max(np.abs(g)) < 1e-10


def test_fs_pullback_bloch_quarter_sphere():
    fam = bloch_family()
    for th in (0.6, 1.1, 2.3):
        g = fs_pullback(fam, fam.chart.point(theta=th, phi=1.0)).entries
        expected = 0.25 * np.diag([1.0, np.sin(th) ** 2])
        assert np.max(np.abs(g - expected)) < 1e-7


def test_fs_pullback_positive_semidefinite_and_gram(rng):
    v = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    lam = Chart((("lam", "dimensionless"),))
    fam = RayFamily(
        lam,
        lambda p: StateVector(v[0] + p.values[0] * v[1] + 0.5 * p.values[0] ** 2 * v[2]),
        Box.unbounded(1),
    )
    p = lam.point(0.1)
    M = fs_pullback(fam, p)
    assert np.min(np.linalg.eigvalsh(M.entries)) > -1e-10
    d = covariant_partial_ray(fam, p, 0)
    assert M.entries[0, 0] == pytest.approx(inner(d, d).real, abs=1e-10)


def test_fs_symplectic_bloch():
    fam = bloch_family()
    th = 1.1
    w = fs_symplectic(fam, fam.chart.point(theta=th, phi=0.5))
    assert w[0, 1] == pytest.approx(-w[1, 0], abs=1e-12)
    assert abs(w[0, 1]) == pytest.approx(np.sin(th) / 4.0, abs=1e-7)


# ---------------------------------------------------------------------------
# configuration-space metric


def psi100_field(params=HydrogenParams()):
    return make_family(FamilyId.PSI100, params)


def test_config_metric_analytic_square_matches_closed_form():
    fam = psi100_field()
    g = config_metric(fam, RT.point(1.0, 0.0), Stencil(order=4, step=1e-4))
    assert g.entries[0, 0] == pytest.approx(np.exp(-2.0), abs=1e-8)
    assert g.entries[1, 1] == pytest.approx(-np.exp(-2.0), abs=1e-8)


def test_config_metric_hermitian_mode_is_time_independent():
    fam = psi100_field()
    s = Stencil(order=4, step=1e-4)
    g0 = config_metric(fam, RT.point(1.0, 0.0), s, ConfigMode.HERMITIAN)
    g1 = config_metric(fam, RT.point(1.0, 0.37), s, ConfigMode.HERMITIAN)
    assert g0.entries[0, 0] == pytest.approx(np.exp(-2.0), abs=1e-8)
    assert np.max(np.abs(g1.entries - g0.entries)) < 1e-8
    # positive-semidefinite, unlike the unconjugated square
    assert np.min(np.linalg.eigvalsh(g0.entries)) > -1e-10


def test_config_metric_modes_agree_for_real_families():
    f = FieldFamily(RT, lambda p: np.exp(-p.values[0]) * (1.0 + p.values[1] ** 2), Box.unbounded(2))
    p = RT.point(0.5, 0.3)
    a = config_metric(f, p, mode=ConfigMode.ANALYTIC_SQUARE).entries
    h = config_metric(f, p, mode=ConfigMode.HERMITIAN).entries
    assert np.max(np.abs(a - h)) < 1e-12


def test_config_metric_accepts_mode_string():
    fam = psi100_field()
    g = config_metric(fam, RT.point(1.0, 0.0), Stencil(order=4, step=1e-4), "hermitian")
    assert g.entries[0, 0] == pytest.approx(np.exp(-2.0), abs=1e-8)


# ---------------------------------------------------------------------------
# wave-operator invariant


def plane_wave(k, omega):
    chart = Chart((("t", "time"), ("x", "length"), ("y", "length"), ("z", "length")))
    kv = np.asarray(k, dtype=float)
    return FieldFamily(
        chart,
        lambda p: np.exp(1j * (kv @ p.values[1:] - omega * p.values[0])),
        Box.unbounded(4),
    )


def test_kg_residual_on_shell():
    k = np.array([0.7, 0.4, -0.2])
    m0, c, hbar = 1.3, 1.0, 1.0
    omega = np.sqrt(c**2 * (k @ k) + m0**2 * c**4 / hbar**2)
    f = plane_wave(k, omega)
    p = f.chart.point(0.2, 0.1, -0.3, 0.5)
    assert kg_invariant_residual(f, p, m0, c, hbar, Stencil(order=4, step=1e-2)) < 1e-6


def test_kg_residual_massless():
    k = np.array([0.6, 0.0, 0.8])
    f = plane_wave(k, np.sqrt(k @ k))
    p = f.chart.point(0.0, 0.0, 0.0, 0.0)
    assert kg_invariant_residual(f, p, 0.0, s=Stencil(order=4, step=1e-2)) < 1e-6


def test_kg_residual_off_shell_is_the_mass_term():
    k = np.array([0.7, 0.4, -0.2])
    m0 = 0.9
    f = plane_wave(k, np.sqrt(k @ k))  # lightlike frequency, massive equation
    p = f.chart.point(0.3, 0.0, 0.2, -0.1)
    got = kg_invariant_residual(f, p, m0, s=Stencil(order=4, step=1e-2))
    assert got == pytest.approx(m0**2, abs=1e-6)  # |psi|^2 = 1, c = hbar = 1


def test_kg_residual_chart_validation():
    bad = FieldFamily(RT, lambda p: 1.0, Box.unbounded(2))
    with pytest.raises(StructureError):
        kg_invariant_residual(bad, RT.point(0, 0), 1.0)
    spacefirst = Chart(
        (("x", "length"), ("y", "length"), ("z", "length"), ("t", "time"))
    )
    f = FieldFamily(spacefirst, lambda p: 1.0, Box.unbounded(4))
    with pytest.raises(StructureError):
        kg_invariant_residual(f, f.chart.point(0, 0, 0, 0), 1.0)
    g = plane_wave(np.zeros(3), 1.0)
    with pytest.raises(DomainError):
        kg_invariant_residual(g, g.chart.point(0, 0, 0, 0), -1.0)


# ---------------------------------------------------------------------------
# line elements and signatures


def test_line_element():
    eye = MetricMatrix(RT, np.eye(2))
    assert line_element(eye, [0.0, 0.0]) == 0.0
    assert line_element(eye, [1.0, 0.0]) == 1.0
    with pytest.raises(StructureError):
        line_element(eye, [1.0, 0.0, 0.0])


def test_line_element_psi100_worked_point():
    M = oracle_metric(FamilyId.PSI100, HydrogenParams(), RT.point(1.0, 0.0))
    got = line_element(M, [0.1, 0.2])
    assert got == pytest.approx(-0.03 * np.exp(-2.0), abs=1e-12)


def test_signature_identity():
    four = Chart(tuple((f"x{i}", "length") for i in range(4)))
    sig = signature(MetricMatrix(four, np.eye(4)))
    assert sig.as_tuple() == (4, 0, 0)
    assert isinstance(sig, Signature)


def test_signature_psi211_generic_and_pole():
    chart = Chart(
        (("r", "length"), ("theta", "angle"), ("phi", "angle"), ("t", "time"))
    )
    hp = HydrogenParams()
    generic = oracle_metric(FamilyId.PSI211R, hp, chart.point(1.0, np.pi / 3, np.pi / 6, 0.0))
    assert signature(generic).as_tuple() == (3, 1, 0)
    pole = oracle_metric(FamilyId.PSI211R, hp, chart.point(1.0, 0.0, np.pi / 6, 0.0))
    assert signature(pole).n_zero >= 1


def test_signature_zero_tolerance_is_relative():
    c2 = Chart((("a", "length"), ("b", "length")))
    M = MetricMatrix(c2, np.diag([1.0, 1e-12]))
    assert signature(M).as_tuple() == (1, 0, 1)
    assert signature(M, zero_tol=1e-14).as_tuple() == (2, 0, 0)


# ---------------------------------------------------------------------------
# matrix plumbing


def test_metric_matrix_symmetrizes_and_validates():
    M = MetricMatrix(RT, np.array([[1.0, 2.0], [0.0, 3.0]]))
    assert M.entries[0, 1] == M.entries[1, 0] == pytest.approx(1.0)
    with pytest.raises(StructureError):
        MetricMatrix(RT, np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(StructureError):
        MetricMatrix(RT, np.eye(3))


def test_transform_metric_shape_check():
    M = MetricMatrix(RT, np.eye(2))
    with pytest.raises(StructureError):
        transform_metric(M, np.eye(3), RT)


def test_metric_json_roundtrip():
    M = oracle_metric(FamilyId.PSI100, HydrogenParams(), RT.point(0.8, 0.05))
    N = metric_loads(metric_dumps(M))
    assert N.chart == M.chart
    assert np.array_equal(N.entries, M.entries)
    d = json.loads(metric_dumps(M))
    assert d["chart"] == [["r", "length"], ["t", "time"]]
    with pytest.raises(StructureError):
        metric_from_json({"entries": [[1.0]]})
