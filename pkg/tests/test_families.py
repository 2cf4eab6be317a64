import numpy as np
import pytest

from qsgeom.errors import DomainError, StructureError
from qsgeom.families import (
    Box,
    Chart,
    FieldFamily,
    ParamPoint,
    RayFamily,
    Stencil,
    covariant_partial_ray,
    gauge_transform,
    partial_field,
    partial_ray,
    reparametrize,
    second_partial_field,
    shifted,
)
from qsgeom.hilbert import StateVector, inner, norm
from qsgeom.metrics import fs_pullback, transform_metric
from qsgeom.model_spaces import bloch_family

X = Chart((("x", "length"),))


def field(amp, dim=1, chart=None, box=None):
    chart = chart or (X if dim == 1 else Chart(tuple((f"x{i}", "length") for i in range(dim))))
    return FieldFamily(chart, amp, box or Box.unbounded(chart.dim))


# ---------------------------------------------------------------------------
# charts, points, boxes, stencils


def test_chart_validation():
    with pytest.raises(StructureError):
        Chart((("x", "length"), ("x", "time")))  # duplicate name
    with pytest.raises(StructureError):
        Chart((("x", "parsec"),))  # unknown unit tag
    with pytest.raises(StructureError):
        Chart(())
    c = Chart((("r", "length"), ("t", "time")))
    assert c.names == ("r", "t")
    assert c.units == ("length", "time")
    assert c.index("t") == 1
    with pytest.raises(StructureError):
        c.index("z")


def test_chart_point_builders():
    c = Chart((("r", "length"), ("t", "time")))
    p = c.point(1.0, 2.0)
    q = c.point(t=2.0, r=1.0)
    assert np.array_equal(p.values, q.values)
    assert p["t"] == 2.0
    with pytest.raises(StructureError):
        c.point(1.0)
    with pytest.raises(StructureError):
        c.point(r=1.0)  # t missing
    with pytest.raises(StructureError):
        c.point(1.0, t=2.0)


def test_param_point_validation():
    with pytest.raises(StructureError):
        ParamPoint(X, np.array([1.0, 2.0]))
    with pytest.raises(StructureError):
        ParamPoint(X, np.array([np.nan]))


def test_box():
    b = Box(np.array([0.0]), np.array([1.0]))
    assert b.contains([0.0]) and b.contains([1.0]) and not b.contains([1.1])
    assert Box.unbounded(3).contains([1e300, -1e300, 0.0])
    with pytest.raises(StructureError):
        Box(np.array([1.0]), np.array([0.0]))


def test_stencil_validation():
    with pytest.raises(StructureError):
        Stencil(order=3)
    with pytest.raises(StructureError):
        Stencil(step=0.0)
    s = Stencil(order=2, step=np.array([1e-3, 1e-4]))
    c2 = Chart((("a", "length"), ("b", "time")))
    assert np.array_equal(s.steps(c2), [1e-3, 1e-4])
    with pytest.raises(StructureError):
        s.steps(X)  # two steps for a one-coordinate chart
    assert Stencil(order=2).reach == 1
    assert Stencil(order=4).reach == 2


def test_shifted():
    p = X.point(1.0)
    q = shifted(p, 0, 0.25)
    assert q.values[0] == 1.25 and p.values[0] == 1.0


# ---------------------------------------------------------------------------
# derivatives of field families


def test_partial_field_identity_and_constant():
    ident = field(lambda p: p.values[0])
    const = field(lambda p: 2.5 + 0.0j)
    p = X.point(0.7)
    assert partial_field(ident, p, 0) == pytest.approx(1.0, abs=1e-10)
    assert partial_field(const, p, 0) == 0.0


def test_partial_field_exponential():
    f = field(lambda p: np.exp(-p.values[0]))
    got = partial_field(f, X.point(1.0), 0, Stencil(order=4, step=1e-3))
    assert got.real == pytest.approx(-np.exp(-1.0), abs=1e-8)
    assert got.imag == 0.0


def test_second_partial_field():
    f = field(lambda p: np.sin(p.values[0]))
    got = second_partial_field(f, X.point(np.pi / 4), 0)
    assert got.real == pytest.approx(-np.sin(np.pi / 4), abs=1e-8)


@pytest.mark.parametrize("order,factor", [(2, 2.0), (4, 8.0)])
def test_stencil_convergence_rate(order, factor):
    # halving h must shrink the error by at least 2^order / 2, measured over
    # a decade of h where truncation dominates roundoff
    f = field(lambda p: np.exp(np.sin(p.values[0])))
    x = 0.3
    exact = np.cos(x) * np.exp(np.sin(x))
    hs = [0.4 / 2**k for k in range(5)]  # 0.4 .. 0.025
    errs = [
        abs(partial_field(f, X.point(x), 0, Stencil(order=order, step=h)) - exact)
        for h in hs
    ]
    for coarse, fine in zip(errs, errs[1:]):
        assert coarse / fine >= factor


def test_stencil_domain_clipping_is_an_error():
    f = field(lambda p: p.values[0], box=Box(np.array([0.0]), np.array([1.0])))
    with pytest.raises(DomainError) as exc:
        partial_field(f, X.point(5e-4), 0, Stencil(order=4, step=1e-3))
    assert "x" in str(exc.value)  # names the offending coordinate
    # order 2 reaches only h, which fits at the same point with a smaller step
    assert partial_field(f, X.point(5e-4), 0, Stencil(order=2, step=1e-4)) == pytest.approx(
        1.0, abs=1e-9
    )


def test_field_family_domain_check():
    f = field(lambda p: 1.0, box=Box(np.array([0.0]), np.array([1.0])))
    with pytest.raises(DomainError):
        f(X.point(2.0))
    with pytest.raises(StructureError):
        f(Chart((("y", "length"),)).point(0.5))  # wrong chart


# ---------------------------------------------------------------------------
# derivatives of ray families


def phase_family():
    psi0 = np.array([1.0, 1j]) / np.sqrt(2)
    lam = Chart((("lam", "dimensionless"),))
    return RayFamily(
        lam, lambda p: StateVector(np.exp(1j * p.values[0]) * psi0), Box.unbounded(1)
    )


def test_partial_ray_constant_family():
    lam = Chart((("lam", "dimensionless"),))
    fam = RayFamily(lam, lambda p: StateVector([1.0, 0.0]), Box.unbounded(1))
    d = partial_ray(fam, lam.point(0.0), 0)
    assert norm(d) < 1e-12


def test_partial_ray_phase_family():
    fam = phase_family()
    p = fam.chart.point(0.4)
    d = partial_ray(fam, p, 0)
    expected = 1j * fam.eval_state(p).amplitudes
    assert np.allclose(d.amplitudes, expected, atol=1e-8)


def test_partial_ray_bloch_theta():
    fam = bloch_family()
    p = fam.chart.point(theta=np.pi / 2, phi=0.0)
    d = partial_ray(fam, p, 0)
    # d/dtheta (cos(theta/2), sin(theta/2)) = (-sin(theta/2)/2, cos(theta/2)/2)
    expected = np.array([-np.sin(np.pi / 4) / 2, np.cos(np.pi / 4) / 2])
    assert np.allclose(d.amplitudes, expected, atol=1e-8)


def test_covariant_partial_ray_kills_pure_gauge():
    fam = phase_family()
    d = covariant_partial_ray(fam, fam.chart.point(0.4), 0)
    assert norm(d) < 1e-8


def test_covariant_partial_ray_orthogonality():
    fam = bloch_family()
    p = fam.chart.point(theta=1.1, phi=0.7)
    psi = fam.eval_state(p)
    for mu in range(2):
        d = covariant_partial_ray(fam, p, mu)
        assert abs(inner(psi, d)) < 1e-10


# ---------------------------------------------------------------------------
# gauge transformations


def test_gauge_transform_zero_is_identity():
    fam = bloch_family()
    same = gauge_transform(fam, lambda p: 0.0)
    p = fam.chart.point(theta=0.9, phi=2.0)
    assert np.array_equal(same.eval_state(p).amplitudes, fam.eval_state(p).amplitudes)


def test_gauge_transform_constant_phase_leaves_pullback():
    fam = phase_family()
    p = fam.chart.point(0.3)
    g0 = fs_pullback(fam, p).entries
    g1 = fs_pullback(gauge_transform(fam, lambda q: 1.234), p).entries
    assert np.max(np.abs(g1 - g0)) < 1e-8


def test_gauge_transform_linear_phase_leaves_pullback():
    fam = bloch_family()
    p = fam.chart.point(theta=1.2, phi=0.8)
    g0 = fs_pullback(fam, p).entries
    alpha = lambda q: 3.0 * q.values[0] - 1.5 * q.values[1]
    g1 = fs_pullback(gauge_transform(fam, alpha), p).entries
    assert np.max(np.abs(g1 - g0)) < 1e-6


def test_gauge_transform_field_family():
    f = field(lambda p: 2.0 + 0.0j)
    g = gauge_transform(f, lambda p: np.pi / 2)
    assert g(X.point(0.0)) == pytest.approx(2j, abs=1e-15)


# ---------------------------------------------------------------------------
# reparametrization


def test_reparametrize_identity():
    fam = bloch_family()
    same = reparametrize(fam, fam.chart, fam.domain, lambda q: q)
    p = fam.chart.point(theta=1.0, phi=1.0)
    assert np.allclose(
        fs_pullback(same, p).entries, fs_pullback(fam, p).entries, atol=1e-12
    )


def test_reparametrize_scaling_quadruples_metric():
    fam = phase_family()

    def quad(p):
        lam = p.values[0]
        return StateVector([1.0, lam + 0.2 * lam * lam])

    base = RayFamily(fam.chart, quad, Box.unbounded(1))
    xp = Chart((("lamp", "dimensionless"),))
    halved = reparametrize(base, xp, Box.unbounded(1), lambda q: base.chart.point(2.0 * q.values[0]))
    g = fs_pullback(base, base.chart.point(0.6)).entries[0, 0]
    gp = fs_pullback(halved, xp.point(0.3)).entries[0, 0]
    assert gp == pytest.approx(4.0 * g, rel=1e-8)


def test_reparametrize_full_tensor_law():
    # shear of the Bloch chart: theta = theta' + 0.3 phi', phi = phi'
    fam = bloch_family()
    new_chart = Chart((("thetap", "angle"), ("phip", "angle")))
    J = np.array([[1.0, 0.3], [0.0, 1.0]])  # J[i, j] = d old_i / d new_j

    def to_old(q):
        tp, pp = q.values
        return fam.chart.point(tp + 0.3 * pp, pp)

    sheared = reparametrize(fam, new_chart, Box(fam.domain.lo, fam.domain.hi), to_old)
    q = new_chart.point(1.0, 0.4)
    lhs = fs_pullback(sheared, q).entries
    rhs = transform_metric(fs_pullback(fam, to_old(q)), J, new_chart).entries
    assert np.max(np.abs(lhs - rhs)) < 1e-6


def test_reparametrize_escaping_map_is_domain_error():
    fam = bloch_family()  # theta limited to [margin, pi - margin]
    new_chart = Chart((("s", "dimensionless"),))
    esc = reparametrize(
        fam,
        new_chart,
        Box.unbounded(1),
        lambda q: fam.chart.point(q.values[0], 0.0),
    )
    with pytest.raises(DomainError):
        esc(new_chart.point(-5.0))
    with pytest.raises(StructureError):
        bad = reparametrize(
            fam, new_chart, Box.unbounded(1), lambda q: new_chart.point(1.0)
        )
        bad(new_chart.point(1.0))  # map lands on the wrong chart
