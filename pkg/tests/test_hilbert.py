import json

import numpy as np
import pytest

from qsgeom.errors import DomainError, StructureError
from qsgeom.hilbert import (
    GridState,
    StateVector,
    apply_phase,
    combine,
    gauss_legendre_axis,
    inner,
    norm,
    normalize,
    spherical_weights,
    state_dumps,
    state_from_json,
    state_loads,
    state_to_json,
    tensor_weights,
    trapezoid_weights,
    uniform_axis,
)

from conftest import random_state


# ---------------------------------------------------------------------------
# construction


def test_state_vector_basics():
    s = StateVector([1.0, 2j])
    assert s.dim == 2
    assert s.amplitudes.dtype == np.complex128
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0.0  # frozen


def test_state_vector_rejects_bad_shapes():
    with pytest.raises(StructureError):
        StateVector([1.0])  # dimension 1 is not a multi-level state
    with pytest.raises(StructureError):
        StateVector([[1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(StructureError):
        StateVector([1.0, np.nan])
    with pytest.raises(StructureError):
        StateVector([1.0, np.inf * 1j])


def _grid_1d(n=11, lo=0.0, hi=1.0, values=None):
    axis = uniform_axis(lo, hi, n)
    w = trapezoid_weights(axis)
    if values is None:
        values = np.ones(n)
    return GridState((axis,), w, values)


def test_grid_state_shape_checks():
    axis = uniform_axis(0.0, 1.0, 5)
    w = trapezoid_weights(axis)
    with pytest.raises(StructureError):
        GridState((axis,), w, np.ones(4))
    with pytest.raises(StructureError):
        GridState((axis,), w[:-1], np.ones(5))
    with pytest.raises(StructureError):
        GridState((axis,), -w, np.ones(5))  # weights must be positive
    with pytest.raises(StructureError):
        GridState((), np.ones(1), np.ones(1))


# ---------------------------------------------------------------------------
# inner-product algebra


def test_inner_is_conjugate_linear_in_first_slot():
    a = StateVector([1.0, 1j])
    b = StateVector([2.0, 0.0])
    c = 0.3 - 0.7j
    assert inner(combine([c], [a]), b) == pytest.approx(np.conj(c) * inner(a, b))
    assert inner(a, combine([c], [b])) == pytest.approx(c * inner(a, b))


def test_inner_conjugate_symmetry_exact(rng):
    for _ in range(20):
        a = random_state(rng, 5)
        b = random_state(rng, 5)
        assert inner(a, b) == np.conj(inner(b, a))


def test_cauchy_schwarz(rng):
    for _ in range(20):
        a = random_state(rng, 6)
        b = random_state(rng, 6)
        lhs = abs(inner(a, b)) ** 2
        assert lhs <= inner(a, a).real * inner(b, b).real + 1e-12


def test_inner_mismatch_raises():
    with pytest.raises(StructureError):
        inner(StateVector([1, 0]), StateVector([1, 0, 0]))
    g1 = _grid_1d(n=11)
    g2 = _grid_1d(n=13)
    with pytest.raises(StructureError):
        inner(g1, g2)
    with pytest.raises(StructureError):
        inner(g1, StateVector([1, 0]))


def test_norm_and_normalize():
    s = StateVector([3.0, 4.0])
    assert norm(s) == pytest.approx(5.0)
    u = normalize(s)
    assert norm(u) == pytest.approx(1.0, abs=1e-15)
    # same ray: amplitudes proportional
    assert np.allclose(u.amplitudes, s.amplitudes / 5.0)


def test_normalize_zero_state_is_domain_error():
    with pytest.raises(DomainError):
        normalize(StateVector([0.0, 0.0]))
    with pytest.raises(DomainError):
        normalize(_grid_1d(values=np.zeros(11)))


def test_apply_phase():
    s = StateVector([1.0, 0.0])
    assert np.allclose(apply_phase(s, 0.0).amplitudes, s.amplitudes)
    flipped = apply_phase(s, np.pi)
    assert np.allclose(flipped.amplitudes, [-1.0, 0.0], atol=1e-15)
    rng = np.random.default_rng(7)
    for alpha in rng.uniform(-10, 10, size=5):
        t = apply_phase(s, alpha)
        assert abs(inner(s, t)) == pytest.approx(abs(inner(s, s)), abs=1e-14)


def test_combine_validation():
    a = StateVector([1, 0])
    with pytest.raises(StructureError):
        combine([1.0], [])
    with pytest.raises(StructureError):
        combine([1.0, 2.0], [a])
    with pytest.raises(StructureError):
        combine([1.0, 1.0], [a, StateVector([1, 0, 0])])
    with pytest.raises(StructureError):
        combine([1.0, 1.0], [a, _grid_1d()])


# ---------------------------------------------------------------------------
# quadrature


def test_trapezoid_weights_integrate_linear_exactly():
    axis = np.array([0.0, 0.3, 0.5, 1.0])  # nonuniform on purpose
    w = trapezoid_weights(axis)
    assert w.sum() == pytest.approx(1.0)
    assert np.dot(w, axis) == pytest.approx(0.5, abs=1e-15)  # trapezoid is exact on x


def test_trapezoid_weights_reject_bad_axes():
    with pytest.raises(StructureError):
        trapezoid_weights(np.array([0.0, 0.0, 1.0]))
    with pytest.raises(StructureError):
        trapezoid_weights(np.array([1.0]))


def _poly_inner_error(n):
    # <x|x^2> over [0, 1] is exactly 1/4; trapezoid error is O(h^2)
    axis = uniform_axis(0.0, 1.0, n)
    w = trapezoid_weights(axis)
    a = GridState((axis,), w, axis.astype(complex))
    b = GridState((axis,), w, (axis**2).astype(complex))
    return abs(inner(a, b).real - 0.25)


def test_quadrature_convergence_factor_is_four():
    # doubling the resolution divides the error by the documented factor 4
    # (second-order rule); measured over three doublings
    errs = [_poly_inner_error(n) for n in (21, 41, 81, 161)]
    for coarse, fine in zip(errs, errs[1:]):
        assert coarse / fine == pytest.approx(4.0, rel=0.1)


def test_gauss_legendre_axis_is_exact_on_polynomials():
    nodes, w = gauss_legendre_axis(4, 0.0, 1.0)
    # degree 7 is within the 2n-1 guarantee
    assert np.dot(w, nodes**7) == pytest.approx(1.0 / 8.0, abs=1e-15)
    with pytest.raises(StructureError):
        gauss_legendre_axis(1, 0.0, 1.0)


def test_gaussian_overlap_closed_form():
    # psi_c ~ exp(-(x-c)^2 / (4 sigma^2)) => <psi_1|psi_2> = exp(-d^2/(8 sigma^2))
    sigma, c1, c2 = 1.0, -0.6, 0.6
    axis = uniform_axis(-10.0, 10.0, 201)
    w = trapezoid_weights(axis)

    def g(c):
        return normalize(GridState((axis,), w, np.exp(-((axis - c) ** 2) / (4 * sigma**2))))

    d = abs(c1 - c2)
    expected = np.exp(-(d**2) / (8 * sigma**2))
    assert inner(g(c1), g(c2)).real == pytest.approx(expected, abs=1e-10)


def test_spherical_weights_norm():
    # |e^{-r}|^2 over r^2 dr sin(theta) dtheta = (1/4) * 2 = 1/2
    r = uniform_axis(0.0, 25.0, 501)
    th = uniform_axis(0.01, np.pi - 0.01, 161)
    w = spherical_weights(r, th)
    vals = np.exp(-r)[:, None] * np.ones_like(th)[None, :]
    s = GridState((r, th), w, vals)
    assert inner(s, s).real == pytest.approx(0.5, rel=2e-3)
    with pytest.raises(DomainError):
        spherical_weights(r, uniform_axis(0.0, np.pi, 11))  # sin(0) = 0


def test_tensor_weights_layout():
    w = tensor_weights(np.array([1.0, 2.0]), np.array([3.0, 4.0, 5.0]))
    assert w.shape == (2, 3)
    assert w[1, 2] == pytest.approx(10.0)


# ---------------------------------------------------------------------------
# serialization


def test_state_vector_json_roundtrip_bit_exact(rng):
    s = random_state(rng, 7)
    t = state_loads(state_dumps(s))
    assert isinstance(t, StateVector)
    assert np.array_equal(s.amplitudes, t.amplitudes)


def test_grid_state_json_roundtrip_bit_exact():
    axis = uniform_axis(-2.0, 2.0, 9)
    w = trapezoid_weights(axis)
    vals = np.exp(-(axis**2)) * (1 + 0.5j)
    s = GridState((axis,), w, vals)
    t = state_loads(state_dumps(s))
    assert isinstance(t, GridState)
    assert np.array_equal(s.values, t.values)
    assert np.array_equal(s.weights, t.weights)
    assert all(np.array_equal(a, b) for a, b in zip(s.axes, t.axes))


def test_grid_state_json_row_major_2d():
    r = uniform_axis(0.0, 1.0, 3)
    th = uniform_axis(0.5, 2.5, 2)
    w = tensor_weights(trapezoid_weights(r), trapezoid_weights(th))
    vals = np.arange(6, dtype=float).reshape(3, 2)
    s = GridState((r, th), w, vals)
    d = state_to_json(s)
    assert d["re"] == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]  # row-major flattening
    t = state_from_json(json.loads(json.dumps(d)))
    assert np.array_equal(t.values, s.values)


def test_state_json_validation():
    with pytest.raises(StructureError):
        state_from_json({"re": [1, 0]})  # no im
    with pytest.raises(StructureError):
        state_from_json({"dim": 3, "re": [1, 0], "im": [0, 0]})
    with pytest.raises(StructureError):
        state_from_json({"re": [1, 0], "im": [0, 0]})  # neither dim nor axes
