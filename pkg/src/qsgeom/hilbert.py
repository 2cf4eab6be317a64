"""States and inner products.

Two concrete state representations share one algebra:

* :class:`StateVector` -- a finite-dimensional complex vector, inner product
  ``sum(conj(a_i) b_i)``.
* :class:`GridState` -- complex samples of a wavefunction on a tensor-product
  grid, inner product ``sum(w * conj(a) * b)`` with strictly positive
  quadrature weights.  Curvilinear volume factors (e.g. ``r^2 sin(theta)``)
  are folded into the weights, never into the samples.

All inner products are conjugate-linear in the first argument.  JSON
serialization round-trips every finite binary64 payload bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, StructureError

__all__ = [
    "StateVector",
    "GridState",
    "State",
    "inner",
    "norm",
    "normalize",
    "apply_phase",
    "combine",
    "uniform_axis",
    "trapezoid_weights",
    "gauss_legendre_axis",
    "tensor_weights",
    "spherical_weights",
    "state_to_json",
    "state_from_json",
    "state_dumps",
    "state_loads",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class StateVector:
    """Complex amplitudes of a finite-level state (dimension >= 2)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size < 2:
            raise StructureError(
                f"state vector must be 1-D with dimension >= 2, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise StructureError("state vector has non-finite amplitudes")
        object.__setattr__(self, "amplitudes", _freeze(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class GridState:
    """Wavefunction samples on a tensor-product grid.

    ``axes`` are the 1-D coordinate arrays; ``values`` has shape
    ``(len(axes[0]), ..., len(axes[-1]))`` in row-major order and ``weights``
    matches it elementwise.
    """

    axes: tuple
    weights: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        axes = tuple(_freeze(np.array(a, dtype=np.float64)) for a in self.axes)
        if not axes:
            raise StructureError("grid state needs at least one axis")
        for a in axes:
            if a.ndim != 1 or a.size < 2:
                raise StructureError("each grid axis must be 1-D with >= 2 samples")
            if not np.all(np.isfinite(a)):
                raise StructureError("grid axis has non-finite coordinates")
        shape = tuple(a.size for a in axes)
        values = np.array(self.values, dtype=np.complex128)
        weights = np.array(self.weights, dtype=np.float64)
        if values.shape != shape:
            raise StructureError(
                f"values shape {values.shape} does not match axes shape {shape}"
            )
        if weights.shape != shape:
            raise StructureError(
                f"weights shape {weights.shape} does not match axes shape {shape}"
            )
        if not np.all(np.isfinite(values.view(np.float64))):
            raise StructureError("grid state has non-finite values")
        if not (np.all(np.isfinite(weights)) and np.all(weights > 0)):
            raise StructureError("grid weights must be finite and strictly positive")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "values", _freeze(values))
        object.__setattr__(self, "weights", _freeze(weights))

    @property
    def npoints(self) -> int:
        return self.values.size


State = Union[StateVector, GridState]


def _same_grid(a: GridState, b: GridState) -> bool:
    if len(a.axes) != len(b.axes):
        return False
    return all(np.array_equal(x, y) for x, y in zip(a.axes, b.axes)) and np.array_equal(
        a.weights, b.weights
    )


def inner(a: State, b: State) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        if a.dim != b.dim:
            raise StructureError(f"dimension mismatch: {a.dim} vs {b.dim}")
        return complex(np.vdot(a.amplitudes, b.amplitudes))
    if isinstance(a, GridState) and isinstance(b, GridState):
        if not _same_grid(a, b):
            raise StructureError("grid states live on different grids")
        return complex(np.sum(a.weights * np.conj(a.values) * b.values))
    raise StructureError(
        f"cannot pair {type(a).__name__} with {type(b).__name__}"
    )


def norm(s: State) -> float:
    return float(np.sqrt(max(inner(s, s).real, 0.0)))


def normalize(s: State) -> State:
    """Unit-norm representative of the same ray.

    Raises :class:`DomainError` for the zero state (no ray to represent).
    """
    n = norm(s)
    if not np.isfinite(n) or n < 1e-150:
        raise DomainError("cannot normalize a (numerically) zero state")
    return combine([1.0 / n], [s])


def apply_phase(s: State, alpha: float) -> State:
    """Multiply by the global phase ``exp(i alpha)``; same ray, new vector."""
    return combine([np.exp(1j * float(alpha))], [s])


def combine(coeffs: Sequence[complex], states: Sequence[State]) -> State:
    """Linear combination ``sum(c_k s_k)`` of structurally identical states."""
    if len(coeffs) != len(states) or not states:
        raise StructureError("combine needs matching, non-empty coeffs and states")
    head = states[0]
    if isinstance(head, StateVector):
        acc = np.zeros(head.dim, dtype=np.complex128)
        for c, s in zip(coeffs, states):
            if not isinstance(s, StateVector) or s.dim != head.dim:
                raise StructureError("combine: mixed or mismatched state vectors")
            acc += complex(c) * s.amplitudes
        return StateVector(acc)
    acc = np.zeros(head.values.shape, dtype=np.complex128)
    for c, s in zip(coeffs, states):
        if not isinstance(s, GridState) or not _same_grid(head, s):
            raise StructureError("combine: grid states live on different grids")
        acc += complex(c) * s.values
    return GridState(head.axes, head.weights, acc)


# ---------------------------------------------------------------------------
# Grid construction


def uniform_axis(lo: float, hi: float, n: int) -> np.ndarray:
    if n < 2 or not hi > lo:
        raise StructureError("uniform_axis needs n >= 2 and hi > lo")
    return np.linspace(lo, hi, n)


def trapezoid_weights(axis: np.ndarray) -> np.ndarray:
    """Trapezoid-rule weights for an increasing 1-D axis (nonuniform OK)."""
    x = np.asarray(axis, dtype=np.float64)
    if x.ndim != 1 or x.size < 2 or np.any(np.diff(x) <= 0):
        raise StructureError("trapezoid_weights needs a strictly increasing 1-D axis")
    w = np.empty_like(x)
    w[1:-1] = (x[2:] - x[:-2]) / 2.0
    w[0] = (x[1] - x[0]) / 2.0
    w[-1] = (x[-1] - x[-2]) / 2.0
    return w


def gauss_legendre_axis(n: int, lo: float, hi: float):
    """Gauss-Legendre nodes and weights mapped to ``[lo, hi]``.

    Exact for polynomial integrands up to degree ``2n - 1``; useful when the
    trapezoid rule's algebraic convergence is the bottleneck.
    """
    if n < 2 or not hi > lo:
        raise StructureError("gauss_legendre_axis needs n >= 2 and hi > lo")
    nodes, weights = np.polynomial.legendre.leggauss(n)
    half = (hi - lo) / 2.0
    return lo + half * (nodes + 1.0), half * weights


def tensor_weights(*axis_weights: np.ndarray) -> np.ndarray:
    """Outer product of per-axis weight vectors (row-major layout)."""
    if not axis_weights:
        raise StructureError("tensor_weights needs at least one axis")
    out = np.asarray(axis_weights[0], dtype=np.float64)
    for w in axis_weights[1:]:
        out = np.multiply.outer(out, np.asarray(w, dtype=np.float64))
    return out


def spherical_weights(r_axis, theta_axis, phi_axis=None) -> np.ndarray:
    """Quadrature weights with the spherical volume factor ``r^2 sin(theta)``.

    Trapezoid weights per axis; the Jacobian is applied to the weights so the
    sampled wavefunction itself never carries volume factors.
    """
    wr = trapezoid_weights(r_axis) * np.asarray(r_axis, dtype=np.float64) ** 2
    st = np.sin(np.asarray(theta_axis, dtype=np.float64))
    if np.any(st <= 0):
        raise DomainError("theta axis must stay strictly inside (0, pi)")
    wt = trapezoid_weights(theta_axis) * st
    if phi_axis is None:
        return tensor_weights(wr, wt)
    return tensor_weights(wr, wt, trapezoid_weights(phi_axis))


# ---------------------------------------------------------------------------
# JSON serialization
#
# Plain lists of binary64 values; Python's float repr is shortest-round-trip,
# so dump -> load reproduces every finite payload bit-exactly.


def state_to_json(s: State) -> dict:
    if isinstance(s, StateVector):
        return {
            "dim": s.dim,
            "re": s.amplitudes.real.tolist(),
            "im": s.amplitudes.imag.tolist(),
        }
    if isinstance(s, GridState):
        return {
            "axes": [a.tolist() for a in s.axes],
            "weights": s.weights.ravel().tolist(),
            "re": s.values.real.ravel().tolist(),
            "im": s.values.imag.ravel().tolist(),
        }
    raise StructureError(f"cannot serialize {type(s).__name__}")


def state_from_json(d: dict) -> State:
    try:
        re = np.asarray(d["re"], dtype=np.float64)
        im = np.asarray(d["im"], dtype=np.float64)
    except KeyError as exc:
        raise StructureError(f"state payload missing key {exc}") from exc
    if "dim" in d:
        if int(d["dim"]) != re.size or re.size != im.size:
            raise StructureError("state payload: dim does not match re/im length")
        return StateVector(re + 1j * im)
    if "axes" in d:
        axes = [np.asarray(a, dtype=np.float64) for a in d["axes"]]
        shape = tuple(a.size for a in axes)
        weights = np.asarray(d["weights"], dtype=np.float64)
        if re.size != im.size or re.size != weights.size:
            raise StructureError("state payload: re/im/weights lengths disagree")
        return GridState(
            tuple(axes),
            weights.reshape(shape),
            (re + 1j * im).reshape(shape),
        )
    raise StructureError("state payload needs either 'dim' or 'axes'")


def state_dumps(s: State) -> str:
    return json.dumps(state_to_json(s), separators=(",", ":"))


def state_loads(text: str) -> State:
    return state_from_json(json.loads(text))
