"""Finite-level Schrödinger evolution and its state-space kinematics.

The central quantitative fact exercised here: along ``i hbar d psi/dt = H
psi`` the projective speed of the ray is set by the energy dispersion,

    hbar * ds/dt = 2 dE,      dE^2 = <H^2> - <H>^2,

so evolution time and ray-space arc length are interchangeable up to the
dispersion factor (``proper_time``).  Propagation is by full eigendecomposition
rather than a step integrator: at desk scale (N <= 64) that removes every
source of integrator error from the relation being tested.
"""

from __future__ import annotations

import io
import csv as _csv
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Union

import numpy as np

from .errors import DomainError, StructureError
from .families import Chart
from .geometry import GeodesicPath
from .hilbert import StateVector, inner, normalize
from .metrics import fs_distance_sq

__all__ = [
    "Hamiltonian",
    "EvolutionTrace",
    "StationaryRay",
    "BLOCH_CHART",
    "evolve",
    "energy_dispersion",
    "aa_speed_residual",
    "proper_time",
    "projected_trajectory",
    "trace_to_csv",
    "trace_from_csv",
    "hamiltonian_to_json",
    "hamiltonian_from_json",
]

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class Hamiltonian:
    """Hermitian operator plus the action constant that scales its clock."""

    matrix: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise StructureError(f"Hamiltonian must be square with N >= 2, got {m.shape}")
        scale = max(1.0, float(np.linalg.norm(m)))
        if float(np.linalg.norm(m - m.conj().T)) > HERMITICITY_TOL * scale:
            raise StructureError("Hamiltonian is not Hermitian within 1e-12 of its magnitude")
        if not (np.isfinite(self.hbar) and self.hbar > 0):
            raise StructureError("hbar must be positive and finite")
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def _eig(self):
        # immutable inputs make this cache externally invisible
        vals, vecs = np.linalg.eigh(self.matrix)
        return vals, vecs

    def apply(self, psi: StateVector) -> StateVector:
        if psi.dim != self.dim:
            raise StructureError(f"state dimension {psi.dim} != operator dimension {self.dim}")
        return StateVector(self.matrix @ psi.amplitudes)


@dataclass(frozen=True)
class EvolutionTrace:
    times: np.ndarray
    states: tuple

    def __post_init__(self):
        t = np.array(self.times, dtype=np.float64)
        states = tuple(self.states)
        if t.ndim != 1 or t.size != len(states) or t.size < 1:
            raise StructureError("trace needs matching 1-D times and states")
        dim = states[0].dim
        if any(s.dim != dim for s in states):
            raise StructureError("trace states must share one dimension")
        t.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", states)

    @property
    def n_samples(self) -> int:
        return self.times.size

    @property
    def dim(self) -> int:
        return self.states[0].dim


def evolve(H: Hamiltonian, psi0: StateVector, dt: float, steps: int) -> EvolutionTrace:
    """Unitary propagation ``psi(k dt) = exp(-i H k dt / hbar) psi0``.

    Spectral form: one eigendecomposition, then exact phases per sample; norm
    drift stays at rounding level regardless of step count.
    """
    if dt <= 0 or steps < 1:
        raise StructureError("need dt > 0 and steps >= 1")
    psi0 = normalize(psi0)
    vals, vecs = H._eig
    coeff = vecs.conj().T @ psi0.amplitudes
    times = dt * np.arange(steps + 1)
    phases = np.exp(-1j * np.outer(times, vals) / H.hbar)  # (T, N)
    amps = (phases * coeff) @ vecs.T  # row k equals vecs @ (phases[k] * coeff)
    states = tuple(StateVector(a) for a in amps)
    return EvolutionTrace(times, states)


def energy_dispersion(H: Hamiltonian, psi: StateVector) -> float:
    """Standard deviation of the energy, ``sqrt(<H^2> - <H>^2)``."""
    psi = normalize(psi)
    hpsi = H.apply(psi)
    mean = inner(psi, hpsi).real
    second = inner(hpsi, hpsi).real  # <psi|H^2|psi> for Hermitian H
    return float(np.sqrt(max(second - mean * mean, 0.0)))


def aa_speed_residual(H: Hamiltonian, psi: StateVector, dt: float) -> float:
    """Mismatch between measured ray speed and ``2 dE / hbar`` at step ``dt``.

    Returns ``|sqrt(fs_distance_sq(psi, psi(dt))) / dt - 2 dE / hbar|``;
    O(dt^2) for exact evolution.  ``dt`` must keep the step distance below
    0.1 so the finite-step chord still tracks the speed.
    """
    if dt <= 0:
        raise StructureError("dt must be positive")
    psi = normalize(psi)
    tr = evolve(H, psi, dt, 1)
    ds = float(np.sqrt(fs_distance_sq(tr.states[0], tr.states[1])))
    if ds >= 0.1:
        raise DomainError(f"step distance {ds:.3g} >= 0.1; reduce dt")
    return float(abs(ds / dt - 2.0 * energy_dispersion(H, psi) / H.hbar))


def proper_time(dt: float, dE: float, hbar: float) -> float:
    """Arc-length-per-time relation: ``2 dE dt / hbar``."""
    if hbar <= 0:
        raise DomainError("hbar must be positive")
    return 2.0 * float(dE) * float(dt) / float(hbar)


BLOCH_CHART = Chart((("theta", "angle"), ("phi", "angle")))

STATIONARY_MEAN_STEP = 1e-12


@dataclass(frozen=True)
class StationaryRay:
    """Projection outcome for a trace that never leaves its initial ray."""

    theta: float
    phi: float


def _bloch_angles(psi: StateVector):
    a, b = psi.amplitudes
    theta = 2.0 * np.arctan2(abs(b), abs(a))
    phi = float(np.angle(b) - np.angle(a))
    return float(theta), phi


def projected_trajectory(
    trace: EvolutionTrace,
) -> Union[GeodesicPath, StationaryRay]:
    """Arc-length path of a 2-level trace on the (theta, phi) chart.

    Arc increments come from the projective distance between consecutive
    states; velocities from fourth-order differences of the chart
    coordinates, which costs the two outermost samples at each end.  A trace
    that stays on one ray has no arc-length parametrization and is reported
    as :class:`StationaryRay`.  Trajectories running into a chart pole
    (vanishing sin(theta)) are a domain error: phi is meaningless there.
    """
    if trace.dim != 2:
        raise StructureError("Bloch projection needs 2-level states")
    n = trace.n_samples
    states = [normalize(s) for s in trace.states]
    chords = np.array(
        [np.sqrt(fs_distance_sq(states[k], states[k + 1])) for k in range(n - 1)]
    )
    if n < 2 or float(np.mean(chords)) < STATIONARY_MEAN_STEP:
        th, ph = _bloch_angles(states[0])
        return StationaryRay(th, ph)
    if n < 7:
        raise StructureError("need at least 7 samples to differentiate the path")
    angles = np.array([_bloch_angles(s) for s in states])
    theta = angles[:, 0]
    if np.any(np.sin(theta) < 1e-6):
        raise DomainError("trajectory reaches a chart pole (sin(theta) ~ 0)")
    phi = np.unwrap(angles[:, 1])
    s = np.concatenate(([0.0], np.cumsum(chords)))
    ds = float(np.mean(chords))
    if float(np.max(np.abs(chords - ds))) > 1e-6 * ds:
        raise StructureError("arc steps are not uniform; cannot differentiate cleanly")
    xs = np.column_stack([theta, phi])
    # five-point first derivative on the uniform arc grid
    us = (
        xs[:-4] - 8.0 * xs[1:-3] + 8.0 * xs[3:-1] - xs[4:]
    ) / (12.0 * ds)
    return GeodesicPath(BLOCH_CHART, s[2:-2], xs[2:-2], us)


# ---------------------------------------------------------------------------
# Serialization


def trace_to_csv(trace: EvolutionTrace, fmt: Callable[[float], str] = repr) -> str:
    """Rows ``t, re_0, im_0, ..., re_{N-1}, im_{N-1}``."""
    buf = io.StringIO()
    w = _csv.writer(buf, lineterminator="\n")
    header = ["t"]
    for j in range(trace.dim):
        header += [f"re_{j}", f"im_{j}"]
    w.writerow(header)
    for k in range(trace.n_samples):
        amps = trace.states[k].amplitudes
        row = [fmt(float(trace.times[k]))]
        for j in range(trace.dim):
            row += [fmt(float(amps[j].real)), fmt(float(amps[j].imag))]
        w.writerow(row)
    return buf.getvalue()


def trace_from_csv(text: str) -> EvolutionTrace:
    rows = list(_csv.reader(io.StringIO(text)))
    if not rows or rows[0][0] != "t":
        raise StructureError("trace CSV must start with a 't' header row")
    ncols = len(rows[0])
    if ncols < 5 or (ncols - 1) % 2:
        raise StructureError("trace CSV needs re/im column pairs")
    dim = (ncols - 1) // 2
    times = []
    states = []
    for r in rows[1:]:
        times.append(float(r[0]))
        vals = np.array([float(v) for v in r[1:]], dtype=np.float64)
        states.append(StateVector(vals[0::2] + 1j * vals[1::2]))
    return EvolutionTrace(np.array(times), tuple(states))


def hamiltonian_to_json(H: Hamiltonian) -> dict:
    return {
        "hbar": H.hbar,
        "re": H.matrix.real.tolist(),
        "im": H.matrix.imag.tolist(),
    }


def hamiltonian_from_json(d: dict) -> Hamiltonian:
    try:
        re = np.asarray(d["re"], dtype=np.float64)
        im = np.asarray(d["im"], dtype=np.float64)
    except KeyError as exc:
        raise StructureError(f"Hamiltonian payload missing key {exc}") from exc
    if re.shape != im.shape:
        raise StructureError("Hamiltonian payload: re/im shapes disagree")
    return Hamiltonian(re + 1j * im, float(d.get("hbar", 1.0)))
