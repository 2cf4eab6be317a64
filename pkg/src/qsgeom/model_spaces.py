"""Reference families and metric fields: Bloch sphere, CP(N) charts, flat space.

These are the known-geometry fixtures everything else is checked against.
The Bloch parametrization

    psi(theta, phi) = (cos(theta/2), e^{i phi} sin(theta/2))

pulls the projective metric back to one quarter of the round unit sphere;
the affine CP(N) chart

    psi(x_1, y_1, ..., x_N, y_N) = (1, x_1 + i y_1, ..., x_N + i y_N)

(unnormalized; consumers normalize) covers everything except the hyperplane
at infinity and is the workhorse for the Einstein-property checks.
"""

from __future__ import annotations

import numpy as np

from .errors import StructureError
from .families import Box, Chart, RayFamily, Stencil
from .geometry import MetricField, metric_field_from_ray, scaled_field
from .hilbert import StateVector
from .metrics import MetricMatrix

__all__ = [
    "BLOCH_DOMAIN_MARGIN",
    "bloch_family",
    "cpn_affine_family",
    "sphere_field",
    "flat_field",
    "cp1_field",
    "cp1_field_scaled",
    "cp2_field",
    "named_space",
    "SPACE_NAMES",
]

# keep stencils clear of the coordinate singularities at theta = 0, pi
BLOCH_DOMAIN_MARGIN = 0.05

_BLOCH_CHART = Chart((("theta", "angle"), ("phi", "angle")))


def bloch_family() -> RayFamily:
    def ev(p):
        th, ph = p.values
        return StateVector([np.cos(th / 2.0), np.exp(1j * ph) * np.sin(th / 2.0)])

    dom = Box(
        np.array([BLOCH_DOMAIN_MARGIN, -2.0 * np.pi]),
        np.array([np.pi - BLOCH_DOMAIN_MARGIN, 4.0 * np.pi]),
    )
    return RayFamily(_BLOCH_CHART, ev, dom)


def cpn_affine_family(n: int, half_width: float = 3.0) -> RayFamily:
    if n < 1:
        raise StructureError("CP(n) needs n >= 1")
    names = []
    for k in range(1, n + 1):
        names += [(f"x{k}", "dimensionless"), (f"y{k}", "dimensionless")]
    chart = Chart(tuple(names))

    def ev(p):
        v = p.values
        amps = np.empty(n + 1, dtype=np.complex128)
        amps[0] = 1.0
        amps[1:] = v[0::2] + 1j * v[1::2]
        return StateVector(amps)

    dom = Box(np.full(2 * n, -half_width), np.full(2 * n, half_width))
    return RayFamily(chart, ev, dom)


def sphere_field() -> MetricField:
    """Round unit 2-sphere, ``diag(1, sin^2 theta)`` on the Bloch chart."""

    def at(p):
        th = p.values[0]
        return MetricMatrix(_BLOCH_CHART, np.diag([1.0, np.sin(th) ** 2]))

    dom = Box(
        np.array([BLOCH_DOMAIN_MARGIN, -2.0 * np.pi]),
        np.array([np.pi - BLOCH_DOMAIN_MARGIN, 4.0 * np.pi]),
    )
    return MetricField(_BLOCH_CHART, at, dom)


def flat_field(dim: int = 2) -> MetricField:
    names = tuple((f"x{k}", "dimensionless") for k in range(dim))
    chart = Chart(names)
    eye = np.eye(dim)

    def at(p):
        return MetricMatrix(chart, eye)

    return MetricField(chart, at, Box.unbounded(dim))


def cp1_field(s: Stencil = Stencil()) -> MetricField:
    """Projective pullback on the Bloch chart (quarter of the unit sphere)."""
    return metric_field_from_ray(bloch_family(), s)


def cp1_field_scaled(s: Stencil = Stencil()) -> MetricField:
    return scaled_field(cp1_field(s), 4.0)


def cp2_field(s: Stencil = Stencil()) -> MetricField:
    return metric_field_from_ray(cpn_affine_family(2), s)


SPACE_NAMES = ("flat2", "flat3", "sphere", "cp1", "cp2")


def named_space(name: str) -> MetricField:
    if name == "flat2":
        return flat_field(2)
    if name == "flat3":
        return flat_field(3)
    if name == "sphere":
        return sphere_field()
    if name == "cp1":
        return cp1_field()
    if name == "cp2":
        return cp2_field()
    raise StructureError(f"unknown space {name!r}; choose from {SPACE_NAMES}")
