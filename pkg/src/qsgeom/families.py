"""Parametrized families of states and their numerical derivatives.

A *family* is a smooth map from a coordinate chart into state space:

* :class:`RayFamily` -- parameters -> normalizable state (vector or grid);
  consumers that care only about the ray normalize before differencing.
* :class:`FieldFamily` -- parameters -> single complex amplitude, i.e. a
  wavefunction evaluated at the chart point itself (the chart coordinates
  play the role of spacetime coordinates).

Derivatives are central finite differences with selectable order (2 or 4).
A stencil that would leave the family's domain box raises ``DomainError``;
steps are never clipped silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DomainError, StructureError
from .hilbert import State, combine, inner, normalize

__all__ = [
    "Chart",
    "ParamPoint",
    "Box",
    "RayFamily",
    "FieldFamily",
    "Family",
    "Stencil",
    "shifted",
    "partial_field",
    "second_partial_field",
    "partial_ray",
    "covariant_partial_ray",
    "gauge_transform",
    "reparametrize",
]

UNITS = ("length", "time", "angle", "dimensionless")


@dataclass(frozen=True)
class Chart:
    """Ordered coordinate names with unit tags."""

    coords: tuple

    def __post_init__(self):
        coords = tuple((str(n), str(u)) for n, u in self.coords)
        if not coords:
            raise StructureError("chart needs at least one coordinate")
        names = [n for n, _ in coords]
        if len(set(names)) != len(names):
            raise StructureError(f"duplicate coordinate names in {names}")
        for _, u in coords:
            if u not in UNITS:
                raise StructureError(f"unknown unit tag {u!r}; expected one of {UNITS}")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.coords)

    @property
    def units(self) -> tuple:
        return tuple(u for _, u in self.coords)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise StructureError(f"chart has no coordinate {name!r}") from None

    def point(self, *args, **kwargs) -> "ParamPoint":
        """Build a point from positional values or name=value pairs."""
        if args and kwargs:
            raise StructureError("pass coordinates positionally or by name, not both")
        if args:
            if len(args) != self.dim:
                raise StructureError(f"expected {self.dim} coordinates, got {len(args)}")
            return ParamPoint(self, np.asarray(args, dtype=np.float64))
        vals = np.empty(self.dim)
        seen = set()
        for name, v in kwargs.items():
            vals[self.index(name)] = float(v)
            seen.add(name)
        missing = [n for n in self.names if n not in seen]
        if missing:
            raise StructureError(f"missing coordinate(s): {', '.join(missing)}")
        return ParamPoint(self, vals)


@dataclass(frozen=True)
class ParamPoint:
    chart: Chart
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.shape != (self.chart.dim,):
            raise StructureError(
                f"point has {v.size} values for a {self.chart.dim}-coordinate chart"
            )
        if not np.all(np.isfinite(v)):
            raise StructureError("point has non-finite coordinates")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __getitem__(self, name: str) -> float:
        return float(self.values[self.chart.index(name)])


@dataclass(frozen=True)
class Box:
    """Closed coordinate box; infinite bounds allowed."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.array(self.lo, dtype=np.float64)
        hi = np.array(self.hi, dtype=np.float64)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise StructureError("box bounds must be matching 1-D arrays")
        if np.any(np.isnan(lo)) or np.any(np.isnan(hi)) or np.any(lo >= hi):
            raise StructureError("box needs lo < hi in every coordinate")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def unbounded(cls, dim: int) -> "Box":
        return cls(np.full(dim, -np.inf), np.full(dim, np.inf))

    def contains(self, values: np.ndarray) -> bool:
        v = np.asarray(values, dtype=np.float64)
        return bool(np.all(v >= self.lo) and np.all(v <= self.hi))


@dataclass(frozen=True)
class RayFamily:
    chart: Chart
    eval_state: Callable[[ParamPoint], State]
    domain: Box

    def __post_init__(self):
        if self.domain.lo.size != self.chart.dim:
            raise StructureError("domain box dimension does not match chart")

    def __call__(self, p: ParamPoint) -> State:
        _check_point(self, p)
        return self.eval_state(p)


@dataclass(frozen=True)
class FieldFamily:
    chart: Chart
    amp: Callable[[ParamPoint], complex]
    domain: Box

    def __post_init__(self):
        if self.domain.lo.size != self.chart.dim:
            raise StructureError("domain box dimension does not match chart")

    def __call__(self, p: ParamPoint) -> complex:
        _check_point(self, p)
        return complex(self.amp(p))


Family = Union[RayFamily, FieldFamily]


def _check_point(fam: Family, p: ParamPoint):
    if p.chart != fam.chart:
        raise StructureError("point chart does not match family chart")
    if not fam.domain.contains(p.values):
        raise DomainError(
            f"point {tuple(p.values)} outside domain box of chart {fam.chart.names}"
        )


# ---------------------------------------------------------------------------
# Finite-difference stencils

# offsets and coefficients for f' * h and f'' * h^2
_FIRST = {
    2: ((-1, 1), (-0.5, 0.5)),
    4: ((-2, -1, 1, 2), (1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0)),
}
_SECOND = {
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
    4: (
        (-2, -1, 0, 1, 2),
        (-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0),
    ),
}


@dataclass(frozen=True)
class Stencil:
    """Central-difference rule: accuracy order and per-coordinate step.

    ``step`` may be a scalar (same step for all coordinates) or a vector in
    chart order.
    """

    order: int = 4
    step: Union[float, np.ndarray] = 1e-3

    def __post_init__(self):
        if self.order not in _FIRST:
            raise StructureError(f"unsupported stencil order {self.order}")
        step = np.atleast_1d(np.asarray(self.step, dtype=np.float64))
        if np.any(~np.isfinite(step)) or np.any(step <= 0):
            raise StructureError("stencil steps must be finite and positive")
        object.__setattr__(self, "step", step if step.size > 1 else float(step[0]))

    def steps(self, chart: Chart) -> np.ndarray:
        s = np.atleast_1d(np.asarray(self.step, dtype=np.float64))
        if s.size == 1:
            return np.full(chart.dim, float(s[0]))
        if s.size != chart.dim:
            raise StructureError(
                f"stencil has {s.size} steps for a {chart.dim}-coordinate chart"
            )
        return s.copy()

    @property
    def reach(self) -> int:
        """Largest offset (in steps) the stencil touches."""
        return max(abs(o) for o in _FIRST[self.order][0])


def shifted(p: ParamPoint, mu: int, delta: float) -> ParamPoint:
    v = p.values.copy()
    v[mu] += delta
    return ParamPoint(p.chart, v)


def _require_reach(fam: Family, p: ParamPoint, mu: int, h: float, reach: int):
    _check_point(fam, p)
    lo = p.values[mu] - reach * h
    hi = p.values[mu] + reach * h
    if lo < fam.domain.lo[mu] or hi > fam.domain.hi[mu]:
        name = fam.chart.names[mu]
        raise DomainError(
            f"stencil for d/d{name} at {name}={p.values[mu]:g} (half-width "
            f"{reach * h:g}) leaves the domain box "
            f"[{fam.domain.lo[mu]:g}, {fam.domain.hi[mu]:g}]"
        )


def partial_field(F: FieldFamily, p: ParamPoint, mu: int, s: Stencil = Stencil()) -> complex:
    """First partial derivative of the amplitude along coordinate ``mu``."""
    h = float(s.steps(F.chart)[mu])
    offsets, coeffs = _FIRST[s.order]
    _require_reach(F, p, mu, h, s.reach)
    acc = 0.0 + 0.0j
    for o, c in zip(offsets, coeffs):
        acc += c * complex(F.amp(shifted(p, mu, o * h)))
    return acc / h


def second_partial_field(
    F: FieldFamily, p: ParamPoint, mu: int, s: Stencil = Stencil()
) -> complex:
    """Second partial derivative of the amplitude along coordinate ``mu``."""
    h = float(s.steps(F.chart)[mu])
    offsets, coeffs = _SECOND[s.order]
    _require_reach(F, p, mu, h, s.reach)
    acc = 0.0 + 0.0j
    for o, c in zip(offsets, coeffs):
        acc += c * complex(F.amp(shifted(p, mu, o * h)))
    return acc / (h * h)


def partial_ray(R: RayFamily, p: ParamPoint, mu: int, s: Stencil = Stencil()) -> State:
    """Componentwise first derivative of the (raw, unnormalized) state map."""
    h = float(s.steps(R.chart)[mu])
    offsets, coeffs = _FIRST[s.order]
    _require_reach(R, p, mu, h, s.reach)
    states = [R.eval_state(shifted(p, mu, o * h)) for o in offsets]
    return combine([c / h for c in coeffs], states)


def covariant_partial_ray(
    R: RayFamily, p: ParamPoint, mu: int, s: Stencil = Stencil()
) -> State:
    """Ray-space covariant derivative along coordinate ``mu``.

    The state map is normalized before differencing, then the component along
    the state itself is projected out:

        D_mu psi = d_mu psi - psi <psi|d_mu psi>

    which transforms covariantly under psi -> exp(i alpha(p)) psi.
    """
    unit = RayFamily(R.chart, lambda q: normalize(R.eval_state(q)), R.domain)
    psi = unit.eval_state(p)
    d = partial_ray(unit, p, mu, s)
    return combine([1.0, -inner(psi, d)], [d, psi])


def gauge_transform(fam: Family, alpha: Callable[[ParamPoint], float]) -> Family:
    """Multiply the family by the position-dependent phase ``exp(i alpha(p))``."""
    if isinstance(fam, RayFamily):
        base = fam.eval_state
        return RayFamily(
            fam.chart,
            lambda p: combine([np.exp(1j * float(alpha(p)))], [base(p)]),
            fam.domain,
        )
    if isinstance(fam, FieldFamily):
        amp = fam.amp
        return FieldFamily(
            fam.chart,
            lambda p: complex(amp(p)) * np.exp(1j * float(alpha(p))),
            fam.domain,
        )
    raise StructureError(f"cannot gauge-transform {type(fam).__name__}")


def reparametrize(
    fam: Family,
    new_chart: Chart,
    new_domain: Box,
    to_old: Callable[[ParamPoint], ParamPoint],
) -> Family:
    """Compose the family with a coordinate map ``q -> old point``.

    The map must land inside the original domain; violations surface as
    ``DomainError`` when the returned family is evaluated.  Jacobians for
    tensor-transformation checks stay with the caller (see
    ``metrics.transform_metric``).
    """

    def pull(q: ParamPoint) -> ParamPoint:
        old = to_old(q)
        if old.chart != fam.chart:
            raise StructureError("coordinate map must produce points on the old chart")
        if not fam.domain.contains(old.values):
            raise DomainError(
                f"coordinate map sends {tuple(q.values)} outside the old domain"
            )
        return old

    if isinstance(fam, RayFamily):
        base = fam.eval_state
        return RayFamily(new_chart, lambda q: base(pull(q)), new_domain)
    if isinstance(fam, FieldFamily):
        amp = fam.amp
        return FieldFamily(new_chart, lambda q: amp(pull(q)), new_domain)
    raise StructureError(f"cannot reparametrize {type(fam).__name__}")
