"""Kahler potentials on C^2 and finite-difference curvature checks.

A potential is sampled pointwise; the Hermitian metric g_ij = d2 Phi /
dz_i dzbar_j comes from central differences in the four real
coordinates, and the scalar curvature from a second, nested stencil
applied to log det g.  Everything is evaluated at isolated sample
points with a radius-scaled step h = h0 * (1 + |z|); there is no grid.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable, Optional

import numpy as np

from . import _engine
from .errors import DegenerateMetricError, InsufficientDecadeError

# deviations below this are indistinguishable from stencil rounding
NO_SIGNAL_THRESHOLD = 1e-12


@dataclasses.dataclass(frozen=True)
class Potential:
    """A real-valued Kahler potential on C^2 minus the origin.

    Built-in families are evaluated by the compiled engine; custom
    callables always run on the plain python path.  Use the module
    constructors (flat, eguchi_hanson, burns, custom_radial,
    custom_general) rather than instantiating directly.
    """

    name: str
    family: Optional[int]
    parameter: float
    fn: Optional[Callable] = None

    def __call__(self, z1, z2):
        z1, z2 = complex(z1), complex(z2)
        ev = _evaluator(self)
        return ev(z1.real, z1.imag, z2.real, z2.imag)


def flat() -> Potential:
    """Euclidean potential |z1|^2 + |z2|^2."""
    return Potential(name="flat", family=_engine.FLAT, parameter=0.0)


def eguchi_hanson(a: float = 1.0) -> Potential:
    """Ricci-flat ALE potential with length-scale parameter a > 0."""
    if not a > 0:
        raise ValueError(f"eguchi-hanson parameter a must be positive, got {a}")
    return Potential(name="eguchi-hanson", family=_engine.EGUCHI_HANSON, parameter=float(a))


def burns(m: float = 1.0) -> Potential:
    """Scalar-flat potential |z|^2 + m log |z|^2 with mass parameter m > 0."""
    if not m > 0:
        raise ValueError(f"burns parameter m must be positive, got {m}")
    return Potential(name="burns", family=_engine.BURNS, parameter=float(m))


def custom_radial(fn: Callable[[float], float]) -> Potential:
    """Potential given as a function of u = |z|^2."""

    def adapter(family, par, x0, x1, x2, x3):
        return float(fn(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3))

    return Potential(name="custom-radial", family=None, parameter=0.0, fn=adapter)


def custom_general(fn: Callable[[complex, complex], float]) -> Potential:
    """Potential given as a function of (z1, z2)."""

    def adapter(family, par, x0, x1, x2, x3):
        return float(fn(complex(x0, x1), complex(x2, x3)))

    return Potential(name="custom-general", family=None, parameter=0.0, fn=adapter)


def _evaluator(potential: Potential) -> Callable[[float, float, float, float], float]:
    """Plain python (x0, x1, x2, x3) -> Phi, whatever the family."""
    if potential.fn is None:
        family, par = potential.family, potential.parameter

        def ev(x0, x1, x2, x3):
            return _engine.builtin_potential(family, par, x0, x1, x2, x3)

        return ev
    fn = potential.fn

    def ev(x0, x1, x2, x3):
        return fn(0, 0.0, x0, x1, x2, x3)

    return ev


def _relative_evaluator(potential: Potential):
    """(x, d) -> Phi(x+d) - Phi(x), stable for the built-in families."""
    if potential.fn is None:
        family, par = potential.family, potential.parameter

        def rel(x0, x1, x2, x3, d0, d1, d2, d3):
            return _engine.builtin_potential_rel(family, par, x0, x1, x2, x3, d0, d1, d2, d3)

        return rel
    ev = _evaluator(potential)

    def rel(x0, x1, x2, x3, d0, d1, d2, d3):
        return ev(x0 + d0, x1 + d1, x2 + d2, x3 + d3) - ev(x0, x1, x2, x3)

    return rel


def _engine_args(potential: Potential, backend=None):
    """(engine, family code, parameter) for dispatching a potential."""
    if potential.fn is None:
        return _engine.builtin_engine(backend), potential.family, potential.parameter
    return _engine.custom_engine(potential.fn), 0, 0.0


def _coords(z) -> tuple[float, float, float, float]:
    """Accept (z1, z2) complex pairs or 4 real coordinates."""
    arr = np.asarray(z)
    if arr.shape == (2,):
        z1, z2 = complex(arr[0]), complex(arr[1])
        return z1.real, z1.imag, z2.real, z2.imag
    if arr.shape == (4,) and not np.iscomplexobj(arr):
        return float(arr[0]), float(arr[1]), float(arr[2]), float(arr[3])
    raise ValueError("expected a point of C^2 as (z1, z2) or as 4 real coordinates")


def _coords_array(points) -> np.ndarray:
    arr = np.asarray(points)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("expected a nonempty 2d array of sample points")
    if arr.shape[1] == 2:
        out = np.empty((arr.shape[0], 4))
        out[:, 0] = arr[:, 0].real
        out[:, 1] = arr[:, 0].imag
        out[:, 2] = arr[:, 1].real
        out[:, 3] = arr[:, 1].imag
        return out
    if arr.shape[1] == 4 and not np.iscomplexobj(arr):
        return np.array(arr, dtype=float)
    raise ValueError("points must have shape (n, 2) complex or (n, 4) real")


@dataclasses.dataclass(frozen=True)
class SamplePlan:
    """Where and how finely to sample a potential.

    points: (n, 4) real coordinates, or anything _coords_array accepts;
    h0: base stencil step, scaled per point to h = h0 * (1 + |z|);
    order: stencil order, 2 or 4.
    """

    points: np.ndarray
    h0: float = 1e-2
    order: int = 4

    def __post_init__(self):
        pts = _coords_array(self.points)
        object.__setattr__(self, "points", pts)
        if not 0.0 < self.h0 <= 0.1:
            raise ValueError(f"h0 must lie in (0, 0.1], got {self.h0}")
        if self.order not in (2, 4):
            raise ValueError(f"stencil order must be 2 or 4, got {self.order}")
        r = np.sqrt((pts * pts).sum(axis=1))
        # the double stencil reaches 10h from the center; keep it off the origin
        too_close = r < 10.0 * self.h0 * (1.0 + r)
        if too_close.any():
            i = int(np.argmax(too_close))
            raise ValueError(
                f"sample point {i} at radius {r[i]:.4g} sits within 10h of the origin"
            )

    @property
    def radii(self) -> np.ndarray:
        pts = self.points
        return np.sqrt((pts * pts).sum(axis=1))


# unit directions cycled through by sample_points; first two lie on the
# coordinate axes, the others are generic
_DIRECTIONS = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.5, 0.5, 0.5, 0.5],
        [2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0, 0.0],
    ]
)


def sample_points(rmin: float, rmax: float, n: int) -> np.ndarray:
    """n points with radii geometrically spaced in [rmin, rmax]."""
    if not 0 < rmin <= rmax:
        raise ValueError("need 0 < rmin <= rmax")
    if n < 1:
        raise ValueError("need at least one sample")
    radii = np.geomspace(rmin, rmax, n)
    dirs = _DIRECTIONS[np.arange(n) % len(_DIRECTIONS)]
    return radii[:, None] * dirs


@dataclasses.dataclass(frozen=True)
class DecayEstimate:
    """Least-squares decay order of the metric deviation from identity."""

    mu: Optional[float]
    residual: Optional[float]
    no_signal: bool
    radii: np.ndarray
    deviations: np.ndarray


@dataclasses.dataclass(frozen=True)
class CurvatureReport:
    """Outcome of sampling the scalar curvature of one potential."""

    potential: str
    points: np.ndarray
    scalar_values: np.ndarray
    max_abs_scalar: float
    metric_positive: bool
    tolerance: float
    passed: bool
    h0: float
    order: int
    decay: Optional[DecayEstimate] = None
    weighted_norms: Optional[dict] = None


def hermitian_hessian(potential: Potential, z, h0: float = 1e-2, order: int = 4) -> np.ndarray:
    """Metric g_ij at z as a 2x2 complex Hermitian matrix.

    Raises DegenerateMetricError when the sampled matrix is not
    positive definite.
    """
    x0, x1, x2, x3 = _coords(z)
    eng, family, par = _engine_args(potential)
    h = h0 * (1.0 + math.sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3))
    g11, g22, gr, gi = eng.hessian(family, par, x0, x1, x2, x3, h, order)
    det = g11 * g22 - gr * gr - gi * gi
    if not (math.isfinite(det) and det > 0.0 and g11 > 0.0 and g22 > 0.0):
        raise DegenerateMetricError(
            f"metric of {potential.name} not positive definite at {z!r}"
        )
    return np.array([[g11, gr + 1j * gi], [gr - 1j * gi, g22]])


def scalar_curvature(potential: Potential, z, h0: float = 1e-2, order: int = 4) -> float:
    """Scalar curvature S = -2 tr(g^-1 Hess log det g) at z."""
    x0, x1, x2, x3 = _coords(z)
    eng, family, par = _engine_args(potential)
    h = h0 * (1.0 + math.sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3))
    s = eng.scalar_curvature(family, par, x0, x1, x2, x3, h, order)
    if math.isnan(s):
        raise DegenerateMetricError(
            f"metric of {potential.name} degenerates on the stencil at {z!r}"
        )
    return float(s)


def metric_deviations(potential: Potential, points, h0: float = 1e-2, order: int = 4) -> np.ndarray:
    """Max entrywise |g - I| at each point."""
    pts = _coords_array(points)
    eng, family, par = _engine_args(potential)
    g = eng.hessian_batch(family, par, pts, h0, order)
    return np.max(
        np.abs(g - np.array([1.0, 1.0, 0.0, 0.0])), axis=1
    )


def verify_scalar_flat(
    potential: Potential,
    plan: SamplePlan,
    tol: float = 1e-4,
    decay_radii=None,
    weight_deltas=None,
) -> CurvatureReport:
    """Sample S over the plan and compare max |S| against tol.

    Degenerate points make the report fail rather than raise, so a
    single bad sample cannot hide the rest of the sweep.  Optional
    extras: a decay-order fit over decay_radii, and weighted sup norms
    of the metric deviation for each delta in weight_deltas.
    """
    eng, family, par = _engine_args(potential)
    s = eng.scalar_curvature_batch(family, par, plan.points, plan.h0, plan.order)
    positive = bool(np.isfinite(s).all())
    if positive:
        max_abs = float(np.max(np.abs(s)))
    else:
        max_abs = float("inf")
    decay = None
    if decay_radii is not None:
        decay = decay_order(potential, decay_radii, h0=plan.h0, order=plan.order)
    norms = None
    if weight_deltas is not None:
        dev = metric_deviations(potential, plan.points, plan.h0, plan.order)
        samples = list(zip(plan.points, dev))
        norms = {float(d): weighted_sup_norm(samples, d) for d in weight_deltas}
    return CurvatureReport(
        potential=potential.name,
        points=plan.points,
        scalar_values=s,
        max_abs_scalar=max_abs,
        metric_positive=positive,
        tolerance=tol,
        passed=positive and max_abs <= tol,
        h0=plan.h0,
        order=plan.order,
        decay=decay,
        weighted_norms=norms,
    )


def scalar_curvature_derivative(
    background: Potential,
    perturbation,
    z,
    h0: float = 1e-2,
    order: int = 4,
    t: float = 1e-3,
) -> float:
    """Directional derivative of S at the background, toward the perturbation.

    Returns the symmetric difference quotient [S(Phi + t f) -
    S(Phi - t f)] / (2t), which converges at O(t^2) to the linearized
    scalar curvature operator applied to f.  The perturbation may be a
    Potential or a callable f(z1, z2) -> real.
    """
    if t <= 0:
        raise ValueError(f"perturbation scale t must be positive, got {t}")
    base_rel = _relative_evaluator(background)
    if isinstance(perturbation, Potential):
        pert = _evaluator(perturbation)
    else:
        fn = perturbation

        def pert(x0, x1, x2, x3):
            return float(fn(complex(x0, x1), complex(x2, x3)))

    def shifted(sgn):
        # relative form keeps the background's stable evaluation; the
        # perturbation difference enters pre-scaled by t, so its own
        # rounding is harmless
        def combined_rel(family, par, x0, x1, x2, x3, d0, d1, d2, d3):
            dp = pert(x0 + d0, x1 + d1, x2 + d2, x3 + d3) - pert(x0, x1, x2, x3)
            return base_rel(x0, x1, x2, x3, d0, d1, d2, d3) + sgn * dp

        return _engine.custom_engine_rel(combined_rel)

    x0, x1, x2, x3 = _coords(z)
    h = h0 * (1.0 + math.sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3))
    s_plus = shifted(t).scalar_curvature(0, 0.0, x0, x1, x2, x3, h, order)
    s_minus = shifted(-t).scalar_curvature(0, 0.0, x0, x1, x2, x3, h, order)
    if math.isnan(s_plus) or math.isnan(s_minus):
        raise DegenerateMetricError(
            f"perturbed metric degenerates at {z!r} for scale t={t}"
        )
    return float((s_plus - s_minus) / (2.0 * t))


def decay_order(potential: Potential, radii, h0: float = 1e-2, order: int = 4) -> DecayEstimate:
    """Fit the decay exponent of |g - I| against radius.

    Needs at least 6 strictly increasing radii spanning a factor of 10
    (InsufficientDecadeError otherwise).  Deviations are measured along
    the fixed direction z = (r, 0); for the radial potentials this
    module cares about, the direction is immaterial up to stencil error.
    """
    rr = np.asarray(radii, dtype=float)
    if rr.ndim != 1 or len(rr) < 6:
        raise ValueError("need at least 6 radii for a decay fit")
    if not (np.diff(rr) > 0).all() or rr[0] <= 0:
        raise ValueError("radii must be positive and strictly increasing")
    if rr[-1] / rr[0] < 10.0:
        raise InsufficientDecadeError(
            f"radii span a factor {rr[-1] / rr[0]:.3g}; need at least 10"
        )
    pts = np.zeros((len(rr), 4))
    pts[:, 0] = rr
    dev = metric_deviations(potential, pts, h0=h0, order=order)
    if not np.isfinite(dev).all():
        raise DegenerateMetricError(
            f"metric of {potential.name} degenerates along the decay ray"
        )
    if (dev < NO_SIGNAL_THRESHOLD).all():
        return DecayEstimate(mu=None, residual=None, no_signal=True, radii=rr, deviations=dev)
    logs = np.log(np.maximum(dev, 1e-300))
    slope, intercept = np.polyfit(np.log(rr), logs, 1)
    fitted = slope * np.log(rr) + intercept
    residual = float(np.sqrt(np.mean((logs - fitted) ** 2)))
    return DecayEstimate(
        mu=float(-slope), residual=residual, no_signal=False, radii=rr, deviations=dev
    )


def weighted_sup_norm(samples, delta: float) -> float:
    """Discrete weighted sup norm: max over samples of |value| (1+r)^-delta."""
    best = None
    for point, value in samples:
        if np.ndim(point) == 0:
            r = float(abs(point))
        else:
            x0, x1, x2, x3 = _coords(point)
            r = math.sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3)
        w = abs(float(value)) * (1.0 + r) ** (-delta)
        if best is None or w > best:
            best = w
    if best is None:
        raise ValueError("weighted_sup_norm needs at least one sample")
    return float(best)
