"""Finite-difference curvature checks against analytic oracles.

The reference values are classical: the flat metric has hessian I and
vanishing curvature, the Eguchi-Hanson metric has unit determinant and
|g - I| ~ r^-4, the Burns metric has det g = 1 + m/u and r^-2 decay.
The radial-hessian oracle recomputes g from one-dimensional derivative
stencils of the profile, fully outside the code under test.
"""

import math

import numpy as np
import pytest

from sfkale import curvature as cv
from sfkale._engine import BURNS, EGUCHI_HANSON, FLAT, builtin_engine, resolve_backend
from sfkale.errors import DegenerateMetricError, InsufficientDecadeError

EH = cv.eguchi_hanson(1.0)
BU = cv.burns(1.0)
FL = cv.flat()

POINTS = [(1.1, 0.4 + 0.3j), (2.0, 1.0), (0.8 + 0.6j, 1.5j), (3.0, 0.5)]


# ----------------------------------------------------------------- hessians


def test_flat_hessian_is_identity():
    for z in POINTS:
        H = cv.hermitian_hessian(FL, z)
        assert np.abs(H - np.eye(2)).max() < 1e-9
        assert np.array_equal(H, H.conj().T)


def _radial_hessian_oracle(fn, z1, z2, du=1e-3):
    # g = f'(u) I + f''(u) conj(z) z^T from one-dimensional stencils
    u = abs(z1) ** 2 + abs(z2) ** 2
    d1 = (8 * (fn(u + du) - fn(u - du)) - (fn(u + 2 * du) - fn(u - 2 * du))) / (12 * du)
    d2 = (16 * (fn(u + du) + fn(u - du)) - (fn(u + 2 * du) + fn(u - 2 * du)) - 30 * fn(u)) / (
        12 * du * du
    )
    z = np.array([z1, z2])
    return d1 * np.eye(2) + d2 * np.outer(np.conj(z), z)


def test_radial_hessian_oracle():
    def profile(u):
        w = math.sqrt(1 + u * u)
        return w + math.log(u) - math.log(1 + w)

    pot = cv.custom_radial(profile)
    for z in POINTS:
        H = cv.hermitian_hessian(pot, z)
        want = _radial_hessian_oracle(profile, *z)
        assert np.abs(H - want).max() < 1e-5


def test_builtin_determinant_identities():
    for z in POINTS:
        u = abs(z[0]) ** 2 + abs(z[1]) ** 2
        det_eh = np.linalg.det(cv.hermitian_hessian(EH, z)).real
        det_bu = np.linalg.det(cv.hermitian_hessian(BU, z)).real
        assert abs(det_eh - 1.0) < 1e-5
        assert abs(det_bu - (1.0 + 1.0 / u)) < 1e-5


def test_custom_general_matches_custom_radial():
    def profile(u):
        w = math.sqrt(1 + u * u)
        return w + math.log(u) - math.log(1 + w)

    z = (1.1, 0.4 - 0.8j)
    pg = cv.custom_general(lambda z1, z2: profile(abs(z1) ** 2 + abs(z2) ** 2))
    pr = cv.custom_radial(profile)
    assert np.abs(cv.hermitian_hessian(pg, z) - cv.hermitian_hessian(pr, z)).max() < 1e-10


def test_degenerate_potential_raises():
    neg = cv.custom_radial(lambda u: -u)
    with pytest.raises(DegenerateMetricError):
        cv.hermitian_hessian(neg, (1.0, 1.0))
    with pytest.raises(DegenerateMetricError):
        cv.scalar_curvature(neg, (1.0, 1.0))


# ------------------------------------------------------------------- sweeps


def test_flat_scalar_curvature_sweep():
    plan = cv.SamplePlan(cv.sample_points(1, 4, 8))
    report = cv.verify_scalar_flat(FL, plan, tol=1e-8)
    assert report.passed and report.metric_positive
    assert report.max_abs_scalar < 1e-10


def test_flat_scalar_curvature_sweep_order2():
    plan = cv.SamplePlan(cv.sample_points(1, 4, 8), order=2)
    assert cv.verify_scalar_flat(FL, plan, tol=1e-8).max_abs_scalar < 1e-10


@pytest.mark.parametrize("pot", [EH, BU], ids=["eguchi-hanson", "burns"])
def test_builtin_scalar_flat_sweep(pot):
    plan = cv.SamplePlan(cv.sample_points(1, 8, 32))
    report = cv.verify_scalar_flat(pot, plan)
    assert report.passed
    assert report.max_abs_scalar < 2e-5


def test_custom_potential_noise_floor():
    # custom callables go through plain differences, so the flat
    # potential lands near 1e-8 rather than machine zero
    plan = cv.SamplePlan(cv.sample_points(1, 4, 8))
    pot = cv.custom_general(lambda z1, z2: abs(z1) ** 2 + abs(z2) ** 2)
    assert cv.verify_scalar_flat(pot, plan).max_abs_scalar < 1e-6


def test_unitary_invariance():
    th = 0.7
    z1, z2 = 1.2, 0.8 + 0.5j
    w1 = math.cos(th) * z1 - math.sin(th) * z2
    w2 = math.sin(th) * z1 + math.cos(th) * z2
    assert abs(cv.scalar_curvature(EH, (z1, z2)) - cv.scalar_curvature(EH, (w1, w2))) < 1e-5


def test_verify_reports_degenerate_without_raising():
    plan = cv.SamplePlan(cv.sample_points(1, 4, 8))
    report = cv.verify_scalar_flat(cv.custom_radial(lambda u: -u), plan)
    assert not report.passed
    assert not report.metric_positive
    assert report.max_abs_scalar == float("inf")


def test_metric_deviations_flat():
    pts = cv.sample_points(1, 8, 8)
    assert cv.metric_deviations(FL, pts).max() < 1e-10


# -------------------------------------------------------------- sample plans


def test_sample_points_shape_and_directions():
    pts = cv.sample_points(1, 8, 10)
    assert pts.shape == (10, 4)
    radii = np.linalg.norm(pts, axis=1)
    assert np.allclose(radii, np.geomspace(1, 8, 10))
    # direction pattern repeats with period 4
    assert np.allclose(pts[4] / radii[4], pts[0] / radii[0])


def test_sample_plan_validation():
    pts = cv.sample_points(1, 4, 4)
    for bad in (dict(h0=0.0), dict(h0=0.2), dict(order=3)):
        with pytest.raises(ValueError):
            cv.SamplePlan(pts, **bad)
    with pytest.raises(ValueError):
        cv.SamplePlan(np.array([[0.05, 0, 0, 0]]))  # too close to the origin
    plan = cv.SamplePlan(pts, h0=0.05, order=2)
    assert np.allclose(plan.radii, np.geomspace(1, 4, 4))


def test_potential_constructors():
    assert cv.flat()(1 + 2j, 3.0) == pytest.approx(14.0)
    assert cv.burns(2.0)(1.0, 1.0) == pytest.approx(2.0 + 2.0 * math.log(2.0))
    assert cv.eguchi_hanson(2.5).parameter == 2.5
    with pytest.raises(ValueError):
        cv.eguchi_hanson(-1.0)
    with pytest.raises(ValueError):
        cv.eguchi_hanson(0.0)


# -------------------------------------------------------------------- decay


def test_decay_order_eguchi_hanson():
    est = cv.decay_order(EH, np.geomspace(2, 64, 10))
    assert not est.no_signal
    assert abs(est.mu - 4.0) < 0.1
    assert est.residual < 1e-2


def test_decay_order_burns():
    est = cv.decay_order(BU, np.geomspace(2, 64, 10))
    assert abs(est.mu - 2.0) < 0.1


def test_decay_order_flat_no_signal():
    est = cv.decay_order(FL, np.geomspace(2, 64, 10))
    assert est.no_signal
    assert est.mu is None and est.residual is None


def test_decay_order_input_validation():
    with pytest.raises(ValueError):
        cv.decay_order(FL, np.geomspace(2, 64, 5))
    with pytest.raises(ValueError):
        cv.decay_order(FL, np.array([5.0, 4.0, 3.0, 2.0, 1.0, 0.5]))
    with pytest.raises(InsufficientDecadeError):
        cv.decay_order(FL, np.geomspace(2, 18, 6))


# ----------------------------------------------------------- weighted norms


def test_weighted_sup_norm_basics():
    assert cv.weighted_sup_norm([(0.0, 1.0)], 0.0) == pytest.approx(1.0)
    assert cv.weighted_sup_norm([((3.0, 0, 0, 0), 2.0)], 0.0) == pytest.approx(2.0)
    samples = [(r, (1.0 + r) ** -3) for r in (1.0, 2.0, 4.0, 8.0)]
    assert cv.weighted_sup_norm(samples, -3.0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        cv.weighted_sup_norm([], -1.0)


def _eh_ray_norm(delta, rmax):
    rr = np.geomspace(2, rmax, 12)
    pts = np.zeros((12, 4))
    pts[:, 0] = rr
    dev = cv.metric_deviations(EH, pts)
    return cv.weighted_sup_norm(list(zip(pts, dev)), delta)


def test_weighted_norm_separates_decay_rates():
    # |g - I| ~ r^-4: weighting by (1+r)^4 stays bounded as the sample
    # region grows, while (1+r)^4.5 does not
    stable = _eh_ray_norm(-4.0, 256) / _eh_ray_norm(-4.0, 16)
    growing = _eh_ray_norm(-4.5, 256) / _eh_ray_norm(-4.5, 16)
    assert 0.9 < stable < 1.1
    assert growing > 1.5


def test_verify_scalar_flat_with_extras():
    plan = cv.SamplePlan(cv.sample_points(1, 8, 8))
    report = cv.verify_scalar_flat(
        EH, plan, decay_radii=np.geomspace(2, 64, 10), weight_deltas=(-4.0,)
    )
    assert report.passed
    assert abs(report.decay.mu - 4.0) < 0.1
    assert report.weighted_norms[-4.0] > 0


# ----------------------------------------------------------------- backends


def test_backend_selection(monkeypatch):
    assert resolve_backend("numpy")[0] == "numpy"
    assert resolve_backend("auto")[0] in ("numba", "numpy")
    with pytest.raises(ValueError):
        resolve_backend("fortran")
    monkeypatch.setenv("SFKALE_BACKEND", "numpy")
    assert resolve_backend()[0] == "numpy"
    monkeypatch.setenv("SFKALE_BACKEND", "hypercube")
    with pytest.raises(ValueError):
        resolve_backend()


def test_backends_agree_bitwise():
    try:
        jitted = builtin_engine("numba")
    except RuntimeError:
        pytest.skip("numba not importable")
    plain = builtin_engine("numpy")
    pts = cv.sample_points(1, 8, 16)
    for family, par in ((FLAT, 0.0), (EGUCHI_HANSON, 1.0), (BURNS, 1.0)):
        a = jitted.scalar_curvature_batch(family, par, pts, 1e-2, 4)
        b = plain.scalar_curvature_batch(family, par, pts, 1e-2, 4)
        assert np.array_equal(a, b)
        ha = jitted.hessian_batch(family, par, pts, 1e-2, 4)
        hb = plain.hessian_batch(family, par, pts, 1e-2, 4)
        assert np.array_equal(ha, hb)
