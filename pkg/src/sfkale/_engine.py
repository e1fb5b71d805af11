"""Finite-difference kernels, optionally compiled with numba.

The same kernel source serves both backends: make_engine(jit, rel)
builds the full stencil stack around a relative potential evaluator,
where jit is either numba.njit or the identity.  The backend is picked
via the SFKALE_BACKEND environment variable (auto | numba | numpy);
auto takes numba when importable and falls back to the plain
interpreter otherwise.  Custom potential callables always run on the
plain path.

The inner stencils consume psi(x, d) = Phi(x + d) - Phi(x) rather than
Phi itself.  Second-derivative weights sum to zero, so the two forms
agree exactly, but the relative form avoids cancelling the large
common value of Phi across the stencil: for the built-in families the
difference is computed stably (du = 2 x.d + |d|^2 is exact for the
flat potential, and log1p / sqrt-difference forms handle the rest), so
the flat scalar curvature comes out near machine zero instead of
h^-4-amplified rounding.

Derivative stencils (step h, psi(0) = 0 so center terms drop):
  pure second, order 2:  (psi(+h) + psi(-h)) / h^2
  pure second, order 4:  (16 (psi(h) + psi(-h)) - (psi(2h) + psi(-2h))) / (12 h^2)
  mixed second, order 2: four-corner cross / (4 h^2)
  mixed second, order 4: Richardson (4 cross(h) - cross(2h)) / 3
The outer stencil, applied to log det g, keeps the plain absolute form
since that field is O(1).  Degenerate metrics surface as NaN; callers
turn that into an error.
"""

from __future__ import annotations

import math
import os

import numpy as np

BACKEND_ENV = "SFKALE_BACKEND"

FLAT = 0
EGUCHI_HANSON = 1
BURNS = 2


def builtin_potential(family, par, x0, x1, x2, x3):
    # u = |z|^2 in real coordinates (x0, x1, x2, x3) = (Re z1, Im z1, Re z2, Im z2)
    u = x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3
    if family == FLAT:
        return u
    if family == EGUCHI_HANSON:
        a2 = par * par
        w = math.sqrt(a2 * a2 + u * u)
        return w + a2 * math.log(u) - a2 * math.log(a2 + w)
    # Burns: flat plus a logarithmic term of weight par
    return u + par * math.log(u)


def builtin_potential_rel(family, par, x0, x1, x2, x3, d0, d1, d2, d3):
    """Phi(x + d) - Phi(x), computed without cancelling large terms."""
    u = x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3
    du = 2.0 * (x0 * d0 + x1 * d1 + x2 * d2 + x3 * d3) + (
        d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3
    )
    if family == FLAT:
        return du
    if u <= 0.0:
        return np.nan
    ratio = du / u
    if ratio <= -1.0:
        # shifted point at or beyond the log singularity
        return np.nan
    if family == EGUCHI_HANSON:
        a2 = par * par
        us = u + du
        w = math.sqrt(a2 * a2 + u * u)
        ws = math.sqrt(a2 * a2 + us * us)
        dw = du * (us + u) / (ws + w)
        return dw + a2 * math.log1p(ratio) - a2 * math.log1p(dw / (a2 + w))
    return du + par * math.log1p(ratio)


def _identity(func):
    return func


def absolute_to_relative(potential):
    """Wrap an absolute evaluator into the relative signature.

    Rounding committed inside the callable cannot be undone, so custom
    potentials keep the plain-difference accuracy; only the built-in
    families get the stable forms above.
    """

    def rel(family, par, x0, x1, x2, x3, d0, d1, d2, d3):
        return potential(family, par, x0 + d0, x1 + d1, x2 + d2, x3 + d3) - potential(
            family, par, x0, x1, x2, x3
        )

    return rel


def make_engine(jit, potential_rel):
    """Compile the stencil stack around one relative potential evaluator.

    potential_rel(family, par, x0..x3, d0..d3) -> Phi(x+d) - Phi(x)
    must be jit-able when jit is numba.njit.  Returns an Engine whose
    evaluators all take the stencil step h and the stencil order (2 or
    4) explicitly.
    """
    psi = jit(potential_rel)

    @jit
    def psi_shift(family, par, x0, x1, x2, x3, h, a, da, b, db):
        d0 = 0.0
        d1 = 0.0
        d2 = 0.0
        d3 = 0.0
        if a == 0:
            d0 += da * h
        elif a == 1:
            d1 += da * h
        elif a == 2:
            d2 += da * h
        else:
            d3 += da * h
        if b == 0:
            d0 += db * h
        elif b == 1:
            d1 += db * h
        elif b == 2:
            d2 += db * h
        else:
            d3 += db * h
        return psi(family, par, x0, x1, x2, x3, d0, d1, d2, d3)

    @jit
    def d2_phi(family, par, x0, x1, x2, x3, h, order, a, b):
        if a == b:
            s1 = psi_shift(family, par, x0, x1, x2, x3, h, a, 1.0, a, 0.0) + psi_shift(
                family, par, x0, x1, x2, x3, h, a, -1.0, a, 0.0
            )
            if order == 2:
                return s1 / (h * h)
            s2 = psi_shift(family, par, x0, x1, x2, x3, h, a, 2.0, a, 0.0) + psi_shift(
                family, par, x0, x1, x2, x3, h, a, -2.0, a, 0.0
            )
            return (16.0 * s1 - s2) / (12.0 * h * h)
        cross1 = (
            psi_shift(family, par, x0, x1, x2, x3, h, a, 1.0, b, 1.0)
            - psi_shift(family, par, x0, x1, x2, x3, h, a, 1.0, b, -1.0)
            - psi_shift(family, par, x0, x1, x2, x3, h, a, -1.0, b, 1.0)
            + psi_shift(family, par, x0, x1, x2, x3, h, a, -1.0, b, -1.0)
        ) / (4.0 * h * h)
        if order == 2:
            return cross1
        cross2 = (
            psi_shift(family, par, x0, x1, x2, x3, h, a, 2.0, b, 2.0)
            - psi_shift(family, par, x0, x1, x2, x3, h, a, 2.0, b, -2.0)
            - psi_shift(family, par, x0, x1, x2, x3, h, a, -2.0, b, 2.0)
            + psi_shift(family, par, x0, x1, x2, x3, h, a, -2.0, b, -2.0)
        ) / (16.0 * h * h)
        return (4.0 * cross1 - cross2) / 3.0

    @jit
    def hessian(family, par, x0, x1, x2, x3, h, order):
        # complex Hessian d^2/dz_i dzbar_j from the 10 real second partials,
        # using d/dz = (d/dx - i d/dy)/2; returns (g11, g22, Re g12, Im g12)
        d00 = d2_phi(family, par, x0, x1, x2, x3, h, order, 0, 0)
        d11 = d2_phi(family, par, x0, x1, x2, x3, h, order, 1, 1)
        d22 = d2_phi(family, par, x0, x1, x2, x3, h, order, 2, 2)
        d33 = d2_phi(family, par, x0, x1, x2, x3, h, order, 3, 3)
        d02 = d2_phi(family, par, x0, x1, x2, x3, h, order, 0, 2)
        d13 = d2_phi(family, par, x0, x1, x2, x3, h, order, 1, 3)
        d03 = d2_phi(family, par, x0, x1, x2, x3, h, order, 0, 3)
        d12 = d2_phi(family, par, x0, x1, x2, x3, h, order, 1, 2)
        g11 = (d00 + d11) / 4.0
        g22 = (d22 + d33) / 4.0
        gr = (d02 + d13) / 4.0
        gi = (d03 - d12) / 4.0
        return g11, g22, gr, gi

    @jit
    def logdet(family, par, x0, x1, x2, x3, h, order):
        g11, g22, gr, gi = hessian(family, par, x0, x1, x2, x3, h, order)
        det = g11 * g22 - gr * gr - gi * gi
        if det <= 0.0 or g11 <= 0.0 or g22 <= 0.0:
            return np.nan
        return math.log(det)

    @jit
    def logdet_shift(family, par, x0, x1, x2, x3, h, order, a, da, b, db):
        if a == 0:
            x0 += da * h
        elif a == 1:
            x1 += da * h
        elif a == 2:
            x2 += da * h
        else:
            x3 += da * h
        if b == 0:
            x0 += db * h
        elif b == 1:
            x1 += db * h
        elif b == 2:
            x2 += db * h
        else:
            x3 += db * h
        return logdet(family, par, x0, x1, x2, x3, h, order)

    @jit
    def d2_logdet(family, par, x0, x1, x2, x3, h, order, a, b):
        if a == b:
            if order == 2:
                return (
                    logdet_shift(family, par, x0, x1, x2, x3, h, order, a, 1.0, a, 0.0)
                    - 2.0 * logdet(family, par, x0, x1, x2, x3, h, order)
                    + logdet_shift(family, par, x0, x1, x2, x3, h, order, a, -1.0, a, 0.0)
                ) / (h * h)
            return (
                -logdet_shift(family, par, x0, x1, x2, x3, h, order, a, 2.0, a, 0.0)
                + 16.0 * logdet_shift(family, par, x0, x1, x2, x3, h, order, a, 1.0, a, 0.0)
                - 30.0 * logdet(family, par, x0, x1, x2, x3, h, order)
                + 16.0 * logdet_shift(family, par, x0, x1, x2, x3, h, order, a, -1.0, a, 0.0)
                - logdet_shift(family, par, x0, x1, x2, x3, h, order, a, -2.0, a, 0.0)
            ) / (12.0 * h * h)
        cross1 = (
            logdet_shift(family, par, x0, x1, x2, x3, h, order, a, 1.0, b, 1.0)
            - logdet_shift(family, par, x0, x1, x2, x3, h, order, a, 1.0, b, -1.0)
            - logdet_shift(family, par, x0, x1, x2, x3, h, order, a, -1.0, b, 1.0)
            + logdet_shift(family, par, x0, x1, x2, x3, h, order, a, -1.0, b, -1.0)
        ) / (4.0 * h * h)
        if order == 2:
            return cross1
        cross2 = (
            logdet_shift(family, par, x0, x1, x2, x3, h, order, a, 2.0, b, 2.0)
            - logdet_shift(family, par, x0, x1, x2, x3, h, order, a, 2.0, b, -2.0)
            - logdet_shift(family, par, x0, x1, x2, x3, h, order, a, -2.0, b, 2.0)
            + logdet_shift(family, par, x0, x1, x2, x3, h, order, a, -2.0, b, -2.0)
        ) / (16.0 * h * h)
        return (4.0 * cross1 - cross2) / 3.0

    @jit
    def scalar_curvature(family, par, x0, x1, x2, x3, h, order):
        # S = -2 tr(g^{-1} H_F) with F = log det g; the factor 2 fixes the
        # real scalar curvature normalization
        g11, g22, gr, gi = hessian(family, par, x0, x1, x2, x3, h, order)
        det = g11 * g22 - gr * gr - gi * gi
        if det <= 0.0 or g11 <= 0.0 or g22 <= 0.0:
            return np.nan
        f11 = (
            d2_logdet(family, par, x0, x1, x2, x3, h, order, 0, 0)
            + d2_logdet(family, par, x0, x1, x2, x3, h, order, 1, 1)
        ) / 4.0
        f22 = (
            d2_logdet(family, par, x0, x1, x2, x3, h, order, 2, 2)
            + d2_logdet(family, par, x0, x1, x2, x3, h, order, 3, 3)
        ) / 4.0
        fr = (
            d2_logdet(family, par, x0, x1, x2, x3, h, order, 0, 2)
            + d2_logdet(family, par, x0, x1, x2, x3, h, order, 1, 3)
        ) / 4.0
        fi = (
            d2_logdet(family, par, x0, x1, x2, x3, h, order, 0, 3)
            - d2_logdet(family, par, x0, x1, x2, x3, h, order, 1, 2)
        ) / 4.0
        return -2.0 * (g22 * f11 + g11 * f22 - 2.0 * (gr * fr + gi * fi)) / det

    @jit
    def hessian_batch(family, par, pts, h0, order):
        out = np.empty((pts.shape[0], 4))
        for i in range(pts.shape[0]):
            r = math.sqrt(
                pts[i, 0] * pts[i, 0]
                + pts[i, 1] * pts[i, 1]
                + pts[i, 2] * pts[i, 2]
                + pts[i, 3] * pts[i, 3]
            )
            h = h0 * (1.0 + r)
            g11, g22, gr, gi = hessian(
                family, par, pts[i, 0], pts[i, 1], pts[i, 2], pts[i, 3], h, order
            )
            out[i, 0] = g11
            out[i, 1] = g22
            out[i, 2] = gr
            out[i, 3] = gi
        return out

    @jit
    def scalar_curvature_batch(family, par, pts, h0, order):
        out = np.empty(pts.shape[0])
        for i in range(pts.shape[0]):
            r = math.sqrt(
                pts[i, 0] * pts[i, 0]
                + pts[i, 1] * pts[i, 1]
                + pts[i, 2] * pts[i, 2]
                + pts[i, 3] * pts[i, 3]
            )
            h = h0 * (1.0 + r)
            out[i] = scalar_curvature(
                family, par, pts[i, 0], pts[i, 1], pts[i, 2], pts[i, 3], h, order
            )
        return out

    return Engine(
        hessian=hessian,
        logdet=logdet,
        scalar_curvature=scalar_curvature,
        hessian_batch=hessian_batch,
        scalar_curvature_batch=scalar_curvature_batch,
    )


class Engine:
    """Bundle of compiled evaluators sharing one potential."""

    def __init__(self, hessian, logdet, scalar_curvature, hessian_batch, scalar_curvature_batch):
        self.hessian = hessian
        self.logdet = logdet
        self.scalar_curvature = scalar_curvature
        self.hessian_batch = hessian_batch
        self.scalar_curvature_batch = scalar_curvature_batch


def resolve_backend(name=None):
    """Map a requested backend name (or the env var) to (label, jit)."""
    mode = (name or os.environ.get(BACKEND_ENV, "auto")).lower()
    if mode not in ("auto", "numba", "numpy"):
        raise ValueError(f"unknown backend {mode!r}; use auto, numba or numpy")
    if mode in ("auto", "numba"):
        try:
            from numba import njit
        except ImportError:
            if mode == "numba":
                raise RuntimeError("numba backend requested but numba is not importable")
        else:
            return "numba", njit
    return "numpy", _identity


_BUILTIN_ENGINES = {}


def builtin_engine(backend=None):
    """Shared engine for the built-in potential families, cached per backend."""
    label, jit = resolve_backend(backend)
    if label not in _BUILTIN_ENGINES:
        _BUILTIN_ENGINES[label] = make_engine(jit, builtin_potential_rel)
    return _BUILTIN_ENGINES[label]


def custom_engine(potential):
    """Uncompiled engine around an absolute potential callable."""
    return make_engine(_identity, absolute_to_relative(potential))


def custom_engine_rel(potential_rel):
    """Uncompiled engine around an already-relative evaluator."""
    return make_engine(_identity, potential_rel)
