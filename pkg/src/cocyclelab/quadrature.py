"""Deterministic quadrature for pulled-back forms on simplices.

Integrals are computed in iterated-cone coordinates: the standard
n-simplex is the image of the unit n-cube under

    bary(s_1, ..., s_n) = ((1 - s_n) * bary(s_1, ..., s_{n-1}), s_n),

and the iterated-join simplices of this package are smooth functions of
the cube coordinates (the barycentric cone division cancels).  Tensor
Gauss-Legendre panels on the cube therefore converge at high order, where
simplex rules in barycentric coordinates stall at O(h^2) because of the
apex singularity of the cone parametrization.

The error estimate compares two rule orders on the same panel grid; cells
are traversed in a fixed lexicographic order so results are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import QuadratureDiverged


@dataclass(frozen=True)
class QuadratureSpec:
    """Rule order / panel depth / tolerance bundle for one integral.

    ``order`` is the number of Gauss-Legendre points per axis, ``depth``
    splits every axis into 2**depth equal panels, ``fd_step`` is the
    central-difference step for tangent pushforwards.
    """

    order: int = 8
    depth: int = 0
    tol: float = 1e-6
    fd_step: float = 1e-4

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("order must be >= 2")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class IntegralResult:
    """Value plus the difference between two rule orders."""

    value: float
    error_estimate: float

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error estimate must be >= 0")


def cube_to_bary(s):
    """Iterated-cone map [0,1]^n -> standard n-simplex, batched.

    ``s`` has shape (N, n); the result has shape (N, n+1) of barycentric
    coordinates.  The map is polynomial, hence smooth, and is a bijection
    away from a measure-zero set.
    """
    s = np.atleast_2d(np.asarray(s, dtype=float))
    n = s.shape[1]
    bary = np.ones((s.shape[0], 1))
    for k in range(n):
        sk = s[:, k:k + 1]
        bary = np.concatenate([bary * (1.0 - sk), sk], axis=1)
    return bary


@lru_cache(maxsize=None)
def _panel_rule(n: int, order: int, depth: int):
    """Tensor Gauss-Legendre nodes/weights on the unit n-cube with
    2**depth panels per axis, in fixed lexicographic panel order."""
    x, w = np.polynomial.legendre.leggauss(order)
    x = (x + 1.0) / 2.0
    w = w / 2.0
    panels = 2 ** depth
    width = 1.0 / panels
    wt_cell = np.ones(1)
    for _ in range(n):
        wt_cell = np.outer(wt_cell, w).ravel()
    wt_cell = wt_cell * width ** n
    xs, ws = [], []
    for offsets in product(range(panels), repeat=n):
        grids = [(x + off) * width for off in offsets]
        mesh = np.meshgrid(*grids, indexing="ij")
        xs.append(np.stack([m.ravel() for m in mesh], axis=-1))
        ws.append(wt_cell)
    pts = np.concatenate(xs, axis=0)
    wts = np.concatenate(ws, axis=0)
    pts.setflags(write=False)
    wts.setflags(write=False)
    return pts, wts


def _level_value(integrand, n, order, depth):
    pts, wts = _panel_rule(n, order, depth)
    return float(np.dot(wts, integrand(pts)))


def integrate_on_cube(integrand, n, spec: QuadratureSpec) -> IntegralResult:
    """Two-order integral of ``integrand(s) -> (N,)`` over the unit n-cube.

    The value is taken at ``spec.order + 2`` points per axis, the estimate
    is the difference from the ``spec.order`` run.  Raises
    QuadratureDiverged when the two disagree by more than 10x tolerance.
    """
    coarse = _level_value(integrand, n, spec.order, spec.depth)
    fine = _level_value(integrand, n, spec.order + 2, spec.depth)
    est = abs(fine - coarse)
    if est > 10.0 * spec.tol:
        raise QuadratureDiverged(
            f"rule orders disagree by {est:.3e} > 10 * tol = "
            f"{10 * spec.tol:.3e}")
    return IntegralResult(value=fine, error_estimate=est)


def gauss_legendre_circle(f, n_points=64):
    """Deterministic line integral of f over [0, 2*pi]."""
    x, w = np.polynomial.legendre.leggauss(n_points)
    t = np.pi * (x + 1.0)
    return float(np.pi * np.dot(w, f(t)))
