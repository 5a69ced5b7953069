"""Unit quaternions, rotation matrices, and the maps between them.

Conventions fixed here and relied on everywhere else:

* quaternions are stored as ``(w, x, y, z)`` with Hamilton product;
* ``so4_of(q1, q2)`` is the matrix of ``x -> q1 * x * q2^{-1}`` on R^4;
* the Hopf map uses the complex pair ``z1 = w + ix``, ``z2 = y + iz`` and
  lands on the radius-1/2 sphere, so it is constant on the left circle
  fibers ``exp(i*theta) * q``.
"""
from __future__ import annotations

import numpy as np

from .errors import AntipodalChart, BadOrder

CHART_RADIUS = 0.5  # default convexity radius (radians) for chart-based joins

_SU2_BASIS = ("i", "j", "k")


def _qmul(a, b):
    """Hamilton product on trailing axes of shape (..., 4)."""
    w1, x1, y1, z1 = np.moveaxis(a, -1, 0)
    w2, x2, y2, z2 = np.moveaxis(b, -1, 0)
    return np.stack([
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    ], axis=-1)


def _qconj(a):
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def _normalize(v):
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


class UnitQuaternion:
    """Point of the unit 3-sphere, doubling as an element of SU(2).

    Immutable; the coefficient vector is renormalized on construction so
    that repeated products do not drift off the sphere.
    """

    __slots__ = ("vec",)

    def __init__(self, w, x=None, y=None, z=None):
        if x is None:
            vec = np.asarray(w, dtype=float)
        else:
            vec = np.array([w, x, y, z], dtype=float)
        if vec.shape != (4,):
            raise ValueError(f"expected 4 components, got shape {vec.shape}")
        n = np.linalg.norm(vec)
        if not 0.5 < n < 2.0:
            raise ValueError(f"not close to a unit quaternion: |q| = {n}")
        object.__setattr__(self, "vec", vec / n)
        self.vec.setflags(write=False)

    def __setattr__(self, name, value):
        raise AttributeError("UnitQuaternion is immutable")

    @property
    def w(self):
        return self.vec[0]

    @property
    def x(self):
        return self.vec[1]

    @property
    def y(self):
        return self.vec[2]

    @property
    def z(self):
        return self.vec[3]

    def __mul__(self, other):
        return UnitQuaternion(_qmul(self.vec, other.vec))

    def inverse(self):
        return UnitQuaternion(_qconj(self.vec))

    def __neg__(self):
        return UnitQuaternion(-self.vec)

    def isclose(self, other, tol=1e-10):
        return bool(np.linalg.norm(self.vec - other.vec) <= tol)

    def distance_to(self, other):
        """Geodesic distance on the unit sphere S^3."""
        dot = float(np.clip(np.dot(self.vec, other.vec), -1.0, 1.0))
        return float(np.arccos(dot))

    def __repr__(self):
        return "UnitQuaternion({:+.6f}, {:+.6f}, {:+.6f}, {:+.6f})".format(
            *self.vec)

    IDENTITY: "UnitQuaternion"


UnitQuaternion.IDENTITY = UnitQuaternion(1.0, 0.0, 0.0, 0.0)
QUAT_ONE = UnitQuaternion.IDENTITY
QUAT_I = UnitQuaternion(0.0, 1.0, 0.0, 0.0)
QUAT_J = UnitQuaternion(0.0, 0.0, 1.0, 0.0)
QUAT_K = UnitQuaternion(0.0, 0.0, 0.0, 1.0)


class Rotation:
    """Special orthogonal matrix of size 3 or 4, re-orthonormalized on build."""

    __slots__ = ("matrix", "dim")

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=float)
        if m.shape not in ((3, 3), (4, 4)):
            raise ValueError(f"expected a 3x3 or 4x4 matrix, got {m.shape}")
        if np.abs(m.T @ m - np.eye(m.shape[0])).max() > 1e-6:
            raise ValueError("matrix is far from orthogonal")
        m = _gram_schmidt(m)
        if np.linalg.det(m) < 0:
            raise ValueError("matrix has determinant -1, not a rotation")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dim", m.shape[0])
        self.matrix.setflags(write=False)

    def __setattr__(self, name, value):
        raise AttributeError("Rotation is immutable")

    def __matmul__(self, other):
        if isinstance(other, Rotation):
            return Rotation(self.matrix @ other.matrix)
        return self.matrix @ np.asarray(other)

    def inverse(self):
        return Rotation(self.matrix.T)

    def isclose(self, other, tol=1e-10):
        return bool(np.abs(self.matrix - other.matrix).max() <= tol)

    def __repr__(self):
        return f"Rotation(dim={self.dim})"

    @staticmethod
    def identity(dim):
        return Rotation(np.eye(dim))


def _gram_schmidt(m):
    """Column-wise modified Gram-Schmidt; keeps well-conditioned input intact."""
    q = m.astype(float).copy()
    k = m.shape[0]
    for i in range(k):
        for j in range(i):
            q[:, i] -= np.dot(q[:, j], q[:, i]) * q[:, j]
        q[:, i] /= np.linalg.norm(q[:, i])
    return q


class LieVector:
    """Element of su(2), so(3) or so(4) in a fixed ordered basis."""

    __slots__ = ("algebra", "coeffs")

    _DIMS = {"su2": 3, "so3": 3, "so4": 6}

    def __init__(self, algebra, coeffs):
        if algebra not in self._DIMS:
            raise ValueError(f"unknown algebra tag {algebra!r}")
        c = np.asarray(coeffs, dtype=float)
        if c.shape != (self._DIMS[algebra],):
            raise ValueError(
                f"{algebra} expects {self._DIMS[algebra]} coefficients, "
                f"got shape {c.shape}")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coeffs", c)
        self.coeffs.setflags(write=False)

    def __setattr__(self, name, value):
        raise AttributeError("LieVector is immutable")

    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def __repr__(self):
        return f"LieVector({self.algebra}, {self.coeffs})"


def quat_exp(X: LieVector) -> UnitQuaternion:
    """Exponential su(2) -> SU(2): exp(v) = cos|v| + sin|v| * v/|v|."""
    if X.algebra != "su2":
        raise ValueError("quat_exp expects an su2 vector")
    v = X.coeffs
    th = np.linalg.norm(v)
    if th < 1e-300:
        return UnitQuaternion.IDENTITY
    u = v / th
    return UnitQuaternion(np.concatenate([[np.cos(th)], np.sin(th) * u]))


def quat_log(q: UnitQuaternion) -> LieVector:
    """Principal logarithm SU(2) -> su(2); undefined at the antipode -1."""
    w = float(np.clip(q.w, -1.0, 1.0))
    v = q.vec[1:]
    s = np.linalg.norm(v)
    if w < -1.0 + 1e-12 and s < 1e-6:
        raise AntipodalChart("log is undefined at the antipode of the identity")
    th = np.arctan2(s, w)
    if s < 1e-300:
        return LieVector("su2", np.zeros(3))
    return LieVector("su2", (th / s) * v)


def hopf(q: UnitQuaternion) -> np.ndarray:
    """Hopf projection onto the radius-1/2 sphere model of CP^1.

    Constant on left circle fibers exp(i*t)*q; with this normalization the
    differential of the standard contact form equals the pullback of the
    symplectic area form (see the contact module).
    """
    return hopf_arr(q.vec)


def hopf_arr(q):
    """Vectorized Hopf projection for arrays of shape (..., 4)."""
    w, x, y, z = np.moveaxis(np.asarray(q, dtype=float), -1, 0)
    return np.stack([
        w * y + x * z,
        w * z - x * y,
        (w * w + x * x - y * y - z * z) / 2.0,
    ], axis=-1)


def hopf_jacobian(q):
    """3x4 Jacobian of hopf_arr; rows are orthonormal, kernel = span(i*q)."""
    w, x, y, z = np.moveaxis(np.asarray(q, dtype=float), -1, 0)
    return np.stack([
        np.stack([y, z, w, x], axis=-1),
        np.stack([z, -y, -x, w], axis=-1),
        np.stack([w, x, -y, -z], axis=-1),
    ], axis=-2)


def so3_of(q: UnitQuaternion) -> Rotation:
    """Double covering SU(2) -> SO(3): the matrix of v -> q v q^{-1}."""
    w, x, y, z = q.vec
    return Rotation(np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ]))


def so4_of(q1: UnitQuaternion, q2: UnitQuaternion) -> Rotation:
    """Double covering SU(2) x SU(2) -> SO(4): matrix of x -> q1 x q2^{-1}."""
    cols = [_qmul(_qmul(q1.vec, e), _qconj(q2.vec)) for e in np.eye(4)]
    return Rotation(np.stack(cols, axis=1))


def cyclic_embed(m: int, a: int) -> UnitQuaternion:
    """Order-m cyclic subgroup of SU(2): a -> exp(2*pi*i*a/m)."""
    if m < 2:
        raise BadOrder(f"cyclic order must be >= 2, got {m}")
    th = 2.0 * np.pi * a / m
    return UnitQuaternion(np.cos(th), np.sin(th), 0.0, 0.0)


def apply_rotation(rot: Rotation, point: UnitQuaternion) -> UnitQuaternion:
    """SO(4) acting on S^3; the result is renormalized."""
    if rot.dim != 4:
        raise ValueError("apply_rotation expects a 4x4 rotation")
    return UnitQuaternion(rot.matrix @ point.vec)
