"""Geodesic and chart-based simplices built by iterated joins.

The degree-n simplex on vertices (g_0, ..., g_n) is defined recursively:
the point with barycentric coordinates ((1-s) u, s) is the join of the
degree-(n-1) simplex at u with g_n at parameter s.  Faces of the result
therefore agree exactly with the simplices of the face tuples, and the
construction commutes with the left group action.

Two join flavours are provided: great-circle arcs on a unit sphere, and
chart arcs ``x * exp(s * log(x^{-1} y))`` in SU(2).
"""
from __future__ import annotations

import numpy as np
from scipy.optimize import linprog

from .errors import (AntipodalJoin, ChartExceeded, DegenerateConfig, IndexOut)
from .groups import CHART_RADIUS, UnitQuaternion, _qconj, _qmul

_ANTIPODE_TOL = 1e-12


def face(i, vertices):
    """Drop entry i of an ordered tuple; degree-0 tuples have no faces."""
    t = tuple(vertices)
    n = len(t) - 1
    if n == 0:
        raise IndexOut("a single-entry tuple has no faces")
    if not 0 <= i <= n:
        raise IndexOut(f"face index {i} out of range for degree {n}")
    return t[:i] + t[i + 1:]


def all_faces(vertices):
    """Signed face list [(+1, d_0 t), (-1, d_1 t), ...]."""
    t = tuple(vertices)
    return [((-1) ** i, face(i, t)) for i in range(len(t))]


def is_chart_small(vertices, radius=CHART_RADIUS):
    """True when all relative differences g_i^{-1} g_j stay within ``radius``
    of the identity in the log chart.  Left-translation invariant."""
    if not 0 < radius < np.pi:
        raise ValueError("radius must lie in (0, pi)")
    qs = [g.vec for g in vertices]
    for i in range(len(qs)):
        for j in range(i + 1, len(qs)):
            d = _qmul(_qconj(qs[i]), qs[j])
            if np.arctan2(np.linalg.norm(d[1:]), d[0]) >= radius:
                return False
    return True


def in_open_hemisphere(points):
    """True when some u has <u, x_i> > 0 for every point, i.e. when the
    origin lies outside the convex hull (small feasibility LP)."""
    pts = np.array([np.asarray(p, dtype=float) for p in points])
    if pts.ndim != 2:
        raise ValueError("expected a list of coordinate vectors")
    m, d = pts.shape
    if m == 1:
        return True
    a_eq = np.vstack([pts.T, np.ones(m)])
    b_eq = np.concatenate([np.zeros(d), [1.0]])
    res = linprog(np.zeros(m), A_eq=a_eq, b_eq=b_eq,
                  bounds=[(0, None)] * m, method="highs")
    return not res.success


def distinct_hopf(vertices, tol=1e-9):
    """True when the Hopf images of the quaternions pairwise differ."""
    from .groups import hopf_arr
    pts = hopf_arr(np.array([g.vec for g in vertices]))
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if np.linalg.norm(pts[i] - pts[j]) <= tol:
                return False
    return True


def slerp_join(x, y, s):
    """Constant-speed great-circle arc from x (s=0) to y (s=1)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dot = float(np.clip(np.dot(x, y), -1.0, 1.0))
    if dot <= -1.0 + _ANTIPODE_TOL:
        raise AntipodalJoin("no unique arc between antipodal points")
    return _slerp_batch(x[None, :], y[None, :], np.array([float(s)]))[0]


def _slerp_batch(x, y, s):
    """Batched slerp; analytic in s, so slight excursions outside [0, 1]
    (used by finite differencing) are fine."""
    dot = np.clip(np.sum(x * y, axis=-1, keepdims=True), -1.0, 1.0)
    if np.any(dot <= -1.0 + _ANTIPODE_TOL):
        raise DegenerateConfig("join hit an antipodal pair of points")
    th = np.arccos(dot)
    small = th[..., 0] < 1e-9
    sinth = np.sin(th)
    sinth[small] = 1.0
    s = np.asarray(s, dtype=float)[..., None]
    out = (np.sin((1.0 - s) * th) * x + np.sin(s * th) * y) / sinth
    if np.any(small):
        lin = (1.0 - s) * x + s * y
        nrm = np.linalg.norm(lin, axis=-1, keepdims=True)
        lin = lin / np.where(nrm == 0.0, 1.0, nrm)
        out[small] = lin[small]
    return out


def chart_join(x: UnitQuaternion, y: UnitQuaternion, s) -> UnitQuaternion:
    """Left-equivariant chart arc x * exp(s * log(x^{-1} y)) in SU(2)."""
    d = _qmul(_qconj(x.vec), y.vec)
    if d[0] <= -1.0 + _ANTIPODE_TOL and np.linalg.norm(d[1:]) < 1e-6:
        raise ChartExceeded("x^{-1} y is antipodal to the identity")
    out = _chart_join_batch(x.vec[None, :], y.vec[None, :],
                            np.array([float(s)]))[0]
    return UnitQuaternion(out)


def _qlog_batch(q):
    w = np.clip(q[..., 0], -1.0, 1.0)
    v = q[..., 1:]
    sv = np.linalg.norm(v, axis=-1)
    th = np.arctan2(sv, w)
    if np.any(th >= np.pi - 1e-8):
        raise DegenerateConfig("chart join hit the antipodal locus")
    scale = np.where(sv < 1e-300, 0.0, th / np.where(sv == 0.0, 1.0, sv))
    return scale[..., None] * v


def _qexp_batch(v):
    th = np.linalg.norm(v, axis=-1)
    sinc = np.where(th < 1e-300, 1.0, np.sin(th) / np.where(th == 0, 1.0, th))
    return np.concatenate([np.cos(th)[..., None], sinc[..., None] * v],
                          axis=-1)


def _chart_join_batch(x, y, s):
    z = _qlog_batch(_qmul(_qconj(x), y))
    return _qmul(x, _qexp_batch(s[..., None] * z))


class ParametrizedMap:
    """A smooth map from the standard n-simplex, evaluated in batches.

    ``fn`` receives barycentric coordinates (N, n+1) and returns points
    (N, d).  Geodesic simplices implement the same protocol.  ``cube_fn``
    optionally evaluates directly in iterated-cone cube coordinates; when
    absent the barycentric evaluator is composed with the cone map.
    """

    def __init__(self, degree, fn, codomain="S3", cube_fn=None):
        self.degree = degree
        self._fn = fn
        self._cube_fn = cube_fn
        self.codomain = codomain

    def evaluate(self, bary):
        bary = np.atleast_2d(np.asarray(bary, dtype=float))
        return self._fn(bary)

    def evaluate_cube(self, s):
        from .quadrature import cube_to_bary
        if self._cube_fn is not None:
            return self._cube_fn(np.atleast_2d(np.asarray(s, dtype=float)))
        return self.evaluate(cube_to_bary(s))

    def corner_vertices(self):
        """Images of the barycentric corners, as quaternions."""
        pts = self.evaluate(np.eye(self.degree + 1))
        return tuple(UnitQuaternion(p) for p in pts)

    def face(self, i):
        if not 0 <= i <= self.degree:
            raise IndexOut(f"face index {i} out of range")
        deg = self.degree - 1

        def fn(bary, _i=i):
            return self.evaluate(np.insert(bary, _i, 0.0, axis=1))

        return ParametrizedMap(deg, fn, codomain=self.codomain)


class GeodesicSimplex:
    """Iterated-join simplex on an ordered vertex tuple.

    ``kind`` is "spherical" (vertices are points of a unit sphere, joins
    are great-circle arcs) or "chart" (vertices are SU(2) elements, joins
    run through the log chart).  Degeneracy is detected lazily at
    evaluation points.
    """

    def __init__(self, vertices, kind, radius=CHART_RADIUS):
        if kind not in ("spherical", "chart"):
            raise ValueError(f"unknown simplex kind {kind!r}")
        self.kind = kind
        self.radius = radius
        self.vertices = tuple(vertices)
        self.degree = len(self.vertices) - 1
        if kind == "chart":
            if not all(isinstance(v, UnitQuaternion) for v in self.vertices):
                raise TypeError("chart simplices take UnitQuaternion vertices")
            if not is_chart_small(self.vertices, radius):
                raise DegenerateConfig(
                    "vertex tuple exceeds the chart radius "
                    f"{radius}")
            self._varr = np.array([v.vec for v in self.vertices])
        else:
            arr = []
            for v in self.vertices:
                vec = v.vec if isinstance(v, UnitQuaternion) else \
                    np.asarray(v, dtype=float)
                arr.append(vec / np.linalg.norm(vec))
            self._varr = np.array(arr)
        self.codomain = "S3" if self._varr.shape[1] == 4 else "S2"

    def evaluate(self, bary):
        bary = np.atleast_2d(np.asarray(bary, dtype=float))
        if bary.shape[1] != self.degree + 1:
            raise ValueError(
                f"expected {self.degree + 1} barycentric coordinates")
        return self._recurse(self.degree, bary)

    def evaluate_cube(self, s):
        """Evaluate in iterated-cone cube coordinates (N, degree).

        Equivalent to composing ``evaluate`` with the cone map, but free
        of the cone division, hence smooth up to the cube boundary.
        """
        s = np.atleast_2d(np.asarray(s, dtype=float))
        if s.shape[1] != self.degree:
            raise ValueError(f"expected {self.degree} cube coordinates")
        out = np.broadcast_to(self._varr[0],
                              (s.shape[0], self._varr.shape[1])).copy()
        for k in range(1, self.degree + 1):
            tip = np.broadcast_to(self._varr[k], out.shape)
            if self.kind == "spherical":
                out = _slerp_batch(out, tip, s[:, k - 1])
            else:
                out = _chart_join_batch(out, tip, s[:, k - 1])
        return out

    def _recurse(self, n, bary):
        if n == 0:
            return np.broadcast_to(self._varr[0],
                                   (bary.shape[0], self._varr.shape[1])).copy()
        s = bary[:, n]
        rest = bary[:, :n]
        denom = 1.0 - s
        at_top = np.abs(denom) < 1e-14
        denom = np.where(at_top, 1.0, denom)
        inner = rest / denom[:, None]
        if np.any(at_top):
            inner[at_top] = np.eye(n)[0]
        base = self._recurse(n - 1, inner)
        tip = np.broadcast_to(self._varr[n], base.shape)
        if self.kind == "spherical":
            return _slerp_batch(base, tip, s)
        return _chart_join_batch(base, tip, s)

    def face(self, i):
        return GeodesicSimplex(face(i, self.vertices), self.kind,
                               radius=self.radius)

    def corner_vertices(self):
        return self.vertices


def build_simplex(vertices, kind, radius=CHART_RADIUS) -> GeodesicSimplex:
    """Construct the iterated-join simplex on the given vertex tuple."""
    return GeodesicSimplex(vertices, kind, radius=radius)


def straighten(f, radius=CHART_RADIUS) -> GeodesicSimplex:
    """Replace a parametrized simplex by the chart simplex on its vertices."""
    verts = f.corner_vertices()
    if not is_chart_small(verts, radius):
        raise DegenerateConfig("vertex tuple of f is not chart-small")
    return GeodesicSimplex(verts, "chart", radius=radius)


class PrismChain:
    """Signed (n+1)-simplices triangulating the homotopy from f to its
    straightening; exactly n+1 terms for a degree-n input."""

    def __init__(self, terms):
        self.terms = list(terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)


def prism_chain(f, radius=CHART_RADIUS) -> PrismChain:
    """Triangulated join homotopy between f and straighten(f).

    Term j (sign (-1)^j) is the (n+1)-simplex with prism vertices
    (v_0,0)...(v_j,0),(v_j,1)...(v_n,1), evaluated through the pointwise
    chart join from f to its straightening.
    """
    n = f.degree
    strf = straighten(f, radius=radius)

    def homotopy(u, t):
        a = f.evaluate(u)
        b = strf.evaluate(u)
        return _chart_join_batch(a, b, t)

    terms = []
    for j in range(n + 1):
        # rows: prism vertex k -> (base simplex vertex, time)
        vmat = np.zeros((n + 2, n + 1))
        tvec = np.zeros(n + 2)
        for k in range(n + 2):
            vmat[k, k if k <= j else k - 1] = 1.0
            tvec[k] = 0.0 if k <= j else 1.0

        def fn(bary, _vmat=vmat, _tvec=tvec):
            u = bary @ _vmat
            t = bary @ _tvec
            return homotopy(u, t)

        terms.append(((-1) ** j, ParametrizedMap(n + 1, fn)))
    return PrismChain(terms)
