"""Strict contact calculus on the unit 3-sphere.

The contact form is alpha_q(v) = <i q, v>; its Reeb field is q -> i q,
whose orbits are the Hopf fibers (period 2*pi), and d(alpha) is the
pullback of the symplectic form on the quotient sphere.  Functions pulled
back through the Hopf map have contact Hamiltonian fields equal to the
horizontal lift of the downstairs field plus the function times the Reeb
field; both ingredients are analytic here because the Hopf differential
is an explicit coisometry.
"""
from __future__ import annotations

import numpy as np

from .errors import NotReebInvariant
from .forms import DifferentialForm, sphere_integral
from .groups import _qmul, hopf_arr, hopf_jacobian
from .hamiltonian import SphereFunction, hamiltonian_field, poisson
from .quadrature import QuadratureSpec, gauss_legendre_circle

_I = np.array([0.0, 1.0, 0.0, 0.0])


def reeb_field():
    """The field q -> i q; alpha(R) = 1 and dalpha(R, .) = 0."""

    def field(points):
        p = np.atleast_2d(np.asarray(points, dtype=float))
        return _qmul(np.broadcast_to(_I, p.shape), p)

    return field


def alpha_value(points, tangents):
    """alpha_q(v) = <i q, v> on batches."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    v = np.atleast_2d(np.asarray(tangents, dtype=float))
    iq = _qmul(np.broadcast_to(_I, p.shape), p)
    return np.einsum("ni,ni->n", iq, v)


def dalpha_value(u, v):
    """d(alpha) = 2 (dw^dx + dy^dz) evaluated on two tangent batches."""
    u = np.atleast_2d(np.asarray(u, dtype=float))
    v = np.atleast_2d(np.asarray(v, dtype=float))
    return 2.0 * ((u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])
                  + (u[:, 2] * v[:, 3] - u[:, 3] * v[:, 2]))


def volume_density(points, t1, t2, t3):
    """mu = alpha ^ d(alpha) on three tangent batches."""
    return (alpha_value(points, t1) * dalpha_value(t2, t3)
            - alpha_value(points, t2) * dalpha_value(t1, t3)
            + alpha_value(points, t3) * dalpha_value(t1, t2))


class ContactFunction:
    """Reeb-invariant function on S^3, stored as a function on the
    quotient sphere pulled back through the Hopf map."""

    def __init__(self, base: SphereFunction):
        self.base = base

    @classmethod
    def from_callable(cls, fn, samples=64, seed=11, tol=1e-8):
        """Wrap a raw function on S^3 after checking Reeb invariance.

        The function must be constant on Hopf fibers; a seeded sample of
        fiber pairs is compared and NotReebInvariant raised on failure.
        The descended function is tabulated through an explicit section,
        with finite-difference gradients.
        """
        rng = np.random.default_rng(seed)
        q = rng.normal(size=(samples, 4))
        q /= np.linalg.norm(q, axis=1, keepdims=True)
        th = rng.uniform(0.0, 2.0 * np.pi, size=samples)
        u = np.stack([np.cos(th), np.sin(th), np.zeros(samples),
                      np.zeros(samples)], axis=1)
        moved = _qmul(u, q)
        if np.abs(fn(q) - fn(moved)).max() > tol:
            raise NotReebInvariant("function varies along a Hopf fiber")
        return cls(_NumericBase(fn))

    def evaluate(self, points):
        return self.base.evaluate(hopf_arr(points))

    def __repr__(self):
        return f"ContactFunction({self.base!r})"


class _NumericBase:
    """Function on the radius-1/2 sphere obtained from a fiber-invariant
    function upstairs, with finite-difference gradients."""

    def __init__(self, fn, h=1e-6):
        self._fn = fn
        self._h = h

    def evaluate(self, points):
        return self._fn(_section(points))

    def gradient(self, points):
        p = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.zeros_like(p)
        for k in range(3):
            dp = np.zeros(3)
            dp[k] = self._h
            # degree-0 homogeneous extension keeps the gradient tangential
            out[:, k] = (self._radial(p + dp) - self._radial(p - dp)) \
                / (2.0 * self._h)
        return out

    def _radial(self, points):
        p = np.atleast_2d(np.asarray(points, dtype=float))
        scaled = 0.5 * p / np.linalg.norm(p, axis=1, keepdims=True)
        return self.evaluate(scaled)


def _section(points):
    """A right inverse of the Hopf map away from the south pole."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    x, y, z = p[:, 0], p[:, 1], p[:, 2]
    r1 = np.sqrt(np.clip(0.5 + z, 1e-15, None))
    # z1 = r1 (real), z2 = (x + i y) / r1, with q = z1 + z2 j
    return np.stack([r1, np.zeros_like(r1), x / r1, y / r1], axis=1)


def pullback(f: SphereFunction) -> ContactFunction:
    """The invariant function on S^3 induced by one downstairs."""
    return ContactFunction(f)


def contact_field(f: ContactFunction):
    """Unique field X with alpha(X) = f and contraction of d(alpha) equal
    to -df: the horizontal lift of the downstairs Hamiltonian field plus
    f times the Reeb field."""
    base = f.base

    def field(points):
        q = np.atleast_2d(np.asarray(points, dtype=float))
        p = hopf_arr(q)
        jac = hopf_jacobian(q)
        if isinstance(base, SphereFunction):
            downstairs = hamiltonian_field(base)(p)
        else:
            downstairs = np.cross(p, base.gradient(p))
        lift = np.einsum("nkj,nk->nj", jac, downstairs)
        iq = _qmul(np.broadcast_to(_I, q.shape), q)
        return lift + base.evaluate(p)[:, None] * iq

    return field


def contact_bracket(f: ContactFunction, g: ContactFunction
                    ) -> ContactFunction:
    """{f, g} = d(alpha)(X_f, X_g); for pulled-back functions this is the
    pullback of the downstairs Poisson bracket."""
    if isinstance(f.base, SphereFunction) and isinstance(g.base,
                                                         SphereFunction):
        return ContactFunction(poisson(f.base, g.base))

    xf, xg = contact_field(f), contact_field(g)

    def fn(points):
        return dalpha_value(xf(points), xg(points))

    return ContactFunction.from_callable(fn)


def fiber_period(seed=5) -> float:
    """Line integral of alpha along one Hopf fiber through a seeded point."""
    rng = np.random.default_rng(seed)
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)

    def integrand(thetas):
        u = np.stack([np.cos(thetas), np.sin(thetas),
                      np.zeros_like(thetas), np.zeros_like(thetas)], axis=1)
        pts = _qmul(u, np.broadcast_to(q, u.shape))
        vel = _qmul(np.broadcast_to(_I, u.shape), pts)
        return alpha_value(pts, vel)

    return gauss_legendre_circle(integrand)


def contact_cocycle(f: ContactFunction, g: ContactFunction,
                    h: ContactFunction,
                    quad: QuadratureSpec | None = None) -> float:
    """(3/pi^3) * integral over S^3 of f {g, h} against alpha ^ d(alpha)."""
    quad = quad or QuadratureSpec(order=8, tol=1e-4)
    bracket = contact_bracket(g, h)

    def ev(p, t):
        return f.evaluate(p) * bracket.evaluate(p) * \
            volume_density(p, t[:, 0], t[:, 1], t[:, 2])

    res = sphere_integral(DifferentialForm(3, "S3", ev), "S3", quad)
    return 3.0 / np.pi ** 3 * res.value


def contact_pairing(f: ContactFunction, g: ContactFunction,
                    quad: QuadratureSpec | None = None) -> float:
    """<f, g> = integral of f*g against alpha ^ d(alpha)."""
    quad = quad or QuadratureSpec(order=8, tol=1e-4)

    def ev(p, t):
        return f.evaluate(p) * g.evaluate(p) * \
            volume_density(p, t[:, 0], t[:, 1], t[:, 2])

    return sphere_integral(DifferentialForm(3, "S3", ev), "S3", quad).value


def reeb_derivative(fn, points, h=1e-5):
    """Directional derivative along the Reeb field, by central differences
    along the fiber flow (which stays on the sphere)."""
    q = np.atleast_2d(np.asarray(points, dtype=float))
    up = np.broadcast_to(np.array([np.cos(h), np.sin(h), 0.0, 0.0]), q.shape)
    dn = np.broadcast_to(np.array([np.cos(h), -np.sin(h), 0.0, 0.0]), q.shape)
    return (fn(_qmul(up, q)) - fn(_qmul(dn, q))) / (2.0 * h)
