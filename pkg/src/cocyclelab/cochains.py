"""Homogeneous cochain calculus on group tuples.

A homogeneous cochain assigns a number mod a lattice to (n+1)-tuples of
group elements, subject to a domain guard.  The geometric cochains
integrate an invariant form over the iterated-join simplex attached to a
tuple; finite-group cochains carry exact Fraction values.
"""
from __future__ import annotations

import numpy as np

from .errors import BadOrder, BadReps, DomainGuard, NotNormal
from .forms import DifferentialForm, pullback_integral, sphere_integral, \
    vol_form
from .groups import (QUAT_ONE, Rotation, UnitQuaternion, _qmul,
                     apply_rotation)
from .quadrature import QuadratureSpec
from .simplices import (GeodesicSimplex, all_faces, in_open_hemisphere,
                        is_chart_small)


def reduce_mod(value, lattice):
    """Representative of ``value`` in [0, lattice); lattice 0 means none."""
    if lattice == 0:
        return value
    return value % lattice


def circle_distance(a, b, lattice=1.0):
    """Distance between a and b on the circle R / lattice*Z."""
    if lattice == 0:
        return abs(a - b)
    d = (a - b) % lattice
    return min(d, lattice - d)


class HomogeneousCochain:
    """Function on (n+1)-tuples of group elements, valued in R mod lattice.

    ``evaluator(t)`` may return a number or a (value, error_estimate)
    pair; ``guard(t)`` decides which tuples are admissible.
    """

    def __init__(self, degree, lattice, evaluator, guard=None, label=""):
        self.degree = degree
        self.lattice = lattice
        self._evaluator = evaluator
        self._guard = guard
        self.label = label

    def admissible(self, t):
        return True if self._guard is None else bool(self._guard(tuple(t)))

    def with_error(self, t):
        """Reduced value together with an accumulated error estimate."""
        t = tuple(t)
        if len(t) != self.degree + 1:
            raise ValueError(
                f"degree-{self.degree} cochain takes {self.degree + 1}-tuples")
        if not self.admissible(t):
            raise DomainGuard(
                f"tuple outside the domain of cochain {self.label!r}")
        out = self._evaluator(t)
        if isinstance(out, tuple):
            value, est = out
        else:
            value, est = out, 0.0
        return reduce_mod(value, self.lattice), est

    def __call__(self, t):
        return self.with_error(t)[0]


def coboundary(f: HomogeneousCochain) -> HomogeneousCochain:
    """Alternating face sum: (df)(t) = sum_i (-1)^i f(d_i t)."""

    def guard(t):
        return all(f.admissible(face_t) for _, face_t in all_faces(t))

    def evaluator(t):
        total, est = 0, 0.0  # int start keeps Fraction values exact
        for sign, face_t in all_faces(t):
            v, e = f.with_error(face_t)
            total = total + sign * v
            est += e
        return total, est

    return HomogeneousCochain(f.degree + 1, f.lattice, evaluator,
                              guard=guard, label=f"d({f.label})")


def generic_rotation(seed=0x5EED) -> Rotation:
    """Fixed pseudorandom element of SO(4), used to move the base point of
    the evaluation map off degenerate configurations."""
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return Rotation(q)


def integrated_cochain(form: DifferentialForm, kind: str, lattice,
                       base_point: UnitQuaternion = QUAT_ONE,
                       quad: QuadratureSpec | None = None,
                       radius=None) -> HomogeneousCochain:
    """Cochain t -> integral of the form over the simplex filled on t.

    ``kind`` is "spherical" (tuples of 4x4 rotations, projected to the
    sphere through the base point, guarded by the open-hemisphere test) or
    "chart" (tuples in SU(2), guarded by chart-smallness).
    """
    quad = quad or QuadratureSpec()
    if kind == "spherical":

        def project(t):
            return [apply_rotation(g, base_point) for g in t]

        def guard(t):
            return in_open_hemisphere([p.vec for p in project(t)])

        def evaluator(t):
            simplex = GeodesicSimplex(project(t), "spherical")
            res = pullback_integral(form, simplex, quad)
            return res.value, res.error_estimate

        label = "spherical"
    elif kind == "chart":
        from .groups import CHART_RADIUS
        rad = CHART_RADIUS if radius is None else radius

        def guard(t):
            return is_chart_small(t, rad)

        def evaluator(t):
            simplex = GeodesicSimplex(t, "chart", radius=rad)
            res = pullback_integral(form, simplex, quad)
            return res.value, res.error_estimate

        label = "chart"
    else:
        raise ValueError(f"unknown cochain kind {kind!r}")
    return HomogeneousCochain(form.degree, lattice, evaluator, guard=guard,
                              label=f"{label}({form.ambient})")


def cocycle_defect(f: HomogeneousCochain, t, with_error=False):
    """Value of the coboundary of a degree-3 cochain on a 5-tuple."""
    if f.degree != 3:
        raise ValueError("cocycle_defect expects a degree-3 cochain")
    if len(tuple(t)) != 5:
        raise ValueError("cocycle_defect expects a 5-tuple")
    value, est = coboundary(f).with_error(t)
    return (value, est) if with_error else value


class HomogeneousChain:
    """Finitely supported integer combination of same-length tuples."""

    def __init__(self, terms=()):
        self.terms = {}
        for coeff, t in terms:
            self.add(coeff, t)

    def add(self, coeff, t):
        t = tuple(t)
        c = self.terms.get(t, 0) + coeff
        if c == 0:
            self.terms.pop(t, None)
        else:
            self.terms[t] = c
        return self

    def items(self):
        return sorted(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def boundary(self):
        out = HomogeneousChain()
        for t, c in self.terms.items():
            for sign, face_t in all_faces(t):
                out.add(sign * c, face_t)
        return out

    def translated(self, shift, op):
        """Apply ``op(shift, entry)`` to every entry of every tuple."""
        out = HomogeneousChain()
        for t, c in self.terms.items():
            out.add(c, tuple(op(shift, g) for g in t))
        return out


class CyclicCycle:
    """The degree-3 chain sum_{i=1..m} (0, 1, i, i+1) with entries mod m.

    Its boundary vanishes after normalizing each face tuple to start at 0
    (the coinvariant reduction for the additive group Z/m).
    """

    def __init__(self, m: int):
        if m < 2:
            raise BadOrder(f"cyclic order must be >= 2, got {m}")
        self.m = m
        self.chain = HomogeneousChain(
            (1, (0, 1, i % m, (i + 1) % m)) for i in range(1, m + 1))

    def boundary_coinvariant(self) -> HomogeneousChain:
        out = HomogeneousChain()
        m = self.m
        for t, c in self.chain.boundary().terms.items():
            out.add(c, tuple((g - t[0]) % m for g in t))
        return out


def cyclic_cycle(m: int) -> CyclicCycle:
    return CyclicCycle(m)


def kronecker_pair(f: HomogeneousCochain, chain, embed=None,
                   with_error=False):
    """Evaluation pairing sum_t coeff(t) * f(embed(t)).

    ``chain`` is a HomogeneousChain or CyclicCycle; ``embed`` maps a tuple
    entry to a group element in the domain of f.
    """
    terms = chain.chain.items() if isinstance(chain, CyclicCycle) \
        else chain.items()
    total, est = 0, 0.0
    for t, coeff in terms:
        emb = t if embed is None else tuple(embed(a) for a in t)
        try:
            v, e = f.with_error(emb)
        except DomainGuard as exc:
            raise DomainGuard(f"inadmissible tuple {t} in pairing") from exc
        total = total + coeff * v
        est += abs(coeff) * e
    total = reduce_mod(total, f.lattice)
    return (total, est) if with_error else total


def transfer(phi: HomogeneousCochain, gamma, subgroup, reps
             ) -> HomogeneousCochain:
    """Corestriction of a cochain on a finite-index normal subgroup.

    ``gamma`` is a finite group table, ``subgroup`` a list of its element
    indices forming a normal subgroup, ``reps`` right-coset
    representatives containing the identity.  The result restricted to
    subgroup tuples equals index * phi for conjugation-invariant phi.
    """
    sub = set(subgroup)
    if gamma.identity not in sub:
        raise NotNormal("subgroup must contain the identity")
    for g in sub:
        if gamma.inv(g) not in sub:
            raise NotNormal(f"inverse of {g} leaves the subgroup")
        for h in sub:
            if gamma.mul(g, h) not in sub:
                raise NotNormal(f"product {g}*{h} leaves the subgroup")
        for x in gamma.elements:
            if gamma.mul(gamma.mul(x, g), gamma.inv(x)) not in sub:
                raise NotNormal(f"conjugate of {g} by {x} leaves the subgroup")
    if gamma.identity not in reps:
        raise BadReps("representatives must contain the identity")
    rep_of = {}
    for x in gamma.elements:
        hits = [t for t in reps if gamma.mul(x, gamma.inv(t)) in sub]
        if len(hits) != 1:
            raise BadReps(f"element {x} lies in {len(hits)} cosets of reps")
        rep_of[x] = hits[0]

    def evaluator(t):
        total, est = 0, 0.0
        for s in reps:
            arg = []
            for g in t:
                sg = gamma.mul(s, g)
                arg.append(gamma.mul(sg, gamma.inv(rep_of[sg])))
            v, e = phi.with_error(tuple(arg))
            total = total + v
            est += e
        return total, est

    return HomogeneousCochain(phi.degree, phi.lattice, evaluator,
                              label=f"transfer({phi.label})")


def conjugate_point_map(base: UnitQuaternion = QUAT_ONE):
    """Self-map of S^3 sending q to q * base * q^{-1} (null-homotopic)."""
    b = base.vec

    def fn(x):
        return _qmul(_qmul(x, np.broadcast_to(b, x.shape)),
                     x * np.array([1.0, -1.0, -1.0, -1.0]))

    return fn


def twisted_square_map(base: UnitQuaternion = QUAT_ONE):
    """Self-map of S^3 sending q to q * base * q (mapping degree 2)."""
    b = base.vec

    def fn(x):
        return _qmul(_qmul(x, np.broadcast_to(b, x.shape)), x)

    return fn


def degree_of_map(map_fn, quad: QuadratureSpec | None = None):
    """Mapping degree of a smooth map SU(2) -> S^3, as the integral of the
    pulled-back normalized volume form."""
    quad = quad or QuadratureSpec(order=10, tol=1e-4)
    res = sphere_integral(vol_form("S3", 1.0), "S3", quad, compose=map_fn)
    return res.value
