from math import pi

import numpy as np
import pytest

from cocyclelab.contact import (ContactFunction, alpha_value, contact_bracket,
                                contact_cocycle, contact_field,
                                contact_pairing, dalpha_value, fiber_period,
                                pullback, reeb_derivative, reeb_field,
                                volume_density)
from cocyclelab.errors import NotReebInvariant
from cocyclelab.forms import DifferentialForm, sphere_integral
from cocyclelab.groups import _qmul, hopf_arr, hopf_jacobian
from cocyclelab.hamiltonian import (SphereFunction, hamiltonian_field,
                                    poisson, symplectic_cocycle)
from cocyclelab.quadrature import QuadratureSpec

rng = np.random.default_rng(23)
X, Y, Z = (SphereFunction.coordinate(n) for n in "xyz")
QUAD = QuadratureSpec(order=8, tol=1e-4)


def random_sphere_points(n=100):
    q = rng.normal(size=(n, 4))
    return q / np.linalg.norm(q, axis=1, keepdims=True)


def tangents_at(q):
    v = rng.normal(size=q.shape)
    return v - np.einsum("ni,ni->n", v, q)[:, None] * q


def test_reeb_field_identities():
    q = random_sphere_points()
    r = reeb_field()(q)
    assert np.abs(alpha_value(q, r) - 1.0).max() < 1e-12
    v = tangents_at(q)
    assert np.abs(dalpha_value(r, v)).max() < 1e-12


def test_fiber_period():
    assert abs(fiber_period() - 2.0 * pi) < 1e-9


def test_pullbacks_are_reeb_invariant():
    q = random_sphere_points()
    F = pullback(X * Y + 2 * Z)
    assert np.abs(reeb_derivative(F.evaluate, q)).max() < 1e-8


def test_contact_field_defining_identities():
    q = random_sphere_points()
    for f in (X, Y, X * Z):
        F = pullback(f)
        xf = contact_field(F)(q)
        assert np.abs(np.einsum("ni,ni->n", xf, q)).max() < 1e-12
        assert np.abs(alpha_value(q, xf) - F.evaluate(q)).max() < 1e-12
        v = tangents_at(q)
        jac = hopf_jacobian(q)
        df = np.einsum("ni,ni->n", f.gradient(hopf_arr(q)),
                       np.einsum("nkj,nj->nk", jac, v))
        assert np.abs(dalpha_value(xf, v) + df).max() < 1e-8


def test_constant_gives_reeb():
    q = random_sphere_points()
    one = pullback(SphereFunction.constant(1))
    assert np.abs(contact_field(one)(q) - reeb_field()(q)).max() < 1e-12


def test_pushforward_is_hamiltonian_field():
    q = random_sphere_points()
    for f in (X, Y, Z, X * Y):
        xf = contact_field(pullback(f))(q)
        push = np.einsum("nkj,nj->nk", hopf_jacobian(q), xf)
        assert np.abs(push - hamiltonian_field(f)(hopf_arr(q))).max() < 1e-7


def test_contact_bracket_matches_poisson():
    q = random_sphere_points()
    bc = contact_bracket(pullback(X), pullback(Y))
    assert bc.base == Z
    assert np.abs(bc.evaluate(q) - pullback(Z).evaluate(q)).max() < 1e-7
    # antisymmetry, and brackets with constants vanish
    assert contact_bracket(pullback(Y), pullback(X)).base == (-1) * Z
    const = pullback(SphereFunction.constant(2))
    assert contact_bracket(pullback(X), const).base.coeffs == {}


def test_bracket_agrees_with_dalpha_on_fields():
    q = random_sphere_points()
    F, G = pullback(X * Y), pullback(Z)
    lhs = contact_bracket(F, G).evaluate(q)
    rhs = dalpha_value(contact_field(F)(q), contact_field(G)(q))
    assert np.abs(lhs - rhs).max() < 1e-8


def test_volume_density_positive_on_oriented_frames():
    q = random_sphere_points(50)
    r = reeb_field()(q)
    # complete r to an oriented tangent frame by projecting coordinates
    good = 0
    for _ in range(20):
        v1, v2 = tangents_at(q), tangents_at(q)
        mu = volume_density(q, r, v1, v2)
        frame_det = np.linalg.det(np.stack([q, r, v1, v2], axis=1))
        same = np.sign(mu) == np.sign(frame_det)
        good += int(np.all(same))
    assert good == 20


def test_cocycle_hopf_reduction():
    b3 = contact_cocycle(pullback(X), pullback(Y), pullback(Z), QUAD)
    b2 = symplectic_cocycle(X, Y, Z, QuadratureSpec(order=10, tol=1e-6))
    assert abs(b3 - 2.0 * pi * b2) < 1e-4


def test_cocycle_antisymmetry():
    F, G, H = pullback(X), pullback(Y), pullback(Z)
    base = contact_cocycle(F, G, H, QUAD)
    assert abs(contact_cocycle(G, F, H, QUAD) + base) < 1e-6


def test_fiber_integration_identity():
    # integrating a pulled-back function against alpha ^ d(alpha) equals
    # 2*pi times the downstairs integral against the symplectic form
    from cocyclelab.hamiltonian import function_integral
    for f in (X * X, Z, X * Y + Z * Z):
        upstairs = contact_pairing(pullback(f),
                                   pullback(SphereFunction.constant(1)),
                                   QUAD)
        downstairs = function_integral(f, QuadratureSpec(order=10,
                                                         tol=1e-6)).value
        assert abs(upstairs - 2.0 * pi * downstairs) < 1e-5


def test_from_callable_guard_and_agreement():
    with pytest.raises(NotReebInvariant):
        ContactFunction.from_callable(lambda pts: pts[:, 0])
    numeric = ContactFunction.from_callable(
        lambda pts: hopf_arr(pts)[:, 2] ** 2)
    poly = pullback(Z * Z)
    q = random_sphere_points()
    assert np.abs(numeric.evaluate(q) - poly.evaluate(q)).max() < 1e-10
    assert np.abs(contact_field(numeric)(q)
                  - contact_field(poly)(q)).max() < 1e-6


def test_dalpha_is_pullback_of_symplectic_form():
    q = random_sphere_points(50)
    u, v = tangents_at(q), tangents_at(q)
    jac = hopf_jacobian(q)
    du = np.einsum("nkj,nj->nk", jac, u)
    dv = np.einsum("nkj,nj->nk", jac, v)
    pulled = 4.0 * np.einsum("ni,ni->n", hopf_arr(q), np.cross(du, dv))
    assert np.abs(dalpha_value(u, v) - pulled).max() < 1e-12
