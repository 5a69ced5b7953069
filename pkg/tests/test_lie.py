from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from cocyclelab.cochains import HomogeneousCochain
from cocyclelab.errors import StepTooLarge
from cocyclelab.forms import DifferentialForm, mc3_form
from cocyclelab.groups import _qconj, _qmul, quat_log
from cocyclelab.lie import (LieAlgebraTable, MultilinearCochain, alternation,
                            cartan_cocycle, ce_differential,
                            cochain_derivative, derivation_residual,
                            form_at_identity)
from cocyclelab.quadrature import QuadratureSpec

rng = np.random.default_rng(17)


def random_alternating(dim, degree):
    raw = np.empty((dim,) * degree, dtype=object)
    for idx in product(range(dim), repeat=degree):
        raw[idx] = Fraction(int(rng.integers(-5, 6)))
    return MultilinearCochain(degree, dim, alternation(raw, degree))


def brute_force_ce(omega, algebra):
    # independent evaluation of the bracket-insertion sum
    n = omega.degree
    dim = algebra.dim
    out = np.empty((dim,) * (n + 1), dtype=object)
    for idx in product(range(dim), repeat=n + 1):
        total = Fraction(0)
        for a in range(n + 1):
            for b in range(a + 1, n + 1):
                rest = [idx[c] for c in range(n + 1) if c not in (a, b)]
                bracket = algebra.bracket_coeffs(idx[a], idx[b])
                val = sum(bracket[m] * omega.tensor[tuple([m] + rest)]
                          for m in range(dim))
                total += (-1) ** (a + b) * val
        out[idx] = total
    return out


def test_tables_have_exact_jacobi():
    for maker in (LieAlgebraTable.su2, LieAlgebraTable.so3,
                  LieAlgebraTable.so4):
        maker()  # construction validates antisymmetry and Jacobi
    with pytest.raises(ValueError):
        bad = [[[0, 0, 1], [0, 0, 0], [0, 0, 0]],
               [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
               [[0, 0, 0], [0, 0, 0], [0, 0, 0]]]
        LieAlgebraTable("bad", bad, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_su2_brackets_match_quaternions():
    su2 = LieAlgebraTable.su2()
    # [i, j] = 2k in the quaternion algebra
    assert su2.bracket_coeffs(0, 1) == [0, 0, 2]
    assert su2.bracket_coeffs(1, 2) == [2, 0, 0]


def test_ce_differential_matches_brute_force():
    so3 = LieAlgebraTable.so3()
    for degree in (1, 2):
        omega = random_alternating(3, degree)
        expected = brute_force_ce(omega, so3)
        got = ce_differential(omega, so3)
        assert all(got.tensor[idx] == expected[idx]
                   for idx in product(range(3), repeat=degree + 1))


def test_ce_squares_to_zero():
    so3 = LieAlgebraTable.so3()
    omega = random_alternating(3, 1)
    dd = ce_differential(ce_differential(omega, so3), so3)
    assert all(v == 0 for v in dd.tensor.flat)


def test_degree_zero_differential():
    so3 = LieAlgebraTable.so3()
    omega = MultilinearCochain(0, 3, np.array(Fraction(3), dtype=object))
    # degree-0 cochains are constants; the insertion sum is empty
    d = ce_differential(omega, so3)
    assert all(v == 0 for v in d.tensor.flat)


def test_cartan_cocycle_values_and_closedness():
    so3 = LieAlgebraTable.so3()
    phi = cartan_cocycle(so3)
    assert phi(0, 1, 2) == 1
    assert phi(1, 0, 2) == -1
    d = ce_differential(phi, so3)
    assert all(v == 0 for v in d.tensor.flat)
    # scaling the pairing scales the cocycle
    scaled = LieAlgebraTable(
        "so3", so3.structure,
        [[3 * so3.pair(i, j) for j in range(3)] for i in range(3)])
    assert cartan_cocycle(scaled)(0, 1, 2) == 3


def test_cartan_requires_ad_invariance():
    so3 = LieAlgebraTable.so3()
    lopsided = [[1, 0, 0], [0, 2, 0], [0, 0, 5]]
    with pytest.raises(ValueError):
        cartan_cocycle(LieAlgebraTable("so3", so3.structure, lopsided))


def test_derivative_of_zero_and_linearity():
    su2 = LieAlgebraTable.su2()
    zero = HomogeneousCochain(1, 0, lambda t: 0.0)
    assert cochain_derivative(zero, su2, 1).norm_max() == 0.0

    def smooth_a(t):
        return float(np.sin(quat_log(t[0].inverse() * t[1]).coeffs[0]))

    def smooth_b(t):
        v = quat_log(t[0].inverse() * t[1]).coeffs
        return float(v[1] + 0.5 * v[2] ** 2)

    fa = HomogeneousCochain(1, 0, smooth_a)
    fb = HomogeneousCochain(1, 0, smooth_b)
    combo = HomogeneousCochain(
        1, 0, lambda t: 2.0 * smooth_a(t) - 3.0 * smooth_b(t))
    da = cochain_derivative(fa, su2, 1, step=1e-3).tensor
    db = cochain_derivative(fb, su2, 1, step=1e-3).tensor
    dc = cochain_derivative(combo, su2, 1, step=1e-3).tensor
    assert np.abs(dc - (2.0 * da - 3.0 * db)).max() < 1e-8


def test_derivative_of_coordinate_cochain():
    su2 = LieAlgebraTable.su2()
    f = HomogeneousCochain(
        1, 0, lambda t: quat_log(t[0].inverse() * t[1]).coeffs[0])
    d = cochain_derivative(f, su2, 1, step=1e-3)
    assert np.abs(d.tensor - np.array([1.0, 0.0, 0.0])).max() < 1e-7


def test_step_too_large():
    su2 = LieAlgebraTable.su2()
    from cocyclelab.cochains import integrated_cochain
    cochain = integrated_cochain(mc3_form(), "chart", 0,
                                 quad=QuadratureSpec(order=3, tol=1e-2))
    with pytest.raises(StepTooLarge):
        cochain_derivative(cochain, su2, 3, step=0.5)


def test_basis_permutation_symmetry():
    # permuting the input basis indices permutes the tensor with sign
    su2 = LieAlgebraTable.su2()
    from cocyclelab.cochains import integrated_cochain
    cochain = integrated_cochain(mc3_form(), "chart", 0,
                                 quad=QuadratureSpec(order=3, tol=1e-2))
    d = cochain_derivative(cochain, su2, 3, step=5e-2)
    assert abs(d.tensor[0, 1, 2] + d.tensor[1, 0, 2]) < 1e-9
    assert abs(d.tensor[0, 1, 2] - d.tensor[1, 2, 0]) < 1e-9


def test_derivation_recovers_invariant_covector():
    def covector(p, t):
        return _qmul(_qconj(p), t[:, 0])[:, 1]

    cov = DifferentialForm(1, "SU2", covector)
    res = derivation_residual(cov, 1, step=1e-3,
                              quad=QuadratureSpec(order=8, tol=1e-2))
    assert res <= 1e-4


def test_derivation_recovers_mc3():
    res = derivation_residual(mc3_form(), 3, step=5e-2,
                              quad=QuadratureSpec(order=4, tol=1e-2))
    assert res <= 5e-2


def test_zero_form_residual():
    zero = DifferentialForm(3, "SU2", lambda p, t: np.zeros(p.shape[0]))
    res = derivation_residual(zero, 3, step=5e-2,
                              quad=QuadratureSpec(order=3, tol=1e-2))
    assert res < 1e-9


def test_form_at_identity_mc3():
    tensor = form_at_identity(mc3_form(), 3)
    assert abs(tensor[0, 1, 2] + 1.0 / (2.0 * np.pi ** 2)) < 1e-12
    assert abs(tensor[1, 0, 2] - 1.0 / (2.0 * np.pi ** 2)) < 1e-12
