import json
from itertools import product

import numpy as np
import pytest

from cocyclelab.cochains import HomogeneousChain
from cocyclelab.errors import (NoCommonApex, NotWellConfigured,
                               KernelObstruction, PredicateNotFaceClosed)
from cocyclelab.finite import (FiniteGroupTable, brute_force_free_rank,
                               build_complex, build_retraction, cone_fill,
                               extend_cocycle, homology, homology_report,
                               homology_report_json)
from cocyclelab.simplices import all_faces
from cocyclelab.snf import (SmithSolver, diagonal, rank, rational_rank,
                            smith_normal_form)

rng = np.random.default_rng(31)


def test_snf_against_rational_rank_oracle():
    for _ in range(60):
        m, n = rng.integers(1, 8, size=2)
        a = rng.integers(-6, 7, size=(m, n)).tolist()
        u, s, v = smith_normal_form(a)
        ua = [[sum(u[i][k] * a[k][j] for k in range(m)) for j in range(n)]
              for i in range(m)]
        uav = [[sum(ua[i][k] * v[k][j] for k in range(n)) for j in range(n)]
               for i in range(m)]
        assert uav == s
        d = diagonal(s)
        assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
        assert rank(a) == rational_rank(a)


def test_snf_solver_roundtrip_and_kernel():
    for _ in range(40):
        m, n = rng.integers(1, 7, size=2)
        a = rng.integers(-5, 6, size=(m, n)).tolist()
        solver = SmithSolver(a)
        x = rng.integers(-4, 5, size=n).tolist()
        b = [sum(a[i][j] * x[j] for j in range(n)) for i in range(m)]
        x2 = solver.solve(b)
        assert x2 is not None
        assert [sum(a[i][j] * x2[j] for j in range(n))
                for i in range(m)] == b
        for k in solver.kernel_basis():
            assert all(sum(a[i][j] * k[j] for j in range(n)) == 0
                       for i in range(m))


def test_group_table_validation():
    z6 = FiniteGroupTable.cyclic(6)
    assert z6.identity == 0 and z6.inv(2) == 4
    q8 = FiniteGroupTable.quaternion8()
    assert q8.order == 8
    with pytest.raises(ValueError):
        FiniteGroupTable([[0, 1], [1, 1]])  # no inverse row


def test_generator_counts():
    c = build_complex(FiniteGroupTable.cyclic(5), "conf-distinct", 3)
    # falling factorials 5, 5*4, 5*4*3, 5*4*3*2
    assert c.generator_counts() == [5, 20, 60, 120]
    a = build_complex(FiniteGroupTable.cyclic(2), "all-tuples", 2)
    assert a.generator_counts() == [2, 4, 8]
    tiny = build_complex(FiniteGroupTable.cyclic(2), "conf-distinct", 2)
    assert tiny.generator_counts()[2] == 0


def test_boundary_squares_to_zero():
    c = build_complex(FiniteGroupTable.cyclic(5), "conf-distinct", 3)
    for n in (2, 3):
        a = c.boundaries[n - 1]
        b = c.boundaries[n]
        for j in range(len(b[0])):
            col = [b[i][j] for i in range(len(b))]
            out = [sum(a[i][k] * col[k] for k in range(len(col)))
                   for i in range(len(a))]
            assert all(x == 0 for x in out)


def test_conf_z5_homology():
    c = build_complex(FiniteGroupTable.cyclic(5), "conf-distinct", 3)
    h0, h1, h2 = (homology(c, n) for n in (0, 1, 2))
    assert (h0.free_rank, h0.torsion) == (1, ())
    assert h1.is_trivial() and h2.is_trivial()
    for n in (0, 1, 2):
        assert homology(c, n).free_rank == brute_force_free_rank(c, n)


def test_all_tuples_acyclic():
    for m in (2, 3):
        c = build_complex(FiniteGroupTable.cyclic(m), "all-tuples", 3)
        assert homology(c, 0).free_rank == 1
        assert homology(c, 1).is_trivial()
        assert homology(c, 2).is_trivial()


def test_distinct_hopf_on_quaternion_group():
    q8 = FiniteGroupTable.quaternion8()
    c = build_complex(q8, "distinct-hopf", 2)
    # hopf images split Q8 into two fibers of four elements each
    assert c.generator_counts()[0] == 8
    assert c.generator_counts()[1] == 32
    assert c.generator_counts()[2] == 0
    assert homology(c, 0).free_rank == 1


def test_distinct_hopf_on_cyclic_is_not_well_configured():
    # a cyclic subgroup lies in a single fiber: no admissible pairs at all
    c = build_complex(FiniteGroupTable.cyclic(4), "distinct-hopf", 2)
    assert c.generator_counts()[1] == 0
    with pytest.raises(NotWellConfigured):
        build_retraction(c)


def test_custom_predicate_face_closure_error():
    def not_closed(t):
        return len(t) != 2  # pairs are banned, triples admitted

    with pytest.raises(PredicateNotFaceClosed):
        build_complex(FiniteGroupTable.cyclic(3), not_closed, 2)


def test_cone_fill_boundary_identity():
    z7 = FiniteGroupTable.cyclic(7)
    c = build_complex(z7, "conf-distinct", 2)
    cycle = HomogeneousChain([(1, (0, 1)), (1, (1, 2)), (1, (2, 0))])
    tau = cone_fill(c, cycle, 5)
    assert len(tau) == 3
    bd = tau.boundary()
    assert bd.terms == cycle.terms
    with pytest.raises(NoCommonApex):
        cone_fill(c, cycle, 2)
    assert len(cone_fill(c, HomogeneousChain(), 3)) == 0
    with pytest.raises(ValueError):
        cone_fill(c, HomogeneousChain([(1, (0, 1)), (1, (1, 2))]), 5)


def test_retraction_identities():
    c = build_complex(FiniteGroupTable.cyclic(5), "conf-distinct", 3)
    mats = build_retraction(c)  # verification happens inside
    assert len(mats) == 4
    # r_0 is the identity
    assert mats[0] == [[int(i == j) for j in range(5)] for i in range(5)]
    # spot check: the identity columns of r_3 on admissible tuples
    idx = {t: j for j, t in enumerate(product(range(5), repeat=4))}
    for i, t in enumerate(c.generators[3][:10]):
        col = [mats[3][k][idx[t]] for k in range(len(c.generators[3]))]
        assert col == [int(k == i) for k in range(len(c.generators[3]))]


def test_extension_has_vanishing_coboundary():
    c = build_complex(FiniteGroupTable.cyclic(5), "conf-distinct", 3)
    mats = build_retraction(c)
    g_vals = [int(rng.integers(-3, 4)) for _ in c.generators[2]]
    bd3 = c.boundaries[3]
    f_vals = [sum(g_vals[i] * bd3[i][j] for i in range(len(g_vals)))
              for j in range(len(c.generators[3]))]
    assert any(f_vals)
    cocycle = extend_cocycle(c, f_vals, retraction=mats)
    # extension agrees with the input on admissible tuples
    for j, t in enumerate(c.generators[3][:20]):
        assert cocycle(t) == f_vals[j]
    for t in product(range(5), repeat=5):
        assert sum(s * cocycle(ft) for s, ft in all_faces(t)) == 0


def test_extension_zero_cochain():
    c = build_complex(FiniteGroupTable.cyclic(3), "all-tuples", 2)
    mats = build_retraction(c)
    cocycle = extend_cocycle(c, [0] * len(c.generators[2]), retraction=mats)
    assert cocycle((0, 1, 2)) == 0


def test_extension_of_a_pulled_back_coboundary():
    # when the input values are g composed with the top boundary, the
    # extension equals the coboundary of g composed with the chain map
    c = build_complex(FiniteGroupTable.cyclic(5), "conf-distinct", 3)
    mats = build_retraction(c)
    g_vals = [int(rng.integers(-2, 3)) for _ in c.generators[2]]
    bd3 = c.boundaries[3]
    f_vals = [sum(g_vals[i] * bd3[i][j] for i in range(len(g_vals)))
              for j in range(len(c.generators[3]))]
    cocycle = extend_cocycle(c, f_vals, retraction=mats)
    idx2 = {t: j for j, t in enumerate(product(range(5), repeat=3))}

    def g_through_r(t):
        col = idx2[t]
        return sum(mats[2][i][col] * g_vals[i]
                   for i in range(len(g_vals)))

    for t in list(product(range(5), repeat=4))[::7]:
        expected = sum(s * g_through_r(ft) for s, ft in all_faces(t))
        assert cocycle(t) == expected


def test_extension_kernel_obstruction():
    c = build_complex(FiniteGroupTable.cyclic(5), "conf-distinct", 3)
    solver = c.solver(3)
    kvec = solver.kernel_basis()[0]
    # a functional that sees the kernel vector
    values = [int(v) for v in kvec]
    with pytest.raises(KernelObstruction):
        extend_cocycle(c, values, retraction=None)


def test_homology_report_serializes():
    c = build_complex(FiniteGroupTable.cyclic(5), "conf-distinct", 3)
    report = homology_report(c)
    assert report["homology"]["0"] == {"rank": 1, "torsion": []}
    assert report["generators"] == [5, 20, 60, 120]
    parsed = json.loads(homology_report_json(c))
    assert parsed == json.loads(json.dumps(report))
