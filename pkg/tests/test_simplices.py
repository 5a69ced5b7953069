import numpy as np
import pytest

from cocyclelab.errors import (AntipodalJoin, ChartExceeded, DegenerateConfig,
                               IndexOut)
from cocyclelab.groups import (QUAT_I, QUAT_ONE, LieVector, UnitQuaternion,
                               cyclic_embed, quat_exp)
from cocyclelab.simplices import (GeodesicSimplex, ParametrizedMap, all_faces,
                                  build_simplex, chart_join, distinct_hopf,
                                  face, in_open_hemisphere, is_chart_small,
                                  prism_chain, slerp_join, straighten)

rng = np.random.default_rng(7)


def random_quat():
    v = rng.normal(size=4)
    return UnitQuaternion(v / np.linalg.norm(v))


def small_quat(radius=0.12):
    v = rng.normal(size=3)
    v *= rng.uniform(0, radius) / np.linalg.norm(v)
    return quat_exp(LieVector("su2", v))


def test_face_drops_entry():
    assert face(1, ("a", "b", "c")) == ("a", "c")
    with pytest.raises(IndexOut):
        face(0, ("a",))
    with pytest.raises(IndexOut):
        face(3, ("a", "b", "c"))


def test_simplicial_identity():
    t = tuple(rng.integers(0, 100, size=5))
    for j in range(1, 5):
        for i in range(j):
            lhs = face(i, face(j, t))
            rhs = face(j - 1, face(i, t))
            assert lhs == rhs


def test_chart_small_predicate():
    g = random_quat()
    assert is_chart_small((g, g, g), radius=0.01)
    far = quat_exp(LieVector("su2", [0.9 * np.pi, 0, 0]))
    assert not is_chart_small((QUAT_ONE, far), radius=0.5)
    # left-translation invariance
    for _ in range(10):
        t = tuple(small_quat() for _ in range(3))
        h = random_quat()
        shifted = tuple(h * g for g in t)
        assert is_chart_small(t) == is_chart_small(shifted)


def test_open_hemisphere():
    assert in_open_hemisphere(list(np.eye(4)))
    x = rng.normal(size=4)
    x /= np.linalg.norm(x)
    assert not in_open_hemisphere([x, -x])
    assert in_open_hemisphere([x])
    # invariance under a common rotation
    pts = [v / np.linalg.norm(v) for v in rng.normal(size=(4, 4))]
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    assert in_open_hemisphere(pts) == in_open_hemisphere([q @ p for p in pts])


def test_distinct_hopf():
    assert distinct_hopf((QUAT_ONE, UnitQuaternion(0, 0, 1, 0)))
    th = rng.uniform(0, 2 * np.pi)
    same_fiber = UnitQuaternion(np.cos(th), np.sin(th), 0, 0)
    assert not distinct_hopf((QUAT_ONE, same_fiber))
    assert distinct_hopf((random_quat(),))


def test_slerp_join_endpoints_and_midpoint():
    x = np.eye(4)[0]
    y = np.eye(4)[1]
    assert np.allclose(slerp_join(x, y, 0.0), x)
    assert np.allclose(slerp_join(x, y, 1.0), y)
    assert np.allclose(slerp_join(x, y, 0.5), (x + y) / np.sqrt(2))
    with pytest.raises(AntipodalJoin):
        slerp_join(x, -x, 0.3)
    # stays on the sphere for many parameters
    a, b = (v / np.linalg.norm(v) for v in rng.normal(size=(2, 4)))
    for s in np.linspace(0, 1, 11):
        assert abs(np.linalg.norm(slerp_join(a, b, s)) - 1.0) < 1e-12


def test_chart_join_properties():
    x, y = small_quat(), small_quat()
    assert chart_join(x, x, 0.7).isclose(x, tol=1e-12)
    assert chart_join(x, y, 1.0).isclose(y, tol=1e-12)
    assert chart_join(x, y, 0.0).isclose(x, tol=1e-12)
    with pytest.raises(ChartExceeded):
        chart_join(QUAT_ONE, -QUAT_ONE, 0.5)
    # left equivariance
    for _ in range(20):
        g, x, y = random_quat(), small_quat(), small_quat()
        s = rng.uniform(0, 1)
        assert chart_join(g * x, g * y, s).isclose(
            g * chart_join(x, y, s), tol=1e-12)


def corner(n, i):
    e = np.zeros(n + 1)
    e[i] = 1.0
    return e


@pytest.mark.parametrize("kind", ["spherical", "chart"])
def test_simplex_corners_and_constant(kind):
    if kind == "spherical":
        verts = [v / np.linalg.norm(v) for v in
                 np.eye(4) + 0.1 * rng.normal(size=(4, 4))]
        sx = build_simplex(verts, kind)
        for i, v in enumerate(verts):
            assert np.allclose(sx.evaluate(corner(3, i))[0], v, atol=1e-12)
    else:
        verts = [small_quat() for _ in range(4)]
        sx = build_simplex(verts, kind)
        for i, v in enumerate(verts):
            assert np.allclose(sx.evaluate(corner(3, i))[0], v.vec,
                               atol=1e-12)
    g = verts[0]
    const = build_simplex([g, g, g], kind)
    pts = rng.dirichlet(np.ones(3), size=20)
    out = const.evaluate(pts)
    ref = g.vec if kind == "chart" else g
    assert np.abs(out - ref).max() < 1e-12


def test_face_restriction_matches_face_simplex():
    verts = [v / np.linalg.norm(v) for v in np.eye(4)]
    sx = build_simplex(verts, "spherical")
    for i in range(4):
        face_sx = sx.face(i)
        pts2 = rng.dirichlet(np.ones(3), size=100)
        bary3 = np.insert(pts2, i, 0.0, axis=1)
        assert np.abs(sx.evaluate(bary3)
                      - face_sx.evaluate(pts2)).max() < 1e-10


def test_face_restriction_random_chart_tuples():
    for _ in range(5):
        verts = [small_quat() for _ in range(4)]
        sx = build_simplex(verts, "chart")
        for i in range(4):
            pts2 = rng.dirichlet(np.ones(3), size=20)
            bary3 = np.insert(pts2, i, 0.0, axis=1)
            assert np.abs(sx.evaluate(bary3)
                          - sx.face(i).evaluate(pts2)).max() < 1e-10


def test_left_equivariance_of_chart_simplex():
    verts = [small_quat() for _ in range(4)]
    g = random_quat()
    sx = build_simplex(verts, "chart")
    gx = build_simplex([g * v for v in verts], "chart")
    pts = rng.dirichlet(np.ones(4), size=40)
    lhs = gx.evaluate(pts)
    rhs = sx.evaluate(pts)
    from cocyclelab.groups import _qmul
    rhs = _qmul(np.broadcast_to(g.vec, rhs.shape), rhs)
    assert np.abs(lhs - rhs).max() < 1e-10


def test_cube_and_barycentric_evaluations_agree():
    verts = [v / np.linalg.norm(v) for v in
             np.eye(4) + 0.2 * rng.normal(size=(4, 4))]
    sx = build_simplex(verts, "spherical")
    from cocyclelab.quadrature import cube_to_bary
    s = rng.uniform(0.05, 0.95, size=(30, 3))
    assert np.abs(sx.evaluate_cube(s)
                  - sx.evaluate(cube_to_bary(s))).max() < 1e-12


def test_build_simplex_guards():
    x = np.eye(4)[0]
    sx = build_simplex([x, -x, np.eye(4)[1], np.eye(4)[2]], "spherical")
    with pytest.raises(DegenerateConfig):
        sx.evaluate(rng.dirichlet(np.ones(4), size=5))
    far = quat_exp(LieVector("su2", [1.2, 0, 0]))
    with pytest.raises(DegenerateConfig):
        build_simplex([QUAT_ONE, far], "chart")


def test_straighten_idempotent_and_vertex_preserving():
    verts = [small_quat() for _ in range(3)]
    sx = build_simplex(verts, "chart")
    again = straighten(sx)
    pts = rng.dirichlet(np.ones(3), size=30)
    assert np.abs(sx.evaluate(pts) - again.evaluate(pts)).max() < 1e-12

    wig = ParametrizedMap(2, lambda b: sx.evaluate(b))
    st = straighten(wig)
    for i, v in enumerate(verts):
        assert np.allclose(st.evaluate(corner(2, i))[0], v.vec, atol=1e-12)

    g = small_quat()
    const = ParametrizedMap(
        2, lambda b: np.broadcast_to(g.vec, (b.shape[0], 4)).copy())
    st_const = straighten(const)
    assert np.abs(st_const.evaluate(pts) - g.vec).max() < 1e-12


def test_prism_term_count_and_signs():
    for n in (1, 2, 3):
        verts = [small_quat() for _ in range(n + 1)]
        sx = build_simplex(verts, "chart")
        chain = prism_chain(sx)
        assert len(chain) == n + 1
        signs = [s for s, _ in chain]
        assert signs == [(-1) ** j for j in range(n + 1)]
        for _, term in chain:
            assert term.degree == n + 1


def test_all_faces_signs():
    t = ("a", "b", "c")
    assert all_faces(t) == [(1, ("b", "c")), (-1, ("a", "c")),
                            (1, ("a", "b"))]
