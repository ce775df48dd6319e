import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from atfgerm.atf import (
    ATFDiagram,
    MutationMap,
    Node,
    check_dia_invariance,
    cp2_diagram,
    delta_m,
    diagram_for_triple,
    mutate_diagram,
    sample_rational_points,
    shear,
    shear_dual,
    shear_linear,
    triangle_normals,
)
from atfgerm.errors import CutNotThroughCenter, InvalidPath, NodeCollision, OutsidePolytope
from atfgerm.germ import Germ, germ_equivalent
from atfgerm.lattice import det2, dot, is_unimodular
from atfgerm.markov import path_to, triples_to_depth
from atfgerm.polytope import delta_cp2, dia_boundary, is_delzant_2d

THIRD = F(1, 3)
MUTATED = {(0, 1), (-1, -1), (1, -3)}

prim2 = st.tuples(st.integers(-5, 5), st.integers(-5, 5)).filter(lambda v: v != (0, 0))
rat = st.fractions(-3, 3, max_denominator=12)


def unimodular_equivalent(normals_a, normals_b):
    ga = Germ(THIRD, tuple(normals_a))
    gb = Germ(THIRD, tuple(normals_b))
    return germ_equivalent(ga, gb).equivalent


# -- shear -----------------------------------------------------------------------


def test_shear_examples():
    assert shear((0, 1), (2, 1)) == (2, 1)
    t = F(1, 7)
    assert shear((1, 1), (t, t)) == (t, t)
    assert shear((0, 1), (-2, 1)) == (-2, -1)


def test_shear_dual_examples():
    assert shear_dual((0, 1), (1, 0)) == (1, 0)
    assert shear_dual((1, 1), (-1, -1)) == (-3, 1)


@given(prim2, rat, rat)
def test_shear_identity_on_negative_half(w, x0, x1):
    x = (x0, x1)
    if det2(w, x) <= 0:
        assert shear(w, x) == x
    else:
        assert shear(w, x) == shear_linear(w, x)


@given(prim2)
def test_shear_linear_piece_has_determinant_one(w):
    cols = [shear_linear(w, e) for e in ((1, 0), (0, 1))]
    assert det2(cols[0], cols[1]) == 1


@given(prim2, st.tuples(st.integers(-9, 9), st.integers(-9, 9)), rat, rat)
def test_shear_dual_is_adjoint_and_unimodular(w, v, x0, x1):
    x = (x0, x1)
    assert dot(shear_linear(w, x), v) == dot(x, shear_dual(w, v))
    m = [[shear_dual(w, e)[i] for e in ((1, 0), (0, 1))] for i in range(2)]
    assert is_unimodular(m)


@given(prim2, rat, rat)
def test_mutation_map_halves_differ_by_linear_shear(w, x0, x1):
    x = (x0, x1)
    plus, minus = MutationMap(w, "+"), MutationMap(w, "-")
    assert shear_linear(w, minus(x)) == plus(x)


# -- diagrams --------------------------------------------------------------------


def test_node_validation():
    p = delta_cp2()
    with pytest.raises(CutNotThroughCenter):
        ATFDiagram(p, (Node((F(-1, 6), F(-1, 6)), (-1, -1)),))
    with pytest.raises(OutsidePolytope):
        ATFDiagram(p, (Node((F(-1, 2), F(-1, 2)), (1, 1)),))
    with pytest.raises(NodeCollision):
        ATFDiagram(p, (Node((F(-1, 6), F(-1, 6)), (1, 1)), Node((F(-1, 9), F(-1, 9)), (1, 1))))


def test_single_node_mutation_example():
    d = ATFDiagram(delta_cp2(), (Node((F(-1, 6), F(-1, 6)), (1, 1)),))
    d2, tau = mutate_diagram(d, 0)
    assert set(d2.polytope.normals) == MUTATED
    assert set(d2.polytope.offsets) == {THIRD}
    assert not is_delzant_2d(d2.polytope)
    assert check_dia_invariance(d, d2, tau, samples=200, seed=0).ok


def test_mutation_preserves_facets_offsets_and_distance():
    d = cp2_diagram()
    for k in range(3):
        d2, tau = mutate_diagram(d, k)
        assert len(d2.polytope.facets) == 3
        assert set(d2.polytope.offsets) == {THIRD}
        assert unimodular_equivalent(d2.polytope.normals, MUTATED)
        rep = check_dia_invariance(d, d2, tau, samples=1000, seed=0)
        assert rep.ok and rep.samples >= 1000


def test_center_distance_preserved():
    d = cp2_diagram()
    d2, tau = mutate_diagram(d, 0)
    assert tau((0, 0)) == (0, 0)
    assert dia_boundary((0, 0), d.polytope)[0] == THIRD
    assert dia_boundary((0, 0), d2.polytope)[0] == THIRD


def test_boundary_maps_to_boundary():
    d = cp2_diagram()
    d2, tau = mutate_diagram(d, 1)
    for v in d.vertices():
        assert dia_boundary(tau(v), d2.polytope)[0] == 0


def test_delta_m_examples():
    assert delta_m([]).polytope == delta_cp2()
    d = delta_m([3])
    assert unimodular_equivalent(d.polytope.normals, MUTATED)
    with pytest.raises(InvalidPath):
        delta_m([0])


def test_markov_triangles_to_depth_four():
    for node in triples_to_depth(4):
        d = diagram_for_triple(node.triple)
        (u, v, w), roots = triangle_normals(d)
        assert sorted(roots) == sorted(node.triple)
        assert set(d.polytope.offsets) == {THIRD}
        for (a, b), r in zip(((u, v), (v, w), (w, u)), roots):
            assert (a[0] - b[0]) % r == 0 and (a[1] - b[1]) % r == 0


def test_delta_m_path_independence():
    for node in triples_to_depth(4)[1:]:
        base = diagram_for_triple(node.triple).polytope.normals
        path = path_to(node.triple)
        for alt in ([1] + path[1:], [2] + path[1:], [3, 3] + path):
            other = delta_m(alt).polytope.normals
            assert unimodular_equivalent(base, other)


def test_sample_points_deterministic_and_inside():
    verts = delta_cp2()
    pts = sample_rational_points(cp2_diagram().vertices(), 100, 7)
    assert pts == sample_rational_points(cp2_diagram().vertices(), 100, 7)
    assert all(verts.contains(x) for x in pts)


def test_invariance_detects_wrong_target():
    d = cp2_diagram()
    d2, _ = mutate_diagram(d, 0)
    rep = check_dia_invariance(d, d2, MutationMap((1, 0)), samples=50, seed=1)
    assert not rep.ok


def test_invariance_along_random_walk():
    rng = random.Random(0)
    d = cp2_diagram()
    for _ in range(4):
        k = rng.randrange(3)
        d2, tau = mutate_diagram(d, k)
        assert check_dia_invariance(d, d2, tau, samples=100, seed=rng.randrange(1000)).ok
        d = d2
