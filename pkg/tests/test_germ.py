import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atfgerm.atf import diagram_for_triple
from atfgerm.errors import TailTooSmall
from atfgerm.germ import (
    REMARK_DISCREPANCY_FLAG,
    AffineFunctional,
    Germ,
    Piece,
    PiecewiseMin,
    extract_germ,
    germ_equivalent,
    germ_invariants,
    germ_product_torus,
    germ_theta,
    germ_theta_product,
    germ_toric_fibre,
    germ_upsilon,
    pairwise_indices,
    triple_indices,
    upsilon_versal_pieces,
)
from atfgerm.lattice import matvec, random_unimodular, transpose
from atfgerm.markov import triples_to_depth
from atfgerm.polytope import RationalPolytope, delta_cp2, dia_boundary
from atfgerm.reduction import WALL, UpsilonParams, versal_to_product

THIRD = F(1, 3)
E = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
MUTATED = [(0, 1), (-1, -1), (1, -3)]

tiny = st.fractions(-1, 1, max_denominator=20).map(lambda x: x / 1000)


def upsilon(k, a1, a2):
    return germ_upsilon(UpsilonParams(k, a1, a2))


# -- generators ------------------------------------------------------------------


def test_product_torus_examples():
    assert germ_product_torus((2, 1, 1)) == Germ(1, (E[1], E[2]))
    assert germ_product_torus((1, 1, 1)) == Germ(1, tuple(E))
    assert germ_product_torus((1, 2, 3)) == Germ(1, (E[0],))


def test_toric_fibre_examples():
    g = germ_toric_fibre(delta_cp2(), (0, 0))
    assert g == Germ(THIRD, ((1, 0), (0, 1), (-1, -1)))
    octant = RationalPolytope.from_facets(E, [0, 0, 0])
    assert germ_toric_fibre(octant, (3, 1, 2)) == Germ(1, ((0, 1, 0),))
    d = diagram_for_triple((1, 1, 2))
    g = germ_toric_fibre(d.polytope, (0, 0))
    assert g.constant == THIRD
    assert germ_equivalent(g, Germ(THIRD, tuple(MUTATED))).equivalent


@settings(max_examples=60)
@given(tiny, tiny)
def test_toric_fibre_germ_matches_boundary_distance(b1, b2):
    # the germ is exact near the base point
    for x in ((0, 0), (F(1, 9), F(-1, 9)), (F(1, 6), F(-1, 12))):
        g = germ_toric_fibre(delta_cp2(), x)
        assert g((b1, b2)) == dia_boundary((x[0] + b1, x[1] + b2), delta_cp2())[0]


def test_upsilon_examples():
    assert upsilon(2, 3, 1) == Germ(1, ((1, 2, -2), (1, 0, -2), (0, 0, 1)))
    assert upsilon(2, F(5, 2), 1) == Germ(F(1, 2), ((1, 2, -2), (1, 0, -2)))
    assert upsilon(2, 5, 1) == Germ(1, ((0, 0, 1),))


@settings(max_examples=80)
@given(st.sampled_from([(2, 3, 1), (2, F(5, 2), 1), (2, 5, 1), (5, 6, 1), (3, F(7, 2), 1)]), tiny, tiny, tiny)
def test_upsilon_germ_matches_versal_minimum(params, b1, b2, b3):
    p = UpsilonParams(*params)
    out = versal_to_product(p, (b1, b2, b3))
    if out is WALL:
        return
    assert germ_upsilon(p)((b1, b2, b3)) == min(out)


def test_theta_examples():
    g = germ_theta([(1, 0), (0, 1), (-1, -1)], 1)
    assert g == Germ(THIRD, ((1, 0, 1), (0, 1, 1), (-1, -1, 1)))
    g = germ_theta(MUTATED, 3)
    assert g == Germ(1, ((0, 1, 1), (-1, -1, 1), (1, -3, 1)))
    assert pairwise_indices(g) == [1, 1, 2]


def test_theta_cone_mode():
    g = germ_theta([(1, 0), (0, 1), (-1, -1)], 1, mode="cone")
    assert g == Germ(1, ((3, 0, 1), (0, 3, 1), (-3, -3, 1)))


def test_theta_product_examples():
    n = [(1, 0), (0, 1), (-1, -1)]
    g = germ_theta_product(n, 1, (THIRD,))
    assert g == Germ(THIRD, ((1, 0, 1, 0), (0, 1, 1, 0), (-1, -1, 1, 0), (0, 0, 0, 1)))
    assert germ_theta_product(n, 1, (1,)) == Germ(THIRD, ((1, 0, 1, 0), (0, 1, 1, 0), (-1, -1, 1, 0)))
    with pytest.raises(TailTooSmall):
        germ_theta_product(n, 1, (F(1, 4),))


# -- extraction --------------------------------------------------------------------


def test_extract_single_functional():
    pw = PiecewiseMin((Piece((AffineFunctional(2, (1, -1)),)),))
    assert extract_germ(pw) == Germ(2, ((1, -1),))


def test_extract_drops_larger_constants_and_dominated():
    piece = Piece((AffineFunctional(1, (1, 0)), AffineFunctional(1, (1, 1)), AffineFunctional(2, (0, 1))), coord=1)
    assert extract_germ(PiecewiseMin((piece,))) == Germ(1, ((1, 0),))


@pytest.mark.parametrize("k", [2, 3, 5])
@pytest.mark.parametrize("gap", [F(1, 2), 1, 3])
def test_extract_upsilon_all_regimes(k, gap):
    a2 = F(1)
    p = UpsilonParams(k, k * a2 + gap, a2)
    assert extract_germ(upsilon_versal_pieces(p)) == germ_upsilon(p)


# -- invariants ----------------------------------------------------------------------


def test_invariant_examples():
    g = upsilon(2, 3, 1)
    assert pairwise_indices(g) == [1, 1, 2]
    assert triple_indices(g) == [2]
    t = germ_theta(MUTATED, 3)
    assert pairwise_indices(t) == [1, 1, 2]
    assert triple_indices(t) == [6]
    p = germ_product_torus((1, 1, 1))
    assert pairwise_indices(p) == [1, 1, 1]
    assert triple_indices(p) == [1]


def sample_germs():
    out = [upsilon(2, 3, 1), upsilon(3, 4, 1), upsilon(2, F(5, 2), 1), germ_product_torus((1, 1, 1))]
    for node in triples_to_depth(2):
        normals = diagram_for_triple(node.triple).polytope.normals
        out.append(germ_theta(normals, 3, triple=node.triple))
    return out


def test_invariants_unchanged_under_unimodular_action():
    rng = random.Random(0)
    for g in sample_germs():
        base = germ_invariants(g)
        for _ in range(100):
            phi = random_unimodular(3, rng)
            h = g.transformed(phi)
            assert germ_invariants(h) == base
            cmp = germ_equivalent(g, h)
            assert cmp.equivalent
            assert sorted(matvec(cmp.witness, v) for v in g.vectors) == sorted(h.vectors)


def test_transformed_germ_is_reparametrization():
    rng = random.Random(1)
    g = upsilon(2, 3, 1)
    for _ in range(20):
        phi = random_unimodular(3, rng)
        b = [F(rng.randint(-9, 9), 7) for _ in range(3)]
        assert g.transformed(phi)(b) == g(matvec(transpose(phi), b))


def test_equivalence_examples():
    g = upsilon(2, 3, 1)
    assert germ_equivalent(g, g).equivalent
    cmp = germ_equivalent(g, upsilon(3, 4, 1))
    assert cmp.equivalent is False
    assert cmp.invariant == "pairwise_index"
    assert (cmp.left, cmp.right) == ([1, 1, 2], [1, 1, 3])


def test_discrepancy_flag():
    cmp = germ_equivalent(upsilon(2, 3, 1), germ_theta(MUTATED, 3))
    assert cmp.equivalent is False
    assert cmp.invariant == "triple_index"
    assert (cmp.left, cmp.right) == ([2], [6])
    assert REMARK_DISCREPANCY_FLAG in cmp.flags
    # same invariants among plain germs carry no flag
    cmp = germ_equivalent(Germ(1, upsilon(2, 3, 1).vectors), Germ(1, germ_theta(MUTATED, 3).vectors))
    assert cmp.flags == []


def test_equivalence_is_an_equivalence_relation():
    rng = random.Random(2)
    base = sample_germs()
    pop = base + [g.transformed(random_unimodular(3, rng)) for g in base]
    rel = {(i, j): bool(germ_equivalent(a, b).equivalent) for (i, a), (j, b) in itertools.product(enumerate(pop), repeat=2)}
    n = len(pop)
    for i in range(n):
        assert rel[i, i]
        for j in range(n):
            assert rel[i, j] == rel[j, i]
            for k in range(n):
                if rel[i, j] and rel[j, k]:
                    assert rel[i, k]


def test_theta_distinct_triples_inequivalent_shallow():
    germs = []
    for node in triples_to_depth(3):
        normals = diagram_for_triple(node.triple).polytope.normals
        g = germ_theta(normals, 3)
        assert pairwise_indices(g) == sorted(node.triple)
        germs.append(g)
    for a, b in itertools.combinations(germs, 2):
        assert germ_equivalent(a, b).equivalent is False


def test_upsilon_monotone_family_inequivalent():
    germs = {k: upsilon(k, k + 1, 1) for k in range(2, 13)}
    for k, kk in itertools.combinations(range(2, 13), 2):
        cmp = germ_equivalent(germs[k], germs[kk])
        assert cmp.equivalent is False
        assert cmp.invariant == "pairwise_index"
        assert k in cmp.left and kk in cmp.right


def test_germ_json_shape():
    d = upsilon(2, 3, 1).to_json()
    assert d["constant"] == "1"
    assert d["vectors"] == [[0, 0, 1], [1, 0, -2], [1, 2, -2]]
    assert d["source"]["family"] == "upsilon"
