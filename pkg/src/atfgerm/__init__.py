"""Exact integral-affine toolkit for base diagrams, Markov triangles and displacement energy germs."""

from .atf import ATFDiagram, MutationMap, Node, check_dia_invariance, delta_m, mutate_diagram, shear, shear_dual
from .germ import (
    Germ,
    extract_germ,
    germ_equivalent,
    germ_invariants,
    germ_product_torus,
    germ_theta,
    germ_theta_product,
    germ_toric_fibre,
    germ_upsilon,
    upsilon_versal_pieces,
)
from .lattice import elementary_divisors, hnf_canonical, integral_index, is_unimodular, primitivize
from .markov import is_markov, markov_tree, mutate_triple
from .polytope import Facet, RationalPolytope, dia_boundary, dia_hyperplane
from .reduction import UpsilonParams, alpha_k, orbit_lift, versal_to_product

__version__ = "0.1.0"
