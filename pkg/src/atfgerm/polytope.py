"""Rational convex polyhedra with primitive inward normals.

A polytope is the set ``{x : <x, v_i> + lambda_i >= 0}``.  The integral
affine distance of an interior point to the boundary is the smallest of the
facet functionals, which is the quantity everything downstream is built on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from .errors import (
    Degenerate,
    DimensionMismatch,
    EmptyInterior,
    NotConvex,
    NotMonotone,
    OriginNotInterior,
    OutsidePolytope,
    Unbounded,
)
from .lattice import IntVec, det2, dot, inverse_unimodular, is_primitive, matvec, primitivize, transpose

RatVec = tuple[Fraction, ...]


def as_ratvec(x: Iterable) -> RatVec:
    return tuple(Fraction(c) for c in x)


@dataclass(frozen=True)
class Facet:
    """Half-space ``<x, normal> + offset >= 0`` with a primitive inward normal."""

    normal: IntVec
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(int(c) for c in self.normal))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if not is_primitive(self.normal):
            raise ValueError(f"facet normal {self.normal} is not primitive")

    def value(self, x: Sequence) -> Fraction:
        return dot(x, self.normal) + self.offset

    @classmethod
    def from_inequality(cls, vector: Sequence, constant) -> "Facet":
        """Normalize ``<x, vector> + constant >= 0`` to a primitive normal."""
        prim, scale = primitivize(vector)
        return cls(prim, Fraction(constant) / scale)


# -- exact Fourier-Motzkin --------------------------------------------------

def _normalize(coeffs: tuple[Fraction, ...], rhs: Fraction):
    lead = next((abs(c) for c in coeffs if c != 0), None)
    if lead is None:
        return coeffs, rhs
    return tuple(c / lead for c in coeffs), rhs / lead


def _fm_feasible_point(constraints, nvars: int, maximize_first: bool = False):
    """Find a point with ``coeffs . z >= rhs`` for every constraint, or None.

    Variables are eliminated from last to first and chosen back from first
    to last.  With ``maximize_first`` the first variable takes its largest
    feasible value (it must be bounded above).
    """
    stages = []
    current = {_normalize(tuple(Fraction(c) for c in co), Fraction(r)) for co, r in constraints}
    for var in range(nvars - 1, -1, -1):
        stages.append(current)
        pos, neg, rest = [], [], set()
        for co, r in current:
            if co[var] > 0:
                pos.append((co, r))
            elif co[var] < 0:
                neg.append((co, r))
            else:
                rest.add((co, r))
        for cp, rp in pos:
            for cn, rn in neg:
                a, b = cp[var], -cn[var]
                co = tuple(b * x + a * y for x, y in zip(cp, cn))
                r = b * rp + a * rn
                rest.add(_normalize(co, r))
        current = rest
    for co, r in current:
        if r > 0:  # 0 >= r with r > 0
            return None
    stages.reverse()
    z = [Fraction(0)] * nvars
    for var in range(nvars):
        lo, hi = None, None
        for co, r in stages[var]:
            c = co[var]
            if c == 0:
                continue
            rest = sum(co[j] * z[j] for j in range(var))
            bound = (r - rest) / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None and lo > hi:
            return None
        if var == 0 and maximize_first:
            if hi is None:
                raise ValueError("first variable unbounded above")
            z[var] = hi
        elif lo is not None and hi is not None:
            z[var] = (lo + hi) / 2
        elif lo is not None:
            z[var] = lo + 1
        elif hi is not None:
            z[var] = hi - 1
    return tuple(z)


def certify_interior(normals: Sequence[Sequence[int]], offsets: Sequence) -> tuple[RatVec, Fraction]:
    """Return ``(x, t)`` with every ``<x, v_i> + lambda_i >= t > 0``, maximizing ``t`` up to 1.

    Raises EmptyInterior when no such point exists.
    """
    n = len(normals[0])
    cons = []
    # variables: (t, x_1..x_n)
    for v, lam in zip(normals, offsets):
        cons.append(((-1,) + tuple(v), -Fraction(lam)))
    cons.append(((-1,) + (0,) * n, Fraction(-1)))  # t <= 1
    z = _fm_feasible_point(cons, n + 1, maximize_first=True)
    if z is None or z[0] <= 0:
        raise EmptyInterior("inequalities have no common interior point")
    return tuple(z[1:]), z[0]


def is_bounded(normals: Sequence[Sequence[int]]) -> bool:
    """True iff the recession cone ``{d : <d, v_i> >= 0}`` is trivial."""
    n = len(normals[0])
    base = [(tuple(v), Fraction(0)) for v in normals]
    for j in range(n):
        for s in (1, -1):
            unit = tuple(s if i == j else 0 for i in range(n))
            if _fm_feasible_point(base + [(unit, Fraction(1))], n) is not None:
                return False
    return True


# -- polytope ---------------------------------------------------------------

def _angle_cmp(u: Sequence[int], v: Sequence[int]) -> int:
    """Compare plane vectors by polar angle in ``[0, 2pi)``."""

    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    c = det2(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


@dataclass(frozen=True)
class RationalPolytope:
    """H-representation ``{x : <x, v_i> + lambda_i >= 0}`` with nonempty interior.

    In the plane the facets are kept sorted counterclockwise by normal
    angle.  ``interior_point`` is an exact witness computed on construction.
    """

    dim: int
    facets: tuple[Facet, ...]
    interior_point: RatVec = field(compare=False, default=())
    bounded: bool = field(compare=False, default=True)

    def __post_init__(self):
        facets = tuple(self.facets)
        if not facets:
            raise ValueError("a polytope needs at least one facet")
        if any(len(f.normal) != self.dim for f in facets):
            raise DimensionMismatch("facet normal dimension differs from polytope dimension")
        if len(set(facets)) != len(facets):
            raise ValueError("duplicate facet")
        if self.dim == 2:
            facets = tuple(sorted(facets, key=cmp_to_key(lambda f, g: _angle_cmp(f.normal, g.normal))))
        object.__setattr__(self, "facets", facets)
        normals = [f.normal for f in facets]
        offsets = [f.offset for f in facets]
        point, _ = certify_interior(normals, offsets)
        object.__setattr__(self, "interior_point", point)
        object.__setattr__(self, "bounded", is_bounded(normals))

    @classmethod
    def from_facets(cls, normals: Sequence[Sequence[int]], offsets: Sequence) -> "RationalPolytope":
        if len(normals) != len(offsets):
            raise ValueError("need one offset per normal")
        if not normals:
            raise ValueError("a polytope needs at least one facet")
        facets = tuple(Facet.from_inequality(v, lam) for v, lam in zip(normals, offsets))
        return cls(len(facets[0].normal), facets)

    @property
    def normals(self) -> tuple[IntVec, ...]:
        return tuple(f.normal for f in self.facets)

    @property
    def offsets(self) -> tuple[Fraction, ...]:
        return tuple(f.offset for f in self.facets)

    def values(self, x: Sequence) -> tuple[Fraction, ...]:
        if len(x) != self.dim:
            raise DimensionMismatch(f"point has dimension {len(x)}, polytope {self.dim}")
        return tuple(f.value(x) for f in self.facets)

    def contains(self, x: Sequence) -> bool:
        return all(v >= 0 for v in self.values(x))

    def is_interior(self, x: Sequence) -> bool:
        return all(v > 0 for v in self.values(x))

    def affine_image(self, a: Sequence[Sequence[int]], b: Sequence = None) -> "RationalPolytope":
        """Image under ``x -> A x + b`` with ``A`` unimodular."""
        if b is None:
            b = (0,) * self.dim
        inv_t = transpose(inverse_unimodular(a))
        normals, offsets = [], []
        for f in self.facets:
            w = matvec(inv_t, f.normal)
            normals.append(w)
            offsets.append(f.offset - dot(w, b))
        return RationalPolytope.from_facets(normals, offsets)


def dia_hyperplane(x: Sequence, facet: Facet) -> Fraction:
    """Integral affine distance from ``x`` to the hyperplane of ``facet``."""
    if len(x) != len(facet.normal):
        raise DimensionMismatch("point and facet dimensions differ")
    return abs(facet.value(as_ratvec(x)))


def dia_boundary(x: Sequence, poly: RationalPolytope) -> tuple[Fraction, frozenset[int]]:
    """Distance to the boundary and the (0-based) indices of the facets attaining it."""
    vals = poly.values(as_ratvec(x))
    if any(v < 0 for v in vals):
        raise OutsidePolytope(f"point {tuple(str(c) for c in x)} lies outside the polytope")
    m = min(vals)
    return m, frozenset(i for i, v in enumerate(vals) if v == m)


# -- plane polygons ---------------------------------------------------------

def _intersect_lines(f: Facet, g: Facet) -> RatVec:
    d = det2(f.normal, g.normal)
    if d == 0:
        raise Degenerate("parallel consecutive facets")
    # solve <x, v> = -lam for both facets (Cramer)
    r1, r2 = -f.offset, -g.offset
    x = (r1 * g.normal[1] - r2 * f.normal[1]) / d
    y = (f.normal[0] * r2 - g.normal[0] * r1) / d
    return (Fraction(x), Fraction(y))


def vertices_2d(poly: RationalPolytope) -> tuple[RatVec, ...]:
    """Counterclockwise vertices; vertex ``i`` is where edge ``i`` starts.

    Edge ``i`` (on facet ``i``) therefore runs from ``vertices[i]`` to
    ``vertices[i + 1]``.
    """
    if poly.dim != 2:
        raise DimensionMismatch("vertex enumeration is only implemented in the plane")
    if not poly.bounded:
        raise Unbounded("polygon is unbounded")
    fs = poly.facets
    n = len(fs)
    verts = []
    for i in range(n):
        prev, cur = fs[i - 1], fs[i]
        if det2(prev.normal, cur.normal) <= 0:
            raise Degenerate("consecutive normals do not turn counterclockwise")
        verts.append(_intersect_lines(prev, cur))
    for v in verts:
        if not poly.contains(v):
            raise Degenerate("redundant facet in H-representation")
    if len(set(verts)) != n:
        raise Degenerate("facet does not support an edge")
    return tuple(verts)


def polytope_from_vertices_2d(vertices: Sequence[Sequence]) -> RationalPolytope:
    """H-representation of a strictly convex counterclockwise polygon."""
    pts = [as_ratvec(p) for p in vertices]
    n = len(pts)
    if n < 3:
        raise NotConvex("need at least three vertices")
    edges = [tuple(b - a for a, b in zip(pts[i], pts[(i + 1) % n])) for i in range(n)]
    for i in range(n):
        if det2(edges[i], edges[(i + 1) % n]) <= 0:
            raise NotConvex("polygon is not strictly convex counterclockwise")
    # a strictly left-turning closed chain is simple iff it winds once
    order = sorted(range(n), key=cmp_to_key(lambda i, j: _angle_cmp(edges[i], edges[j])))
    start = order.index(0)
    if order[start:] + order[:start] != list(range(n)):
        raise NotConvex("polygon winds more than once")
    normals, offsets = [], []
    for p, e in zip(pts, edges):
        inward = (-e[1], e[0])
        prim, _ = primitivize(inward)
        normals.append(prim)
        offsets.append(-dot(p, prim))
    return RationalPolytope.from_facets(normals, offsets)


def in_triangle(x: Sequence, a: Sequence, b: Sequence, c: Sequence, strict: bool = False) -> bool:
    """Membership in the triangle ``abc`` (any orientation)."""
    d1 = det2([b[0] - a[0], b[1] - a[1]], [x[0] - a[0], x[1] - a[1]])
    d2 = det2([c[0] - b[0], c[1] - b[1]], [x[0] - b[0], x[1] - b[1]])
    d3 = det2([a[0] - c[0], a[1] - c[1]], [x[0] - c[0], x[1] - c[1]])
    if strict:
        return (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0)
    return (d1 >= 0 and d2 >= 0 and d3 >= 0) or (d1 <= 0 and d2 <= 0 and d3 <= 0)


def chambers_2d(poly: RationalPolytope) -> list[tuple[int, tuple[RatVec, RatVec, RatVec]]]:
    """Chamber of each facet: the triangle spanned by the origin and that facet's edge."""
    offs = poly.offsets
    if any(o != offs[0] for o in offs):
        raise NotMonotone("chambers need all facet offsets equal")
    if offs[0] <= 0:
        raise OriginNotInterior("origin is not an interior point")
    verts = vertices_2d(poly)
    n = len(verts)
    origin = (Fraction(0), Fraction(0))
    return [(i, (origin, verts[i], verts[(i + 1) % n])) for i in range(n)]


def is_delzant_2d(poly: RationalPolytope) -> bool:
    if poly.dim != 2:
        raise DimensionMismatch("Delzant check is implemented in the plane")
    if not poly.bounded:
        raise Unbounded("polygon is unbounded")
    ns = poly.normals
    return all(abs(det2(ns[i - 1], ns[i])) == 1 for i in range(len(ns)))


def cone_over(poly: RationalPolytope) -> RationalPolytope:
    """The cone ``{(h x, h) : h > 0, x in poly}`` in one dimension higher.

    Each facet ``(v, lambda)`` becomes the homogeneous facet with normal
    ``primitivize(v, lambda)``; there is no cap, so the result is unbounded.
    """
    if any(o <= 0 for o in poly.offsets):
        raise OriginNotInterior("cone construction needs the origin in the interior")
    normals = [primitivize(tuple(f.normal) + (f.offset,))[0] for f in poly.facets]
    return RationalPolytope.from_facets(normals, [0] * len(normals))


def delta_cp2() -> RationalPolytope:
    """The moment triangle ``<x, v_i> >= -1/3`` for ``v = (1,0), (0,1), (-1,-1)``."""
    third = Fraction(1, 3)
    return RationalPolytope.from_facets([(1, 0), (0, 1), (-1, -1)], [third] * 3)
