"""Displacement energy germs ``c + min_i <b, v_i>`` as exact data.

A germ is a positive rational constant together with a finite set of
nonzero integer vectors.  Two germs are equivalent when the constants agree
and some ``Phi`` in ``GL(n, Z)`` maps one vector set bijectively onto the
other.  The decision procedure compares cheap invariants first and then
searches column orderings, using the row Hermite normal form as a complete
invariant of the left ``GL(n, Z)`` action on a fixed ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional, Sequence

from .errors import DimensionMismatch, InvalidParams, NonIntegerVector, OnBoundary, TailTooSmall
from .lattice import (
    IntMatrix,
    IntVec,
    columns_to_matrix,
    content,
    det,
    hnf_with_transform,
    integral_index,
    inverse_unimodular,
    is_unimodular,
    matmul,
    matvec,
    primitivize,
)
from .polytope import RationalPolytope, as_ratvec, dia_boundary
from .reduction import UpsilonParams, versal_branches

MAX_SEARCH = 8
REMARK_DISCREPANCY_FLAG = "paper-remark-1.7-discrepancy"


@dataclass(frozen=True)
class Germ:
    constant: Fraction
    vectors: tuple[IntVec, ...]
    source: Optional[dict] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        const = Fraction(self.constant)
        if const <= 0:
            raise ValueError("germ constant must be positive")
        vecs = set()
        for v in self.vectors:
            q = as_ratvec(v)
            if any(c.denominator != 1 for c in q):
                raise NonIntegerVector(f"germ vector {v} is not integral")
            vecs.add(tuple(int(c) for c in q))
        if not vecs:
            raise ValueError("germ needs at least one vector")
        dims = {len(v) for v in vecs}
        if len(dims) != 1:
            raise DimensionMismatch("germ vectors have different dimensions")
        if any(all(c == 0 for c in v) for v in vecs):
            raise ValueError("germ vectors must be nonzero")
        object.__setattr__(self, "constant", const)
        object.__setattr__(self, "vectors", tuple(sorted(vecs)))

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    def __call__(self, b: Sequence) -> Fraction:
        b = as_ratvec(b)
        return self.constant + min(sum(x * y for x, y in zip(b, v)) for v in self.vectors)

    def transformed(self, phi: Sequence[Sequence[int]]) -> "Germ":
        """The germ with every vector replaced by ``phi @ v``."""
        return Germ(self.constant, tuple(matvec(phi, v) for v in self.vectors), self.source)

    def to_json(self) -> dict:
        out = {"constant": _frac(self.constant), "vectors": [list(v) for v in self.vectors]}
        if self.source:
            out["source"] = self.source
        return out


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _unit(n: int, i: int) -> IntVec:
    return tuple(int(j == i) for j in range(n))


# -- generators ---------------------------------------------------------------

def germ_product_torus(a: Sequence) -> Germ:
    a = as_ratvec(a)
    if any(x <= 0 for x in a):
        raise InvalidParams("product torus areas must be positive")
    m = min(a)
    return Germ(m, tuple(_unit(len(a), i) for i, x in enumerate(a) if x == m),
                {"family": "product", "areas": [_frac(x) for x in a]})


def germ_toric_fibre(poly: RationalPolytope, x: Sequence) -> Germ:
    """Germ of the fibre over an interior point: distance plus the closest normals."""
    d, idx = dia_boundary(x, poly)
    if d == 0:
        raise OnBoundary("point lies on the boundary")
    return Germ(d, tuple(poly.facets[i].normal for i in sorted(idx)),
                {"family": "toric", "point": [_frac(c) for c in as_ratvec(x)]})


def germ_upsilon(p: UpsilonParams) -> Germ:
    k, d, a2 = p.k, p.gap, p.a2
    v1, v2, v3 = (1, k, -k), (1, 0, -k), (0, 0, 1)
    src = {"family": "upsilon", "k": k, "a1": _frac(p.a1), "a2": _frac(p.a2)}
    if d < a2:
        return Germ(d, (v1, v2), src)
    if d == a2:
        return Germ(d, (v1, v2, v3), src)
    return Germ(a2, (v3,), src)


def theta_vectors(normals: Sequence[Sequence[int]], mode: str = "literal") -> tuple[IntVec, ...]:
    """Lift the triangle normals to ``Z^3``.

    ``literal`` appends a 1 to each normal; ``cone`` uses the primitive
    normals of the cone over the triangle with offsets 1/3, i.e.
    ``(3u, 1)``.
    """
    if mode == "literal":
        return tuple(tuple(u) + (1,) for u in normals)
    if mode == "cone":
        return tuple(primitivize(tuple(u) + (Fraction(1, 3),))[0] for u in normals)
    raise ValueError(f"unknown theta mode {mode!r}")


def germ_theta(normals: Sequence[Sequence[int]], a, mode: str = "literal", triple=None) -> Germ:
    a = Fraction(a)
    if a <= 0:
        raise InvalidParams("area must be positive")
    const = a / 3 if mode == "literal" else a
    src = {"family": "theta", "area": _frac(a), "mode": mode}
    if triple is not None:
        src["triple"] = list(triple)
    return Germ(const, theta_vectors(normals, mode), src)


def germ_theta_product(normals: Sequence[Sequence[int]], a, tail: Sequence, triple=None) -> Germ:
    a = Fraction(a)
    tail = as_ratvec(tail)
    if a <= 0 or any(x <= 0 for x in tail):
        raise InvalidParams("areas must be positive")
    if tail and a / 3 > min(tail):
        raise TailTooSmall(f"need a/3 <= min(tail), got {a / 3} > {min(tail)}")
    n = 3 + len(tail)
    pad = (0,) * len(tail)
    vecs = [tuple(u) + (1,) + pad for u in normals]
    vecs += [_unit(n, 3 + i) for i, x in enumerate(tail) if x == a / 3]
    src = {"family": "theta_product", "area": _frac(a), "tail": [_frac(x) for x in tail]}
    if triple is not None:
        src["triple"] = list(triple)
    return Germ(a / 3, tuple(vecs), src)


# -- piecewise minima -----------------------------------------------------------

@dataclass(frozen=True)
class AffineFunctional:
    constant: Fraction
    vector: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "vector", as_ratvec(self.vector))


@dataclass(frozen=True)
class Piece:
    """Functionals valid on ``sign * b[coord] > 0`` (or everywhere when ``coord`` is None)."""

    functionals: tuple[AffineFunctional, ...]
    coord: Optional[int] = None
    sign: int = 1

    def dominates(self, g: AffineFunctional, f: AffineFunctional) -> bool:
        """``g <= f`` on the closure of the region, given equal constants."""
        diff = [x - y for x, y in zip(f.vector, g.vector)]
        if self.coord is None:
            return all(c == 0 for c in diff)
        if any(c != 0 for i, c in enumerate(diff) if i != self.coord):
            return False
        return self.sign * diff[self.coord] >= 0


@dataclass(frozen=True)
class PiecewiseMin:
    pieces: tuple[Piece, ...]


def upsilon_versal_pieces(p: UpsilonParams) -> PiecewiseMin:
    (c_plus, rows_plus), (c_minus, rows_minus) = versal_branches(p)
    plus = Piece(tuple(AffineFunctional(c, r) for c, r in zip(c_plus, rows_plus)), coord=1, sign=1)
    minus = Piece(tuple(AffineFunctional(c, r) for c, r in zip(c_minus, rows_minus)), coord=1, sign=-1)
    return PiecewiseMin((plus, minus))


def extract_germ(pw: PiecewiseMin) -> Germ:
    """Keep the functionals with minimal constant that are not dominated on their piece."""
    consts = [f.constant for piece in pw.pieces for f in piece.functionals]
    if any(c <= 0 for c in consts):
        raise InvalidParams("functional constants must be positive")
    m = min(consts)
    survivors = set()
    for piece in pw.pieces:
        active = list(dict.fromkeys(f for f in piece.functionals if f.constant == m))
        for f in active:
            if any(g != f and g.vector != f.vector and piece.dominates(g, f) for g in active):
                continue
            survivors.add(f.vector)
    vecs = []
    for v in sorted(survivors):
        if any(c.denominator != 1 for c in v):
            raise NonIntegerVector(f"dominant linear part {v} is not integral")
        vecs.append(tuple(int(c) for c in v))
    return Germ(m, tuple(vecs))


# -- invariants and equivalence -------------------------------------------------

def generalized_index(vectors: Sequence[Sequence[int]]) -> int:
    """gcd of the maximal square minors of the column matrix.

    Agrees with the integral index when there are at most ``n`` vectors.
    """
    m = columns_to_matrix(vectors)
    n, k = len(m), len(m[0])
    if k <= n:
        return integral_index(vectors)
    g = 0
    for cols in combinations(range(k), n):
        g = math.gcd(g, det([[row[c] for c in cols] for row in m]))
    return g


def pairwise_indices(g: Germ) -> list[int]:
    if g.dim < 2:
        return []
    return sorted(integral_index(pair) for pair in combinations(g.vectors, 2))


def triple_indices(g: Germ) -> list[int]:
    if g.dim < 3:
        return []
    return sorted(integral_index(t) for t in combinations(g.vectors, 3))


def _hnf_key(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    return hnf_with_transform(columns_to_matrix(vectors))[0]


def canonical_matrix(g: Germ) -> IntMatrix:
    """Smallest Hermite form over all orderings of the vectors."""
    if len(g.vectors) > MAX_SEARCH:
        raise ValueError(f"canonical form search is capped at {MAX_SEARCH} vectors")
    return min(_hnf_key(p) for p in permutations(g.vectors))


def germ_invariants(g: Germ) -> dict:
    out = {
        "constant": _frac(g.constant),
        "dim": g.dim,
        "count": len(g.vectors),
        "pairwise_index": pairwise_indices(g),
        "triple_index": triple_indices(g),
        "full_index": generalized_index(g.vectors),
    }
    if len(g.vectors) <= MAX_SEARCH:
        out["canonical"] = [list(r) for r in canonical_matrix(g)]
    return out


@dataclass
class Comparison:
    equivalent: Optional[bool]
    invariant: Optional[str] = None
    left: object = None
    right: object = None
    witness: Optional[IntMatrix] = None
    flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        if self.equivalent is None:
            out = {"result": "undecided"}
        elif self.equivalent:
            out = {"result": "equivalent", "witness": [list(r) for r in self.witness]}
        else:
            out = {"result": "inequivalent", "invariant": self.invariant, "left": self.left, "right": self.right}
        if self.flags:
            out["flags"] = list(self.flags)
        return out


def _family(g: Germ) -> Optional[str]:
    return (g.source or {}).get("family")


def germ_equivalent(g: Germ, h: Germ) -> Comparison:
    """Decide whether some ``Phi`` in ``GL(n, Z)`` maps ``g``'s vectors onto ``h``'s."""
    if g.dim != h.dim:
        raise DimensionMismatch(f"germs live in dimensions {g.dim} and {h.dim}")
    if g.constant != h.constant:
        return Comparison(False, "constant", _frac(g.constant), _frac(h.constant))
    if len(g.vectors) != len(h.vectors):
        return Comparison(False, "cardinality", len(g.vectors), len(h.vectors))
    pg, ph = pairwise_indices(g), pairwise_indices(h)
    if pg != ph:
        return Comparison(False, "pairwise_index", pg, ph)
    tg, th = triple_indices(g), triple_indices(h)
    if tg != th:
        cmp = Comparison(False, "triple_index", tg, th)
        if {_family(g), _family(h)} == {"upsilon", "theta"}:
            cmp.flags.append(REMARK_DISCREPANCY_FLAG)
        return cmp
    if len(g.vectors) > MAX_SEARCH:
        return Comparison(None)

    m = columns_to_matrix(g.vectors)
    hg, ug = hnf_with_transform(m)
    cg = [content(v) for v in g.vectors]
    for perm in permutations(h.vectors):
        if [content(v) for v in perm] != cg:
            continue
        hh, uh = hnf_with_transform(columns_to_matrix(perm))
        if hh != hg:
            continue
        phi = matmul(inverse_unimodular(uh), ug)
        assert is_unimodular(phi)
        assert sorted(matvec(phi, v) for v in g.vectors) == sorted(h.vectors)
        return Comparison(True, witness=phi)
    canon_g, canon_h = canonical_matrix(g), canonical_matrix(h)
    return Comparison(False, "canonical_form", [list(r) for r in canon_g], [list(r) for r in canon_h])
