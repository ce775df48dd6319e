"""Almost toric base diagrams in the plane and their mutations.

A node sits on a line through the origin.  Its ``cut`` is the primitive
direction pointing from the vertex the branch cut ends at, through the
node, towards the origin.  Mutating at a node shears one side of that line
by ``x -> x - det(w|x) w`` with ``w = cut``; the cut then points the other
way and ends at the new vertex created on the opposite edge.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    CutNotThroughCenter,
    CutThroughVertex,
    Degenerate,
    InvalidPath,
    NodeCollision,
    OutsidePolytope,
)
from .lattice import IntVec, det2, is_primitive, primitivize
from .markov import canonical, follow_path, is_markov, mutate_triple
from .polytope import (
    RatVec,
    RationalPolytope,
    as_ratvec,
    delta_cp2,
    dia_boundary,
    polytope_from_vertices_2d,
    vertices_2d,
)

PLUS, MINUS = "+", "-"


def shear(w: Sequence[int], x: Sequence) -> RatVec:
    """``x - det(w|x) w`` where ``det(w|x) >= 0``, the identity elsewhere."""
    d = det2(w, x)
    if d >= 0:
        return (Fraction(x[0]) - d * w[0], Fraction(x[1]) - d * w[1])
    return as_ratvec(x)


def shear_linear(w: Sequence[int], x: Sequence, power: int = 1) -> tuple:
    """The linear map ``x -> x - power * det(w|x) w`` applied on the whole plane."""
    d = det2(w, x)
    return (x[0] - power * d * w[0], x[1] - power * d * w[1])


def shear_dual(w: Sequence[int], v: Sequence[int]) -> IntVec:
    """Pullback of the covector ``v`` under the linear shear along ``w``.

    Satisfies ``<shear_linear(w, x), v> == <x, shear_dual(w, v)>``.
    """
    wv = w[0] * v[0] + w[1] * v[1]
    return (v[0] + wv * w[1], v[1] - wv * w[0])


@dataclass(frozen=True)
class MutationMap:
    """Piecewise linear map fixing the line ``R w`` pointwise.

    With ``half == "+"`` the side ``det(w|x) >= 0`` is sheared by the
    linear shear and the other side is fixed; with ``"-"`` the side
    ``det(w|x) < 0`` moves by the inverse shear.
    """

    w: IntVec
    half: str = PLUS

    def linear_piece(self, x: Sequence) -> int:
        """Power of the linear shear acting at ``x`` (0, 1 or -1)."""
        d = det2(self.w, x)
        if self.half == PLUS:
            return 1 if d >= 0 else 0
        return -1 if d < 0 else 0

    def __call__(self, x: Sequence) -> RatVec:
        p = self.linear_piece(x)
        return as_ratvec(shear_linear(self.w, x, p)) if p else as_ratvec(x)

    def push_direction(self, at: Sequence, v: Sequence[int]) -> IntVec:
        """Image of the direction ``v`` under the linear piece acting at ``at``."""
        p = self.linear_piece(at)
        return tuple(int(c) for c in shear_linear(self.w, v, p)) if p else tuple(v)

    def to_json(self) -> dict:
        return {"w": list(self.w), "sheared_half": self.half}


@dataclass(frozen=True)
class Node:
    position: RatVec
    cut: IntVec
    sheared_half: str = PLUS

    def __post_init__(self):
        object.__setattr__(self, "position", as_ratvec(self.position))
        object.__setattr__(self, "cut", tuple(int(c) for c in self.cut))
        if len(self.cut) != 2 or not is_primitive(self.cut):
            raise ValueError(f"cut direction {self.cut} must be a primitive plane vector")
        if self.sheared_half not in (PLUS, MINUS):
            raise ValueError("sheared_half must be '+' or '-'")


@dataclass(frozen=True)
class ATFDiagram:
    polytope: RationalPolytope
    nodes: tuple[Node, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        rays = set()
        for k, node in enumerate(self.nodes):
            p, c = node.position, node.cut
            if det2(c, p) != 0 or p[0] * c[0] + p[1] * c[1] >= 0:
                raise CutNotThroughCenter(f"node {k}: position is not on the ray from its cut towards the center")
            if not self.polytope.is_interior(p):
                raise OutsidePolytope(f"node {k} is not in the interior")
            if c in rays:
                raise NodeCollision(f"node {k} shares its branch cut ray with another node")
            rays.add(c)

    def vertices(self) -> tuple[RatVec, ...]:
        return vertices_2d(self.polytope)

    def cut_vertex(self, k: int) -> RatVec:
        """The polytope vertex at which node ``k``'s branch cut ends."""
        c = self.nodes[k].cut
        for v in self.vertices():
            if det2(c, v) == 0 and v[0] * c[0] + v[1] * c[1] < 0:
                return v
        raise Degenerate(f"branch cut of node {k} does not end at a vertex")

    def markov_labels(self) -> tuple[int, ...]:
        """Per node, the integer ``p`` with ``det`` of the normals at its cut vertex equal to ``p^2``."""
        verts = self.vertices()
        ns = self.polytope.normals
        out = []
        for k in range(len(self.nodes)):
            i = verts.index(self.cut_vertex(k))
            d = abs(det2(ns[i - 1], ns[i]))
            r = math.isqrt(d)
            if r * r != d:
                raise Degenerate(f"corner determinant {d} at node {k} is not a square")
            out.append(r)
        return tuple(out)


def _crossing(a: RatVec, b: RatVec, w: Sequence[int]) -> RatVec:
    da, db = det2(w, a), det2(w, b)
    t = da / (da - db)
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def _drop_collinear(points: list[RatVec]) -> list[RatVec]:
    out = list(points)
    changed = True
    while changed and len(out) > 3:
        changed = False
        for i in range(len(out)):
            a, b, c = out[i - 1], out[i], out[(i + 1) % len(out)]
            if det2((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1])) == 0:
                del out[i]
                changed = True
                break
    return out


def mutate_diagram(diagram: ATFDiagram, k: int) -> tuple[ATFDiagram, MutationMap]:
    """Change the branch cut at node ``k``; returns the new diagram and the map ``tau``."""
    node = diagram.nodes[k]
    w = node.cut
    tau = MutationMap(w, node.sheared_half)
    verts = diagram.vertices()
    diagram.cut_vertex(k)
    far = [v for v in verts if det2(w, v) == 0 and v[0] * w[0] + v[1] * w[1] > 0]
    if far:
        raise CutThroughVertex(f"the line of node {k} passes through the vertex {far[0]}")
    for j, other in enumerate(diagram.nodes):
        if j != k and det2(w, other.position) == 0:
            raise NodeCollision(f"node {j} lies on the mutation line of node {k}")

    boundary: list[RatVec] = []
    new_vertex = None
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        boundary.append(a)
        da, db = det2(w, a), det2(w, b)
        if (da > 0 > db) or (da < 0 < db):
            x = _crossing(a, b, w)
            boundary.append(x)
            if x[0] * w[0] + x[1] * w[1] > 0:
                new_vertex = x
    if new_vertex is None:
        raise Degenerate("mutation line does not cross the opposite edge")
    image = _drop_collinear([tau(p) for p in boundary])
    poly = polytope_from_vertices_2d(image)

    nodes = []
    for j, other in enumerate(diagram.nodes):
        if j == k:
            nodes.append(Node((new_vertex[0] / 2, new_vertex[1] / 2), (-w[0], -w[1]), other.sheared_half))
        else:
            nodes.append(Node(tau(other.position), tau.push_direction(other.position, other.cut), other.sheared_half))
    return ATFDiagram(poly, tuple(nodes)), tau


def cp2_diagram() -> ATFDiagram:
    """The moment triangle of the projective plane with a node near each corner."""
    poly = delta_cp2()
    nodes = []
    for v in vertices_2d(poly):
        cut, _ = primitivize((-v[0], -v[1]))
        nodes.append(Node((v[0] / 2, v[1] / 2), cut))
    return ATFDiagram(poly, tuple(nodes))


def node_for_slot(diagram: ATFDiagram, slot: int) -> int:
    """Node whose label sits at position ``slot`` (1-based) of the sorted label triple."""
    labels = diagram.markov_labels()
    order = sorted(range(len(labels)), key=lambda j: (labels[j], j))
    return order[slot - 1]


def delta_m(path: Sequence[int]) -> ATFDiagram:
    """Markov triangle reached from the projective plane's triangle along ``path``.

    ``path`` lists slots of the sorted triples as recorded in the Markov
    tree.  The result has all offsets 1/3 and corner determinants equal to
    the squares of the reached triple.
    """
    diagram = cp2_diagram()
    triple = (1, 1, 1)
    for s in path:
        if s not in (1, 2, 3):
            raise InvalidPath(f"invalid slot {s}")
        k = node_for_slot(diagram, s)
        diagram, _ = mutate_diagram(diagram, k)
        triple = canonical(mutate_triple(triple, s))
        if canonical(diagram.markov_labels()) != triple:
            raise Degenerate(f"mutation produced labels {diagram.markov_labels()} instead of {triple}")
    return diagram


def triangle_normals(diagram: ATFDiagram) -> tuple[tuple[IntVec, IntVec, IntVec], tuple[int, int, int]]:
    """Normals ``(u, v, w)`` with Markov numbers ``(alpha, beta, gamma)``.

    ``det(u|v) = alpha^2``, ``det(v|w) = beta^2``, ``det(w|u) = gamma^2``
    with the normals in counterclockwise order.
    """
    ns = diagram.polytope.normals
    if len(ns) != 3:
        raise Degenerate("not a triangle")
    u, v, w = ns
    dets = (det2(u, v), det2(v, w), det2(w, u))
    roots = tuple(math.isqrt(d) for d in dets)
    if any(r * r != d for r, d in zip(roots, dets)):
        raise Degenerate(f"corner determinants {dets} are not squares")
    return (u, v, w), roots


def sample_rational_points(vertices: Sequence[RatVec], count: int, seed: int, bound: int = 24) -> list[RatVec]:
    """Deterministic rational points of the convex hull of ``vertices``.

    Each point is a random convex combination with integer weights in
    ``[0, bound]``; zero weights put some samples on the boundary.
    """
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        ws = [rng.randint(0, bound) for _ in vertices]
        s = sum(ws)
        if s == 0:
            continue
        x = sum(Fraction(wt, s) * v[0] for wt, v in zip(ws, vertices))
        y = sum(Fraction(wt, s) * v[1] for wt, v in zip(ws, vertices))
        pts.append((x, y))
    return pts


@dataclass
class InvarianceReport:
    samples: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "failures": [
                {"point": [str(c) for c in x], "before": str(a), "after": str(b)} for x, a, b in self.failures
            ],
            "ok": self.ok,
        }


def check_dia_invariance(
    before: ATFDiagram, after: ATFDiagram, tau: MutationMap, samples: int = 1000, seed: int = 0
) -> InvarianceReport:
    """Compare boundary distances at sampled ``x`` and ``tau(x)`` exactly."""
    pts = [(Fraction(0), Fraction(0))] + list(before.vertices())
    pts += sample_rational_points(before.vertices(), samples, seed)
    report = InvarianceReport(len(pts))
    for x in pts:
        d0, _ = dia_boundary(x, before.polytope)
        y = tau(x)
        if not after.polytope.contains(y):
            report.failures.append((x, d0, "outside"))
            continue
        d1, _ = dia_boundary(y, after.polytope)
        if d0 != d1:
            report.failures.append((x, d0, d1))
    return report


def diagram_for_triple(triple: Sequence[int], path: Sequence[int] = None) -> ATFDiagram:
    from .markov import path_to

    if not is_markov(triple):
        raise InvalidPath(f"{tuple(triple)} is not a Markov triple")
    if path is None:
        path = path_to(triple)
    elif follow_path(path) != canonical(triple):
        raise InvalidPath(f"path {list(path)} leads to {follow_path(path)}, not {canonical(triple)}")
    return delta_m(path)
