"""JSON (de)serialization of the domain objects.

Rationals are written as canonical ``"p/q"`` strings (``"p"`` when the
denominator is 1).  Readers accept ints, such strings, and ignore unknown
keys so every document the CLI writes can be fed back in.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .atf import ATFDiagram, MutationMap, Node
from .germ import Germ
from .polytope import Facet, RationalPolytope


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, float):
        raise ValueError("floating point values are not accepted; use 'p/q' strings")
    return Fraction(s)


def polytope_to_json(p: RationalPolytope) -> dict:
    return {
        "dim": p.dim,
        "facets": [{"normal": list(f.normal), "offset": frac_str(f.offset)} for f in p.facets],
    }


def polytope_from_json(d: dict) -> RationalPolytope:
    if "polytope" in d:
        d = d["polytope"]
    facets = tuple(Facet(tuple(int(c) for c in f["normal"]), parse_frac(f["offset"])) for f in d["facets"])
    return RationalPolytope(int(d["dim"]), facets)


def node_to_json(n: Node) -> dict:
    return {"position": [frac_str(c) for c in n.position], "cut": list(n.cut), "sheared_half": n.sheared_half}


def diagram_to_json(d: ATFDiagram, **extra: Any) -> dict:
    out = {"polytope": polytope_to_json(d.polytope), "nodes": [node_to_json(n) for n in d.nodes]}
    out.update(extra)
    return out


def diagram_from_json(d: dict) -> ATFDiagram:
    poly = polytope_from_json(d["polytope"])
    nodes = tuple(
        Node(tuple(parse_frac(c) for c in n["position"]), tuple(int(c) for c in n["cut"]), n.get("sheared_half", "+"))
        for n in d.get("nodes", [])
    )
    return ATFDiagram(poly, nodes)


def germ_from_json(d: dict) -> Germ:
    return Germ(parse_frac(d["constant"]), tuple(tuple(int(c) for c in v) for v in d["vectors"]), d.get("source"))


def mutation_to_json(tau: MutationMap) -> dict:
    return tau.to_json()


def dumps(obj: Any) -> str:
    """Stable JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
