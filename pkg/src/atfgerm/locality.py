"""Smallness conditions under which product-torus germs survive a ball embedding.

A chart is a ball of capacity ``radius`` together with the sphere bound
``lambda_s`` of the ambient manifold (``math.inf`` when aspherical).  All
inequalities are strict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import InvalidParams

Bound = Union[Fraction, float]


def parse_bound(value) -> Bound:
    """Positive rational, or ``math.inf`` for the strings ``inf`` / ``+inf``."""
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    if value == math.inf:
        return math.inf
    return Fraction(value)


def format_bound(value: Bound) -> str:
    if value == math.inf:
        return "inf"
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class ChartSpec:
    radius: Fraction
    lambda_s: Bound = math.inf

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))
        object.__setattr__(self, "lambda_s", parse_bound(self.lambda_s))
        if self.radius <= 0 or self.lambda_s <= 0:
            raise InvalidParams("chart radius and sphere bound must be positive")


def _positive(a: Sequence) -> tuple[Fraction, ...]:
    a = tuple(Fraction(x) for x in a)
    if not a or any(x <= 0 for x in a):
        raise InvalidParams("areas must be positive")
    return a


def has_property_cs(a: Sequence, chart: ChartSpec) -> tuple[bool, dict]:
    """Check ``sum(a) + min(a) < R`` and ``min(a) < lambda_s``.

    When both hold, the embedded product torus keeps displacement energy
    ``min(a)``; that consequence is only reported, never computed.
    """
    a = _positive(a)
    low = min(a)
    slack_capacity = chart.radius - (sum(a) + low)
    slack_sphere = chart.lambda_s - low if chart.lambda_s != math.inf else math.inf
    ok = slack_capacity > 0 and slack_sphere > 0
    margins = {
        "slack_capacity": format_bound(slack_capacity),
        "slack_sphere": format_bound(slack_sphere),
    }
    if ok:
        margins["displacement_energy"] = format_bound(low)
    return ok, margins


def epsilon_threshold(family: str, chart: ChartSpec) -> Bound:
    """Largest area parameter for which the embedded exotic tori stay local."""
    if family == "upsilon":
        scale = chart.radius / 2
    elif family == "theta":
        scale = 3 * chart.radius / 4
    else:
        raise InvalidParams(f"unknown family {family!r}")
    return min(scale, chart.lambda_s)


def theorem_d_condition(a, tail: Sequence, chart: ChartSpec) -> tuple[bool, dict]:
    """Smallness conditions for ``Theta x T(tail)`` inside the chart."""
    a = Fraction(a)
    tail = _positive(tail) if tail else ()
    if a <= 0:
        raise InvalidParams("area must be positive")
    third = a / 3
    clauses = {
        "tail_dominates": (not tail) or third <= min(tail),
        "capacity": 4 * a / 3 + sum(tail) < chart.radius,
        "sphere": third < chart.lambda_s,
    }
    report = dict(clauses)
    report["capacity_lhs"] = format_bound(4 * a / 3 + sum(tail))
    return all(clauses.values()), report
