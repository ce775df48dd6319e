"""Rational formulas for the torus reductions of ``C^3`` by ``(mu1 + k mu3, mu2 - mu3)``.

Everything is a literal piecewise affine formula; positivity requirements
are checked at run time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidParams, NonPositiveOutput, OutOfRange, OutsideDomain


class _Wall:
    """Marker for versal parameters on ``b2 = 0``, where no product torus is attached."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "WALL"


WALL = _Wall()


@dataclass(frozen=True)
class UpsilonParams:
    k: int
    a1: Fraction
    a2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a1", Fraction(self.a1))
        object.__setattr__(self, "a2", Fraction(self.a2))
        if int(self.k) != self.k or self.k < 2:
            raise InvalidParams(f"k must be an integer >= 2, got {self.k}")
        if self.a1 <= 0 or self.a2 <= 0:
            raise InvalidParams("areas must be positive")
        if not self.a2 < self.a1 / self.k:
            raise InvalidParams(f"need a2 < a1/k, got a2={self.a2}, a1/k={self.a1 / self.k}")

    @property
    def gap(self) -> Fraction:
        """``a1 - k a2``, the first area of the associated product torus."""
        return self.a1 - self.k * self.a2


def _pair(c: Sequence) -> tuple[Fraction, Fraction]:
    c1, c2 = (Fraction(x) for x in c)
    return c1, c2


def alpha_k(k: int, c: Sequence) -> Fraction:
    """Area of the reduced space at level ``c``."""
    c1, c2 = _pair(c)
    if not (c1 > 0 and c1 + k * c2 > 0):
        raise OutsideDomain(f"level {c1}, {c2} is not interior to the moment image for k={k}")
    return c1 / k if c2 >= 0 else c1 / k + c2


def orbit_lift(k: int, c: Sequence, c3) -> tuple[Fraction, Fraction, Fraction]:
    """Areas of the product torus lying over the orbit ``H = c3`` of the reduced space."""
    c1, c2 = _pair(c)
    c3 = Fraction(c3)
    top = alpha_k(k, (c1, c2))
    if not 0 < c3 < top:
        raise OutOfRange(f"need 0 < c3 < {top}, got {c3}")
    if c2 >= 0:
        out = (c1 - k * c3, c3 + c2, c3)
    else:
        out = (c1 - k * c3 + k * c2, c3, c3 - c2)
    if any(x <= 0 for x in out):
        raise OutOfRange(f"lift {out} has a nonpositive area")
    return out


def in_Uk(k: int, a1, a2) -> bool:
    a1, a2 = Fraction(a1), Fraction(a2)
    return a1 / (k + 1) <= a2 < a1 / k


def is_monotone_upsilon(k: int, a1, a2) -> bool:
    return Fraction(a1) == (k + 1) * Fraction(a2)


def versal_branches(p: UpsilonParams):
    """``(constants, linear rows)`` of the two affine branches, ``b2 > 0`` first.

    Output coordinate ``i`` of the branch equals
    ``constants[i] + <rows[i], b>``.
    """
    k, d, a2 = p.k, p.gap, p.a2
    consts = (d, a2, a2)
    plus = ((1, 0, -k), (0, 1, 1), (0, 0, 1))
    minus = ((1, k, -k), (0, 0, 1), (0, -1, 1))
    return (consts, plus), (consts, minus)


def versal_to_product(p: UpsilonParams, b: Sequence):
    """Areas of the product torus isotopic to the versal torus at ``b``.

    Returns ``WALL`` when ``b2 == 0``.
    """
    b = tuple(Fraction(x) for x in b)
    if len(b) != 3:
        raise ValueError("versal parameter must have three entries")
    if b[1] == 0:
        return WALL
    plus, minus = versal_branches(p)
    consts, rows = plus if b[1] > 0 else minus
    out = tuple(c + sum(r * x for r, x in zip(row, b)) for c, row in zip(consts, rows))
    if any(x <= 0 for x in out):
        raise NonPositiveOutput(f"versal parameter too large: areas {out}")
    return out
