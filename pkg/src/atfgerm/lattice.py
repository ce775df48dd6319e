"""Exact integer linear algebra on ``Z^n``.

Vectors are tuples of Python ints (or Fractions where stated), matrices are
tuples of row tuples.  Nothing here touches floating point.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DimensionMismatch, NotSquare, ZeroVector

IntVec = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def columns_to_matrix(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Matrix ``(v1|...|vk)`` with the given vectors as columns."""
    vectors = [tuple(int(x) for x in v) for v in vectors]
    if not vectors:
        raise ValueError("need at least one vector")
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch("vectors have different dimensions")
    return tuple(tuple(v[i] for v in vectors) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Sequence[Sequence[int]], v: Sequence) -> tuple:
    if len(a[0]) != len(v):
        raise DimensionMismatch("matrix/vector size mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*a))


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def dot(x: Sequence, y: Sequence):
    if len(x) != len(y):
        raise DimensionMismatch(f"dimensions {len(x)} and {len(y)} differ")
    return sum(a * b for a, b in zip(x, y))


def content(v: Sequence[int]) -> int:
    """gcd of the entries (0 for the zero vector)."""
    return math.gcd(*(int(x) for x in v))


def is_primitive(v: Sequence[int]) -> bool:
    return all(Fraction(x).denominator == 1 for x in v) and content(v) == 1


def primitivize(v: Sequence) -> tuple[IntVec, Fraction]:
    """Split a nonzero rational vector as ``scale * prim`` with ``prim`` primitive.

    >>> primitivize((Fraction(1, 2), Fraction(3, 2)))
    ((1, 3), Fraction(1, 2))
    """
    q = [Fraction(x) for x in v]
    if all(x == 0 for x in q):
        raise ZeroVector("cannot primitivize the zero vector")
    den = math.lcm(*(x.denominator for x in q))
    ints = [int(x * den) for x in q]
    g = math.gcd(*ints)
    prim = tuple(x // g for x in ints)
    return prim, Fraction(g, den)


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise NotSquare(f"matrix is not square")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det2(u: Sequence, v: Sequence):
    """``det(u|v)`` for plane vectors, i.e. ``u1*v2 - u2*v1``."""
    return u[0] * v[1] - u[1] * v[0]


def integral_index(vectors: Sequence[Sequence[int]]) -> int:
    """gcd of all maximal minors of the column matrix ``(v1|...|vk)``.

    Zero exactly when the vectors are linearly dependent.  Invariant under
    permuting the vectors and under ``GL(n, Z)`` acting on all of them.
    """
    m = columns_to_matrix(vectors)
    n, k = len(m), len(m[0])
    if k > n:
        raise DimensionMismatch(f"{k} vectors in dimension {n}: need k <= n")
    g = 0
    for rows in combinations(range(n), k):
        g = math.gcd(g, det([m[r] for r in rows]))
        if g == 1:
            break
    return g


def elementary_divisors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors ``d1 | d2 | ...`` of an integer matrix (Smith form diagonal)."""
    from sympy import ZZ
    from sympy.polys.matrices import DomainMatrix
    from sympy.polys.matrices.normalforms import invariant_factors

    rows = as_matrix(m)
    dm = DomainMatrix([[ZZ(x) for x in row] for row in rows], (len(rows), len(rows[0])), ZZ)
    return tuple(int(d) for d in invariant_factors(dm))


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    if any(len(row) != len(m) for row in m):
        raise NotSquare("unimodularity needs a square matrix")
    return abs(det(m)) == 1


def hnf_with_transform(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-operation Hermite normal form ``H = U @ M`` with ``U`` unimodular.

    ``H`` is in row echelon form, every pivot is positive and the entries
    above a pivot lie in ``[0, pivot)``.  It depends only on the orbit of
    ``M`` under left multiplication by ``GL(n, Z)``.
    """
    a = [list(row) for row in as_matrix(m)]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = [list(row) for row in identity(nrows)]

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def addmul(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def negate(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(a[i][c]), i))
            if piv != r:
                swap(r, piv)
            done = True
            for i in range(r + 1, nrows):
                if a[i][c]:
                    addmul(i, r, -(a[i][c] // a[r][c]))
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            negate(r)
        p = a[r][c]
        for i in range(r):
            addmul(i, r, -(a[i][c] // p))
        r += 1
    return as_matrix(a), as_matrix(u)


def hnf_canonical(m: Sequence[Sequence[int]]) -> IntMatrix:
    return hnf_with_transform(m)[0]


def inverse_unimodular(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Exact inverse of a unimodular matrix (Gauss-Jordan over the rationals)."""
    n = len(m)
    if not is_unimodular(m):
        raise ValueError("matrix is not unimodular")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    out = tuple(tuple(int(x) for x in row[n:]) for row in a)
    return out


def random_unimodular(n: int, rng: random.Random, steps: int = 12, bound: int = 3) -> IntMatrix:
    """Random element of ``GL(n, Z)`` built from elementary row operations."""
    u = [list(row) for row in identity(n)]
    if n == 1:
        return ((rng.choice((1, -1)),),)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        op = rng.random()
        if op < 0.15:
            u[i], u[j] = u[j], u[i]
        elif op < 0.25:
            u[i] = [-x for x in u[i]]
        else:
            q = rng.randint(-bound, bound)
            u[i] = [x + q * y for x, y in zip(u[i], u[j])]
    return as_matrix(u)
