"""Exact integer and rational linear algebra on N = Z^n and its dual M.

Vectors are plain tuples of ``int`` (lattice points, rays) or of
``fractions.Fraction`` (dual vectors that may fail to be integral).  Nothing
here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple, Sequence

Vector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


class ZeroVector(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class NoSolution(ArithmeticError):
    """Raised when a linear system over Q is inconsistent."""


class DualSolution(NamedTuple):
    coords: RationalVector
    integral: bool

    def as_ints(self) -> Vector:
        if not self.integral:
            raise ValueError(f"dual vector {self.coords} is not integral")
        return tuple(int(c) for c in self.coords)


def pairing(m: Sequence, u: Sequence):
    """The exact pairing <m, u>."""
    if len(m) != len(u):
        raise DimensionMismatch(f"cannot pair vectors of lengths {len(m)} and {len(u)}")
    return sum(a * b for a, b in zip(m, u))


def gcd_of(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g


def make_primitive(v: Sequence[int]) -> Vector:
    """Divide ``v`` by the gcd of its coordinates.

    >>> make_primitive((-3, 6, 9))
    (-1, 2, 3)
    """
    g = gcd_of(v)
    if g == 0:
        raise ZeroVector("cannot normalize the zero vector")
    return tuple(int(c) // g for c in v)


def is_primitive(v: Sequence[int]) -> bool:
    return gcd_of(v) == 1


def is_integral(m: Sequence) -> bool:
    return all(Fraction(c).denominator == 1 for c in m)


def det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix via Bareiss elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch(f"need a square system, got {n} rows of lengths {[len(r) for r in rows]}")
    if n == 0:
        return 1
    a = [[int(x) for x in r] for r in rows]
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


def _rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    return len(_rref(rows, len(rows[0]))[1])


def solve_dual(rays: Sequence[Sequence[int]], values: Sequence) -> DualSolution:
    """Find m with <m, rays[i]> = values[i] for every i.

    When the rays do not span, free coordinates are set to zero, which gives
    the basic solution supported on the pivot columns.  Raises
    :class:`NoSolution` if the system is inconsistent.
    """
    if len(rays) != len(values):
        raise DimensionMismatch("one value per ray is required")
    if not rays:
        raise DimensionMismatch("empty system has no ambient rank")
    n = len(rays[0])
    aug = [list(r) + [v] for r, v in zip(rays, values)]
    red, pivots = _rref(aug, n + 1)
    if n in pivots:
        raise NoSolution(f"inconsistent system for rays {list(rays)} and values {list(values)}")
    m = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        m[c] = row[n]
    coords = tuple(m)
    return DualSolution(coords, is_integral(coords))


def nullspace(rows: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """Primitive integer basis of the rational kernel {x : rows @ x = 0}."""
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    red, pivots = _rref(rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, c in zip(red, pivots):
            x[c] = -row[f]
        den = 1
        for v in x:
            den = den * v.denominator // gcd(den, v.denominator)
        basis.append(make_primitive([int(v * den) for v in x]))
    return basis


def unimodular_completion(u: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Return ``(A, A_inv)`` in GL_n(Z) with ``A @ u = e_1``.

    ``u`` must be primitive.  Rows 2..n of ``A`` give a surjection
    Z^n -> Z^(n-1) whose kernel is Z*u, and the first row is a dual vector
    pairing to 1 with ``u``.
    """
    n = len(u)
    w = [int(x) for x in u]
    if gcd_of(w) != 1:
        raise ValueError(f"{tuple(u)} is not primitive")
    a = [[int(i == j) for j in range(n)] for i in range(n)]

    def sub(dst: int, src: int, q: int) -> None:
        w[dst] -= q * w[src]
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]

    while sum(1 for x in w if x != 0) > 1:
        i = min((k for k in range(n) if w[k] != 0), key=lambda k: abs(w[k]))
        for j in range(n):
            if j != i and w[j] != 0:
                sub(j, i, w[j] // w[i])
    i = next(k for k in range(n) if w[k] != 0)
    if i != 0:
        w[0], w[i] = w[i], w[0]
        a[0], a[i] = a[i], a[0]
    if w[0] == -1:
        w[0] = 1
        a[0] = [-x for x in a[0]]
    return a, _inverse_unimodular(a)


def _inverse_unimodular(a: list[list[int]]) -> list[list[int]]:
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = _rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    inv = [[x for x in row[n:]] for row in red[:n]]
    if not all(x.denominator == 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def integral_solution(u: Sequence[int], value: int) -> Vector:
    """A canonical integral m with <m, u> = value, for primitive ``u``."""
    a, _ = unimodular_completion(u)
    return tuple(value * x for x in a[0])


def maximal_minors_gcd(vectors: Sequence[Sequence[int]]) -> int:
    """gcd of the k x k minors of a k x n integer matrix (0 if rank < k)."""
    from itertools import combinations

    k = len(vectors)
    if k == 0:
        return 1
    n = len(vectors[0])
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, det([[v[c] for c in cols] for v in vectors]))
        if g == 1:
            return 1
    return abs(g)
