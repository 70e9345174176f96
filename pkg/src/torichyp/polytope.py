"""Exact lattice polytopes in low rank.

A :class:`LatticePolytope` is stored as halfspaces ``<m, normal> >= -offset``
with integer normals and offsets.  Vertices are exact rationals, computed by
intersecting every rank-sized subset of halfspaces.  Lattice points are found
by scanning the bounding box of the vertices: all coordinates but the last
are enumerated and the last one is solved as an integer interval.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import ceil, floor, lcm
from typing import Iterable, Sequence

import numpy as np

from .lattice import Vector, det, gcd_of, is_integral, make_primitive, nullspace, pairing, rank

# int64 scan is exact while every partial sum stays below this bound
_INT64_SAFE = 2**62


class Unbounded(ValueError):
    pass


class OriginNotInterior(ValueError):
    pass


def _cramer(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[Fraction, ...] | None:
    d = det(rows)
    if d == 0:
        return None
    n = len(rows)
    out = []
    for j in range(n):
        mj = [list(r) for r in rows]
        for i in range(n):
            mj[i][j] = rhs[i]
        out.append(Fraction(det(mj), d))
    return tuple(out)


class LatticePolytope:
    """``{m in R^n : <m, normal_i> >= -offset_i for all i}``."""

    def __init__(self, halfspaces: Iterable[tuple[Sequence[int], int]], ambient_rank: int | None = None):
        hs = [(tuple(int(c) for c in normal), int(offset)) for normal, offset in halfspaces]
        if ambient_rank is None:
            if not hs:
                raise ValueError("ambient rank needed for a polytope without halfspaces")
            ambient_rank = len(hs[0][0])
        if any(len(nm) != ambient_rank for nm, _ in hs):
            raise ValueError("halfspace normals must match the ambient rank")
        self.halfspaces: tuple[tuple[Vector, int], ...] = tuple(hs)
        self.ambient_rank = ambient_rank

    def __repr__(self):
        return f"<LatticePolytope rank={self.ambient_rank} halfspaces={len(self.halfspaces)}>"

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]]) -> "LatticePolytope":
        """Facet description of the convex hull of full-dimensional integer points."""
        pts = list(dict.fromkeys(tuple(int(c) for c in p) for p in points))
        if not pts:
            raise ValueError("need at least one point")
        n = len(pts[0])
        base = pts[0]
        diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
        if rank(diffs) != n:
            raise ValueError("points are not full-dimensional")
        facets: dict[tuple[Vector, int], None] = {}
        for sub in combinations(range(len(pts)), n):
            rows = [tuple(a - b for a, b in zip(pts[i], pts[sub[0]])) for i in sub[1:]]
            if rank(rows) != n - 1:
                continue
            (normal,) = nullspace(rows, n)
            vals = [pairing(normal, p) for p in pts]
            h = pairing(normal, pts[sub[0]])
            if all(v >= h for v in vals):
                facets[(normal, -h)] = None
            elif all(v <= h for v in vals):
                facets[(tuple(-c for c in normal), h)] = None
        poly = cls(list(facets), n)
        poly._hull_points = pts
        return poly

    # --- vertices --------------------------------------------------------

    def _check_bounded(self) -> None:
        n = self.ambient_rank
        normals = [nm for nm, _ in self.halfspaces]
        if rank(normals) < n:
            raise Unbounded("halfspace normals do not span: the region contains a line")
        # recession cone {d : <d, normal> >= 0} is {0} iff it has no extreme ray
        for sub in combinations(range(len(normals)), n - 1):
            rows = [normals[i] for i in sub]
            if n > 1 and rank(rows) != n - 1:
                continue
            for d in nullspace(rows, n):
                for sign in (1, -1):
                    dd = tuple(sign * x for x in d)
                    if all(pairing(dd, nm) >= 0 for nm in normals):
                        raise Unbounded(f"recession direction {dd}")

    @cached_property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        """All vertices as exact rationals, sorted; empty for the empty polytope."""
        self._check_bounded()
        n = self.ambient_rank
        found = set()
        for sub in combinations(self.halfspaces, n):
            sol = _cramer([nm for nm, _ in sub], [-off for _, off in sub])
            if sol is None:
                continue
            if all(pairing(sol, nm) >= -off for nm, off in self.halfspaces):
                found.add(sol)
        return tuple(sorted(found))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def has_integral_vertices(self) -> bool:
        return all(is_integral(v) for v in self.vertices)

    def contains(self, point: Sequence) -> bool:
        return all(pairing(point, nm) >= -off for nm, off in self.halfspaces)

    def strictly_contains(self, point: Sequence) -> bool:
        return all(pairing(point, nm) > -off for nm, off in self.halfspaces)

    # --- lattice points --------------------------------------------------

    def bounding_box(self) -> tuple[Vector, Vector] | None:
        verts = self.vertices
        if not verts:
            return None
        n = self.ambient_rank
        lo = tuple(ceil(min(v[i] for v in verts)) for i in range(n))
        hi = tuple(floor(max(v[i] for v in verts)) for i in range(n))
        return lo, hi

    def _scan(self, shrink: int, want_points: bool):
        """Count (and optionally list) points with <m, normal> >= -offset + shrink."""
        n = self.ambient_rank
        box = self.bounding_box()
        if box is None or any(l > h for l, h in zip(*box)):
            return 0, np.zeros((0, n), dtype=np.int64)
        lo, hi = box
        normals = [nm for nm, _ in self.halfspaces]
        rhs = [-off + shrink for _, off in self.halfspaces]
        span = max(max(abs(l), abs(h)) for l, h in zip(lo, hi)) + 1
        weight = max(sum(abs(c) for c in nm) for nm in normals) if normals else 0
        biggest = span * weight + max((abs(r) for r in rhs), default=0)
        dtype = np.int64 if biggest < _INT64_SAFE else object
        A = np.array([nm[:-1] for nm in normals], dtype=dtype).reshape(len(normals), n - 1)
        c = np.array([nm[-1] for nm in normals], dtype=dtype)
        r = np.array(rhs, dtype=dtype)
        axes = [np.arange(lo[i], hi[i] + 1, dtype=np.int64).astype(dtype) for i in range(n - 1)]
        if axes:
            grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n - 1)
        else:
            grid = np.zeros((1, 0), dtype=dtype)
        # need c_j * t >= r_j - A_j . x for every j, with lo[-1] <= t <= hi[-1]
        need = r[None, :] - grid @ A.T if n > 1 else np.broadcast_to(r, (1, len(r)))
        t_lo = np.full(grid.shape[0], lo[-1], dtype=dtype)
        t_hi = np.full(grid.shape[0], hi[-1], dtype=dtype)
        keep = np.ones(grid.shape[0], dtype=bool)
        for j in range(len(rhs)):
            cj = c[j]
            col = need[:, j]
            if cj > 0:
                t_lo = np.maximum(t_lo, -((-col) // cj))
            elif cj < 0:
                t_hi = np.minimum(t_hi, (-col) // (-cj))
            else:
                keep &= col <= 0
        counts = np.where(keep, t_hi - t_lo + 1, 0)
        counts = np.maximum(counts, 0)
        total = int(counts.sum())
        if not want_points:
            return total, None
        if dtype is np.int64:
            reps = counts.astype(np.int64)
            xs = np.repeat(grid, reps, axis=0)
            starts = np.repeat(np.cumsum(reps) - reps, reps)
            ts = np.repeat(t_lo, reps) + (np.arange(total, dtype=np.int64) - starts)
            return total, np.column_stack([xs, ts]).astype(np.int64).reshape(total, n)
        rows = []
        for x, a, b in zip(grid[counts > 0], t_lo[counts > 0], t_hi[counts > 0]):
            for t in range(int(a), int(b) + 1):
                rows.append(tuple(int(v) for v in x) + (t,))
        pts = np.array(rows, dtype=np.int64 if dtype is np.int64 else object).reshape(len(rows), n)
        return total, pts

    def count_lattice_points(self) -> int:
        return self._counts[0]

    def count_interior_lattice_points(self) -> int:
        return self._counts[1]

    @cached_property
    def _counts(self) -> tuple[int, int]:
        return self._scan(0, False)[0], self._scan(1, False)[0]

    @cached_property
    def lattice_points(self) -> tuple[Vector, ...]:
        """Lattice points in lexicographic order."""
        return tuple(tuple(int(v) for v in p) for p in self._scan(0, True)[1])

    @cached_property
    def interior_lattice_points(self) -> tuple[Vector, ...]:
        """Lattice points satisfying every halfspace strictly.

        Normals and offsets are integral, so strict means ``>= -offset + 1``.
        """
        return tuple(tuple(int(v) for v in p) for p in self._scan(1, True)[1])

    def lattice_point_array(self) -> np.ndarray:
        return self._scan(0, True)[1]

    # --- duality ---------------------------------------------------------

    def origin_is_interior(self) -> bool:
        return not self.is_empty and all(off > 0 for _, off in self.halfspaces)

    def polar(self) -> "LatticePolytope":
        """``{y : <y, x> >= -1 for x in P}``, one halfspace per vertex of P."""
        if not self.origin_is_interior():
            raise OriginNotInterior("polar needs the origin in the interior")
        hs = []
        for v in self.vertices:
            den = lcm(*(x.denominator for x in v))
            hs.append((tuple(int(x * den) for x in v), den))
        return LatticePolytope(hs, self.ambient_rank)

    def is_reflexive(self) -> bool:
        if not self.origin_is_interior():
            return False
        return self.has_integral_vertices() and self.polar().has_integral_vertices()

    def facets(self) -> list[tuple[Vector, int, tuple[int, ...]]]:
        """Irredundant facet halfspaces with the indices of the vertices they contain."""
        verts = self.vertices
        n = self.ambient_rank
        out = {}
        for nm, off in self.halfspaces:
            on = tuple(i for i, v in enumerate(verts) if pairing(v, nm) == -off)
            if not on:
                continue
            base = verts[on[0]]
            diffs = [tuple(a - b for a, b in zip(verts[i], base)) for i in on[1:]]
            if rank(diffs) == n - 1:
                scale = gcd_of(nm)
                key = (make_primitive(nm), Fraction(off, scale))
                out.setdefault(key, on)
        return [(nm, off, on) for (nm, off), on in sorted(out.items())]

    def same_set(self, other: "LatticePolytope") -> bool:
        return self.vertices == other.vertices


def _encode(points: np.ndarray, lo: np.ndarray, radix: np.ndarray) -> np.ndarray:
    keys = np.zeros(len(points), dtype=np.int64)
    for i in range(points.shape[1]):
        keys = keys * radix[i] + (points[:, i] - lo[i])
    return keys


def minkowski_cover(big: LatticePolytope, p1: LatticePolytope, p2: LatticePolytope):
    """Check that every lattice point of ``big`` is a sum of points of ``p1`` and ``p2``.

    Returns ``(True, None)`` or ``(False, first_uncovered_point)``, the
    witness being the lexicographically first uncovered point.
    """
    target = big.lattice_point_array()
    a = p1.lattice_point_array()
    b = p2.lattice_point_array()
    if len(target) == 0:
        return True, None
    if len(a) == 0 or len(b) == 0:
        return False, tuple(int(x) for x in target[0])
    # scan the smaller summand, hash the larger
    if len(a) < len(b):
        a, b = b, a
    lo = target.min(axis=0) - b.max(axis=0)
    hi = target.max(axis=0) - b.min(axis=0)
    radix = hi - lo + 1
    if target.dtype == object or a.dtype == object or float(np.prod(radix.astype(float))) >= 2**62:
        hashed = {tuple(int(x) for x in p) for p in a}

        def member(rows):
            return np.fromiter((tuple(int(x) for x in r) in hashed for r in rows), dtype=bool, count=len(rows))
    else:
        inside = np.all((a >= lo) & (a <= hi), axis=1)
        akeys = np.unique(_encode(a[inside], lo, radix))

        def member(rows):
            return np.isin(_encode(rows, lo, radix), akeys, assume_unique=False)
    covered = np.zeros(len(target), dtype=bool)
    for q in b:
        idx = np.flatnonzero(~covered)
        if len(idx) == 0:
            break
        covered[idx[member(target[idx] - q)]] = True
    if covered.all():
        return True, None
    first = int(np.flatnonzero(~covered)[0])
    return False, tuple(int(x) for x in target[first])


def face_fan(polytope: LatticePolytope):
    """Fan over the faces of a reflexive polytope: rays = vertices, cones = facets.

    Rays keep the order of the points the polytope was built from, when known.
    """
    from .fan import Fan

    if not polytope.is_reflexive():
        raise ValueError("face fans are built only for reflexive polytopes")
    verts = polytope.vertices
    vset = set(verts)
    source = getattr(polytope, "_hull_points", None) or [tuple(int(x) for x in v) for v in verts]
    rays = [p for p in source if tuple(Fraction(x) for x in p) in vset]
    index = {tuple(Fraction(x) for x in r): i for i, r in enumerate(rays)}
    cones = [tuple(sorted(index[verts[i]] for i in on)) for _, _, on in polytope.facets()]
    return Fan(rays, sorted(cones))
