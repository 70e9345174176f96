"""Regenerate src/torichyp/data/census_excerpt.txt.

Random hulls of points of {-1,0,1}^3 are kept when reflexive and not yet
seen up to a coarse invariant (vertex count, facet count, lattice point
counts of the polytope and its polar, sorted facet sizes).  The P^3 simplex
is always record 0.  Deterministic for a fixed seed.
"""

import random
import sys
from itertools import product
from pathlib import Path

from torichyp.ingest import PolytopeRecord, format_palp
from torichyp.polytope import LatticePolytope

TARGET = 50
SEED = 20240607
OUT = Path(__file__).resolve().parents[1] / "src" / "torichyp" / "data" / "census_excerpt.txt"


def invariant(p: LatticePolytope):
    q = p.polar()
    return (
        len(p.vertices),
        len(p.facets()),
        p.count_lattice_points(),
        q.count_lattice_points(),
        tuple(sorted(len(on) for _, _, on in p.facets())),
    )


def main(target: int = TARGET) -> int:
    rng = random.Random(SEED)
    cube = [p for p in product((-1, 0, 1), repeat=3) if any(p)]
    simplex = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
    found, seen = [], set()
    candidates = [simplex]
    tries = 0
    while len(found) < target:
        if candidates:
            pts = candidates.pop()
        else:
            pts = rng.sample(cube, rng.randint(4, 9))
        tries += 1
        try:
            poly = LatticePolytope.from_points(pts)
        except ValueError:
            continue
        if not poly.is_reflexive():
            continue
        key = invariant(poly)
        if key in seen:
            continue
        seen.add(key)
        verts = tuple(tuple(int(x) for x in v) for v in poly.vertices)
        if pts is simplex:
            verts = tuple(simplex)
        found.append(PolytopeRecord(len(found), (0, 0), verts))
    OUT.write_text(format_palp(found))
    print(f"wrote {len(found)} records after {tries} hulls to {OUT}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
