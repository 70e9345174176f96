"""Fans in N = Z^n: predicates, walls, star fans and small Q-factorializations.

A fan stores its primitive rays and its maximal cones (as sorted tuples of
ray indices).  Faces are never stored; they are derived from facet normals
when needed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, wraps
from itertools import combinations
from typing import NamedTuple, Sequence

from .lattice import (
    Vector,
    det,
    gcd_of,
    is_primitive,
    make_primitive,
    maximal_minors_gcd,
    nullspace,
    pairing,
    rank,
    unimodular_completion,
)

Cone = tuple[int, ...]


def _memo(func):
    """Cache a pure function of a fan (and hashable arguments) on the fan instance."""
    key = f"_memo_{func.__name__}"

    @wraps(func)
    def wrapper(fan, *args):
        store = fan.__dict__.setdefault(key, {})
        if args not in store:
            store[args] = func(fan, *args)
        return store[args]

    return wrapper


class FanError(ValueError):
    pass


class Facet(NamedTuple):
    normal: Vector  # primitive, nonnegative on the cone
    rays: frozenset[int]


class Wall(NamedTuple):
    """A codimension-one cone together with the two maximal cones containing it."""

    rays: Cone
    cones: tuple[int, int]


def cone_facets(vectors: Sequence[Sequence[int]], labels: Sequence[int] | None = None) -> list[Facet]:
    """Facets of the cone generated by ``vectors`` inside its own span.

    Normals are primitive integer vectors that are >= 0 on the cone, zero on
    the facet and positive on some generator.  ``labels`` name the generators
    in the returned ray sets (defaults to positions).
    """
    if labels is None:
        labels = range(len(vectors))
    labels = list(labels)
    vecs = [tuple(v) for v in vectors]
    if not vecs:
        return []
    n = len(vecs[0])
    r = rank(vecs)
    if r == 0:
        return []
    if r == 1:
        return [Facet(tuple(vecs[0]), frozenset())]
    seen: dict[frozenset[int], Facet] = {}
    idx = range(len(vecs))
    for sub in combinations(idx, r - 1):
        rows = [vecs[i] for i in sub]
        if rank(rows) != r - 1:
            continue
        normal = None
        for cand in nullspace(rows, n):
            if any(pairing(cand, v) != 0 for v in vecs):
                normal = cand
                break
        if normal is None:
            continue
        vals = [pairing(normal, v) for v in vecs]
        if all(x >= 0 for x in vals):
            pass
        elif all(x <= 0 for x in vals):
            normal = tuple(-c for c in normal)
            vals = [-x for x in vals]
        else:
            continue
        on = frozenset(labels[i] for i in idx if vals[i] == 0)
        if on not in seen:
            seen[on] = Facet(normal, on)
    # Drop non-maximal zero sets (can occur when the cone is not pointed).
    facets = [f for f in seen.values() if not any(f.rays < g.rays for g in seen.values())]
    return sorted(facets, key=lambda f: sorted(f.rays))


@dataclass(frozen=True, eq=False, init=False)
class Fan:
    """A rational polyhedral fan given by primitive rays and maximal cones."""

    rays: tuple[Vector, ...]
    cones: tuple[Cone, ...]
    name: str = field(default="", compare=False)

    def __init__(self, rays, cones, name: str = "", validate: bool = True):
        rays = tuple(tuple(int(c) for c in r) for r in rays)
        cones = tuple(tuple(sorted(set(int(i) for i in c))) for c in cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "cones", cones)
        object.__setattr__(self, "name", name)
        if validate:
            self._validate()

    def _validate(self) -> None:
        if not self.rays:
            raise FanError("a fan needs at least one ray")
        n = len(self.rays[0])
        if n < 1:
            raise FanError("rank must be positive")
        for r in self.rays:
            if len(r) != n:
                raise FanError(f"ray {r} does not have rank {n}")
            if not is_primitive(r):
                raise FanError(f"ray {r} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise FanError("duplicate rays")
        used = set()
        for c in self.cones:
            if not c:
                raise FanError("empty maximal cone")
            for i in c:
                if not 0 <= i < len(self.rays):
                    raise FanError(f"cone {c} references missing ray {i}")
            used.update(c)
        if used != set(range(len(self.rays))):
            missing = sorted(set(range(len(self.rays))) - used)
            raise FanError(f"rays {missing} lie in no maximal cone")
        if len(set(self.cones)) != len(self.cones):
            raise FanError("duplicate maximal cones")
        for c in self.cones:
            vecs = [self.rays[i] for i in c]
            facets = cone_facets(vecs, c)
            r = rank(vecs)
            # strongly convex: some normal combination is positive on every ray
            if r > 1:
                total = [sum(f.normal[k] for f in facets) for k in range(n)]
                if any(pairing(total, v) <= 0 for v in vecs):
                    raise FanError(f"cone {c} is not strongly convex")
            elif r == 1 and len(c) > 1:
                raise FanError(f"cone {c} repeats a ray direction")
            # every listed generator must span an extremal ray
            for i in c:
                through = [f.normal for f in facets if i in f.rays]
                if r > 1 and rank(through) < r - 1:
                    raise FanError(f"ray {i} is not extremal in cone {c}")

    def __eq__(self, other):
        if not isinstance(other, Fan):
            return NotImplemented
        return self.rays == other.rays and self.cones == other.cones

    def __hash__(self):
        return hash((self.rays, self.cones))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Fan{label} rank={self.dim} rays={len(self.rays)} cones={len(self.cones)}>"

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def ray_vectors(self, cone: Cone) -> list[Vector]:
        return [self.rays[i] for i in cone]

    @cached_property
    def facets(self) -> tuple[tuple[Facet, ...], ...]:
        return tuple(tuple(cone_facets(self.ray_vectors(c), c)) for c in self.cones)

    def cones_containing(self, ray: int) -> list[int]:
        return [k for k, c in enumerate(self.cones) if ray in c]

    def is_face(self, cone_index: int, rays: Sequence[int]) -> bool:
        """Whether ``rays`` are exactly the rays of a face of the given cone."""
        cone = self.cones[cone_index]
        want = frozenset(rays)
        if not want <= set(cone):
            return False
        span = set(cone)
        for f in self.facets[cone_index]:
            if want <= f.rays:
                span &= f.rays
        return span == want

    # serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"rank": self.dim, "rays": [list(r) for r in self.rays], "cones": [list(c) for c in self.cones]}

    def dumps(self) -> str:
        d = self.to_dict()
        lines = ["{", f'  "rank": {d["rank"]},', '  "rays": [']
        lines += [f"    {json.dumps(r)}" + ("," if k < len(d["rays"]) - 1 else "") for k, r in enumerate(d["rays"])]
        lines += ["  ],", '  "cones": [']
        lines += [f"    {json.dumps(c)}" + ("," if k < len(d["cones"]) - 1 else "") for k, c in enumerate(d["cones"])]
        lines += ["  ]", "}"]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, d: dict, name: str = "") -> "Fan":
        try:
            n = int(d["rank"])
            rays, cones = d["rays"], d["cones"]
        except (KeyError, TypeError) as exc:
            raise FanError(f"fan document needs rank, rays and cones: {exc}") from exc
        if any(len(r) != n for r in rays):
            raise FanError(f"ray lengths disagree with rank {n}")
        return cls(rays, cones, name=name)

    @classmethod
    def loads(cls, text: str, name: str = "") -> "Fan":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FanError(f"fan file is not valid JSON: {exc}") from exc
        return cls.from_dict(d, name=name)


@_memo
def is_complete(fan: Fan) -> bool:
    """Full-dimensional maximal cones, each wall shared by exactly two of them."""
    n = fan.dim
    if any(rank(fan.ray_vectors(c)) != n for c in fan.cones):
        return False
    counts: dict[frozenset[int], int] = {}
    for facets in fan.facets:
        for f in facets:
            counts[f.rays] = counts.get(f.rays, 0) + 1
    return all(v == 2 for v in counts.values())


@_memo
def is_simplicial(fan: Fan) -> bool:
    return all(len(c) == rank(fan.ray_vectors(c)) for c in fan.cones)


@_memo
def is_smooth(fan: Fan) -> bool:
    for c in fan.cones:
        vecs = fan.ray_vectors(c)
        if len(c) != rank(vecs):
            return False
        if len(c) == fan.dim:
            if abs(det(vecs)) != 1:
                return False
        elif maximal_minors_gcd(vecs) != 1:
            return False
    return True


def is_projective_space(fan: Fan) -> bool:
    """The P^n fan: n+1 rays, n+1 maximal cones, smooth and complete."""
    n = fan.dim
    return len(fan.rays) == n + 1 and len(fan.cones) == n + 1 and is_smooth(fan) and is_complete(fan)


def walls(fan: Fan) -> list[Wall]:
    """All codimension-one cones with their two adjacent maximal cones."""
    if not is_complete(fan):
        raise FanError("walls are only defined here for complete fans")
    where: dict[frozenset[int], list[int]] = {}
    for k, facets in enumerate(fan.facets):
        for f in facets:
            where.setdefault(f.rays, []).append(k)
    out = [Wall(tuple(sorted(rays)), (ks[0], ks[1])) for rays, ks in where.items()]
    return sorted(out)


@dataclass(frozen=True)
class StarFan:
    """The fan of the invariant divisor V(rho), in the quotient N / Z u_rho.

    ``ray_map`` sends parent ray indices adjacent to rho to star ray indices,
    ``cone_map[k]`` is a parent cone whose image is star cone ``k``,
    ``projection`` (rows) is the quotient map Z^n -> Z^(n-1) and
    ``lifts[s]`` is a vector of Z^n projecting onto star ray ``s``.
    ``multiplicity[s]`` is the index c with projection(parent ray) = c * star ray.
    """

    fan: Fan
    parent_ray: int
    ray_map: dict
    cone_map: tuple[int, ...]
    projection: tuple[Vector, ...]
    lifts: tuple[Vector, ...]
    multiplicity: tuple[int, ...]


@_memo
def star_fan(fan: Fan, ray: int) -> StarFan:
    if not 0 <= ray < len(fan.rays):
        raise FanError(f"no ray with index {ray}")
    if fan.dim < 2:
        raise FanError("star fans need rank >= 2")
    u = fan.rays[ray]
    a, a_inv = unimodular_completion(u)
    proj = [tuple(row) for row in a[1:]]

    def project(v):
        return tuple(pairing(row, v) for row in proj)

    adjacent: set[int] = set()
    per_cone: list[tuple[int, list[int]]] = []
    for k in fan.cones_containing(ray):
        cone = fan.cones[k]
        nbrs = [j for j in cone if j != ray and fan.is_face(k, (ray, j))]
        per_cone.append((k, nbrs))
        adjacent.update(nbrs)
    order = sorted(adjacent)
    ray_map = {j: s for s, j in enumerate(order)}
    star_rays, mult, lifts = [], [], []
    for j in order:
        img = project(fan.rays[j])
        prim = make_primitive(img)
        star_rays.append(prim)
        mult.append(gcd_of(img))
        lift = [sum(a_inv[r][c + 1] * prim[c] for c in range(len(prim))) for r in range(len(u))]
        lifts.append(tuple(lift))
    cones, cone_map = [], []
    for k, nbrs in per_cone:
        sc = tuple(sorted(ray_map[j] for j in nbrs))
        if sc not in cones:
            cones.append(sc)
            cone_map.append(k)
    name = f"{fan.name}/star({ray})" if fan.name else ""
    sf = Fan(star_rays, cones, name=name)
    return StarFan(sf, ray, ray_map, tuple(cone_map), tuple(proj), tuple(lifts), tuple(mult))


def _lex_key(fan: Fan):
    return lambda i: fan.rays[i]


def _pulling(fan: Fan, rays: tuple[int, ...]) -> list[Cone]:
    vecs = fan.ray_vectors(rays)
    r = rank(vecs)
    if len(rays) == r:
        return [tuple(sorted(rays))]
    apex = min(rays, key=_lex_key(fan))
    out: list[Cone] = []
    for f in cone_facets(vecs, rays):
        if apex in f.rays:
            continue
        for simplex in _pulling(fan, tuple(sorted(f.rays))):
            out.append(tuple(sorted(simplex + (apex,))))
    return out


def small_qfactorialization(fan: Fan) -> Fan:
    """Ray-preserving simplicial refinement via pulling at the lex-smallest ray.

    Pulling triangulations with respect to one global order restrict to
    pulling triangulations on shared faces, so the pieces glue to a fan.
    """
    if is_simplicial(fan):
        return fan
    cones: list[Cone] = []
    for c in fan.cones:
        for s in _pulling(fan, c):
            if s not in cones:
                cones.append(s)
    name = f"{fan.name}'" if fan.name else ""
    return Fan(fan.rays, cones, name=name)
