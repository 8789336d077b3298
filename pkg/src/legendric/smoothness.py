"""Smoothness of the toric embedding via vertex-chart semigroups, and the
exhaustive classification over bounded weight tuples.

At a hull vertex ``v`` the chart semigroup is generated by ``{w - v}`` over
the configuration.  The embedded variety is smooth at the corresponding
fixed point iff that semigroup is free of rank ``dim``: its minimal
generators number exactly ``dim`` and form a basis of the lattice ``M_v``
they generate.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Sequence

from legendric.orbit import (
    WeightConfiguration,
    WeightTuple,
    is_nondegenerate,
    verify_legendrian,
    weight_configuration,
)
from legendric.polytope import (
    DegenerateConfiguration,
    LatticePolytope,
    convex_hull,
    edges,
    hull_tuple,
    is_simple,
)
from legendric.rational import determinant, hermite_normal_form, lattice_covolume
from legendric.symplectic import star_condition

Point = tuple[int, ...]

IDENTIFICATIONS = {
    (2, 1, 1): "P1xQ1",
    (1, 1, 1): "P2 blown up in three non-colinear points",
    (1, 1, 1, 1): "P1xP1xP1",
}

DEFAULT_BOUNDS = {3: 20, 4: 10}
DEFAULT_BOUND_HIGH = 6


def default_bound(n: int) -> int:
    return DEFAULT_BOUNDS.get(n, DEFAULT_BOUND_HIGH)


class NotAVertex(ValueError):
    pass


class NotPointed(ValueError):
    pass


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class VertexChart:
    vertex: Point
    generators: tuple[Point, ...]
    lattice: tuple[Point, ...]  # HNF basis of M_v
    cone_normals: tuple[tuple[int, ...], ...]  # n . x <= 0 on the cone
    neighbors: tuple[Point, ...]  # adjacent hull vertices

    @property
    def dim(self) -> int:
        return len(self.vertex)

    @property
    def functional(self) -> tuple[int, ...]:
        """An integer functional strictly positive on every generator."""
        return tuple(-sum(c) for c in zip(*self.cone_normals))

    @property
    def lattice_index(self) -> int:
        """Index of ``M_v`` in Z^dim (0 if ``M_v`` is not of full rank)."""
        if len(self.lattice) != self.dim:
            return 0
        return lattice_covolume(self.lattice)


def vertex_chart(
    source: WeightConfiguration | Sequence[Point], v: Sequence[int], poly: LatticePolytope | None = None
) -> VertexChart:
    points = source.points if isinstance(source, WeightConfiguration) else tuple(map(tuple, source))
    poly = convex_hull(source) if poly is None else poly
    v = tuple(v)
    if v not in poly.vertices:
        raise NotAVertex(f"{v} is not a vertex of the hull")
    gens = []
    for w in points:
        d = tuple(x - y for x, y in zip(w, v))
        if any(d) and d not in gens:
            gens.append(d)
    es = edges(poly)
    neighbors = tuple(sorted(q for e in es.edges if v in e for q in e if q != v))
    return VertexChart(
        vertex=v,
        generators=tuple(gens),
        lattice=tuple(hermite_normal_form(gens)),
        cone_normals=tuple(f.normal for f in poly.facets_through(v)),
        neighbors=neighbors,
    )


def _semigroup_membership(chart: VertexChart):
    gens = chart.generators
    phi = chart.functional
    weights = [_dot(phi, g) for g in gens]
    if min(weights) <= 0:
        raise NotPointed("generators do not lie in a pointed cone")
    smallest = min(weights)
    normals = chart.cone_normals

    @lru_cache(maxsize=None)
    def member(x: Point) -> bool:
        if not any(x):
            return True
        # the number of summands is at most phi(x) / min phi(g_i)
        if _dot(phi, x) < smallest:
            return False
        if any(_dot(c, x) > 0 for c in normals):
            return False
        return any(member(tuple(a - b for a, b in zip(x, g))) for g in gens)

    return member


def minimal_generators(chart: VertexChart) -> list[Point]:
    """Generators that are not a sum of two or more generators."""
    member = _semigroup_membership(chart)
    out = []
    for g in chart.generators:
        reducible = any(
            h != g and member(tuple(a - b for a, b in zip(g, h))) for h in chart.generators
        )
        if not reducible:
            out.append(g)
    return out


def is_lattice_basis(vectors: Sequence[Point], lattice: Sequence[Point]) -> bool:
    """Whether ``vectors`` (assumed inside ``lattice``) form a basis of it."""
    if len(vectors) != len(lattice) or len(lattice) != len(vectors[0] if vectors else ()):
        return False
    return lattice_covolume(vectors) == lattice_covolume(lattice) != 0


def is_smooth_at_vertex(chart: VertexChart) -> bool:
    # every extremal ray carries a minimal generator, so a vertex with more
    # than dim edges can be rejected before the semigroup search
    if len(chart.neighbors) != chart.dim:
        return False
    mins = minimal_generators(chart)
    return len(mins) == chart.dim and is_lattice_basis(mins, chart.lattice)


def edge_vectors(chart: VertexChart) -> list[Point]:
    """The shortest generator along each edge leaving the vertex."""
    phi = chart.functional
    out = []
    for q in chart.neighbors:
        ray = tuple(a - b for a, b in zip(q, chart.vertex))
        on_ray = [g for g in chart.generators if _on_ray(g, ray)]
        out.append(min(on_ray, key=lambda g: _dot(phi, g)))
    return out


def _on_ray(g: Point, ray: Point) -> bool:
    # g = lambda * ray with lambda > 0
    if any(g[i] * ray[j] != g[j] * ray[i] for i in range(len(g)) for j in range(i + 1, len(g))):
        return False
    return _dot(g, ray) > 0


def edge_basis_criterion(chart: VertexChart) -> bool:
    """Edge vectors at the vertex form a basis of ``M_v``."""
    ev = edge_vectors(chart)
    return len(ev) == chart.dim and is_lattice_basis(ev, chart.lattice)


def _check_config(config: WeightConfiguration) -> None:
    if not is_nondegenerate(config):
        raise DegenerateConfiguration("configuration is degenerate")


def _points_smooth(
    points: Sequence[Point], poly: LatticePolytope | None = None
) -> tuple[bool, Point | None]:
    poly = convex_hull(points) if poly is None else poly
    for v in poly.vertices:  # already in lexicographic order
        if not is_smooth_at_vertex(vertex_chart(points, v, poly)):
            return False, v
    return True, None


def is_smooth(config: WeightConfiguration) -> tuple[bool, Point | None]:
    """Smoothness at every hull vertex; on failure the lexicographically
    smallest failing vertex is returned as witness."""
    _check_config(config)
    return _points_smooth(config.points, convex_hull(config))


# -- enumeration and classification ----------------------------------------------


def enumerate_tuples(n: int, a_max: int) -> list[WeightTuple]:
    """Coprime non-increasing positive n-tuples with ``a_0 <= a_max``, in
    lexicographic order."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if a_max < 1:
        raise ValueError("a_max must be at least 1")
    out = []

    def extend(prefix: list[int], remaining: int):
        if remaining == 0:
            if reduce(gcd, prefix) == 1:
                out.append(WeightTuple(tuple(prefix)))
            return
        for x in range(1, prefix[-1] + 1):
            extend(prefix + [x], remaining - 1)

    for a0 in range(1, a_max + 1):
        extend([a0], n - 1)
    return sorted(out)


def surface_relation(t: WeightTuple) -> tuple[Fraction, Fraction]:
    """The unique rational ``(k, l)`` with
    ``(0, 2 a_0) = k (a_0, a_0) + l (-a_1, a_0 - a_2)``."""
    if t.n != 3:
        raise ValueError("surface relation needs a tuple of length 3")
    a0, a1, a2 = t.a
    cols = [[a0, -a1], [a0, a0 - a2]]
    det = determinant(cols)
    k = determinant([[0, -a1], [2 * a0, a0 - a2]]) / det
    l = determinant([[a0, 0], [a0, 2 * a0]]) / det
    return k, l


def surface_relation_path(t: WeightTuple) -> int | None:
    """1 or 2 when the relation has an integer solution with that ``k`` and
    ``l >= 1``, else None."""
    k, l = surface_relation(t)
    if k.denominator == 1 and l.denominator == 1 and k in (1, 2) and l >= 1:
        return int(k)
    return None


@dataclass(frozen=True)
class ClassificationReport:
    tuple: tuple[int, ...]
    legendrian: bool
    nondegenerate: bool
    star_condition: bool
    smooth: bool
    witness: tuple[int, ...] | None
    simple_polytope: bool
    identification: str | None
    notes: tuple[str, ...] = ()
    trials: int = 5
    seed: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["tuple"] = list(self.tuple)
        d["witness"] = None if self.witness is None else list(self.witness)
        d["notes"] = list(self.notes)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> ClassificationReport:
        return cls(
            tuple=tuple(d["tuple"]),
            legendrian=d["legendrian"],
            nondegenerate=d["nondegenerate"],
            star_condition=d["star_condition"],
            smooth=d["smooth"],
            witness=None if d["witness"] is None else tuple(d["witness"]),
            simple_polytope=d["simple_polytope"],
            identification=d["identification"],
            notes=tuple(d.get("notes", ())),
            trials=d.get("trials", 5),
            seed=d.get("seed", 0),
        )


def classify(t: WeightTuple, trials: int = 5, seed: int = 0) -> ClassificationReport:
    config = weight_configuration(t)
    nondeg = is_nondegenerate(config)
    # a degenerate tuple is analysed on its distinct weights
    points = tuple(dict.fromkeys(config.points))
    poly = hull_tuple(t) if nondeg else convex_hull(points)
    smooth, witness = _points_smooth(points, poly)
    notes = []
    if t.n == 3 and t.a[0] > t.a[1] + t.a[2]:
        notes.append("paper: interior case")
    return ClassificationReport(
        tuple=t.a,
        legendrian=verify_legendrian(t, trials=trials, seed=seed),
        nondegenerate=nondeg,
        star_condition=star_condition(config.points),
        smooth=smooth,
        witness=witness,
        simple_polytope=is_simple(poly),
        identification=IDENTIFICATIONS.get(t.a) if smooth else None,
        notes=tuple(notes),
        trials=trials,
        seed=seed,
    )


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("LEGENDRIC_JOBS", "1")))
    except ValueError:
        return 1


def classify_all(
    n: int, a_max: int, jobs: int | None = None, trials: int = 5, seed: int = 0
) -> list[ClassificationReport]:
    if n < 3:
        raise ValueError("classification needs n >= 3")
    tuples = enumerate_tuples(n, a_max)
    jobs = default_jobs() if jobs is None else jobs
    args = [(t, trials, seed) for t in tuples]
    if jobs <= 1:
        return [classify(*a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map keeps input order, so the merge is deterministic
        return list(pool.map(_classify_star, args, chunksize=4))


def _classify_star(args) -> ClassificationReport:
    return classify(*args)


def smooth_tuples(reports: Sequence[ClassificationReport]) -> list[tuple[int, ...]]:
    return [r.tuple for r in reports if r.smooth]


def simple_only_survivor(n: int, a_max: int) -> list[WeightTuple]:
    if n < 4:
        raise ValueError("n must be at least 4")
    return [t for t in enumerate_tuples(n, a_max) if is_simple(hull_tuple(t))]
