"""Exact convex hulls, edges and the edge predictions for the weight polytope.

Hulls are computed by brute force over d-subsets of the points, which is
fine for the at most 14 points in dimension at most 6 that occur here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from legendric.orbit import WeightConfiguration, WeightTuple, is_nondegenerate, weight_configuration
from legendric.rational import nullspace, primitive, rank

Point = tuple[int, ...]
Edge = frozenset  # frozenset of two Points


class DegenerateConfiguration(ValueError):
    """The points do not affinely span the ambient space."""


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: int

    def value(self, p: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.normal, p))

    def contains(self, p: Sequence[int]) -> bool:
        return self.value(p) == self.offset


@dataclass(frozen=True)
class LatticePolytope:
    dim: int
    points: tuple[Point, ...]
    vertices: tuple[Point, ...]
    facets: tuple[Facet, ...]

    def facets_through(self, *pts: Point) -> list[Facet]:
        return [f for f in self.facets if all(f.contains(p) for p in pts)]

    def contains(self, p: Sequence[int]) -> bool:
        return all(f.value(p) <= f.offset for f in self.facets)

    def is_vertex(self, p: Sequence[int]) -> bool:
        return tuple(p) in self.vertices

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "points": [list(p) for p in self.points],
            "vertices": [list(v) for v in self.vertices],
            "facets": [{"normal": list(f.normal), "offset": f.offset} for f in self.facets],
        }

    @classmethod
    def from_json(cls, data: dict) -> LatticePolytope:
        return cls(
            dim=int(data["dim"]),
            points=tuple(tuple(p) for p in data["points"]),
            vertices=tuple(tuple(v) for v in data["vertices"]),
            facets=tuple(Facet(tuple(f["normal"]), int(f["offset"])) for f in data["facets"]),
        )


@dataclass(frozen=True)
class EdgeSet:
    edges: frozenset  # of Edge
    degree: dict

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[Point]], vertices: Iterable[Point] = ()) -> EdgeSet:
        edges = frozenset(frozenset(tuple(p) for p in pair) for pair in pairs)
        degree = {tuple(v): 0 for v in vertices}
        for e in edges:
            for p in e:
                degree[p] = degree.get(p, 0) + 1
        return cls(edges=edges, degree=degree)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, pair) -> bool:
        return frozenset(pair) in self.edges

    def sorted_pairs(self) -> list[tuple[Point, Point]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def to_json(self) -> list[list[list[int]]]:
        return [[list(p), list(q)] for p, q in self.sorted_pairs()]


def _as_points(source) -> tuple[tuple[Point, ...], int]:
    if isinstance(source, WeightConfiguration):
        return source.points, source.dim
    pts = tuple(tuple(int(x) for x in p) for p in source)
    return pts, len(pts[0])


def _hyperplane(pts: Sequence[Point], dim: int) -> tuple[tuple[int, ...], int] | None:
    """Primitive integer normal and offset of the affine hyperplane through
    ``pts``, or None when they are affinely dependent."""
    origin = pts[0]
    diffs = [[x - y for x, y in zip(p, origin)] for p in pts[1:]]
    rows = diffs or [[0] * dim]
    ker = nullspace(rows)
    if len(ker) != 1:
        return None
    scale = reduce(lcm, (x.denominator for x in ker[0]), 1)
    normal = primitive([int(x * scale) for x in ker[0]])
    return normal, sum(a * b for a, b in zip(normal, origin))


def facets_of(points: Sequence[Point], dim: int) -> tuple[Facet, ...]:
    unique = sorted(set(points))
    found = set()
    for subset in combinations(unique, dim):
        plane = _hyperplane(subset, dim)
        if plane is None:
            continue
        normal, offset = plane
        values = [sum(a * b for a, b in zip(normal, p)) for p in unique]
        if all(v <= offset for v in values):
            found.add((normal, offset))
        elif all(v >= offset for v in values):
            found.add((tuple(-a for a in normal), -offset))
    return tuple(Facet(n, o) for n, o in sorted(found))


def convex_hull(source) -> LatticePolytope:
    """Facet/vertex description of the convex hull of a point configuration."""
    points, dim = _as_points(source)
    if isinstance(source, WeightConfiguration):
        if not is_nondegenerate(source):
            raise DegenerateConfiguration("configuration is degenerate")
    elif len(points) < 2 or rank([[x - y for x, y in zip(p, points[0])] for p in points[1:]]) != dim:
        raise DegenerateConfiguration("points do not affinely span the ambient space")
    facets = facets_of(points, dim)
    vertices = []
    for p in sorted(set(points)):
        through = [f.normal for f in facets if f.contains(p)]
        if len(through) >= dim and rank(through) == dim:
            vertices.append(p)
    return LatticePolytope(dim=dim, points=tuple(points), vertices=tuple(vertices), facets=facets)


@lru_cache(maxsize=4096)
def edges(poly: LatticePolytope) -> EdgeSet:
    pairs = []
    for p, q in combinations(poly.vertices, 2):
        common = poly.facets_through(p, q)
        normals = [f.normal for f in common]
        if (rank(normals) if normals else 0) != poly.dim - 1:
            continue
        others = [v for v in poly.vertices if v not in (p, q)]
        if any(all(f.contains(v) for f in common) for v in others):
            continue
        pairs.append((p, q))
    return EdgeSet.from_pairs(pairs, poly.vertices)


def is_simple(poly: LatticePolytope, edge_set: EdgeSet | None = None) -> bool:
    es = edges(poly) if edge_set is None else edge_set
    return all(es.degree[v] == poly.dim for v in poly.vertices)


@lru_cache(maxsize=4096)
def hull_tuple(t: WeightTuple) -> LatticePolytope:
    return convex_hull(weight_configuration(t))


def w0_in_cross_polytope(t: WeightTuple) -> bool:
    """``w_0`` lies in conv{+-w_1, .., +-w_{n-1}}, i.e. ``a_0 >= a_1 + .. + a_{n-1}``."""
    return t.a[0] >= sum(t.a[1:])


# -- edge predictions from index splits ----------------------------------------


def index_splits(n: int) -> Iterable[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ordered complementary pairs (I, J) of subsets of {1, .., n-1}."""
    idx = range(1, n)
    for r in range(n):
        for I in combinations(idx, r):
            yield I, tuple(j for j in idx if j not in I)


def _split_value(t: WeightTuple, I, J) -> int:
    return sum(t.a[i] for i in I) - sum(t.a[j] for j in J)


def lemma_edge_oracle(t: WeightTuple) -> EdgeSet:
    """Edges guaranteed by the index-split criteria (sufficient, not complete).

    For a split (I, J) with ``alpha = sum_I a_i - sum_J a_j``:
    ``|alpha| < a_0`` gives the edges among ``{w_i : i in I}``;
    ``alpha > a_0`` gives ``(w_0, w_k)`` for k in I and ``(w_0, -w_l)`` for l in J;
    every ``(w_k, -w_l)`` with k != l is an edge.  Equality fires nothing.
    Mirrors under ``x -> -x`` are added throughout.
    """
    config = weight_configuration(t)
    n = t.n
    w = config.positive
    neg = lambda p: tuple(-x for x in p)  # noqa: E731
    a0 = t.a[0]
    pairs = set()

    def add(p, q):
        pairs.add(frozenset((p, q)))
        pairs.add(frozenset((neg(p), neg(q))))

    for I, J in index_splits(n):
        alpha = _split_value(t, I, J)
        if abs(alpha) < a0:
            for i1, i2 in combinations(I, 2):
                add(w[i1], w[i2])
        elif alpha > a0:
            for k in I:
                add(w[0], w[k])
            for l in J:
                add(w[0], neg(w[l]))
    for k in range(1, n):
        for l in range(1, n):
            if k != l:
                add(w[k], neg(w[l]))
    return EdgeSet.from_pairs(pairs)


def oracle_consistency(t: WeightTuple) -> bool:
    predicted = lemma_edge_oracle(t)
    actual = edges(hull_tuple(t))
    return predicted.edges <= actual.edges


def lexicographic_face(
    points: Sequence[Point], primary: Sequence, secondary: Sequence
) -> tuple[Fraction, list[Point]]:
    """Maximizers of ``primary + eps * secondary`` for all small ``eps > 0``.

    Compares the eps^0 terms first and breaks ties with the eps^1 terms.
    Returns the eps^0 maximum and the maximizing points.
    """
    def key(p):
        return (sum(a * b for a, b in zip(primary, p)), sum(a * b for a, b in zip(secondary, p)))

    best = max(key(p) for p in points)
    return Fraction(best[0]), [p for p in points if key(p) == best]


def split_face(t: WeightTuple, I: Sequence[int]) -> tuple[Fraction, list[Point]]:
    """Face cut out by ``sum_I x_i - (1 - eps) sum_J x_j`` in the eps -> 0+ limit."""
    d = t.n - 1
    J = [j for j in range(1, t.n) if j not in I]
    primary = [1 if k + 1 in I else -1 for k in range(d)]
    secondary = [1 if k + 1 in J else 0 for k in range(d)]
    return lexicographic_face(weight_configuration(t).points, primary, secondary)


@dataclass(frozen=True)
class EdgeCertificate:
    edge: tuple[Point, Point]
    normal: tuple[int, ...]
    offset: int
    rule: str


def edge_certificates(t: WeightTuple) -> list[EdgeCertificate]:
    """Supporting hyperplanes for the edges of rules (b) and (c).

    Rule (b) for k in I uses
    ``(a_0 - a_k)(sum_I x_i - sum_J x_j - alpha) + (alpha - a_0)(x_k - a_k) = 0``,
    for l in J
    ``(a_0 + a_l)(sum_I x_i - sum_J x_j - alpha) + (alpha - a_0)(a_l - x_l) = 0``
    (the mirror of the first form under ``w_k -> -w_l``);
    rule (c) uses ``x_k - x_l = a_0``.  Orientation is not fixed here.
    """
    n, a = t.n, t.a
    a0 = a[0]
    d = n - 1
    w = weight_configuration(t).positive
    neg = lambda p: tuple(-x for x in p)  # noqa: E731
    out = []
    for I, J in index_splits(n):
        alpha = _split_value(t, I, J)
        if alpha <= a0:
            continue
        s = [1 if k + 1 in I else -1 for k in range(d)]
        for k in I:
            normal = [(a0 - a[k]) * x for x in s]
            normal[k - 1] += alpha - a0
            offset = (a0 - a[k]) * alpha + (alpha - a0) * a[k]
            out.append(EdgeCertificate((w[0], w[k]), tuple(normal), offset, "b"))
        for l in J:
            normal = [(a0 + a[l]) * x for x in s]
            normal[l - 1] -= alpha - a0
            offset = (a0 + a[l]) * alpha - (alpha - a0) * a[l]
            out.append(EdgeCertificate((w[0], neg(w[l])), tuple(normal), offset, "b'"))
    for k in range(1, n):
        for l in range(1, n):
            if k != l:
                normal = [0] * d
                normal[k - 1], normal[l - 1] = 1, -1
                out.append(EdgeCertificate((w[k], neg(w[l])), tuple(normal), a0, "c"))
    return out


def certifies_edge(points: Sequence[Point], cert: EdgeCertificate) -> bool:
    """All points weakly on one side and equality exactly on the edge's ends."""
    values = {p: sum(x * y for x, y in zip(cert.normal, p)) for p in points}
    on = {p for p, v in values.items() if v == cert.offset}
    if on != set(cert.edge):
        return False
    return all(v <= cert.offset for v in values.values()) or all(
        v >= cert.offset for v in values.values()
    )


# -- OFF export ----------------------------------------------------------------


def _cycle(vertices: Sequence[Point], es: EdgeSet) -> list[Point]:
    """Walk the polygon formed by ``vertices`` and the edges among them."""
    vs = set(vertices)
    adj = {v: sorted(q for e in es.edges if v in e for q in e if q != v and q in vs) for v in vs}
    start = min(vs)
    order = [start]
    prev, cur = None, start
    while True:
        nxt = [q for q in adj[cur] if q != prev]
        if not nxt or nxt[0] == start:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    if len(order) != len(vs):
        raise ValueError("facet boundary is not a single cycle")
    return order


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def off_faces(poly: LatticePolytope) -> list[list[int]]:
    """Vertex-index lists of the 2-dimensional faces, cyclically ordered and
    counter-clockwise seen from outside (dim 3); the polygon itself for dim 2."""
    if poly.dim > 3:
        raise ValueError("unsupported dimension for OFF")
    index = {v: i for i, v in enumerate(poly.vertices)}
    if poly.dim <= 1:
        return [list(range(len(poly.vertices)))]
    es = edges(poly)
    if poly.dim == 2:
        cyc = _cycle(poly.vertices, es)
        a, b, c = cyc[0], cyc[1], cyc[2]
        turn = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if turn < 0:
            cyc = [cyc[0]] + cyc[1:][::-1]
        return [[index[v] for v in cyc]]
    faces = []
    for f in poly.facets:
        on = [v for v in poly.vertices if f.contains(v)]
        cyc = _cycle(on, es)
        a, b, c = cyc[0], cyc[1], cyc[2]
        cr = _cross([y - x for x, y in zip(a, b)], [y - x for x, y in zip(a, c)])
        if sum(x * y for x, y in zip(cr, f.normal)) < 0:
            cyc = [cyc[0]] + cyc[1:][::-1]
        faces.append([index[v] for v in cyc])
    return sorted(faces)


def to_off(poly: LatticePolytope) -> str:
    faces = off_faces(poly)
    lines = ["OFF", f"{len(poly.vertices)} {len(faces)} 0"]
    for v in poly.vertices:
        coords = list(v) + [0] * (3 - len(v))
        lines.append(" ".join(str(x) for x in coords))
    for face in faces:
        lines.append(" ".join(str(x) for x in [len(face)] + face))
    return "\n".join(lines) + "\n"


def parse_off(text: str) -> tuple[list[Point], list[list[int]]]:
    tokens = [ln.split("#")[0].strip() for ln in text.splitlines()]
    tokens = [t for t in tokens if t]
    if not tokens or tokens[0] != "OFF":
        raise ValueError("missing OFF header")
    nv, nf, _ = (int(x) for x in tokens[1].split())
    verts = [tuple(int(x) for x in tokens[2 + i].split()) for i in range(nv)]
    faces = []
    for i in range(nf):
        nums = [int(x) for x in tokens[2 + nv + i].split()]
        if nums[0] != len(nums) - 1:
            raise ValueError("face length does not match its index count")
        faces.append(nums[1:])
    return verts, faces
