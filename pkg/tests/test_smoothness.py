import itertools
from fractions import Fraction
from functools import reduce
from math import gcd

import pytest

from legendric.orbit import make_weight_tuple, weight_configuration
from legendric.polytope import DegenerateConfiguration, hull_tuple, is_simple
from legendric.smoothness import (
    ClassificationReport,
    NotAVertex,
    VertexChart,
    classify,
    classify_all,
    edge_basis_criterion,
    enumerate_tuples,
    is_smooth,
    is_smooth_at_vertex,
    minimal_generators,
    simple_only_survivor,
    surface_relation,
    surface_relation_path,
    vertex_chart,
)


def chart(a, v):
    return vertex_chart(weight_configuration(make_weight_tuple(a)), v)


def brute_minimal(ch: VertexChart):
    """Irreducible generators by enumerating every coefficient vector with
    total at most phi(g) / min phi."""
    gens = ch.generators
    phi = ch.functional
    val = lambda x: sum(a * b for a, b in zip(phi, x))  # noqa: E731
    low = min(val(g) for g in gens)
    out = []
    for g in gens:
        bound = val(g) // low
        reducible = False
        for total in range(2, bound + 1):
            for combo in itertools.combinations_with_replacement(range(len(gens)), total):
                s = tuple(sum(gens[i][k] for i in combo) for k in range(len(g)))
                if s == g:
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            out.append(g)
    return out


def test_chart_generators():
    c = chart((1, 1, 1), (1, 1))
    assert set(c.generators) == {(0, -1), (-1, 0), (-2, -2), (-2, -1), (-1, -2)}
    c = chart((2, 1, 1), (2, 0))
    assert set(c.generators) == {(-1, 1), (-2, 2), (-3, -1), (-4, 0), (-2, -2)}
    with pytest.raises(NotAVertex):
        chart((2, 1, 1), (1, 1))


def test_chart_lattices():
    assert chart((1, 1, 1), (1, 1)).lattice_index == 1
    # all differences at (2,0) satisfy x + y = 0 mod 4 and x = -y mod 2
    c = chart((2, 1, 1), (2, 0))
    assert c.lattice == ((1, 3), (0, 4))
    assert c.lattice_index == 4


def test_minimal_generators_examples():
    assert set(minimal_generators(chart((1, 1, 1), (1, 1)))) == {(0, -1), (-1, 0)}
    assert set(minimal_generators(chart((2, 1, 1), (2, 0)))) == {(-1, 1), (-2, -2)}
    # a chart whose generators are a basis already: the 2-simplex
    from legendric.smoothness import vertex_chart as vc

    c = vc([(0, 0), (1, 0), (0, 1)], (0, 0))
    assert minimal_generators(c) == list(c.generators)


@pytest.mark.parametrize("a", [(1, 1, 1), (2, 1, 1), (3, 1, 1), (3, 2, 1), (5, 3, 3), (7, 5, 4), (1, 1, 1, 1), (3, 2, 2, 1)])
def test_minimal_generators_against_brute_force(a):
    P = hull_tuple(make_weight_tuple(a))
    for v in P.vertices:
        c = chart(a, v)
        assert set(minimal_generators(c)) == set(brute_minimal(c))


def test_smooth_at_vertex_examples():
    for v in hull_tuple(make_weight_tuple((1, 1, 1))).vertices:
        assert is_smooth_at_vertex(chart((1, 1, 1), v))
    for v in hull_tuple(make_weight_tuple((2, 1, 1))).vertices:
        assert is_smooth_at_vertex(chart((2, 1, 1), v))
    assert not is_smooth_at_vertex(chart((3, 1, 1), (3, 0)))


def test_is_smooth_examples():
    assert is_smooth(weight_configuration(make_weight_tuple((2, 1, 1)))) == (True, None)
    assert is_smooth(weight_configuration(make_weight_tuple((1, 1, 1, 1)))) == (True, None)
    smooth, witness = is_smooth(weight_configuration(make_weight_tuple((3, 2, 1))))
    assert not smooth
    assert not is_smooth_at_vertex(chart((3, 2, 1), (0, -3)))  # -w_2
    assert witness == min(
        v for v in hull_tuple(make_weight_tuple((3, 2, 1))).vertices
        if not is_smooth_at_vertex(chart((3, 2, 1), v))
    )
    with pytest.raises(DegenerateConfiguration):
        is_smooth(weight_configuration(make_weight_tuple((1, 1))))


def brute_enumeration(n, a_max):
    return sorted(
        a for a in itertools.product(range(1, a_max + 1), repeat=n)
        if list(a) == sorted(a, reverse=True) and reduce(gcd, a) == 1
    )


def test_enumerate_tuples():
    assert [t.a for t in enumerate_tuples(3, 2)] == [(1, 1, 1), (2, 1, 1), (2, 2, 1)]
    assert [t.a for t in enumerate_tuples(2, 1)] == [(1, 1)]
    got = [t.a for t in enumerate_tuples(3, 3)]
    assert got == brute_enumeration(3, 3)
    assert len(got) == 8
    for n, m in [(3, 9), (4, 6), (5, 4), (6, 3)]:
        assert [t.a for t in enumerate_tuples(n, m)] == brute_enumeration(n, m)
    with pytest.raises(ValueError):
        enumerate_tuples(1, 3)


def test_classify_examples():
    r = classify(make_weight_tuple((1, 1, 1)))
    assert r.smooth and r.identification == "P2 blown up in three non-colinear points"
    r = classify(make_weight_tuple((2, 1, 1)))
    assert r.smooth and r.identification == "P1xQ1"
    assert r.legendrian and r.nondegenerate and r.star_condition and r.simple_polytope
    r = classify(make_weight_tuple((4, 3, 2)))
    assert r.legendrian and not r.smooth and r.identification is None
    assert r.witness is not None
    r = classify(make_weight_tuple((5, 2, 1)))
    assert "paper: interior case" in r.notes and not r.smooth


def test_classify_is_deterministic():
    t = make_weight_tuple((5, 4, 2))
    assert classify(t) == classify(t)
    assert ClassificationReport.from_dict(classify(t).to_dict()) == classify(t)


def test_classify_parallel_matches_serial():
    assert classify_all(3, 7, jobs=1) == classify_all(3, 7, jobs=3)


@pytest.mark.parametrize("n, a_max", [(3, 12), (4, 6), (5, 4)])
def test_semigroup_and_edge_criteria_agree(n, a_max):
    # freeness of the chart semigroup vs. edge vectors forming a basis of M_v
    for t in enumerate_tuples(n, a_max):
        P = hull_tuple(t)
        cfg = weight_configuration(t)
        for v in P.vertices:
            c = vertex_chart(cfg, v, P)
            assert is_smooth_at_vertex(c) == edge_basis_criterion(c)


@pytest.mark.parametrize("n, a_max", [(3, 12), (4, 6), (5, 4)])
def test_smooth_implies_simple_and_symmetric_verdicts(n, a_max):
    for t in enumerate_tuples(n, a_max):
        P = hull_tuple(t)
        cfg = weight_configuration(t)
        verdict = {v: is_smooth_at_vertex(vertex_chart(cfg, v, P)) for v in P.vertices}
        for v, ok in verdict.items():
            assert verdict[tuple(-x for x in v)] == ok
        if all(verdict.values()):
            assert is_simple(P)


def test_surface_relation():
    assert surface_relation(make_weight_tuple((2, 1, 1))) == (1, 2)
    assert surface_relation(make_weight_tuple((1, 1, 1))) == (2, 2)
    assert surface_relation_path(make_weight_tuple((3, 2, 1))) is None
    k, l = surface_relation(make_weight_tuple((3, 2, 1)))
    assert (0, 6) == (k * 3 - l * 2, k * 3 + l * 2)


def test_simple_survivor_small():
    assert [t.a for t in simple_only_survivor(4, 4)] == [(1, 1, 1, 1)]
    assert not is_simple(hull_tuple(make_weight_tuple((3, 1, 1, 1))))
    with pytest.raises(ValueError):
        simple_only_survivor(3, 4)
