"""Exit criteria: bounded reproductions of the classification results and
the exact identity suites.  Each criterion prints a PASS/FAIL line in the
"acceptance criteria" section of the pytest summary."""

import json
import random
import time

import pytest

from conftest import random_matrix, rational_vector
from legendric.cli import main
from legendric.orbit import verify_legendrian, weight_configuration
from legendric.polytope import edges, hull_tuple, oracle_consistency, lemma_edge_oracle, w0_in_cross_polytope
from legendric.smoothness import (
    enumerate_tuples,
    is_smooth_at_vertex,
    simple_only_survivor,
    surface_relation_path,
    vertex_chart,
)
from legendric.symplectic import SymplecticSpace, decompose, in_asp, in_sp, omega, torus_generators

pytestmark = pytest.mark.slow


def classify_cli(capsysbinary, n, max_a):
    start = time.perf_counter()
    code = main(["classify", "--n", str(n), "--max-a", str(max_a), "--jobs", "1"])
    elapsed = time.perf_counter() - start
    out, _ = capsysbinary.readouterr()
    assert code == 0
    return json.loads(out), elapsed


def smooth_set(body):
    return {tuple(r["tuple"]): r["identification"] for r in body["reports"] if r["smooth"]}


def test_c1_surface_classification(capsysbinary, criterion):
    body, elapsed = classify_cli(capsysbinary, 3, 20)
    got = smooth_set(body)
    expected = {(2, 1, 1): "P1xQ1", (1, 1, 1): "P2 blown up in three non-colinear points"}
    ok = got == expected and elapsed < 30
    criterion("C1 surfaces n=3, a_0<=20: smooth = {(2,1,1), (1,1,1)}", ok, f"{len(body['reports'])} tuples, {elapsed:.1f}s")
    assert got == expected
    assert elapsed < 30


def test_c2_threefold_classification(capsysbinary, criterion):
    body, elapsed = classify_cli(capsysbinary, 4, 10)
    got = smooth_set(body)
    ok = got == {(1, 1, 1, 1): "P1xP1xP1"} and elapsed < 120
    criterion("C2 threefolds n=4, a_0<=10: smooth = {(1,1,1,1)}", ok, f"{len(body['reports'])} tuples, {elapsed:.1f}s")
    assert got == {(1, 1, 1, 1): "P1xP1xP1"}
    assert elapsed < 120


def test_c3_higher_dimensions(capsysbinary, criterion):
    b5, t5 = classify_cli(capsysbinary, 5, 6)
    b6, t6 = classify_cli(capsysbinary, 6, 4)
    ok = smooth_set(b5) == {} and smooth_set(b6) == {} and t5 + t6 < 300
    criterion("C3 n=5 a_0<=6 and n=6 a_0<=4: no smooth tuples", ok, f"{t5 + t6:.1f}s")
    assert smooth_set(b5) == {} and smooth_set(b6) == {}
    assert t5 + t6 < 300


def test_c4_every_tuple_is_legendrian(criterion):
    tuples = [t for n in (3, 4, 5) for t in enumerate_tuples(n, 6)]
    failures = [t.a for t in tuples if not verify_legendrian(t, trials=5, seed=0)]
    criterion("C4 Legendrian frames for all tuples n in {3,4,5}, a_0<=6", not failures, f"{len(tuples)} tuples x 6 points")
    assert failures == []


def test_c5_simplicity_filter(criterion):
    s4 = [t.a for t in simple_only_survivor(4, 8)]
    s5 = [t.a for t in simple_only_survivor(5, 6)]
    bad_degree = []
    checked = 0
    for n, bound in ((4, 10), (5, 6), (6, 4)):
        for t in enumerate_tuples(n, bound):
            if w0_in_cross_polytope(t):
                checked += 1
                degrees = set(edges(hull_tuple(t)).degree.values())
                if degrees != {2 * (n - 2)}:
                    bad_degree.append(t.a)
    ok = s4 == [(1, 1, 1, 1)] and s5 == [] and not bad_degree and checked > 0
    criterion("C5 simple survivors n=4: {(1,1,1,1)}, n=5: {}; w_0 in B => degree 2(n-2)", ok, f"{checked} tuples with w_0 in B")
    assert s4 == [(1, 1, 1, 1)]
    assert s5 == []
    assert bad_degree == []


def test_c6_edge_lemma_soundness(criterion):
    checked, failures = 0, []
    for n in (2, 3, 4, 5):
        for t in enumerate_tuples(n, 6):
            if n == 2 and t.a == (1, 1):
                # the degenerate line; the lemma predicts nothing
                assert len(lemma_edge_oracle(t)) == 0
                continue
            checked += 1
            if not oracle_consistency(t):
                failures.append(t.a)
    criterion("C6 predicted edges are hull edges for n<=5, a_0<=6", not failures, f"{checked} tuples")
    assert failures == []


def test_c7_symplectic_identities(criterion):
    rng = random.Random(7)
    bad = 0
    for n in (1, 2, 3):
        space = SymplecticSpace(n)
        for _ in range(1000):
            g = random_matrix(rng, 2 * n)
            gp, gm = decompose(g, space)
            if not (gp + gm == g and (space.J @ gp).is_symmetric() and (space.J @ gm).is_skew()):
                bad += 1
            assert in_asp(gm, space)
            u, v = rational_vector(rng, 2 * n), rational_vector(rng, 2 * n)
            if omega(gm.apply(u), v, space) != omega(u, gm.apply(v), space):
                bad += 1
    star_bad = []
    for n, bound in ((3, 20), (4, 10), (5, 6), (6, 4)):
        space = SymplecticSpace(n)
        for t in enumerate_tuples(n, bound):
            if not all(in_sp(h, space) for h in torus_generators(weight_configuration(t).points)):
                star_bad.append(t.a)
    ok = bad == 0 and not star_bad
    criterion("C7 sp/asp split, asp pairing identity, torus generators in sp", ok, "3000 random matrices")
    assert bad == 0
    assert star_bad == []


def test_c8_surface_relation_crosscheck(criterion):
    paths, smooth_at = {}, set()
    mismatches = []
    for t in enumerate_tuples(3, 20):
        a0, a1, a2 = t.a
        if a1 + a2 < a0:
            continue
        cfg = weight_configuration(t)
        v = (0, -a0)  # -w_2
        smooth = is_smooth_at_vertex(vertex_chart(cfg, v, hull_tuple(t)))
        path = surface_relation_path(t)
        if path is not None:
            paths[t.a] = path
        if smooth:
            smooth_at.add(t.a)
        if smooth != (path is not None):
            mismatches.append(t.a)
    ok = paths == {(2, 1, 1): 1, (1, 1, 1): 2} and smooth_at == set(paths) and not mismatches
    criterion("C8 integer (k, l) solutions match chart smoothness at -w_2", ok, f"paths {paths}")
    assert paths == {(2, 1, 1): 1, (1, 1, 1): 2}
    assert smooth_at == {(2, 1, 1), (1, 1, 1)}
    assert mismatches == []
