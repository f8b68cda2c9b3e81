from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from circstab.autgroup import (
    ColorPartition,
    SearchTimeout,
    are_isomorphic,
    automorphism_group,
    circulant_automorphism_group,
    cover_automorphism_group,
    edge_orbits,
    find_isomorphism,
    individualize,
    is_arc_transitive,
    is_equitable,
    is_group_automorphism,
    is_normal_cayley,
    minimal_block,
    order,
    orbit_of_vertex,
    refine,
    stabilizer,
)
from circstab.circulant import CirculantGraph
from circstab.perm import Perm
from circstab.products import K2, DenseGraph, cartesian_product, double_cover
from test_circulant import circulants


def aut_order(g: DenseGraph) -> int:
    return order(automorphism_group(g))


# refinement -----------------------------------------------------------------------


def test_refine_complete_graph_unchanged():
    p = refine(DenseGraph.complete(6), ColorPartition.unit(6))
    assert p.cell_count == 1


def test_refine_path_splits_by_degree():
    p = refine(DenseGraph.path(3), ColorPartition.unit(3))
    assert p.cells() in ([[0, 2], [1]], [[1], [0, 2]])


def test_refine_after_individualizing_cover_vertex():
    bx = double_cover(CirculantGraph.from_raw(12, [2, 3, 6]))
    ind = individualize(ColorPartition.unit(24), 0)
    fine = refine(bx, ind)
    assert fine.cell_count > ind.cell_count
    assert is_equitable(bx, fine)
    # regression fixture for the class sizes
    assert sorted(len(c) for c in fine.cells()) == [1, 1, 2, 2, 2, 3, 3, 4, 6]


@given(circulants(n_max=16))
def test_refinement_is_equitable(x):
    g = double_cover(x)
    assert is_equitable(g, refine(g, individualize(ColorPartition.unit(g.n), 0)))


# group orders ------------------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 5, 8, 13])
def test_cycle_order(n):
    assert aut_order(DenseGraph.cycle(n)) == 2 * n


@pytest.mark.parametrize("n", [3, 5, 7])
def test_complete_order(n):
    assert aut_order(DenseGraph.complete(n)) == math.factorial(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_complete_bipartite_order(n):
    assert aut_order(DenseGraph.complete_bipartite(n)) == 2 * math.factorial(n) ** 2


def test_order_examples():
    assert aut_order(DenseGraph.cycle(5)) == 10
    assert aut_order(double_cover(CirculantGraph.from_raw(5, [1]))) == 20
    for n in (5, 6, 9):
        assert aut_order(cartesian_product(K2, DenseGraph.cycle(n))) == 4 * n


def test_big_orders_are_exact_integers():
    assert aut_order(DenseGraph.complete_bipartite(12)) == 2 * math.factorial(12) ** 2


def test_empty_and_trivial_graphs():
    assert aut_order(DenseGraph.empty(4)) == 24
    assert aut_order(DenseGraph.empty(1)) == 1
    assert aut_order(DenseGraph.empty(0)) == 1


def test_disconnected_graph_order():
    g = DenseGraph.from_edges(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert aut_order(g) == 6 * 6 * 2


# stabilizers, orbits -------------------------------------------------------------------


def test_stabilizer_examples():
    assert stabilizer(automorphism_group(DenseGraph.complete(4)), 0).order() == 6
    assert stabilizer(automorphism_group(DenseGraph.cycle(6)), 0).order() == 2


def test_stabilizer_of_cover_moves_other_layer():
    x = CirculantGraph.from_raw(8, [1, 3, 4])
    stab = stabilizer(cover_automorphism_group(x), 0)
    assert any(p(8) != 8 for p in stab.generators)


def test_vertex_orbit():
    g = DenseGraph.path(4)
    grp = automorphism_group(g)
    assert orbit_of_vertex(grp, 0) == {0, 3}


def test_edge_orbit_examples():
    kn = DenseGraph.complete(5)
    assert len(edge_orbits(automorphism_group(kn), kn)) == 1
    for n, S in [(12, [2, 3, 6]), (8, [1, 3, 4])]:
        x = CirculantGraph.from_raw(n, S)
        bx = double_cover(x)
        classes = edge_orbits(cover_automorphism_group(x), bx)
        assert len(classes) == 2
    # for Z8 the n/2-edges form one class
    x = CirculantGraph.from_raw(8, [1, 3, 4])
    classes = edge_orbits(cover_automorphism_group(x), double_cover(x))
    half = sorted(tuple(sorted((v, (v + 4) % 8 + 8))) for v in range(8))
    assert sorted(half) in [sorted(c) for c in classes]


def test_arc_transitivity():
    assert is_arc_transitive(DenseGraph.complete(4))
    assert is_arc_transitive(DenseGraph.complete_bipartite(3))
    assert not is_arc_transitive(cartesian_product(K2, DenseGraph.cycle(6)))


def test_minimal_blocks():
    k44 = DenseGraph.complete_bipartite(4)
    assert minimal_block(automorphism_group(k44), (0, 1)) == [0, 1, 2, 3]
    c6 = DenseGraph.cycle(6)
    assert minimal_block(automorphism_group(c6), (0, 3)) == [0, 3]
    x = CirculantGraph.from_raw(8, [2, 3])
    blk = minimal_block(cover_automorphism_group(x), (0, 2))
    assert set(blk) <= {0, 2, 4, 6}


def test_minimal_block_rejects_non_transitive_seed():
    g = DenseGraph.path(3)
    with pytest.raises(ValueError):
        minimal_block(automorphism_group(g), (0, 1))


@given(circulants(n_min=3, n_max=16))
def test_minimal_block_is_a_block(x):
    grp = circulant_automorphism_group(x)
    blk = set(minimal_block(grp, (0, 1 % x.n)))
    for p in grp.generators:
        img = {p(v) for v in blk}
        assert img == blk or not (img & blk)


# group automorphisms and normality ---------------------------------------------------


def test_negation_is_group_automorphism():
    assert is_group_automorphism(Perm([(-v) % 7 for v in range(7)]), 7)


def test_translation_is_rejected():
    with pytest.raises(ValueError):
        is_group_automorphism(Perm([(v + 1) % 7 for v in range(7)]), 7)


def test_non_additive_map():
    assert not is_group_automorphism(Perm([0, 2, 1, 3, 4, 5]), 6)


def test_cover_structure_additivity():
    n = 5
    swap = Perm([v for v in range(n)] + [v + n for v in range(n)])
    assert is_group_automorphism(swap, (n, 2))
    mult = Perm([(2 * v) % n + (v // n) * n for v in range(2 * n)])
    assert is_group_automorphism(mult, (n, 2))


def test_normality_examples():
    assert not is_normal_cayley(CirculantGraph.from_raw(10, [1, 3]))
    for n in (3, 5, 6, 9):
        assert is_normal_cayley(CirculantGraph.from_raw(n, [1]))
    assert is_normal_cayley(CirculantGraph.from_raw(10, [1, 2]), cover=True)


def test_z24_cover_not_normal():
    x = CirculantGraph.from_raw(24, [2, 3, 8, 9, 10])
    stab = cover_automorphism_group(x).stabilizer(0)
    assert any(not is_group_automorphism(p, (24, 2)) for p in stab.generators)


# isomorphism ------------------------------------------------------------------------


def test_find_isomorphism():
    g = DenseGraph.cycle(7)
    perm = np.random.default_rng(3).permutation(7)
    h = g.relabel(perm)
    iso = find_isomorphism(g, h)
    assert iso is not None
    for u, v in g.edges():
        assert h.adj[iso(u), iso(v)]
    assert not are_isomorphic(DenseGraph.cycle(6), cartesian_product(K2, DenseGraph.cycle(3)))


def test_timeout_is_raised():
    with pytest.raises(SearchTimeout):
        automorphism_group(DenseGraph.complete_bipartite(30), timeout=0.0)


# oracles ------------------------------------------------------------------------------


def test_naive_count_random_corpus():
    rng = np.random.default_rng(2024)
    for _ in range(60):
        n = int(rng.integers(1, 7))
        adj = oracles.random_graph(rng, n, float(rng.random()))
        assert aut_order(DenseGraph(adj)) == oracles.count_automorphisms_allperms(adj)


@given(circulants(n_max=12))
def test_circulant_orders_match_backtracking(x):
    adj = oracles.adjacency(x.n, x.elements)
    ours = circulant_automorphism_group(x).order()
    try:
        assert ours == oracles.count_automorphisms(adj, limit=20000)
    except oracles.TooMany:
        assert ours > 20000


@given(circulants(n_max=16), st.randoms(use_true_random=False))
def test_order_invariant_under_relabel(x, rnd):
    g = DenseGraph.from_circulant(x)
    perm = list(range(x.n))
    rnd.shuffle(perm)
    assert aut_order(g.relabel(perm)) == aut_order(g)


@given(circulants(n_max=20))
def test_regular_subgroup_divides_order(x):
    o = circulant_automorphism_group(x).order()
    assert o >= x.n and o % x.n == 0


@given(circulants(n_max=20))
def test_cover_order_divisible_by_twice_base(x):
    assert cover_automorphism_group(x).order() % (2 * circulant_automorphism_group(x).order()) == 0


@given(circulants(n_max=16))
def test_generators_are_automorphisms(x):
    g = double_cover(x)
    for p in cover_automorphism_group(x).generators:
        img = p.images
        assert np.array_equal(g.adj[np.ix_(img, img)], g.adj)
