from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

import oracles
from circstab.autgroup import cover_automorphism_group, is_normal_cayley
from circstab.circulant import CirculantGraph, element_order, is_connected
from circstab.stability import (
    StabilityVerdict,
    cover_connection_set,
    exceptional_cycle_condition,
    four_cycle_condition,
    is_stable,
    is_stable_via_stabilizer,
    s_prime,
    s_prime_invariant,
)
from test_circulant import circulants


def G(n, S):
    return CirculantGraph.from_raw(n, S)


@pytest.mark.parametrize(
    "n,S,stable",
    [(6, [2, 3], True), (8, [1, 3, 4], False), (5, [1, 2], True), (7, [1, 2, 3], True)],
)
def test_is_stable_examples(n, S, stable):
    x = G(n, S)
    v = is_stable(x)
    assert v.stable is stable
    assert is_stable_via_stabilizer(x) is stable
    if stable:
        assert v.witness is None
    else:
        assert v.witness(0) == 0 and v.witness(n) != n


def test_complete_graphs_are_stable():
    for n in range(3, 9):
        assert is_stable(G(n, range(1, n))).stable


def test_verdict_consistency_check():
    with pytest.raises(ValueError):
        StabilityVerdict(True, 10, 40)


def test_stability_matches_naive_stabilizer_count():
    for n, S in [(8, [1, 3, 4]), (24, [3, 4, 9]), (6, [2, 3]), (10, [1, 2])]:
        x = G(n, S)
        size, moving = oracles.stabilizer_moves(oracles.cover_adjacency(n, x.elements), 0, n)
        v = is_stable(x)
        assert v.aut_bx_order == size * 2 * n
        assert v.stable == (moving == 0)


@given(circulants(n_max=16))
def test_two_stability_paths_agree(x):
    assert is_stable(x).stable == is_stable_via_stabilizer(x)


@given(circulants(n_max=14))
def test_verdict_orders_match_oracle(x):
    v = is_stable(x)
    adj = oracles.cover_adjacency(x.n, x.elements)
    try:
        size, moving = oracles.stabilizer_moves(adj, 0, x.n, limit=5000)
    except oracles.TooMany:
        assert v.aut_bx_order > 5000 * 2 * x.n
        return
    # BX is a Cayley graph, so |Aut BX| = 2n |Stab(0,0)|
    assert v.aut_bx_order == size * 2 * x.n
    # the stabilizer criterion needs X connected; otherwise components can be permuted
    if is_connected(x):
        assert v.stable == (moving == 0)


# four-cycle condition -------------------------------------------------------------


def test_four_cycle_cycle_graph():
    assert four_cycle_condition(5, [1, 4])


def test_four_cycle_order_four_element_fails():
    assert not four_cycle_condition(8, [2, 6, 1, 7])


def test_four_cycle_fixture_z10_cover():
    x = G(10, [1, 2])
    # exhaustive verdict, recorded as a fixture
    assert four_cycle_condition((10, 2), cover_connection_set(x)) is True
    assert four_cycle_condition(10, x.elements) is True


def test_four_cycle_pairs_over_product_group():
    S = [(1, 1), (2, 1), (3, 1)]
    # (1,1)+(1,1) = (3,1)+(3,1) = (2,0)
    assert not four_cycle_condition((4, 2), S)
    assert four_cycle_condition((5, 2), [(1, 1), (4, 1)])


@given(circulants(n_max=18))
def test_four_cycle_implies_normal(x):
    if is_connected(x) and four_cycle_condition(x.n, x.elements):
        assert is_normal_cayley(x)


@given(circulants(n_max=18))
def test_cover_four_cycle_reduces_to_base(x):
    assert four_cycle_condition((x.n, 2), cover_connection_set(x)) == four_cycle_condition(x.n, x.elements)


# exceptional cycles and S' ----------------------------------------------------------


def test_exceptional_cycle_fixture():
    assert exceptional_cycle_condition(G(6, [2, 3]), 2) is True


def test_exceptional_cycle_rejects_bad_input():
    with pytest.raises(ValueError):
        exceptional_cycle_condition(G(6, [2, 3]), 1)
    with pytest.raises(ValueError):
        exceptional_cycle_condition(G(6, [2, 3]), 3)


@given(circulants(n_max=18))
def test_exceptional_cycle_implies_stable(x):
    if not is_connected(x):
        return
    for c in x.elements:
        if element_order(c, x.n) % 2 and exceptional_cycle_condition(x, c):
            assert is_stable(x).stable
            break


def test_s_prime_examples():
    x = G(12, [2, 3, 6])
    assert s_prime(x.s) == [2, 6, 10]
    y = G(8, [2, 1])  # 2 has order 4
    assert 2 not in s_prime(y.s) and 6 not in s_prime(y.s)
    z = G(9, [1])
    assert s_prime(z.s) == [1, 8]


@given(circulants(n_max=16))
def test_cover_automorphisms_preserve_2s_prime_graph(x):
    assert s_prime_invariant(x, cover_automorphism_group(x))


def test_witness_is_an_automorphism():
    x = G(24, [2, 3, 8, 9, 10])
    w = is_stable(x).witness
    adj = oracles.cover_adjacency(24, x.elements)
    img = w.images
    assert np.array_equal(adj[np.ix_(img, img)], adj)
