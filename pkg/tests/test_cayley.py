"""Multipartite Cayley models: edges, differences, orbits, exports."""

from __future__ import annotations

import random

import pytest

from starfact.cayley import LONG, SHORT, build_model, export_edge_list, omega_partition
from starfact.groups import make_group, subgroups_of_order


def _model(orders, h_gens):
    g = make_group(orders)
    return build_model(g, g.subgroup(h_gens))


def test_build_model_validation():
    g = make_group([10])
    with pytest.raises(ValueError):
        build_model(g, g.subgroup([]))  # parts of size 1
    with pytest.raises(ValueError):
        build_model(g, g.subgroup([(1,)]))  # H not proper
    other = make_group([5, 2])
    with pytest.raises(ValueError):
        build_model(g, other.subgroup([(0, 1)]))


def test_shape_k5x2():
    m = _model([10], [(5,)])
    assert (m.m, m.n) == (5, 2)
    assert m.vertex_count == 10
    assert len(m.omega) == 8
    assert m.edge_count == 40
    parts = m.parts()
    assert len(parts) == 5
    assert all(len(p) == 2 for p in parts)
    assert set().union(*parts) == set(m.group.elements())


def test_omega_partition_examples():
    # the only involution of Z_10 is 5, which lies in H
    m = _model([10], [(5,)])
    o1, o2, o2p = omega_partition(m)
    assert o1 == frozenset()
    assert o2 == frozenset({(1,), (2,), (3,), (4,)})
    assert o2p == frozenset({(6,), (7,), (8,), (9,)})

    m6 = _model([6], [(3,)])
    assert omega_partition(m6)[0] == frozenset()

    m22 = _model([2, 2], [(0, 1)])
    o1, o2, o2p = omega_partition(m22)
    assert o1 == frozenset({(1, 0), (1, 1)})
    assert o2 == frozenset()
    assert o2p == frozenset()


def test_edge_canonicalization_and_kinds():
    m = _model([10], [(5,)])
    e = m.edge((3,), (1,))
    assert (e.u, e.v, e.kind) == ((1,), (3,), LONG)
    assert m.edge_difference(e) == frozenset({(2,), (8,)})
    assert m.edge_vertices(e) == frozenset({(1,), (3,)})

    m22 = _model([2, 2], [(1, 0)])
    s = m22.edge((0, 1), (0, 0))
    assert s.kind == SHORT
    assert m22.edge_difference(s) == frozenset({(0, 1)})
    assert m22.edge_vertices(s) == frozenset({(0, 0)})


def test_illegal_and_degenerate_edges():
    m = _model([10], [(5,)])
    with pytest.raises(ValueError):
        m.edge((0,), (5,))  # difference in H
    with pytest.raises(ValueError):
        m.edge((2,), (2,))
    # unchecked constructor lets the illegal difference through, but the
    # difference accessor still refuses it
    e = m.edge_unchecked((0,), (5,))
    with pytest.raises(ValueError):
        m.edge_difference(e)


def test_translate_preserves_difference():
    rng = random.Random(1183)
    m = _model([4, 3], [(2, 0)])
    for _ in range(100):
        e = rng.choice(m.all_edges)
        g = rng.choice(m.group.elements())
        t = m.translate_edge(e, g)
        assert t.u < t.v
        assert m.edge_difference(t) == m.edge_difference(e)
        assert t.kind == e.kind


def test_edge_orbits():
    m4 = _model([4], [(2,)])
    orbit = m4.edge_orbit(m4.edge((0,), (1,)))
    assert len(orbit) == 4  # the whole 4-cycle

    m6 = _model([6], [(3,)])
    assert len(m6.edge_orbit(m6.edge((0,), (1,)))) == 6

    m22 = _model([2, 2], [(1, 0)])
    short_orbit = m22.edge_orbit(m22.edge((0, 0), (0, 1)))
    assert len(short_orbit) == 2
    covered = [v for e in short_orbit for v in (e.u, e.v)]
    assert sorted(covered) == sorted(m22.group.elements())


def test_short_orbits_are_perfect_matchings():
    # a short edge has a stabilizer of order 2, so its orbit has |G|/2 edges
    # covering every vertex exactly once
    cases = [([2, 2], [(1, 0)]), ([4, 2], [(0, 1)]), ([2, 2, 3], [(0, 0, 1)]), ([12, 2], [(6, 0)])]
    for orders, h_gens in cases:
        m = _model(orders, h_gens)
        shorts = [e for e in m.all_edges if e.kind == SHORT]
        if not shorts:
            continue
        orbit = m.edge_orbit(shorts[0])
        assert len(orbit) == m.group.order // 2
        covered = [v for e in orbit for v in (e.u, e.v)]
        assert sorted(covered) == sorted(m.group.elements())


def test_all_edges_complete_and_sorted():
    for orders, h_gens in [([10], [(5,)]), ([2, 2], [(1, 0)]), ([3, 4], [(0, 2)])]:
        m = _model(orders, h_gens)
        edges = m.all_edges
        assert len(edges) == m.edge_count
        assert len(set(edges)) == len(edges)
        assert list(edges) == sorted(edges)
        for e in edges:
            assert e.u < e.v
            m.edge_difference(e)  # legality
        # no edge inside a part
        for part in m.parts():
            for e in edges:
                assert not (e.u in part and e.v in part)


def test_edge_count_formula_across_lattice():
    # mn(mn - n)/2 for every proper subgroup H of order >= 2
    for orders in ([8], [2, 2, 2], [3, 4], [6, 2]):
        g = make_group(orders)
        for size in range(2, g.order):
            if g.order % size:
                continue
            for H in subgroups_of_order(g, size):
                m = build_model(g, H)
                assert m.edge_count == g.order * (g.order - size) // 2


def test_export_edge_list_golden():
    m = _model([4], [(2,)])
    assert export_edge_list(m) == "0 1\n0 3\n1 2\n2 3\n"


def test_edge_index_pairs_ascending():
    m = _model([5, 2], [(0, 1)])
    pairs = m.edge_index_pairs()
    assert pairs == sorted(pairs)
    assert len(pairs) == m.edge_count
    assert all(0 <= i < j < 10 for i, j in pairs)
