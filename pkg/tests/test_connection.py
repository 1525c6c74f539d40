"""Compatible connections, holonomy signs, and orientability."""

from __future__ import annotations

import itertools

import pytest

from gkmcohom import (
    GkmGraph,
    connection_from_matchings,
    edge_matchings,
    enumerate_connections,
    find_connection,
    holonomy_signs,
    is_orientable,
    validate_gkm,
)
from gkmcohom import fixtures

from helpers import random_gkm_graphs


def count_connections(g: GkmGraph, cap: int = 4096) -> int:
    return sum(1 for _ in itertools.islice(enumerate_connections(g), cap))


def test_unique_connection_example():
    g = fixtures.product((1, 0), (0, 1), (2, 3))
    assert count_connections(g) == 1


def test_congruent_labels_multiply_connections():
    # (1, 3) ≡ (1, 0) mod (0, 1) creates a binary choice at several edges
    g = fixtures.product((1, 0), (0, 1), (1, 3))
    assert count_connections(g) == 16


def test_edge_matchings_always_send_edge_to_reverse():
    g = fixtures.paper8()
    for eid in range(len(g.edges)):
        e = g.default_oriented(eid)
        for matching in edge_matchings(g, eid):
            assert matching[e] == e.reverse()
            assert sorted(matching.keys()) == sorted(g.star(g.initial(e)))
            assert sorted(matching.values()) == sorted(g.star(g.terminal(e)))


def test_connection_congruence_holds():
    g = fixtures.paper8()
    c = find_connection(g)
    assert c is not None
    from gkmcohom.polyring import is_multiple_of

    for eid in range(len(g.edges)):
        e = g.default_oriented(eid)
        le = g.label(eid)
        for f in g.star(g.initial(e)):
            h = c.apply(e, f)
            lf, lh = g.label(f.edge), g.label(h.edge)
            diff = tuple(a - b for a, b in zip(lf, lh))
            summ = tuple(a + b for a, b in zip(lf, lh))
            assert is_multiple_of(diff, le) or is_multiple_of(summ, le)


def test_connection_from_matchings_validation():
    g = fixtures.paper8()
    c = find_connection(g)
    e = g.default_oriented(0)
    good = c.map_along(e)

    not_bijection = dict(good)
    first_key = next(k for k in not_bijection if k != e)
    not_bijection[first_key] = e.reverse()
    with pytest.raises(ValueError):
        connection_from_matchings(g, {0: not_bijection})

    wrong_self = dict(good)
    other_target = next(v for k, v in good.items() if k != e)
    wrong_self[e] = other_target
    with pytest.raises(ValueError):
        connection_from_matchings(g, {0: wrong_self})

    rebuilt = connection_from_matchings(g, {0: good})
    assert rebuilt.map_along(e) == good


def test_holonomy_signs_are_symmetric_units():
    for g in (fixtures.paper8(), fixtures.triangle(), fixtures.k4()):
        c = find_connection(g)
        eta = holonomy_signs(g, c)
        for eid in range(len(g.edges)):
            oe = g.default_oriented(eid)
            assert eta[oe] in (-1, 1)
            assert eta[oe.reverse()] == eta[oe]


def test_triangle_fixtures_are_orientable():
    g = fixtures.triangle()
    c = find_connection(g)
    assert is_orientable(g, c)
    eta = holonomy_signs(g, c)
    cycle_product = 1
    for eid in range(3):
        cycle_product *= eta[g.default_oriented(eid)]
    assert cycle_product == 1
    assert is_orientable(fixtures.triangle_x_edge(), None)


def test_k4_is_never_orientable():
    g = fixtures.k4()
    assert validate_gkm(g).ok
    connections = list(enumerate_connections(g))
    assert len(connections) == 64
    assert all(not is_orientable(g, c) for c in connections)


def test_paper8_is_orientable():
    g = fixtures.paper8()
    assert is_orientable(g, find_connection(g))


def test_orientability_is_connection_independent():
    for g in random_gkm_graphs(17, 12):
        values = {
            is_orientable(g, c)
            for c in itertools.islice(enumerate_connections(g), 16)
        }
        assert len(values) == 1, g


def test_connection_maps_are_involutive():
    graphs = [fixtures.paper8(), fixtures.k4(), fixtures.polygon2n_x_edge(2)]
    graphs += random_gkm_graphs(53, 6)
    for g in graphs:
        c = find_connection(g)
        for eid in range(len(g.edges)):
            e = g.default_oriented(eid)
            for f in g.star(g.initial(e)):
                assert c.apply(e.reverse(), c.apply(e, f)) == f


def _all_short_walk_products_positive(g, eta, max_len=6) -> bool:
    for v0 in range(len(g.vertices)):
        stack = [(v0, 1, 0)]
        while stack:
            v, prod, length = stack.pop()
            if length and v == v0 and prod == -1:
                return False
            if length >= max_len:
                continue
            for oe in g.star(v):
                stack.append((g.terminal(oe), prod * eta[oe], length + 1))
    return True


def test_orientability_matches_exhaustive_walk_products():
    # eta-products over *all* closed walks of length <= 6 independently
    # decide orientability on graphs this small
    graphs = [
        fixtures.paper8(),
        fixtures.k4(),
        fixtures.triangle(),
        fixtures.triangle_x_edge(),
        fixtures.polygon2n_x_edge(2),
    ]
    graphs += random_gkm_graphs(59, 5)
    for g in graphs:
        c = find_connection(g)
        eta = holonomy_signs(g, c)
        assert _all_short_walk_products_positive(g, eta) == is_orientable(g, c), g
