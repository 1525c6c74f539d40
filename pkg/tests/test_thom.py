"""Connection paths and path/edge/vertex classes on 3-valent graphs."""

from __future__ import annotations

import itertools

import pytest

from gkmcohom import (
    connection_from_matchings,
    connection_paths,
    enumerate_connections,
    find_connection,
    membership_z,
    reduce_class_mod_p,
    thom_class_of_edge,
    thom_class_of_path,
    thom_class_of_vertex,
    total_sw,
    verify_sw3valent,
)
from gkmcohom import fixtures
from gkmcohom.graph import OrientedEdge

from helpers import random_3valent_orientable


def oe(text: str) -> OrientedEdge:
    return OrientedEdge(int(text[:-1]), text[-1] == "-")


# ---------------------------------------------------------------------------
# path decomposition


def test_path_counts_on_fixtures():
    cases = [
        (fixtures.polygon2n_x_edge(2), 6),
        (fixtures.polygon2n_x_edge(3), 8),
        (fixtures.triangle_x_edge(), 5),
        (fixtures.product((1, 0), (0, 1), (1, 1)), 6),
    ]
    for g, expected in cases:
        assert len(connection_paths(g)) == expected


def test_paths_cover_each_pair_once():
    g = fixtures.polygon2n_x_edge(2)
    paths = connection_paths(g)
    total = sum(len(p) for p in paths)
    # every non-backtracking (prev, cur) pair at a vertex appears once:
    # n(n-1) per vertex over oriented pairs, each path edge consuming one
    assert total == 3 * 2 * len(g.vertices) // 2


def test_square_prism_paths_frozen():
    g = fixtures.polygon2n_x_edge(2)
    paths = connection_paths(g)
    assert [p.render() for p in paths] == [
        "0+ 1+ 2+ 3+",
        "0+ 9+ 4- 8-",
        "1+ 10+ 5- 9-",
        "2+ 11+ 6- 10-",
        "3+ 8+ 7- 11-",
        "4+ 5+ 6+ 7+",
    ]
    assert all(not p.self_reversed for p in paths)


def test_each_star_element_is_a_normal_edge_exactly_once():
    for g in (
        fixtures.polygon2n_x_edge(2),
        fixtures.triangle_x_edge(),
        fixtures.product((1, 0), (0, 1), (1, 1)),
    ):
        c = find_connection(g)
        seen: dict = {}
        for p in connection_paths(g, c):
            for v, normal, _ in p.normal_slots():
                seen[(v, normal)] = seen.get((v, normal), 0) + 1
        star_elements = {
            (v, oe) for v in range(len(g.vertices)) for oe in g.star(v)
        }
        assert set(seen) == star_elements
        assert set(seen.values()) == {1}


def test_path_class_ignores_the_chosen_representative():
    from gkmcohom.thom import ConnectionPath

    g = fixtures.polygon2n_x_edge(2)
    c = find_connection(g)
    for p in connection_paths(g, c):
        base = thom_class_of_path(g, c, p)
        for s in range(len(p.edges)):
            rotated = ConnectionPath(g, p.edges[s:] + p.edges[:s], p.self_reversed)
            cls = thom_class_of_path(g, c, rotated)
            assert cls == base or cls == -base
        reverse = ConnectionPath(
            g, tuple(e.reverse() for e in reversed(p.edges)), p.self_reversed
        )
        cls = thom_class_of_path(g, c, reverse)
        assert cls == base or cls == -base


def test_no_self_reversed_paths_observed():
    for g in (fixtures.triangle_x_edge(), fixtures.polygon2n_x_edge(2)):
        for c in itertools.islice(enumerate_connections(g), 12):
            assert all(not p.self_reversed for p in connection_paths(g, c))


# ---------------------------------------------------------------------------
# a twisted connection merging two paths into one


def twisted_prism():
    g = fixtures.polygon2n_x_edge(2)
    matching = {oe("0+"): oe("0-"), oe("3-"): oe("9+"), oe("8+"): oe("1+")}
    return g, connection_from_matchings(g, {0: matching})


def test_twisted_connection_merges_paths():
    g, c = twisted_prism()
    paths = connection_paths(g, c)
    assert len(paths) == 5
    long = max(paths, key=len)
    assert long.render() == "0+ 1+ 2+ 3+ 0+ 9+ 4- 8-"
    assert len(long) == 8
    crossings = [slot for slot in long.edges if slot.edge == 0]
    assert len(crossings) == 2


def test_twisted_path_class_frozen():
    g, c = twisted_prism()
    long = max(connection_paths(g, c), key=len)
    cls = thom_class_of_path(g, c, long)
    assert cls.render_values() == [
        "x + 2*y", "x + 2*y", "x + y", "x + y", "y", "y", "0", "0",
    ]
    assert membership_z(g, cls)
    flipped = thom_class_of_path(g, c, long, initial_sign=-1)
    assert flipped == -cls


def test_twisted_connection_still_verifies():
    g, c = twisted_prism()
    report = verify_sw3valent(g, c)
    assert report["all_match"]
    assert report["path_count"] == 5
    assert report["self_reversed_paths"] == 0


# ---------------------------------------------------------------------------
# the three class builders


def test_path_classes_are_integral_everywhere():
    g = fixtures.triangle_x_edge()
    c = find_connection(g)
    for p in connection_paths(g, c):
        assert membership_z(g, thom_class_of_path(g, c, p))


def test_edge_class_supported_on_endpoints():
    g = fixtures.polygon2n_x_edge(2)
    c = find_connection(g)
    cls = thom_class_of_edge(g, c, 8)
    e = g.default_oriented(8)
    support = [v for v in range(len(g.vertices)) if not cls.values[v].is_zero()]
    assert sorted(support) == sorted([g.initial(e), g.terminal(e)])
    assert membership_z(g, cls)


def test_vertex_class_is_star_product():
    g = fixtures.triangle_x_edge()
    cls = thom_class_of_vertex(g, 0)
    support = [v for v in range(len(g.vertices)) if not cls.values[v].is_zero()]
    assert support == [0]
    from gkmcohom.polyring import GradedPoly, linear_from_weight

    expect = GradedPoly.constant(2, 1)
    for l in g.star(0):
        expect = expect * linear_from_weight(g.label(l.edge))
    assert cls.values[0] == expect
    assert membership_z(g, cls)


# ---------------------------------------------------------------------------
# the degree-by-degree comparison


def test_fixture_suite_verifies():
    for g in (
        fixtures.polygon2n_x_edge(2),
        fixtures.polygon2n_x_edge(3),
        fixtures.triangle_x_edge(),
        fixtures.product((1, 0), (0, 1), (1, 1)),
        fixtures.product((1, 0), (0, 1), (2, 3)),
    ):
        report = verify_sw3valent(g)
        assert report["all_match"], report


def test_random_orientable_graphs_verify():
    for g in random_3valent_orientable(13, 8):
        report = verify_sw3valent(g)
        assert report["all_match"]


def test_all_constructors_integral_on_50_random_graphs():
    for g in random_3valent_orientable(7, 50):
        c = find_connection(g)
        for p in connection_paths(g, c):
            assert membership_z(g, thom_class_of_path(g, c, p))
        for e in range(len(g.edges)):
            assert membership_z(g, thom_class_of_edge(g, c, e))
        for v in range(len(g.vertices)):
            assert membership_z(g, thom_class_of_vertex(g, v))


def test_path_sum_reduces_to_degree2_component():
    g = fixtures.polygon2n_x_edge(2)
    c = find_connection(g)
    paths = connection_paths(g, c)
    total = thom_class_of_path(g, c, paths[0])
    for p in paths[1:]:
        total = total + thom_class_of_path(g, c, p)
    assert reduce_class_mod_p(g, total, 2) == total_sw(g, c).component(2)


# ---------------------------------------------------------------------------
# preconditions


def test_non_3valent_graphs_are_rejected():
    g = fixtures.paper8()
    c = find_connection(g)
    with pytest.raises(ValueError, match="3-valent"):
        verify_sw3valent(g)
    with pytest.raises(ValueError, match="3-valent"):
        thom_class_of_edge(g, c, 0)
    with pytest.raises(ValueError, match="3-valent"):
        thom_class_of_vertex(g, 0)


def test_path_class_on_nonorientable_graph_raises():
    g = fixtures.k4()
    with pytest.raises(ValueError, match="not orientable"):
        verify_sw3valent(g)
    c = find_connection(g)
    for p in connection_paths(g, c):
        with pytest.raises(ValueError, match="closing congruence failed"):
            thom_class_of_path(g, c, p)
