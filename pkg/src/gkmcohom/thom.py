"""Thom classes for 3-valent graphs over a rank-2 torus.

Connection paths are the orbits of (previous edge, current edge) pairs
under the rule "next = connection of the reversed previous edge along
the current one".  In a 3-valent graph each step leaves one normal edge
at the current vertex; transporting a sign for the normal labels along
the path yields a degree-2 class, and together with the classical edge
and vertex classes these sums reproduce the even characteristic-class
components.
"""

from __future__ import annotations

from .charclasses import _forced_lift, total_sw
from .cohomology import GraphClassZ, membership_z, reduce_class_mod_p
from .connection import Connection, enumerate_connections, find_connection, is_orientable
from .graph import GkmGraph, OrientedEdge
from .polyring import GradedPoly, linear_from_weight, sign_normalize


class ConnectionPath:
    """Closed edge path following the connection, canonically rotated.

    The stored representative is the lexicographically smallest rotation
    among both traversal directions, so equal path classes compare equal.
    ``self_reversed`` marks paths whose reversal is a rotation of
    themselves (they traverse some edge in both directions).
    """

    __slots__ = ("graph", "edges", "self_reversed")

    def __init__(self, graph: GkmGraph, edges, self_reversed: bool):
        self.graph = graph
        self.edges = tuple(edges)
        self.self_reversed = self_reversed

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConnectionPath):
            return NotImplemented
        return self.graph == other.graph and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def render(self) -> str:
        return " ".join(oe.render() for oe in self.edges)

    def normal_slots(self) -> list[tuple[int, OrientedEdge, int]]:
        """Per position: (vertex, normal oriented edge, incoming edge id).

        Only defined for 3-valent graphs, where removing the incoming and
        outgoing edges from a star leaves exactly one normal edge.
        """
        g = self.graph
        slots = []
        l = len(self.edges)
        for j in range(l):
            prev = self.edges[(j - 1) % l]
            cur = self.edges[j]
            v = g.initial(cur)
            if g.terminal(prev) != v:
                raise ValueError("path edges are not consecutive")
            blocked = {prev.reverse(), cur}
            normals = [oe for oe in g.star(v) if oe not in blocked]
            if len(normals) != 1:
                raise ValueError("normal edge undefined; graph is not 3-valent")
            slots.append((v, normals[0], prev.edge))
        return slots


def _successor(c: Connection, pair: tuple) -> tuple:
    prev, cur = pair
    return (cur, c.apply(cur, prev.reverse()))


def _canonical_rotation(edges: tuple) -> tuple:
    best = None
    l = len(edges)
    for s in range(l):
        cand = edges[s:] + edges[:s]
        if best is None or cand < best:
            best = cand
    return best


def connection_paths(g: GkmGraph, c: Connection | None = None) -> list[ConnectionPath]:
    """All connection paths, deduplicated up to rotation and reversal.

    Every ordered pair of consecutive oriented edges (no backtracking)
    belongs to exactly one traversal; a path and its reversal count once.
    """
    if c is None:
        c = find_connection(g)
        if c is None:
            raise ValueError("graph admits no compatible connection")
    pairs = []
    for v in range(len(g.vertices)):
        for into in g.star(v):
            prev = into.reverse()
            for cur in g.star(v):
                if cur != into:
                    pairs.append((prev, cur))
    total = len(pairs)
    seen: set = set()
    out = []
    covered = 0
    for start in pairs:
        if start in seen:
            continue
        orbit = []
        pair = start
        while True:
            orbit.append(pair)
            seen.add(pair)
            pair = _successor(c, pair)
            if pair == start:
                break
        edges = tuple(cur for _, cur in orbit)
        reversed_pairs = [(cur.reverse(), prev.reverse()) for prev, cur in orbit]
        self_reversed = reversed_pairs[0] in set(orbit)
        if self_reversed:
            assert set(reversed_pairs) == set(orbit)
            covered += len(orbit)
        else:
            for rp in reversed_pairs:
                seen.add(rp)
            covered += 2 * len(orbit)
        reversed_edges = tuple(oe.reverse() for oe in reversed(edges))
        canon = min(_canonical_rotation(edges), _canonical_rotation(reversed_edges))
        out.append(ConnectionPath(g, canon, self_reversed))
    n = g.valence
    assert total == n * (n - 1) * len(g.vertices)
    assert covered == total, "paths do not partition the pair set"
    out.sort(key=lambda p: p.edges)
    return out


def thom_class_of_path(
    g: GkmGraph, c: Connection, path: ConnectionPath, initial_sign: int = 1
) -> GraphClassZ:
    """Degree-2 class of a connection path via normal-label sign transport.

    The lift of the lexicographically smallest normal edge is the
    sign-normalized label (times ``initial_sign``); successive normal
    labels take the sign forced by congruence modulo the edge between
    them.  The closing congruence holds exactly when the graph is
    orientable and is asserted; a doubly-crossed normal edge must
    receive the same sign both times.
    """
    if g.torus_rank != 2:
        raise ValueError("path classes require torus rank 2")
    slots = path.normal_slots()
    l = len(slots)
    start = min(range(l), key=lambda j: slots[j][1])
    rotated = slots[start:] + slots[:start]
    beta: dict[OrientedEdge, tuple] = {}
    current = tuple(initial_sign * x for x in sign_normalize(g.label(rotated[0][1].edge)))
    beta[rotated[0][1]] = current
    for j in range(1, l):
        _, normal, between = rotated[j]
        forced = _forced_lift(current, g.label(normal.edge), g.label(between))
        if forced is None:
            raise ValueError("sign transport failed; connection not compatible")
        if normal in beta and beta[normal] != forced:
            raise ValueError(
                f"normal edge {normal.render()} crossed twice with conflicting signs"
            )
        beta[normal] = forced
        current = forced
    _, first_normal, between = rotated[0]
    closing = _forced_lift(current, g.label(first_normal.edge), g.label(between))
    if closing != beta[first_normal]:
        raise ValueError("closing congruence failed; the graph is not orientable")
    k = g.torus_rank
    values = []
    for v in range(len(g.vertices)):
        total = [0] * k
        for oe in g.star(v):
            w = beta.get(oe)
            if w is not None:
                for i in range(k):
                    total[i] += w[i]
        values.append(linear_from_weight(tuple(total)) if any(total) else GradedPoly.zero(k, 1))
    cls = GraphClassZ(g, 2, values)
    assert membership_z(g, cls), "path class violates an edge congruence"
    return cls


def thom_class_of_edge(g: GkmGraph, c: Connection, edge_id: int) -> GraphClassZ:
    """Degree-4 class supported on the endpoints of one edge."""
    if g.torus_rank != 2:
        raise ValueError("edge classes require torus rank 2")
    if g.valence != 3:
        raise ValueError("edge classes require a 3-valent graph")
    oe = g.default_oriented(edge_id)
    u, v = g.initial(oe), g.terminal(oe)
    label = g.label(edge_id)
    sources = [l for l in g.star(u) if l != oe]
    k = g.torus_rank
    src_product = GradedPoly.constant(k, 1)
    dst_product = GradedPoly.constant(k, 1)
    for l in sources:
        src_lift = g.label(l.edge)
        dst = c.apply(oe, l)
        forced = _forced_lift(src_lift, g.label(dst.edge), label)
        if forced is None:
            raise ValueError(f"connection at edge {edge_id} admits no congruent signs")
        src_product = src_product * linear_from_weight(src_lift)
        dst_product = dst_product * linear_from_weight(forced)
    zero = GradedPoly.zero(k, 2)
    values = [zero] * len(g.vertices)
    values[u] = src_product
    values[v] = dst_product
    cls = GraphClassZ(g, 4, values)
    assert membership_z(g, cls), "edge class violates an edge congruence"
    return cls


def thom_class_of_vertex(g: GkmGraph, vertex: int) -> GraphClassZ:
    """Degree-6 class supported on one vertex: product of its star labels."""
    if g.valence != 3:
        raise ValueError("vertex classes require a 3-valent graph")
    k = g.torus_rank
    product = GradedPoly.constant(k, 1)
    for oe in g.star(vertex):
        product = product * linear_from_weight(g.label(oe.edge))
    zero = GradedPoly.zero(k, 3)
    values = [zero] * len(g.vertices)
    values[vertex] = product
    cls = GraphClassZ(g, 6, values)
    assert membership_z(g, cls), "vertex class violates an edge congruence"
    return cls


def _sum_classes(g: GkmGraph, degree2: int, classes) -> GraphClassZ:
    total = GraphClassZ.zero(g, degree2)
    for cls in classes:
        total = total + cls
    return total


def verify_sw3valent(g: GkmGraph, connection: Connection | None = None) -> dict:
    """Compare reduced Thom-class sums with the characteristic components.

    For a 3-valent orientable rank-2 graph the reductions of the three
    sums (over paths, edges, vertices) must equal the degree-2, 4 and 6
    components of the total class.  When at most eight connections exist
    the comparison is repeated across all of them.
    """
    if g.valence != 3:
        raise ValueError("verification requires a 3-valent graph")
    if g.torus_rank != 2:
        raise ValueError("verification requires torus rank 2")
    if connection is None:
        connection = find_connection(g)
    if connection is None:
        raise ValueError("graph admits no compatible connection")
    if not is_orientable(g, connection):
        raise ValueError("graph is not orientable")

    def matches(c: Connection) -> tuple[dict, list[ConnectionPath]]:
        sw = total_sw(g, c)
        paths = connection_paths(g, c)
        path_sum = _sum_classes(g, 2, (thom_class_of_path(g, c, p) for p in paths))
        edge_sum = _sum_classes(
            g, 4, (thom_class_of_edge(g, c, e) for e in range(len(g.edges)))
        )
        vertex_sum = _sum_classes(
            g, 6, (thom_class_of_vertex(g, v) for v in range(len(g.vertices)))
        )
        result = {
            "degree2_match": reduce_class_mod_p(g, path_sum, 2) == sw.component(2),
            "degree4_match": reduce_class_mod_p(g, edge_sum, 2) == sw.component(4),
            "degree6_match": reduce_class_mod_p(g, vertex_sum, 2) == sw.component(6),
            "sums": {
                "2": path_sum.render_values(),
                "4": edge_sum.render_values(),
                "6": vertex_sum.render_values(),
            },
        }
        return result, paths

    result, paths = matches(connection)
    alternates = list(enumerate_connections(g, limit=9))
    checked = 1
    if len(alternates) <= 8:
        for alt in alternates:
            alt_result, _ = matches(alt)
            for key in ("degree2_match", "degree4_match", "degree6_match"):
                if not alt_result[key]:
                    result[key] = False
        checked = len(alternates)
    report = {
        "paths": [p.render() for p in paths],
        "path_count": len(paths),
        "self_reversed_paths": sum(1 for p in paths if p.self_reversed),
        "connections_checked": checked,
        **result,
    }
    report["all_match"] = all(
        report[key] for key in ("degree2_match", "degree4_match", "degree6_match")
    )
    return report
