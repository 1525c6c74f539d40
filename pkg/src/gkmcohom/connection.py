"""Compatible connections, their sign data, and orientability.

A connection assigns to every oriented edge e a bijection between the
stars of its endpoints sending e to its reverse, such that each edge of
the source star is congruent to a signed copy of its image modulo the
label of e.  Matchings are searched per unoriented edge (the reverse
orientation carries the inverse bijection, so edges are independent).
"""

from __future__ import annotations

from itertools import islice, product as iproduct

from .graph import GkmGraph, OrientedEdge
from .polyring import is_multiple_of


class Connection:
    """Family of star bijections, one per oriented edge."""

    __slots__ = ("graph", "_maps")

    def __init__(self, graph: GkmGraph, maps: dict):
        self.graph = graph
        self._maps = maps

    def apply(self, e: OrientedEdge, f: OrientedEdge) -> OrientedEdge:
        return self._maps[e][f]

    def map_along(self, e: OrientedEdge) -> dict:
        return dict(self._maps[e])

    def to_dict(self) -> dict:
        out = []
        for eid in range(len(self.graph.edges)):
            oe = self.graph.default_oriented(eid)
            pairs = sorted(
                (src.render(), dst.render()) for src, dst in self._maps[oe].items()
            )
            out.append({"along": oe.render(), "pairs": [list(p) for p in pairs]})
        return {"connection": out}


def _compatible_pair(g: GkmGraph, edge_id: int, f: OrientedEdge, h: OrientedEdge) -> bool:
    """Whether some signed lifts of f and h are congruent mod the edge label."""
    lf = g.label(f.edge)
    lh = g.label(h.edge)
    le = g.label(edge_id)
    diff = tuple(a - b for a, b in zip(lf, lh))
    summ = tuple(a + b for a, b in zip(lf, lh))
    return is_multiple_of(diff, le) or is_multiple_of(summ, le)


def edge_matchings(g: GkmGraph, edge_id: int) -> list[dict]:
    """All compatible bijections for one unoriented edge.

    Keys run over the star of the initial vertex of the default
    orientation (including the edge itself, which always maps to its
    reverse); enumeration order is lexicographic in the canonical star
    order.
    """
    e = g.default_oriented(edge_id)
    ebar = e.reverse()
    sources = [f for f in g.star(g.initial(e)) if f != e]
    targets = [h for h in g.star(g.terminal(e)) if h != ebar]
    if len(sources) != len(targets):
        return []
    allowed = {
        f: [h for h in targets if _compatible_pair(g, edge_id, f, h)] for f in sources
    }
    results: list[dict] = []

    def backtrack(i: int, used: set, current: dict) -> None:
        if i == len(sources):
            results.append({e: ebar, **current})
            return
        f = sources[i]
        for h in allowed[f]:
            if h in used:
                continue
            used.add(h)
            current[f] = h
            backtrack(i + 1, used, current)
            del current[f]
            used.discard(h)

    backtrack(0, set(), {})
    return results


def _assemble(g: GkmGraph, chosen: dict) -> Connection:
    maps: dict = {}
    for eid, matching in chosen.items():
        e = g.default_oriented(eid)
        maps[e] = dict(matching)
        maps[e.reverse()] = {h: f for f, h in matching.items()}
    return Connection(g, maps)


def find_connection(g: GkmGraph) -> Connection | None:
    """Lexicographically first compatible connection, or None."""
    chosen = {}
    for eid in range(len(g.edges)):
        options = edge_matchings(g, eid)
        if not options:
            return None
        chosen[eid] = options[0]
    return _assemble(g, chosen)


def enumerate_connections(g: GkmGraph, limit: int | None = None):
    """All compatible connections (cartesian product of edge matchings).

    Yields at most ``limit`` connections when given; the count grows as
    the product of per-edge matching counts, so always cap in callers.
    """
    per_edge = []
    for eid in range(len(g.edges)):
        options = edge_matchings(g, eid)
        if not options:
            return
        per_edge.append(options)
    combos = iproduct(*per_edge)
    if limit is not None:
        combos = islice(combos, limit)
    for combo in combos:
        yield _assemble(g, dict(enumerate(combo)))


def connection_from_matchings(g: GkmGraph, matchings: dict) -> Connection:
    """Build a connection from explicit per-edge matchings, validating
    bijectivity and the congruence condition."""
    chosen = {}
    for eid in range(len(g.edges)):
        if eid not in matchings:
            options = edge_matchings(g, eid)
            if not options:
                raise ValueError(f"edge {eid} admits no compatible bijection")
            chosen[eid] = options[0]
            continue
        e = g.default_oriented(eid)
        m = dict(matchings[eid])
        m.setdefault(e, e.reverse())
        sources = set(g.star(g.initial(e)))
        targets = set(g.star(g.terminal(e)))
        if set(m) != sources or set(m.values()) != targets:
            raise ValueError(f"edge {eid}: matching is not a star bijection")
        if m[e] != e.reverse():
            raise ValueError(f"edge {eid}: matching must send the edge to its reverse")
        for f, h in m.items():
            if f != e and not _compatible_pair(g, eid, f, h):
                raise ValueError(
                    f"edge {eid}: pair {f.render()} -> {h.render()} violates the "
                    f"congruence"
                )
        chosen[eid] = m
    return _assemble(g, chosen)


def holonomy_signs(g: GkmGraph, c: Connection) -> dict:
    """Sign eta(e) for every oriented edge.

    For each f in the source star, exactly one sign makes the label lift
    of f congruent to the signed lift of its image; eta(e) is minus the
    product of these signs over the star without e itself.  Ambiguity in
    the sign would mean two adjacent labels are parallel, so it raises.
    """
    eta: dict = {}
    for eid in range(len(g.edges)):
        for oe in (g.default_oriented(eid), g.default_oriented(eid).reverse()):
            le = g.label(eid)
            prod = 1
            for f in g.star(g.initial(oe)):
                if f == oe:
                    continue
                h = c.apply(oe, f)
                lf = g.label(f.edge)
                lh = g.label(h.edge)
                plus = is_multiple_of(tuple(a - b for a, b in zip(lf, lh)), le)
                minus = is_multiple_of(tuple(a + b for a, b in zip(lf, lh)), le)
                if plus and minus:
                    raise ValueError(
                        f"ambiguous transport sign along edge {eid}: adjacent "
                        f"labels fail linear independence"
                    )
                if not plus and not minus:
                    raise ValueError(
                        f"connection is not compatible along edge {eid}"
                    )
                prod *= 1 if plus else -1
            eta[oe] = -prod
    return eta


def is_orientable(g: GkmGraph, c: Connection | None = None) -> bool:
    """Whether eta-products along all closed edge paths are +1.

    Checked on two-step paths (e, reverse e) and on the fundamental
    cycles of a spanning forest; those generate all closed-path products
    once the two-step products are trivial.
    """
    if c is None:
        c = find_connection(g)
        if c is None:
            raise ValueError("graph admits no compatible connection")
    eta = holonomy_signs(g, c)
    for eid in range(len(g.edges)):
        oe = g.default_oriented(eid)
        if eta[oe] * eta[oe.reverse()] != 1:
            return False
    # spanning forest
    nv = len(g.vertices)
    parent: dict[int, OrientedEdge] = {}
    seen = [False] * nv
    order: list[int] = []
    tree_edges: set[int] = set()
    for root in range(nv):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for f in g.star(v):
                w = g.terminal(f)
                if not seen[w]:
                    seen[w] = True
                    parent[w] = f
                    tree_edges.add(f.edge)
                    queue.append(w)

    def walk_up(v: int) -> int:
        """eta-product along the tree walk from v up to its root."""
        prod = 1
        while v in parent:
            f = parent[v]
            prod *= eta[f.reverse()]
            v = g.initial(f)
        return prod

    def walk_down(v: int) -> int:
        """eta-product along the tree walk from the root down to v."""
        prod = 1
        while v in parent:
            f = parent[v]
            prod *= eta[f]
            v = g.initial(f)
        return prod

    for eid in range(len(g.edges)):
        if eid in tree_edges:
            continue
        oe = g.default_oriented(eid)
        u, v = g.initial(oe), g.terminal(oe)
        if eta[oe] * walk_up(v) * walk_down(u) != 1:
            return False
    return True
