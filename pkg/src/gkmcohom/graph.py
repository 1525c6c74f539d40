"""Edge-labeled multigraph model.

A graph here is a finite multigraph without loops whose edges carry
integer weight labels defined up to sign (labels are stored
sign-normalized).  Vertices are named; file order of vertices and edges
is the canonical order, and the default orientation of an edge points
from the endpoint with the smaller vertex index to the larger one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

from .intlinalg import IntMatrix, hnf
from .polyring import Weight, content, sign_normalize, weights_parallel


class GraphFormatError(ValueError):
    """Raised when a graph description is malformed."""


class OrientedEdge(NamedTuple):
    edge: int
    back: bool

    def reverse(self) -> "OrientedEdge":
        return OrientedEdge(self.edge, not self.back)

    def render(self) -> str:
        return f"{self.edge}{'-' if self.back else '+'}"


class GkmGraph:
    """Immutable labeled multigraph with cached per-vertex stars."""

    __slots__ = ("torus_rank", "vertices", "edges", "_index", "_stars", "_cache")

    def __init__(self, torus_rank: int, vertices, edges):
        if torus_rank < 1:
            raise GraphFormatError("torus_rank must be at least 1")
        names = tuple(str(v) for v in vertices)
        if len(set(names)) != len(names):
            raise GraphFormatError("duplicate vertex names")
        if not names:
            raise GraphFormatError("graph needs at least one vertex")
        index = {name: i for i, name in enumerate(names)}
        stored = []
        for pos, (u, v, label) in enumerate(edges):
            ui = index.get(u, u) if isinstance(u, str) else u
            vi = index.get(v, v) if isinstance(v, str) else v
            if not isinstance(ui, int) or not 0 <= ui < len(names):
                raise GraphFormatError(f"edges[{pos}]: unknown vertex {u!r}")
            if not isinstance(vi, int) or not 0 <= vi < len(names):
                raise GraphFormatError(f"edges[{pos}]: unknown vertex {v!r}")
            if ui == vi:
                raise GraphFormatError(f"edges[{pos}]: loop at vertex {names[ui]!r}")
            lab = tuple(label)
            if len(lab) != torus_rank:
                raise GraphFormatError(
                    f"edges[{pos}]: label length {len(lab)} != torus_rank {torus_rank}"
                )
            if not all(isinstance(x, int) for x in lab):
                raise GraphFormatError(f"edges[{pos}]: non-integer label {label!r}")
            if not any(lab):
                raise GraphFormatError(f"edges[{pos}]: zero label")
            stored.append((ui, vi, sign_normalize(lab)))
        self.torus_rank = torus_rank
        self.vertices = names
        self.edges = tuple(stored)
        self._index = index
        stars: list[list[OrientedEdge]] = [[] for _ in names]
        for eid, (ui, vi, _) in enumerate(self.edges):
            stars[ui].append(OrientedEdge(eid, False))
            stars[vi].append(OrientedEdge(eid, True))
        self._stars = tuple(tuple(sorted(s)) for s in stars)
        self._cache: dict = {}

    # --- basic accessors -------------------------------------------------

    def vertex_index(self, name: str) -> int:
        return self._index[name]

    def label(self, edge_id: int) -> Weight:
        return self.edges[edge_id][2]

    def initial(self, oe: OrientedEdge) -> int:
        u, v, _ = self.edges[oe.edge]
        return v if oe.back else u

    def terminal(self, oe: OrientedEdge) -> int:
        u, v, _ = self.edges[oe.edge]
        return u if oe.back else v

    def star(self, vertex: int) -> tuple[OrientedEdge, ...]:
        """Oriented edges emanating from the vertex, in canonical order."""
        return self._stars[vertex]

    def default_oriented(self, edge_id: int) -> OrientedEdge:
        u, v, _ = self.edges[edge_id]
        return OrientedEdge(edge_id, back=u > v)

    def valences(self) -> list[int]:
        return [len(s) for s in self._stars]

    @property
    def valence(self) -> int:
        vals = set(self.valences())
        if len(vals) != 1:
            raise ValueError("graph is not regular")
        return vals.pop()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GkmGraph)
            and self.torus_rank == other.torus_rank
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.torus_rank, self.vertices, self.edges))

    def __repr__(self) -> str:
        return (
            f"<GkmGraph k={self.torus_rank} |V|={len(self.vertices)} "
            f"|E|={len(self.edges)}>"
        )

    # --- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "torus_rank": self.torus_rank,
            "vertices": list(self.vertices),
            "edges": [
                {"u": self.vertices[u], "v": self.vertices[v], "label": list(lab)}
                for u, v, lab in self.edges
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def parse(source: str | dict) -> GkmGraph:
    """Build a graph from its JSON description.

    Expected shape::

        {"torus_rank": 2,
         "vertices": ["a", "b"],
         "edges": [{"u": "a", "v": "b", "label": [1, 0]}]}

    Edge file order defines the canonical edge ids.
    """
    if isinstance(source, str):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from exc
    else:
        doc = source
    if not isinstance(doc, dict):
        raise GraphFormatError("top level must be an object")
    for key in ("torus_rank", "vertices", "edges"):
        if key not in doc:
            raise GraphFormatError(f"missing key {key!r}")
    if not isinstance(doc["torus_rank"], int):
        raise GraphFormatError("torus_rank must be an integer")
    if not isinstance(doc["vertices"], list) or not all(
        isinstance(v, str) for v in doc["vertices"]
    ):
        raise GraphFormatError("vertices must be a list of names")
    if not isinstance(doc["edges"], list):
        raise GraphFormatError("edges must be a list")
    edges = []
    for pos, e in enumerate(doc["edges"]):
        if not isinstance(e, dict) or not {"u", "v", "label"} <= set(e):
            raise GraphFormatError(f"edges[{pos}]: need keys u, v, label")
        if not isinstance(e["label"], list):
            raise GraphFormatError(f"edges[{pos}]: label must be a list")
        edges.append((e["u"], e["v"], e["label"]))
    return GkmGraph(doc["torus_rank"], doc["vertices"], edges)


# ---------------------------------------------------------------------------
# axioms and basic checks


@dataclass
class CheckReport:
    name: str
    ok: bool
    issues: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "ok": self.ok,
            "issues": list(self.issues),
            **self.data,
        }


def validate_gkm(g: GkmGraph) -> CheckReport:
    """Constant valence and pairwise linear independence at every vertex."""
    issues = []
    vals = g.valences()
    if len(set(vals)) != 1:
        issues.append(f"valence not constant: {sorted(set(vals))}")
    for v in range(len(g.vertices)):
        star = g.star(v)
        for i in range(len(star)):
            for j in range(i + 1, len(star)):
                a = g.label(star[i].edge)
                b = g.label(star[j].edge)
                if weights_parallel(a, b):
                    issues.append(
                        f"vertex {g.vertices[v]!r}: labels of edges "
                        f"{star[i].edge} and {star[j].edge} are parallel"
                    )
    return CheckReport("gkm_axioms", not issues, issues, {"valences": vals})


def check_coprimality(g: GkmGraph) -> CheckReport:
    """Contents of labels at a common vertex must be pairwise coprime."""
    from math import gcd

    issues = []
    for v in range(len(g.vertices)):
        star = g.star(v)
        for i in range(len(star)):
            for j in range(i + 1, len(star)):
                ci = content(g.label(star[i].edge))
                cj = content(g.label(star[j].edge))
                if gcd(ci, cj) != 1:
                    issues.append(
                        f"vertex {g.vertices[v]!r}: contents of edges "
                        f"{star[i].edge} ({ci}) and {star[j].edge} ({cj}) share "
                        f"a factor"
                    )
    return CheckReport("coprimality", not issues, issues)


def edges_div_p(g: GkmGraph, p: int) -> list[int]:
    """Edge ids whose label content is divisible by p."""
    if p < 2:
        raise ValueError("p must be at least 2")
    return [eid for eid in range(len(g.edges)) if content(g.label(eid)) % p == 0]


def is_effective(g: GkmGraph) -> bool:
    """Whether the labels span the full rational weight space."""
    h, _ = hnf(IntMatrix([list(lab) for _, _, lab in g.edges], cols=g.torus_rank))
    rank = sum(1 for row in h.data if any(row))
    return rank == g.torus_rank


# ---------------------------------------------------------------------------
# orientation and lift conventions


@dataclass(frozen=True)
class Conventions:
    """Per-edge overrides of the default orientation and sign lift.

    ``reversed_edges`` flips the default orientation of the listed edge
    ids; ``lifts`` picks the signed representative of a label used as
    divisor (must be the stored label up to sign).
    """

    reversed_edges: frozenset = frozenset()
    lifts: dict = field(default_factory=dict)

    def oriented(self, g: GkmGraph, edge_id: int) -> OrientedEdge:
        oe = g.default_oriented(edge_id)
        return oe.reverse() if edge_id in self.reversed_edges else oe

    def lift(self, g: GkmGraph, edge_id: int) -> Weight:
        if edge_id in self.lifts:
            w = tuple(self.lifts[edge_id])
            if sign_normalize(w) != g.label(edge_id):
                raise ValueError(
                    f"lift override {w} is not a signed copy of label "
                    f"{g.label(edge_id)}"
                )
            return w
        return g.label(edge_id)

    def validate_against(self, g: GkmGraph) -> None:
        """Raise early if an override names a missing edge or a bad lift."""
        for eid in sorted(self.reversed_edges | set(self.lifts)):
            if not 0 <= eid < len(g.edges):
                raise ValueError(
                    f"override names edge {eid}, but the graph has "
                    f"{len(g.edges)} edges"
                )
        for eid in self.lifts:
            self.lift(g, eid)

    def to_dict(self, g: GkmGraph) -> dict:
        return {
            "orientation": {
                str(eid): ("reversed" if eid in self.reversed_edges else "default")
                for eid in range(len(g.edges))
                if eid in self.reversed_edges
            },
            "lifts": {str(eid): list(w) for eid, w in sorted(self.lifts.items())},
        }


DEFAULT_CONVENTIONS = Conventions()
