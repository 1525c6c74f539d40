"""Characteristic classes mod 2, spin criteria, and the realizability verdict.

The total class has one vertex series per vertex (product of 1 + label
over the star) and, for every edge whose label is even, a quotient
series obtained from the difference of the two endpoint star products
divided by a lift of the edge label.  All choices entering the quotient
(local bijection, sign lifts) are provably irrelevant mod 2; covered by
``sw_choice_independence``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cohomology import (
    GraphClassModP,
    GraphClassZ,
    integral_preimage,
    membership_modp,
)
from .connection import Connection, edge_matchings, find_connection
from .graph import Conventions, DEFAULT_CONVENTIONS, GkmGraph, OrientedEdge, edges_div_p
from .polyring import (
    GradedPoly,
    PolySeries,
    divide_by_linear,
    is_multiple_of,
    linear_from_weight,
    reduce_mod_p,
)


def _forced_lift(src_lift, dst_label, edge_label):
    """The signed copy of dst_label congruent to src_lift mod edge_label."""
    minus = tuple(a - b for a, b in zip(src_lift, dst_label))
    plus = tuple(a + b for a, b in zip(src_lift, dst_label))
    fits_pos = is_multiple_of(minus, edge_label)
    fits_neg = is_multiple_of(plus, edge_label)
    if fits_pos and fits_neg:
        raise ValueError("ambiguous sign transport; adjacent labels not independent")
    if fits_pos:
        return tuple(dst_label)
    if fits_neg:
        return tuple(-c for c in dst_label)
    return None


def _star_product(g: GkmGraph, lifts: dict) -> PolySeries:
    """Product of (1 + lift) over the given oriented edges, over Z."""
    k = g.torus_rank
    series = PolySeries.one(k)
    for oe, w in lifts.items():
        series = series * (PolySeries.one(k) + PolySeries.from_poly(linear_from_weight(w)))
    return series


def _edge_quotient_series(
    g: GkmGraph, edge_id: int, matching: dict, signs: dict
) -> PolySeries:
    """The SW quotient series at one even-label edge, reduced mod 2.

    ``matching`` maps the full star of the initial vertex onto the star
    of the terminal vertex (edge to reversed edge included); ``signs``
    gives a sign per source oriented edge.  Target lifts are forced by
    the congruence; the division per degree is exact by compatibility.
    """
    oe = g.default_oriented(edge_id)
    label = g.label(edge_id)
    src_lifts = {}
    dst_lifts = {}
    for l in g.star(g.initial(oe)):
        src = tuple(signs[l] * c for c in g.label(l.edge))
        src_lifts[l] = src
        dst = matching[l]
        if dst == oe.reverse():
            dst_lifts[dst] = src
            continue
        forced = _forced_lift(src, g.label(dst.edge), label)
        if forced is None:
            raise ValueError(
                f"bijection at edge {edge_id} maps {l.render()} to {dst.render()} "
                "without a congruent sign; not a compatible choice"
            )
        dst_lifts[dst] = forced
    numerator = _star_product(g, src_lifts) - _star_product(g, dst_lifts)
    denominator = src_lifts[oe]
    k = g.torus_rank
    out = PolySeries(k, p=2)
    for d in numerator.degrees():
        quotient = divide_by_linear(numerator.component(d), denominator)
        assert quotient is not None, "SW numerator not divisible by the edge lift"
        out = out + PolySeries.from_poly(reduce_mod_p(quotient, 2))
    return out


def _default_matching(g: GkmGraph, edge_id: int, connection: Connection | None) -> dict:
    if connection is not None:
        return connection.map_along(g.default_oriented(edge_id))
    options = edge_matchings(g, edge_id)
    if not options:
        raise ValueError(f"no compatible local bijection at edge {edge_id}")
    return options[0]


class TotalSwClass:
    """Even-degree components 0..2n of the total class, p = 2."""

    __slots__ = ("graph", "components")

    def __init__(self, graph: GkmGraph, components: dict):
        self.graph = graph
        self.components = dict(components)

    def component(self, degree2: int) -> GraphClassModP:
        got = self.components.get(degree2)
        if got is None:
            return GraphClassModP.zero(self.graph, 2, degree2)
        return got

    def degrees(self) -> list[int]:
        return sorted(self.components)

    def to_report(self) -> dict:
        out = {}
        for d2 in self.degrees():
            cls = self.components[d2]
            out[str(d2)] = {
                "vertex_part": cls.render_values(),
                "b_part": {str(e): s for e, s in cls.render_b_part().items()},
            }
        return out


def total_sw(g: GkmGraph, connection: Connection | None = None) -> TotalSwClass:
    """Total characteristic class: vertex star products and edge quotients."""
    n = g.valence
    k = g.torus_rank
    if connection is None:
        connection = find_connection(g)
    vertex_series = []
    for v in range(len(g.vertices)):
        series = PolySeries.one(k, p=2)
        for oe in g.star(v):
            lin = linear_from_weight(g.label(oe.edge), p=2)
            series = series * (PolySeries.one(k, p=2) + PolySeries.from_poly(lin))
        vertex_series.append(series)
    quotients = {}
    for e in edges_div_p(g, 2):
        matching = _default_matching(g, e, connection)
        signs = {l: 1 for l in g.star(g.initial(g.default_oriented(e)))}
        quotients[e] = _edge_quotient_series(g, e, matching, signs)
    components = {}
    for d in range(n + 1):
        values = [s.component(d) for s in vertex_series]
        b_part = {e: q.component(d - 1) for e, q in quotients.items()}
        cls = GraphClassModP(g, 2, 2 * d, values, b_part)
        assert membership_modp(g, cls), "vertex parts violate a mod-2 congruence"
        components[2 * d] = cls
    return TotalSwClass(g, components)


def sw_choice_independence(
    g: GkmGraph, edge_id: int, trials: int = 64, seed: int = 0
) -> bool:
    """Recompute the quotient series across bijections and sign lifts.

    Exhausts the whole choice space when it has at most ``trials``
    elements, otherwise samples that many random choices.
    """
    if edge_id not in edges_div_p(g, 2):
        raise ValueError(f"edge {edge_id} has an odd label; no quotient defined")
    oe = g.default_oriented(edge_id)
    star = g.star(g.initial(oe))
    matchings = edge_matchings(g, edge_id)
    if not matchings:
        raise ValueError(f"no compatible local bijection at edge {edge_id}")
    total = len(matchings) * (2 ** len(star))
    seen = set()
    if total <= trials:
        choices = []
        for m_idx in range(len(matchings)):
            for mask in range(2 ** len(star)):
                choices.append((m_idx, mask))
    else:
        rng = random.Random(seed)
        choices = [
            (rng.randrange(len(matchings)), rng.randrange(2 ** len(star)))
            for _ in range(trials)
        ]
    for m_idx, mask in choices:
        signs = {l: (-1 if (mask >> i) & 1 else 1) for i, l in enumerate(star)}
        series = _edge_quotient_series(g, edge_id, matchings[m_idx], signs)
        key = tuple((d, series.component(d)) for d in series.degrees())
        seen.add(key)
        if len(seen) > 1:
            return False
    return True


@dataclass
class SpinVerdict:
    """Spin criteria: star sums mod 2 and even-edge quotient parities."""

    equivariant_spin: bool
    spin: bool
    condition_a: bool
    condition_a_prime: bool
    condition_b: bool
    vertex_sums: dict = field(default_factory=dict)
    edge_values: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "equivariant": self.equivariant_spin,
            "nonequivariant": self.spin,
            "conditions": {
                "star_sums_vanish_mod_2": self.condition_a,
                "star_sums_agree_mod_2": self.condition_a_prime,
                "even_edge_quotients_even": self.condition_b,
            },
            "vertex_sums": self.vertex_sums,
            "even_edge_values": {str(e): v for e, v in sorted(self.edge_values.items())},
        }


def spin_check(g: GkmGraph) -> SpinVerdict:
    """Evaluate the spin criteria from star sums and edge quotients.

    The quotient in the edge condition is computed from the sum formula
    directly, independently of total_sw, so the two can cross-check.
    """
    k = g.torus_rank
    sums = []
    for v in range(len(g.vertices)):
        total = [0] * k
        for oe in g.star(v):
            for i, c in enumerate(g.label(oe.edge)):
                total[i] += c
        sums.append(tuple(total))
    cond_a = all(all(c % 2 == 0 for c in s) for s in sums)
    parities = {tuple(c % 2 for c in s) for s in sums}
    cond_a_prime = len(parities) <= 1

    connection = find_connection(g)
    edge_values = {}
    cond_b = True
    for e in edges_div_p(g, 2):
        matching = _default_matching(g, e, connection)
        oe = g.default_oriented(e)
        label = g.label(e)
        src_sum = [0] * k
        dst_sum = [0] * k
        for l in g.star(g.initial(oe)):
            src = g.label(l.edge)
            dst = matching[l]
            forced = src if dst == oe.reverse() else _forced_lift(src, g.label(dst.edge), label)
            if forced is None:
                raise ValueError(f"bijection at edge {e} admits no congruent signs")
            for i in range(k):
                src_sum[i] += src[i]
                dst_sum[i] += forced[i]
        diff = tuple(a - b for a, b in zip(src_sum, dst_sum))
        quotient = divide_by_linear(linear_from_weight(diff), label)
        assert quotient is not None, "spin quotient not divisible; incompatible bijection"
        value = quotient.coeffs[0] if quotient.coeffs else 0
        edge_values[e] = value
        if value % 2:
            cond_b = False

    verdict = SpinVerdict(
        equivariant_spin=cond_a and cond_b,
        spin=cond_a_prime and cond_b,
        condition_a=cond_a,
        condition_a_prime=cond_a_prime,
        condition_b=cond_b,
        vertex_sums={g.vertices[v]: list(s) for v, s in enumerate(sums)},
        edge_values=edge_values,
    )
    assert not verdict.equivariant_spin or verdict.spin
    return verdict


@dataclass
class ObstructionVerdict:
    """Outcome of the per-degree image test of the total class."""

    verdict: str
    failing_degree: int | None
    preimages: dict

    @property
    def passes(self) -> bool:
        return self.verdict == "PASSES"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "failing_degree": self.failing_degree,
            "preimages": {
                str(d): (cls.render_values() if cls is not None else None)
                for d, cls in sorted(self.preimages.items())
            },
            "note": "PASSES is a necessary condition only, not a realizability proof",
        }


def realizability_obstruction(
    g: GkmGraph, conventions: Conventions = DEFAULT_CONVENTIONS
) -> ObstructionVerdict:
    """Test every even component of the total class for an integral origin."""
    sw = total_sw(g)
    preimages: dict[int, GraphClassZ | None] = {}
    failing = None
    for degree2 in sw.degrees():
        target = sw.component(degree2)
        pre = integral_preimage(g, target, conventions)
        preimages[degree2] = pre
        if pre is None and failing is None:
            failing = degree2
    verdict = "PASSES" if failing is None else "OBSTRUCTED"
    return ObstructionVerdict(verdict=verdict, failing_degree=failing, preimages=preimages)
