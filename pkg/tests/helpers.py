"""Shared oracles and graph generators for the test suite.

Oracles deliberately avoid the package's own linear algebra: ranks come
from dense Gaussian elimination over ``fractions.Fraction``, mod-p
dimensions from a plain F_p elimination, and integral image membership
from sympy's Hermite normal form plus forward substitution.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from gkmcohom import GkmGraph, find_connection, validate_gkm
from gkmcohom.polyring import sign_normalize, weights_parallel


# ---------------------------------------------------------------------------
# rank oracles

def rational_rank(rows: list[list[int]]) -> int:
    """Row count after Gaussian elimination with Fraction arithmetic."""
    m = [[Fraction(c) for c in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [c * inv for c in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def modp_rank(rows: list[list[int]], p: int) -> int:
    m = [[c % p for c in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [c * inv % p for c in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                factor = m[r][col]
                m[r] = [(a - factor * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# integral image membership via sympy

def in_column_image(matrix_rows: list[list[int]], target: list[int]) -> bool:
    """Whether ``target`` is an integer combination of the matrix columns.

    Uses sympy's Hermite normal form of the column lattice, then forward
    substitution; fully independent of the package under test.
    """
    from sympy import Matrix
    from sympy.matrices.normalforms import hermite_normal_form

    rows = [row[:] for row in matrix_rows]
    if not rows or not rows[0]:
        return all(c == 0 for c in target)
    m = Matrix(rows)
    if all(c == 0 for c in target):
        return True
    nonzero_cols = [j for j in range(m.cols) if any(m[i, j] != 0 for i in range(m.rows))]
    if not nonzero_cols:
        return False
    h = hermite_normal_form(m[:, nonzero_cols])
    # sympy returns the column-style HNF: solve h * x = target bottom-up
    # on the pivot rows, requiring exact integer quotients.
    t = list(target)
    cols = list(range(h.cols))
    for j in reversed(cols):
        pivot_row = max(
            (i for i in range(h.rows) if h[i, j] != 0),
            default=None,
        )
        if pivot_row is None:
            continue
        if t[pivot_row] % h[pivot_row, j] != 0:
            return False
        q = t[pivot_row] // h[pivot_row, j]
        for i in range(h.rows):
            t[i] -= q * h[i, j]
    return all(c == 0 for c in t)


# ---------------------------------------------------------------------------
# random weights and unimodular twists

def random_weight(rng: random.Random, bound: int = 3) -> tuple[int, int]:
    while True:
        w = (rng.randint(-bound, bound), rng.randint(-bound, bound))
        if w != (0, 0):
            return sign_normalize(w)


def random_unimodular(rng: random.Random, steps: int = 4) -> list[list[int]]:
    m = [[1, 0], [0, 1]]
    for _ in range(steps):
        c = rng.choice((-2, -1, 1, 2))
        if rng.random() < 0.5:
            m[0] = [m[0][0] + c * m[1][0], m[0][1] + c * m[1][1]]
        else:
            m[1] = [m[1][0] + c * m[0][0], m[1][1] + c * m[0][1]]
        if rng.random() < 0.3:
            m[0], m[1] = m[1], m[0]
    return m


def twist_graph(g: GkmGraph, u: list[list[int]]) -> GkmGraph:
    """Apply a basis change of the weight space to every label."""

    def act(w):
        return (
            u[0][0] * w[0] + u[0][1] * w[1],
            u[1][0] * w[0] + u[1][1] * w[1],
        )

    edges = [(g.vertices[a], g.vertices[b], act(lab)) for a, b, lab in g.edges]
    return GkmGraph(g.torus_rank, list(g.vertices), edges)


# ---------------------------------------------------------------------------
# random GKM graphs (all k = 2)

def _cycle_doubled(rng: random.Random, n: int, bound: int) -> GkmGraph | None:
    """Even cycle with doubled edges, sides alternating between two label
    pairs (the 4-valent shape of the 8-edge fixture).

    The alternation makes the straight matchings compatible, so a
    connection always exists; unstructured random labels almost never
    admit one.
    """
    if n % 2:
        raise ValueError("need an even cycle")
    for _ in range(200):
        ws = []
        while len(ws) < 4:
            w = random_weight(rng, bound)
            if all(not weights_parallel(w, u) for u in ws):
                ws.append(w)
        if rng.random() < 0.4:
            i = rng.randrange(4)
            doubled = (2 * ws[i][0], 2 * ws[i][1])
            if max(abs(c) for c in doubled) <= bound:
                ws[i] = doubled
        names = [f"v{i}" for i in range(n)]
        edges = []
        for i in range(n):
            a, b = names[i], names[(i + 1) % n]
            pair = ws[:2] if i % 2 == 0 else ws[2:]
            edges.append((a, b, pair[0]))
            edges.append((a, b, pair[1]))
        g = GkmGraph(2, names, edges)
        if validate_gkm(g).ok:
            return g
    return None


def _product_graph(rng: random.Random, bound: int) -> GkmGraph:
    from gkmcohom import fixtures

    while True:
        ws = [random_weight(rng, bound) for _ in range(3)]
        try:
            return fixtures.product(*ws)
        except ValueError:
            continue


def _polygon_x_edge(rng: random.Random, bound: int) -> GkmGraph:
    from gkmcohom import fixtures

    while True:
        n = rng.choice((2, 3))
        wa = random_weight(rng, bound)
        wb = random_weight(rng, bound)
        wv = random_weight(rng, bound)
        try:
            return fixtures.polygon2n_x_edge(n, wa, wb, wv)
        except ValueError:
            continue


def random_gkm_graphs(
    seed: int,
    count: int,
    valences=(3, 4),
    bound: int = 3,
    require_connection: bool = True,
):
    """Seeded stream of valid GKM graphs with a connection.

    Mixes structured families (cubes, polygon prisms, doubled cycles),
    their unimodular twists, and rejection-sampled random labelings.
    """
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 200:
        attempts += 1
        kind = rng.randrange(4)
        if kind == 0 and 3 in valences:
            g = _product_graph(rng, bound)
        elif kind == 1 and 3 in valences:
            g = _polygon_x_edge(rng, bound)
        elif kind == 2 and 4 in valences:
            g = _cycle_doubled(rng, rng.choice((4, 6)), bound)
        else:
            base = _product_graph(rng, bound) if 3 in valences else None
            if base is None:
                g = _cycle_doubled(rng, 4, bound)
            else:
                g = twist_graph(base, random_unimodular(rng))
        if g is None or not validate_gkm(g).ok:
            continue
        if any(abs(c) > bound for _, _, lab in g.edges for c in lab):
            continue  # twists may blow entries past the advertised bound
        if require_connection and find_connection(g) is None:
            continue
        out.append(g)
    if len(out) < count:
        raise RuntimeError(f"only generated {len(out)} of {count} graphs")
    return out


def random_3valent_orientable(seed: int, count: int, bound: int = 3):
    from gkmcohom import is_orientable

    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 200:
        attempts += 1
        if rng.random() < 0.5:
            g = _product_graph(rng, bound)
        else:
            g = _polygon_x_edge(rng, bound)
        if rng.random() < 0.4:
            g = twist_graph(g, random_unimodular(rng))
        if not validate_gkm(g).ok:
            continue
        c = find_connection(g)
        if c is None or not is_orientable(g, c):
            continue
        out.append(g)
    if len(out) < count:
        raise RuntimeError(f"only generated {len(out)} of {count} graphs")
    return out


def coprime_contents(g: GkmGraph) -> bool:
    """Direct restatement of the coprimality condition for cross-checks."""
    from gkmcohom.polyring import content

    for v in range(len(g.vertices)):
        star = g.star(v)
        for i in range(len(star)):
            for j in range(i + 1, len(star)):
                if gcd(content(g.label(star[i].edge)), content(g.label(star[j].edge))) != 1:
                    return False
    return True
