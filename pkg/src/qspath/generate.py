"""Seeded instance generation: cost fillers and random structures.

All randomness flows through an explicit random.Random instance so that a
fixed seed reproduces an instance bit for bit.  Fillers return problem-
definition data (symmetric, zero diagonal, nonnegative).
"""
from __future__ import annotations

import random
from fractions import Fraction

from .graphs import Digraph, make_complete_symmetric
from .model import InteractionMatrix, QsppInstance
from .reductions import QapInstance


def _pairwise_symmetric(m: int, value) -> InteractionMatrix:
    rows = [[Fraction(0)] * m for _ in range(m)]
    for e in range(m):
        for f in range(e + 1, m):
            v = value(e, f)
            rows[e][f] = v
            rows[f][e] = v
    return InteractionMatrix(rows)


def fill_zero(g: Digraph) -> tuple[tuple[Fraction, ...], InteractionMatrix]:
    return (Fraction(0),) * g.m, InteractionMatrix.zero(g.m)


def fill_random(
    g: Digraph, rng: random.Random, max_entry: int = 9
) -> tuple[tuple[Fraction, ...], InteractionMatrix]:
    """Uniform integer interactions on every arc pair, zero linear costs."""
    matrix = _pairwise_symmetric(g.m, lambda e, f: Fraction(rng.randint(0, max_entry)))
    return (Fraction(0),) * g.m, matrix


def fill_weak_sum(
    g: Digraph, rng: random.Random, max_entry: int = 9
) -> tuple[tuple[Fraction, ...], InteractionMatrix]:
    """Interactions a[e] + a[f] for a random per-arc vector a, zero linear costs."""
    a = [Fraction(rng.randint(0, max_entry)) for _ in range(g.m)]
    matrix = _pairwise_symmetric(g.m, lambda e, f: a[e] + a[f])
    return (Fraction(0),) * g.m, matrix


def fill_product(
    g: Digraph, rng: random.Random, max_entry: int = 3
) -> tuple[tuple[Fraction, ...], InteractionMatrix]:
    """Rank-one data: interactions a[e]*a[f], linear costs a[e] squared."""
    a = [Fraction(rng.randint(0, max_entry)) for _ in range(g.m)]
    matrix = _pairwise_symmetric(g.m, lambda e, f: a[e] * a[f])
    return tuple(v * v for v in a), matrix


def fill_adjacent(
    g: Digraph, rng: random.Random, max_entry: int = 9
) -> tuple[tuple[Fraction, ...], InteractionMatrix]:
    """Random interactions on consecutive arc pairs only, zero linear costs."""

    def value(e: int, f: int) -> Fraction:
        a, b = g.arcs[e], g.arcs[f]
        consecutive = (a.tail == b.head and a.head != b.tail) or (
            a.head == b.tail and a.tail != b.head
        )
        return Fraction(rng.randint(0, max_entry)) if consecutive else Fraction(0)

    return (Fraction(0),) * g.m, _pairwise_symmetric(g.m, value)


FILLS = {
    "zero": fill_zero,
    "random": fill_random,
    "weak-sum": fill_weak_sum,
    "product": fill_product,
    "adjacent": fill_adjacent,
}


def filled_instance(
    g: Digraph,
    source: int,
    target: int,
    fill: str,
    seed: int | None = None,
    max_entry: int = 9,
) -> QsppInstance:
    """Instance on ``g`` with costs from the named filler."""
    if fill == "zero":
        linear, matrix = fill_zero(g)
    else:
        if seed is None:
            raise ValueError(f"fill {fill!r} needs a seed")
        rng = random.Random(seed)
        if fill == "product":
            linear, matrix = fill_product(g, rng, min(max_entry, 3))
        elif fill in FILLS:
            linear, matrix = FILLS[fill](g, rng, max_entry)
        else:
            raise ValueError(f"unknown fill {fill!r}")
    return QsppInstance(g, source, target, linear, matrix)


def random_dag(n: int, density: float, rng: random.Random) -> Digraph:
    """Random DAG on vertices 0..n-1 with arcs i -> j, i < j, kept with the
    given probability."""
    arcs = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    return Digraph(n, arcs)


def random_digraph(n: int, density: float, rng: random.Random) -> Digraph:
    """Random digraph (cycles allowed) over all ordered pairs."""
    arcs = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < density
    ]
    return Digraph(n, arcs)


def worked_example(n: int) -> QsppInstance:
    """Built-in instances on the simplified complete digraph.

    Size 4: unit interaction on both short paths' arc pairs, so the two
    length-2 paths cost 2 while the length-3 paths cost 0; not linearizable.
    Size 5: unit interaction on one consecutive interior pair; it passes
    every necessary condition yet is still not linearizable.
    """
    if n not in (4, 5):
        raise ValueError("worked examples exist for sizes 4 and 5")
    g = make_complete_symmetric(n, simplified=True, source=0, target=n - 1)
    arc_of = {(a.head, a.tail): i for i, a in enumerate(g.arcs)}
    if n == 4:
        entries = {
            (arc_of[(0, 1)], arc_of[(1, 3)]): 1,
            (arc_of[(0, 2)], arc_of[(2, 3)]): 1,
        }
    else:
        entries = {(arc_of[(2, 3)], arc_of[(3, 4)]): 1}
    matrix = InteractionMatrix.from_entries(g.m, entries)
    return QsppInstance(g, 0, n - 1, (Fraction(0),) * g.m, matrix)


def random_qap(n: int, rng: random.Random, max_entry: int = 9) -> QapInstance:
    """Random symmetric assignment data with integer entries in 0..max_entry."""

    def symmetric() -> list[list[Fraction]]:
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = Fraction(rng.randint(0, max_entry))
                rows[i][j] = v
                rows[j][i] = v
        return rows

    square = [
        [Fraction(rng.randint(0, max_entry)) for _ in range(n)] for _ in range(n)
    ]
    return QapInstance(n, symmetric(), symmetric(), square)
