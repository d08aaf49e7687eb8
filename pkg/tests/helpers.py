"""Shared builders and independent oracles for the test suite.

Oracles here deliberately recompute things by the most naive route available
(explicit double loops, full enumeration) so they stay independent of the
library code paths they check.
"""
from __future__ import annotations

import random
from fractions import Fraction

from qspath import (
    Digraph,
    InteractionMatrix,
    Path,
    QsppInstance,
    enumerate_st_paths,
)


def arc_index(g: Digraph) -> dict[tuple[int, int], int]:
    return {(a.head, a.tail): i for i, a in enumerate(g.arcs)}


def path_by_vertices(g: Digraph, verts: tuple[int, ...]) -> Path:
    lookup = arc_index(g)
    return Path(tuple(lookup[(verts[i], verts[i + 1])] for i in range(len(verts) - 1)))


def quadratic_form_cost(inst: QsppInstance, path: Path) -> Fraction:
    """Path cost via the characteristic vector: x^T Q x + c^T x."""
    m = inst.graph.m
    x = [0] * m
    for a in path.arcs:
        x[a] = 1
    rows = inst.interaction.rows
    total = Fraction(0)
    for e in range(m):
        for f in range(m):
            total += rows[e][f] * x[e] * x[f]
    for e in range(m):
        total += inst.linear[e] * x[e]
    return total


def double_loop_cost(inst: QsppInstance, path: Path) -> Fraction:
    """Path cost via the ordered arc-pair double loop."""
    arcs = path.arcs
    total = Fraction(0)
    for e in arcs:
        total += inst.linear[e]
        for f in arcs:
            if e != f:
                total += inst.interaction.rows[e][f]
    return total


def random_symmetric_interaction(
    m: int, rng: random.Random, lo: int = 0, hi: int = 9
) -> InteractionMatrix:
    rows = [[Fraction(0)] * m for _ in range(m)]
    for e in range(m):
        for f in range(e + 1, m):
            v = Fraction(rng.randint(lo, hi))
            rows[e][f] = v
            rows[f][e] = v
    return InteractionMatrix(rows)


def costs_by_enumeration(inst: QsppInstance) -> dict[Path, Fraction]:
    from qspath import path_cost

    return {
        p: path_cost(inst, p)
        for p in enumerate_st_paths(inst.graph, inst.source, inst.target)
    }


def vector_reproduces_costs(inst: QsppInstance, vector) -> bool:
    from qspath import path_cost

    for p in enumerate_st_paths(inst.graph, inst.source, inst.target):
        if sum(vector[a] for a in p.arcs) != path_cost(inst, p):
            return False
    return True


def assert_valid_certificate(pm, coefficients) -> None:
    for col in range(pm.arc_count):
        assert sum(pm.rows[i][col] * coefficients[i] for i in range(len(coefficients))) >= 0
    assert sum(c * y for c, y in zip(pm.costs, coefficients)) < 0
