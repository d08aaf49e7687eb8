"""Recognizers and polynomial solvers for structured interaction matrices.

Covers four situations in which the quadratic objective collapses to a
linear one: weak-sum interaction matrices on equal-path-length graphs,
rank-one product matrices, directed cycles (a single path carries all the
cost), and the equal-length detection that the first case needs.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import CyclicGraphError, FamilyError, NoPathError
from .graphs import Digraph, Path
from .model import (
    InteractionMatrix,
    QsppInstance,
    SppInstance,
    cost_of_arcs,
    spp_solve,
)


def detect_weak_sum(q: InteractionMatrix) -> tuple[Fraction, ...] | None:
    """Generator vector a with q[e][f] = a[e] + a[f] for all e != f, or None.

    The matrix must be symmetric with a zero diagonal.  For orders <= 2 every
    such matrix qualifies; the canonical witness splits the single
    off-diagonal entry evenly.
    """
    if not (q.is_symmetric() and q.has_zero_diagonal()):
        return None
    m = q.m
    rows = q.rows
    if m == 0:
        return ()
    if m == 1:
        return (Fraction(0),)
    if m == 2:
        half = rows[0][1] / 2
        return (half, half)
    a0 = (rows[0][1] + rows[0][2] - rows[1][2]) / 2
    witness = [a0] + [rows[0][f] - a0 for f in range(1, m)]
    for e in range(m):
        for f in range(e + 1, m):
            if rows[e][f] != witness[e] + witness[f]:
                return None
    return tuple(witness)


def _reachable(g: Digraph, start: int, forward: bool) -> list[bool]:
    seen = [False] * g.n
    seen[start] = True
    stack = [start]
    while stack:
        v = stack.pop()
        arcs = g.out_arcs(v) if forward else g.in_arcs(v)
        for a in arcs:
            w = g.arcs[a].tail if forward else g.arcs[a].head
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return seen


def all_paths_equal_length(g: Digraph, source: int, target: int) -> int | None:
    """Common arc count of every source-target path, or None if they differ.

    Every source-target path lives in the subgraph induced by the vertices
    that are both reachable from the source and able to reach the target, so
    only that subgraph matters: it must be acyclic (cycles elsewhere are
    fine).  Raises NoPathError when the target is unreachable.
    """
    reach_s = _reachable(g, source, forward=True)
    reach_t = _reachable(g, target, forward=False)
    if not reach_s[target]:
        raise NoPathError(f"no path from {source} to {target}")
    on_route = [reach_s[v] and reach_t[v] for v in range(g.n)]
    # Kahn restricted to the on-route subgraph
    indeg = [0] * g.n
    for arc in g.arcs:
        if on_route[arc.head] and on_route[arc.tail]:
            indeg[arc.tail] += 1
    ready = [v for v in range(g.n) if on_route[v] and indeg[v] == 0]
    order = []
    while ready:
        v = ready.pop()
        order.append(v)
        for a in g.out_arcs(v):
            w = g.arcs[a].tail
            if on_route[w]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
    if len(order) != sum(on_route):
        raise CyclicGraphError(
            "equal-length detection needs the set of vertices on source-target "
            "routes to induce an acyclic subgraph"
        )
    shortest: list[int | None] = [None] * g.n
    longest: list[int | None] = [None] * g.n
    shortest[source] = longest[source] = 0
    for v in order:
        if shortest[v] is None:
            continue
        for a in g.out_arcs(v):
            w = g.arcs[a].tail
            if not on_route[w]:
                continue
            if shortest[w] is None or shortest[v] + 1 < shortest[w]:
                shortest[w] = shortest[v] + 1
            if longest[w] is None or longest[v] + 1 > longest[w]:
                longest[w] = longest[v] + 1
    return shortest[target] if shortest[target] == longest[target] else None


def linearize_weak_sum(inst: QsppInstance) -> tuple[Fraction, ...]:
    """Equivalent linear costs 2(L-1)*a + c for a weak-sum instance.

    Requires a weak-sum interaction matrix and a graph whose source-target
    paths all share one length L; the result reproduces every path cost.
    """
    witness = detect_weak_sum(inst.interaction)
    if witness is None:
        raise FamilyError("interaction matrix is not a symmetric weak-sum matrix")
    length = all_paths_equal_length(inst.graph, inst.source, inst.target)
    if length is None:
        raise FamilyError("source-target paths do not all have the same length")
    factor = 2 * (length - 1)
    return tuple(factor * a + c for a, c in zip(witness, inst.linear))


def _rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact nonnegative square root, or None when irrational."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def _product_factor(
    q: InteractionMatrix, linear: Sequence[Fraction]
) -> tuple[str, tuple[Fraction, ...] | None]:
    """Classify Q + Diag(c): ('ok', a) when equal to a*a^T with rational a >= 0,
    ('irrational', None) when the diagonal forces irrational factors,
    ('no', None) otherwise."""
    m = q.m
    if len(linear) != m:
        return ("no", None)
    if not q.is_symmetric():
        return ("no", None)
    diag = [q.rows[e][e] + linear[e] for e in range(m)]
    if any(d < 0 for d in diag):
        return ("no", None)
    factor = []
    for d in diag:
        root = _rational_sqrt(d)
        if root is None:
            return ("irrational", None)
        factor.append(root)
    for e in range(m):
        for f in range(m):
            expected = factor[e] * factor[f] if e != f else diag[e]
            got = q.rows[e][f] + (linear[e] if e == f else 0)
            if got != expected:
                return ("no", None)
    return ("ok", tuple(factor))


def detect_product(
    q: InteractionMatrix, linear: Sequence[Fraction]
) -> tuple[Fraction, ...] | None:
    """Nonnegative rational vector a with Q + Diag(c) = a*a^T, or None.

    Only rational factorizations are accepted: every diagonal entry of
    Q + Diag(c) must be the square of a rational.
    """
    status, factor = _product_factor(q, linear)
    return factor if status == "ok" else None


def solve_product_case(inst: QsppInstance) -> tuple[Path, Fraction]:
    """Optimum of a rank-one instance: shortest path under the factor weights.

    The optimal path cost is the square of its factor-weight sum.
    """
    status, factor = _product_factor(inst.interaction, inst.linear)
    if status == "irrational":
        raise FamilyError(
            "interaction-plus-diagonal matrix is a rank-one product whose factor "
            "is irrational; no exact factorization exists"
        )
    if status != "ok":
        raise FamilyError("interaction-plus-diagonal matrix is not a rank-one product")
    path, weight = spp_solve(
        SppInstance(inst.graph, inst.source, inst.target, factor)
    )
    return path, weight * weight


def _cycle_successors(g: Digraph) -> list[int]:
    """Out-arc of each vertex if the graph is a single directed cycle."""
    if g.m != g.n:
        raise FamilyError("a directed cycle has exactly as many arcs as vertices")
    succ: list[int] = []
    for v in range(g.n):
        if len(g.out_arcs(v)) != 1 or len(g.in_arcs(v)) != 1:
            raise FamilyError("every cycle vertex needs out-degree and in-degree one")
        succ.append(g.out_arcs(v)[0])
    seen = 1
    v = g.arcs[succ[0]].tail
    while v != 0:
        v = g.arcs[succ[v]].tail
        seen += 1
        if seen > g.n:
            break
    if seen != g.n:
        raise FamilyError("graph is not a single directed cycle")
    return succ


def linearize_directed_cycle(inst: QsppInstance) -> tuple[Fraction, ...]:
    """Concentrate the unique path's full cost on its first arc, zero elsewhere."""
    succ = _cycle_successors(inst.graph)
    arcs = []
    v = inst.source
    while v != inst.target:
        a = succ[v]
        arcs.append(a)
        v = inst.graph.arcs[a].tail
    total = cost_of_arcs(inst, arcs)
    result = [Fraction(0)] * inst.graph.m
    result[arcs[0]] = total
    return tuple(result)
