"""Hardness-reduction constructions as instance generators.

qap_to_qspp encodes a quadratic assignment instance as a QSPP on a layered
multigraph: one layer of n parallel arcs per location, so a source-target
path picks one facility per location.  A big-M interaction cost on every
pair of arcs carrying the same facility makes non-injective picks more
expensive than any legitimate assignment, so optima coincide exactly.

disjoint_to_aqspp encodes a 2-arc-disjoint-paths question as an adjacent
QSPP on a cyclic digraph whose optimum is zero exactly on yes-instances and
at least two otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .errors import FormatError
from .graphs import Digraph
from .model import InteractionMatrix, QsppInstance, as_rational

Matrix = tuple[tuple[Fraction, ...], ...]


def _as_matrix(rows: Sequence[Sequence[object]], n: int, name: str) -> Matrix:
    mat = tuple(tuple(as_rational(v) for v in row) for row in rows)
    if len(mat) != n or any(len(row) != n for row in mat):
        raise ValueError(f"{name} must be {n}x{n}")
    return mat


@dataclass(frozen=True)
class QapInstance:
    """Quadratic assignment data: symmetric flows a, symmetric distances b,
    linear placement costs c."""

    n: int
    a: Matrix
    b: Matrix
    c: Matrix
    symmetrized: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", _as_matrix(self.a, self.n, "a"))
        object.__setattr__(self, "b", _as_matrix(self.b, self.n, "b"))
        object.__setattr__(self, "c", _as_matrix(self.c, self.n, "c"))
        for name, mat in (("a", self.a), ("b", self.b)):
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    if mat[i][j] != mat[j][i]:
                        raise ValueError(f"matrix {name} must be symmetric")


def qap_objective(qap: QapInstance, placement: Sequence[int]) -> Fraction:
    """Objective of placing facility i at location placement[i]."""
    total = Fraction(0)
    for i in range(qap.n):
        total += qap.c[i][placement[i]]
        for k in range(qap.n):
            total += qap.a[i][k] * qap.b[placement[i]][placement[k]]
    return total


def qap_brute_force(qap: QapInstance) -> tuple[tuple[int, ...], Fraction]:
    """Exact optimum over all n! placements; ties keep the first in
    lexicographic order."""
    best: tuple[tuple[int, ...], Fraction] | None = None
    for perm in permutations(range(qap.n)):
        value = qap_objective(qap, perm)
        if best is None or value < best[1]:
            best = (perm, value)
    assert best is not None
    return best


def qap_to_qspp(qap: QapInstance) -> QsppInstance:
    """Layered-multigraph encoding with n+1 vertices and n*n arcs.

    Layer j (locations, 0-based) holds n parallel arcs w_j -> w_{j+1}, one
    per facility; each arc is labelled (facility, location).  Nonzero flow or
    distance diagonals are first shifted into the linear costs.  Interaction
    between arcs in different layers is flow*distance for distinct
    facilities and M for a repeated facility, where M exceeds every
    assignment's absolute objective, so any path with value below M decodes
    to a placement of the same value.
    """
    n = qap.n
    a = [list(row) for row in qap.a]
    b = [list(row) for row in qap.b]
    c = [list(row) for row in qap.c]
    for i in range(n):
        for j in range(n):
            c[i][j] += a[i][i] * b[j][j]
    for i in range(n):
        a[i][i] = Fraction(0)
        b[i][i] = Fraction(0)

    big_m = 1 + sum(
        abs(a[i][k] * b[j][l])
        for i in range(n)
        for k in range(n)
        for j in range(n)
        for l in range(n)
    ) + sum(abs(c[i][j]) for i in range(n) for j in range(n))

    arcs = []
    labels = []
    linear = []
    for loc in range(n):
        for fac in range(n):
            arcs.append((loc, loc + 1))
            labels.append((fac, loc))
            linear.append(c[fac][loc])
    graph = Digraph(n + 1, arcs, labels)

    m = n * n
    rows = [[Fraction(0)] * m for _ in range(m)]
    for e in range(m):
        fac_e, loc_e = labels[e]
        for f in range(m):
            if e == f:
                continue
            fac_f, loc_f = labels[f]
            if fac_e == fac_f or loc_e == loc_f:
                rows[e][f] = Fraction(big_m)
            else:
                rows[e][f] = a[fac_e][fac_f] * b[loc_e][loc_f]
    return QsppInstance(graph, 0, n, tuple(linear), InteractionMatrix(rows))


def decode_qap_path(inst: QsppInstance, path_arcs: Sequence[int]) -> tuple[int, ...]:
    """Placement (facility i -> location) encoded by a reduced-instance path.

    Raises ValueError when the path repeats a facility, i.e. its cost is in
    the big-M regime and does not encode an assignment.
    """
    labels = inst.graph.labels
    assert labels is not None, "decode needs the labelled reduction graph"
    placement: dict[int, int] = {}
    for arc in path_arcs:
        fac, loc = labels[arc]
        if fac in placement:
            raise ValueError("path repeats a facility and encodes no assignment")
        placement[fac] = loc
    n = len(path_arcs)
    return tuple(placement[i] for i in range(n))


def parse_qaplib(text: str) -> QapInstance:
    """Parse whitespace-separated QAP data: n, then two n*n matrices, then an
    optional third n*n matrix of linear costs (zero when absent).

    Asymmetric flow or distance matrices are symmetrized to (M + M^T)/2 and
    recorded in ``symmetrized``; exact values are kept as rationals.
    """
    tokens = text.split()
    if not tokens:
        raise FormatError("empty QAP text")

    def number(pos: int) -> Fraction:
        try:
            return as_rational(tokens[pos])
        except (ValueError, ZeroDivisionError, TypeError):
            raise FormatError(f"token {pos + 1} ({tokens[pos]!r}) is not a number") from None

    try:
        n = int(tokens[0])
    except ValueError:
        raise FormatError(f"first token ({tokens[0]!r}) must be the size n") from None
    if n < 1:
        raise FormatError("size n must be positive")
    need = 1 + 2 * n * n
    if len(tokens) not in (need, need + n * n):
        raise FormatError(
            f"expected {need} or {need + n * n} tokens for n={n}, got {len(tokens)}"
        )
    values = [number(pos) for pos in range(1, len(tokens))]

    def take(offset: int) -> list[list[Fraction]]:
        return [values[offset + i * n : offset + (i + 1) * n] for i in range(n)]

    raw_a = take(0)
    raw_b = take(n * n)
    raw_c = take(2 * n * n) if len(tokens) == need + n * n else [[Fraction(0)] * n for _ in range(n)]

    symmetrized = []

    def symmetrize(mat: list[list[Fraction]], name: str) -> list[list[Fraction]]:
        if all(mat[i][j] == mat[j][i] for i in range(n) for j in range(i + 1, n)):
            return mat
        symmetrized.append(name)
        return [
            [(mat[i][j] + mat[j][i]) / 2 for j in range(n)] for i in range(n)
        ]

    return QapInstance(
        n,
        symmetrize(raw_a, "a"),
        symmetrize(raw_b, "b"),
        raw_c,
        tuple(symmetrized),
    )


@dataclass(frozen=True)
class DisjointPathsInstance:
    """A 2-arc-disjoint-paths question: find arc-disjoint s1-t1 and s2-t2 paths."""

    graph: Digraph
    s1: int
    t1: int
    s2: int
    t2: int

    def __post_init__(self):
        for v in (self.s1, self.t1, self.s2, self.t2):
            if not 0 <= v < self.graph.n:
                raise ValueError("terminal outside the vertex range")
        if self.s1 == self.s2 or self.t1 == self.t2:
            raise ValueError("the two sources and the two targets must differ")


def disjoint_to_aqspp(dp: DisjointPathsInstance) -> QsppInstance:
    """Adjacent instance whose optimum is 0 iff the disjoint paths exist.

    Each original vertex v becomes two lane copies v1 and v2, each original
    arc (u, v) becomes a midpoint vertex reached from u and leading to v in
    both lanes, and a free bridge connects t1's first-lane copy to s2's
    second-lane copy.  Switching lanes at a midpoint costs 2, so a zero-cost
    route stays in lane one until the bridge and in lane two after it, and it
    exists exactly when the two requested paths can avoid sharing an arc
    (a shared arc would make the route revisit that arc's midpoint).
    """
    g = dp.graph
    n, m = g.n, g.m
    lane1 = lambda v: v
    lane2 = lambda v: n + v
    midpoint = lambda arc: 2 * n + arc

    arcs: list[tuple[int, int]] = []
    entries: dict[tuple[int, int], int] = {}
    for arc_id, arc in enumerate(g.arcs):
        into1 = len(arcs)
        arcs.append((lane1(arc.head), midpoint(arc_id)))
        out1 = len(arcs)
        arcs.append((midpoint(arc_id), lane1(arc.tail)))
        into2 = len(arcs)
        arcs.append((lane2(arc.head), midpoint(arc_id)))
        out2 = len(arcs)
        arcs.append((midpoint(arc_id), lane2(arc.tail)))
        entries[(into1, out2)] = 1
        entries[(into2, out1)] = 1
    arcs.append((lane1(dp.t1), lane2(dp.s2)))

    graph = Digraph(2 * n + m, arcs)
    interaction = InteractionMatrix.from_entries(len(arcs), entries)
    linear = (Fraction(0),) * len(arcs)
    return QsppInstance(graph, lane1(dp.s1), lane2(dp.t2), linear, interaction)
