"""QSPP/SPP instance model over exact rationals, cost evaluation, and solvers.

Everything that feeds a verdict is computed with fractions.Fraction; floats
never enter these code paths.  Linear cost vectors are sign-unrestricted at
the type level (reduced forms legitimately go negative); nonnegativity is an
opt-in check, see validate_instance(as_problem=True).

The total cost of a path is the ordered double sum of interaction costs over
its arc pairs plus the sum of its linear costs, so each unordered arc pair
contributes twice its matrix entry and the (zero) diagonal contributes
nothing.

Tie-breaking in the solvers is deterministic: the brute-force solver keeps
the earliest enumerated optimum, and the shortest-path solvers only ever
replace a label on strict improvement.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import CyclicGraphError, NoPathError
from .graphs import (
    DEFAULT_PATH_LIMIT,
    Digraph,
    Path,
    iter_st_paths,
    topological_order,
    validate_path,
)

Rational = Fraction


def as_rational(value: object) -> Fraction:
    """Coerce ints, strings like '3/4', and Fractions; floats are rejected."""
    if isinstance(value, float):
        raise TypeError("floats are not allowed in exact cost data")
    return Fraction(value)


def rational_vector(values: Iterable[object]) -> tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)


class InteractionMatrix:
    """Square matrix of pairwise arc interaction costs, exact rationals.

    Construction does not force symmetry or a zero diagonal so that
    validate_instance can report violations; operations that rely on those
    invariants state so in their contracts.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[object]]):
        mat = tuple(rational_vector(row) for row in rows)
        for row in mat:
            if len(row) != len(mat):
                raise ValueError("interaction matrix must be square")
        self.rows: tuple[tuple[Fraction, ...], ...] = mat

    @classmethod
    def zero(cls, m: int) -> "InteractionMatrix":
        return cls([[0] * m for _ in range(m)])

    @classmethod
    def from_entries(
        cls, m: int, entries: Mapping[tuple[int, int], object]
    ) -> "InteractionMatrix":
        """Build a symmetric zero-diagonal matrix from off-diagonal entries.

        Each key (e, f) sets both the (e, f) and (f, e) cells.
        """
        rows = [[Fraction(0)] * m for _ in range(m)]
        seen: dict[tuple[int, int], Fraction] = {}
        for (e, f), value in entries.items():
            if e == f:
                raise ValueError("diagonal interaction entries must stay zero")
            val = as_rational(value)
            key = (min(e, f), max(e, f))
            if seen.setdefault(key, val) != val:
                raise ValueError(f"conflicting values for the pair {key}")
            rows[e][f] = val
            rows[f][e] = val
        return cls(rows)

    @property
    def m(self) -> int:
        return len(self.rows)

    def at(self, e: int, f: int) -> Fraction:
        return self.rows[e][f]

    def is_symmetric(self) -> bool:
        rows = self.rows
        m = self.m
        return all(rows[e][f] == rows[f][e] for e in range(m) for f in range(e + 1, m))

    def has_zero_diagonal(self) -> bool:
        return all(self.rows[e][e] == 0 for e in range(self.m))

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for row in self.rows for v in row)

    def scaled(self, alpha: object) -> "InteractionMatrix":
        a = as_rational(alpha)
        return InteractionMatrix([[a * v for v in row] for row in self.rows])

    def upper_entries(self) -> list[tuple[int, int, Fraction]]:
        """Nonzero entries (e, f, value) with e < f, in row-major order."""
        out = []
        for e in range(self.m):
            row = self.rows[e]
            for f in range(e + 1, self.m):
                if row[f]:
                    out.append((e, f, row[f]))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InteractionMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"InteractionMatrix(m={self.m})"


def _check_endpoints(graph: Digraph, source: int, target: int) -> None:
    if not (0 <= source < graph.n and 0 <= target < graph.n):
        raise ValueError("source/target outside the vertex range")
    if source == target:
        raise ValueError("source and target must differ")


@dataclass(frozen=True)
class QsppInstance:
    """Quadratic shortest path instance (graph, source, target, linear, interaction)."""

    graph: Digraph
    source: int
    target: int
    linear: tuple[Fraction, ...]
    interaction: InteractionMatrix

    def __post_init__(self):
        _check_endpoints(self.graph, self.source, self.target)
        object.__setattr__(self, "linear", rational_vector(self.linear))
        if len(self.linear) != self.graph.m:
            raise ValueError("linear cost vector length must equal the arc count")
        if self.interaction.m != self.graph.m:
            raise ValueError("interaction matrix order must equal the arc count")


@dataclass(frozen=True)
class SppInstance:
    """Plain shortest path instance (graph, source, target, linear)."""

    graph: Digraph
    source: int
    target: int
    linear: tuple[Fraction, ...]

    def __post_init__(self):
        _check_endpoints(self.graph, self.source, self.target)
        object.__setattr__(self, "linear", rational_vector(self.linear))
        if len(self.linear) != self.graph.m:
            raise ValueError("linear cost vector length must equal the arc count")


def zero_interaction_instance(spp: SppInstance) -> QsppInstance:
    """Lift an SPP instance to a QSPP instance with an all-zero interaction matrix."""
    return QsppInstance(
        spp.graph, spp.source, spp.target, spp.linear, InteractionMatrix.zero(spp.graph.m)
    )


def cost_of_arcs(inst: QsppInstance, arcs: Sequence[int]) -> Fraction:
    """Path cost of an already-validated arc sequence."""
    rows = inst.interaction.rows
    linear = inst.linear
    total = Fraction(0)
    for idx, a in enumerate(arcs):
        row = rows[a]
        total += linear[a]
        for b in arcs[idx + 1 :]:
            total += row[b] + rows[b][a]
    return total


def path_cost(inst: QsppInstance, path: Path) -> Fraction:
    """Total cost of a source-target path: interaction double sum plus linear sum."""
    validate_path(inst.graph, path, inst.source, inst.target)
    return cost_of_arcs(inst, path.arcs)


def linear_cost(linear: Sequence[Fraction], path: Path) -> Fraction:
    """Cost of a path under a plain linear cost vector."""
    return sum((linear[a] for a in path.arcs), Fraction(0))


def brute_force_solve(
    inst: QsppInstance, limit: int = DEFAULT_PATH_LIMIT
) -> tuple[Path, Fraction]:
    """Exact optimum by full path enumeration; ties keep the earliest path.

    Raises PathLimitExceeded past ``limit`` paths and NoPathError if the
    target is unreachable.
    """
    best: tuple[Path, Fraction] | None = None
    for path in iter_st_paths(inst.graph, inst.source, inst.target, limit):
        cost = cost_of_arcs(inst, path.arcs)
        if best is None or cost < best[1]:
            best = (path, cost)
    if best is None:
        raise NoPathError(f"no path from {inst.source} to {inst.target}")
    return best


def _reconstruct(g: Digraph, pred_arc: list[int | None], target: int) -> Path:
    arcs = []
    v = target
    while pred_arc[v] is not None:
        a = pred_arc[v]
        arcs.append(a)
        v = g.arcs[a].head
    arcs.reverse()
    return Path(tuple(arcs))


def _dijkstra(spp: SppInstance) -> tuple[Path, Fraction]:
    g = spp.graph
    dist: list[Fraction | None] = [None] * g.n
    pred: list[int | None] = [None] * g.n
    dist[spp.source] = Fraction(0)
    heap: list[tuple[Fraction, int]] = [(Fraction(0), spp.source)]
    done = [False] * g.n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if u == spp.target:
            break
        for a in g.out_arcs(u):
            v = g.arcs[a].tail
            nd = d + spp.linear[a]
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                pred[v] = a
                heapq.heappush(heap, (nd, v))
    if dist[spp.target] is None or not done[spp.target]:
        raise NoPathError(f"no path from {spp.source} to {spp.target}")
    return _reconstruct(g, pred, spp.target), dist[spp.target]


def _dag_relax(spp: SppInstance, order: list[int]) -> tuple[Path, Fraction]:
    g = spp.graph
    dist: list[Fraction | None] = [None] * g.n
    pred: list[int | None] = [None] * g.n
    dist[spp.source] = Fraction(0)
    for u in order:
        du = dist[u]
        if du is None:
            continue
        for a in g.out_arcs(u):
            v = g.arcs[a].tail
            nd = du + spp.linear[a]
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                pred[v] = a
    if dist[spp.target] is None:
        raise NoPathError(f"no path from {spp.source} to {spp.target}")
    return _reconstruct(g, pred, spp.target), dist[spp.target]


def spp_solve(spp: SppInstance) -> tuple[Path, Fraction]:
    """Shortest path: label-setting for nonnegative costs, topological
    relaxation for acyclic graphs with negative entries.

    Negative costs on a cyclic graph are refused outright.
    """
    if all(c >= 0 for c in spp.linear):
        return _dijkstra(spp)
    order = topological_order(spp.graph)
    if order is None:
        raise CyclicGraphError("negative arc costs require an acyclic graph")
    return _dag_relax(spp, order)


def require_symmetric_interaction(inst: QsppInstance, where: str) -> None:
    """Guard for operations whose math assumes the matrix invariants.

    The constructor deliberately admits malformed matrices so that
    validate_instance can report them; anything that would silently compute
    a wrong verdict on such input calls this first.
    """
    q = inst.interaction
    if not (q.is_symmetric() and q.has_zero_diagonal()):
        raise ValueError(
            f"{where} needs a symmetric interaction matrix with a zero "
            "diagonal; see validate_instance for the violations"
        )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


def validate_instance(inst: QsppInstance, as_problem: bool = False) -> ValidationReport:
    """Structural checks on an instance; with ``as_problem`` also nonnegativity.

    Never raises; returns a report listing every violated invariant.
    """
    violations = []
    q = inst.interaction
    if q.m != inst.graph.m or len(inst.linear) != inst.graph.m:
        violations.append("dimension mismatch between graph, linear costs, and interaction matrix")
    if not q.is_symmetric():
        violations.append("interaction matrix is not symmetric")
    if not q.has_zero_diagonal():
        violations.append("interaction matrix has a nonzero diagonal entry")
    if as_problem:
        if any(c < 0 for c in inst.linear):
            violations.append("negative linear cost (problem definition requires c >= 0)")
        if not q.is_nonnegative():
            violations.append("negative interaction cost (problem definition requires Q >= 0)")
    return ValidationReport(not violations, tuple(violations))
