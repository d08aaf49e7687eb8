"""QSPP on complete symmetric digraphs with the trivial arcs removed.

Working shape: every ordered vertex pair is an arc except those into the
source, out of the target, and the direct source-target arc.  Standing
assumptions for the closed-form machinery below: the linear cost vector is
zero and interaction costs vanish on arc pairs that no source-target path
can carry (pairs sharing a start vertex, pairs sharing an end vertex, and
the two orientations of one vertex pair); normalize_knstar enforces the
latter without changing any path cost.

Under those assumptions the total cost of all length-k paths is a closed
form in six pair-class sums: split arcs into terminal arcs (leaving the
source or entering the target) and interior arcs, split unordered arc pairs
by consecutiveness and by how many of the two arcs are terminal, and weight
each class sum by the count of length-k paths through one representative
pair.  Linearizable instances must satisfy two families of inequalities
between consecutive length-class totals; on the four-vertex graph the single
surviving inequality is also sufficient and the witness vector is explicit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import FamilyError
from .graphs import Digraph, Path
from .model import (
    InteractionMatrix,
    QsppInstance,
    cost_of_arcs,
    require_symmetric_interaction,
    validate_instance,
)
from .pathmatrix import (
    InfeasibilityCertificate,
    LinearizationResult,
    build_path_matrix,
    lp_oracle,
)


def _choose(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def knstar_order(g: Digraph, source: int, target: int) -> int:
    """Vertex count if ``g`` is the simplified complete shape; raises otherwise."""
    n = g.n
    expected = {
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and v != source and u != target and (u, v) != (source, target)
    }
    arcs = [tuple(a) for a in g.arcs]
    if len(arcs) != len(set(arcs)) or set(arcs) != expected:
        raise FamilyError(
            "graph is not the complete digraph with the unusable terminal arcs removed"
        )
    return n


def _is_terminal(g: Digraph, source: int, target: int, arc: int) -> bool:
    a = g.arcs[arc]
    return a.head == source or a.tail == target


def _consecutive(g: Digraph, e: int, f: int) -> bool:
    a, b = g.arcs[e], g.arcs[f]
    return a.tail == b.head or a.head == b.tail


def _never_together(g: Digraph, e: int, f: int) -> bool:
    """Pairs no simple source-target path can carry on this shape."""
    a, b = g.arcs[e], g.arcs[f]
    return (
        a.head == b.head
        or a.tail == b.tail
        or (a.head == b.tail and a.tail == b.head)
    )


def normalize_knstar(inst: QsppInstance) -> QsppInstance:
    """Zero the interaction cost of every pair that no path can carry.

    Path costs are untouched, so linearizability and every solver verdict
    survive normalization.
    """
    knstar_order(inst.graph, inst.source, inst.target)
    m = inst.graph.m
    rows = [list(row) for row in inst.interaction.rows]
    for e in range(m):
        for f in range(e + 1, m):
            if _never_together(inst.graph, e, f):
                rows[e][f] = Fraction(0)
                rows[f][e] = Fraction(0)
    return QsppInstance(
        inst.graph, inst.source, inst.target, inst.linear, InteractionMatrix(rows)
    )


@dataclass(frozen=True)
class PathClassSums:
    """Doubled interaction totals of the six unordered arc-pair classes.

    Order: (consecutive, both terminal), (apart, both terminal),
    (consecutive, one terminal), (apart, one terminal),
    (consecutive, no terminal), (apart, no terminal).  Their sum is the
    all-ones quadratic form of the interaction matrix.
    """

    sums: tuple[Fraction, Fraction, Fraction, Fraction, Fraction, Fraction]


def _paths_per_pair(n: int, class_index: int, k: int) -> int:
    """How many length-k source-target paths contain one co-carriable pair
    of the given class (1-based class index)."""
    if class_index == 1:
        return 1 if k == 2 else 0
    if class_index in (2, 3):
        return _choose(n - 4, k - 3) * math.factorial(k - 3) if k >= 3 else 0
    if class_index in (4, 5):
        return _choose(n - 5, k - 4) * math.factorial(k - 3) if k >= 4 else 0
    return _choose(n - 6, k - 5) * math.factorial(k - 3) if k >= 5 else 0


def paths_of_length(n: int, k: int) -> int:
    """Number of source-target paths of length k on the simplified shape."""
    return _choose(n - 2, k - 1) * math.factorial(k - 1)


def path_class_costs(
    inst: QsppInstance,
) -> tuple[PathClassSums, dict[int, Fraction]]:
    """Class sums and the closed-form total cost of all length-k paths.

    Requires at least four vertices, an all-zero linear vector, and a
    normalized interaction matrix (see normalize_knstar); the formula counts
    every pair through its class, so stray costs on unusable pairs would be
    silently wrong rather than ignored.
    """
    n = knstar_order(inst.graph, inst.source, inst.target)
    if n < 4:
        raise FamilyError("the length-class formulas need at least four vertices")
    require_symmetric_interaction(inst, "the length-class formulas")
    if any(inst.linear):
        raise FamilyError(
            "length-class costs assume a zero linear vector; shift it first"
        )
    g = inst.graph
    rows = inst.interaction.rows
    m = g.m
    sums = [Fraction(0)] * 6
    for e in range(m):
        for f in range(e + 1, m):
            value = rows[e][f]
            if _never_together(g, e, f):
                if value:
                    raise FamilyError(
                        "interaction cost on a pair no path can carry; apply "
                        "normalize_knstar first"
                    )
                continue
            if not value:
                continue
            terminal = _is_terminal(g, inst.source, inst.target, e) + _is_terminal(
                g, inst.source, inst.target, f
            )
            consecutive = _consecutive(g, e, f)
            if terminal == 2:
                idx = 0 if consecutive else 1
            elif terminal == 1:
                idx = 2 if consecutive else 3
            else:
                idx = 4 if consecutive else 5
            sums[idx] += 2 * value
    totals = {
        k: sum(
            (_paths_per_pair(n, idx + 1, k) * sums[idx] for idx in range(6)),
            Fraction(0),
        )
        for k in range(2, n)
    }
    return PathClassSums(tuple(sums)), totals


@dataclass(frozen=True)
class ConditionCheck:
    label: str
    k: int
    lhs: Fraction
    rhs: Fraction
    satisfied: bool


@dataclass(frozen=True)
class NecessaryConditionsReport:
    """Outcome of the linearizability necessary conditions.

    A violated condition proves the instance not linearizable; all-pass is
    inconclusive (the conditions are not sufficient beyond four vertices).
    """

    conditions: tuple[ConditionCheck, ...]
    totals: dict[int, Fraction]

    @property
    def violated(self) -> bool:
        return any(not c.satisfied for c in self.conditions)


def check_necessary_conditions(inst: QsppInstance) -> NecessaryConditionsReport:
    """Test the two inequality families every linearizable instance obeys.

    Family "vs-longer": the length-k total is at most the length-(k+1) total
    divided by the count of ways to extend, for k from 2 to n-2.  Family
    "vs-shorter" (five or more vertices): the length-k total is at most
    (n-k)(k-2)/(k-3) times the length-(k-1) total, for k from 4 to n-1.
    """
    sums, totals = path_class_costs(inst)
    n = knstar_order(inst.graph, inst.source, inst.target)
    checks = []
    for k in range(2, n - 1):
        lhs = totals[k] * (n - k - 1)
        rhs = totals[k + 1]
        checks.append(ConditionCheck("vs-longer", k, lhs, rhs, lhs <= rhs))
    if n >= 5:
        for k in range(4, n):
            lhs = totals[k] * (k - 3)
            rhs = totals[k - 1] * (n - k) * (k - 2)
            checks.append(ConditionCheck("vs-shorter", k, lhs, rhs, lhs <= rhs))
    return NecessaryConditionsReport(tuple(checks), totals)


def _k4_paths(
    g: Digraph, source: int, target: int
) -> tuple[list[Path], dict[tuple[int, int], int]]:
    """The four paths of the simplified four-vertex shape: both length-2
    paths first (ordered by the middle vertex), then both length-3 paths."""
    arc_of = {(a.head, a.tail): i for i, a in enumerate(g.arcs)}
    x, y = sorted(v for v in range(g.n) if v not in (source, target))
    routes = [
        (source, x, target),
        (source, y, target),
        (source, x, y, target),
        (source, y, x, target),
    ]
    paths = [
        Path(tuple(arc_of[(r[i], r[i + 1])] for i in range(len(r) - 1)))
        for r in routes
    ]
    return paths, arc_of


def k4_linearize(inst: QsppInstance) -> LinearizationResult:
    """Decide linearizability on the simplified four-vertex shape.

    The instance is linearizable exactly when the two length-2 path costs
    sum to at most the two length-3 path costs; the certificate in the other
    direction weights the short paths by -1 and the long ones by +1.  Path
    costs must be nonnegative (true for any problem-definition instance) for
    the constructed vector to be nonnegative.
    """
    n = knstar_order(inst.graph, inst.source, inst.target)
    if n != 4:
        raise FamilyError("this characterization is specific to four vertices")
    require_symmetric_interaction(inst, "the four-vertex characterization")
    for e in range(inst.graph.m):
        for f in range(e + 1, inst.graph.m):
            if _never_together(inst.graph, e, f) and inst.interaction.rows[e][f]:
                raise FamilyError("apply normalize_knstar first")
    paths, arc_of = _k4_paths(inst.graph, inst.source, inst.target)
    b = [cost_of_arcs(inst, p.arcs) for p in paths]
    pm = build_path_matrix(inst)
    row_of_path = {p: i for i, p in enumerate(pm.paths)}

    def certificate(weights: dict[Path, Fraction]) -> InfeasibilityCertificate:
        y = [Fraction(0)] * len(pm.paths)
        for path, w in weights.items():
            y[row_of_path[path]] = w
        for col in range(pm.arc_count):
            assert sum(pm.rows[i][col] * y[i] for i in range(len(y))) >= 0
        assert sum(c * v for c, v in zip(pm.costs, y)) < 0
        return InfeasibilityCertificate(tuple(y))

    negative = next((i for i, cost in enumerate(b) if cost < 0), None)
    if negative is not None:
        return LinearizationResult(
            False,
            witness=certificate({paths[negative]: Fraction(1)}),
            note="a path has negative cost, unreachable with nonnegative entries",
        )
    if b[0] + b[1] > b[2] + b[3]:
        weights = {
            paths[0]: Fraction(-1),
            paths[1]: Fraction(-1),
            paths[2]: Fraction(1),
            paths[3]: Fraction(1),
        }
        return LinearizationResult(
            False,
            witness=certificate(weights),
            note="length-2 path costs exceed length-3 path costs",
        )

    source, target = inst.source, inst.target
    x, y = sorted(v for v in range(inst.graph.n) if v not in (source, target))
    entries: dict[tuple[int, int], Fraction]
    if b[0] <= b[2] and b[1] <= b[3]:
        entries = {
            (source, x): b[0],
            (source, y): b[1],
            (x, y): b[2] - b[0],
            (y, x): b[3] - b[1],
        }
    elif b[0] > b[2]:
        entries = {
            (source, x): b[2],
            (source, y): b[1],
            (x, target): b[0] - b[2],
            (y, x): b[3] + b[2] - b[0] - b[1],
        }
    else:
        entries = {
            (source, y): b[3],
            (source, x): b[0],
            (y, target): b[1] - b[3],
            (x, y): b[2] + b[3] - b[1] - b[0],
        }
    vec = [Fraction(0)] * inst.graph.m
    for endpoints, value in entries.items():
        vec[arc_of[endpoints]] = value
    assert all(v >= 0 for v in vec)
    for path, cost in zip(paths, b):
        assert sum(vec[a] for a in path.arcs) == cost
    return LinearizationResult(True, vector=tuple(vec))


def _tournament_check(g: Digraph) -> None:
    if g.n != 4 or g.m != 6:
        raise FamilyError("need a four-vertex tournament")
    seen = set()
    for a in g.arcs:
        pair = frozenset((a.head, a.tail))
        if pair in seen:
            raise FamilyError("tournament needs exactly one arc per vertex pair")
        seen.add(pair)


def tournament4_linearize(inst: QsppInstance) -> LinearizationResult:
    """Linearize an instance on a four-vertex tournament (always possible).

    Requires a problem-definition instance (symmetric nonnegative
    interaction, nonnegative linear costs).  With a zero interaction matrix
    the instance is already linear and its own vector is returned; otherwise
    the exact oracle produces one, and its success is guaranteed.
    """
    _tournament_check(inst.graph)
    report = validate_instance(inst, as_problem=True)
    if not report.ok:
        raise FamilyError(
            "tournament linearization expects a problem-definition instance: "
            + "; ".join(report.violations)
        )
    if all(not v for row in inst.interaction.rows for v in row):
        return LinearizationResult(True, vector=inst.linear)
    result = lp_oracle(build_path_matrix(inst), require_nonneg=True)
    assert result.linearizable, "four-vertex tournaments are always linearizable"
    return result
