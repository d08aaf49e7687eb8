"""Directed-multigraph core: stable arc ids, graph generators, s-t path machinery.

Arcs are identified by dense integer ids (their position in the arc list),
never by endpoint pairs, so parallel arcs are first-class citizens.  An arc
(head, tail) points from head to tail; two arcs chain when the first one's
tail equals the second one's head.  Graphs are immutable after construction,
so every function here is safe to call concurrently.

Grid vertices use the row-major bijection: the vertex in row i, column j
(1-based, p rows, q columns) has index (i-1)*q + (j-1).
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InvalidPathError, PathLimitExceeded

DEFAULT_PATH_LIMIT = 10**6


class Arc(NamedTuple):
    """Directed arc from ``head`` to ``tail``."""

    head: int
    tail: int


class Digraph:
    """Immutable directed multigraph with dense integer vertex and arc ids.

    ``labels`` is an optional per-arc payload (same length as ``arcs``);
    generators that need to tag parallel arcs use it, everything else leaves
    it ``None``.
    """

    __slots__ = ("n", "arcs", "labels", "_out", "_in")

    def __init__(
        self,
        n: int,
        arcs: Iterable[tuple[int, int]],
        labels: Sequence[object] | None = None,
    ):
        if n < 1:
            raise ValueError("a digraph needs at least one vertex")
        arc_list = []
        for head, tail in arcs:
            if not (0 <= head < n and 0 <= tail < n):
                raise ValueError(f"arc ({head},{tail}) references a vertex outside [0,{n})")
            if head == tail:
                raise ValueError(f"self-loop at vertex {head} is not allowed")
            arc_list.append(Arc(head, tail))
        self.n = n
        self.arcs: tuple[Arc, ...] = tuple(arc_list)
        if labels is not None and len(labels) != len(arc_list):
            raise ValueError("labels must have one entry per arc")
        self.labels = tuple(labels) if labels is not None else None
        out: list[list[int]] = [[] for _ in range(n)]
        inc: list[list[int]] = [[] for _ in range(n)]
        for a, arc in enumerate(self.arcs):
            out[arc.head].append(a)
            inc[arc.tail].append(a)
        self._out = tuple(tuple(ids) for ids in out)
        self._in = tuple(tuple(ids) for ids in inc)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def out_arcs(self, v: int) -> tuple[int, ...]:
        """Arc ids leaving ``v``, in ascending id order."""
        return self._out[v]

    def in_arcs(self, v: int) -> tuple[int, ...]:
        """Arc ids entering ``v``, in ascending id order."""
        return self._in[v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self.n, self.arcs, self.labels) == (other.n, other.arcs, other.labels)

    def __hash__(self) -> int:
        return hash((self.n, self.arcs, self.labels))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Path:
    """Simple path stored as the ordered tuple of its arc ids."""

    arcs: tuple[int, ...]

    def __len__(self) -> int:
        """Number of arcs (the path's length)."""
        return len(self.arcs)


def path_vertices(g: Digraph, path: Path) -> tuple[int, ...]:
    """Vertex sequence visited by ``path``; raises if the arcs do not chain."""
    if not path.arcs:
        raise InvalidPathError("a path must contain at least one arc")
    verts = [g.arcs[path.arcs[0]].head]
    for a in path.arcs:
        if not (0 <= a < g.m):
            raise InvalidPathError(f"arc id {a} out of range")
        arc = g.arcs[a]
        if arc.head != verts[-1]:
            raise InvalidPathError(f"arc {a} does not chain with the previous arc")
        verts.append(arc.tail)
    return tuple(verts)


def validate_path(
    g: Digraph, path: Path, source: int | None = None, target: int | None = None
) -> tuple[int, ...]:
    """Check the Path invariants (chaining, no repeated vertex, endpoints).

    Returns the vertex sequence on success.
    """
    verts = path_vertices(g, path)
    if len(set(verts)) != len(verts):
        raise InvalidPathError("path repeats a vertex")
    if source is not None and verts[0] != source:
        raise InvalidPathError(f"path starts at {verts[0]}, expected {source}")
    if target is not None and verts[-1] != target:
        raise InvalidPathError(f"path ends at {verts[-1]}, expected {target}")
    return verts


# ---- generators --------------------------------------------------------


def grid_vertex(p: int, q: int, i: int, j: int) -> int:
    """Row-major index of the grid vertex in row i, column j (1-based)."""
    if not (1 <= i <= p and 1 <= j <= q):
        raise ValueError(f"grid coordinate ({i},{j}) outside {p}x{q}")
    return (i - 1) * q + (j - 1)


def make_grid(p: int, q: int) -> Digraph:
    """Directed p-by-q grid: every vertex points down and right where possible.

    p*q vertices, 2pq-p-q arcs, acyclic.  Arcs are emitted per vertex in
    row-major order, the down arc before the right arc.
    """
    if p < 2 or q < 2:
        raise ValueError("grid needs p >= 2 and q >= 2")
    arcs = []
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            u = grid_vertex(p, q, i, j)
            if i < p:
                arcs.append((u, grid_vertex(p, q, i + 1, j)))
            if j < q:
                arcs.append((u, grid_vertex(p, q, i, j + 1)))
    return Digraph(p * q, arcs)


def make_complete_symmetric(
    n: int, *, simplified: bool = False, source: int = 0, target: int | None = None
) -> Digraph:
    """Complete symmetric digraph on n vertices (one arc per ordered pair).

    With ``simplified`` the arcs that no source-target path can use are
    dropped: arcs into the source, arcs out of the target, and the direct
    source-target arc.  Arc order is lexicographic by (head, tail).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if target is None:
        target = n - 1
    if source == target:
        raise ValueError("source and target must differ")
    arcs = []
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            if simplified and (v == source or u == target or (u, v) == (source, target)):
                continue
            arcs.append((u, v))
    return Digraph(n, arcs)


def make_directed_cycle(n: int) -> Digraph:
    """Directed cycle v_0 -> v_1 -> ... -> v_{n-1} -> v_0."""
    if n < 2:
        raise ValueError("need n >= 2")
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def make_hypercube(n: int) -> Digraph:
    """Directed n-cube: one vertex per n-bit string, arcs set a single 0 bit to 1.

    2**n vertices and n*2**(n-1) arcs; every arc increases the binary value,
    so the graph is acyclic.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    arcs = []
    for u in range(1 << n):
        for b in range(n):
            if not u & (1 << b):
                arcs.append((u, u | (1 << b)))
    return Digraph(1 << n, arcs)


def make_tournament(n: int, orientation_bits: int = 0) -> Digraph:
    """Tournament on n vertices: exactly one arc per unordered vertex pair.

    Pairs (i, j) with i < j are enumerated lexicographically; bit k of
    ``orientation_bits`` flips the k-th pair from i->j to j->i.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if not 0 <= orientation_bits < (1 << len(pairs)):
        raise ValueError("orientation_bits out of range for this n")
    arcs = []
    for k, (i, j) in enumerate(pairs):
        if orientation_bits >> k & 1:
            arcs.append((j, i))
        else:
            arcs.append((i, j))
    return Digraph(n, arcs)


# ---- path enumeration and DAG utilities --------------------------------


def _coreachable(g: Digraph, t: int) -> list[bool]:
    """Vertices from which t can be reached."""
    seen = [False] * g.n
    seen[t] = True
    stack = [t]
    while stack:
        v = stack.pop()
        for a in g.in_arcs(v):
            u = g.arcs[a].head
            if not seen[u]:
                seen[u] = True
                stack.append(u)
    return seen


def iter_st_paths(
    g: Digraph, source: int, target: int, limit: int = DEFAULT_PATH_LIMIT
) -> Iterator[Path]:
    """Yield every simple source-target path, lexicographic by arc ids.

    Raises PathLimitExceeded as soon as a (limit+1)-th path is found, so a
    caller that consumed ``limit`` paths without an exception has them all.
    """
    if source == target:
        raise ValueError("source and target must differ")
    useful = _coreachable(g, target)
    if not useful[source]:
        return
    on_path = [False] * g.n
    on_path[source] = True
    arc_stack: list[int] = []
    iter_stack = [iter(g.out_arcs(source))]
    found = 0
    while iter_stack:
        advanced = False
        for a in iter_stack[-1]:
            v = g.arcs[a].tail
            if on_path[v] or not useful[v]:
                continue
            arc_stack.append(a)
            if v == target:
                found += 1
                if found > limit:
                    raise PathLimitExceeded(limit)
                yield Path(tuple(arc_stack))
                arc_stack.pop()
                continue
            on_path[v] = True
            iter_stack.append(iter(g.out_arcs(v)))
            advanced = True
            break
        if not advanced:
            iter_stack.pop()
            if arc_stack:
                on_path[g.arcs[arc_stack.pop()].tail] = False


def enumerate_st_paths(
    g: Digraph, source: int, target: int, limit: int = DEFAULT_PATH_LIMIT
) -> list[Path]:
    """All simple source-target paths in deterministic lexicographic order."""
    return list(iter_st_paths(g, source, target, limit))


def topological_order(g: Digraph) -> list[int] | None:
    """A topological order of the vertices, or None if the graph has a cycle.

    Kahn's algorithm with a min-heap, so the order is deterministic
    (lexicographically smallest).
    """
    indeg = [len(g.in_arcs(v)) for v in range(g.n)]
    ready = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for a in g.out_arcs(v):
            w = g.arcs[a].tail
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    return order if len(order) == g.n else None


def is_acyclic(g: Digraph) -> bool:
    return topological_order(g) is not None


def count_grid_paths(p: int, q: int) -> int:
    """Number of corner-to-corner paths in the p-by-q grid: C(p+q-2, p-1)."""
    if p < 2 or q < 2:
        raise ValueError("grid needs p >= 2 and q >= 2")
    return math.comb(p + q - 2, p - 1)


def detect_grid(g: Digraph) -> tuple[int, int] | None:
    """Recover (p, q) if ``g`` is a row-major directed grid, else None."""
    n, m = g.n, g.m
    arc_set = set(g.arcs)
    if len(arc_set) != m:
        return None
    for p in range(2, n + 1):
        if n % p:
            continue
        q = n // p
        if q < 2 or m != 2 * p * q - p - q:
            continue
        if arc_set == set(make_grid(p, q).arcs):
            return (p, q)
    return None
