"""Multigraphs, linear arrangements, path decompositions and exact width solvers."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import _subset
from .errors import InvalidCertificateError, PreconditionError, ResourceLimitError

CUTWIDTH_CAP = 24
PATHWIDTH_CAP = 22


@dataclass(frozen=True)
class MultiGraph:
    """Undirected loopless multigraph on vertices 0..n-1.

    Edges are stored as (u, v) with u < v, in insertion order; repeated pairs are
    parallel edges unless `simple` is set, in which case they are rejected.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    labels: tuple[str, ...] | None = None
    simple: bool = False

    def __post_init__(self) -> None:
        edges = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise PreconditionError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            edges.append((min(u, v), max(u, v)))
        if self.simple and len(set(edges)) != len(edges):
            raise PreconditionError("parallel edges in a graph marked simple")
        object.__setattr__(self, "edges", tuple(edges))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.n:
                raise PreconditionError("need exactly one label per vertex")
            object.__setattr__(self, "labels", labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def multiplicity(self) -> Counter:
        return Counter(self.edges)

    def neighbours(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return nbrs

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        nbrs = self.neighbours()
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            stack, comp = [start], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in nbrs[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def subgraph(self, vertices: Sequence[int]) -> MultiGraph:
        """Induced subgraph, renumbered in the order given."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = tuple((index[u], index[v]) for u, v in self.edges if u in index and v in index)
        labels = tuple(self.label(v) for v in vertices) if self.labels is not None else None
        return MultiGraph(len(vertices), edges, labels, self.simple)

    def collapsed(self) -> MultiGraph:
        """Same graph with parallel edges merged."""
        return MultiGraph(self.n, tuple(dict.fromkeys(self.edges)), self.labels, True)


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1

    def __len__(self) -> int:
        return len(self.bags)

    def is_nice(self) -> bool:
        if not self.bags or self.bags[0] or self.bags[-1]:
            return False
        return all(len(a ^ b) == 1 for a, b in zip(self.bags, self.bags[1:]))


class Check(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


class Traversal(NamedTuple):
    tail: int
    head: int
    edge: int


def check_arrangement(g: MultiGraph, order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(g.n)):
        raise InvalidCertificateError(f"arrangement is not a permutation of 0..{g.n - 1}")
    return order


def cut_size(g: MultiGraph, left: Iterable[int]) -> int:
    """Edges, with multiplicity, having exactly one endpoint in `left`."""
    left = set(left)
    return sum((u in left) != (v in left) for u, v in g.edges)


def _spans(g: MultiGraph, order: Sequence[int]) -> list[tuple[int, int]]:
    pos = {v: i for i, v in enumerate(check_arrangement(g, order))}
    return [tuple(sorted((pos[u], pos[v]))) for u, v in g.edges]


def cut_profile(g: MultiGraph, order: Sequence[int]) -> list[int]:
    """Sizes of the cuts after each prefix of length 1..n-1."""
    diff = [0] * (g.n + 1)
    for a, b in _spans(g, order):
        diff[a + 1] += 1
        diff[b + 1] -= 1
    out, run = [], 0
    for i in range(1, g.n):
        run += diff[i]
        out.append(run)
    return out


def cutwidth_of_arrangement(g: MultiGraph, order: Sequence[int]) -> int:
    return max(cut_profile(g, order), default=0)


def second_order_cutwidth_of_arrangement(g: MultiGraph, order: Sequence[int]) -> int:
    """Largest number of edges meeting or passing over a single vertex position.

    That is the union of the cut just before and the cut just after the position.
    """
    diff = [0] * (g.n + 1)
    for a, b in _spans(g, order):
        diff[a] += 1
        diff[b + 1] -= 1
    best = run = 0
    for i in range(g.n):
        run += diff[i]
        best = max(best, run)
    return best


def _cut_table(g: MultiGraph) -> np.ndarray:
    mult = g.multiplicity()
    deg = g.degrees()
    inside = _subset.pairwise_sums(g.n, lambda u, v: mult.get((u, v), 0))
    return _subset.singleton_sums(g.n, deg.__getitem__) - 2 * inside


def cutwidth_exact(g: MultiGraph, cap: int = CUTWIDTH_CAP) -> tuple[int, tuple[int, ...]]:
    """Minimum cutwidth by subset DP, solved per connected component.

    The witness is lexicographically smallest within each component; components
    are laid out one after another by smallest vertex.
    """
    value, order = 0, []
    for comp in g.components():
        if len(comp) > cap:
            raise ResourceLimitError(f"cutwidth solver capped at {cap} vertices per component")
        sub = g.subgraph(comp)
        k, local = _subset.minmax_order(_cut_table(sub), sub.n)
        value = max(value, k)
        order.extend(comp[i] for i in local)
    return value, tuple(order)


def _boundary_table(g: MultiGraph) -> np.ndarray:
    """For every vertex set S, how many members of S have a neighbour outside S."""
    masks = np.arange(1 << g.n, dtype=np.int64)
    table = np.zeros(1 << g.n, dtype=np.int32)
    for v, nbrs in enumerate(g.neighbours()):
        nmask = sum(1 << u for u in nbrs)
        table += (((masks >> v) & 1) == 1) & ((masks & nmask) != nmask)
    return table


def order_to_path_decomposition(g: MultiGraph, order: Sequence[int]) -> PathDecomposition:
    """Bag i holds vertex order[i] plus every earlier vertex with a neighbour at or after i."""
    order = check_arrangement(g, order)
    nbrs = g.neighbours()
    pos = {v: i for i, v in enumerate(order)}
    last = {v: max((pos[u] for u in nbrs[v]), default=pos[v]) for v in order}
    bags = []
    for i, v in enumerate(order):
        bags.append(frozenset([v]) | {u for u in order[:i] if last[u] >= i})
    return PathDecomposition(tuple(bags))


def pathwidth_exact(g: MultiGraph, cap: int = PATHWIDTH_CAP) -> tuple[int, PathDecomposition]:
    """Pathwidth as vertex separation number, certified by the returned decomposition."""
    g = g.collapsed()
    value, bags = 0, []
    for comp in g.components():
        if len(comp) > cap:
            raise ResourceLimitError(f"pathwidth solver capped at {cap} vertices per component")
        sub = g.subgraph(comp)
        k, local = _subset.minmax_order(_boundary_table(sub), sub.n)
        value = max(value, k)
        q = order_to_path_decomposition(sub, local)
        bags.extend(frozenset(comp[i] for i in b) for b in q.bags)
    return value, PathDecomposition(tuple(bags))


def is_valid_path_decomposition(g: MultiGraph, q: PathDecomposition) -> Check:
    """Cover and connectivity properties, plus every vertex appearing somewhere."""
    seen: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for i, bag in enumerate(q.bags):
        for v in bag:
            if v not in seen:
                return Check(False, f"bag {i} contains unknown vertex {v}")
            seen[v].append(i)
    for v, where in seen.items():
        if not where:
            return Check(False, f"vertex {v} is in no bag")
        if where[-1] - where[0] + 1 != len(where):
            return Check(False, f"bags holding vertex {v} are not consecutive")
    for u, v in g.edges:
        if seen[u][-1] < seen[v][0] or seen[v][-1] < seen[u][0]:
            return Check(False, f"edge ({u}, {v}) is in no bag")
    return Check(True)


def make_nice(q: PathDecomposition) -> PathDecomposition:
    """Rewrite q so that it starts and ends empty and each step adds or drops one vertex.

    Vertices leave before new ones enter, so the width never grows.
    """
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i, bag in enumerate(q.bags):
        for v in bag:
            first.setdefault(v, i)
            if last.get(v, i) < i - 1:
                raise InvalidCertificateError(f"bags holding vertex {v} are not consecutive")
            last[v] = i
    out = [frozenset()]
    current: set[int] = set()
    for bag in list(q.bags) + [frozenset()]:
        for v in sorted(current - bag):
            current.discard(v)
            out.append(frozenset(current))
        for v in sorted(bag - current):
            current.add(v)
            out.append(frozenset(current))
    return PathDecomposition(tuple(out))


def duplicate_edges(g: MultiGraph) -> MultiGraph:
    """Every edge doubled; copy 2i and 2i+1 both come from edge i."""
    edges = tuple(e for e in g.edges for _ in range(2))
    return MultiGraph(g.n, edges, g.labels, False)


def eulerian_cycle(g: MultiGraph) -> list[Traversal]:
    """Closed walk using every edge once (Hierholzer).

    Starts at the smallest non-isolated vertex and always takes the unused edge to
    the smallest neighbour first, so the result is deterministic.
    """
    if not g.edges:
        return []
    if any(d % 2 for d in g.degrees()):
        raise PreconditionError("an Eulerian cycle needs all degrees even")
    incident: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append((v, i))
        incident[v].append((u, i))
    for lst in incident:
        lst.sort()
    start = min(u for u, _ in g.edges)
    used = [False] * g.m
    pointer = [0] * g.n
    stack: list[tuple[int, Traversal | None]] = [(start, None)]
    walk: list[Traversal] = []
    while stack:
        v, arrived = stack[-1]
        lst = incident[v]
        while pointer[v] < len(lst) and used[lst[pointer[v]][1]]:
            pointer[v] += 1
        if pointer[v] < len(lst):
            u, i = lst[pointer[v]]
            used[i] = True
            stack.append((u, Traversal(v, u, i)))
        else:
            stack.pop()
            if arrived is not None:
                walk.append(arrived)
    if len(walk) != g.m:
        raise PreconditionError("edges do not form a single connected piece")
    walk.reverse()
    return walk
