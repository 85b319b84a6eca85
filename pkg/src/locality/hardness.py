"""Word gadget encoding a Clique instance, and a brute-force check of its threshold.

For a simple graph on n vertices and a target size l, the gadget is a word over
x1..xn, z1, z2, z3 whose locality is at most a computed threshold exactly when the
graph has an l-clique.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .errors import PreconditionError
from .graphs import MultiGraph
from .words import Word, locality_subset_dp, marking_number


@dataclass(frozen=True)
class CliqueGadget:
    graph: MultiGraph
    size: int
    rep_outer: int  # gamma1
    rep_vertex: int  # gamma2
    rep_edge: int  # gamma3
    word: Word
    part_lengths: tuple[int, int, int]
    threshold: int

    @property
    def max_degree(self) -> int:
        return max(self.graph.degrees(), default=0)

    @property
    def clique_edges(self) -> int:
        return self.size * (self.size - 1) // 2


class GadgetCheck(NamedTuple):
    locality: int
    has_clique: bool
    consistent: bool


def _edge_part(g: MultiGraph, rep: int) -> list[int]:
    n = g.n
    z3 = n + 2
    deg = g.degrees()
    top = max(deg, default=0)
    out: list[int] = []
    for i, j in sorted(g.edges):
        out += [i, j] * rep + [z3]
    for i in range(n):
        out += [i, z3] * (rep * (top - deg[i]))
    return out


def build_gadget(g: MultiGraph, size: int) -> CliqueGadget:
    """Gadget with the smallest repetition counts the construction allows."""
    if len(set(g.edges)) != len(g.edges):
        raise PreconditionError("clique gadget needs a simple graph")
    n = g.n
    if not 1 <= size <= n:
        raise PreconditionError(f"clique size must be in 1..{n}")
    z1, z2, z3 = n, n + 1, n + 2
    rep_edge = 3
    third = _edge_part(g, rep_edge)
    rep_vertex = len(third) + 2
    second = [z1, z2] * (rep_vertex * (n - size))
    for i in range(n):
        second += [i, z2] * rep_vertex
    second += [z3, z2] * (size * rep_vertex) + [z3]
    rep_outer = len(second) + len(third) + 1
    first = [z1, z2, z3, z2] * rep_outer

    top = max(g.degrees(), default=0)
    mu = size * (size - 1) // 2
    threshold = rep_outer + n * rep_vertex + (size * top - 2 * mu) * rep_edge + mu + 1
    assert rep_edge > 2 and rep_vertex > len(third) + 1 and rep_outer > len(second) + len(third)

    names = tuple(f"x{i + 1}" for i in range(n)) + ("z1", "z2", "z3")
    word = Word(tuple(first + second + third), names)
    return CliqueGadget(
        g, size, rep_outer, rep_vertex, rep_edge, word, (len(first), len(second), len(third)), threshold
    )


def has_clique(g: MultiGraph, size: int) -> bool:
    edges = set(g.edges)
    return any(
        all((a, b) in edges for a, b in combinations(group, 2))
        for group in combinations(range(g.n), size)
    )


def verify_gadget(gadget: CliqueGadget) -> GadgetCheck:
    """Exact locality of the gadget word against a brute-force clique search."""
    loc, _ = locality_subset_dp(gadget.word)
    found = has_clique(gadget.graph, gadget.size)
    return GadgetCheck(loc, found, (loc <= gadget.threshold) == found)


def baseline_sequence(gadget: CliqueGadget) -> tuple[int, ...]:
    """z1, x1..xl, z2, z3, x(l+1)..xn: stays within gamma1 + n*gamma2 + |third part|."""
    n, l = gadget.graph.n, gadget.size
    return (n,) + tuple(range(l)) + (n + 1, n + 2) + tuple(range(l, n))


def baseline_bound(gadget: CliqueGadget) -> int:
    return gadget.rep_outer + gadget.graph.n * gadget.rep_vertex + gadget.part_lengths[2]


def baseline_peak(gadget: CliqueGadget) -> int:
    return marking_number(gadget.word, baseline_sequence(gadget)).peak
