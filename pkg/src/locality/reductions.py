"""Constructions linking locality, cutwidth and pathwidth, with certificate translation.

Four constructions live here:

* the adjacency multigraph of a word, optionally with two anchor vertices "$" and "#"
  joined by 2k parallel edges (cutwidth 2k exactly when the word is k-local);
* words spelled by the Eulerian walk of a doubled graph with one edge removed;
* the position graph of a word (path edges plus one clique per letter);
* the incidence graph of a graph (one vertex per edge end).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Callable, NamedTuple, Sequence

from .errors import ContractViolation, InvalidCertificateError, PreconditionError
from .graphs import (
    MultiGraph,
    PathDecomposition,
    Traversal,
    check_arrangement,
    cut_profile,
    cutwidth_exact,
    cutwidth_of_arrangement,
    duplicate_edges,
    eulerian_cycle,
    is_valid_path_decomposition,
    make_nice,
    pathwidth_exact,
    second_order_cutwidth_of_arrangement,
)
from .words import Word, as_word, check_sequence, condense, locality_subset_dp, marking_number

WidthSolver = Callable[[MultiGraph], tuple[int, Any]]
LocalitySolver = Callable[[Word], tuple[int, tuple[int, ...]]]


@dataclass(frozen=True)
class LabeledReduction:
    """A product graph together with where each of its vertices came from.

    `origin[v]` is a symbol id, a position, a (owner, other, edge) triple for an
    incidence copy, or None for the "$" and "#" anchors.
    """

    kind: str
    source: Word | MultiGraph
    product: MultiGraph
    origin: tuple
    params: dict = field(default_factory=dict)


class EdgeWord(NamedTuple):
    anchor: int
    edge: Traversal
    word: Word


def _require_condensed(w: Word, min_length: int) -> None:
    if len(w) < min_length:
        raise PreconditionError(f"word must have length at least {min_length}")
    if not w.is_condensed():
        raise PreconditionError("word must be condensed")


def _adjacency_edges(w: Word) -> list[tuple[int, int]]:
    return [(a, b) for a, b in zip(w.symbols, w.symbols[1:])]


def build_H_alpha(w: Word | str | Sequence[int]) -> LabeledReduction:
    """Multigraph on the alphabet with one edge per pair of adjacent positions."""
    w = as_word(w)
    _require_condensed(w, 1)
    labels = tuple(w.name(x) for x in range(w.sigma))
    g = MultiGraph(w.sigma, tuple(_adjacency_edges(w)), labels)
    return LabeledReduction("adjacency", w, g, tuple(range(w.sigma)))


def build_H_alpha_k(w: Word | str | Sequence[int], k: int) -> LabeledReduction:
    """Adjacency multigraph plus anchors: "$" joined to the first and last letter and
    to "#" by 2k parallel edges."""
    w = as_word(w)
    _require_condensed(w, 1)
    if k < 1:
        raise PreconditionError("k must be at least 1")
    dollar, hash_ = w.sigma, w.sigma + 1
    edges = _adjacency_edges(w) + [(dollar, w[0]), (dollar, w[-1])] + [(dollar, hash_)] * (2 * k)
    labels = tuple(w.name(x) for x in range(w.sigma)) + ("$", "#")
    g = MultiGraph(w.sigma + 2, tuple(edges), labels)
    return LabeledReduction("anchored-adjacency", w, g, tuple(range(w.sigma)) + (None, None), {"k": k})


def arrangement_to_marking(w: Word, r: LabeledReduction, order: Sequence[int]) -> tuple[int, ...]:
    """Read the symbols off an arrangement of an adjacency graph, dropping the anchors.

    An arrangement that puts "#" before "$" is mirrored first. Mirroring keeps the
    cutwidth, and on an optimal arrangement of the anchored graph it puts the
    anchors at the far end, which is what makes the induced sequence k-local.
    """
    order = check_arrangement(r.product, order)
    if r.kind == "anchored-adjacency":
        dollar, hash_ = w.sigma, w.sigma + 1
        if order.index(hash_) < order.index(dollar):
            order = order[::-1]
    return tuple(r.origin[v] for v in order if r.origin[v] is not None)


def locality_via_cutwidth(w: Word | str | Sequence[int], solver: WidthSolver = cutwidth_exact) -> tuple[int, tuple[int, ...]]:
    """Locality from cutwidths: bracket it with the plain adjacency graph, then take the
    first k whose anchored graph has cutwidth exactly 2k."""
    w = condense(as_word(w))
    if len(w) == 0:
        return 0, ()
    plain, _ = solver(build_H_alpha(w).product)
    for k in range(max(1, -(-plain // 2)), (plain + 4) // 2 + 1):
        r = build_H_alpha_k(w, k)
        width, order = solver(r.product)
        if width == 2 * k:
            s = arrangement_to_marking(w, r, order)
            if marking_number(w, s).peak != k:
                raise ContractViolation(f"arrangement of width {2 * k} induced a sequence above {k}")
            return k, s
    raise ContractViolation(f"no k in the window around cutwidth {plain} had cutwidth 2k")


def cycle_from_vertices(g: MultiGraph, walk: Sequence[int]) -> list[Traversal]:
    """Turn a closed vertex walk over the doubled graph into traversals.

    The walk lists each vertex as it is entered; the step back to the first
    vertex is implied. Each edge of g must be walked exactly twice.
    """
    doubled = duplicate_edges(g)
    free: dict[tuple[int, int], list[int]] = {}
    for i, e in enumerate(doubled.edges):
        free.setdefault(e, []).append(i)
    out = []
    walk = list(walk)
    for a, b in zip(walk, walk[1:] + walk[:1]):
        slots = free.get((min(a, b), max(a, b)))
        if not slots:
            raise InvalidCertificateError(f"walk uses ({a}, {b}) more often than the doubled graph allows")
        out.append(Traversal(a, b, slots.pop(0)))
    if any(free.values()):
        raise InvalidCertificateError("walk does not use every doubled edge")
    return out


def _spell(cycle: list[Traversal], cut: int, g: MultiGraph) -> Word:
    rest = cycle[cut + 1:] + cycle[:cut]
    vertices = [cycle[cut].head] + [t.head for t in rest]
    labels = tuple(g.label(v) for v in range(g.n))
    return Word(tuple(vertices), labels)


def words_from_graph(
    g: MultiGraph, cycle: Sequence[Traversal] | None = None, all_edges: bool = False
) -> list[EdgeWord]:
    """Words spelled by the Eulerian walk of the doubled graph after removing one edge.

    By default one word per vertex is produced, cutting the last cycle edge that
    touches it. `all_edges` yields one word per cycle edge instead. A specific
    cycle of the doubled graph can be supplied; otherwise Hierholzer's walk is used.
    """
    if g.n < 2 or not g.is_connected():
        raise PreconditionError("need a connected graph with at least two vertices")
    cycle = list(cycle) if cycle is not None else eulerian_cycle(duplicate_edges(g))
    if len(cycle) != 2 * g.m:
        raise InvalidCertificateError("cycle length does not match the doubled graph")
    if all_edges:
        return [EdgeWord(t.tail, t, _spell(cycle, i, g)) for i, t in enumerate(cycle)]
    last: dict[int, int] = {}
    for i, t in enumerate(cycle):
        last[t.tail] = i
        last[t.head] = i
    return [EdgeWord(v, cycle[last[v]], _spell(cycle, last[v], g)) for v in range(g.n)]


def marking_to_arrangement(g: MultiGraph, word: Word, s: Sequence[int]) -> tuple[int, ...]:
    """A marking sequence of an Eulerian word is already a vertex order."""
    if word.sigma != g.n:
        raise InvalidCertificateError("word alphabet and vertex set differ")
    return check_arrangement(g, check_sequence(word, s))


def cutwidth_via_locality(g: MultiGraph, solver: LocalitySolver = locality_subset_dp) -> tuple[int, tuple[int, ...]]:
    """Best arrangement found by solving locality on each per-vertex Eulerian word."""
    best: tuple[int, tuple[int, ...]] | None = None
    for cand in words_from_graph(g):
        peak, s = solver(cand.word)
        order = marking_to_arrangement(g, cand.word, s)
        width = cutwidth_of_arrangement(g, order)
        if width > marking_number(cand.word, s).peak:
            raise ContractViolation("arrangement cut exceeds the marking number it came from")
        if best is None or width < best[0]:
            best = (width, order)
    assert best is not None
    return best


def build_G_alpha(w: Word | str | Sequence[int]) -> LabeledReduction:
    """Graph on positions: consecutive positions joined, equal letters form a clique."""
    w = as_word(w)
    _require_condensed(w, 2)
    edges = [(i, i + 1) for i in range(len(w) - 1)]
    for x in range(w.sigma):
        where = w.positions(x)
        edges += [(a, b) for i, a in enumerate(where) for b in where[i + 1:]]
    labels = tuple(f"{w.name(s)}@{i + 1}" for i, s in enumerate(w.symbols))
    g = MultiGraph(len(w), tuple(edges), labels, simple=True)
    return LabeledReduction("positions", w, g, tuple(range(len(w))))


def marking_to_path_decomposition(w: Word | str | Sequence[int], s: Sequence[int]) -> PathDecomposition:
    """Nice decomposition of the position graph that follows a marking sequence.

    Positions move open -> active -> closed. Each newly marked letter first activates
    the occurrences that touch marked positions, closing neighbours that became
    interior, then its isolated occurrences, then closes its own occurrences that
    have no open neighbour. The bags are the successive active sets.
    """
    w = as_word(w)
    _require_condensed(w, 2)
    s = check_sequence(w, s)
    m = len(w)
    state = [0] * m  # 0 open, 1 active, 2 closed
    active: set[int] = set()
    bags = [frozenset()]

    def activate(j: int) -> None:
        state[j] = 1
        active.add(j)
        bags.append(frozenset(active))

    def close(j: int) -> None:
        if (j > 0 and state[j - 1] == 0) or (j + 1 < m and state[j + 1] == 0):
            raise ContractViolation(f"closing position {j} while a neighbour is still open")
        state[j] = 2
        active.discard(j)
        bags.append(frozenset(active))

    for j in w.positions(s[0]):
        activate(j)
    marked = {s[0]}
    for x in s[1:]:
        where = w.positions(x)
        for j in where:
            touches = (j > 0 and w[j - 1] in marked) or (j + 1 < m and w[j + 1] in marked)
            if not touches:
                continue
            activate(j)
            if j >= 2 and state[j - 1] == 1 and state[j - 2] != 0:
                close(j - 1)
            if j + 2 < m and state[j + 1] == 1 and state[j + 2] != 0:
                close(j + 1)
        for j in where:
            if state[j] == 0:
                activate(j)
        for j in where:
            if state[j] == 1 and (j == 0 or state[j - 1] != 0) and (j + 1 == m or state[j + 1] != 0):
                close(j)
        marked.add(x)
    for j in sorted(active):
        close(j)
    return PathDecomposition(tuple(bags))


def path_decomposition_to_marking(w: Word | str | Sequence[int], q: PathDecomposition) -> tuple[int, ...]:
    """Mark letters in the order their occurrence cliques first become fully active.

    If that order peaks above the width, try deferring each single letter to the end.
    """
    w = as_word(w)
    r = build_G_alpha(w)
    check = is_valid_path_decomposition(r.product, q)
    if not check:
        raise InvalidCertificateError(check.reason)
    nice = make_nice(q)
    size = [len(w.positions(x)) for x in range(w.sigma)]
    present = [0] * w.sigma
    full_at: dict[int, int] = {}
    for i in range(1, len(nice.bags)):
        before, after = nice.bags[i - 1], nice.bags[i]
        for v in after - before:
            x = w[v]
            present[x] += 1
            if present[x] == size[x]:
                full_at.setdefault(x, i)
        for v in before - after:
            present[w[v]] -= 1
    s = tuple(sorted(range(w.sigma), key=lambda x: (full_at[x], x)))
    width = q.width
    if marking_number(w, s).peak <= width:
        return s
    for x in s:
        deferred = tuple(y for y in s if y != x) + (x,)
        if marking_number(w, deferred).peak <= width:
            return deferred
    raise ContractViolation(f"no single deferral brings the marking number down to width {width}")


def locality_via_pathwidth(w: Word | str | Sequence[int], solver: WidthSolver = pathwidth_exact) -> tuple[int, tuple[int, ...]]:
    """Marking sequence read off a decomposition of the position graph.

    With an exact solver the result is at most twice the locality.
    """
    w = condense(as_word(w))
    if len(w) == 0:
        return 0, ()
    if len(w) == 1:
        return 1, (0,)
    r = build_G_alpha(w)
    _, q = solver(r.product)
    check = is_valid_path_decomposition(r.product, q)
    if not check:
        raise InvalidCertificateError(f"solver returned an invalid decomposition: {check.reason}")
    s = path_decomposition_to_marking(w, q)
    return marking_number(w, s).peak, s


def build_G_prime(g: MultiGraph) -> LabeledReduction:
    """Incidence graph: one vertex per edge end, the two ends of an edge joined, and all
    ends at the same original vertex forming a clique.

    For edge i = (a, b) the copy of a is vertex 2i and the copy of b is 2i + 1.
    """
    if g.m == 0:
        raise PreconditionError("incidence graph needs at least one edge")
    mult = g.multiplicity()
    origin = []
    labels = []
    for i, (a, b) in enumerate(g.edges):
        tag = f"/{i}" if mult[(a, b)] > 1 else ""
        origin += [(a, b, i), (b, a, i)]
        labels += [f"{g.label(a)}_{g.label(b)}{tag}", f"{g.label(b)}_{g.label(a)}{tag}"]
    copies: list[list[int]] = [[] for _ in range(g.n)]
    for c, (owner, _, _) in enumerate(origin):
        copies[owner].append(c)
    edges = [(2 * i, 2 * i + 1) for i in range(g.m)]
    for own in copies:
        edges += [(a, b) for j, a in enumerate(own) for b in own[j + 1:]]
    product = MultiGraph(2 * g.m, tuple(edges), tuple(labels), simple=True)
    return LabeledReduction("incidence", g, product, tuple(origin))


def arrangement_to_pd_Gprime(g: MultiGraph, order: Sequence[int]) -> PathDecomposition:
    """Decomposition of the incidence graph whose width is at most the second order
    cutwidth of the arrangement.

    Walking the arrangement, each vertex gets one bag with all of its copies, then one
    bag per edge to a later vertex (ordered by that vertex's position, then edge id).
    The bag for edge e keeps this vertex's copies on edges not yet passed, the far
    copies on edges already reached, and the far copies of edges jumping over it.
    """
    order = check_arrangement(g, order)
    r = build_G_prime(g)
    pos = {v: i for i, v in enumerate(order)}
    copies = list(enumerate(r.origin))

    def over(i: int) -> set[int]:
        return {c for c, (own, oth, _) in copies if pos[oth] < i < pos[own]}

    bags = []
    for i, v in enumerate(order):
        jumping = over(i)
        bags.append(frozenset({c for c, (own, _, _) in copies if own == v} | jumping))
        forward = sorted(
            ((pos[oth], e) for own, oth, e in r.origin if own == v and pos[oth] > i)
        )
        for key in forward:
            near = {c for c, (own, oth, e) in copies if own == v and (pos[oth], e) >= key and pos[oth] > i}
            far = {c for c, (own, oth, e) in copies if oth == v and pos[own] > i and (pos[own], e) <= key}
            bags.append(frozenset(near | far | jumping))
    return PathDecomposition(tuple(bags))


def _move(order: list[int], v: int, before: int) -> None:
    order.remove(v)
    order.insert(order.index(before), v)


def pd_Gprime_to_arrangement(g: MultiGraph, q: PathDecomposition) -> tuple[int, ...]:
    """Arrangement of g with cutwidth at most width(q), from a decomposition of its
    incidence graph.

    Vertices are ordered by the first bag holding all of their copies. That order can
    overshoot by one at cuts just after a vertex with no earlier neighbour; such a
    vertex is moved right, next to its nearest later neighbour, until no cut exceeds
    the width.
    """
    r = build_G_prime(g)
    check = is_valid_path_decomposition(r.product, q)
    if not check:
        raise InvalidCertificateError(check.reason)
    width = q.width
    copies: list[set[int]] = [set() for _ in range(g.n)]
    for c, (own, _, _) in enumerate(r.origin):
        copies[own].add(c)

    def first_bag(v: int) -> int:
        if not copies[v]:
            return 0
        return next(i for i, bag in enumerate(q.bags) if copies[v] <= bag)

    if g.n <= 2:
        order = min(permutations(range(g.n)), key=lambda o: cutwidth_of_arrangement(g, o))
        if cutwidth_of_arrangement(g, order) > width:
            raise ContractViolation("no arrangement of a two-vertex graph fits the width")
        return tuple(order)

    order = sorted(range(g.n), key=lambda v: (first_bag(v), v))
    if second_order_cutwidth_of_arrangement(g, order) > width + 1:
        raise ContractViolation("first-bag order exceeds the width by more than one")
    nbrs = g.neighbours()
    for _ in range(g.n * g.n * (g.m + 1)):
        profile = cut_profile(g, order)
        if max(profile, default=0) <= width:
            return tuple(order)
        t = profile.index(max(profile))  # prefix order[:t + 1]
        v = order[t]
        pos = {u: i for i, u in enumerate(order)}
        if not nbrs[v]:
            order.remove(v)
            order.insert(0, v)
            continue
        if any(pos[u] < t for u in nbrs[v]):
            raise ContractViolation(f"vertex {v} at an overfull cut has an earlier neighbour")
        target = order[min(pos[u] for u in nbrs[v])]
        if pos[target] == t + 1:
            order[t], order[t + 1] = order[t + 1], order[t]
        else:
            _move(order, v, target)
    raise ContractViolation("repair loop did not converge")


def cutwidth_via_pathwidth(g: MultiGraph, solver: WidthSolver = pathwidth_exact) -> tuple[int, tuple[int, ...]]:
    """Arrangement read off a decomposition of the incidence graph.

    With an exact solver the result is between cw(g) and 2 cw(g).
    """
    r = build_G_prime(g)
    _, q = solver(r.product)
    check = is_valid_path_decomposition(r.product, q)
    if not check:
        raise InvalidCertificateError(f"solver returned an invalid decomposition: {check.reason}")
    order = pd_Gprime_to_arrangement(g, q)
    return cutwidth_of_arrangement(g, order), order
