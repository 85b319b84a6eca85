"""Words, marking sequences and exact locality solvers.

A word is a tuple of dense integer symbols. Marking a symbol marks all of its
positions at once; the locality number is the smallest possible peak number of
maximal marked runs over all orders in which the alphabet can be marked.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from . import _subset
from .errors import InvalidCertificateError, PreconditionError, ResourceLimitError

BRUTEFORCE_CAP = 9
# The subset DP allocates a few arrays of 2**sigma entries; any word length works.
DP_CAP = 24
ZIMIN_CAP = 20


def _default_name(i: int) -> str:
    return chr(ord("a") + i) if i < 26 else f"s{i}"


@dataclass(frozen=True)
class Word:
    """Sequence of symbols 0..sigma-1, each of which occurs at least once.

    `names` optionally maps symbol ids back to the tokens they were read from.
    """

    symbols: tuple[int, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        symbols = tuple(int(s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        used = set(symbols)
        if used != set(range(len(used))):
            raise PreconditionError(f"symbol ids must be dense, got {sorted(used)}")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != len(used) or len(set(names)) != len(names):
                raise PreconditionError("names must give one distinct token per symbol")
            object.__setattr__(self, "names", names)

    @classmethod
    def intern(cls, tokens: Iterable[str]) -> Word:
        """Number tokens in order of first occurrence."""
        ids: dict[str, int] = {}
        symbols = [ids.setdefault(t, len(ids)) for t in tokens]
        return cls(tuple(symbols), tuple(ids))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, i: int) -> int:
        return self.symbols[i]

    @property
    def sigma(self) -> int:
        return len(set(self.symbols))

    def name(self, x: int) -> str:
        return self.names[x] if self.names is not None else _default_name(x)

    def index(self, token: str) -> int:
        for x in range(self.sigma):
            if self.name(x) == token:
                return x
        raise InvalidCertificateError(f"unknown symbol {token!r}")

    def positions(self, x: int) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.symbols) if s == x)

    def is_condensed(self) -> bool:
        return all(a != b for a, b in zip(self.symbols, self.symbols[1:]))

    def reversed(self) -> Word:
        return Word(self.symbols[::-1], self.names)

    def repeat(self, i: int) -> Word:
        return Word(self.symbols * i, self.names)

    def text(self) -> str:
        names = [self.name(x) for x in self.symbols]
        if all(len(n) == 1 for n in names):
            return "".join(names)
        return " ".join(names)

    def __str__(self) -> str:
        return self.text()


def as_word(w: Word | str | Sequence[int]) -> Word:
    """Accept a Word, a string in one-char-per-symbol form, or a list of dense ids."""
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return Word.intern(w)
    return Word(tuple(w))


class Marking(NamedTuple):
    peak: int
    trace: tuple[int, ...]


def condense(w: Word | str | Sequence[int]) -> Word:
    """Collapse every maximal run of one symbol to a single occurrence."""
    w = as_word(w)
    out = [s for i, s in enumerate(w.symbols) if i == 0 or s != w.symbols[i - 1]]
    return Word(tuple(out), w.names)


def check_sequence(w: Word, s: Sequence[int]) -> tuple[int, ...]:
    s = tuple(s)
    if sorted(s) != list(range(w.sigma)):
        raise InvalidCertificateError(
            f"marking sequence {s} is not a permutation of the {w.sigma} symbols"
        )
    return s


def marking_number(w: Word | str | Sequence[int], s: Sequence[int]) -> Marking:
    """Peak block count of marking `w` in order `s`, with the per-stage counts."""
    w = as_word(w)
    s = check_sequence(w, s)
    m = len(w)
    where: list[list[int]] = [[] for _ in range(w.sigma)]
    for i, x in enumerate(w.symbols):
        where[x].append(i)
    marked = [False] * (m + 2)  # padded so position i lives at i + 1
    blocks = 0
    trace = []
    for x in s:
        for i in where[x]:
            blocks += 1 - marked[i] - marked[i + 2]
            marked[i + 1] = True
        trace.append(blocks)
    return Marking(max(trace, default=0), tuple(trace))


def blocks_after_marking(w: Word | str | Sequence[int], marked: Iterable[int]) -> int:
    """Number of maximal runs of positions whose symbol is in `marked`."""
    w = as_word(w)
    marked = set(marked)
    runs = 0
    inside = False
    for s in w.symbols:
        now = s in marked
        runs += now and not inside
        inside = now
    return runs


def reverse_sequence(s: Sequence[int]) -> tuple[int, ...]:
    return tuple(s)[::-1]


def _search_all(w: Word) -> Iterator[tuple[tuple[int, ...], Marking]]:
    w = condense(w)
    for s in permutations(range(w.sigma)):
        yield s, marking_number(w, s)


def locality_bruteforce(w: Word | str | Sequence[int], cap: int = BRUTEFORCE_CAP) -> tuple[int, tuple[int, ...]]:
    """Exhaustive search over marking sequences in lexicographic order.

    Prefixes whose running peak already reaches the best value found are cut, which
    keeps the first optimum found (the lexicographically smallest) and skips nothing
    that could beat it.
    """
    w = as_word(w)
    sigma = w.sigma
    if sigma > cap:
        raise ResourceLimitError(f"brute force capped at {cap} symbols, word has {sigma}")
    if sigma == 0:
        return 0, ()
    w = condense(w)
    m = len(w)
    where: list[list[int]] = [[] for _ in range(sigma)]
    for i, x in enumerate(w.symbols):
        where[x].append(i)

    marked = [False] * (m + 2)
    best = [m + 1, ()]
    order: list[int] = []
    used = [False] * sigma

    def extend(blocks: int, peak: int) -> None:
        if len(order) == sigma:
            if peak < best[0]:
                best[0], best[1] = peak, tuple(order)
            return
        for x in range(sigma):
            if used[x]:
                continue
            after = blocks
            for i in where[x]:
                after += 1 - marked[i] - marked[i + 2]
            if max(peak, after) >= best[0]:
                continue
            used[x] = True
            order.append(x)
            for i in where[x]:
                marked[i + 1] = True
            extend(after, max(peak, after))
            for i in where[x]:
                marked[i + 1] = False
            order.pop()
            used[x] = False

    extend(0, 0)
    return best[0], best[1]


def _block_table(w: Word) -> np.ndarray:
    """blocks_after_marking for every subset of the alphabet, indexed by bitmask.

    On a condensed word, adding symbol x to a marked set T changes the count by
    |P_x| minus the number of adjacent position pairs joining x to T.
    """
    sigma = w.sigma
    occurrences = [0] * sigma
    adjacent = [[0] * sigma for _ in range(sigma)]
    for i, x in enumerate(w.symbols):
        occurrences[x] += 1
        if i:
            y = w.symbols[i - 1]
            adjacent[x][y] += 1
            adjacent[y][x] += 1
    return _subset.singleton_sums(sigma, occurrences.__getitem__) - _subset.pairwise_sums(
        sigma, lambda u, v: adjacent[u][v]
    )


def locality_subset_dp(w: Word | str | Sequence[int], cap: int = DP_CAP) -> tuple[int, tuple[int, ...]]:
    """Exact locality via loc(S) = max(k_S, min over x in S of loc(S - {x})).

    The witness is the lexicographically smallest optimal marking sequence.
    """
    w = condense(w)
    sigma = w.sigma
    if sigma > cap:
        raise ResourceLimitError(f"subset DP capped at {cap} symbols, word has {sigma}")
    if sigma == 0:
        return 0, ()
    return _subset.minmax_order(_block_table(w), sigma)


def locality(w: Word | str | Sequence[int]) -> int:
    return locality_subset_dp(w)[0]


def zimin(i: int) -> Word:
    """Z_1 = x1 and Z_{i+1} = Z_i x_{i+1} Z_i."""
    if not 1 <= i <= ZIMIN_CAP:
        raise PreconditionError(f"zimin index must be in 1..{ZIMIN_CAP}")
    z: list[int] = [0]
    for j in range(1, i):
        z = z + [j] + z
    return Word(tuple(z), tuple(f"x{j + 1}" for j in range(i)))


def tightness_alpha(n: int, k: int) -> Word:
    """(x1 x2 .. xn x(n-1) .. x2)^k x1: locality k but position-graph pathwidth 2k."""
    if n < 2 or k < 1:
        raise PreconditionError("need n >= 2 and k >= 1")
    period = list(range(n)) + list(range(n - 2, 0, -1))
    return Word(tuple(period * k + [0]), tuple(f"x{j + 1}" for j in range(n)))


def tightness_beta(k: int) -> Word:
    """(x1 x2)^k: locality and position-graph pathwidth both equal k."""
    if k < 1:
        raise PreconditionError("need k >= 1")
    return Word((0, 1) * k, ("x1", "x2"))


def _optimal_traces(w: Word) -> tuple[int, list[tuple[tuple[int, ...], tuple[int, ...]]]]:
    runs = list(_search_all(w))
    best = min(r.peak for _, r in runs)
    return best, [(s, r.trace) for s, r in runs if r.peak == best]


def _check_bruteforce_cap(w: Word) -> None:
    if w.sigma > BRUTEFORCE_CAP:
        raise ResourceLimitError(f"enumeration capped at {BRUTEFORCE_CAP} symbols")


def is_strictly_k_local(w: Word | str | Sequence[int], k: int) -> bool:
    """loc(w) = k and every optimal sequence passes through a stage with exactly k blocks."""
    w = as_word(w)
    _check_bruteforce_cap(w)
    if len(w) == 0:
        return k == 0
    best, optimal = _optimal_traces(w)
    return best == k and all(k in trace for _, trace in optimal)


def border_priority(w: Word | str | Sequence[int], side: str = "both") -> bool:
    """Whether some optimal sequence has the border letter(s) marked at every peak stage.

    side is "left" (first letter), "right" (last letter) or "both".
    """
    if side not in ("left", "right", "both"):
        raise PreconditionError(f"side must be left, right or both, not {side!r}")
    w = as_word(w)
    _check_bruteforce_cap(w)
    if len(w) == 0:
        raise PreconditionError("border priority needs a nonempty word")
    best, optimal = _optimal_traces(w)
    if not is_strictly_k_local(w, best):
        raise PreconditionError("border priority is only defined for strictly k-local words")
    borders = []
    if side in ("left", "both"):
        borders.append(w[0])
    if side in ("right", "both"):
        borders.append(w[-1])
    for s, trace in optimal:
        if all(
            all(b in s[: stage + 1] for b in borders)
            for stage, count in enumerate(trace)
            if count == best
        ):
            return True
    return False
