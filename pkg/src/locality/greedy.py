"""Greedy marking strategies, the best run each one admits, and adversarial families.

A strategy restricts which unmarked symbol may be marked next, as a function of the
set already marked. Every strategy may start with any symbol except LR, which always
takes the symbol occurring leftmost. Words are condensed before a strategy sees them.
"""
from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import PreconditionError, ResourceLimitError
from .words import Word, as_word, condense, locality_subset_dp

GREEDY_CAP = 20


class Strategy(str, Enum):
    SO = "SO"  # fewest occurrences
    MO = "MO"  # most occurrences
    SNM = "SNM"  # fewest blocks after marking
    LR = "LR"  # leftmost occurrence
    BE = "BE"  # extends a marked block
    BE_SO = "BE-SO"
    BE_MO = "BE-MO"
    BE_SNM = "BE-SNM"
    BE_LR = "BE-LR"
    BE_MOSTEXT = "BE-MOSTEXT"  # most occurrences next to a marked position
    BE_RATIO = "BE-RATIO"  # highest share of such occurrences

    @classmethod
    def parse(cls, tag: str) -> Strategy:
        try:
            return cls(tag.upper())
        except ValueError:
            raise PreconditionError(f"unknown strategy {tag!r}") from None


class _Board:
    """Per-word tables so a candidate query costs O(sigma * occurrences)."""

    def __init__(self, w: Word):
        w = condense(w)
        self.sigma = w.sigma
        self.full = (1 << self.sigma) - 1
        self.occ = [0] * self.sigma
        self.first = [len(w)] * self.sigma
        self.sides: list[list[int]] = [[] for _ in range(self.sigma)]
        self.adjacent = [[0] * self.sigma for _ in range(self.sigma)]
        for i, x in enumerate(w.symbols):
            self.occ[x] += 1
            self.first[x] = min(self.first[x], i)
            side = 0
            if i > 0:
                side |= 1 << w[i - 1]
            if i + 1 < len(w):
                side |= 1 << w[i + 1]
            self.sides[x].append(side)
            if i > 0:
                self.adjacent[x][w[i - 1]] += 1
                self.adjacent[w[i - 1]][x] += 1

    def gain(self, marked: int, x: int) -> int:
        """Change in block count when x joins the marked set."""
        return self.occ[x] - sum(self.adjacent[x][y] for y in range(self.sigma) if marked >> y & 1)

    def extending(self, marked: int, x: int) -> int:
        return sum(1 for side in self.sides[x] if side & marked)

    def candidates(self, marked: int, strat: Strategy) -> list[int]:
        free = [x for x in range(self.sigma) if not marked >> x & 1]
        if strat is Strategy.LR:
            return [min(free, key=self.first.__getitem__)]
        if not marked:
            return free
        if strat.value.startswith("BE"):
            free = [x for x in free if self.extending(marked, x)]
        if strat in (Strategy.BE,):
            return free
        if strat in (Strategy.SO, Strategy.BE_SO):
            return _argbest(free, lambda x: -self.occ[x])
        if strat in (Strategy.MO, Strategy.BE_MO):
            return _argbest(free, lambda x: self.occ[x])
        if strat in (Strategy.SNM, Strategy.BE_SNM):
            return _argbest(free, lambda x: -self.gain(marked, x))
        if strat is Strategy.BE_LR:
            return [min(free, key=self.first.__getitem__)]
        if strat is Strategy.BE_MOSTEXT:
            return _argbest(free, lambda x: self.extending(marked, x))
        if strat is Strategy.BE_RATIO:
            # Compare e/o ratios exactly by cross-multiplying.
            best = [free[0]]
            for x in free[1:]:
                e, o = self.extending(marked, x), self.occ[x]
                be, bo = self.extending(marked, best[0]), self.occ[best[0]]
                if e * bo > be * o:
                    best = [x]
                elif e * bo == be * o:
                    best.append(x)
            return best
        raise PreconditionError(f"unhandled strategy {strat}")


def _argbest(items: list[int], score) -> list[int]:
    top = max(score(x) for x in items)
    return [x for x in items if score(x) == top]


def _mask(symbols: Iterable[int]) -> int:
    out = 0
    for x in symbols:
        out |= 1 << x
    return out


def candidates(w: Word | str | Sequence[int], marked: Iterable[int], strat: Strategy | str) -> frozenset[int]:
    """Symbols the strategy allows to be marked next."""
    w = as_word(w)
    strat = Strategy.parse(strat) if isinstance(strat, str) else strat
    board = _Board(w)
    mask = _mask(marked)
    if mask == board.full:
        raise PreconditionError("every symbol is already marked")
    return frozenset(board.candidates(mask, strat))


def greedy_run(w: Word | str | Sequence[int], strat: Strategy | str) -> tuple[tuple[int, ...], int]:
    """One deterministic run that always takes the smallest permitted symbol."""
    w = as_word(w)
    if len(w) == 0:
        raise PreconditionError("greedy run needs a nonempty word")
    strat = Strategy.parse(strat) if isinstance(strat, str) else strat
    board = _Board(w)
    marked = blocks = peak = 0
    order = []
    while marked != board.full:
        x = min(board.candidates(marked, strat))
        blocks += board.gain(marked, x)
        peak = max(peak, blocks)
        marked |= 1 << x
        order.append(x)
    return tuple(order), peak


def greedy_best(w: Word | str | Sequence[int], strat: Strategy | str, cap: int = GREEDY_CAP) -> tuple[int, tuple[int, ...]]:
    """Smallest peak over all runs the strategy permits, with the lexicographically
    smallest such run."""
    w = as_word(w)
    strat = Strategy.parse(strat) if isinstance(strat, str) else strat
    if w.sigma > cap:
        raise ResourceLimitError(f"greedy search capped at {cap} symbols")
    if len(w) == 0:
        return 0, ()
    board = _Board(w)

    @lru_cache(maxsize=None)
    def rest(marked: int, blocks: int) -> int:
        if marked == board.full:
            return 0
        return min(
            max(blocks + board.gain(marked, x), rest(marked | 1 << x, blocks + board.gain(marked, x)))
            for x in board.candidates(marked, strat)
        )

    value = rest(0, 0)
    order = []
    marked = blocks = 0
    while marked != board.full:
        for x in sorted(board.candidates(marked, strat)):
            after = blocks + board.gain(marked, x)
            if max(after, rest(marked | 1 << x, after)) <= value:
                order.append(x)
                marked |= 1 << x
                blocks = after
                break
    return value, tuple(order)


def psi(w: Word | str | Sequence[int], strat: Strategy | str) -> Fraction:
    """Best greedy peak divided by the locality number."""
    return Fraction(greedy_best(w, strat)[0], locality_subset_dp(w)[0])


def _named(symbols: list[int], names: list[str]) -> Word:
    return Word(tuple(symbols), tuple(names))


def be_family(l: int) -> Word:
    """x1 y x2 y ... xl y."""
    _check_length(l)
    xs = [f"x{i + 1}" for i in range(l)]
    return _named([s for i in range(l) for s in (i, l)], xs + ["y"])


def alpha6_family(l: int) -> Word:
    """(x1..xl)^2 x1 b1 x2 b2 ... b(l-1) xl with b_i = (y(2i-1) y(2i))^4."""
    _check_length(l)
    xs = list(range(l))
    symbols = xs + xs + [0]
    for i in range(1, l):
        a, b = l + 2 * (i - 1), l + 2 * (i - 1) + 1
        symbols += [a, b] * 4 + [i]
    names = [f"x{i + 1}" for i in range(l)] + [f"y{j + 1}" for j in range(2 * (l - 1))]
    return _named(symbols, names)


def gamma_family(l: int) -> Word:
    """x1..xl x1 y1 x2 y2 ... y(l-1) xl."""
    _check_length(l)
    symbols = list(range(l)) + [0]
    for i in range(1, l):
        symbols += [l + i - 1, i]
    names = [f"x{i + 1}" for i in range(l)] + [f"y{j + 1}" for j in range(l - 1)]
    return _named(symbols, names)


def delta_family(l: int) -> Word:
    """x1..xl x1 xl x2 x(l-1) ... x(l/2) x(l/2+1); l must be even."""
    _check_length(l)
    if l % 2:
        raise PreconditionError("delta family needs an even length parameter")
    symbols = list(range(l))
    for i in range(l // 2):
        symbols += [i, l - 1 - i]
    return _named(symbols, [f"x{i + 1}" for i in range(l)])


FAMILIES = {"be": be_family, "alpha6": alpha6_family, "gamma": gamma_family, "delta": delta_family}


def families(name: str, l: int) -> Word:
    try:
        build = FAMILIES[name]
    except KeyError:
        raise PreconditionError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return build(l)


def _check_length(l: int) -> None:
    if l < 2:
        raise PreconditionError("family length parameter must be at least 2")
