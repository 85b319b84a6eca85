"""Plain-text formats for words, graphs and certificates.

Words: one per line, either whitespace-separated tokens or one character per symbol.
Graphs: a header `n m [multi|simple]`, then m lines `u v`, then optional
`# label i name` comment lines.
Certificates: a marking sequence or arrangement on one line; a path decomposition
with one bag per line (an empty line is an empty bag).
"""
from __future__ import annotations

from typing import Sequence

from .errors import ParseError
from .graphs import MultiGraph, PathDecomposition
from .words import Word


def parse_word(text: str, tokens: bool | None = None) -> Word:
    """Token mode when forced or when the text contains whitespace, else char mode."""
    text = text.strip("\n")
    if tokens is None:
        tokens = any(c.isspace() for c in text.strip())
    parts = text.split() if tokens else list(text)
    if not tokens and any(c.isspace() for c in parts):
        raise ParseError("whitespace inside a character-mode word")
    return Word.intern(parts)


def format_word(w: Word, tokens: bool | None = None) -> str:
    names = [w.name(x) for x in w.symbols]
    if tokens is None:
        tokens = any(len(n) != 1 for n in names)
    return " ".join(names) if tokens else "".join(names)


def read_words(text: str, tokens: bool | None = None) -> list[Word]:
    """One word per line; lines starting with '#' are comments."""
    return [parse_word(line, tokens) for line in text.splitlines() if not line.startswith("#")]


def parse_graph(text: str) -> MultiGraph:
    lines = text.splitlines()
    labels: dict[int, str] = {}
    body = []
    for line in lines:
        stripped = line.strip()
        if stripped.startswith("#"):
            parts = stripped[1:].split(None, 2)
            if len(parts) == 3 and parts[0] == "label":
                try:
                    labels[int(parts[1])] = parts[2]
                except ValueError:
                    raise ParseError(f"bad label line: {line!r}") from None
            continue
        if stripped:
            body.append(stripped)
    if not body:
        raise ParseError("empty graph file")
    head = body[0].split()
    if len(head) not in (2, 3) or (len(head) == 3 and head[2] not in ("multi", "simple")):
        raise ParseError(f"bad header {body[0]!r}; expected 'n m [multi|simple]'")
    try:
        n, m = int(head[0]), int(head[1])
        edges = [tuple(int(t) for t in line.split()) for line in body[1:]]
    except ValueError:
        raise ParseError("non-integer vertex id") from None
    if len(edges) != m or any(len(e) != 2 for e in edges):
        raise ParseError(f"header promises {m} edges, found {len(edges)} edge lines")
    label_tuple = None
    if labels:
        if sorted(labels) != list(range(n)):
            raise ParseError("labels must cover every vertex exactly once")
        label_tuple = tuple(labels[i] for i in range(n))
    try:
        return MultiGraph(n, tuple(edges), label_tuple, simple=len(head) == 3 and head[2] == "simple")
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_graph(g: MultiGraph) -> str:
    lines = [f"{g.n} {g.m} {'simple' if g.simple else 'multi'}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    if g.labels is not None:
        lines += [f"# label {i} {name}" for i, name in enumerate(g.labels)]
    return "\n".join(lines) + "\n"


def parse_sequence(text: str, w: Word) -> tuple[int, ...]:
    """Marking sequence written with the word's own symbol names."""
    text = text.strip()
    single = all(len(w.name(x)) == 1 for x in range(w.sigma))
    tokens = list(text) if single and not any(c.isspace() for c in text) else text.split()
    return tuple(w.index(t) for t in tokens)


def format_sequence(s: Sequence[int], w: Word) -> str:
    names = [w.name(x) for x in s]
    return " ".join(names) if any(len(n) != 1 for n in names) else "".join(names)


def parse_arrangement(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split())
    except ValueError:
        raise ParseError("arrangement must list integer vertex ids") from None


def format_arrangement(order: Sequence[int]) -> str:
    return " ".join(map(str, order))


def parse_path_decomposition(text: str) -> PathDecomposition:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    try:
        return PathDecomposition(tuple(frozenset(int(t) for t in line.split()) for line in lines if not line.startswith("#")))
    except ValueError:
        raise ParseError("bags must list integer vertex ids") from None


def format_path_decomposition(q: PathDecomposition) -> str:
    return "".join(" ".join(map(str, sorted(b))) + "\n" for b in q.bags)
