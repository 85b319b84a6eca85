"""Command-line interface.

Exit codes: 0 success, 2 bad input, 3 solver size cap exceeded, 4 internal bound
violated (a bug).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Any, Callable

from . import formats
from .errors import ContractViolation, LocalityError, ResourceLimitError
from .graphs import (
    MultiGraph,
    cutwidth_exact,
    cutwidth_of_arrangement,
    is_valid_path_decomposition,
    pathwidth_exact,
)
from .greedy import Strategy, families, greedy_best, greedy_run, psi
from .hardness import build_gadget, verify_gadget
from .reductions import (
    arrangement_to_marking,
    build_G_alpha,
    build_G_prime,
    build_H_alpha,
    build_H_alpha_k,
    cycle_from_vertices,
    locality_via_cutwidth,
    locality_via_pathwidth,
    marking_to_arrangement,
    path_decomposition_to_marking,
    pd_Gprime_to_arrangement,
    words_from_graph,
)
from .words import (
    Word,
    condense,
    locality_bruteforce,
    locality_subset_dp,
    marking_number,
    tightness_alpha,
    tightness_beta,
    zimin,
)

LOC_METHODS: dict[str, Callable] = {
    "dp": locality_subset_dp,
    "bruteforce": locality_bruteforce,
    "via-cutwidth": locality_via_cutwidth,
    "via-pathwidth": locality_via_pathwidth,
}


@dataclass
class RunReport:
    command: str
    digest: str
    value: Any
    certificate: Any
    valid: bool
    elapsed_ms: float

    def as_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "value": self.value,
                "certificate": self.certificate,
                "valid": self.valid,
                "elapsed_ms": round(self.elapsed_ms, 3),
            }
        )


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise formats.ParseError(f"cannot read {path}: {exc.strerror}") from None


def _word_arg(raw: str, tokens: bool) -> tuple[Word, str]:
    """A word literal, or the first word of a file when the argument names one."""
    if os.path.isfile(raw):
        text = _read(raw)
        words = formats.read_words(text, tokens or None)
        if not words:
            raise formats.ParseError(f"{raw} holds no word")
        return words[0], text
    return formats.parse_word(raw, tokens or None), raw


def _write_cert(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _loc_one(w: Word, method: str) -> tuple[int, tuple[int, ...], bool]:
    k, s = LOC_METHODS[method](w)
    valid = len(w) == 0 or marking_number(w, s).peak == k
    return k, s, valid


def cmd_loc(args) -> list[RunReport]:
    if args.batch:
        text = _read(args.batch)
        jobs = [(w, line) for w, line in zip(formats.read_words(text, args.tokens or None),
                                             [l for l in text.splitlines() if not l.startswith("#")])]
    else:
        if args.word is None:
            raise formats.ParseError("give a word or --batch FILE")
        w, raw = _word_arg(args.word, args.tokens)
        jobs = [(w, raw)]
    reports = []
    for w, raw in jobs:
        start = time.perf_counter()
        k, s, valid = _loc_one(w, args.method)
        cert = formats.format_sequence(s, w)
        _write_cert(args.cert_out, cert)
        reports.append(RunReport("loc", _digest(raw), k, cert, valid, 1000 * (time.perf_counter() - start)))
    return reports


def cmd_width(args) -> list[RunReport]:
    text = _read(args.graph)
    g = formats.parse_graph(text)
    reports = []
    which = ["cutwidth", "pathwidth"] if args.which == "both" else [args.which]
    for kind in which:
        start = time.perf_counter()
        if kind == "cutwidth":
            k, order = cutwidth_exact(g)
            cert = formats.format_arrangement(order)
            valid = cutwidth_of_arrangement(g, order) == k
        else:
            k, q = pathwidth_exact(g)
            cert = formats.format_path_decomposition(q)
            valid = bool(is_valid_path_decomposition(g, q)) and q.width == k
        _write_cert(args.cert_out if len(which) == 1 else None, cert)
        reports.append(RunReport(kind, _digest(text), k, cert, valid, 1000 * (time.perf_counter() - start)))
    return reports


def _reduce_word(args, w: Word) -> tuple[dict, str | None, bool]:
    w = condense(w)
    if args.kind == "word2cut":
        r = build_H_alpha_k(w, args.k) if args.k else build_H_alpha(w)
        value = {"product": formats.format_graph(r.product)}
        if not args.translate:
            return value, None, True
        order = formats.parse_arrangement(_read(args.translate))
        s = arrangement_to_marking(w, r, order)
        width = cutwidth_of_arrangement(r.product, order)
        peak = marking_number(w, s).peak
        value.update(arrangement_cutwidth=width, marking_number=peak)
        return value, formats.format_sequence(s, w), peak <= width // 2 + 1
    r = build_G_alpha(w)
    value = {"product": formats.format_graph(r.product)}
    if not args.translate:
        return value, None, True
    q = formats.parse_path_decomposition(_read(args.translate))
    s = path_decomposition_to_marking(w, q)
    peak = marking_number(w, s).peak
    value.update(decomposition_width=q.width, marking_number=peak)
    return value, formats.format_sequence(s, w), peak <= q.width


def _reduce_graph(args, g: MultiGraph) -> tuple[dict, str | None, bool]:
    if args.kind == "graph2word":
        cycle = None
        if args.cycle:
            cycle = cycle_from_vertices(g, formats.parse_arrangement(_read(args.cycle)))
        cands = words_from_graph(g, cycle, all_edges=args.all_edges)
        lines = []
        for i, c in enumerate(cands):
            lines.append(f"# candidate {i} anchor {c.anchor} cut {c.edge.tail} {c.edge.head}")
            lines.append(formats.format_word(c.word))
        value = {"product": "\n".join(lines) + "\n"}
        if not args.translate:
            return value, None, True
        cand = cands[args.candidate]
        s = formats.parse_sequence(_read(args.translate), cand.word)
        order = marking_to_arrangement(g, cand.word, s)
        width = cutwidth_of_arrangement(g, order)
        peak = marking_number(cand.word, s).peak
        value.update(marking_number=peak, arrangement_cutwidth=width)
        return value, formats.format_arrangement(order), width <= peak
    r = build_G_prime(g)
    value = {"product": formats.format_graph(r.product)}
    if not args.translate:
        return value, None, True
    q = formats.parse_path_decomposition(_read(args.translate))
    order = pd_Gprime_to_arrangement(g, q)
    width = cutwidth_of_arrangement(g, order)
    value.update(decomposition_width=q.width, arrangement_cutwidth=width)
    return value, formats.format_arrangement(order), width <= q.width


def cmd_reduce(args) -> list[RunReport]:
    start = time.perf_counter()
    if args.kind in ("word2cut", "word2pw"):
        w, raw = _word_arg(args.input, args.tokens)
        value, cert, valid = _reduce_word(args, w)
    else:
        raw = _read(args.input)
        value, cert, valid = _reduce_graph(args, formats.parse_graph(raw))
    if cert is not None:
        _write_cert(args.cert_out, cert)
    return [RunReport("reduce", _digest(raw), value, cert, valid, 1000 * (time.perf_counter() - start))]


def cmd_greedy(args) -> list[RunReport]:
    start = time.perf_counter()
    if args.family:
        name, _, size = args.family.partition(":")
        try:
            w = families(name, int(size))
        except ValueError:
            raise formats.ParseError(f"bad family spec {args.family!r}; expected name:length") from None
        raw = args.family
    elif args.word is not None:
        w, raw = _word_arg(args.word, args.tokens)
    else:
        raise formats.ParseError("give a word or --family name:length")
    strat = Strategy.parse(args.strategy)
    if args.single:
        s, peak = greedy_run(w, strat)
    else:
        peak, s = greedy_best(w, strat)
    value: dict[str, Any] = {"greedy": peak}
    if args.ratio:
        loc = locality_subset_dp(w)[0]
        ratio = psi(w, strat) if not args.single else None
        value.update(loc=loc, psi=str(ratio) if ratio is not None else f"{peak}/{loc}")
    valid = marking_number(w, s).peak == peak
    cert = formats.format_sequence(s, w)
    return [RunReport("greedy", _digest(raw), value, cert, valid, 1000 * (time.perf_counter() - start))]


def cmd_gadget(args) -> list[RunReport]:
    start = time.perf_counter()
    text = _read(args.graph)
    gadget = build_gadget(formats.parse_graph(text), args.size)
    value: dict[str, Any] = {"word": formats.format_word(gadget.word), "threshold": gadget.threshold}
    valid = True
    if args.verify:
        check = verify_gadget(gadget)
        value.update(locality=check.locality, has_clique=check.has_clique, consistent=check.consistent)
        valid = check.consistent
    return [RunReport("gadget", _digest(text), value, None, valid, 1000 * (time.perf_counter() - start))]


def cmd_family(args) -> list[RunReport]:
    start = time.perf_counter()
    p = args.params
    try:
        if args.name == "zimin":
            w = zimin(*p)
        elif args.name == "alpha":
            w = tightness_alpha(*p)
        elif args.name == "beta":
            w = tightness_beta(*p)
        else:
            w = families(args.name, *p)
    except TypeError:
        raise formats.ParseError(f"wrong number of parameters for family {args.name!r}") from None
    text = formats.format_word(w)
    return [RunReport("family", _digest(" ".join(map(str, [args.name, *p]))), text, None, True,
                      1000 * (time.perf_counter() - start))]


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON object per result")
    common.add_argument("--tokens", action="store_true", help="read words as whitespace-separated tokens")
    common.add_argument("--cert-out", help="also write the certificate to this file")

    ap = argparse.ArgumentParser(prog="locality", description="Locality number, cutwidth and pathwidth tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("loc", parents=[common], help="locality number of a word")
    p.add_argument("word", nargs="?")
    p.add_argument("--method", choices=sorted(LOC_METHODS), default="dp")
    p.add_argument("--batch", help="file with one word per line")
    p.set_defaults(handler=cmd_loc)

    p = sub.add_parser("width", parents=[common], help="exact cutwidth or pathwidth of a graph file")
    p.add_argument("graph")
    p.add_argument("--which", choices=["cutwidth", "pathwidth", "both"], default="both")
    p.set_defaults(handler=cmd_width)

    p = sub.add_parser("reduce", parents=[common], help="build a reduction product, optionally translating a certificate")
    p.add_argument("input", help="word (or word file) for word2*, graph file for graph2*")
    p.add_argument("--kind", choices=["word2cut", "word2pw", "graph2word", "graph2pw"], required=True)
    p.add_argument("-k", type=int, help="anchor multiplicity for word2cut; omit for the plain adjacency graph")
    p.add_argument("--all-edges", action="store_true", help="graph2word: one word per cycle edge")
    p.add_argument("--cycle", help="graph2word: closed vertex walk of the doubled graph to use")
    p.add_argument("--candidate", type=int, default=0, help="graph2word: which word a certificate refers to")
    p.add_argument("--translate", metavar="CERT", help="certificate for the product to translate back")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("greedy", parents=[common], help="best run of a greedy marking strategy")
    p.add_argument("word", nargs="?")
    p.add_argument("--strategy", required=True, help=", ".join(s.value for s in Strategy))
    p.add_argument("--family", help="name:length, e.g. be:8")
    p.add_argument("--ratio", action="store_true", help="also report loc and the ratio")
    p.add_argument("--single", action="store_true", help="single deterministic run instead of the best run")
    p.set_defaults(handler=cmd_greedy)

    p = sub.add_parser("gadget", parents=[common], help="clique gadget word for a simple graph")
    p.add_argument("graph")
    p.add_argument("size", type=int)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(handler=cmd_gadget)

    p = sub.add_parser("family", parents=[common], help="print a named word family")
    p.add_argument("name", choices=["zimin", "alpha", "beta", "be", "alpha6", "gamma", "delta"])
    p.add_argument("params", type=int, nargs="+")
    p.set_defaults(handler=cmd_family)
    return ap


def _print_text(r: RunReport) -> None:
    if r.command == "family":
        print(r.value)
        return
    if isinstance(r.value, dict):
        product = r.value.get("product")
        if product is not None:
            sys.stdout.write(product)
        for key, val in r.value.items():
            if key != "product":
                print(f"{key}: {val}")
    else:
        print(f"{r.command}: {r.value}")
    if r.certificate is not None:
        cert = r.certificate.rstrip("\n")
        print("certificate:" + ("\n" + cert if "\n" in cert else f" {cert}"))
    print(f"valid: {str(r.valid).lower()}  input: {r.digest}  time: {r.elapsed_ms:.1f} ms")


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        reports = args.handler(args)
    except ContractViolation as exc:
        print(f"error: contract violation: {exc}", file=sys.stderr)
        return 4
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except LocalityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for r in reports:
        print(r.as_json()) if args.json else _print_text(r)
    return 0 if all(r.valid for r in reports) else 4


if __name__ == "__main__":
    sys.exit(main())
