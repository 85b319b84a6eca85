"""Locality number of words, with cutwidth and pathwidth reductions."""
from .errors import (
    ContractViolation,
    InvalidCertificateError,
    LocalityError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
)
from .graphs import MultiGraph, PathDecomposition, cutwidth_exact, pathwidth_exact
from .greedy import Strategy, greedy_best, psi
from .hardness import build_gadget, verify_gadget
from .reductions import (
    cutwidth_via_locality,
    cutwidth_via_pathwidth,
    locality_via_cutwidth,
    locality_via_pathwidth,
)
from .words import Word, condense, locality, locality_bruteforce, locality_subset_dp, marking_number

__all__ = [
    "ContractViolation",
    "InvalidCertificateError",
    "LocalityError",
    "MultiGraph",
    "ParseError",
    "PathDecomposition",
    "PreconditionError",
    "ResourceLimitError",
    "Strategy",
    "Word",
    "build_gadget",
    "condense",
    "cutwidth_exact",
    "cutwidth_via_locality",
    "cutwidth_via_pathwidth",
    "greedy_best",
    "locality",
    "locality_bruteforce",
    "locality_subset_dp",
    "locality_via_cutwidth",
    "locality_via_pathwidth",
    "marking_number",
    "pathwidth_exact",
    "psi",
    "verify_gadget",
]
