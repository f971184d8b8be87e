"""Generation of strongly 2-connected digraphs under butterfly minors."""

from __future__ import annotations

from .digraph import (
    CanonicalForm,
    Digraph,
    a4,
    bidirected_cycle,
    canonical_form,
    invert,
    is_isomorphic,
    is_strongly_2_connected,
    is_strongly_k_connected,
    parse,
    serialize,
)
from .butterfly import MinorClosure, butterfly_contract, is_butterfly_minor
from .augment import apply_augmentation, enumerate_augmentations, parse_descriptor
from .generate import base_class, generate_closure, oracle_enumerate, verify_generation
from .splitter import find_sequence, validate_sequence

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm",
    "Digraph",
    "MinorClosure",
    "a4",
    "apply_augmentation",
    "base_class",
    "bidirected_cycle",
    "butterfly_contract",
    "canonical_form",
    "enumerate_augmentations",
    "find_sequence",
    "generate_closure",
    "invert",
    "is_butterfly_minor",
    "is_isomorphic",
    "is_strongly_2_connected",
    "is_strongly_k_connected",
    "oracle_enumerate",
    "parse",
    "parse_descriptor",
    "serialize",
    "validate_sequence",
    "verify_generation",
]
