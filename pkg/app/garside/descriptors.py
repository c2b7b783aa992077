"""Textual structure descriptors used by the CLI and the HTTP API.

    artin:A3                      spherical Artin monoid
    table:aa_bb.json              hand-encoded table (bare names resolve to the fixtures)
    frame:artin:A2:2              framing M(k) of another descriptor
    prod:artin:A2,artin:A2        direct product
    amalgam:table:abc.json,...    amalgamated product over Δ

Arguments of prod/amalgam are split at the first comma outside parentheses, so
nested products are written prod:(prod:artin:A1,artin:A1),artin:A2.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Optional, Tuple

from ..core.errors import ConfigurationError
from .artin import artin
from .framing import framing
from .structures import GarsideStructure, amalgam, direct_product
from .tables import table_structure


def _wrapped(text: str) -> bool:
    """True when the first parenthesis closes at the last character."""
    if not (text.startswith("(") and text.endswith(")")):
        return False
    depth = 0
    for i, ch in enumerate(text):
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if depth == 0:
            return i == len(text) - 1
    return False


def _unwrap(text: str) -> str:
    text = text.strip()
    while _wrapped(text):
        text = text[1:-1].strip()
    return text


def _top_level_comma(text: str) -> Optional[int]:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return i
    return None


def split_pair(text: str) -> Tuple[str, str]:
    i = _top_level_comma(text)
    if i is None:
        raise ConfigurationError(f"expected two comma-separated descriptors in {text!r}")
    return _unwrap(text[:i]), _unwrap(text[i + 1:])


@lru_cache(maxsize=32)
def parse_descriptor(descriptor: str) -> GarsideStructure:
    """Build (and cache) the structure named by `descriptor`."""
    descriptor = _unwrap(descriptor)
    kind, _, rest = descriptor.partition(":")
    kind = kind.strip().lower()
    if not rest:
        raise ConfigurationError(f"malformed structure descriptor {descriptor!r}")
    if kind == "artin":
        return artin(rest)
    if kind == "table":
        return table_structure(rest.strip())
    if kind == "frame":
        inner, _, k = rest.rpartition(":")
        if not inner or not k.strip().isdigit():
            raise ConfigurationError(f"frame descriptor needs the form frame:<descriptor>:<k>, got {descriptor!r}")
        return framing(parse_descriptor(_unwrap(inner)), int(k))
    if kind in ("prod", "amalgam"):
        left, right = split_pair(rest)
        build = direct_product if kind == "prod" else amalgam
        return build(parse_descriptor(left), parse_descriptor(right))
    raise ConfigurationError(f"unknown structure kind {kind!r} in {descriptor!r}")
