"""Type-specific constructions for spherical Artin monoids.

Connecting elements, the chain elements u and v, the witness catalog for the
exceptional types, the I2(p) classification and the diameter harness.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from ..core.config import GARSIDE_FIXTURES_DIR
from ..core.debug import log_timing
from ..core.errors import ConfigurationError, DefectError, DifferentComponentError
from ..models.models import WitnessCatalogModel, WitnessEntry
from .coxeter import GroupElement, build_coxeter, parse_type, word_of_permutation
from .langgraph import build_acceptor, essential_transitivity
from .normalform import is_normal
from .structures import ArtinStructure, artin_structure

logger = logging.getLogger(__name__)

Labels = FrozenSet[int]


def artin(descriptor: str) -> ArtinStructure:
    return artin_structure(build_coxeter(parse_type(descriptor)))


def _sets(structure: ArtinStructure, x: GroupElement) -> Tuple[Labels, Labels]:
    return structure.descent_labels(x, "left"), structure.descent_labels(x, "right")


def _fmt(labels) -> str:
    return "{" + ",".join(str(label) for label in sorted(labels)) + "}"


# -- connecting elements ------------------------------------------------------------------


def connecting_element(structure: ArtinStructure, a: int, b: int) -> Tuple[GroupElement, GroupElement]:
    """
    Simples x, y with S(x) = {a}, F(x) = {b}, S(y) = A∖{a} and F(y) = A∖{b}.

    x is the product along the graph path from a to b. y is ∂ of the reversed path
    from a to τ(b), since F(∂s) = A∖τ(S(s)).
    """
    system = structure.system
    path = system.path(a, b)
    if path is None:
        raise DifferentComponentError(f"{a} and {b} lie in different components of {system.name}")
    x = structure.element(path)
    y = structure.right_complement(structure.element(system.path(a, system.tau(b))[::-1]))

    everything = frozenset(system.labels)
    expected = ({a}, {b}, everything - {a}, everything - {b})
    computed = (*_sets(structure, x), *_sets(structure, y))
    if tuple(map(frozenset, expected)) != computed:
        raise DefectError(f"connecting element {a}..{b} in {system.name}",
                          f"expected S,F,S,F = {[_fmt(s) for s in expected]}, got {[_fmt(s) for s in computed]}")
    return x, y


# -- chain elements u and v -------------------------------------------------------------


def check_chain(structure: ArtinStructure, chain: Sequence[int]) -> None:
    """The labels must span a type A subdiagram in the given order."""
    graph = structure.system.graph
    if not chain or len(set(chain)) != len(chain) or any(c not in graph.labels for c in chain):
        raise ConfigurationError(f"invalid chain {list(chain)} for {graph.name}")
    for i, c in enumerate(chain):
        for j in range(i + 1, len(chain)):
            wanted = 3 if j == i + 1 else 2
            if graph.m(c, chain[j]) != wanted:
                raise ConfigurationError(f"chain {list(chain)} is not a type A path in {graph.name}")


def full_chain(structure: ArtinStructure) -> List[int]:
    """The long type A chain used for A_n (1..n) and for B_n, D_n (1..n-1)."""
    graph = structure.system.graph
    if graph.type_tag == "A":
        return list(range(1, graph.rank + 1))
    if graph.type_tag in ("B", "D"):
        return list(range(1, graph.rank))
    raise ConfigurationError(f"no distinguished chain for {graph.name}")


def _half(chain: Sequence[int]) -> int:
    return (len(chain) + 1) // 2


def u_permutation(k: int) -> List[int]:
    """One-line form of i ↦ 2i (i ≤ ⌊k/2⌋) and ⌊k/2⌋ + j ↦ 2j - 1."""
    half = k // 2
    return [2 * i for i in range(1, half + 1)] + [2 * j - 1 for j in range(1, k - half + 1)]


def u_element(structure: ArtinStructure, chain: Sequence[int]) -> GroupElement:
    check_chain(structure, chain)
    k = len(chain) + 1
    word = [chain[a - 1] for a in word_of_permutation(u_permutation(k))]
    u = structure.element(word)
    expected = (frozenset({chain[k // 2 - 1]}), frozenset(chain[i - 1] for i in range(1, 2 * (k // 2), 2)))
    if _sets(structure, u) != expected:
        raise DefectError(f"u for chain {list(chain)}",
                          f"expected {[_fmt(s) for s in expected]}, got {[_fmt(s) for s in _sets(structure, u)]}")
    return u


def v_element(structure: ArtinStructure, chain: Sequence[int]) -> GroupElement:
    """v = (rev u)·D with D the longest element avoiding the middle chain label."""
    u = u_element(structure, chain)
    middle = chain[_half(chain) - 1]
    system = structure.system
    reverse = structure.element(system.reduced_word(u)[::-1])
    d = system.parabolic_longest(label for label in system.labels if label != middle)
    v = structure.partial_product(reverse, d)
    if v is None:
        raise DefectError(f"v for chain {list(chain)} is not simple", "lengths of rev(u) and D do not add")
    finish = structure.descent_labels(v, "right")
    if not finish >= frozenset(system.labels) - {middle}:
        raise DefectError(f"F(v) for chain {list(chain)}", f"{_fmt(finish)} misses labels other than {middle}")
    return v


def v_start_expectation(structure: ArtinStructure) -> Tuple[Labels, bool]:
    """The odd chain labels {1, 3, ...} and whether S(v) must equal them (A, B) or only lie inside (D)."""
    chain = full_chain(structure)
    k = len(chain) + 1
    odd = frozenset(chain[i - 1] for i in range(1, 2 * (k // 2), 2))
    return odd, structure.system.graph.type_tag != "D"


def chain_normal_form_check(structure: ArtinStructure, x: GroupElement, y: GroupElement,
                            chain: Optional[Sequence[int]] = None) -> Tuple[List[GroupElement], bool]:
    """Assemble x|x1|x2|x3|x4|y from connecting elements, u and v; report whether it is normal."""
    chain = list(chain) if chain is not None else full_chain(structure)
    system = structure.system
    middle = chain[_half(chain) - 1]
    a = min(structure.descent_labels(x, "right"), key=system.position)
    b = min((label for label in system.labels if label not in structure.descent_labels(y, "left")),
            key=system.position)
    x1, _ = connecting_element(structure, a, middle)
    x2 = u_element(structure, chain)
    x3 = v_element(structure, chain)
    _, x4 = connecting_element(structure, middle, b)
    word = [x, x1, x2, x3, x4, y]
    return word, is_normal(structure, word)


# -- witness catalog ---------------------------------------------------------------------


def load_witnesses(path: Union[str, Path, None] = None) -> Dict[str, List[WitnessEntry]]:
    path = Path(path) if path is not None else GARSIDE_FIXTURES_DIR / "witnesses.json"
    try:
        with open(path, encoding="utf-8") as handle:
            catalog = WitnessCatalogModel.model_validate(json.load(handle))
    except FileNotFoundError:
        raise ConfigurationError(f"Witness catalog not found: {path}")
    except (json.JSONDecodeError, ValidationError) as e:
        raise ConfigurationError(f"Malformed witness catalog {path}: {str(e)}")
    return catalog.root


@dataclass(frozen=True)
class WitnessCheck:
    type_name: str
    name: str
    word: str
    passed: bool
    detail: str = ""


@log_timing
def verify_witnesses(type_name: str, catalog: Optional[Dict[str, List[WitnessEntry]]] = None) -> List[WitnessCheck]:
    """Each catalog word must be reduced (hence simple) with exactly the listed S and F."""
    catalog = load_witnesses() if catalog is None else catalog
    if type_name not in catalog:
        raise ConfigurationError(f"no witnesses for {type_name}")
    system = build_coxeter(parse_type(type_name))
    checks = []
    for entry in catalog[type_name]:
        w, reduced = system.element_of_word(system.parse_word(entry.word))
        start, finish = system.descents(w, "left"), system.descents(w, "right")
        passed = reduced and start == frozenset(entry.start) and finish == frozenset(entry.finish)
        detail = "" if passed else (
            "not reduced" if not reduced else
            f"expected S={_fmt(entry.start)} F={_fmt(entry.finish)}, got S={_fmt(start)} F={_fmt(finish)}")
        checks.append(WitnessCheck(type_name, entry.name, entry.word, passed, detail))
        logger.debug(f"{type_name} {entry.name}: {'ok' if passed else detail}")
    return checks


# -- I2(p) --------------------------------------------------------------------------------

# Middle factor joining a simple of the row type to one of the column type; "" means directly
I2_CONNECTIONS: Dict[Tuple[str, str], str] = {
    ("a", "a"): "", ("a", "b"): "21", ("a", "c"): "", ("a", "d"): "21",
    ("b", "a"): "", ("b", "b"): "21", ("b", "c"): "", ("b", "d"): "21",
    ("c", "a"): "12", ("c", "b"): "", ("c", "c"): "12", ("c", "d"): "",
    ("d", "a"): "12", ("d", "b"): "", ("d", "c"): "12", ("d", "d"): "",
}


def i2_classify(structure: ArtinStructure, s: GroupElement) -> Tuple[str, int]:
    """
    (tag, k) of a proper simple of I2(p):
    a = 2(12)^k, b = 1(21)^k2, c = 2(12)^k1, d = 1(21)^k.
    """
    if structure.system.graph.type_tag != "I2":
        raise ConfigurationError(f"{structure.name} is not of type I2(p)")
    if not structure.is_proper(s):
        raise ConfigurationError("only proper simples are classified")
    word = structure.system.reduced_word(s)
    tag = {(2, 2): "a", (1, 2): "b", (2, 1): "c", (1, 1): "d"}[(word[0], word[-1])]
    return tag, (len(word) - 1) // 2


def i2_connection_table() -> Dict[Tuple[str, str], str]:
    return dict(I2_CONNECTIONS)


def validate_i2_connections(p: int) -> List[Tuple[str, str]]:
    """Pairs (display s1, display s2) for which the tabulated connection is not normal."""
    structure = artin(f"I2({p})")
    proper = structure.proper_simples()
    tags = {s: i2_classify(structure, s)[0] for s in proper}
    failures = []
    for s1 in proper:
        for s2 in proper:
            middle = I2_CONNECTIONS[(tags[s1], tags[s2])]
            word = [s1, structure.element(middle), s2] if middle else [s1, s2]
            if not is_normal(structure, word):
                failures.append((structure.display(s1), structure.display(s2)))
    if failures:
        logger.warning(f"I2({p}): {len(failures)} connections fail")
    return failures


# -- diameters ----------------------------------------------------------------------------

EXPECTED_DIAMETERS: Dict[str, int] = {
    "A2": 2, "A3": 4, "A4": 5, "A5": 5,
    "B2": 2, "B3": 4, "B4": 4, "B5": 5,
    "D3": 4, "D4": 4, "D5": 4,
    "H3": 3, "H4": 3, "F4": 3, "E6": 4,
    "I2(3)": 2, "I2(5)": 2, "I2(7)": 2,
}

LIGHT_TYPES = ("A2", "A3", "A4", "B2", "B3", "B4", "D3", "D4", "H3", "I2(3)", "I2(5)", "I2(7)")
HEAVY_TYPES = ("A5", "B5", "D5", "F4", "H4", "E6")


@dataclass(frozen=True)
class HarnessRow:
    type_name: str
    transitive: bool
    diameter: Optional[int]
    expected: Optional[int]

    @property
    def passed(self) -> bool:
        if not self.transitive or self.diameter is None or self.diameter > 5:
            return False
        return self.expected is None or self.diameter == self.expected


@log_timing
def transitivity_theorem_harness(heavy: bool = False, types: Optional[Sequence[str]] = None) -> List[HarnessRow]:
    """Irreducible types are essentially transitive with diameter at most 5."""
    types = list(types) if types is not None else list(LIGHT_TYPES) + (list(HEAVY_TYPES) if heavy else [])
    rows = []
    for type_name in types:
        result = essential_transitivity(build_acceptor(artin(type_name)))
        rows.append(HarnessRow(type_name, result.transitive, result.diameter, EXPECTED_DIAMETERS.get(type_name)))
    return rows
