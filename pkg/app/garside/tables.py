"""Explicit lattice tables: hand-encoded toy monoids and materialized framings."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from pydantic import ValidationError

from ..core.config import GARSIDE_FIXTURES_DIR
from ..core.errors import ConfigurationError, TableValidationError
from ..models.models import GarsideTableModel
from .structures import GarsideStructure

logger = logging.getLogger(__name__)

ONE = 0


@dataclass
class GarsideTable:
    name: str
    displays: Dict[int, str]
    delta: int
    products: Dict[Tuple[int, int], int]
    # derived at validation
    left_div: Dict[Tuple[int, int], int] = field(default_factory=dict, repr=False)
    prefixes: Dict[int, FrozenSet[int]] = field(default_factory=dict, repr=False)
    suffixes: Dict[int, FrozenSet[int]] = field(default_factory=dict, repr=False)
    right_comp: Dict[int, int] = field(default_factory=dict, repr=False)
    left_comp: Dict[int, int] = field(default_factory=dict, repr=False)
    atoms: List[int] = field(default_factory=list, repr=False)
    meets: Dict[Tuple[int, int], int] = field(default_factory=dict, repr=False)

    @property
    def ids(self) -> List[int]:
        return sorted(self.displays)


def table_from_model(model: GarsideTableModel) -> GarsideTable:
    displays = {entry.id: entry.display for entry in model.simples}
    displays.setdefault(ONE, "1")
    products: Dict[Tuple[int, int], int] = {}
    for u, v, w in model.products:
        if (u, v) in products and products[(u, v)] != w:
            raise TableValidationError("product table is not a function", (u, v))
        products[(u, v)] = w
    return GarsideTable(model.name, displays, model.delta, products)


def load_table(path: Union[str, Path]) -> GarsideTable:
    """Load a table from JSON; bare file names are looked up in the fixtures directory."""
    path = Path(path)
    if not path.exists() and (GARSIDE_FIXTURES_DIR / path).exists():
        path = GARSIDE_FIXTURES_DIR / path
    try:
        with open(path, encoding="utf-8") as handle:
            model = GarsideTableModel.model_validate(json.load(handle))
    except FileNotFoundError:
        raise ConfigurationError(f"Table file not found: {path}")
    except (json.JSONDecodeError, ValidationError) as e:
        raise TableValidationError(f"malformed table file {path}: {str(e)}")
    logger.info(f"Loaded table {model.name} from {path}")
    return validate_table(table_from_model(model))


def validate_table(table: GarsideTable, full: bool = True) -> GarsideTable:
    """
    Check the Garside axioms on a finite table and fill in the derived data.

    With `full=False` the cubic checks (associativity, brute-force meets) are
    skipped; framings are associative by construction.
    """
    ids = table.ids
    known = set(ids)
    delta = table.delta
    if delta not in known:
        raise TableValidationError(f"delta id {delta} is not a listed simple")
    if delta == ONE:
        raise TableValidationError("Δ coincides with the identity")

    products = dict(table.products)
    for (u, v), w in table.products.items():
        for x in (u, v, w):
            if x not in known:
                raise TableValidationError(f"unknown simple id {x}", (u, v))
    for x in ids:
        for pair in ((ONE, x), (x, ONE)):
            if products.setdefault(pair, x) != x:
                raise TableValidationError("identity rows disagree", pair)

    left_div: Dict[Tuple[int, int], int] = {}
    right_div: Dict[Tuple[int, int], int] = {}
    for (u, v), w in products.items():
        if left_div.setdefault((u, w), v) != v:
            raise TableValidationError("left cancellativity fails", (u, v))
        if right_div.setdefault((v, w), u) != u:
            raise TableValidationError("right cancellativity fails", (u, v))

    prefixes = {x: set() for x in ids}
    suffixes = {x: set() for x in ids}
    for (u, v), w in products.items():
        prefixes[w].add(u)
        suffixes[w].add(v)

    for x in ids:
        for y in prefixes[x]:
            if y != x and x in prefixes[y]:
                raise TableValidationError("prefix relation is not antisymmetric", (x, y))
            if not prefixes[y] <= prefixes[x]:
                raise TableValidationError("prefix relation is not transitive", (y, x))

    for (u, v), uv in (products.items() if full else ()):
        for w in ids:
            vw = products.get((v, w))
            left = products.get((uv, w))
            if vw is not None and left is not None and products.get((u, vw)) != left:
                raise TableValidationError("partial product is not associative", (u, v))

    if prefixes[delta] != known or suffixes[delta] != known:
        raise TableValidationError("Δ is not balanced: some simple is not a left and right divisor", (delta, delta))

    right_comp, left_comp = {}, {}
    for x in ids:
        right = [v for v in ids if products.get((x, v)) == delta]
        left = [v for v in ids if products.get((v, x)) == delta]
        if len(right) != 1 or len(left) != 1:
            raise TableValidationError("complement is missing or not unique", (x, delta))
        right_comp[x], left_comp[x] = right[0], left[0]

    meets: Dict[Tuple[int, int], int] = {}
    for x in (ids if full else ()):
        for y in ids:
            common = prefixes[x] & prefixes[y]
            tops = [m for m in common if common <= prefixes[m]]
            if len(tops) != 1:
                raise TableValidationError("prefix order has no meet", (x, y))
            meets[(x, y)] = tops[0]

    atoms = [x for x in ids if x != ONE and prefixes[x] == {ONE, x}]
    if not atoms:
        raise TableValidationError("table has no atoms")

    table.products = products
    table.left_div = left_div
    table.prefixes = {x: frozenset(p) for x, p in prefixes.items()}
    table.suffixes = {x: frozenset(s) for x, s in suffixes.items()}
    table.right_comp, table.left_comp = right_comp, left_comp
    table.atoms = atoms
    table.meets = meets
    logger.debug(f"Validated table {table.name}: {len(ids)} simples, {len(atoms)} atoms")
    return table


class TableStructure(GarsideStructure):
    """Garside structure backed by lookups into a validated GarsideTable."""

    def __init__(self, table: GarsideTable):
        super().__init__()
        self.table = table
        self.name = f"table:{table.name}"
        atom_set = set(table.atoms)
        self._start = {x: frozenset(p & atom_set) for x, p in table.prefixes.items()}
        self._finish = {x: frozenset(s & atom_set) for x, s in table.suffixes.items()}

    @property
    def one(self) -> int:
        return ONE

    @property
    def delta(self) -> int:
        return self.table.delta

    def atoms(self) -> List[int]:
        return list(self.table.atoms)

    def simple_count(self) -> int:
        return len(self.table.displays)

    def _materialize(self) -> List[int]:
        return [x for x in self.table.ids if x not in (ONE, self.table.delta)]

    def partial_product(self, x, y) -> Optional[int]:
        return self.table.products.get((x, y))

    def left_quotient(self, x, y) -> Optional[int]:
        return self.table.left_div.get((x, y))

    def right_complement(self, x) -> int:
        return self.table.right_comp[x]

    def left_complement(self, x) -> int:
        return self.table.left_comp[x]

    def starting_set(self, x) -> FrozenSet[int]:
        return self._start[x]

    def finishing_set(self, x) -> FrozenSet[int]:
        return self._finish[x]

    def meet_bruteforce(self, x, y) -> int:
        """Maximum common prefix over the materialized order."""
        return self.table.meets[(x, y)]

    def display(self, x) -> str:
        return self.table.displays[x]


def table_structure(table: Union[GarsideTable, str, Path]) -> TableStructure:
    if not isinstance(table, GarsideTable):
        table = load_table(table)
    elif not table.atoms:
        table = validate_table(table)
    return TableStructure(table)
