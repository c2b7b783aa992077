"""Garside structures over opaque simple handles.

Every backend supplies a handful of primitives (atoms, partial products, left
quotients, complements, starting and finishing sets); meets, joins, ``x\\y`` and
Δ-purity are derived from them here.
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, List, Optional, Tuple

from ..core.config import GARSIDE_SIMPLES_CAP
from ..core.debug import log_timing
from ..core.errors import ConfigurationError, EnumerationTooLargeError
from .coxeter import CoxeterSystem, GroupElement

logger = logging.getLogger(__name__)

Simple = Hashable


class GarsideStructure(ABC):
    """Uniform interface to the simple elements of a Garside monoid."""

    name: str = "garside"
    # Class quotients by (S, F) are only sound where the edge law is descent-determined
    descent_determined: bool = False

    def __init__(self):
        self._meet_cache: Dict[Tuple[Simple, Simple, bool], Simple] = {}

    # -- primitives ---------------------------------------------------------------

    @property
    @abstractmethod
    def one(self) -> Simple: ...

    @property
    @abstractmethod
    def delta(self) -> Simple: ...

    @abstractmethod
    def atoms(self) -> List[Simple]: ...

    @abstractmethod
    def _materialize(self) -> List[Simple]:
        """All proper simples in a deterministic order."""

    @abstractmethod
    def simple_count(self) -> int:
        """Number of simples including ONE and Δ, without materializing them."""

    @abstractmethod
    def partial_product(self, x: Simple, y: Simple) -> Optional[Simple]: ...

    @abstractmethod
    def left_quotient(self, x: Simple, y: Simple) -> Optional[Simple]:
        """The simple t with x·t = y, or None when x is not a prefix of y."""

    @abstractmethod
    def right_complement(self, x: Simple) -> Simple: ...

    @abstractmethod
    def left_complement(self, x: Simple) -> Simple: ...

    @abstractmethod
    def starting_set(self, x: Simple) -> FrozenSet[Simple]: ...

    @abstractmethod
    def finishing_set(self, x: Simple) -> FrozenSet[Simple]: ...

    @abstractmethod
    def display(self, x: Simple) -> str: ...

    # -- derived --------------------------------------------------------------------

    def proper_simples(self, cap: Optional[int] = None) -> List[Simple]:
        cap = GARSIDE_SIMPLES_CAP if cap is None else cap
        count = self.simple_count() - 2
        if count > cap:
            raise EnumerationTooLargeError(f"proper simples of {self.name}", count, cap)
        return self._proper

    @cached_property
    def _proper(self) -> List[Simple]:
        return self._materialize()

    def simples(self, cap: Optional[int] = None) -> List[Simple]:
        return [self.one, *self.proper_simples(cap), self.delta]

    @cached_property
    def _atom_rank(self) -> Dict[Simple, int]:
        return {a: i for i, a in enumerate(self.atoms())}

    def is_proper(self, x: Simple) -> bool:
        return x != self.one and x != self.delta

    def is_prefix(self, x: Simple, y: Simple) -> bool:
        return self.left_quotient(x, y) is not None

    def right_quotient(self, y: Simple, d: Simple) -> Optional[Simple]:
        """The simple t with t·d = y, or None when d is not a suffix of y."""
        return self.left_quotient(self.left_complement(y), self.left_complement(d))

    def is_suffix(self, d: Simple, y: Simple) -> bool:
        return self.right_quotient(y, d) is not None

    def multiply_simples(self, x: Simple, y: Simple) -> Simple:
        product = self.partial_product(x, y)
        if product is None:
            raise ValueError(f"{self.display(x)}·{self.display(y)} is not simple in {self.name}")
        return product

    def meet(self, x: Simple, y: Simple, descending: bool = False) -> Simple:
        """Prefix meet x ∧ y by greedy common-divisor ascent."""
        key = (x, y, descending)
        cached = self._meet_cache.get(key)
        if cached is not None:
            return cached
        d, rx, ry = self.one, x, y
        while True:
            common = self.starting_set(rx) & self.starting_set(ry)
            if not common:
                break
            pick = (max if descending else min)(common, key=self._atom_rank.__getitem__)
            d = self.partial_product(d, pick)
            rx = self.left_quotient(pick, rx)
            ry = self.left_quotient(pick, ry)
        self._meet_cache[key] = d
        return d

    def suffix_meet(self, x: Simple, y: Simple) -> Simple:
        """Greatest common suffix, greedy with finishing sets."""
        d, rx, ry = self.one, x, y
        while True:
            common = self.finishing_set(rx) & self.finishing_set(ry)
            if not common:
                return d
            pick = min(common, key=self._atom_rank.__getitem__)
            d = self.partial_product(pick, d)
            rx = self.right_quotient(rx, pick)
            ry = self.right_quotient(ry, pick)

    def join(self, x: Simple, y: Simple) -> Simple:
        # ∂ is an order-reversing bijection from prefix order to suffix order
        return self.left_complement(self.suffix_meet(self.right_complement(x), self.right_complement(y)))

    def under(self, x: Simple, y: Simple) -> Simple:
        """x\\y, the simple with x·(x\\y) = x ∨ y."""
        return self.left_quotient(x, self.join(x, y))

    def normal_pair(self, x: Simple, y: Simple) -> bool:
        """x|y, i.e. ∂x ∧ y = 1, read off the starting sets."""
        return not (self.starting_set(self.right_complement(x)) & self.starting_set(y))

    def find(self, text: str) -> Simple:
        """Resolve a display name back to its handle."""
        for x in self.simples():
            if self.display(x) == text:
                return x
        raise ConfigurationError(f"{text!r} is not a simple of {self.name}")


class ArtinStructure(GarsideStructure):
    """Spherical Artin monoid: simples are Coxeter group elements, Δ is w0."""

    descent_determined = True

    def __init__(self, system: CoxeterSystem):
        super().__init__()
        self.system = system
        self.name = f"artin:{system.name}"
        self._atom_of = dict(system.generators)
        self._label_of = {element: label for label, element in self._atom_of.items()}
        self._start: Dict[GroupElement, FrozenSet[GroupElement]] = {}
        self._finish: Dict[GroupElement, FrozenSet[GroupElement]] = {}

    @property
    def one(self) -> GroupElement:
        return self.system.identity

    @property
    def delta(self) -> GroupElement:
        return self.system.longest

    def atoms(self) -> List[GroupElement]:
        return [self._atom_of[label] for label in self.system.labels]

    def atom(self, label: int) -> GroupElement:
        return self._atom_of[label]

    def label(self, atom: GroupElement) -> int:
        return self._label_of[atom]

    def simple_count(self) -> int:
        return self.system.order()

    def _materialize(self) -> List[GroupElement]:
        return [w for w in self.system.enumerate_group(cap=self.simple_count())
                if w != self.one and w != self.delta]

    def element(self, word) -> GroupElement:
        """Simple from a reduced word (string of digits or label sequence)."""
        letters = self.system.parse_word(word) if isinstance(word, str) else list(word)
        w, reduced = self.system.element_of_word(letters)
        if not reduced:
            raise ConfigurationError(f"{word!r} is not a reduced word of {self.system.name}")
        return w

    def partial_product(self, x, y):
        z = self.system.multiply(x, y)
        return z if self.system.length(z) == self.system.length(x) + self.system.length(y) else None

    def left_quotient(self, x, y):
        t = self.system.multiply(self.system.inverse(x), y)
        return t if self.system.length(x) + self.system.length(t) == self.system.length(y) else None

    def right_complement(self, x):
        return self.system.multiply(self.system.inverse(x), self.delta)

    def left_complement(self, x):
        return self.system.multiply(self.delta, self.system.inverse(x))

    def starting_set(self, x):
        cached = self._start.get(x)
        if cached is None:
            cached = frozenset(self._atom_of[l] for l in self.system.descents(x, "left"))
            self._start[x] = cached
        return cached

    def finishing_set(self, x):
        cached = self._finish.get(x)
        if cached is None:
            cached = frozenset(self._atom_of[l] for l in self.system.descents(x, "right"))
            self._finish[x] = cached
        return cached

    def descent_labels(self, x, side: str = "left") -> FrozenSet[int]:
        return self.system.descents(x, side)

    def normal_pair_by_descents(self, x, y) -> bool:
        """x|y iff S(y) ⊆ F(x) in a spherical Artin monoid."""
        return self.starting_set(y) <= self.finishing_set(x)

    def descent_class(self, x) -> Tuple[int, int]:
        position = self.system.position
        start = sum(1 << position(l) for l in self.system.descents(x, "left"))
        finish = sum(1 << position(l) for l in self.system.descents(x, "right"))
        return start, finish

    def display(self, x) -> str:
        if x == self.one:
            return "e"
        word = self.system.reduced_word(x)
        separator = "." if any(label >= 10 for label in word) else ""
        return separator.join(str(label) for label in word)


def artin_structure(system: CoxeterSystem) -> ArtinStructure:
    return ArtinStructure(system)


class DirectProduct(GarsideStructure):
    """G × H with componentwise operations; Δ = (Δ_G, Δ_H)."""

    def __init__(self, g: GarsideStructure, h: GarsideStructure):
        super().__init__()
        self.g, self.h = g, h
        self.name = f"prod:{g.name},{h.name}"

    @property
    def one(self):
        return (self.g.one, self.h.one)

    @property
    def delta(self):
        return (self.g.delta, self.h.delta)

    def atoms(self):
        return [(a, self.h.one) for a in self.g.atoms()] + [(self.g.one, b) for b in self.h.atoms()]

    def simple_count(self) -> int:
        return self.g.simple_count() * self.h.simple_count()

    def _materialize(self):
        return [(x, y) for x in self.g.simples() for y in self.h.simples()
                if (x, y) != self.one and (x, y) != self.delta]

    def _both(self, left, right):
        return None if left is None or right is None else (left, right)

    def partial_product(self, x, y):
        return self._both(self.g.partial_product(x[0], y[0]), self.h.partial_product(x[1], y[1]))

    def left_quotient(self, x, y):
        return self._both(self.g.left_quotient(x[0], y[0]), self.h.left_quotient(x[1], y[1]))

    def right_complement(self, x):
        return (self.g.right_complement(x[0]), self.h.right_complement(x[1]))

    def left_complement(self, x):
        return (self.g.left_complement(x[0]), self.h.left_complement(x[1]))

    def starting_set(self, x):
        return frozenset({(a, self.h.one) for a in self.g.starting_set(x[0])}
                         | {(self.g.one, b) for b in self.h.starting_set(x[1])})

    def finishing_set(self, x):
        return frozenset({(a, self.h.one) for a in self.g.finishing_set(x[0])}
                         | {(self.g.one, b) for b in self.h.finishing_set(x[1])})

    def meet(self, x, y, descending: bool = False):
        return (self.g.meet(x[0], y[0], descending), self.h.meet(x[1], y[1], descending))

    def display(self, x) -> str:
        return f"({self.g.display(x[0])},{self.h.display(x[1])})"


def direct_product(g: GarsideStructure, h: GarsideStructure) -> DirectProduct:
    return DirectProduct(g, h)


class Amalgam(GarsideStructure):
    """G *_Δ H: the free product of two Garside monoids amalgamated over Δ_G = Δ_H.

    Handles are (side, factor handle) with side 0 for G and 1 for H; ONE and Δ are
    always stored on side 0.
    """

    def __init__(self, g: GarsideStructure, h: GarsideStructure):
        super().__init__()
        self.factors = (g, h)
        self.name = f"amalgam:{g.name},{h.name}"

    def _norm(self, side: int, x):
        factor = self.factors[side]
        if x == factor.one:
            return (0, self.factors[0].one)
        if x == factor.delta:
            return (0, self.factors[0].delta)
        return (side, x)

    def _in(self, side: int, x):
        # lift an amalgam handle into factor `side`; ONE and Δ exist in both
        if x == self.one:
            return self.factors[side].one
        if x == self.delta:
            return self.factors[side].delta
        return x[1] if x[0] == side else None

    def _side(self, *xs) -> Optional[int]:
        sides = {x[0] for x in xs if self.is_proper(x)}
        if len(sides) > 1:
            return None
        return sides.pop() if sides else 0

    @property
    def one(self):
        return (0, self.factors[0].one)

    @property
    def delta(self):
        return (0, self.factors[0].delta)

    def atoms(self):
        return [(side, a) for side, factor in enumerate(self.factors) for a in factor.atoms()]

    def simple_count(self) -> int:
        return sum(factor.simple_count() - 2 for factor in self.factors) + 2

    def _materialize(self):
        return [(side, x) for side, factor in enumerate(self.factors) for x in factor.proper_simples()]

    def partial_product(self, x, y):
        side = self._side(x, y)
        if side is None:
            return None
        z = self.factors[side].partial_product(self._in(side, x), self._in(side, y))
        return None if z is None else self._norm(side, z)

    def left_quotient(self, x, y):
        side = self._side(x, y)
        if side is None:
            return None
        t = self.factors[side].left_quotient(self._in(side, x), self._in(side, y))
        return None if t is None else self._norm(side, t)

    def right_complement(self, x):
        side = self._side(x)
        return self._norm(side, self.factors[side].right_complement(self._in(side, x)))

    def left_complement(self, x):
        side = self._side(x)
        return self._norm(side, self.factors[side].left_complement(self._in(side, x)))

    def starting_set(self, x):
        if x == self.delta:
            return frozenset(self.atoms())
        return frozenset((x[0], a) for a in self.factors[x[0]].starting_set(x[1]))

    def finishing_set(self, x):
        if x == self.delta:
            return frozenset(self.atoms())
        return frozenset((x[0], a) for a in self.factors[x[0]].finishing_set(x[1]))

    def display(self, x) -> str:
        if x == self.one:
            return "1"
        if x == self.delta:
            return "Δ"
        return f"{'GH'[x[0]]}.{self.factors[x[0]].display(x[1])}"


def amalgam(g: GarsideStructure, h: GarsideStructure) -> Amalgam:
    return Amalgam(g, h)


@dataclass(frozen=True)
class DeltaPurity:
    pure: bool
    witnesses: Dict[Simple, Simple]
    closures: Dict[Simple, FrozenSet[Simple]]


@log_timing
def delta_pure(structure: GarsideStructure) -> DeltaPurity:
    """Compute Δ_a = ⋁{x\\a} for every atom and compare them."""
    witnesses, closures = {}, {}
    atoms = structure.atoms()
    for a in atoms:
        # (uv)\a = v\(u\a): close {a} under v ↦ b\v over atoms b
        seen = {a}
        stack = [a]
        while stack:
            v = stack.pop()
            for b in atoms:
                w = structure.under(b, v)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        closures[a] = frozenset(seen)
        join = structure.one
        for v in seen:
            join = structure.join(join, v)
        witnesses[a] = join
    pure = len(set(witnesses.values())) == 1
    logger.info(f"{structure.name}: Δ-pure={pure}")
    return DeltaPurity(pure, witnesses, closures)
