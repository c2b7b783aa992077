"""Exact arithmetic in the finite Coxeter groups A_n, B_n, D_n, E6-E8, F4, H3, H4, I2(p).

Group elements are stored as the signed permutation they induce on the positive
roots: entry j is the index of the image of root j, or its bitwise complement
``~k`` when the image is the negative root -β_k.  This is canonical and hashable
for every type, so equality, products and inverses are plain tuple operations.
"""
from __future__ import annotations

import logging
import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..core.config import GARSIDE_ENUMERATION_CAP
from ..core.debug import log_timing
from ..core.errors import ConfigurationError, EnumerationTooLargeError
from .golden import PHI, ZPhi

logger = logging.getLogger(__name__)

_TYPE_PATTERN = re.compile(r"^\s*([ABDEFH])\s*(\d+)\s*$|^\s*I2?\s*\(\s*(\d+)\s*\)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class CoxeterGraph:
    type_tag: str
    rank: int
    i2_label: Optional[int] = None

    def __post_init__(self):
        tag, n = self.type_tag, self.rank
        valid = {
            "A": n >= 1,
            "B": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "H": n in (3, 4),
            "I2": n == 2 and self.i2_label is not None and self.i2_label >= 3,
        }
        if tag not in valid:
            raise ConfigurationError(f"Unsupported Coxeter type: {tag}")
        if not valid[tag]:
            raise ConfigurationError(f"Unsupported rank for type {tag}: {n} (p={self.i2_label})")

    @property
    def name(self) -> str:
        if self.type_tag == "I2":
            return f"I2({self.i2_label})"
        return f"{self.type_tag}{self.rank}"

    @cached_property
    def labels(self) -> Tuple[int, ...]:
        """Generator labels exactly as drawn in the classification diagrams."""
        if self.type_tag in ("B", "D", "E"):
            return tuple(range(self.rank))
        return tuple(range(1, self.rank + 1))

    @cached_property
    def edges(self) -> Dict[Tuple[int, int], int]:
        """Map (i, j) with i < j to m_ij for every pair with m_ij >= 3."""
        tag, n = self.type_tag, self.rank
        chain = lambda lo, hi: {(i, i + 1): 3 for i in range(lo, hi)}
        if tag == "A":
            return chain(1, n)
        if tag == "B":
            return {(0, 1): 4, **chain(1, n - 1)}
        if tag == "D":
            return {(0, 2): 3, (1, 2): 3, **chain(2, n - 1)}
        if tag == "E":
            return {(0, 3): 3, **chain(1, n - 1)}
        if tag == "F":
            return {(1, 2): 3, (2, 3): 4, (3, 4): 3}
        if tag == "H":
            return {(1, 2): 5, **chain(2, n)}
        return {(1, 2): self.i2_label}

    def m(self, i: int, j: int) -> int:
        # the diagonal follows the m_ii = 2 convention; it is never consulted
        if i == j:
            return 2
        return self.edges.get((min(i, j), max(i, j)), 2)

    def coxeter_matrix(self) -> List[List[int]]:
        return [[self.m(i, j) for j in self.labels] for i in self.labels]

    def neighbors(self, label: int) -> List[int]:
        return [j for j in self.labels if j != label and self.m(label, j) >= 3]


def parse_type(text: str) -> CoxeterGraph:
    """Parse "A5", "b4", "E7", "I2(7)" into a CoxeterGraph."""
    match = _TYPE_PATTERN.match(text)
    if not match:
        raise ConfigurationError(f"Cannot parse Coxeter type descriptor: {text!r}")
    if match.group(3) is not None:
        return CoxeterGraph("I2", 2, int(match.group(3)))
    return CoxeterGraph(match.group(1).upper(), int(match.group(2)))


def group_order(graph: CoxeterGraph) -> int:
    n = graph.rank
    return {
        "A": lambda: math.factorial(n + 1),
        "B": lambda: 2 ** n * math.factorial(n),
        "D": lambda: 2 ** (n - 1) * math.factorial(n),
        "E": lambda: {6: 51840, 7: 2903040, 8: 696729600}[n],
        "F": lambda: 1152,
        "H": lambda: {3: 120, 4: 14400}[n],
        "I2": lambda: 2 * graph.i2_label,
    }[graph.type_tag]()


def positive_root_count(graph: CoxeterGraph) -> int:
    n = graph.rank
    return {
        "A": lambda: n * (n + 1) // 2,
        "B": lambda: n * n,
        "D": lambda: n * (n - 1),
        "E": lambda: {6: 36, 7: 63, 8: 120}[n],
        "F": lambda: 24,
        "H": lambda: {3: 15, 4: 60}[n],
        "I2": lambda: graph.i2_label,
    }[graph.type_tag]()


def _cartan_entry(m: int, upper: bool):
    if m == 2:
        return 0
    if m == 3:
        return -1
    if m == 4:
        return -2 if upper else -1
    if m == 5:
        return -PHI
    if m == 6:
        return -3 if upper else -1
    raise ConfigurationError(f"No root model for edge label {m}")


@dataclass(frozen=True)
class RootSystem:
    ring: str
    positive_roots: Tuple[tuple, ...]
    simple_index: Tuple[int, ...]
    # action[i][j]: signed index of s_i(β_j)
    action: Tuple[Tuple[int, ...], ...]


def _root_model(graph: CoxeterGraph) -> RootSystem:
    labels = graph.labels
    n = len(labels)
    golden = any(m == 5 for m in graph.edges.values())
    zero = ZPhi(0, 0) if golden else 0
    cartan = [[2 if i == j else _cartan_entry(graph.m(labels[i], labels[j]), i < j) for j in range(n)]
              for i in range(n)]

    def reflect(i: int, v: tuple) -> tuple:
        coefficient = sum((cartan[i][j] * v[j] for j in range(n)), zero)
        w = list(v)
        w[i] = w[i] - coefficient
        return tuple(w)

    simple = [tuple((ZPhi(1, 0) if golden else 1) if j == i else zero for j in range(n)) for i in range(n)]
    roots: List[tuple] = list(simple)
    index: Dict[tuple, int] = {r: k for k, r in enumerate(roots)}
    queue = deque(roots)
    while queue:
        root = queue.popleft()
        for i in range(n):
            if root == simple[i]:
                continue
            image = reflect(i, root)
            if image not in index:
                index[image] = len(roots)
                roots.append(image)
                queue.append(image)

    action = []
    for i in range(n):
        row = []
        for k, root in enumerate(roots):
            row.append(~k if k == i else index[reflect(i, root)])
        action.append(tuple(row))
    return RootSystem("golden" if golden else "integers", tuple(roots), tuple(range(n)), tuple(action))


def _angular_model(p: int) -> RootSystem:
    # root j is the unit vector at angle jπ/p; j + p stands for its negative
    def signed(j: int) -> int:
        j %= 2 * p
        return j if j < p else ~(j - p)

    s1 = tuple(signed(p - j) for j in range(p))
    s2 = tuple(signed(p - 2 - j) for j in range(p))
    return RootSystem("angular", tuple((j,) for j in range(p)), (0, p - 1), (s1, s2))


@dataclass(frozen=True)
class GroupElement:
    perm: Tuple[int, ...]

    def __repr__(self) -> str:
        return f"GroupElement(length={sum(1 for x in self.perm if x < 0)})"


@dataclass(eq=False)
class CoxeterSystem:
    graph: CoxeterGraph
    roots: RootSystem
    _position: Dict[int, int] = field(init=False, repr=False)

    def __post_init__(self):
        self._position = {label: i for i, label in enumerate(self.graph.labels)}
        count = len(self.roots.positive_roots)
        if count != positive_root_count(self.graph):
            raise ConfigurationError(
                f"{self.graph.name}: found {count} positive roots, expected {positive_root_count(self.graph)}"
            )

    @property
    def labels(self) -> Tuple[int, ...]:
        return self.graph.labels

    @property
    def name(self) -> str:
        return self.graph.name

    def position(self, label: int) -> int:
        try:
            return self._position[label]
        except KeyError:
            raise ConfigurationError(f"{label} is not a generator of {self.name}")

    @cached_property
    def identity(self) -> GroupElement:
        return GroupElement(tuple(range(len(self.roots.positive_roots))))

    @cached_property
    def generators(self) -> Dict[int, GroupElement]:
        return {label: GroupElement(self.roots.action[i]) for i, label in enumerate(self.labels)}

    def generator(self, label: int) -> GroupElement:
        return self.generators[self.labels[self.position(label)]]

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def multiply(u: GroupElement, v: GroupElement) -> GroupElement:
        up = u.perm
        return GroupElement(tuple(up[x] if x >= 0 else ~up[~x] for x in v.perm))

    @staticmethod
    def inverse(w: GroupElement) -> GroupElement:
        inv = [0] * len(w.perm)
        for j, x in enumerate(w.perm):
            if x >= 0:
                inv[x] = j
            else:
                inv[~x] = ~j
        return GroupElement(tuple(inv))

    @staticmethod
    def length(w: GroupElement) -> int:
        return sum(1 for x in w.perm if x < 0)

    def descents(self, w: GroupElement, side: str = "left") -> frozenset:
        """Left descents are the starting set S(w), right descents the finishing set F(w)."""
        simple = self.roots.simple_index
        if side == "right":
            return frozenset(label for i, label in enumerate(self.labels) if w.perm[simple[i]] < 0)
        if side == "left":
            negated = {~x for x in w.perm if x < 0}
            return frozenset(label for i, label in enumerate(self.labels) if simple[i] in negated)
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def descents_by_length(self, w: GroupElement, side: str = "left") -> frozenset:
        """Descent set from length comparison; slow oracle for the root-sign rule."""
        base = self.length(w)
        found = set()
        for label, s in self.generators.items():
            neighbour = self.multiply(s, w) if side == "left" else self.multiply(w, s)
            if self.length(neighbour) < base:
                found.add(label)
        return frozenset(found)

    def element_of_word(self, word: Iterable[int]) -> Tuple[GroupElement, bool]:
        w = self.identity
        count = 0
        for label in word:
            w = self.multiply(w, self.generator(label))
            count += 1
        return w, self.length(w) == count

    def parse_word(self, text: str) -> List[int]:
        """Digit strings such as "302134302154"; dots and spaces are ignored."""
        letters = [int(ch) for ch in text if ch.isdigit()]
        for label in letters:
            self.position(label)
        return letters

    def reduced_word(self, w: GroupElement) -> List[int]:
        word = []
        while True:
            left = self.descents(w, "left")
            if not left:
                return word
            label = min(left, key=self.position)
            word.append(label)
            w = self.multiply(self.generator(label), w)

    def parabolic_longest(self, labels: Iterable[int]) -> GroupElement:
        subset = [label for label in self.labels if label in set(labels)]
        w = self.identity
        while True:
            right = self.descents(w, "right")
            missing = [label for label in subset if label not in right]
            if not missing:
                return w
            w = self.multiply(w, self.generator(missing[0]))

    @cached_property
    def longest(self) -> GroupElement:
        return self.parabolic_longest(self.labels)

    def tau(self, label: int) -> int:
        """The diagram automorphism induced by conjugation with w0."""
        w0 = self.longest
        conjugate = self.multiply(self.multiply(w0, self.generator(label)), w0)
        for other, s in self.generators.items():
            if s == conjugate:
                return other
        raise ConfigurationError(f"w0 does not normalise the generator {label}")

    def path(self, a: int, b: int) -> Optional[List[int]]:
        """Embedded path a ... b in the Coxeter graph, or None across components."""
        parents = {a: None}
        queue = deque([a])
        while queue:
            node = queue.popleft()
            if node == b:
                route = []
                while node is not None:
                    route.append(node)
                    node = parents[node]
                return route[::-1]
            for nxt in self.graph.neighbors(node):
                if nxt not in parents:
                    parents[nxt] = node
                    queue.append(nxt)
        return None

    # -- enumeration ----------------------------------------------------------

    def order(self) -> int:
        return group_order(self.graph)

    def enumerate_group(self, cap: Optional[int] = None) -> Iterator[GroupElement]:
        """Every element exactly once, in nondecreasing length."""
        cap = GARSIDE_ENUMERATION_CAP if cap is None else cap
        order = self.order()
        if order > cap:
            raise EnumerationTooLargeError(f"Coxeter group {self.name}", order, cap)
        return self._bfs()

    def _bfs(self) -> Iterator[GroupElement]:
        level = [self.identity]
        while level:
            yield from level
            seen = set()
            nxt = []
            for w in level:
                right = self.descents(w, "right")
                for label, s in self.generators.items():
                    if label in right:
                        continue
                    longer = self.multiply(w, s)
                    if longer not in seen:
                        seen.add(longer)
                        nxt.append(longer)
            level = nxt


@log_timing
def build_coxeter(graph: CoxeterGraph, model: str = "auto") -> CoxeterSystem:
    """
    Build root data for `graph`.

    I2(p) uses the dihedral angle model unless ``model="roots"`` is requested,
    which is available for p in {3, 4, 5, 6}.
    """
    if graph.type_tag == "I2" and model != "roots":
        roots = _angular_model(graph.i2_label)
    else:
        if graph.type_tag == "I2" and graph.i2_label not in (3, 4, 5, 6):
            raise ConfigurationError(f"No root model for I2({graph.i2_label}); use the angle model")
        roots = _root_model(graph)
    system = CoxeterSystem(graph, roots)
    w0 = system.longest
    if system.multiply(w0, w0) != system.identity:
        raise ConfigurationError(f"{graph.name}: longest element is not an involution")
    logger.info(f"Built Coxeter system {graph.name} ({roots.ring}, {len(roots.positive_roots)} positive roots)")
    return system


# -- permutation models (types A, B, D) ---------------------------------------


def permutation_of_word(word: Sequence[int], n: int) -> List[int]:
    """One-line permutation of {1..n}: each letter a swaps the values a and a+1."""
    values = list(range(1, n + 1))
    for a in word:
        values = [a + 1 if v == a else a if v == a + 1 else v for v in values]
    return values


def word_of_permutation(perm: Sequence[int]) -> List[int]:
    """Reduced word whose permutation_of_word is `perm`, peeling the lowest descent."""
    perm = list(perm)
    word = []
    while True:
        for a in range(1, len(perm)):
            if perm[a - 1] > perm[a]:
                word.append(a)
                perm[a - 1], perm[a] = perm[a], perm[a - 1]
                break
        else:
            return word


def permutation_descents(perm: Sequence[int]) -> Tuple[frozenset, frozenset]:
    """(S, F) of a type-A simple: a ∈ S iff π(a+1) < π(a), a ∈ F iff π⁻¹(a+1) < π⁻¹(a)."""
    inverse = [0] * len(perm)
    for position, value in enumerate(perm, start=1):
        inverse[value - 1] = position
    start = frozenset(a for a in range(1, len(perm)) if perm[a] < perm[a - 1])
    finish = frozenset(a for a in range(1, len(perm)) if inverse[a] < inverse[a - 1])
    return start, finish


def signed_permutation_of_word(word: Sequence[int], n: int, type_tag: str) -> List[int]:
    """Images i·x of 1..n, letters acting on the right (B_n or D_n)."""

    def act(letter: int, value: int) -> int:
        sign, magnitude = (1, value) if value > 0 else (-1, -value)
        if letter >= 1:
            if magnitude == letter:
                return sign * (letter + 1)
            if magnitude == letter + 1:
                return sign * letter
            return value
        if type_tag == "B":
            return -value if magnitude == 1 else value
        # D_n: (1, -2)(2, -1)
        if magnitude == 1:
            return -sign * 2
        if magnitude == 2:
            return -sign * 1
        return value

    images = []
    for i in range(1, n + 1):
        value = i
        for letter in word:
            value = act(letter, value)
        images.append(value)
    return images


def signed_permutation_start(images: Sequence[int], type_tag: str) -> frozenset:
    """S(x) = {i : i·x > (i+1)·x} with 0·x = 0 (B_n) or 0·x = -(2·x) (D_n)."""
    start = {i for i in range(1, len(images)) if images[i - 1] > images[i]}
    zero = 0 if type_tag == "B" else -images[1]
    if zero > images[0]:
        start.add(0)
    return frozenset(start)
