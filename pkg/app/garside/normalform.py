"""Left-greedy normal forms, right multiplication by simples and penetration distance."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..core.errors import ConfigurationError
from .structures import GarsideStructure, Simple


@dataclass(frozen=True)
class NormalForm:
    """Δ^inf_power · x_1 | ... | x_ℓ with proper left-weighted factors."""

    inf_power: int
    factors: Tuple[Simple, ...] = ()

    @property
    def inf(self) -> int:
        return self.inf_power

    @property
    def sup(self) -> int:
        return self.inf_power + len(self.factors)

    @property
    def cl(self) -> int:
        return len(self.factors)

    def word(self, structure: GarsideStructure) -> List[Simple]:
        """The L-bar word Δ...Δ x_1 ... x_ℓ."""
        return [structure.delta] * self.inf_power + list(self.factors)


def _strip(structure: GarsideStructure, word: Sequence[Simple]) -> NormalForm:
    inf = 0
    while inf < len(word) and word[inf] == structure.delta:
        inf += 1
    factors = tuple(x for x in word[inf:] if x != structure.one)
    return NormalForm(inf, factors)


def _local_move(structure: GarsideStructure, word: List[Simple], i: int) -> bool:
    u, v = word[i], word[i + 1]
    t = structure.meet(structure.right_complement(u), v)
    if t == structure.one:
        return False
    word[i] = structure.partial_product(u, t)
    word[i + 1] = structure.left_quotient(t, v)
    return True


def normalize(structure: GarsideStructure, word: Sequence[Simple], direction: str = "rtl") -> NormalForm:
    """
    Normal form of the product of `word` by local moves (u, v) -> (u·t, t\\v), t = ∂u ∧ v.

    Full passes are repeated until nothing changes; ``direction`` selects
    right-to-left (default) or left-to-right passes.
    """
    if direction not in ("rtl", "ltr"):
        raise ValueError(f"direction must be 'rtl' or 'ltr', got {direction!r}")
    word = list(word)
    indices = range(len(word) - 2, -1, -1) if direction == "rtl" else range(len(word) - 1)
    changed = True
    while changed:
        changed = False
        for i in indices:
            if _local_move(structure, word, i):
                changed = True
    return _strip(structure, word)


def is_normal(structure: GarsideStructure, word: Sequence[Simple]) -> bool:
    """True iff `word` is an L-bar word: no ONE, Δ only as a leading run, x_i|x_{i+1}."""
    seen_proper = False
    for x in word:
        if x == structure.one:
            return False
        if x == structure.delta:
            if seen_proper:
                return False
        else:
            seen_proper = True
    return all(structure.normal_pair(x, y) for x, y in zip(word, word[1:]))


def multiply(structure: GarsideStructure, nf: NormalForm, y: Simple) -> NormalForm:
    tail = normalize(structure, list(nf.factors) + [y])
    return NormalForm(nf.inf_power + tail.inf_power, tail.factors)


def multiply_incremental(structure: GarsideStructure, nf: NormalForm, y: Simple) -> Tuple[NormalForm, int]:
    """
    Right multiplication by a simple in one right-to-left pass.

    The carry moves left until a factor already forms a normal pair with it;
    `touched` counts the factors that were rewritten.
    """
    factors = list(nf.factors)
    carry = y
    tail: List[Simple] = []
    touched = 0
    i = len(factors) - 1
    while i >= 0:
        x = factors[i]
        t = structure.meet(structure.right_complement(x), carry)
        if t == structure.one:
            break
        tail.append(structure.left_quotient(t, carry))
        carry = structure.partial_product(x, t)
        touched += 1
        i -= 1
    result = _strip(structure, factors[: i + 1] + [carry] + tail[::-1])
    return NormalForm(nf.inf_power + result.inf_power, result.factors), touched


def multiply_word(structure: GarsideStructure, nf: NormalForm, word: Sequence[Simple]) -> NormalForm:
    for y in word:
        nf, _ = multiply_incremental(structure, nf, y)
    return nf


def delta_conjugate(structure: GarsideStructure, s: Simple, power: int) -> Simple:
    """τ^power(s) = Δ^power s Δ^-power; τ acts on simples as ∂̃²."""
    step = structure.left_complement if power >= 0 else structure.right_complement
    for _ in range(2 * abs(power)):
        s = step(s)
    return s


def penetration_distance(structure: GarsideStructure, x: NormalForm, y: Sequence[Simple]) -> int:
    """
    pd(x, y) by comparing the Δ-free factors of NF(x) and NF(xy).

    A common prefix of factors realizes the meets with Δ^i; the factors of xy are
    first conjugated by Δ^(inf(xy) - inf(x)).
    """
    xy = multiply_word(structure, x, y)
    shift = xy.inf_power - x.inf_power
    common = 0
    for left, right in zip(x.factors, xy.factors):
        if left != delta_conjugate(structure, right, shift):
            break
        common += 1
    return x.cl - common


# -- literal oracle --------------------------------------------------------------------


def _head(structure: GarsideStructure, nf: NormalForm) -> Simple:
    if nf.inf_power:
        return structure.delta
    return nf.factors[0] if nf.factors else structure.one


def _strip_atom(structure: GarsideStructure, nf: NormalForm, a: Simple) -> NormalForm:
    word = nf.word(structure)
    word[0] = structure.left_quotient(a, word[0])
    return normalize(structure, word)


def meet_with_delta_power(structure: GarsideStructure, word: Sequence[Simple], power: int) -> NormalForm:
    """(product of `word`) ∧ Δ^power, one common atom at a time."""
    rest = normalize(structure, word)
    rest_delta = NormalForm(power)
    atoms: List[Simple] = []
    while True:
        common = structure.starting_set(_head(structure, rest)) & structure.starting_set(
            _head(structure, rest_delta))
        if not common:
            return normalize(structure, atoms)
        a = min(common, key=structure.atoms().index)
        atoms.append(a)
        rest = _strip_atom(structure, rest, a)
        rest_delta = _strip_atom(structure, rest_delta, a)


def penetration_distance_oracle(structure: GarsideStructure, x: NormalForm, y: Sequence[Simple]) -> int:
    """pd(x, y) straight from the definition, computing every meet with Δ^i."""
    xy = normalize(structure, x.word(structure) + list(y))
    left = [delta_conjugate(structure, s, x.inf_power) for s in x.factors]
    right = [delta_conjugate(structure, s, xy.inf_power) for s in xy.factors]
    agree = [i for i in range(x.cl + 1)
             if meet_with_delta_power(structure, left, i) == meet_with_delta_power(structure, right, i)]
    return x.cl - max(agree)


# -- text -----------------------------------------------------------------------------

_DELTA_POWER = re.compile(r"^Δ(?:\^(\d+))?$")


def render(structure: GarsideStructure, nf: NormalForm) -> str:
    body = " | ".join(structure.display(x) for x in nf.factors)
    if not nf.inf_power:
        return body or "1"
    head = "Δ" if nf.inf_power == 1 else f"Δ^{nf.inf_power}"
    return f"{head} · {body}" if body else head


def parse(structure: GarsideStructure, text: str) -> NormalForm:
    text = text.strip()
    inf = 0
    if "·" in text:
        head, text = (part.strip() for part in text.split("·", 1))
        match = _DELTA_POWER.match(head)
        if not match:
            raise ConfigurationError(f"Cannot parse Δ-power {head!r}")
        inf = int(match.group(1) or 1)
    else:
        match = _DELTA_POWER.match(text)
        if match:
            return NormalForm(int(match.group(1) or 1))
    if text in ("", "1"):
        return NormalForm(inf)
    factors = tuple(structure.find(name.strip()) for name in text.split("|"))
    if not is_normal(structure, factors):
        raise ConfigurationError(f"{text!r} is not in normal form")
    return NormalForm(inf, factors)


def complement_of_normal_form(structure: GarsideStructure, nf: NormalForm) -> NormalForm:
    """
    NF of the element y with x·y = Δ^sup(x), for x = Δ^p x_1 | ... | x_ℓ.

    The factors are ∂x_ℓ, ∂³x_{ℓ-1}, ..., ∂^(2ℓ-1) x_1, which already form a
    left-weighted word.
    """
    word = []
    for j, x in enumerate(reversed(nf.factors)):
        for _ in range(2 * j + 1):
            x = structure.right_complement(x)
        word.append(x)
    return normalize(structure, word)


def confirm_penetration_distance(structure: GarsideStructure, x: NormalForm, y: Sequence[Simple], pd: int) -> bool:
    """
    Literal check of a claimed pd: the meets with Δ^c agree and those with Δ^(c+1) do not.

    c = cl(x) - pd. Meets with nested powers of Δ are nested, so this pins the maximum.
    """
    if not 0 <= pd <= x.cl:
        return False
    xy = normalize(structure, x.word(structure) + list(y))
    left = [delta_conjugate(structure, s, x.inf_power) for s in x.factors]
    right = [delta_conjugate(structure, s, xy.inf_power) for s in xy.factors]
    common = x.cl - pd

    def agree(i: int) -> bool:
        return meet_with_delta_power(structure, left, i) == meet_with_delta_power(structure, right, i)

    return agree(common) and (common == x.cl or not agree(common + 1))
