"""Framings M(k): the same monoid with Δ^k as Garside element, materialized as a table."""
from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from ..core.config import GARSIDE_SIMPLES_CAP
from ..core.debug import log_timing
from ..core.errors import ConfigurationError, EnumerationTooLargeError
from .normalform import NormalForm, normalize
from .structures import GarsideStructure, Simple
from .tables import GarsideTable, TableStructure, validate_table

logger = logging.getLogger(__name__)

Word = Tuple[Simple, ...]


def _normal_words(base: GarsideStructure, k: int, cap: int) -> List[Word]:
    """Every L-bar word of length at most k, shortest first."""
    letters = [x for x in base.simples() if x != base.one]
    words: List[Word] = [()]
    level: List[Word] = [()]
    for _ in range(k):
        level = [w + (x,) for w in level for x in letters if not w or base.normal_pair(w[-1], x)]
        words.extend(level)
        if len(words) > cap:
            raise EnumerationTooLargeError(f"simples of the framing M({k}) of {base.name}", len(words), cap)
    return words


class FramedStructure(TableStructure):
    """M(k): handles are table ids, each standing for a base normal-form word."""

    def __init__(self, table: GarsideTable, base: GarsideStructure, k: int, words: List[Word]):
        super().__init__(table)
        self.base = base
        self.k = k
        self.words = words
        self.id_of: Dict[Word, int] = {w: i for i, w in enumerate(words)}
        self.name = f"frame:{base.name}:{k}"

    def split_word(self, x: int) -> List[Simple]:
        """Base letters of the framed simple x."""
        return list(self.words[x])

    def lift(self, word: Sequence[Simple]) -> int:
        """Framed simple represented by a base word; the product must divide Δ^k."""
        nf = normalize(self.base, word)
        key = tuple(nf.word(self.base))
        if key not in self.id_of:
            raise ConfigurationError(f"word of sup {nf.sup} is not a simple of {self.name}")
        return self.id_of[key]

    def group_word(self, nf: NormalForm) -> List[int]:
        """Cut a base normal form into consecutive chunks of k letters."""
        letters = nf.word(self.base)
        return [self.id_of[tuple(letters[i:i + self.k])] for i in range(0, len(letters), self.k)]

    def flatten(self, word: Iterable[int]) -> List[Simple]:
        return [letter for x in word for letter in self.words[x]]


@log_timing
def framing(base: GarsideStructure, k: int, cap: Optional[int] = None) -> FramedStructure:
    """
    Materialize M(k) as a table structure.

    Simples are the divisors of Δ^k, i.e. base elements with sup at most k, keyed
    by their L-bar words; u·v is defined when NF(uv) still has sup at most k.
    """
    if k < 1:
        raise ConfigurationError(f"framing degree must be at least 1, got {k}")
    cap = GARSIDE_SIMPLES_CAP if cap is None else cap
    words = _normal_words(base, k, cap)
    id_of = {w: i for i, w in enumerate(words)}

    def name(w: Word) -> str:
        return "|".join(base.display(x) for x in w) if w else "1"

    products: Dict[Tuple[int, int], int] = {}
    for u in words:
        for v in words:
            nf = normalize(base, u + v)
            if nf.sup <= k:
                products[(id_of[u], id_of[v])] = id_of[tuple(nf.word(base))]

    delta = id_of[(base.delta,) * k]
    table = GarsideTable(
        name=f"M({k}) of {base.name}",
        displays={i: name(w) for i, w in enumerate(words)},
        delta=delta,
        products=products,
    )
    structure = FramedStructure(validate_table(table, full=False), base, k, words)
    logger.info(f"Built {structure.name}: {len(words)} simples, {len(products)} products")
    return structure


def framed_essential(framed: FramedStructure, base_essential: Set[Simple]) -> Set[int]:
    """Simples of M(k) spelled by exactly k essential base letters (and no Δ)."""
    return {
        i for i, w in enumerate(framed.words)
        if len(w) == framed.k and all(x in base_essential for x in w)
    }
