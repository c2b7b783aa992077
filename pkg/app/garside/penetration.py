"""
Penetration sequences and the automata Π and Π-tilde that recognize them.

Sequences are stored in word order, (s_k, m_k) first and (s_1, m_1) last, so a
path in Π reads left to right exactly like a path in the acceptor Γ.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from ..core.config import GARSIDE_ALPHA_BETA_TOLERANCE, GARSIDE_SIMPLES_CAP
from ..core.debug import log_timing
from ..core.errors import ConfigurationError, DefectError, EnumerationTooLargeError
from .langgraph import LangGraph, build_acceptor, count_sequence, growth_from_counts, growth_profile
from .normalform import NormalForm, penetration_distance
from .structures import DirectProduct, GarsideStructure, Simple

logger = logging.getLogger(__name__)

PenState = Tuple[Simple, Simple]


def render_state(structure: GarsideStructure, state: PenState) -> str:
    s, m = state
    return f"({structure.display(s)};{structure.display(m)})"


def render_pseq(structure: GarsideStructure, sequence: Sequence[PenState]) -> str:
    """`(s_k;m_k)_k ... (s_1;m_1)_1`."""
    k = len(sequence)
    return " ".join(f"{render_state(structure, state)}_{k - i}" for i, state in enumerate(sequence))


def penetration_states(structure: GarsideStructure, with_one: bool = False,
                       cap: Optional[int] = None) -> List[PenState]:
    """(s, m) with s proper and m a prefix of ∂s; m = ONE only when `with_one`."""
    cap = GARSIDE_SIMPLES_CAP if cap is None else cap
    proper = structure.proper_simples(cap)
    if len(proper) ** 2 > cap:
        raise EnumerationTooLargeError(f"candidate penetration states of {structure.name}",
                                       len(proper) ** 2, cap)
    candidates = proper + [structure.one] if with_one else proper
    return [(s, m) for s in proper for m in candidates if structure.partial_product(s, m) is not None]


def _build(structure: GarsideStructure, tilde: bool, cap: Optional[int]) -> LangGraph:
    states = penetration_states(structure, with_one=tilde, cap=cap)
    index = {state: i for i, state in enumerate(states)}
    gamma_predecessors = {
        t: [s for s in structure.proper_simples(cap) if structure.normal_pair(s, t)]
        for t in structure.proper_simples(cap)
    }
    successors: List[List[int]] = [[] for _ in states]
    for j, (t, n) in enumerate(states):
        tn = structure.partial_product(t, n)
        if not tilde and tn == structure.delta:
            continue
        for s in gamma_predecessors[t]:
            m = structure.meet(structure.right_complement(s), tn)
            if m == structure.one and not tilde:
                continue
            successors[index[(s, m)]].append(j)
    graph = LangGraph(structure, states, [1] * len(states), successors, [[state] for state in states],
                      renderer=lambda state: render_state(structure, state))
    logger.info(f"{'Π-tilde' if tilde else 'Π'} of {structure.name}: "
                f"{len(states)} states, {graph.edge_count} edges")
    return graph


@log_timing
def build_pi(structure: GarsideStructure, cap: Optional[int] = None) -> LangGraph:
    """
    Π: an edge (s, m) -> (t, n) iff s|t, t·n ≠ Δ and m = ∂s ∧ t·n.

    The k-vertex paths are exactly the penetration sequences of length k.
    """
    return _build(structure, tilde=False, cap=cap)


@log_timing
def build_pi_tilde(structure: GarsideStructure, cap: Optional[int] = None) -> LangGraph:
    """Π-tilde: states may have m = ONE and targets with t·n = Δ are kept."""
    return _build(structure, tilde=True, cap=cap)


def is_penetration_sequence(structure: GarsideStructure, sequence: Sequence[PenState]) -> bool:
    """Check a word-order sequence against the definition."""
    if not sequence:
        return False
    for s, m in sequence:
        if not (structure.is_proper(s) and structure.is_proper(m)):
            return False
    s1, m1 = sequence[-1]
    if structure.partial_product(s1, m1) is None:
        return False
    for (s, m), (t, n) in zip(sequence, sequence[1:]):
        tn = structure.partial_product(t, n)
        if tn is None or tn == structure.delta or not structure.normal_pair(s, t):
            return False
        if m != structure.meet(structure.right_complement(s), tn):
            return False
    return True


def count_pseq(structure_or_pi, k: int) -> int:
    """|PSeq^(k)|; accepts a structure or a prebuilt Π."""
    pi = structure_or_pi if isinstance(structure_or_pi, LangGraph) else build_pi(structure_or_pi)
    return count_sequence(pi, k)[k]


def enumerate_pseq(structure: GarsideStructure, k: int) -> Iterator[Tuple[PenState, ...]]:
    """Every penetration sequence of length k, grown leftwards from the definition."""
    proper = structure.proper_simples()
    pairs = [(s, m) for s in proper for m in proper]

    def grow(sequence: Tuple[PenState, ...]) -> Iterator[Tuple[PenState, ...]]:
        if len(sequence) == k:
            yield sequence
            return
        for state in pairs:
            candidate = (state,) + sequence
            if is_penetration_sequence(structure, candidate[:2]):
                yield from grow(candidate)

    for s, m in pairs:
        if structure.partial_product(s, m) is not None:
            yield from grow(((s, m),))


@dataclass(frozen=True)
class AlphaBeta:
    alpha: float
    beta: float
    alpha_lt_beta: bool
    pseq_ratio: Optional[float] = None
    words_ratio: Optional[float] = None


@log_timing
def alpha_beta_report(structure: GarsideStructure, k: int = 12,
                      pi: Optional[LangGraph] = None, acceptor: Optional[LangGraph] = None) -> AlphaBeta:
    """Growth rates α of PSeq and β of L, with exact count ratios at length k."""
    pi = pi or build_pi(structure)
    acceptor = acceptor or build_acceptor(structure)
    alpha = growth_profile(pi).rate
    beta = growth_profile(acceptor).rate
    below = beta - alpha > GARSIDE_ALPHA_BETA_TOLERANCE * max(1.0, beta)
    result = AlphaBeta(alpha, beta, below,
                       growth_from_counts(count_sequence(pi, k)),
                       growth_from_counts(count_sequence(acceptor, k)))
    logger.info(f"{structure.name}: α={alpha:.6f} β={beta:.6f} α<β={below}")
    return result


# -- direct products --------------------------------------------------------------------


def _check_product(structure: GarsideStructure, g_word: Sequence[Simple], h_word: Sequence[Simple]):
    if not isinstance(structure, DirectProduct):
        raise ConfigurationError(f"{structure.name} is not a direct product")
    if len(g_word) != len(h_word) or not g_word:
        raise ConfigurationError("g and h must be nonempty normal words of the same length")


def product_pseq_witness(structure: DirectProduct, g_word: Sequence[Simple],
                         h_word: Sequence[Simple]) -> List[PenState]:
    """
    The sequence built from g ∈ L_G^(k) and h ∈ L_H^(k) in word order.

    The last state pairs (g_k, h_k) with ∂_H h_k; each earlier m is ∂x_i ∧ x_{i+1}m_{i+1}.
    """
    _check_product(structure, g_word, h_word)
    factors = list(zip(g_word, h_word))
    m = (structure.g.one, structure.h.right_complement(h_word[-1]))
    sequence = [(factors[-1], m)]
    for i in range(len(factors) - 2, -1, -1):
        t, n = sequence[0]
        m = structure.meet(structure.right_complement(factors[i]), structure.multiply_simples(t, n))
        sequence.insert(0, (factors[i], m))
    if not is_penetration_sequence(structure, sequence):
        raise DefectError("product witness is not a penetration sequence",
                          render_pseq(structure, sequence))
    return sequence


def pd_lower_bound_witness(structure: DirectProduct, g_word: Sequence[Simple],
                           h_word: Sequence[Simple], atom: Simple) -> Tuple[NormalForm, int]:
    """
    x = (g_1, h_1) | ... | (g_k, h_k) with h ending in ∂̃_H a; checks pd(x, a) ≥ k.

    `atom` is an atom of H.
    """
    _check_product(structure, g_word, h_word)
    if h_word[-1] != structure.h.left_complement(atom):
        raise ConfigurationError("h must end in the left complement of the atom")
    x = NormalForm(0, tuple(zip(g_word, h_word)))
    pd = penetration_distance(structure, x, [(structure.g.one, atom)])
    if pd < len(g_word):
        raise DefectError("penetration distance below the word length", f"pd={pd} < k={len(g_word)}")
    return x, pd
