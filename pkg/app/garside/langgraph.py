"""
The acceptor Γ of the normal-form language L and everything read off it.

Vertices are proper simples and x -> y is an edge iff x|y. For Artin backends the
edge law only depends on descent sets, so vertices are grouped into classes keyed
by (S, F) and all counting runs on the weighted class graph.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from ..core.config import (GARSIDE_POWER_MAX_ITER, GARSIDE_POWER_TOLERANCE,
                           GARSIDE_RATE_TOLERANCE)
from ..core.debug import log_timing
from ..core.errors import ConfigurationError, EmptyLanguageError, NumericError
from .structures import GarsideStructure, Simple

logger = logging.getLogger(__name__)


@dataclass
class LangGraph:
    structure: GarsideStructure
    keys: List[Hashable]
    weights: List[int]
    successors: List[List[int]]
    members: List[List[Simple]]
    quotient: bool = False
    node_of: Dict[Simple, int] = field(default_factory=dict, repr=False)
    renderer: Optional[Callable[[Hashable], str]] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.node_of:
            self.node_of = {x: i for i, xs in enumerate(self.members) for x in xs}
        self.predecessors: List[List[int]] = [[] for _ in self.keys]
        for c, succ in enumerate(self.successors):
            for d in succ:
                self.predecessors[d].append(c)

    @property
    def vertex_count(self) -> int:
        return sum(self.weights)

    @property
    def edge_count(self) -> int:
        """Number of vertex-level edges."""
        return sum(self.weights[c] * self.weights[d] for c, succ in enumerate(self.successors) for d in succ)

    @property
    def vertices(self) -> List[Simple]:
        return [x for xs in self.members for x in xs]

    def display(self, x: Hashable) -> str:
        return self.renderer(x) if self.renderer else self.structure.display(x)

    def has_edge(self, x: Simple, y: Simple) -> bool:
        return self.node_of[y] in self.successors[self.node_of[x]]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.keys)))
        graph.add_edges_from((c, d) for c, succ in enumerate(self.successors) for d in succ)
        return graph


@log_timing
def build_acceptor(structure: GarsideStructure, quotient: Optional[bool] = None,
                   cap: Optional[int] = None) -> LangGraph:
    """Build Γ; `quotient` defaults to whether the backend's edge law is descent-determined."""
    quotient = structure.descent_determined if quotient is None else quotient
    if quotient and not structure.descent_determined:
        raise ConfigurationError(f"{structure.name} does not support the descent-class quotient")
    vertices = structure.proper_simples(cap)

    if not quotient:
        successors = [
            [j for j, y in enumerate(vertices) if structure.normal_pair(x, y)]
            for x in vertices
        ]
        graph = LangGraph(structure, list(vertices), [1] * len(vertices), successors,
                          [[x] for x in vertices])
    else:
        classes: Dict[Tuple[int, int], List[Simple]] = {}
        for x in vertices:
            classes.setdefault(structure.descent_class(x), []).append(x)
        keys = sorted(classes)
        successors = [
            [j for j, (start, _) in enumerate(keys) if start & ~finish == 0]
            for _, finish in keys
        ]
        graph = LangGraph(structure, keys, [len(classes[key]) for key in keys], successors,
                          [classes[key] for key in keys], quotient=True)
    logger.info(f"Acceptor of {structure.name}: {graph.vertex_count} vertices, "
                f"{graph.edge_count} edges, {len(graph.keys)} nodes")
    return graph


def check_class_edges(graph: LangGraph, samples: int = 2000, seed: int = 0) -> List[Tuple[Simple, Simple]]:
    """Vertex pairs where the class edge disagrees with x|y computed from ∂x ∧ y."""
    structure = graph.structure
    vertices = graph.vertices
    rng = random.Random(seed)
    pairs = ([(x, y) for x in vertices for y in vertices] if len(vertices) ** 2 <= samples
             else [(rng.choice(vertices), rng.choice(vertices)) for _ in range(samples)])
    return [(x, y) for x, y in pairs if graph.has_edge(x, y) != structure.normal_pair(x, y)]


# -- strongly connected components ---------------------------------------------------


def nontrivial_components(graph: LangGraph) -> List[Set[int]]:
    """Node sets of the SCCs that carry an edge, in a deterministic order."""
    digraph = graph.to_networkx()
    components = [
        component for component in nx.strongly_connected_components(digraph)
        if len(component) > 1 or any(c in graph.successors[c] for c in component)
    ]
    return sorted(components, key=min)


def essential_elements(graph: LangGraph) -> Set[Simple]:
    return {x for component in nontrivial_components(graph) for c in component for x in graph.members[c]}


@dataclass(frozen=True)
class Transitivity:
    transitive: bool
    k: Optional[int]
    diameter: Optional[int]
    components: int


def component_diameter(graph: LangGraph, component: Set[int]) -> int:
    """
    Largest vertex-to-vertex distance inside one SCC.

    Distinct vertices of the same class need a walk of length at least 1.
    """
    sub = graph.to_networkx().subgraph(component)
    diameter = 0
    for c in sorted(component):
        sources = [d for d in graph.successors[c] if d in component]
        reach = nx.multi_source_dijkstra_path_length(sub, sources)
        for d in component:
            if d == c and graph.weights[c] < 2:
                continue
            diameter = max(diameter, 1 + reach[d])
    return diameter


@log_timing
def essential_transitivity(graph: LangGraph) -> Transitivity:
    components = nontrivial_components(graph)
    if len(components) != 1:
        if not components:
            logger.warning(f"{graph.structure.name} has no essential elements")
        return Transitivity(False, None, None, len(components))
    diameter = component_diameter(graph, components[0])
    return Transitivity(True, diameter, diameter, 1)


# -- counting --------------------------------------------------------------------------


def _path_vectors(graph: LangGraph, k: int) -> Iterator[List[int]]:
    """v_j[d] = number of L-words of length j ending in class d, for j = 1..k."""
    v = list(graph.weights)
    for j in range(1, k + 1):
        yield v
        if j < k:
            v = [graph.weights[d] * sum(v[c] for c in graph.predecessors[d]) for d in range(len(v))]


def count_words(graph: LangGraph, k: int, last: Optional[Simple] = None) -> int:
    """|L^(k)|, or with `last` the number of words of length k ending in that simple."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1 if last is None else 0
    v = list(_path_vectors(graph, k))[-1]
    if last is None:
        return sum(v)
    d = graph.node_of[last]
    return v[d] // graph.weights[d]


def count_sequence(graph: LangGraph, k_max: int) -> List[int]:
    """[|L^(0)|, ..., |L^(k_max)|]."""
    return [1] + [sum(v) for v in _path_vectors(graph, k_max)] if k_max > 0 else [1]


def count_ball(graph: LangGraph, k: int) -> int:
    return sum(count_sequence(graph, k))


def count_sup_ball(graph: LangGraph, k: int) -> int:
    """
    Number of monoid elements x with x ≼ Δ^k, that is with inf + cl <= k.

    Unlike count_ball this also counts the elements with positive Δ-power,
    and it is multiplicative over direct products.
    """
    counts = count_sequence(graph, k)
    return sum((k - j + 1) * c for j, c in enumerate(counts))


def _transfer_matrix(graph: LangGraph, dtype=object) -> np.ndarray:
    n = len(graph.keys)
    matrix = np.zeros((n, n), dtype=dtype)
    for c, succ in enumerate(graph.successors):
        for d in succ:
            matrix[c, d] = graph.weights[d]
    return matrix


def rigid_sequence(graph: LangGraph, k_max: int) -> List[int]:
    """Rigid counts for k = 1..k_max, as traces of powers of the weighted transfer matrix."""
    matrix = _transfer_matrix(graph)
    power = matrix.copy()
    counts = []
    for _ in range(k_max):
        counts.append(int(sum(power[i, i] for i in range(len(graph.keys)))))
        power = power.dot(matrix)
    return counts


def count_rigid(graph: LangGraph, k: int) -> int:
    if k < 1:
        raise ValueError("rigid words have length at least 1")
    return rigid_sequence(graph, k)[-1]


def enumerate_words(graph: LangGraph, k: int) -> Iterator[Tuple[Simple, ...]]:
    """Every L-word of length k, by depth-first search on x|y directly."""
    structure = graph.structure
    vertices = graph.vertices

    def extend(word: Tuple[Simple, ...]) -> Iterator[Tuple[Simple, ...]]:
        if len(word) == k:
            yield word
            return
        for y in vertices:
            if not word or structure.normal_pair(word[-1], y):
                yield from extend(word + (y,))

    yield from extend(())


def rigid_proportion(graph: LangGraph, k: int) -> float:
    """Share of rigid words among the words of length 1..k."""
    words = sum(count_sequence(graph, k)[1:])
    if not words:
        raise EmptyLanguageError(f"{graph.structure.name} has no words of length at most {k}")
    return sum(rigid_sequence(graph, k)) / words


def restricted_ratio(graph: LangGraph, k: int, last: Simple) -> float:
    """|L^(k)(s)| / |L^(k)| for words ending in s."""
    total = count_words(graph, k)
    if not total:
        raise EmptyLanguageError(f"L^({k}) of {graph.structure.name} is empty")
    return count_words(graph, k, last) / total


def counts_json(counts: Sequence[int]) -> List[str]:
    return [str(c) for c in counts]


# -- growth ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthProfile:
    rate: float
    degree: int
    component_rates: Tuple[float, ...] = ()


def spectral_radius(matrix: np.ndarray, tolerance: float = GARSIDE_POWER_TOLERANCE,
                    max_iter: int = GARSIDE_POWER_MAX_ITER) -> float:
    """
    Perron root of an irreducible nonnegative matrix.

    Iterates with A + I, which is primitive, and stops once the Collatz-Wielandt
    bounds min((A+I)x / x) <= λ <= max((A+I)x / x) agree to `tolerance`.
    """
    shifted = np.asarray(matrix, dtype=float) + np.eye(matrix.shape[0])
    x = np.ones(matrix.shape[0])
    lower = upper = 0.0
    for _ in range(max_iter):
        y = shifted @ x
        ratios = y / x
        lower, upper = float(ratios.min()), float(ratios.max())
        if upper - lower <= tolerance * upper:
            return (lower + upper) / 2 - 1.0
        x = y / np.linalg.norm(y)
    raise NumericError(f"power iteration did not converge in {max_iter} iterations",
                       last_iterate=x, estimate=(lower + upper) / 2 - 1.0)


def _same_rate(a: float, b: float) -> bool:
    return abs(a - b) <= GARSIDE_RATE_TOLERANCE * max(1.0, abs(a), abs(b))


@log_timing
def growth_profile(graph: LangGraph) -> GrowthProfile:
    """β and q with |L^(k)| ∈ Θ(k^q β^k)."""
    components = nontrivial_components(graph)
    if not components:
        return GrowthProfile(0.0, 0)
    matrix = _transfer_matrix(graph, dtype=float)
    rates = []
    for component in components:
        nodes = sorted(component)
        rates.append(spectral_radius(matrix[np.ix_(nodes, nodes)]))
    rate = max(rates)

    digraph = graph.to_networkx()
    condensed = nx.condensation(digraph)
    mapping = condensed.graph["mapping"]
    marked = {mapping[min(component)] for component, r in zip(components, rates) if _same_rate(r, rate)}
    best: Dict[int, int] = {}
    for node in nx.topological_sort(condensed):
        before = max((best[p] for p in condensed.predecessors(node)), default=0)
        best[node] = before + (node in marked)
    degree = max(best.values()) - 1
    logger.debug(f"{graph.structure.name}: component rates {rates}")
    return GrowthProfile(rate, degree, tuple(rates))


def growth_from_counts(counts: Sequence[int]) -> Optional[float]:
    """Last exact ratio |L^(k+1)| / |L^(k)|, None when undefined."""
    if len(counts) < 2 or not counts[-2]:
        return None
    return counts[-1] / counts[-2]


def _case(rate: float) -> int:
    if _same_rate(rate, 0.0):
        return 0
    return 1 if _same_rate(rate, 1.0) else 2


def ball_profile(profile: GrowthProfile) -> Tuple[float, int]:
    """(γ, r) with |L-bar^(k)| ∈ Θ(k^r γ^k)."""
    case = _case(profile.rate)
    if case == 0:
        return 1.0, 0
    if case == 1:
        return 1.0, profile.degree + 1
    return profile.rate, profile.degree


@dataclass(frozen=True)
class ProductGrowth:
    beta: float
    q: int
    gamma: float
    r: int


def predict_product_growth(g: GrowthProfile, h: GrowthProfile) -> ProductGrowth:
    """Growth constants of G × H from those of the factors."""
    case_g, case_h = _case(g.rate), _case(h.rate)
    gamma_g, r_g = ball_profile(g)
    gamma_h, r_h = ball_profile(h)
    if case_g == 2 and case_h == 2:
        return ProductGrowth(g.rate * h.rate, g.degree + h.degree, gamma_g * gamma_h, r_g + r_h)
    # at most one factor grows exponentially and that one sets both rates
    if case_g == 2:
        beta, gamma = g.rate, gamma_g
    elif case_h == 2:
        beta, gamma = h.rate, gamma_h
    else:
        beta, gamma = 1.0, 1.0
    q = (g.degree + 1 if case_g else 0) + (h.degree + 1 if case_h else 0)
    if case_g and case_h:
        return ProductGrowth(beta, q, gamma, r_g + r_h + 1)
    # some factor has a finite language
    r = (r_g if case_g else r_h) + 1
    return ProductGrowth(beta, q, gamma, r)


# -- sampling and export ----------------------------------------------------------------


def suffix_counts(graph: LangGraph, k: int) -> List[List[int]]:
    """counts[j][c] = number of words of length j starting at a fixed vertex of class c."""
    counts = [[1] * len(graph.keys)]
    for _ in range(1, k):
        previous = counts[-1]
        counts.append([sum(graph.weights[d] * previous[d] for d in succ) for succ in graph.successors])
    return counts


def _weighted_pick(rng: random.Random, options: Sequence[int], weights: Sequence[int]) -> int:
    point = rng.randrange(sum(weights))
    for option, weight in zip(options, weights):
        if point < weight:
            return option
        point -= weight
    raise AssertionError("weighted pick ran past the total")


def sample_uniform(graph: LangGraph, k: int, seed: int = 0, index: int = 0) -> List[Simple]:
    """
    One word of L^(k), uniformly at random.

    Each (seed, k, index) triple has its own random stream, so samples are
    reproducible independently of how many were drawn before.
    """
    if k == 0:
        return []
    counts = suffix_counts(graph, k)
    nodes = range(len(graph.keys))
    first = [graph.weights[c] * counts[k - 1][c] for c in nodes]
    if not sum(first):
        raise EmptyLanguageError(f"L^({k}) of {graph.structure.name} is empty")
    rng = random.Random(f"{seed}:{k}:{index}")
    c = _weighted_pick(rng, nodes, first)
    path = [c]
    for j in range(k - 2, -1, -1):
        succ = graph.successors[c]
        c = _weighted_pick(rng, succ, [graph.weights[d] * counts[j][d] for d in succ])
        path.append(c)
    return [rng.choice(graph.members[c]) for c in path]


def export_digraph(graph: LangGraph) -> str:
    """One vertex per line, then one `src -> dst` line per vertex-level edge."""
    display = graph.display
    lines = [display(x) for x in graph.vertices]
    for c, succ in enumerate(graph.successors):
        for d in succ:
            for x in graph.members[c]:
                lines.extend(f"{display(x)} -> {display(y)}" for y in graph.members[d])
    return "\n".join(lines) + "\n"
