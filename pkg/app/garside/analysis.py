"""Reports, experiments and the verification suite shared by the CLI and the routers."""
from __future__ import annotations

import logging
import random
from typing import Callable, List, Optional, Tuple

from ..core.config import GARSIDE_ALPHA_BETA_TOLERANCE, GARSIDE_HEAVY
from ..core.debug import log_timing
from ..core.errors import DefectError, EnumerationTooLargeError, GarsideError
from ..models.models import (AlphaBetaModel, DeltaPureModel, ExperimentConfig, GrowthProfileModel,
                             PdExperimentRow, ReportResponse, TransitivityModel, VerifyLine, VerifyReport)
from .artin import (artin, chain_normal_form_check, full_chain, load_witnesses, transitivity_theorem_harness,
                    u_element, v_element, v_start_expectation, validate_i2_connections, verify_witnesses)
from .descriptors import parse_descriptor
from .framing import framing
from .langgraph import (LangGraph, ball_profile, build_acceptor, count_sequence, count_sup_ball, counts_json,
                        essential_elements, essential_transitivity, growth_from_counts, growth_profile,
                        nontrivial_components, predict_product_growth, rigid_sequence, sample_uniform)
from .normalform import NormalForm, confirm_penetration_distance, penetration_distance
from .penetration import alpha_beta_report, build_pi, build_pi_tilde
from .structures import GarsideStructure, delta_pure
from .tables import table_structure

logger = logging.getLogger(__name__)

PD_SAMPLES = 400
PD_SEED = 7
AA_BB_AMALGAM = "amalgam:table:aa_bb.json,table:aa_bb.json"
A2_AA_BB_AMALGAM = "amalgam:artin:A2,table:aa_bb.json"


def _acceptor(descriptor: str, cap: Optional[int] = None) -> Tuple[GarsideStructure, LangGraph]:
    structure = parse_descriptor(descriptor)
    return structure, build_acceptor(structure, cap=cap)


def essential_names(structure: GarsideStructure, graph: LangGraph) -> List[str]:
    return sorted(structure.display(x) for x in essential_elements(graph))


@log_timing
def build_report(descriptor: str, counts_up_to: int = 8, rigid_up_to: int = 6,
                 with_pseq: bool = True, cap: Optional[int] = None) -> ReportResponse:
    """Acceptor statistics, Ess, transitivity, growth, α/β and Δ-purity for one structure."""
    structure, graph = _acceptor(descriptor, cap)
    transitivity = essential_transitivity(graph)
    profile = growth_profile(graph)
    alpha: Optional[float] = None
    below: Optional[bool] = None
    if with_pseq:
        try:
            result = alpha_beta_report(structure, pi=build_pi(structure, cap), acceptor=graph)
            alpha, below = result.alpha, result.alpha_lt_beta
        except EnumerationTooLargeError as e:
            logger.warning(f"Skipping α for {descriptor}: {str(e)}")
    return ReportResponse(
        structure=descriptor,
        atoms=[structure.display(a) for a in structure.atoms()],
        proper_simples=graph.vertex_count,
        acceptor_vertices=graph.vertex_count,
        acceptor_edges=graph.edge_count,
        essential=essential_names(structure, graph),
        transitive=transitivity.transitive,
        k=transitivity.k,
        diameter=transitivity.diameter,
        beta=profile.rate,
        degree=profile.degree,
        alpha=alpha,
        alpha_lt_beta=below,
        delta_pure=delta_pure(structure).pure,
        rigid_counts=counts_json(rigid_sequence(graph, rigid_up_to)),
        word_counts=counts_json(count_sequence(graph, counts_up_to)),
    )


def growth_report(descriptor: str, k: int = 12, cap: Optional[int] = None) -> GrowthProfileModel:
    _, graph = _acceptor(descriptor, cap)
    profile = growth_profile(graph)
    gamma, r = ball_profile(profile)
    return GrowthProfileModel(rate=profile.rate, degree=profile.degree, ball_rate=gamma, ball_degree=r,
                              count_ratio=growth_from_counts(count_sequence(graph, k)))


def transitivity_report(descriptor: str, cap: Optional[int] = None) -> TransitivityModel:
    _, graph = _acceptor(descriptor, cap)
    result = essential_transitivity(graph)
    return TransitivityModel(transitive=result.transitive, k=result.k, diameter=result.diameter,
                             components=result.components)


def delta_pure_report(descriptor: str) -> DeltaPureModel:
    structure = parse_descriptor(descriptor)
    purity = delta_pure(structure)
    return DeltaPureModel(pure=purity.pure, witnesses={
        structure.display(a): structure.display(d) for a, d in purity.witnesses.items()})


def alpha_beta_model(descriptor: str, k: int = 12, cap: Optional[int] = None) -> AlphaBetaModel:
    structure = parse_descriptor(descriptor)
    result = alpha_beta_report(structure, k=k, pi=build_pi(structure, cap),
                               acceptor=build_acceptor(structure, cap=cap))
    return AlphaBetaModel(alpha=result.alpha, beta=result.beta, alpha_lt_beta=result.alpha_lt_beta,
                          pseq_ratio=result.pseq_ratio, words_ratio=result.words_ratio)


# -- penetration distance experiment ------------------------------------------------------


@log_timing
def run_pd_experiment(config: ExperimentConfig) -> List[PdExperimentRow]:
    """
    Mean and maximum pd(x, a) for x uniform in L^(k) and a a uniform atom.

    Every sample has its own random stream, and a share of the samples is
    re-checked against the literal meets with powers of Δ.
    """
    structure, graph = _acceptor(config.structure)
    atoms = structure.atoms()
    rows = []
    for k in config.k_values:
        values = []
        for index in range(config.samples):
            x = NormalForm(0, tuple(sample_uniform(graph, k, config.seed, index)))
            rng = random.Random(f"{config.seed}:{k}:{index}:atom")
            a = rng.choice(atoms)
            pd = penetration_distance(structure, x, [a])
            if rng.random() < config.cross_check_fraction and not confirm_penetration_distance(structure, x, [a], pd):
                raise DefectError("penetration distance disagrees with the literal meets",
                                  f"k={k} sample={index} pd={pd}")
            values.append(pd)
        rows.append(PdExperimentRow(k=k, mean_pd=sum(values) / len(values), max_pd=max(values),
                                    samples=len(values)))
        logger.info(f"{config.structure} k={k}: mean pd {rows[-1].mean_pd:.4f}")
    return rows


# -- verification suite -------------------------------------------------------------------


def _check(lines: List[VerifyLine], claim: str, check: Callable[[], Tuple[bool, str]]) -> None:
    try:
        passed, detail = check()
    except GarsideError as e:
        passed, detail = False, f"{type(e).__name__}: {str(e)}"
    lines.append(VerifyLine(claim=claim, passed=passed, detail=detail))
    logger.info(lines[-1].render())


def _edges(structure: GarsideStructure, graph: LangGraph) -> set:
    return {(structure.display(x), structure.display(y))
            for x in graph.vertices for y in graph.vertices if graph.has_edge(x, y)}


# the two 3-cycles and the cross edges out of every square
ABC_EDGES = {("a", "c"), ("c", "b"), ("b", "a"), ("aa", "bb"), ("bb", "cc"), ("cc", "aa"),
             ("aa", "b"), ("aa", "c"), ("bb", "a"), ("bb", "c"), ("cc", "a"), ("cc", "b")}

# M(2) of <a,b | aa=bb>; "aa|a" is a^3 and "aa|b" is b^3
FRAMED_AA_BB_EDGES = {("a|b", "a"), ("a|b", "a|b"), ("b|a", "b"), ("b|a", "b|a"),
                      ("aa|b", "a"), ("aa|b", "a|b"), ("aa|a", "b"), ("aa|a", "b|a")}


def _acceptor_fixtures(lines: List[VerifyLine]) -> None:
    def aa_bb():
        s = table_structure("aa_bb.json")
        edges = _edges(s, build_acceptor(s))
        return edges == {("a", "b"), ("b", "a")}, f"edges {sorted(edges)}"

    def a2():
        g = build_acceptor(artin("A2"))
        return (g.vertex_count, g.edge_count) == (4, 8), f"{g.vertex_count} vertices, {g.edge_count} edges"

    def abc():
        s = table_structure("abc.json")
        g = build_acceptor(s)
        sizes = sorted(len(c) for c in nontrivial_components(g))
        edges = _edges(s, g)
        return edges == ABC_EDGES and sizes == [3, 3], f"edges {sorted(edges)}, components {sizes}"

    def framed():
        s = framing(table_structure("aa_bb.json"), 2)
        g = build_acceptor(s)
        edges = _edges(s, g)
        return g.vertex_count == 7 and edges == FRAMED_AA_BB_EDGES, f"{g.vertex_count} vertices, edges {sorted(edges)}"

    _check(lines, "acceptor of <a,b | aa=bb> is the 2-cycle a <-> b", aa_bb)
    _check(lines, "acceptor of A2 has 4 vertices and 8 edges", a2)
    _check(lines, "acceptor of <a,b,c | ab=cc, bc=aa, ca=bb> has two 3-cycles and 12 edges", abc)
    _check(lines, "acceptor of M(2) of <a,b | aa=bb> has 7 vertices and 8 edges", framed)


def _pi_fixtures(lines: List[VerifyLine]) -> None:
    def pi(descriptor, vertices):
        def check():
            g = build_pi(parse_descriptor(descriptor))
            return (g.vertex_count, g.edge_count) == (vertices, 0), f"{g.vertex_count} states, {g.edge_count} edges"
        return check

    def in_degrees(descriptor):
        def check():
            structure = parse_descriptor(descriptor)
            gamma, tilde = build_acceptor(structure, quotient=False), build_pi_tilde(structure)
            bad = [state for state in tilde.vertices
                   if len(tilde.predecessors[tilde.node_of[state]])
                   != len(gamma.predecessors[gamma.node_of[state[0]]])]
            return not bad, f"{len(bad)} states differ"
        return check

    _check(lines, "Π of A2 has 6 states and no edges", pi("artin:A2", 6))
    _check(lines, "Π of <a,b | aa=bb> has 2 states and no edges", pi("table:aa_bb.json", 2))
    for descriptor in ("artin:A2", "artin:A3", "table:aa_bb.json", "table:aba_bb.json"):
        _check(lines, f"in-degrees of Π-tilde match Γ for {descriptor}", in_degrees(descriptor))


def _essential_fixtures(lines: List[VerifyLine], heavy: bool) -> None:
    types = ["A2", "A3", "A4", "B2", "B3", "D4", "H3", "I2(5)"] + (["A5", "B4", "F4"] if heavy else [])
    for type_name in types:
        def all_proper(type_name=type_name):
            structure = artin(type_name)
            ess = essential_elements(build_acceptor(structure))
            return len(ess) == structure.simple_count() - 2, f"{len(ess)} of {structure.simple_count() - 2}"
        _check(lines, f"every proper simple of {type_name} is essential", all_proper)

    def aba_bb():
        s = table_structure("aba_bb.json")
        names = essential_names(s, build_acceptor(s))
        return "b" not in names and "bb" not in names, f"Ess = {names}"

    def framed():
        s = framing(table_structure("aa_bb.json"), 2)
        names = essential_names(s, build_acceptor(s))
        return names == ["a|b", "b|a"], f"Ess = {names}"

    _check(lines, "b and bb are not essential in <a,b | aba=bb>", aba_bb)
    _check(lines, "Ess of M(2) of <a,b | aa=bb> is {ab, ba}", framed)


def _diameter_checks(lines: List[VerifyLine], heavy: bool) -> None:
    for row in transitivity_theorem_harness(heavy=heavy):
        _check(lines, f"{row.type_name} is essentially transitive with diameter {row.expected}",
               lambda row=row: (row.passed, f"transitive={row.transitive} diameter={row.diameter}"))
    for descriptor in ("prod:artin:A2,artin:A2", "prod:artin:A1,artin:A2"):
        def product(descriptor=descriptor):
            result = essential_transitivity(build_acceptor(parse_descriptor(descriptor)))
            return not result.transitive, f"{result.components} nontrivial components"
        _check(lines, f"{descriptor} is not essentially transitive", product)
    for descriptor, expected in ((AA_BB_AMALGAM, 1), (A2_AA_BB_AMALGAM, 2)):
        def amalgam(descriptor=descriptor, expected=expected):
            result = essential_transitivity(build_acceptor(parse_descriptor(descriptor)))
            return (result.transitive and result.diameter == expected,
                    f"transitive={result.transitive} diameter={result.diameter}")
        _check(lines, f"{descriptor} is essentially transitive with diameter {expected}", amalgam)


def _witness_checks(lines: List[VerifyLine], heavy: bool, witnesses_path: Optional[str]) -> None:
    catalog = load_witnesses(witnesses_path)
    for type_name in ["H3", "H4", "F4", "E6"] + (["E7", "E8"] if heavy else []):
        if type_name not in catalog:
            lines.append(VerifyLine(claim=f"witnesses for {type_name}", passed=False, detail="missing from catalog"))
            continue
        for check in verify_witnesses(type_name, catalog):
            lines.append(VerifyLine(claim=f"{type_name} witness {check.name} = {check.word}",
                                    passed=check.passed, detail=check.detail))


def _chain_checks(lines: List[VerifyLine], heavy: bool) -> None:
    def v_start(type_name):
        def check():
            structure = artin(type_name)
            v = v_element(structure, full_chain(structure))
            odd, exact = v_start_expectation(structure)
            start = structure.descent_labels(v, "left")
            return (start == odd if exact else start <= odd), f"S(v) = {sorted(start)}"
        return check

    for type_name in ["A3", "A4", "B4", "D5"]:
        _check(lines, f"S(v) is the set of odd chain labels in {type_name}", v_start(type_name))

    def chains(type_name, samples):
        def check():
            structure = artin(type_name)
            proper = structure.proper_simples()
            rng = random.Random(f"chain:{type_name}")
            bad = 0
            for _ in range(samples):
                _, ok = chain_normal_form_check(structure, rng.choice(proper), rng.choice(proper))
                bad += not ok
            return bad == 0, f"{bad} of {samples} chains not in normal form"
        return check

    for type_name in ["A2", "A3", "A4"] + (["A5", "B4", "D5"] if heavy else []):
        _check(lines, f"x|x1|x2|x3|x4|y is normal in {type_name}", chains(type_name, 200))
    def u_sets():
        structure = artin("A3")
        u = u_element(structure, [1, 2, 3])
        start, finish = structure.descent_labels(u, "left"), structure.descent_labels(u, "right")
        return (start, finish) == ({2}, {1, 3}), f"S(u) = {sorted(start)}, F(u) = {sorted(finish)}"

    _check(lines, "u in A3 has S = {2} and F = {1,3}", u_sets)


def _growth_checks(lines: List[VerifyLine], heavy: bool) -> None:
    def below(descriptor):
        def check():
            result = alpha_beta_report(parse_descriptor(descriptor))
            return result.beta - result.alpha > 0.1, f"α={result.alpha:.8f} β={result.beta:.8f}"
        return check

    def a2_rates():
        result = alpha_beta_report(artin("A2"))
        return (abs(result.alpha) < 1e-9 and abs(result.beta - 2.0) < 1e-9,
                f"α={result.alpha:.8f} β={result.beta:.8f}")

    _check(lines, "α = 0 and β = 2 for A2", a2_rates)

    light = ["artin:A2", "artin:A3", "artin:B2", "artin:I2(5)", "artin:I2(7)"]
    extra = ["artin:A4", "artin:A5", "artin:B3", "artin:B4", "artin:D4", "artin:H3", "artin:F4"]
    for descriptor in light + (extra if heavy else []):
        _check(lines, f"α < β for {descriptor}", below(descriptor))

    def product():
        result = alpha_beta_report(parse_descriptor("prod:artin:A2,artin:A2"))
        close = abs(result.alpha - result.beta) <= GARSIDE_ALPHA_BETA_TOLERANCE * max(1.0, result.beta)
        return close, f"α={result.alpha:.8f} β={result.beta:.8f}"

    _check(lines, "α = β for A2 × A2", product)

    def product_balls():
        a2, square = build_acceptor(artin("A2")), build_acceptor(parse_descriptor("prod:artin:A2,artin:A2"))
        bad = [k for k in range(6) if count_sup_ball(square, k) != count_sup_ball(a2, k) ** 2]
        predicted = predict_product_growth(growth_profile(a2), growth_profile(a2))
        measured = growth_profile(square)
        same = abs(measured.rate - predicted.beta) < 1e-6 and measured.degree == predicted.q
        return not bad and same, f"ball mismatches at k={bad}, β={measured.rate:.8f} q={measured.degree}"

    _check(lines, "balls and growth of A2 × A2 follow from those of A2", product_balls)
    for p in (5, 6, 7):
        _check(lines, f"I2({p}) connection table yields normal words",
               lambda p=p: (lambda failures: (not failures, f"failing pairs {failures[:5]}"))(validate_i2_connections(p)))
    for descriptor in ("artin:A2", "artin:A3", "artin:B3"):
        _check(lines, f"{descriptor} is Δ-pure", lambda descriptor=descriptor: (
            delta_pure(parse_descriptor(descriptor)).pure, ""))

    def framed_purity():
        report = delta_pure_report("frame:table:aa_bb.json:2")
        return report.pure and report.witnesses == {"a": "aa", "b": "aa"}, f"Δ_x = {report.witnesses}"

    def product_purity():
        report = delta_pure_report("prod:artin:A2,artin:A2")
        return not report.pure, f"Δ_x = {report.witnesses}"

    _check(lines, "Δ_a = Δ_b = aa in M(2) of <a,b | aa=bb>", framed_purity)
    _check(lines, "A2 × A2 is not Δ-pure", product_purity)


def _pd_checks(lines: List[VerifyLine], heavy: bool) -> None:
    if not heavy:
        return

    def means(descriptor, k_values):
        config = ExperimentConfig(structure=descriptor, k_values=k_values, samples=PD_SAMPLES, seed=PD_SEED)
        return [row.mean_pd for row in run_pd_experiment(config)]

    def bounded():
        short, long = means("artin:A3", [10, 80])
        return long <= 1.5 * short, f"mean pd {short:.4f} at k=10, {long:.4f} at k=80"

    def unbounded():
        short, long = means("prod:artin:A2,artin:A2", [10, 40])
        return long >= 2 * short, f"mean pd {short:.4f} at k=10, {long:.4f} at k=40"

    _check(lines, "mean pd of A3 stays bounded from k=10 to k=80", bounded)
    _check(lines, "mean pd of A2 × A2 at least doubles from k=10 to k=40", unbounded)


@log_timing
def verify_all(heavy: Optional[bool] = None, witnesses_path: Optional[str] = None) -> VerifyReport:
    """Every concrete claim checked at desk scale; heavy checks only when asked."""
    heavy = GARSIDE_HEAVY if heavy is None else heavy
    lines: List[VerifyLine] = []
    _acceptor_fixtures(lines)
    _pi_fixtures(lines)
    _essential_fixtures(lines, heavy)
    _diameter_checks(lines, heavy)
    _witness_checks(lines, heavy, witnesses_path)
    _chain_checks(lines, heavy)
    _growth_checks(lines, heavy)
    _pd_checks(lines, heavy)
    report = VerifyReport(lines=lines)
    logger.info(f"Verification finished: {sum(l.passed for l in lines)}/{len(lines)} passed")
    return report
