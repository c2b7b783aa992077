import networkx as nx
import numpy as np
import pytest

from app.core.errors import ConfigurationError, EmptyLanguageError, NumericError
from app.garside.analysis import ABC_EDGES
from app.garside.artin import artin
from app.garside.descriptors import parse_descriptor
from app.garside.langgraph import (GrowthProfile, ball_profile, build_acceptor, check_class_edges, count_ball,
                                   count_rigid, count_sequence, count_sup_ball, count_words, enumerate_words,
                                   essential_elements, essential_transitivity, export_digraph, growth_from_counts,
                                   growth_profile, nontrivial_components, predict_product_growth, restricted_ratio,
                                   rigid_proportion, rigid_sequence, sample_uniform, spectral_radius)
from app.garside.normalform import is_normal
from app.garside.tables import table_structure


def test_aa_bb_acceptor_is_a_two_cycle(aa_bb):
    graph = build_acceptor(aa_bb)
    assert export_digraph(graph) == "a\nb\na -> b\nb -> a\n"
    assert essential_elements(graph) == {aa_bb.find("a"), aa_bb.find("b")}
    result = essential_transitivity(graph)
    assert result.transitive
    assert result.diameter == 1


def test_a2_acceptor(a2):
    graph = build_acceptor(a2)
    assert graph.quotient
    assert (graph.vertex_count, graph.edge_count) == (4, 8)
    flat = build_acceptor(a2, quotient=False)
    assert (flat.vertex_count, flat.edge_count) == (4, 8)
    result = essential_transitivity(graph)
    assert (result.transitive, result.diameter) == (True, 2)


def test_quotient_requires_descent_determined_backend(aa_bb):
    with pytest.raises(ConfigurationError):
        build_acceptor(aa_bb, quotient=True)


def test_class_edges_agree_with_normal_pairs(a3):
    assert check_class_edges(build_acceptor(a3)) == []


def test_abc_is_not_essentially_transitive(abc):
    graph = build_acceptor(abc)
    assert graph.edge_count == 12
    components = nontrivial_components(graph)
    assert sorted(len(c) for c in components) == [3, 3]
    names = [sorted(abc.display(x) for node in component for x in graph.members[node]) for component in components]
    assert sorted(names) == [["a", "b", "c"], ["aa", "bb", "cc"]]
    result = essential_transitivity(graph)
    assert not result.transitive
    assert result.components == 2


def test_aba_bb_essential_elements(aba_bb):
    names = {aba_bb.display(x) for x in essential_elements(build_acceptor(aba_bb))}
    assert names == {"a", "ab", "ba", "bab"}


@pytest.mark.parametrize("type_name", ["A2", "A3", "B2", "B3", "H3", "I2(5)"])
def test_every_proper_simple_is_essential(type_name):
    structure = artin(type_name)
    assert len(essential_elements(build_acceptor(structure))) == structure.simple_count() - 2


def test_counts_for_a2(a2):
    graph = build_acceptor(a2)
    assert count_sequence(graph, 4) == [1, 4, 8, 16, 32]
    assert rigid_sequence(graph, 3) == [2, 4, 8]
    assert count_rigid(graph, 2) == 4
    assert count_ball(graph, 2) == 13
    assert count_words(graph, 3, last=a2.atom(1)) == 4
    assert restricted_ratio(graph, 3, a2.atom(1)) == 0.25


def test_counts_for_aa_bb(aa_bb):
    graph = build_acceptor(aa_bb)
    counts = count_sequence(graph, 21)
    rigid = rigid_sequence(graph, 21)
    for m in range(11):
        assert counts[2 * m + 1] == 2
        assert rigid[2 * m] == 0
    assert rigid[1] == 2
    assert rigid_proportion(graph, 2) == 0.5


@pytest.mark.parametrize("descriptor", ["A2", "A3", "B2"])
def test_transfer_matrix_counts_match_enumeration(descriptor):
    graph = build_acceptor(artin(descriptor))
    counts = count_sequence(graph, 4)
    rigid = rigid_sequence(graph, 4)
    structure = graph.structure
    for k in range(1, 5):
        words = list(enumerate_words(graph, k))
        assert len(words) == counts[k]
        assert sum(1 for w in words if structure.normal_pair(w[-1], w[0])) == rigid[k - 1]


@pytest.mark.parametrize("fixture", ["aa_bb.json", "aba_bb.json", "abc.json"])
def test_table_counts_match_enumeration(fixture):
    graph = build_acceptor(table_structure(fixture))
    counts = count_sequence(graph, 4)
    for k in range(1, 5):
        assert len(list(enumerate_words(graph, k))) == counts[k]


def test_growth_profiles(a2, aa_bb):
    profile = growth_profile(build_acceptor(a2))
    assert profile.rate == pytest.approx(2.0, rel=1e-8)
    assert profile.degree == 0
    circle = growth_profile(build_acceptor(aa_bb))
    assert circle.rate == pytest.approx(1.0, rel=1e-8)
    assert ball_profile(circle) == (1.0, 1)
    assert growth_from_counts(count_sequence(build_acceptor(a2), 6)) == 2.0
    assert growth_from_counts([1]) is None


def test_growth_degree_counts_chained_components(abc):
    profile = growth_profile(build_acceptor(abc))
    assert profile.rate == pytest.approx(1.0, rel=1e-8)
    assert profile.degree == 1


def test_spectral_radius():
    assert spectral_radius(np.array([[1.0, 1.0], [1.0, 0.0]])) == pytest.approx((1 + 5 ** 0.5) / 2, rel=1e-9)
    with pytest.raises(NumericError) as info:
        spectral_radius(np.array([[1.0, 1.0], [1.0, 0.0]]), max_iter=1)
    assert info.value.estimate is not None


@pytest.mark.parametrize("g,h,expected", [
    (GrowthProfile(2.0, 0), GrowthProfile(3.0, 1), (6.0, 1, 6.0, 1)),
    (GrowthProfile(2.0, 0), GrowthProfile(1.0, 0), (2.0, 2, 2.0, 2)),
    (GrowthProfile(1.0, 0), GrowthProfile(1.0, 2), (1.0, 4, 1.0, 5)),
    (GrowthProfile(2.0, 1), GrowthProfile(0.0, 0), (2.0, 2, 2.0, 2)),
])
def test_predict_product_growth(g, h, expected):
    prediction = predict_product_growth(g, h)
    assert (prediction.beta, prediction.q, prediction.gamma, prediction.r) == expected


def test_sampling_is_reproducible_and_normal(a3):
    graph = build_acceptor(a3)
    first = sample_uniform(graph, 7, seed=3, index=5)
    assert first == sample_uniform(graph, 7, seed=3, index=5)
    assert len(first) == 7
    assert is_normal(a3, first)
    assert sample_uniform(graph, 0) == []


def test_sampling_is_uniform_on_a2(a2):
    graph = build_acceptor(a2)
    seen = {tuple(sample_uniform(graph, 2, seed=0, index=i)) for i in range(400)}
    assert len(seen) == 8


def test_sampling_empty_language():
    graph = build_acceptor(artin("A1"))
    with pytest.raises(EmptyLanguageError):
        sample_uniform(graph, 3)


def test_to_networkx(a2):
    digraph = build_acceptor(a2, quotient=False).to_networkx()
    assert isinstance(digraph, nx.DiGraph)
    assert digraph.number_of_edges() == 8


def test_abc_acceptor_edges(abc):
    graph = build_acceptor(abc)
    edges = {(abc.display(x), abc.display(y)) for x in graph.vertices for y in graph.vertices if graph.has_edge(x, y)}
    cycles = {("a", "c"), ("c", "b"), ("b", "a"), ("aa", "bb"), ("bb", "cc"), ("cc", "aa")}
    cross = {("aa", "b"), ("aa", "c"), ("bb", "a"), ("bb", "c"), ("cc", "a"), ("cc", "b")}
    assert edges == cycles | cross
    assert edges == ABC_EDGES


def test_sup_balls_multiply_over_products(a2):
    line = build_acceptor(a2)
    square = build_acceptor(parse_descriptor("prod:artin:A2,artin:A2"))
    assert [count_sup_ball(line, k) for k in range(4)] == [1, 6, 19, 48]
    assert count_sup_ball(square, 1) == 36
    for k in range(6):
        assert count_sup_ball(square, k) == count_sup_ball(line, k) ** 2
        assert count_sup_ball(line, k) == sum(count_ball(line, m) for m in range(k + 1))


def test_measured_product_growth_matches_prediction(a2):
    factor = growth_profile(build_acceptor(a2))
    measured = growth_profile(build_acceptor(parse_descriptor("prod:artin:A2,artin:A2")))
    predicted = predict_product_growth(factor, factor)
    assert measured.rate == pytest.approx(predicted.beta, rel=1e-6)
    assert measured.rate == pytest.approx(4.0, rel=1e-6)
    assert measured.degree == predicted.q == 0
    assert ball_profile(measured) == pytest.approx((predicted.gamma, predicted.r), rel=1e-6)


@pytest.mark.parametrize("descriptor,gamma", [("artin:A2", 2.0), ("prod:artin:A2,artin:A2", 4.0)])
def test_ball_profile_matches_exact_ball_counts(descriptor, gamma):
    graph = build_acceptor(parse_descriptor(descriptor))
    predicted, r = ball_profile(growth_profile(graph))
    assert predicted == pytest.approx(gamma, rel=1e-6)
    assert r == 0
    assert count_ball(graph, 21) / count_ball(graph, 20) == pytest.approx(predicted, abs=1e-3)


@pytest.mark.parametrize("descriptor", [
    "artin:A3", "artin:B3", "artin:I2(5)", "table:aba_bb.json", "table:abc.json",
    "amalgam:table:aa_bb.json,table:aa_bb.json", "amalgam:artin:A2,table:aa_bb.json",
])
def test_essential_elements_are_closed_under_complement(descriptor):
    structure = parse_descriptor(descriptor)
    ess = essential_elements(build_acceptor(structure))
    assert len(ess) > 1
    assert {structure.right_complement(x) for x in ess} == ess


@pytest.mark.parametrize("descriptor,diameter", [
    ("amalgam:table:aa_bb.json,table:aa_bb.json", 1),
    ("amalgam:artin:A2,table:aa_bb.json", 2),
])
def test_amalgams_are_essentially_transitive(descriptor, diameter):
    structure = parse_descriptor(descriptor)
    graph = build_acceptor(structure)
    assert essential_elements(graph) == set(structure.proper_simples())
    result = essential_transitivity(graph)
    assert result.transitive
    assert result.diameter == diameter


@pytest.mark.parametrize("descriptor", ["artin:A2", "artin:A3", "artin:B3", "table:aa_bb.json",
                                        "amalgam:table:aa_bb.json,table:aa_bb.json"])
def test_rigid_proportion_stays_bounded_below(descriptor):
    graph = build_acceptor(parse_descriptor(descriptor))
    start = rigid_proportion(graph, 10)
    assert start > 0
    assert min(rigid_proportion(graph, k) for k in range(10, 31)) >= start / 2


def test_restricted_counts_and_balls_are_stable_for_a3(a3):
    graph = build_acceptor(a3)
    for s in a3.proper_simples():
        start = restricted_ratio(graph, 10, s)
        assert start > 0
        for k in range(10, 26):
            assert start / 2 <= restricted_ratio(graph, k, s) <= 2 * start
    start = count_ball(graph, 10) / count_words(graph, 10)
    for k in range(10, 26):
        assert start / 2 <= count_ball(graph, k) / count_words(graph, k) <= 2 * start


@pytest.mark.parametrize("type_name", ["A2", "A3", "A4", "B2", "B3", "D4", "H3", "I2(5)", "I2(7)",
                                       pytest.param("F4", marks=pytest.mark.heavy)])
def test_irreducible_types_grow_exponentially(type_name):
    graph = build_acceptor(artin(type_name))
    assert growth_profile(graph).rate > 1
    counts = count_sequence(graph, 15)
    assert min(counts[k + 1] / counts[k] for k in range(5, 15)) > 1.1
