import pytest
from pydantic import ValidationError

from app.core.errors import ConfigurationError, EnumerationTooLargeError, TableValidationError
from app.garside.analysis import FRAMED_AA_BB_EDGES, delta_pure_report
from app.garside.artin import artin
from app.garside.descriptors import parse_descriptor, split_pair
from app.garside.framing import framed_essential, framing
from app.garside.langgraph import build_acceptor, essential_elements
from app.garside.normalform import normalize
from app.garside.structures import amalgam, delta_pure, direct_product
from app.garside.tables import table_from_model, table_structure, validate_table
from app.models.models import GarsideTableModel


def _complement_laws(structure):
    for x in structure.simples():
        assert structure.partial_product(x, structure.right_complement(x)) == structure.delta
        assert structure.partial_product(structure.left_complement(x), x) == structure.delta
        assert structure.left_complement(structure.right_complement(x)) == x


@pytest.mark.parametrize("fixture", ["aa_bb.json", "aba_bb.json", "abc.json"])
def test_table_fixtures_satisfy_complement_laws(fixture):
    _complement_laws(table_structure(fixture))


def test_artin_complement_laws(a3):
    _complement_laws(a3)


def test_aa_bb_basics(aa_bb):
    a, b = aa_bb.find("a"), aa_bb.find("b")
    assert aa_bb.atoms() == [a, b]
    assert aa_bb.proper_simples() == [a, b]
    assert aa_bb.right_complement(a) == a
    assert aa_bb.normal_pair(a, b)
    assert not aa_bb.normal_pair(a, a)
    assert aa_bb.join(a, b) == aa_bb.delta
    assert aa_bb.meet(a, b) == aa_bb.one


@pytest.mark.parametrize("fixture", ["aba_bb.json", "abc.json"])
def test_greedy_meet_matches_brute_force(fixture):
    structure = table_structure(fixture)
    for x in structure.simples():
        for y in structure.simples():
            assert structure.meet(x, y) == structure.meet_bruteforce(x, y)
            assert structure.meet(x, y, descending=True) == structure.meet_bruteforce(x, y)


def test_meet_and_join_in_artin(a3):
    s1, s2, s3 = (a3.atom(label) for label in (1, 2, 3))
    assert a3.meet(a3.element("121"), a3.element("123")) == a3.element("12")
    assert a3.join(s1, s3) == a3.element("13")
    assert a3.join(s1, s2) == a3.element("121")
    assert a3.under(s1, s2) == a3.element("21")
    assert a3.suffix_meet(a3.element("213"), a3.element("13")) == a3.element("13")


def test_artin_edge_law_is_descent_determined(a3):
    proper = a3.proper_simples()
    for x in proper:
        for y in proper:
            assert a3.normal_pair(x, y) == a3.normal_pair_by_descents(x, y)


def test_artin_display_and_find(a3):
    assert a3.display(a3.one) == "e"
    assert a3.display(a3.delta) == "121321"
    assert a3.find("21") == a3.element([2, 1])
    with pytest.raises(ConfigurationError):
        a3.element("11")


def test_invalid_table_is_rejected():
    model = GarsideTableModel(name="bad", simples=[{"id": 1, "display": "a"}, {"id": 2, "display": "b"}],
                              delta=1, products=[])
    with pytest.raises(TableValidationError):
        validate_table(table_from_model(model))


def test_non_functional_table_is_rejected():
    model = GarsideTableModel(name="bad", simples=[{"id": 1, "display": "a"}, {"id": 2, "display": "aa"}],
                              delta=2, products=[[1, 1, 2], [1, 1, 1]])
    with pytest.raises(TableValidationError) as info:
        table_from_model(model)
    assert info.value.pair == (1, 1)


def test_duplicate_ids_fail_schema_validation():
    with pytest.raises(ValidationError):
        GarsideTableModel(name="dup", simples=[{"id": 1, "display": "a"}, {"id": 1, "display": "b"}],
                          delta=1, products=[])


def test_missing_table_file():
    with pytest.raises(ConfigurationError):
        table_structure("no_such_table.json")


def test_direct_product(a2):
    product = direct_product(a2, artin("A1"))
    assert product.simple_count() == 12
    assert len(product.proper_simples()) == 10
    assert len(product.atoms()) == 3
    _complement_laws(product)


def test_amalgam_over_delta(aa_bb):
    structure = amalgam(aa_bb, aa_bb)
    assert structure.simple_count() == 6
    assert len(structure.proper_simples()) == 4
    _complement_laws(structure)
    g_a, h_a = (0, aa_bb.find("a")), (1, aa_bb.find("a"))
    assert structure.partial_product(g_a, g_a) == structure.delta
    assert structure.partial_product(g_a, h_a) is None
    assert structure.display(g_a) == "G.a"


def test_delta_purity(a3, aa_bb):
    assert delta_pure(a3).pure
    assert delta_pure(aa_bb).pure
    product = delta_pure(direct_product(artin("A1"), artin("A1")))
    assert not product.pure
    assert len(set(product.witnesses.values())) == 2


def test_proper_simples_cap():
    with pytest.raises(EnumerationTooLargeError):
        artin("A4").proper_simples(cap=10)


def test_framing_of_aa_bb(aa_bb):
    framed = framing(aa_bb, 2)
    assert framed.simple_count() == 9
    assert len(framed.proper_simples()) == 7
    assert framed.display(framed.delta) == "aa|aa"
    ab = framed.lift([aa_bb.find("a"), aa_bb.find("b")])
    assert framed.display(ab) == "a|b"
    assert framed.split_word(ab) == [aa_bb.find("a"), aa_bb.find("b")]
    names = sorted(framed.display(x) for x in essential_elements(build_acceptor(framed)))
    assert names == ["a|b", "b|a"]
    base_ess = essential_elements(build_acceptor(aa_bb))
    assert {framed.display(x) for x in framed_essential(framed, base_ess)} == {"a|b", "b|a"}


def test_framing_round_trip(a2):
    framed = framing(a2, 2)
    s1, s2 = a2.atom(1), a2.atom(2)
    nf = normalize(a2, [s1, s2, s1, s2, s2])
    grouped = framed.group_word(nf)
    assert framed.flatten(grouped) == nf.word(a2)
    with pytest.raises(ConfigurationError):
        framed.lift([s1, s2, s2, s1, s1])


def test_framing_rejects_degree_zero(aa_bb):
    with pytest.raises(ConfigurationError):
        framing(aa_bb, 0)


def test_descriptors():
    assert parse_descriptor("artin:A3").name == "artin:A3"
    assert parse_descriptor("ARTIN:a3") is not None
    assert parse_descriptor("table:aa_bb.json").name == "table:<a,b | aa = bb>"
    assert parse_descriptor("frame:artin:A2:2").k == 2
    nested = parse_descriptor("prod:(prod:artin:A1,artin:A1),artin:A2")
    assert nested.simple_count() == 2 * 2 * 6
    assert parse_descriptor("amalgam:table:aa_bb.json,table:aa_bb.json").simple_count() == 6
    assert parse_descriptor("artin:A2") is parse_descriptor("artin:A2")
    assert split_pair("(artin:A1),artin:A2") == ("artin:A1", "artin:A2")


@pytest.mark.parametrize("descriptor", ["artin", "foo:bar", "frame:artin:A2:x", "prod:artin:A2", "artin:Z9"])
def test_bad_descriptors(descriptor):
    with pytest.raises(ConfigurationError):
        parse_descriptor(descriptor)


def _prefix_meet(structure, x, y):
    common = [z for z in structure.simples() if structure.is_prefix(z, x) and structure.is_prefix(z, y)]
    return max(common, key=structure.system.length)


@pytest.mark.parametrize("type_name", ["A3", "B3", "I2(5)"])
def test_artin_meet_against_prefix_order(type_name):
    structure = artin(type_name)
    simples = structure.simples()
    for x in simples:
        dx = structure.right_complement(structure.right_complement(x))
        for y in simples:
            meet = structure.meet(x, y)
            assert meet == _prefix_meet(structure, x, y)
            assert meet == structure.meet(y, x)
            assert structure.meet(x, y, descending=True) == meet
            dy = structure.right_complement(structure.right_complement(y))
            assert structure.is_prefix(x, y) == structure.is_prefix(dx, dy)


def test_delta_of_each_atom_in_framed_aa_bb(aa_bb):
    framed = framing(aa_bb, 2)
    purity = delta_pure(framed)
    assert {framed.display(a): framed.display(d) for a, d in purity.witnesses.items()} == {"a": "aa", "b": "aa"}
    assert purity.pure
    assert framed.display(framed.delta) == "aa|aa"


def test_product_of_a2_is_not_delta_pure():
    report = delta_pure_report("prod:artin:A2,artin:A2")
    assert not report.pure
    assert report.witnesses == {"(1,e)": "(121,e)", "(2,e)": "(121,e)", "(e,1)": "(e,121)", "(e,2)": "(e,121)"}


@pytest.mark.parametrize("type_name", ["A1", "A2", "A4", "B2", "B3", "D4", "H3", "I2(5)", "I2(8)",
                                       pytest.param("F4", marks=pytest.mark.heavy)])
def test_irreducible_artin_types_are_delta_pure(type_name):
    structure = artin(type_name)
    purity = delta_pure(structure)
    assert purity.pure
    assert set(purity.witnesses.values()) == {structure.delta}


def test_framed_aa_bb_acceptor_edges(aa_bb):
    framed = framing(aa_bb, 2)
    graph = build_acceptor(framed)
    edges = {(framed.display(x), framed.display(y)) for x in graph.vertices for y in graph.vertices
             if graph.has_edge(x, y)}
    # "aa|a" is a^3 and "aa|b" is b^3
    assert edges == {("a|b", "a"), ("a|b", "a|b"), ("b|a", "b"), ("b|a", "b|a"),
                     ("aa|b", "a"), ("aa|b", "a|b"), ("aa|a", "b"), ("aa|a", "b|a")}
    assert graph.vertex_count == 7
    assert edges == FRAMED_AA_BB_EDGES
