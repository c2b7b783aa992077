import json

import pytest

from app.core.errors import ConfigurationError
from app.garside.analysis import (alpha_beta_model, build_report, delta_pure_report, growth_report,
                                  run_pd_experiment, transitivity_report, verify_all)
from app.models.models import ExperimentConfig


def test_report_for_a2():
    report = build_report("artin:A2")
    assert report.atoms == ["1", "2"]
    assert (report.proper_simples, report.acceptor_vertices, report.acceptor_edges) == (4, 4, 8)
    assert report.essential == ["1", "12", "2", "21"]
    assert (report.transitive, report.k, report.diameter) == (True, 2, 2)
    assert report.beta == pytest.approx(2.0)
    assert report.degree == 0
    assert report.alpha == 0.0
    assert report.alpha_lt_beta
    assert report.delta_pure
    assert report.word_counts[:3] == ["1", "4", "8"]
    assert report.rigid_counts[:3] == ["2", "4", "8"]


def test_report_for_aa_bb():
    report = build_report("table:aa_bb.json", counts_up_to=5, rigid_up_to=4)
    assert report.essential == ["a", "b"]
    assert report.acceptor_edges == 2
    assert report.diameter == 1
    assert report.beta == pytest.approx(1.0)
    assert report.word_counts == ["1", "2", "2", "2", "2", "2"]
    assert report.rigid_counts == ["0", "2", "0", "2"]


def test_report_without_pseq():
    report = build_report("artin:A2", with_pseq=False)
    assert report.alpha is None
    assert report.alpha_lt_beta is None


def test_smaller_reports():
    growth = growth_report("table:abc.json", k=6)
    assert growth.rate == pytest.approx(1.0)
    assert (growth.degree, growth.ball_degree) == (1, 2)
    transitivity = transitivity_report("table:abc.json")
    assert not transitivity.transitive
    assert transitivity.components == 2
    assert delta_pure_report("artin:A2").witnesses == {"1": "121", "2": "121"}
    model = alpha_beta_model("artin:A2", k=6)
    assert model.alpha == 0.0
    assert model.words_ratio == 2.0


def test_pd_experiment_is_reproducible():
    config = ExperimentConfig(structure="artin:A3", k_values=[2, 5], samples=40, seed=5, cross_check_fraction=1.0)
    rows = run_pd_experiment(config)
    assert rows == run_pd_experiment(config)
    assert [row.k for row in rows] == [2, 5]
    for row in rows:
        assert row.samples == 40
        assert 0 <= row.mean_pd <= row.max_pd <= row.k


def test_pd_experiment_on_aa_bb():
    config = ExperimentConfig(structure="table:aa_bb.json", k_values=[4], samples=20, cross_check_fraction=1.0)
    (row,) = run_pd_experiment(config)
    assert row.max_pd <= 1


def test_experiment_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(structure="artin:A2", k_values=[], samples=1)
    with pytest.raises(ValueError):
        ExperimentConfig(structure="artin:A2", k_values=[0], samples=1)
    assert ExperimentConfig(structure="artin:A2", k_values=[1], samples=1, format="JSON").format == "json"


def test_verify_flags_a_corrupted_catalog(tmp_path):
    path = tmp_path / "witnesses.json"
    path.write_text(json.dumps({"H3": [{"name": "x_1", "word": "1213", "start": [2], "finish": [1, 3]}]}))
    report = verify_all(heavy=False, witnesses_path=str(path))
    assert not report.passed
    failed = [line.claim for line in report.lines if not line.passed]
    assert "H3 witness x_1 = 1213" in failed
    assert "witnesses for H4" in failed
    assert any(line.passed for line in report.lines)
    passed = {line.claim for line in report.lines if line.passed}
    assert "balls and growth of A2 × A2 follow from those of A2" in passed
    assert "acceptor of M(2) of <a,b | aa=bb> has 7 vertices and 8 edges" in passed
    assert "Δ_a = Δ_b = aa in M(2) of <a,b | aa=bb>" in passed
    assert "A2 × A2 is not Δ-pure" in passed
    assert "amalgam:artin:A2,table:aa_bb.json is essentially transitive with diameter 2" in passed
    assert not any(line.claim.startswith("mean pd") for line in report.lines)


def test_verify_rejects_unreadable_catalog(tmp_path):
    with pytest.raises(ConfigurationError):
        verify_all(heavy=False, witnesses_path=str(tmp_path / "missing.json"))


@pytest.mark.heavy
def test_mean_pd_bounded_for_a3_and_growing_for_a2_squared():
    def means(structure, k_values):
        config = ExperimentConfig(structure=structure, k_values=k_values, samples=400, seed=7)
        return [row.mean_pd for row in run_pd_experiment(config)]

    short, long = means("artin:A3", [10, 80])
    assert long <= 1.5 * short
    short, long = means("prod:artin:A2,artin:A2", [10, 40])
    assert long >= 2 * short


@pytest.mark.heavy
def test_heavy_verify_includes_pd_growth():
    report = verify_all(heavy=True)
    pd_lines = [line for line in report.lines if line.claim.startswith("mean pd")]
    assert len(pd_lines) == 2
    assert all(line.passed for line in pd_lines)
