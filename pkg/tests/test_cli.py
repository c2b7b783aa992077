import json

from app.cli import main
from app.models.models import PdExperimentRow


def test_report_is_json(capsys):
    assert main(["report", "--structure", "artin:A2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["acceptor_edges"] == 8
    assert report["essential"] == ["1", "12", "2", "21"]


def test_acceptor_text(capsys):
    assert main(["acceptor", "--structure", "table:aa_bb.json"]) == 0
    assert capsys.readouterr().out == "a\nb\na -> b\nb -> a\n"


def test_acceptor_csv(capsys):
    assert main(["acceptor", "--structure", "table:aa_bb.json", "--format", "csv"]) == 0
    assert capsys.readouterr().out == "source,target\na,b\nb,a\n"


def test_rigid_csv_has_lf_endings(capsys):
    assert main(["rigid", "--structure", "artin:A2", "--k", "3"]) == 0
    assert capsys.readouterr().out == "k,words,rigid\n1,4,2\n2,8,4\n3,16,8\n"


def test_output_file(tmp_path, capsys):
    out = tmp_path / "essential.csv"
    assert main(["essential", "--structure", "table:aba_bb.json", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_bytes() == b"element\na\nab\nba\nbab\n"


def test_schema(capsys):
    assert main(["schema"]) == 0
    schema = json.loads(capsys.readouterr().out)
    assert "word_counts" in schema["properties"]


def test_pd_experiment(capsys):
    assert main(["pd-experiment", "--structure", "artin:A3", "--k", "3", "6", "--samples", "10", "--seed", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "k,mean_pd,max_pd,samples"
    assert [line.split(",")[0] for line in lines[1:]] == ["3", "6"]


def test_sample_is_seeded(capsys):
    argv = ["sample", "--structure", "artin:A3", "--k", "4", "--samples", "3", "--seed", "11"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    assert len(first.splitlines()) == 4


def test_verify_exit_code_on_failure(tmp_path, capsys):
    path = tmp_path / "witnesses.json"
    path.write_text(json.dumps({"H3": [{"name": "x_2", "word": "213", "start": [1], "finish": [1, 3]}]}))
    assert main(["verify", "--witnesses", str(path)]) == 1
    out = capsys.readouterr().out
    assert "FAIL H3 witness x_2 = 213" in out
    assert "PASS acceptor of A2 has 4 vertices and 8 edges" in out


def test_bad_descriptor_exits_with_2(capsys):
    assert main(["growth", "--structure", "artin:Z9"]) == 2
    assert capsys.readouterr().out == ""


def test_pd_experiment_defaults_to_2000_samples(monkeypatch, capsys):
    seen = []

    def fake_experiment(config):
        seen.append(config)
        return [PdExperimentRow(k=10, mean_pd=0.5, max_pd=1, samples=config.samples)]

    monkeypatch.setattr("app.cli.run_pd_experiment", fake_experiment)
    assert main(["pd-experiment", "--structure", "artin:A3", "--k", "10"]) == 0
    assert seen[0].samples == 2000
    assert seen[0].k_values == [10]
    assert capsys.readouterr().out.splitlines()[1].endswith(",2000")


def test_sample_defaults_to_one_word(capsys):
    assert main(["sample", "--structure", "artin:A2", "--k", "3"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 2
