# -*- coding: utf-8 -*-
import json

import pytest

from cli import AnalysisConfig, run
from errors import PremiseError


def run_json(tmp_path, *argv):
    output = tmp_path / "report.json"
    code = run(list(argv) + ["--format", "json", "--output", str(output)])
    assert code == 0
    return json.loads(output.read_text(encoding="utf-8"))


@pytest.fixture
def tm_file(tmp_path):
    path = tmp_path / "tm.sub"
    path.write_text("# Thue-Morse\na -> ab\nb -> ba\n", encoding="utf-8")
    return str(path)


def test_certify_example(tmp_path):
    report = run_json(tmp_path, "certify", "--example", "fibonacci")
    assert report["schema"] == 1
    assert report["command"] == "certify"
    assert report["config"]["example"] == "fibonacci"
    result = report["results"][0]["result"]
    assert result["verdict"] == "bound"
    assert result["bound"] == 2
    assert result["rule"] == "right-marked"


def test_certify_text_output(capsys):
    assert run(["certify", "--example", "doubling"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("expanse certify (schema 1)\n")
    assert "Verdict: not finitely positively expansive" in out


def test_certify_arnoux_rauzy_flags(tmp_path):
    report = run_json(tmp_path, "certify", "--ar-rank", "3", "--ar-indices", "0,1,2")
    result = report["results"][0]["result"]
    assert result["bound"] == 3
    assert result["caveats"] == []


def test_constant_arnoux_rauzy_index_exits_with_premise_code():
    assert run(["certify", "--ar-rank", "2", "--ar-indices", "0"]) == 2


def test_props_from_file(tmp_path, tm_file):
    report = run_json(tmp_path, "props", "--input", tm_file, "--q", "1")
    entry = report["results"][0]
    assert entry["kind"] == "substitution"
    level = entry["result"]["levels"][0]
    assert level["right_marked"] is True
    assert level["q_right_recoverable"] == {"q": 1, "value": True}
    assert entry["result"]["sequence"]["min_len_profile"][:4] == [1, 2, 4, 8]


def test_lang_csv(tmp_path):
    output = tmp_path / "lang.csv"
    assert run(["lang", "--example", "fibonacci", "--r", "4", "--format", "csv", "--output", str(output)]) == 0
    lines = output.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "input,r,complexity"
    assert lines[1:] == ["fibonacci,1,2", "fibonacci,2,3", "fibonacci,3,4", "fibonacci,4,5"]


def test_parse_window(tmp_path, tm_file):
    report = run_json(tmp_path, "parse", "--input", tm_file, "--word", "abba", "--origin", "2")
    schemes = report["results"][0]["result"]["schemes"]
    assert len(schemes) == 1
    assert schemes[0]["cuts"] == [-2, 0]


def test_pred_example(tmp_path):
    report = run_json(tmp_path, "pred", "--example", "thue_morse", "--ell", "3", "--right", "16")
    assert report["results"][0]["result"]["table"]["max"] == 2


def test_sofic_example(tmp_path):
    report = run_json(tmp_path, "sofic", "--example", "even_shift", "--profile", "3")
    result = report["results"][0]["result"]
    assert result["family"]["size"] == 3
    assert result["family"]["core_size"] == 2
    assert result["finite"] is False


def test_sofic_needs_graph(tm_file):
    assert run(["sofic", "--input", tm_file]) == 2


def test_random_examples_are_reproducible(tmp_path):
    first = run_json(tmp_path, "examples", "--random", "3", "--seed", "7")
    second = run_json(tmp_path, "examples", "--random", "3", "--seed", "7")
    assert first["results"] == second["results"]
    assert len(first["results"][0]["result"]["random"]) == 3


def test_examples_export(tmp_path):
    target = tmp_path / "corpus"
    report = run_json(tmp_path, "examples", "--export", str(target))
    exported = report["results"][0]["result"]["exported"]
    assert "fibonacci.sub" in exported
    assert "arnoux_rauzy_2.dir" in exported
    assert "even_shift.graph" in exported
    assert (target / "golden_mean.graph").exists()


def test_budget_exceeded_exit_code():
    assert run(["lang", "--example", "fibonacci", "--r", "10", "--budget-lang", "8"]) == 3


@pytest.mark.parametrize("argv", [
    ["props"],
    ["props", "--input", "missing.txt"],
    ["lang", "--example", "fibonacci", "--budget-lang", "0"],
    ["props", "--example", "no_such_example"]
])
def test_input_errors_exit_with_premise_code(argv):
    assert run(argv) == 2


def test_config_validation():
    with pytest.raises(PremiseError):
        AnalysisConfig(command="lang", r=0)
    with pytest.raises(PremiseError):
        AnalysisConfig(command="dance")
    assert AnalysisConfig(command="lang").describe()["inputs"] == []
