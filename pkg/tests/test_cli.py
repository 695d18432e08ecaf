import json

import pytest

from nldsql.cli import main

from conftest import csv_row_count


@pytest.fixture
def data_dir(tmp_path):
    out = tmp_path / "data"
    assert main(["gen-data", "--seed", "42", "--patients", "30",
                 "--out", str(out)]) == 0
    return out


def test_gen_data(tmp_path, capsys):
    out = tmp_path / "fresh"
    assert main(["gen-data", "--seed", "7", "--patients", "30",
                 "--out", str(out)]) == 0
    assert csv_row_count(out, "patients.csv") == 30
    captured = capsys.readouterr()
    assert "patients.csv: 30 rows" in captured.out


def test_translate_golden_question(data_dir, capsys):
    code = main(["translate", "How many patients are caucasian?",
                 "--data", str(data_dir)])
    assert code == 0
    out = capsys.readouterr().out
    assert "MATCH (n:Patients {RACE:'white'}) RETURN count(n)" in out


def test_translate_parse_failure_exit_2(data_dir, capsys):
    code = main(["translate", "colorless green ideas", "--data", str(data_dir)])
    assert code == 2


def test_translate_execute_json(data_dir, capsys):
    code = main(["translate", "How many patients are caucasian?",
                 "--data", str(data_dir), "--execute", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload[0]["columns"] == ["count(n)"]
    assert isinstance(payload[0]["rows"][0][0], int)


def test_translate_with_synonyms_file(data_dir, tmp_path, capsys):
    synonyms = tmp_path / "synonyms.csv"
    synonyms.write_text(
        "property,surface,canonical\nRACE,african american,black\n",
        encoding="utf-8",
    )
    code = main(["translate", "How many patients are african american?",
                 "--data", str(data_dir), "--synonyms", str(synonyms)])
    assert code == 0
    assert "RACE:'black'" in capsys.readouterr().out


def test_translate_pipeline_question(data_dir, capsys):
    code = main([
        "translate",
        "Get the subgroup of Patients who have PATIENT_HAS_CAREPLAN in the "
        "graph with max iterations 20",
        "--data", str(data_dir), "--execute", "--json",
    ])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload[0]["algorithm"] == "LabelPropagation"
    assert len(payload[0]["estimates"]) == 1
