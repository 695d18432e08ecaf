import csv
from pathlib import Path

import pytest

from nldsql import (
    bind_vocabulary,
    extract_schema,
    generate_synthetic,
    load_csv_dataset,
)

FIXTURE_PATIENTS = [
    ["P1", "Boston", "white", "F", "1980-01-01"],
    ["P2", "Lynn", "black", "M", "1975-05-20"],
    ["P3", "Quincy", "asian", "F", "1990-09-09"],
]

# both medications belong to patient P1; no encounters.csv in this fixture,
# so the ENCOUNTER keys stay empty
FIXTURE_MEDICATIONS = [
    ["M1", "P1", "", "Lisinopril 10 MG Oral Tablet", "Hypertension"],
    ["M2", "P1", "", "Amlodipine 5 MG Oral Tablet", "Hypertension"],
]


def write_csv(path: Path, header: list[str], rows: list[list[str]]):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


@pytest.fixture
def fixture_dir(tmp_path):
    """The 5-row fixture: 3 patients, 2 medications of patient P1."""
    write_csv(
        tmp_path / "patients.csv",
        ["ID", "BIRTHPLACE", "RACE", "GENDER", "BIRTHDATE"],
        FIXTURE_PATIENTS,
    )
    write_csv(
        tmp_path / "medications.csv",
        ["ID", "PATIENT", "ENCOUNTER", "DESCRIPTION", "REASON"],
        FIXTURE_MEDICATIONS,
    )
    return tmp_path


@pytest.fixture
def fixture_graph(fixture_dir):
    return load_csv_dataset(fixture_dir)


@pytest.fixture(scope="session")
def demo_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("demo-data")
    generate_synthetic(42, 50, out)
    return out


@pytest.fixture(scope="session")
def demo_graph(demo_dir):
    return load_csv_dataset(demo_dir)


@pytest.fixture(scope="session")
def demo_schema(demo_graph):
    return extract_schema(demo_graph)


@pytest.fixture(scope="session")
def demo_lexicon(demo_schema):
    return bind_vocabulary(demo_schema)


def csv_scan_count(directory: Path, filename: str, column: str, value: str) -> int:
    """Independent oracle: count rows of a CSV where column == value."""
    with open(Path(directory) / filename, newline="", encoding="utf-8") as fh:
        return sum(1 for row in csv.DictReader(fh) if row[column] == value)


def csv_row_count(directory: Path, filename: str) -> int:
    with open(Path(directory) / filename, newline="", encoding="utf-8") as fh:
        return sum(1 for _ in csv.DictReader(fh))
