"""Patient-record CSV datasets: loading into a PropertyGraph and a seeded
desk-scale synthetic generator.

File layout (UTF-8, comma-separated, header row mandatory):

    patients.csv:      ID,BIRTHPLACE,RACE,GENDER,BIRTHDATE
    encounters.csv:    ID,PATIENT,DESCRIPTION,REASON
    medications.csv:   ID,PATIENT,ENCOUNTER,DESCRIPTION,REASON
    allergies.csv:     ID,PATIENT,DESCRIPTION
    conditions.csv:    ID,PATIENT,DESCRIPTION
    careplans.csv:     ID,PATIENT,DESCRIPTION
    procedures.csv:    ID,PATIENT,DESCRIPTION
    immunizations.csv: ID,PATIENT,DESCRIPTION

A PATIENT column yields a PATIENT_HAS_<ENTITY> relationship; the ENCOUNTER
column of medications.csv yields ENCOUNTER_FOR_MEDICATION. Empty foreign-key
cells yield no relationship; non-empty cells must reference an existing row.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path

from .errors import IngestError, IoError
from .graph import PropertyGraph

# (file, label, PATIENT_HAS_* relationship type, required columns);
# order fixed: it defines node/relationship id assignment.
ENTITY_FILES = [
    ("patients.csv", "Patients", None, ["ID", "BIRTHPLACE", "RACE", "GENDER", "BIRTHDATE"]),
    ("encounters.csv", "Encounters", "PATIENT_HAS_ENCOUNTER", ["ID", "PATIENT", "DESCRIPTION", "REASON"]),
    ("medications.csv", "Medications", "PATIENT_HAS_MEDICATION", ["ID", "PATIENT", "ENCOUNTER", "DESCRIPTION", "REASON"]),
    ("allergies.csv", "Allergies", "PATIENT_HAS_ALLERGY", ["ID", "PATIENT", "DESCRIPTION"]),
    ("conditions.csv", "Conditions", "PATIENT_HAS_CONDITION", ["ID", "PATIENT", "DESCRIPTION"]),
    ("careplans.csv", "CarePlans", "PATIENT_HAS_CAREPLAN", ["ID", "PATIENT", "DESCRIPTION"]),
    ("procedures.csv", "Procedures", "PATIENT_HAS_PROCEDURE", ["ID", "PATIENT", "DESCRIPTION"]),
    ("immunizations.csv", "Immunizations", "PATIENT_HAS_IMMUNIZATION", ["ID", "PATIENT", "DESCRIPTION"]),
]

FOREIGN_KEY_COLUMNS = {"PATIENT", "ENCOUNTER"}


@dataclass(frozen=True)
class DatasetManifest:
    directory: str
    files: dict[str, str]
    row_counts: dict[str, int]
    seed: int | None = None


def load_csv_dataset(directory: str | Path) -> PropertyGraph:
    """Load every recognized CSV file under `directory` into one graph.

    Labels are restricted to the files actually present. Raises IngestError
    for a missing required column (naming file and column) or a dangling
    foreign key (naming file and row).
    """
    directory = Path(directory)
    graph = PropertyGraph()
    node_by_csv_id: dict[str, dict[str, int]] = {}

    present = [spec for spec in ENTITY_FILES if (directory / spec[0]).exists()]
    if not present:
        raise IngestError(f"no dataset CSV files found in {directory}")

    for filename, label, patient_rel, required in present:
        path = directory / filename
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            for column in required:
                if column not in header:
                    raise IngestError(f"{filename}: missing required column {column}")
            ids: dict[str, int] = {}
            node_by_csv_id[label] = ids
            for row_number, row in enumerate(reader, start=1):
                properties = {
                    k: v for k, v in row.items()
                    if k is not None and k not in FOREIGN_KEY_COLUMNS
                }
                node_id = graph.add_node(label, properties)
                ids[row["ID"]] = node_id
                if patient_rel is not None:
                    _link(graph, directory, filename, row_number, row, "PATIENT",
                          node_by_csv_id.get("Patients", {}), patient_rel,
                          source_is_parent=True, child_id=node_id)
                if filename == "medications.csv":
                    _link(graph, directory, filename, row_number, row, "ENCOUNTER",
                          node_by_csv_id.get("Encounters", {}), "ENCOUNTER_FOR_MEDICATION",
                          source_is_parent=True, child_id=node_id)
    return graph


def _link(graph, directory, filename, row_number, row, fk_column, parent_ids,
          rel_type, source_is_parent, child_id):
    fk = (row.get(fk_column) or "").strip()
    if not fk:
        return
    parent = parent_ids.get(fk)
    if parent is None:
        raise IngestError(
            f"{filename} row {row_number}: {fk_column}={fk!r} does not reference an existing row"
        )
    if source_is_parent:
        graph.add_relationship(rel_type, parent, child_id)
    else:
        graph.add_relationship(rel_type, child_id, parent)


# ---------------------------------------------------------------------------
# Synthetic generator (seeded stand-in for a Synthea export)
# ---------------------------------------------------------------------------

MEDICATION_DESCRIPTIONS = [
    "Lisinopril 10 MG Oral Tablet",
    "Amlodipine 5 MG Oral Tablet",
    "Metformin 500 MG Oral Tablet",
    "Atorvastatin 20 MG Oral Tablet",
    "Omeprazole 20 MG Oral Capsule",
    "Amoxicillin 250 MG Oral Capsule",
    "Ibuprofen 200 MG Oral Tablet",
    "Hydrochlorothiazide 25 MG Oral Tablet",
    "Simvastatin 40 MG Oral Tablet",
    "Albuterol 90 UG Inhaler",
    "Levothyroxine 50 UG Oral Tablet",
    "Warfarin 5 MG Oral Tablet",
]

REASONS = [
    "Hypertension",
    "Diabetes",
    "Hyperlipidemia",
    "Asthma",
    "Sinusitis",
    "Chronic Pain",
    "Hypothyroidism",
    "Atrial Fibrillation",
]

# Values avoid schema-term words so unquoted title-case runs stay whole.
ENCOUNTER_DESCRIPTIONS = [
    "General Examination",
    "Emergency Room Admission",
    "Follow Up Visit",
    "Prenatal Visit",
    "Outpatient Consultation",
    "Telehealth Visit",
]

ALLERGY_DESCRIPTIONS = [
    "Peanut Hypersensitivity",
    "Penicillin Hypersensitivity",
    "Latex Hypersensitivity",
    "Pollen Hypersensitivity",
    "Shellfish Hypersensitivity",
    "Dust Mite Hypersensitivity",
]

CONDITION_DESCRIPTIONS = [
    "Hypertension",
    "Prediabetes",
    "Chronic Sinusitis",
    "Anemia",
    "Obesity",
    "Asthma",
]

CAREPLAN_DESCRIPTIONS = [
    "Diabetes Self Management Program",
    "Hypertension Management Program",
    "Asthma Action Program",
    "Weight Management Program",
]

PROCEDURE_DESCRIPTIONS = [
    "Appendectomy",
    "Colonoscopy",
    "Vaccination Administration",
    "Physical Therapy Session",
    "Suture Removal",
]

IMMUNIZATION_DESCRIPTIONS = [
    "Seasonal Influenza Vaccine",
    "Td Booster",
    "Hepatitis B Vaccine",
    "Pneumococcal Vaccine",
]

BIRTHPLACES = [
    "Boston",
    "Worcester",
    "Springfield",
    "Lowell",
    "Cambridge",
    "Quincy",
    "Lynn",
    "New Bedford",
]

RACES = ["white", "black", "asian"]
RACE_WEIGHTS = [0.6, 0.25, 0.15]


def generate_synthetic(seed: int, n_patients: int, out_dir: str | Path) -> DatasetManifest:
    """Write a deterministic desk-scale dataset: one draw order, one RNG.

    Per patient: 1-4 encounters, 0-3 medications, 0-2 allergies, 0-2
    conditions, 0-1 care plans, 0-2 procedures, 0-2 immunizations. RACE is
    drawn white/black/asian with weights 0.6/0.25/0.15. Running twice with
    the same seed produces byte-identical files.
    """
    if n_patients < 1:
        raise ValueError("n_patients must be >= 1")
    out_dir = Path(out_dir)
    rng = random.Random(seed)
    epoch = date(1920, 1, 1)

    rows = {name: [] for name, _, _, _ in ENTITY_FILES}
    counters = dict.fromkeys(rows, 0)

    def next_id(entity, prefix):
        counters[entity] += 1
        return f"{prefix}{counters[entity]:06d}"

    for _ in range(n_patients):
        pid = next_id("patients.csv", "P")
        rows["patients.csv"].append([
            pid,
            rng.choice(BIRTHPLACES),
            rng.choices(RACES, weights=RACE_WEIGHTS)[0],
            rng.choice(["M", "F"]),
            (epoch + timedelta(days=rng.randint(0, 35000))).isoformat(),
        ])

        encounter_ids = []
        for _ in range(rng.randint(1, 4)):
            eid = next_id("encounters.csv", "E")
            encounter_ids.append(eid)
            rows["encounters.csv"].append([
                eid, pid, rng.choice(ENCOUNTER_DESCRIPTIONS), rng.choice(REASONS),
            ])

        for _ in range(rng.randint(0, 3)):
            rows["medications.csv"].append([
                next_id("medications.csv", "M"),
                pid,
                rng.choice(encounter_ids),
                rng.choice(MEDICATION_DESCRIPTIONS),
                rng.choice(REASONS),
            ])

        for entity, prefix, pool, at_most in [
            ("allergies.csv", "A", ALLERGY_DESCRIPTIONS, 2),
            ("conditions.csv", "C", CONDITION_DESCRIPTIONS, 2),
            ("careplans.csv", "CP", CAREPLAN_DESCRIPTIONS, 1),
            ("procedures.csv", "PR", PROCEDURE_DESCRIPTIONS, 2),
            ("immunizations.csv", "I", IMMUNIZATION_DESCRIPTIONS, 2),
        ]:
            for _ in range(rng.randint(0, at_most)):
                rows[entity].append([next_id(entity, prefix), pid, rng.choice(pool)])

    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for filename, _, _, header in ENTITY_FILES:
            with open(out_dir / filename, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(header)
                writer.writerows(rows[filename])
    except OSError as exc:
        raise IoError(f"cannot write dataset to {out_dir}: {exc}") from exc

    return DatasetManifest(
        directory=str(out_dir),
        files={name: name for name, _, _, _ in ENTITY_FILES},
        row_counts={name: len(rows[name]) for name in rows},
        seed=seed,
    )
