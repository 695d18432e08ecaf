# Walk the full translation pipeline (tokenize -> parse -> generate) over the
# demo question corpus: navigational questions, an ambiguous centrality
# question, and a community-detection pipeline.

import tempfile
from pathlib import Path

from nldsql import (
    bind_vocabulary,
    extract_schema,
    generate,
    generate_synthetic,
    load_csv_dataset,
    parse,
    tokenize,
)

data_dir = Path(tempfile.mkdtemp(prefix="nlds-demo-"))
generate_synthetic(seed=42, n_patients=100, out_dir=data_dir)
graph = load_csv_dataset(data_dir)
schema = extract_schema(graph)
lexicon = bind_vocabulary(schema)

QUESTIONS = [
    "Find the Medications for which the DESCRIPTION is Lisinopril 10 MG Oral "
    "Tablet and the REASON of the DESCRIPTION is Hypertension.",
    "Which is the birthplace of the PATIENTS in the study?",
    "Find the Encounters DESCRIPTION node where the DESCRIPTION of the drugs "
    "is Amlodipine 5 MG Oral Tablet.",
    "How many patients are caucasian?",
    # "most popular" maps to two algorithms: the conversational loop lets the
    # user pick between the degree query and the PageRank pipeline
    "Find the most popular Encounters for Medications in the graph.",
    "Find the most important Drugs prescribed for the PATIENT with a maximum "
    "of 25 iterations and a damping factor of 0.60.",
    "Get the subgroup of Patients who have PATIENT_HAS_CAREPLAN in the graph "
    "with max iterations 20",
]

for question in QUESTIONS:
    print("=" * 72)
    print("Q:", question)
    tokens = tokenize(question, lexicon)
    print("tokens:", " ".join(repr(t) for t in tokens))
    for ast in parse(tokens, lexicon):
        print("tree:", ast)
        for candidate in generate(ast, schema, frozenset(), lexicon):
            label = candidate.kind.value
            if candidate.algorithm:
                label += f"/{candidate.algorithm.value}"
            print(f"-- candidate {candidate.id} [{label}]")
            print(candidate.script_text)
    print()
