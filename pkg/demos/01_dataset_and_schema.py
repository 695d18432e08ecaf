# Generate a deterministic synthetic patient dataset, load it into the
# in-memory property graph, and inspect its schema and counts.

import tempfile
from pathlib import Path

from nldsql import extract_schema, generate_synthetic, graph_summary, load_csv_dataset

data_dir = Path(tempfile.mkdtemp(prefix="nlds-demo-"))

# one seed, one dataset: re-running with the same seed writes byte-identical
# CSV files
manifest = generate_synthetic(seed=42, n_patients=100, out_dir=data_dir)
print(f"dataset written to {manifest.directory}")
for filename, rows in manifest.row_counts.items():
    print(f"  {filename:20s} {rows:4d} rows")

graph = load_csv_dataset(data_dir)
print(f"\nloaded {graph}")

# the schema is extracted from the data itself and becomes the vocabulary
# of the question language
schema = extract_schema(graph)
print("\nnode labels:", ", ".join(sorted(schema.labels)))
print("relationship types:")
for rel_type, (source, target) in sorted(schema.relationship_types.items()):
    print(f"  ({source})-[:{rel_type}]->({target})")
print("Patients properties:", ", ".join(sorted(schema.properties["Patients"])))

summary = graph_summary(graph)
print(f"\n{summary.node_count} nodes / {summary.relationship_count} relationships")
for label, count in sorted(summary.label_counts.items()):
    print(f"  {label:15s} {count:4d}")
