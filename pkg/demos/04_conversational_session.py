# The conversational loop end to end: ask an ambiguous question, execute one
# interpretation, rate it, watch the ranking change, extend the vocabulary,
# and replay the whole session from its log.

import tempfile
from pathlib import Path

from nldsql import generate_synthetic, load_csv_dataset
from nldsql.service import SessionService

data_dir = Path(tempfile.mkdtemp(prefix="nlds-demo-"))
generate_synthetic(seed=42, n_patients=200, out_dir=data_dir)
graph = load_csv_dataset(data_dir)

service = SessionService(graph, Path(tempfile.mkdtemp(prefix="nlds-sessions-")))
session = service.create_session()

question = "Find the most popular Encounters for Medications in the graph."
print("Q:", question)
response = service.post_question(session, question)
for candidate in response["candidates"]:
    print(f"  [{candidate['score']:.1f}] {candidate['algorithm']}: "
          f"{candidate['explanation']}")

# execute the PageRank interpretation (creates the in-memory view on the way)
chosen = next(c for c in response["candidates"] if c["algorithm"] == "PageRank")
result = service.execute_candidate(session, turn_id=1, candidate_id=chosen["id"])
print("\ntop scored encounters:")
for row in result["rows"][:5]:
    print("  ", row)
print("estimates:", [e["requiredMemory"] for e in result["estimates"]])

# five stars for PageRank: on the next identical question it ranks first
service.record_feedback(session, 1, 5)
again = service.post_question(session, question)
print("\nafter the 5-star rating the candidates rank:",
      [c["algorithm"] for c in again["candidates"]])

# vocabulary extension: teach the session a new adjective
service.add_synonym(session, "RACE", "african american", "black")
counted = service.post_question(session, "How many patients are african american?")
print("\nnew phrasing compiles to:", counted["candidates"][0]["script"])
result = service.execute_candidate(
    session, turn_id=counted["turn_id"], candidate_id=counted["candidates"][0]["id"]
)
print("count:", result["rows"][0][0])

# the JSONL log replays to identical candidate ids and result tables
replayed = SessionService(
    graph, Path(tempfile.mkdtemp(prefix="nlds-replay-"))
).replay(service.log_path(session))
print("\nreplay of", replayed["events"], "events matches:", replayed["matches"])
