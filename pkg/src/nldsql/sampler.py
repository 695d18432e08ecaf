"""Seeded sentence generator over the question grammar.

Used by the round-trip property tests: every sampled sentence must parse to
at least one AST, and every candidate generated from it must be accepted by
the Cypher-subset parser.
"""

from __future__ import annotations

import random

from .graph import GraphSchema

_VALUES = [
    "white",
    "black",
    "Hypertension",
    "Lisinopril 10 MG Oral Tablet",
    "Amlodipine 5 MG Oral Tablet",
    "General Examination",
    "Peanut Hypersensitivity",
    "Boston",
]

_CENTRALITY_PHRASES = ["most important", "most popular", "most influential"]
_COMMUNITY_WORDS = ["groups", "communities", "subgroups"]
_DAMPINGS = ["0.60", "0.85", "0.25", "0.90"]
_ALGORITHMS = ["page rank", "label propagation"]


def grammar_sample(seed: int, n: int, schema: GraphSchema) -> list[str]:
    """n grammar-valid sentences with schema-valid slot fillers, deterministic
    per seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)

    labels = sorted(schema.labels)
    labeled_props = [
        (label, prop)
        for label in labels
        for prop in sorted(schema.properties.get(label, ()))
    ]
    rel_types = sorted(schema.relationship_types)

    builders = []
    if labeled_props:
        builders += [_selection, _projection, _aggregation]
    if len(labeled_props) >= 2:
        builders.append(_selection_projection)
    if rel_types:
        builders += [_view_creation, _estimate_memory, _centrality, _community]

    if not builders:
        raise ValueError("schema has no labels to sample from")

    ctx = {"labels": labels, "props": labeled_props, "rels": rel_types, "schema": schema}
    return [rng.choice(builders)(rng, ctx) for _ in range(n)]


def _pick_prop(rng, ctx):
    return rng.choice(ctx["props"])


def _quoted(rng):
    return "'" + rng.choice(_VALUES) + "'"


def _selection(rng, ctx):
    label, prop = _pick_prop(rng, ctx)
    sentence = f"Find the {label} for which the {prop} is {_quoted(rng)}"
    extra = [p for l, p in ctx["props"] if l == label and p != prop]
    if extra and rng.random() < 0.4:
        sentence += f" and the {rng.choice(extra)} is {_quoted(rng)}"
    return sentence + rng.choice([".", ""])


def _projection(rng, ctx):
    label, prop = _pick_prop(rng, ctx)
    surface = prop.lower() if rng.random() < 0.5 else prop
    tail = " in the study?" if rng.random() < 0.5 else "?"
    return f"Which is the {surface} of the {label}{tail}"


def _selection_projection(rng, ctx):
    source_label, source_prop = _pick_prop(rng, ctx)
    target_label, target_prop = _pick_prop(rng, ctx)
    return (
        f"Find the {source_label} {source_prop} node where the "
        f"{target_prop} of the {target_label} is {_quoted(rng)}."
    )


def _aggregation(rng, ctx):
    schema = ctx["schema"]
    race_labels = [l for l in ctx["labels"] if schema.label_has_property(l, "RACE")]
    if race_labels and rng.random() < 0.5:
        return f"How many {rng.choice(race_labels)} are caucasian?"
    return f"How many {rng.choice(ctx['labels'])} are there" + rng.choice(
        [" in the study?", "?"]
    )


def _rel_and_label(rng, ctx):
    rel = rng.choice(ctx["rels"])
    return rel, rng.choice(ctx["schema"].relationship_types[rel])


def _view_creation(rng, ctx):
    rel, label = _rel_and_label(rng, ctx)
    base = f"base_{rng.randint(1, 5)} " if rng.random() < 0.5 else ""
    named = f"named as view_{rng.randint(1, 5)} " if rng.random() < 0.5 else ""
    oriented = " oriented" if rng.random() < 0.5 else ""
    return (
        f"Create and estimate memory for the graph view {base}{named}"
        f"with the node {label} and the relationship {rel}{oriented}"
    )


def _estimate_memory(rng, ctx):
    return (
        f"Estimate the required memory for applying {rng.choice(_ALGORITHMS)} "
        f"on the graph view view_{rng.randint(1, 5)}"
    )


def _centrality(rng, ctx):
    rel, label = _rel_and_label(rng, ctx)
    phrase = rng.choice(_CENTRALITY_PHRASES)
    if rng.random() < 0.5:
        source, target = ctx["schema"].relationship_types[rel]
        other = target if label == source else source
        rel_clause = f"for the {other}"
    else:
        rel_clause = f"with {rel}"
    sentence = f"Find the {phrase} {label} {rel_clause}"
    if rng.random() < 0.4:
        sentence += " in the graph" + rng.choice(["", f" g{rng.randint(1, 3)}"])
    if rng.random() < 0.6:
        n = rng.randint(1, 50)
        sentence += rng.choice(
            [f" with a maximum of {n} iterations", f" with {n} maximum of iterations"]
        )
    if rng.random() < 0.6:
        sentence += f" and with a damping factor {rng.choice(_DAMPINGS)}"
    return sentence + rng.choice([".", ""])


def _community(rng, ctx):
    rel, label = _rel_and_label(rng, ctx)
    form = rng.random()
    iters = f" with {rng.randint(1, 50)} maximum of iterations"
    if form < 0.4:
        head = f"Classify the {label}"
    elif form < 0.7:
        head = f"Find {rng.choice(_COMMUNITY_WORDS)} of {label}"
    else:
        return (
            f"Get the subgroup of {label} who have {rel} in the graph"
            f" with max iterations {rng.randint(1, 50)}"
        )
    view = f" within the view v{rng.randint(1, 3)}" if rng.random() < 0.5 else ""
    return f"{head}{view} with relation {rel}" + (iters if rng.random() < 0.7 else "")
