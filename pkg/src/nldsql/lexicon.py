"""Schema-bound vocabulary for the simplified question language.

The lexicon binds the grammar's open slots to a concrete graph schema: label
and property names (with case-insensitive singular/plural surface forms),
relationship types (raw and underscore-split), the keyword table that routes
phrases to graph algorithms, and value synonyms such as "caucasian" for
RACE='white'. It is immutable; extending the vocabulary builds a new lexicon.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import VocabularyError
from .graph import GraphSchema
from .questions import AlgorithmKind

# Grammar terminals. Multiword phrases tokenize as a single Keyword token and
# are matched before single words.
TERMINAL_PHRASES = (
    "how many",
    "which is",
    "what is",
    "for which",
    "prescribed for",
    "who have",
    "named as",
    "in the study",
    "in the graph",
    "max iterations",
)

TERMINAL_WORDS = frozenset(
    """
    find get create estimate classify the a an of in on is are and with for
    which where there node study graph view memory required applying named as
    relationship relation oriented maximum iterations iteration damping factor
    who have most important popular influential how many within
    """.split()
)

KEYWORD_TABLE: dict[str, frozenset[AlgorithmKind]] = {
    "most important": frozenset({AlgorithmKind.PAGE_RANK}),
    "most popular": frozenset({AlgorithmKind.DEGREE_CENTRALITY, AlgorithmKind.PAGE_RANK}),
    "most influential": frozenset({AlgorithmKind.PAGE_RANK}),
    "classify": frozenset({AlgorithmKind.LABEL_PROPAGATION}),
    "communities": frozenset({AlgorithmKind.LABEL_PROPAGATION}),
    "community": frozenset({AlgorithmKind.LABEL_PROPAGATION}),
    "groups": frozenset({AlgorithmKind.LABEL_PROPAGATION}),
    "group": frozenset({AlgorithmKind.LABEL_PROPAGATION}),
    "subgroup": frozenset({AlgorithmKind.LABEL_PROPAGATION}),
    "subgroups": frozenset({AlgorithmKind.LABEL_PROPAGATION}),
}

ALGORITHM_NAMES: dict[str, AlgorithmKind] = {
    "page rank": AlgorithmKind.PAGE_RANK,
    "pagerank": AlgorithmKind.PAGE_RANK,
    "label propagation": AlgorithmKind.LABEL_PROPAGATION,
    "degree centrality": AlgorithmKind.DEGREE_CENTRALITY,
}

BUILTIN_VALUE_SYNONYMS: dict[tuple[str, str], str] = {
    ("RACE", "caucasian"): "white",
    ("RACE", "white"): "white",
    ("RACE", "black"): "black",
    ("RACE", "asian"): "asian",
}

# Demo-corpus label synonyms, applied when the label exists in the schema.
BUILTIN_LABEL_SYNONYMS: dict[str, str] = {
    "drug": "Medications",
    "drugs": "Medications",
}


def _singular(word: str) -> str:
    if word.endswith("ies") and len(word) > 3:
        return word[:-3] + "y"
    if word.endswith("s") and not word.endswith("ss") and len(word) > 2:
        return word[:-1]
    return word


def _plural(word: str) -> str:
    if word.endswith("y") and len(word) > 1 and word[-2] not in "aeiou":
        return word[:-1] + "ies"
    if word.endswith(("s", "x", "z", "ch", "sh")):
        return word + "es"
    return word + "s"


def _surface_forms(name: str) -> set[str]:
    """Lowercase singular/plural forms of a schema name, including the
    camel-case split variant (CarePlans -> "care plan(s)")."""
    forms = set()
    variants = {name.lower()}
    split = re.sub(r"(?<=[a-z0-9])(?=[A-Z])", " ", name).lower()
    variants.add(split)
    for variant in variants:
        head, _, last = variant.rpartition(" ")
        prefix = head + " " if head else ""
        forms.add(variant)
        forms.add(prefix + _singular(last))
        forms.add(prefix + _plural(_singular(last)))
    return forms


@dataclass(frozen=True)
class Lexicon:
    schema: GraphSchema
    label_terms: dict[str, str]
    relationship_terms: dict[str, str]
    property_terms: dict[str, str]
    value_synonyms: dict[tuple[str, str], str]
    keyword_table: dict[str, frozenset[AlgorithmKind]]
    algorithm_names: dict[str, AlgorithmKind]
    extra_synonyms: tuple[tuple[str, str, str], ...] = ()
    # phrase word-tuples precomputed for the tokenizer
    _schema_phrases: dict[tuple[str, ...], tuple[str, str]] = field(default_factory=dict)
    _keyword_phrases: dict[tuple[str, ...], str] = field(default_factory=dict)

    def keyword_phrase_lengths(self) -> list[int]:
        return sorted({len(k) for k in self._keyword_phrases}, reverse=True)

    def keyword_phrase(self, words: tuple[str, ...]) -> str | None:
        return self._keyword_phrases.get(words)

    def schema_phrase_lengths(self) -> list[int]:
        return sorted({len(k) for k in self._schema_phrases}, reverse=True)

    def schema_phrase(self, words: tuple[str, ...]) -> tuple[str, str] | None:
        """Returns (kind, canonical) where kind is label/relationship/property."""
        return self._schema_phrases.get(words)

    def value_candidates(self, surface: str) -> list[tuple[str, str]]:
        """(property, canonical value) pairs a surface form may stand for."""
        lowered = surface.lower()
        return sorted(
            (prop, canon)
            for (prop, syn), canon in self.value_synonyms.items()
            if syn == lowered
        )

    def algorithms_for(self, phrase: str) -> frozenset[AlgorithmKind] | None:
        return self.keyword_table.get(phrase.lower())

    def with_synonyms(self, extras: list[tuple[str, str, str]]) -> "Lexicon":
        """New lexicon with additional (property, surface, canonical) synonyms."""
        merged = list(self.extra_synonyms)
        for entry in extras:
            if entry not in merged:
                merged.append(entry)
        return bind_vocabulary(self.schema, merged)


def bind_vocabulary(
    schema: GraphSchema,
    extra_synonyms: list[tuple[str, str, str]] | None = None,
) -> Lexicon:
    """Build the lexicon for a schema.

    Raises VocabularyError when an extra synonym names a property that no
    label in the schema carries.
    """
    label_terms: dict[str, str] = {}
    for label in sorted(schema.labels):
        for form in _surface_forms(label):
            label_terms[form] = label
    for surface, label in BUILTIN_LABEL_SYNONYMS.items():
        if label in schema.labels:
            label_terms.setdefault(surface, label)

    relationship_terms: dict[str, str] = {}
    for rel_type in sorted(schema.relationship_types):
        relationship_terms[rel_type.lower()] = rel_type
        relationship_terms[rel_type.lower().replace("_", " ")] = rel_type

    property_terms: dict[str, str] = {}
    all_properties = set()
    for label in sorted(schema.properties):
        all_properties.update(schema.properties[label])
    for prop in sorted(all_properties):
        for form in _surface_forms(prop):
            property_terms.setdefault(form, prop)

    value_synonyms = dict(BUILTIN_VALUE_SYNONYMS)
    extras = tuple(tuple(e) for e in (extra_synonyms or []))
    for prop, surface, canonical in extras:
        if prop not in all_properties:
            raise VocabularyError(f"synonym {surface!r}: unknown property {prop}")
        value_synonyms[(prop, surface.lower())] = canonical

    schema_phrases: dict[tuple[str, ...], tuple[str, str]] = {}
    # properties first so labels/relationships win on (unlikely) collisions
    for surface, prop in property_terms.items():
        schema_phrases[tuple(surface.split())] = ("property", prop)
    for surface, rel_type in relationship_terms.items():
        schema_phrases[tuple(surface.split())] = ("relationship", rel_type)
    for surface, label in label_terms.items():
        schema_phrases[tuple(surface.split())] = ("label", label)

    keyword_phrases: dict[tuple[str, ...], str] = {}
    for phrase in (*TERMINAL_PHRASES, *KEYWORD_TABLE, *ALGORITHM_NAMES):
        keyword_phrases[tuple(phrase.split())] = phrase
    for word in TERMINAL_WORDS:
        keyword_phrases.setdefault((word,), word)

    return Lexicon(
        schema=schema,
        label_terms=label_terms,
        relationship_terms=relationship_terms,
        property_terms=property_terms,
        value_synonyms=value_synonyms,
        keyword_table=dict(KEYWORD_TABLE),
        algorithm_names=dict(ALGORITHM_NAMES),
        extra_synonyms=extras,
        _schema_phrases=schema_phrases,
        _keyword_phrases=keyword_phrases,
    )


def load_synonyms_csv(path: str | Path) -> list[tuple[str, str, str]]:
    """Read extra synonyms from a UTF-8 CSV with columns property,surface,canonical."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for column in ("property", "surface", "canonical"):
            if column not in (reader.fieldnames or []):
                raise VocabularyError(f"{path}: missing column {column}")
        for row in reader:
            out.append((row["property"], row["surface"], row["canonical"]))
    return out
