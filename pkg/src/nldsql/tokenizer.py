"""Longest-match, left-to-right tokenizer for simplified questions.

Matching priority at each position: quoted strings, multiword keyword
phrases, schema terms (labels, relationship types, properties, longest
surface first), numbers, title-case value runs, then bare words. Unknown
words become Word tokens; rejection happens at parse time.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .lexicon import Lexicon


class TokenKind(enum.Enum):
    KEYWORD = "Keyword"
    LABEL_REF = "LabelRef"
    REL_REF = "RelRef"
    PROP_REF = "PropRef"
    VALUE_LITERAL = "ValueLiteral"
    NUMBER_LITERAL = "NumberLiteral"
    FLOAT_LITERAL = "FloatLiteral"
    WORD = "Word"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    surface: str
    span: tuple[int, int]
    resolved: str | None = None  # canonical name, LabelRef/RelRef/PropRef only
    norm: str = ""  # lowercase form used by the parser
    value: int | float | None = None  # numeric literals
    quoted: bool = False  # ValueLiteral came from a quoted string

    def __repr__(self):
        core = self.resolved or self.norm or self.surface
        return f"{self.kind.value}({core})"


_LEXEME = re.compile(
    r"""
    (?P<quoted>'(?:[^'\\]|\\.)*'|"(?:[^"\\]|\\.)*")
    | (?P<float>\d+\.\d+)
    | (?P<int>\d+)
    | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_SCHEMA_KIND_TO_TOKEN = {
    "label": TokenKind.LABEL_REF,
    "relationship": TokenKind.REL_REF,
    "property": TokenKind.PROP_REF,
}


def tokenize(text: str, lexicon: Lexicon) -> list[Token]:
    """Tokenize a question. Raises ValueError on empty input."""
    if not text or not text.strip():
        raise ValueError("question text must be non-empty")

    lexemes = [
        (m.lastgroup, m.group(), m.start(), m.end()) for m in _LEXEME.finditer(text)
    ]
    tokens: list[Token] = []
    i = 0
    while i < len(lexemes):
        kind, raw, start, end = lexemes[i]

        if kind == "quoted":
            inner = raw[1:-1].replace("\\'", "'").replace('\\"', '"').replace("\\\\", "\\")
            tokens.append(
                Token(TokenKind.VALUE_LITERAL, inner, (start, end), quoted=True)
            )
            i += 1
            continue
        if kind == "float":
            tokens.append(
                Token(TokenKind.FLOAT_LITERAL, raw, (start, end), value=float(raw))
            )
            i += 1
            continue
        if kind == "int":
            tokens.append(
                Token(TokenKind.NUMBER_LITERAL, raw, (start, end), value=int(raw))
            )
            i += 1
            continue

        phrase = _match_keyword(lexemes, i, lexicon)
        if phrase:
            norm, n_words = phrase
            tokens.append(
                Token(TokenKind.KEYWORD, text[start:lexemes[i + n_words - 1][3]],
                      (start, lexemes[i + n_words - 1][3]), norm=norm)
            )
            i += n_words
            continue

        schema_hit = _match_schema(lexemes, i, lexicon)
        if schema_hit:
            (term_kind, canonical), n_words = schema_hit
            tokens.append(
                Token(_SCHEMA_KIND_TO_TOKEN[term_kind],
                      text[start:lexemes[i + n_words - 1][3]],
                      (start, lexemes[i + n_words - 1][3]),
                      resolved=canonical,
                      norm=text[start:lexemes[i + n_words - 1][3]].lower())
            )
            i += n_words
            continue

        if raw[0].isupper():
            run_end = _value_run(lexemes, i, lexicon)
            last_end = lexemes[run_end - 1][3]
            tokens.append(
                Token(TokenKind.VALUE_LITERAL, text[start:last_end], (start, last_end))
            )
            i = run_end
            continue

        tokens.append(Token(TokenKind.WORD, raw, (start, end), norm=raw.lower()))
        i += 1

    return tokens


def _words_at(lexemes, i, n) -> tuple[str, ...] | None:
    if i + n > len(lexemes):
        return None
    picked = lexemes[i : i + n]
    if any(kind != "word" for kind, _, _, _ in picked):
        return None
    return tuple(raw.lower() for _, raw, _, _ in picked)


def _match_keyword(lexemes, i, lexicon):
    for n in lexicon.keyword_phrase_lengths():
        words = _words_at(lexemes, i, n)
        if words is None:
            continue
        norm = lexicon.keyword_phrase(words)
        if norm is not None:
            return norm, n
    return None


def _match_schema(lexemes, i, lexicon):
    for n in lexicon.schema_phrase_lengths():
        words = _words_at(lexemes, i, n)
        if words is None:
            continue
        hit = lexicon.schema_phrase(words)
        if hit is not None:
            return hit, n
    return None


def _value_run(lexemes, i, lexicon) -> int:
    """End index (exclusive) of a title-case value run starting at i."""
    j = i + 1
    while j < len(lexemes):
        kind, raw, _, _ = lexemes[j]
        if kind in ("int", "float"):
            j += 1
            continue
        if kind != "word" or not raw[0].isupper():
            break
        # a capitalized schema term or keyword ends the run
        if _match_keyword(lexemes, j, lexicon) or _match_schema(lexemes, j, lexicon):
            break
        j += 1
    return j
