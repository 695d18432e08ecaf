"""Exception hierarchy shared across the package."""


class NldsError(Exception):
    """Base class for all errors raised by this package."""


class IngestError(NldsError):
    """CSV dataset is malformed: missing column, dangling foreign key, bad file."""


class IoError(NldsError):
    """Dataset files could not be written."""


class SchemaConflict(NldsError):
    """A relationship type was observed with two different endpoint label pairs."""


class VocabularyError(NldsError):
    """A synonym references a property that does not exist in the schema."""


class ParseError(NldsError):
    """No grammar production matches the question.

    Carries diagnostics for the conversational UI: the span of the longest
    matched prefix and the productions that got furthest.
    """

    def __init__(self, message, furthest_span=(0, 0), productions=()):
        super().__init__(message)
        self.furthest_span = tuple(furthest_span)
        self.productions = tuple(productions)

    def diagnostics(self):
        return {
            "message": str(self),
            "furthest_span": list(self.furthest_span),
            "productions": list(self.productions),
        }


class KeywordError(NldsError):
    """Keyword phrase is not in the lexicon's algorithm table."""


class GenerationError(NldsError):
    """A question cannot be expanded into a query (e.g. relationship does not
    connect the requested node label)."""


class CypherSubsetError(NldsError):
    """Statement falls outside the supported Cypher subset."""

    def __init__(self, message, span=(0, 0)):
        super().__init__(message)
        self.span = tuple(span)


class ViewExists(NldsError):
    """A graph view with this name is already registered."""


class ViewNotFound(NldsError):
    """No graph view registered under this name."""


class ViewDefinitionError(NldsError):
    """View refers to an unknown node label or relationship type."""


class ExecutionError(NldsError):
    """A statement failed during evaluation; carries the statement index when
    raised from a multi-statement script."""

    def __init__(self, message, statement_index=None):
        super().__init__(message)
        self.statement_index = statement_index


class SessionNotFound(NldsError):
    """Unknown session id."""


class CandidateNotFound(NldsError):
    """Candidate id does not belong to the given turn."""


class ValidationError(NldsError):
    """Request payload violates a constraint (e.g. stars outside 1..5)."""
