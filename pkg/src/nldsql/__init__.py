"""NLDS-QL: simplified-English data-science questions over property graphs.

Pipeline: tokenize -> parse -> generate candidate Cypher -> execute on the
in-process engine. The session service wraps the pipeline in a conversational
HTTP API with candidate ranking driven by star feedback.
"""

from .algorithms import degree_centrality, label_propagation, pagerank
from .candidates import (
    AlgorithmKind,
    CandidateKind,
    QueryCandidate,
    generate,
    map_keyword_to_algorithms,
)
from .cypher_parser import QueryPlan, parse_cypher, render, split_statements
from .dataset import DatasetManifest, generate_synthetic, load_csv_dataset
from .engine import execute, run_script
from .errors import (
    CandidateNotFound,
    CypherSubsetError,
    ExecutionError,
    GenerationError,
    IngestError,
    KeywordError,
    NldsError,
    ParseError,
    SchemaConflict,
    SessionNotFound,
    ValidationError,
    ViewDefinitionError,
    ViewExists,
    ViewNotFound,
    VocabularyError,
)
from .feedback import FeedbackStore, rank_candidates
from .graph import GraphSchema, GraphSummary, PropertyGraph, extract_schema, graph_summary
from .lexicon import Lexicon, bind_vocabulary, load_synonyms_csv
from .parser import parse
from .questions import (
    Aggregation,
    Centrality,
    Community,
    EstimateMemory,
    Projection,
    QuestionAST,
    Selection,
    SelectionProjection,
    ViewCreation,
)
from .sampler import grammar_sample
from .table import ResultTable
from .tokenizer import Token, TokenKind, tokenize
from .views import GraphView, MemoryEstimate, ViewCatalog, create_view, estimate_memory

__version__ = "0.1.0"
