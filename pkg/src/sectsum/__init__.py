"""Cross-lingual multi-document section summarization pipeline.

Subpackages cover the full path from a section corpus to an evaluation
report: corpus ingestion and splitting, multilingual sentence segmentation,
two extractive rankers (likelihood salience and hierarchical/positional
graph ranking), gateways to embedding/likelihood/generation backends with
deterministic offline stubs, text-generation metrics, and an experiment
runner that writes per-language/per-domain report tables and figures.
"""

__version__ = "0.1.0"

from sectsum.corpus import (
    DOMAINS,
    LANGUAGES,
    CorpusStats,
    ReferenceDocument,
    SectionInstance,
    compute_stats,
    export_corpus,
    import_corpus,
    stratified_split,
)
from sectsum.extract import ExtractiveSummary, ScoredSentence, salience_rank
from sectsum.hiporank import DocumentGraph, HipoRankConfig, build_graph, hiporank_rank, score_sentences
from sectsum.generation import GenerationRequest, GenerationResult, StubGenerator, format_input, generate
from sectsum.encoders import EmbeddingBatch, LikelihoodScore, StubEncoder
from sectsum.metrics import MetricTriple, chrf, meteor, micro_average, rouge_l
from sectsum.segmenter import SentenceRecord, segment

__all__ = [
    "CorpusStats",
    "DOMAINS",
    "DocumentGraph",
    "EmbeddingBatch",
    "ExtractiveSummary",
    "GenerationRequest",
    "GenerationResult",
    "HipoRankConfig",
    "LANGUAGES",
    "LikelihoodScore",
    "MetricTriple",
    "ReferenceDocument",
    "ScoredSentence",
    "SectionInstance",
    "SentenceRecord",
    "StubEncoder",
    "StubGenerator",
    "build_graph",
    "chrf",
    "compute_stats",
    "export_corpus",
    "format_input",
    "generate",
    "hiporank_rank",
    "import_corpus",
    "meteor",
    "micro_average",
    "rouge_l",
    "salience_rank",
    "score_sentences",
    "segment",
    "stratified_split",
]
