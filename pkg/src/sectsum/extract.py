"""Salience-based extractive ranking and the shared top-K summary type."""

from __future__ import annotations

import math
from dataclasses import dataclass

from sectsum.segmenter import SentenceRecord

DEFAULT_K = 50


@dataclass(frozen=True)
class ScoredSentence:
    sentence: SentenceRecord
    score: float


@dataclass(frozen=True)
class ExtractiveSummary:
    """Top-K sentences, descending by score, ties by ascending global index."""

    items: tuple[ScoredSentence, ...]
    k_requested: int
    method: str

    def __post_init__(self) -> None:
        for prev, cur in zip(self.items, self.items[1:]):
            if cur.score > prev.score or (cur.score == prev.score and cur.sentence.global_index < prev.sentence.global_index):
                raise ValueError("summary items violate the (descending score, ascending index) order")


def select_top_k(scored: list[ScoredSentence], k: int, method: str) -> ExtractiveSummary:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    for item in scored:
        if not math.isfinite(item.score):
            raise ValueError(f"non-finite score for sentence {item.sentence.global_index}")
    ordered = sorted(scored, key=lambda item: (-item.score, item.sentence.global_index))
    return ExtractiveSummary(items=tuple(ordered[: min(k, len(ordered))]), k_requested=k, method=method)


def salience_rank(
    section_title: str,
    sentences: list[SentenceRecord],
    scorer,
    k: int = DEFAULT_K,
) -> ExtractiveSummary:
    """Rank sentences by language-model likelihood of title-prefixed text.

    Each sentence is scored as ``"<section_title> <sentence>"`` (single-space
    joiner) through the likelihood backend; the summary keeps the k highest
    scores, ties broken by ascending global index.
    """
    if not sentences:
        raise ValueError("salience_rank requires at least one sentence")
    texts = [f"{section_title} {record.text}" for record in sentences]
    scores = scorer.score_likelihood(texts)
    scored = [ScoredSentence(sentence=record, score=score.value) for record, score in zip(sentences, scores)]
    return select_top_k(scored, k, method="salience")
