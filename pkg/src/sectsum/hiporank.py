"""Hierarchical and positional graph ranking over sentence and section nodes.

A document is an ordered list of sections, each an ordered list of
sentences; in the multi-document setting each reference document becomes
one section, in reference order.  Sentences receive directed cosine-weighted
edges from the other sentences of their own section (intra) and from every
other section node (inter).  Edges pointing at nodes far from a boundary
are discounted by ``alpha``:

* intra edge j -> i: ``sim(e_i, e_j) * (1 if d(i) <= d(j) else alpha)``
  with boundary distance ``d(p) = min(p, n-1-p)`` inside the section;
* inter edge t -> i (t != section(i)): ``sim(e_i, E_t) * (1 if the section
  of i is first or last else alpha)``.

A sentence's score is ``lambda_intra * mean(incoming intra weights) +
lambda_inter * mean(incoming inter weights)`` (a mean over zero edges is 0).
Aggregations use exact summation (``math.fsum``) so reversing the sentence
and section order reverses the score sequence exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from sectsum.extract import DEFAULT_K, ExtractiveSummary, ScoredSentence, select_top_k
from sectsum.segmenter import SentenceRecord


@dataclass(frozen=True)
class HipoRankConfig:
    alpha: float = 0.5
    lambda_intra: float = 1.0
    lambda_inter: float = 1.0
    k: int = DEFAULT_K

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.lambda_intra < 0 or self.lambda_inter < 0:
            raise ValueError("lambda_intra and lambda_inter must be >= 0")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


@dataclass
class DocumentGraph:
    """Directed hierarchical graph over sentence and section nodes.

    ``sections`` holds node ids (positions in flat document order) per
    section.  ``intra_weights[s][j, i]`` is the weight of the directed edge
    from sentence j to sentence i inside section s (diagonal unused);
    ``inter_weights[t, i]`` is the weight of the edge from section node t to
    sentence i (entries with t == section(i) are unused).  Both carry the
    boundary discount already applied.  Sentence-sentence edges never cross
    sections.
    """

    sections: list[list[int]]
    sentence_embeddings: np.ndarray
    section_embeddings: np.ndarray
    intra_weights: list[np.ndarray]
    inter_weights: np.ndarray
    alpha: float


def _unit_mean(rows: np.ndarray) -> np.ndarray:
    count = rows.shape[0]
    mean = np.array([math.fsum(rows[:, d]) / count for d in range(rows.shape[1])])
    norm = math.sqrt(math.fsum(x * x for x in mean))
    if norm == 0.0:
        raise ValueError("section embedding collapsed to the zero vector")
    return mean / norm


def _boundary_distances(n: int) -> list[int]:
    return [min(p, n - 1 - p) for p in range(n)]


def build_graph(
    sections_of_sentences: list[list[SentenceRecord]],
    embedder,
    config: HipoRankConfig | None = None,
) -> DocumentGraph:
    """Embed every sentence once and assemble the discounted edge weights."""
    if not sections_of_sentences or any(not section for section in sections_of_sentences):
        raise ValueError("need at least one section, and no section may be empty")
    config = config or HipoRankConfig()

    flat = [record for section in sections_of_sentences for record in section]
    embeddings = embedder.embed([record.text for record in flat]).vectors

    sections: list[list[int]] = []
    offset = 0
    for section in sections_of_sentences:
        sections.append(list(range(offset, offset + len(section))))
        offset += len(section)
    n_sections = len(sections)

    section_embeddings = np.stack([_unit_mean(embeddings[ids[0] : ids[-1] + 1]) for ids in sections])

    # Similarities are computed pair-by-pair (np.dot) rather than as one
    # matrix product: the per-pair result is independent of where the pair
    # sits in the document, which keeps reversal equivariance bit-exact.
    intra_weights: list[np.ndarray] = []
    for ids in sections:
        size = len(ids)
        rows = embeddings[ids[0] : ids[-1] + 1]
        sim = np.zeros((size, size))
        for j in range(size):
            for i in range(j + 1, size):
                value = min(1.0, max(-1.0, float(np.dot(rows[j], rows[i]))))
                sim[j, i] = value
                sim[i, j] = value
        dist = _boundary_distances(size)
        weights = np.zeros((size, size))
        for j in range(size):
            for i in range(size):
                if i != j:
                    beta = 1.0 if dist[i] <= dist[j] else config.alpha
                    weights[j, i] = sim[j, i] * beta
        intra_weights.append(weights)

    section_dist = _boundary_distances(n_sections)
    inter_weights = np.zeros((n_sections, len(flat)))
    for s, ids in enumerate(sections):
        receiving = 1.0 if section_dist[s] == 0 else config.alpha
        for node in ids:
            for t in range(n_sections):
                if t != s:
                    sim = min(1.0, max(-1.0, float(np.dot(embeddings[node], section_embeddings[t]))))
                    inter_weights[t, node] = sim * receiving

    return DocumentGraph(
        sections=sections,
        sentence_embeddings=embeddings,
        section_embeddings=section_embeddings,
        intra_weights=intra_weights,
        inter_weights=inter_weights,
        alpha=config.alpha,
    )


def score_sentences(graph: DocumentGraph, config: HipoRankConfig | None = None) -> list[tuple[int, float]]:
    """Per-node lambda-weighted mean of incoming intra and inter edges.

    Returns (node id, score) pairs in node order.  Each sum is normalized by
    its incoming-edge count; a node with no incoming edges of a kind
    contributes 0 for that term.
    """
    config = config or HipoRankConfig()
    n_sections = len(graph.sections)
    scores: list[tuple[int, float]] = []
    for s, ids in enumerate(graph.sections):
        size = len(ids)
        weights = graph.intra_weights[s]
        for local_i, node in enumerate(ids):
            incoming = [weights[local_j, local_i] for local_j in range(size) if local_j != local_i]
            intra_avg = math.fsum(incoming) / len(incoming) if incoming else 0.0
            inter_in = [graph.inter_weights[t, node] for t in range(n_sections) if t != s]
            inter_avg = math.fsum(inter_in) / len(inter_in) if inter_in else 0.0
            scores.append((node, config.lambda_intra * intra_avg + config.lambda_inter * inter_avg))
    scores.sort(key=lambda pair: pair[0])
    return scores


def hiporank_rank(
    section_title: str,
    sentences: list[SentenceRecord],
    embedder,
    config: HipoRankConfig | None = None,
) -> ExtractiveSummary:
    """Group sentences by reference, build the graph, and keep the top K.

    ``section_title`` is accepted for interface parity with the salience
    ranker but does not influence the scores.
    """
    del section_title
    if not sentences:
        raise ValueError("hiporank_rank requires at least one sentence")
    config = config or HipoRankConfig()

    by_ref: dict[int, list[SentenceRecord]] = {}
    for record in sentences:
        by_ref.setdefault(record.ref_index, []).append(record)
    ordered_sections = [sorted(by_ref[ref], key=lambda r: r.sent_index) for ref in sorted(by_ref)]
    flat = [record for section in ordered_sections for record in section]

    graph = build_graph(ordered_sections, embedder, config)
    node_scores = score_sentences(graph, config)
    scored = [ScoredSentence(sentence=flat[node], score=score) for node, score in node_scores]
    return select_top_k(scored, config.k, method="hiporank")
