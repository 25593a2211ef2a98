"""Independent brute-force oracles for the metric and graph-ranking tests.

Everything here is written from the definitions, structured differently
from the library implementations (memoized recursion instead of DP tables,
list-removal multiset matching instead of Counter intersection, exhaustive
alignment enumeration, explicit edge enumeration), and must stay
independent of the code paths it checks.
"""

from __future__ import annotations

import itertools
import math
import unicodedata
from functools import lru_cache


def _norm_tokens(text: str, lowercase: bool) -> list[str]:
    text = unicodedata.normalize("NFC", text)
    if lowercase:
        text = text.lower()
    return text.split()


def lcs_oracle(a: tuple[str, ...], b: tuple[str, ...]) -> int:
    @lru_cache(maxsize=None)
    def rec(i: int, j: int) -> int:
        if i == len(a) or j == len(b):
            return 0
        if a[i] == b[j]:
            return 1 + rec(i + 1, j + 1)
        return max(rec(i + 1, j), rec(i, j + 1))

    return rec(0, 0)


def rouge_l_oracle(candidate: str, reference: str) -> float:
    cand = tuple(_norm_tokens(candidate, lowercase=True))
    ref = tuple(_norm_tokens(reference, lowercase=True))
    if not cand or not ref:
        return 0.0
    lcs = lcs_oracle(cand, ref)
    if lcs == 0:
        return 0.0
    p = lcs / len(cand)
    r = lcs / len(ref)
    return 2 * p * r / (p + r)


def _gram_list(items, order):
    return [tuple(items[i : i + order]) for i in range(len(items) - order + 1)]


def _multiset_matches(cand_grams: list, ref_grams: list) -> int:
    pool = list(ref_grams)
    matched = 0
    for gram in cand_grams:
        if gram in pool:
            pool.remove(gram)
            matched += 1
    return matched


def chrf_oracle(candidate: str, reference: str, char_n: int = 6, word_n: int = 2, beta: float = 2.0) -> float:
    cand_text = unicodedata.normalize("NFC", candidate)
    ref_text = unicodedata.normalize("NFC", reference)
    cand_chars = list("".join(cand_text.split()))
    ref_chars = list("".join(ref_text.split()))
    cand_words = cand_text.split()
    ref_words = ref_text.split()

    f_scores = []
    layers = [(cand_chars, ref_chars, char_n), (cand_words, ref_words, word_n)]
    for cand_items, ref_items, max_order in layers:
        for order in range(1, max_order + 1):
            ref_grams = _gram_list(ref_items, order)
            if not ref_grams:
                continue
            cand_grams = _gram_list(cand_items, order)
            matches = _multiset_matches(cand_grams, ref_grams)
            p = matches / len(cand_grams) if cand_grams else 0.0
            r = matches / len(ref_grams)
            denom = beta * beta * p + r
            f_scores.append((1 + beta * beta) * p * r / denom if denom > 0 else 0.0)
    return sum(f_scores) / len(f_scores) if f_scores else 0.0


def _alignment_chunks(pairs: list[tuple[int, int]]) -> int:
    ordered = sorted(pairs)
    chunks = 0
    prev = None
    for ci, rj in ordered:
        if prev is None or ci != prev[0] + 1 or rj != prev[1] + 1:
            chunks += 1
        prev = (ci, rj)
    return chunks


def meteor_oracle(
    candidate: str,
    reference: str,
    alpha: float = 0.9,
    beta: float = 3.0,
    gamma: float = 0.5,
) -> float:
    """Exhaustive enumeration over all maximum exact-match alignments.

    Exponential; only use on short fixture texts.
    """
    cand = _norm_tokens(candidate, lowercase=True)
    ref = _norm_tokens(reference, lowercase=True)
    if not cand or not ref:
        return 0.0

    cand_positions: dict[str, list[int]] = {}
    ref_positions: dict[str, list[int]] = {}
    for i, w in enumerate(cand):
        cand_positions.setdefault(w, []).append(i)
    for j, w in enumerate(ref):
        ref_positions.setdefault(w, []).append(j)

    shared = sorted(set(cand_positions) & set(ref_positions))
    matches = sum(min(len(cand_positions[w]), len(ref_positions[w])) for w in shared)
    if matches == 0:
        return 0.0

    per_word_options = []
    for w in shared:
        count = min(len(cand_positions[w]), len(ref_positions[w]))
        options = []
        for cand_subset in itertools.combinations(cand_positions[w], count):
            for ref_perm in itertools.permutations(ref_positions[w], count):
                options.append(list(zip(cand_subset, ref_perm)))
        per_word_options.append(options)

    best_chunks = matches
    for combo in itertools.product(*per_word_options):
        pairs = [pair for group in combo for pair in group]
        best_chunks = min(best_chunks, _alignment_chunks(pairs))

    p = matches / len(cand)
    r = matches / len(ref)
    f_mean = p * r / (alpha * p + (1 - alpha) * r)
    penalty = gamma * (best_chunks / matches) ** beta
    return f_mean * (1 - penalty)


def _cosine(u, v) -> float:
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    return dot / (nu * nv)


def hiporank_oracle_scores(
    sections: list[list[list[float]]],
    alpha: float,
    lambda_intra: float,
    lambda_inter: float,
) -> list[float]:
    """Edge-enumeration scores for a document given per-section embeddings.

    Builds every directed edge explicitly, then averages incoming weights
    per node, in flat document order.
    """
    section_count = len(sections)

    def mean_vector(vectors):
        dims = len(vectors[0])
        return [sum(v[d] for v in vectors) / len(vectors) for d in range(dims)]

    section_reps = [mean_vector(sec) for sec in sections]

    flat = []
    for s, sec in enumerate(sections):
        for p, emb in enumerate(sec):
            flat.append((s, p, emb))

    intra_edges: dict[int, list[float]] = {i: [] for i in range(len(flat))}
    inter_edges: dict[int, list[float]] = {i: [] for i in range(len(flat))}

    for dst, (s_i, p_i, e_i) in enumerate(flat):
        n_s = len(sections[s_i])
        d_i = min(p_i, n_s - 1 - p_i)
        for src, (s_j, p_j, e_j) in enumerate(flat):
            if src == dst or s_j != s_i:
                continue
            d_j = min(p_j, n_s - 1 - p_j)
            discount = 1.0 if d_i <= d_j else alpha
            intra_edges[dst].append(_cosine(e_i, e_j) * discount)
        section_boundary = min(s_i, section_count - 1 - s_i) == 0
        receiving = 1.0 if section_boundary else alpha
        for t in range(section_count):
            if t == s_i:
                continue
            inter_edges[dst].append(_cosine(e_i, section_reps[t]) * receiving)

    scores = []
    for i in range(len(flat)):
        intra = sum(intra_edges[i]) / len(intra_edges[i]) if intra_edges[i] else 0.0
        inter = sum(inter_edges[i]) / len(inter_edges[i]) if inter_edges[i] else 0.0
        scores.append(lambda_intra * intra + lambda_inter * inter)
    return scores
