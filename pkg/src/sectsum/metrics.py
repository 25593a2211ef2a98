"""Self-contained text-generation metrics: ROUGE-L, chrF++, METEOR.

All three operate on NFC-normalized text with whitespace word tokenization
(no script-specific word breaking).  ROUGE-L and METEOR lowercase cased
scripts; chrF++ keeps case, matching its usual definition.

* ``rouge_l``: F1 over the word-level longest common subsequence.
* ``chrf``: mean of per-order F-beta scores over character n-grams
  (orders 1..6, whitespace removed) and word n-grams (orders 1..2);
  orders whose reference n-gram multiset is empty are excluded.
* ``meteor``: exact-match unigram alignment that maximizes matches and,
  among those, minimizes chunks; no stemming or synonym matching, since
  neither exists uniformly across the supported scripts.  Chunk
  minimization is solved exactly by branch and bound up to a fixed node
  budget (the problem is NP-hard in general); past the budget the best
  alignment found so far is used, deterministically.
"""

from __future__ import annotations

import math
import sys
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass

CHRF_CHAR_ORDER = 6
CHRF_WORD_ORDER = 2
CHRF_BETA = 2.0
METEOR_ALPHA = 0.9
METEOR_BETA = 3.0
METEOR_GAMMA = 0.5

_CHUNK_SEARCH_NODE_BUDGET = 200_000


@dataclass(frozen=True)
class MetricTriple:
    rouge_l: float
    chrf: float
    meteor: float


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _words(text: str, lowercase: bool) -> list[str]:
    text = _nfc(text)
    if lowercase:
        text = text.lower()
    return text.split()


def _lcs_length(a: list[str], b: list[str]) -> int:
    if not a or not b:
        return 0
    if len(b) > len(a):
        a, b = b, a
    previous = [0] * (len(b) + 1)
    for x in a:
        current = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def rouge_l(candidate: str, reference: str) -> float:
    """Word-level LCS F1; 0.0 when either side is empty or nothing matches."""
    cand = _words(candidate, lowercase=True)
    ref = _words(reference, lowercase=True)
    if not cand or not ref:
        return 0.0
    lcs = _lcs_length(cand, ref)
    if lcs == 0:
        return 0.0
    precision = lcs / len(cand)
    recall = lcs / len(ref)
    return 2.0 * precision * recall / (precision + recall)


def _char_ngrams(text: str, order: int) -> Counter:
    chars = "".join(text.split())
    return Counter(chars[i : i + order] for i in range(len(chars) - order + 1))


def _word_ngrams(tokens: list[str], order: int) -> Counter:
    return Counter(tuple(tokens[i : i + order]) for i in range(len(tokens) - order + 1))


def _fbeta(matches: int, cand_total: int, ref_total: int, beta: float) -> float:
    precision = matches / cand_total if cand_total else 0.0
    recall = matches / ref_total
    denominator = beta * beta * precision + recall
    if denominator == 0.0:
        return 0.0
    return (1.0 + beta * beta) * precision * recall / denominator


def chrf(
    candidate: str,
    reference: str,
    char_n: int = CHRF_CHAR_ORDER,
    word_n: int = CHRF_WORD_ORDER,
    beta: float = CHRF_BETA,
) -> float:
    """Average per-order F-beta over character and word n-grams."""
    cand_text = _nfc(candidate)
    ref_text = _nfc(reference)
    cand_tokens = cand_text.split()
    ref_tokens = ref_text.split()

    per_order: list[float] = []
    for order in range(1, char_n + 1):
        ref_grams = _char_ngrams(ref_text, order)
        if not ref_grams:
            continue
        cand_grams = _char_ngrams(cand_text, order)
        matches = sum((cand_grams & ref_grams).values())
        per_order.append(_fbeta(matches, sum(cand_grams.values()), sum(ref_grams.values()), beta))
    for order in range(1, word_n + 1):
        ref_grams = _word_ngrams(ref_tokens, order)
        if not ref_grams:
            continue
        cand_grams = _word_ngrams(cand_tokens, order)
        matches = sum((cand_grams & ref_grams).values())
        per_order.append(_fbeta(matches, sum(cand_grams.values()), sum(ref_grams.values()), beta))

    if not per_order:
        return 0.0
    return sum(per_order) / len(per_order)


def _min_chunks(cand: list[str], ref: list[str], total_matches: int) -> int:
    """Minimum chunk count over all maximum exact-match alignments.

    Branch and bound over candidate positions.  Options at each position:
    continue the current run (preferred), start a new chunk at any unused
    reference slot of the same word, or leave the token unmatched while the
    word's skip budget lasts.  The search is exhaustive within the node
    budget; a first complete alignment always exists, so hitting the budget
    degrades the bound, never correctness of being *an* alignment.
    """
    ref_positions: dict[str, list[int]] = defaultdict(list)
    for j, word in enumerate(ref):
        ref_positions[word].append(j)
    cand_counts = Counter(cand)
    quota = {w: min(c, len(ref_positions[w])) for w, c in cand_counts.items() if w in ref_positions}
    skip_budget = {w: cand_counts[w] - quota[w] for w in quota}
    matched_of = {w: 0 for w in quota}
    skipped_of = {w: 0 for w in quota}

    used = [False] * len(ref)
    best = total_matches + 1
    nodes = 0

    def search(i: int, matched: int, chunks: int, prev_i: int, prev_j: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if chunks >= best or nodes > _CHUNK_SEARCH_NODE_BUDGET:
            return
        if matched == total_matches:
            best = chunks
            return
        if i == len(cand):
            return
        word = cand[i]
        if word not in quota:
            search(i + 1, matched, chunks, prev_i, prev_j)
            return

        if matched_of[word] < quota[word]:
            run_j = prev_j + 1 if prev_i == i - 1 else -1
            options: list[int] = []
            if 0 <= run_j < len(ref) and not used[run_j] and ref[run_j] == word:
                options.append(run_j)
            for j in ref_positions[word]:
                if not used[j] and j != run_j:
                    options.append(j)
            matched_of[word] += 1
            for j in options:
                used[j] = True
                search(i + 1, matched + 1, chunks + (0 if j == run_j else 1), i, j)
                used[j] = False
            matched_of[word] -= 1
        if skipped_of[word] < skip_budget[word]:
            skipped_of[word] += 1
            search(i + 1, matched, chunks, prev_i, prev_j)
            skipped_of[word] -= 1

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, len(cand) + 500))
    try:
        search(0, 0, 0, -2, -2)
    finally:
        sys.setrecursionlimit(limit)
    return min(best, total_matches)


def meteor(
    candidate: str,
    reference: str,
    alpha: float = METEOR_ALPHA,
    beta: float = METEOR_BETA,
    gamma: float = METEOR_GAMMA,
) -> float:
    """Unigram-matching score with a fragmentation penalty; 0.0 on no match."""
    cand = _words(candidate, lowercase=True)
    ref = _words(reference, lowercase=True)
    if not cand or not ref:
        return 0.0
    cand_counts = Counter(cand)
    ref_counts = Counter(ref)
    matches = sum((cand_counts & ref_counts).values())
    if matches == 0:
        return 0.0
    precision = matches / len(cand)
    recall = matches / len(ref)
    f_mean = precision * recall / (alpha * precision + (1.0 - alpha) * recall)
    chunks = _min_chunks(cand, ref, matches)
    penalty = gamma * (chunks / matches) ** beta
    return f_mean * (1.0 - penalty)


def micro_average(rows: list[MetricTriple]) -> MetricTriple:
    """Uniform mean of instance-level triples.

    Sums with ``math.fsum``, so the result is independent of row order.
    """
    if not rows:
        raise ValueError("micro_average requires at least one row")
    n = len(rows)
    return MetricTriple(
        rouge_l=math.fsum(r.rouge_l for r in rows) / n,
        chrf=math.fsum(r.chrf for r in rows) / n,
        meteor=math.fsum(r.meteor for r in rows) / n,
    )
