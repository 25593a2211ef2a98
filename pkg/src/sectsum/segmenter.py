"""Rule-based multilingual sentence segmentation for reference texts.

Splits on the terminators . ? ! and the Devanagari danda/double danda
(U+0964/U+0965), with guards so that decimal numbers, single-letter
initials ("F. M. Last") and a bundled abbreviation list ("Dr.", "etc.")
do not end a sentence.  The splitter is deliberately conservative: a
terminator only closes a sentence when it is followed by a space (or the
end of the text), which keeps the output lossless modulo whitespace --
joining the sentences of one reference with single spaces reproduces that
reference's whitespace-normalized text exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

TERMINATORS = frozenset({".", "?", "!", "।", "॥"})

_ABBREV_FILE = "abbreviations.txt"


@dataclass(frozen=True)
class SentenceRecord:
    """One segmented sentence with its provenance inside a reference set."""

    text: str
    ref_index: int
    sent_index: int
    global_index: int


def _load_abbreviations() -> frozenset[str]:
    raw = resources.files("sectsum").joinpath("data", _ABBREV_FILE).read_text(encoding="utf-8")
    entries = set()
    for line in raw.splitlines():
        token = line.strip()
        if token and not token.startswith("#"):
            entries.add(token.lower())
    return frozenset(entries)


_ABBREVIATIONS = _load_abbreviations()


def normalize_whitespace(text: str) -> str:
    return " ".join(text.split())


def _dot_is_guarded(text: str, i: int) -> bool:
    # token = the run of non-space characters before the dot, dot excluded
    k = text.rfind(" ", 0, i) + 1
    token = text[k:i]
    if len(token) == 1 and token.isalpha():
        return True
    return token.lower() in _ABBREVIATIONS


def split_sentences(text: str) -> list[str]:
    """Split one whitespace-normalizable text into sentence strings.

    Joining the result with single spaces equals ``normalize_whitespace(text)``.
    """
    normalized = normalize_whitespace(text)
    n = len(normalized)
    sentences: list[str] = []
    start = 0
    i = 0
    while i < n:
        ch = normalized[i]
        if ch in TERMINATORS and (i + 1 == n or normalized[i + 1] == " "):
            if ch == "." and _dot_is_guarded(normalized, i):
                i += 1
                continue
            sentences.append(normalized[start : i + 1])
            start = i + 2
            i = start
            continue
        i += 1
    if start < n:
        sentences.append(normalized[start:])
    return sentences


def segment(reference_texts: list[str]) -> list[SentenceRecord]:
    """Segment an ordered list of reference texts into sentence records.

    ``global_index`` increases strictly in (ref_index, sent_index) order over
    the concatenation of all references.  Empty input yields an empty list;
    a reference that is empty after whitespace normalization contributes no
    records.
    """
    records: list[SentenceRecord] = []
    global_index = 0
    for ref_index, text in enumerate(reference_texts):
        for sent_index, sentence in enumerate(split_sentences(text)):
            records.append(
                SentenceRecord(
                    text=sentence,
                    ref_index=ref_index,
                    sent_index=sent_index,
                    global_index=global_index,
                )
            )
            global_index += 1
    return records
