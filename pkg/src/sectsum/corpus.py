"""Section-corpus data model, importers, statistics, and stratified splitting.

The canonical on-disk form is line-delimited JSON (one section instance per
line, UTF-8, NFC-normalized).  A second importer adapts a directory-tree
release layout; its field mapping is documented on the importer itself.
"""

from __future__ import annotations

import json
import random
import unicodedata
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable

LANGUAGES = frozenset({"bn", "en", "hi", "ml", "mr", "or", "pa", "ta"})
DOMAINS = frozenset({"books", "films", "politicians", "sportsmen", "writers"})
SPLITS = ("train", "val", "test", "unassigned")


class CorpusValidationError(ValueError):
    """Raised when an imported record violates the corpus schema.

    The message names the offending line (1-based, when known) and field.
    """

    def __init__(self, message: str, *, line: int | None = None, field_name: str | None = None):
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if field_name is not None:
            prefix += f"field '{field_name}': "
        super().__init__(prefix + message)
        self.line = line
        self.field_name = field_name


@dataclass(frozen=True)
class ReferenceDocument:
    url: str
    text: str


@dataclass(frozen=True)
class SectionInstance:
    """One dataset row: a (language, article, section) with its references."""

    id: str
    language: str
    domain: str
    article_title: str
    section_title: str
    references: tuple[ReferenceDocument, ...]
    target_text: str
    split: str = "unassigned"


@dataclass(frozen=True)
class CorpusTotals:
    articles: int = 0
    sections: int = 0


@dataclass
class CorpusStats:
    articles_by_cell: dict[tuple[str, str], int] = field(default_factory=dict)
    sections_by_cell: dict[tuple[str, str], int] = field(default_factory=dict)
    avg_refs_by_cell: dict[tuple[str, str], float] = field(default_factory=dict)
    avg_ref_sentences_by_cell: dict[tuple[str, str], float] = field(default_factory=dict)
    totals: CorpusTotals = field(default_factory=CorpusTotals)


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _require(condition: bool, message: str, *, line: int | None, field_name: str | None) -> None:
    if not condition:
        raise CorpusValidationError(message, line=line, field_name=field_name)


def validate_instance(instance: SectionInstance, *, line: int | None = None) -> None:
    _require(bool(instance.id), "id must be a non-empty string", line=line, field_name="id")
    _require(
        instance.language in LANGUAGES,
        f"unknown language {instance.language!r} (expected one of {sorted(LANGUAGES)})",
        line=line,
        field_name="language",
    )
    _require(
        instance.domain in DOMAINS,
        f"unknown domain {instance.domain!r} (expected one of {sorted(DOMAINS)})",
        line=line,
        field_name="domain",
    )
    _require(
        len(instance.references) > 0,
        "references must be non-empty",
        line=line,
        field_name="references",
    )
    for i, ref in enumerate(instance.references):
        _require(
            bool(" ".join(ref.text.split())),
            f"reference {i} has empty text after whitespace normalization",
            line=line,
            field_name="references",
        )
    _require(
        instance.split in SPLITS,
        f"unknown split {instance.split!r} (expected one of {SPLITS})",
        line=line,
        field_name="split",
    )


def _instance_from_record(record: dict, *, line: int | None) -> SectionInstance:
    if not isinstance(record, dict):
        raise CorpusValidationError("record is not a JSON object", line=line, field_name=None)

    def text_field(name: str, allow_empty: bool = True) -> str:
        value = record.get(name)
        _require(isinstance(value, str), f"expected a string, got {type(value).__name__}", line=line, field_name=name)
        if not allow_empty:
            _require(bool(value), "must be non-empty", line=line, field_name=name)
        return _nfc(value)

    refs_raw = record.get("references")
    _require(isinstance(refs_raw, list), "expected a list of reference objects", line=line, field_name="references")
    references = []
    for i, ref in enumerate(refs_raw):
        _require(isinstance(ref, dict), f"reference {i} is not an object", line=line, field_name="references")
        url = ref.get("url", "")
        text = ref.get("text")
        _require(isinstance(url, str), f"reference {i} url is not a string", line=line, field_name="references")
        _require(isinstance(text, str), f"reference {i} text is not a string", line=line, field_name="references")
        references.append(ReferenceDocument(url=_nfc(url), text=_nfc(text)))

    split_raw = record.get("split")
    if split_raw is None:
        split = "unassigned"
    else:
        _require(isinstance(split_raw, str), "split must be a string or null", line=line, field_name="split")
        split = split_raw

    instance = SectionInstance(
        id=text_field("id", allow_empty=False),
        language=text_field("language", allow_empty=False),
        domain=text_field("domain", allow_empty=False),
        article_title=text_field("article_title"),
        section_title=text_field("section_title"),
        references=tuple(references),
        target_text=text_field("target_text"),
        split=split,
    )
    validate_instance(instance, line=line)
    return instance


def instance_to_record(instance: SectionInstance) -> dict:
    return {
        "id": instance.id,
        "language": instance.language,
        "domain": instance.domain,
        "article_title": instance.article_title,
        "section_title": instance.section_title,
        "references": [{"url": r.url, "text": r.text} for r in instance.references],
        "target_text": instance.target_text,
        "split": None if instance.split == "unassigned" else instance.split,
    }


def _import_canonical_jsonl(path: Path) -> list[SectionInstance]:
    instances = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            try:
                record = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise CorpusValidationError(f"invalid JSON ({exc.msg})", line=line_no, field_name=None) from exc
            instances.append(_instance_from_record(record, line=line_no))
    return instances


def _import_release_tree(path: Path) -> list[SectionInstance]:
    """Adapter for a directory-tree release layout.

    Expected layout: ``<root>/<domain>/<language>_<split>.json`` where each
    file holds a JSON array of records.  Field mapping (alias -> canonical):
    ``title`` -> article_title, ``section_title``/``section`` -> section_title,
    ``content``/``section_text``/``target_text`` -> target_text, references
    from ``references`` (objects with url/text, or bare text strings) or
    parallel ``ref_urls``/``ref_texts`` lists.  Split comes from the filename.
    This mapping has not been verified against an actual release archive and
    may need adjustment; prefer converting to canonical JSONL.
    """
    instances = []
    for file_path in sorted(path.glob("*/*.json")):
        domain = file_path.parent.name
        stem = file_path.stem
        if "_" in stem:
            language, split = stem.split("_", 1)
        else:
            language, split = stem, "unassigned"
        if split not in SPLITS:
            split = "unassigned"
        with open(file_path, "r", encoding="utf-8") as handle:
            items = json.load(handle)
        if not isinstance(items, list):
            raise CorpusValidationError(f"{file_path}: expected a JSON array", line=None, field_name=None)
        for i, item in enumerate(items):
            references = []
            if "references" in item:
                for ref in item["references"]:
                    if isinstance(ref, dict):
                        references.append({"url": ref.get("url", ""), "text": ref.get("text", "")})
                    else:
                        references.append({"url": "", "text": str(ref)})
            else:
                urls = item.get("ref_urls", [])
                texts = item.get("ref_texts", [])
                for j, text in enumerate(texts):
                    url = urls[j] if j < len(urls) else ""
                    references.append({"url": url, "text": text})
            record = {
                "id": item.get("id") or f"{language}-{domain}-{split}-{i:06d}",
                "language": language,
                "domain": domain,
                "article_title": item.get("article_title") or item.get("title", ""),
                "section_title": item.get("section_title") or item.get("section", ""),
                "references": references,
                "target_text": item.get("target_text") or item.get("content") or item.get("section_text", ""),
                "split": split,
            }
            instances.append(_instance_from_record(record, line=None))
    return instances


IMPORTERS: dict[str, Callable[[Path], list[SectionInstance]]] = {
    "canonical-jsonl": _import_canonical_jsonl,
    "release-tree": _import_release_tree,
}


def import_corpus(path: str | Path, format: str = "canonical-jsonl") -> list[SectionInstance]:
    """Import and validate a corpus, preserving input order."""
    path = Path(path)
    if format not in IMPORTERS:
        raise CorpusValidationError(f"unknown importer {format!r} (registered: {sorted(IMPORTERS)})")
    if not path.exists():
        raise CorpusValidationError(f"corpus path does not exist: {path}")
    instances = IMPORTERS[format](path)
    seen: dict[str, int] = {}
    for pos, instance in enumerate(instances, start=1):
        if instance.id in seen:
            raise CorpusValidationError(
                f"duplicate id {instance.id!r} (records {seen[instance.id]} and {pos})",
                field_name="id",
            )
        seen[instance.id] = pos
    return instances


def export_corpus(instances: Iterable[SectionInstance], path: str | Path) -> None:
    """Write instances as canonical JSONL; round-trips through import_corpus."""
    with open(path, "w", encoding="utf-8") as handle:
        for instance in instances:
            handle.write(json.dumps(instance_to_record(instance), ensure_ascii=False) + "\n")


def compute_stats(
    corpus: list[SectionInstance],
    segmenter: Callable[[list[str]], list],
) -> CorpusStats:
    """Per-(domain, language) article/section counts and reference averages.

    ``avg_ref_sentences_by_cell`` applies the segmenter to each section's
    reference texts and averages the sentence counts over the cell's
    sections.  Totals are sums over cells; an empty corpus yields all-zero
    stats.
    """
    stats = CorpusStats()
    articles: dict[tuple[str, str], set[tuple[str, str]]] = {}
    ref_counts: dict[tuple[str, str], list[int]] = {}
    sent_counts: dict[tuple[str, str], list[int]] = {}
    for instance in corpus:
        cell = (instance.domain, instance.language)
        stats.sections_by_cell[cell] = stats.sections_by_cell.get(cell, 0) + 1
        articles.setdefault(cell, set()).add((instance.language, instance.article_title))
        ref_counts.setdefault(cell, []).append(len(instance.references))
        sentences = segmenter([ref.text for ref in instance.references])
        sent_counts.setdefault(cell, []).append(len(sentences))
    for cell, names in articles.items():
        stats.articles_by_cell[cell] = len(names)
    for cell, counts in ref_counts.items():
        stats.avg_refs_by_cell[cell] = sum(counts) / len(counts)
    for cell, counts in sent_counts.items():
        stats.avg_ref_sentences_by_cell[cell] = sum(counts) / len(counts)
    stats.totals = CorpusTotals(
        articles=sum(stats.articles_by_cell.values()),
        sections=sum(stats.sections_by_cell.values()),
    )
    return stats


def _allocate(n: int, ratios: tuple[Fraction, Fraction, Fraction]) -> tuple[int, int, int]:
    # floor allocation plus largest-remainder rounding, priority train > val > test
    exact = [n * r for r in ratios]
    counts = [int(e) for e in exact]
    remainders = [e - c for e, c in zip(exact, counts)]
    leftover = n - sum(counts)
    order = sorted(range(3), key=lambda i: (-remainders[i], i))
    for i in range(leftover):
        counts[order[i]] += 1
    return counts[0], counts[1], counts[2]


def stratified_split(
    corpus: list[SectionInstance],
    ratios: tuple[float, float, float] = (0.6, 0.2, 0.2),
    seed: int = 0,
) -> list[SectionInstance]:
    """Assign train/val/test labels stratified by (domain, language).

    Within each cell the instances are shuffled deterministically (seeded by
    the global seed plus the cell key, after sorting by id so the result does
    not depend on corpus order) and counts follow floor allocation with
    largest-remainder rounding, ties favoring train > val > test.  Returns a
    new list in the original corpus order.
    """
    if len(ratios) != 3 or any(r <= 0 for r in ratios):
        raise ValueError(f"ratios must be three positive numbers, got {ratios}")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"ratios must sum to 1 within 1e-9, got sum {sum(ratios)!r}")
    fractions = tuple(Fraction(r).limit_denominator(10**6) for r in ratios)

    cells: dict[tuple[str, str], list[SectionInstance]] = {}
    for instance in corpus:
        cells.setdefault((instance.domain, instance.language), []).append(instance)

    assignment: dict[str, str] = {}
    for (domain, language), members in cells.items():
        ordered = sorted(members, key=lambda inst: inst.id)
        rng = random.Random(f"{seed}:{domain}:{language}")
        rng.shuffle(ordered)
        n_train, n_val, _ = _allocate(len(ordered), fractions)
        for pos, instance in enumerate(ordered):
            if pos < n_train:
                assignment[instance.id] = "train"
            elif pos < n_train + n_val:
                assignment[instance.id] = "val"
            else:
                assignment[instance.id] = "test"

    return [replace(instance, split=assignment[instance.id]) for instance in corpus]
