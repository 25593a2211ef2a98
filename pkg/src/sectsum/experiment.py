"""End-to-end experiment runs: setup partitions, the extract-generate-score
pipeline over a test split, and micro-averaged report tables."""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from sectsum.corpus import SectionInstance, instance_to_record
from sectsum.extract import salience_rank
from sectsum.generation import GenerationRequest, generate
from sectsum.hiporank import HipoRankConfig, hiporank_rank
from sectsum.metrics import MetricTriple, chrf, meteor, micro_average, rouge_l
from sectsum.segmenter import segment

SETUPS = ("multi-lingual", "multi-domain", "multi-lingual-multi-domain")
SETUP_ALIASES = {"ml": "multi-lingual", "md": "multi-domain", "mlmd": "multi-lingual-multi-domain"}
EXTRACTORS = ("salience", "hiporank")


@dataclass
class SetupPartition:
    setup: str
    groups: dict[str, list[SectionInstance]]


@dataclass(frozen=True)
class InstanceResult:
    instance_id: str
    language: str
    domain: str
    text: str
    metrics: MetricTriple


@dataclass(frozen=True)
class InstanceFailure:
    instance_id: str
    reason: str


@dataclass
class EvalReport:
    overall: MetricTriple
    by_language: dict[str, MetricTriple]
    by_domain: dict[str, MetricTriple]
    by_cell: dict[tuple[str, str], MetricTriple]
    run_metadata: dict = field(default_factory=dict)


def resolve_setup(label: str) -> str:
    setup = SETUP_ALIASES.get(label, label)
    if setup not in SETUPS:
        raise ValueError(f"unknown setup {label!r} (expected one of {SETUPS} or {sorted(SETUP_ALIASES)})")
    return setup


def partition(corpus: list[SectionInstance], setup: str) -> SetupPartition:
    """Group instances into training-setup partitions.

    multi-lingual keys by domain (one model per domain across languages),
    multi-domain keys by language, multi-lingual-multi-domain is a single
    group.  Groups always partition the input.
    """
    setup = resolve_setup(setup)
    groups: dict[str, list[SectionInstance]] = {}
    for instance in corpus:
        if setup == "multi-lingual":
            key = instance.domain
        elif setup == "multi-domain":
            key = instance.language
        else:
            key = "all"
        groups.setdefault(key, []).append(instance)
    return SetupPartition(setup=setup, groups=dict(sorted(groups.items())))


def corpus_fingerprint(instances: list[SectionInstance]) -> str:
    digest = hashlib.sha256()
    for instance in instances:
        digest.update(json.dumps(instance_to_record(instance), ensure_ascii=False, sort_keys=True).encode("utf-8"))
        digest.update(b"\n")
    return digest.hexdigest()


def config_fingerprint(config: dict) -> str:
    return hashlib.sha256(json.dumps(config, sort_keys=True).encode("utf-8")).hexdigest()


def _process_instance(
    instance: SectionInstance,
    extractor: str,
    generator,
    encoder,
    k: int,
    hiporank_config: HipoRankConfig,
) -> InstanceResult:
    records = segment([ref.text for ref in instance.references])
    if extractor == "salience":
        summary = salience_rank(instance.section_title, records, encoder, k=k)
    elif extractor == "hiporank":
        summary = hiporank_rank(instance.section_title, records, encoder, hiporank_config)
    else:
        raise ValueError(f"unknown extractor {extractor!r} (expected one of {EXTRACTORS})")
    request = GenerationRequest(
        language=instance.language,
        article_title=instance.article_title,
        section_title=instance.section_title,
        ranked_sentences=tuple(item.sentence.text for item in summary.items),
    )
    result = generate(request, generator)
    triple = MetricTriple(
        rouge_l=rouge_l(result.text, instance.target_text),
        chrf=chrf(result.text, instance.target_text),
        meteor=meteor(result.text, instance.target_text),
    )
    return InstanceResult(
        instance_id=instance.id,
        language=instance.language,
        domain=instance.domain,
        text=result.text,
        metrics=triple,
    )


def run_pipeline(
    instances: list[SectionInstance],
    extractor: str,
    generator,
    *,
    encoder,
    k: int = 50,
    hiporank_config: HipoRankConfig | None = None,
    workers: int = 1,
) -> tuple[list[InstanceResult], list[InstanceFailure]]:
    """Segment, extract, generate, and score each instance.

    Failing instances are quarantined with their reason instead of aborting
    the run.  Results and failures are ordered by instance id, so the output
    does not depend on the worker count.
    """
    if extractor not in EXTRACTORS:
        raise ValueError(f"unknown extractor {extractor!r} (expected one of {EXTRACTORS})")
    hiporank_config = hiporank_config or HipoRankConfig(k=k)

    def worker(instance: SectionInstance) -> InstanceResult | InstanceFailure:
        try:
            return _process_instance(instance, extractor, generator, encoder, k, hiporank_config)
        except Exception as exc:
            return InstanceFailure(instance_id=instance.id, reason=f"{type(exc).__name__}: {exc}")

    if workers > 1 and len(instances) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(worker, instances))
    else:
        outcomes = [worker(instance) for instance in instances]

    results = sorted(
        (o for o in outcomes if isinstance(o, InstanceResult)), key=lambda r: r.instance_id
    )
    failures = sorted(
        (o for o in outcomes if isinstance(o, InstanceFailure)), key=lambda f: f.instance_id
    )
    return results, failures


def build_report(
    results: list[InstanceResult],
    *,
    failures: list[InstanceFailure] | None = None,
    extractor: str,
    generator: str,
    setup: str,
    k: int,
    config_hash: str,
    corpus_hash: str,
) -> EvalReport:
    """Micro-average the per-instance rows overall, per language, per domain,
    and per (domain, language) cell."""
    if not results:
        raise ValueError("build_report requires at least one result row")
    failures = failures or []

    by_language: dict[str, list[MetricTriple]] = {}
    by_domain: dict[str, list[MetricTriple]] = {}
    by_cell: dict[tuple[str, str], list[MetricTriple]] = {}
    for row in results:
        by_language.setdefault(row.language, []).append(row.metrics)
        by_domain.setdefault(row.domain, []).append(row.metrics)
        by_cell.setdefault((row.domain, row.language), []).append(row.metrics)

    return EvalReport(
        overall=micro_average([row.metrics for row in results]),
        by_language={lang: micro_average(rows) for lang, rows in sorted(by_language.items())},
        by_domain={dom: micro_average(rows) for dom, rows in sorted(by_domain.items())},
        by_cell={cell: micro_average(rows) for cell, rows in sorted(by_cell.items())},
        run_metadata={
            "extractor": extractor,
            "generator": generator,
            "setup": setup,
            "k": k,
            "config_hash": config_hash,
            "corpus_hash": corpus_hash,
            "instances_scored": len(results),
            "instances_failed": len(failures),
            "failures": [{"id": f.instance_id, "reason": f.reason} for f in failures],
        },
    )
