"""Command-line entry point: corpus, extract, score, and run subcommands.

Configuration precedence is flags > environment variables > config file >
built-in defaults.  Recognized environment variables: MODEL_SERVICE_URL
(remote backend base URL) and WORKERS (pipeline worker limit).

Exit codes: 0 success, 1 validation/usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from sectsum.corpus import (
    CorpusValidationError,
    compute_stats,
    export_corpus,
    import_corpus,
    stratified_split,
)
from sectsum.encoders import HttpEncoder, StubEncoder
from sectsum.experiment import (
    EXTRACTORS,
    build_report,
    config_fingerprint,
    corpus_fingerprint,
    partition,
    resolve_setup,
    run_pipeline,
)
from sectsum.extract import salience_rank
from sectsum.generation import HttpGenerator, StubGenerator
from sectsum.hiporank import HipoRankConfig, hiporank_rank
from sectsum.metrics import MetricTriple, chrf, meteor, micro_average, rouge_l
from sectsum.report import write_report_files
from sectsum.segmenter import segment


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        raise _UsageError(message)


@dataclass
class RunConfig:
    corpus: Path
    setup: str
    extractor: str
    generator: str
    service_url: str | None
    k: int
    alpha: float
    lambda_intra: float
    lambda_inter: float
    seed: int
    workers: int
    out: Path
    figures: bool

    def validate(self) -> None:
        if not self.corpus.exists():
            raise _UsageError(f"--corpus path does not exist: {self.corpus}")
        if self.extractor not in EXTRACTORS:
            raise _UsageError(f"--extractor must be one of {EXTRACTORS}")
        if self.generator not in ("stub", "remote"):
            raise _UsageError("--generator must be 'stub' or 'remote'")
        if self.generator == "remote" and not self.service_url:
            raise _UsageError("--generator remote requires --service-url or MODEL_SERVICE_URL")
        if self.k < 1:
            raise _UsageError(f"--k must be >= 1, got {self.k}")
        if self.workers < 1:
            raise _UsageError(f"--workers must be >= 1, got {self.workers}")
        HipoRankConfig(alpha=self.alpha, lambda_intra=self.lambda_intra, lambda_inter=self.lambda_inter, k=self.k)


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise _UsageError(f"cannot read config file {path}: {exc}")
    if not isinstance(data, dict):
        raise _UsageError(f"config file {path} must hold a JSON object")
    return data


def _resolve(flag_value, env_key: str | None, file_map: dict, file_key: str, default):
    if flag_value is not None:
        return flag_value
    if env_key and os.environ.get(env_key):
        return os.environ[env_key]
    if file_key in file_map:
        return file_map[file_key]
    return default


def _build_parser() -> _Parser:
    parser = _Parser(prog="sectsum", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    corpus_cmd = sub.add_parser("corpus", help="validate, summarize, or split a corpus")
    corpus_sub = corpus_cmd.add_subparsers(dest="corpus_command", required=True)
    for name, help_text in (
        ("validate", "import a corpus and report validation problems"),
        ("stats", "per-(domain, language) corpus statistics tables"),
        ("split", "assign stratified train/val/test labels"),
    ):
        cmd = corpus_sub.add_parser(name, help=help_text)
        cmd.add_argument("--corpus", required=True, help="corpus path")
        cmd.add_argument("--format", default="canonical-jsonl", help="importer id (default: canonical-jsonl)")
        if name == "stats":
            cmd.add_argument("--out", default=None, help="optional JSON output path")
        if name == "split":
            cmd.add_argument("--out", required=True, help="output JSONL path")
            cmd.add_argument("--seed", type=int, default=0)
            cmd.add_argument("--ratios", default="0.6,0.2,0.2", help="train,val,test ratios")
            cmd.add_argument(
                "--override-existing",
                action="store_true",
                help="re-split even if records already carry split labels",
            )

    extract_cmd = sub.add_parser("extract", help="rank reference sentences for each instance")
    extract_cmd.add_argument("--corpus", required=True)
    extract_cmd.add_argument("--format", default="canonical-jsonl")
    extract_cmd.add_argument("--method", required=True, choices=EXTRACTORS)
    extract_cmd.add_argument("--k", type=int, default=50)
    extract_cmd.add_argument("--alpha", type=float, default=0.5)
    extract_cmd.add_argument("--lambda-intra", type=float, default=1.0)
    extract_cmd.add_argument("--lambda-inter", type=float, default=1.0)
    extract_cmd.add_argument("--encoder", choices=("stub", "remote"), default="stub")
    extract_cmd.add_argument("--service-url", default=None, help="model service base URL")
    extract_cmd.add_argument("--instance-id", default=None, help="only process this instance")
    extract_cmd.add_argument("--out", required=True, help="output JSONL path")

    score_cmd = sub.add_parser("score", help="score line-aligned candidate/reference files")
    score_cmd.add_argument("--candidate", required=True)
    score_cmd.add_argument("--reference", required=True)
    score_cmd.add_argument("--format", choices=("tsv", "json"), default="tsv")
    score_cmd.add_argument("--out", default=None, help="output path (default: stdout)")

    run_cmd = sub.add_parser("run", help="full extract-generate-score run over the test split")
    run_cmd.add_argument("--corpus", required=True)
    run_cmd.add_argument("--corpus-format", default="canonical-jsonl")
    run_cmd.add_argument("--setup", required=True, help="ml | md | mlmd (or full setup names)")
    run_cmd.add_argument("--extractor", required=True, choices=EXTRACTORS)
    run_cmd.add_argument("--generator", choices=("stub", "remote"), default="stub")
    run_cmd.add_argument("--encoder", choices=("stub", "remote"), default="stub")
    run_cmd.add_argument("--service-url", default=None, help="model service base URL")
    run_cmd.add_argument("--k", type=int, default=None)
    run_cmd.add_argument("--alpha", type=float, default=None)
    run_cmd.add_argument("--lambda-intra", type=float, default=None)
    run_cmd.add_argument("--lambda-inter", type=float, default=None)
    run_cmd.add_argument("--seed", type=int, default=None)
    run_cmd.add_argument("--workers", type=int, default=None)
    run_cmd.add_argument("--out", required=True, help="report JSON path")
    run_cmd.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    run_cmd.add_argument("--config", default=None, help="JSON config file (lowest precedence)")
    return parser


def _cmd_corpus(args: argparse.Namespace) -> int:
    corpus = import_corpus(args.corpus, format=args.format)
    if args.corpus_command == "validate":
        print(f"ok: {len(corpus)} instances")
        return 0
    if args.corpus_command == "stats":
        stats = compute_stats(corpus, segment)
        print(f"articles: {stats.totals.articles}")
        print(f"sections: {stats.totals.sections}")
        for label, table, fmt in (
            ("articles", stats.articles_by_cell, "d"),
            ("sections", stats.sections_by_cell, "d"),
            ("avg_refs", stats.avg_refs_by_cell, ".2f"),
            ("avg_ref_sentences", stats.avg_ref_sentences_by_cell, ".1f"),
        ):
            print(f"\n[{label}]")
            print(_render_grid(table, fmt))
        if args.out:
            payload = {
                "totals": {"articles": stats.totals.articles, "sections": stats.totals.sections},
                "articles_by_cell": {f"{d}/{l}": v for (d, l), v in sorted(stats.articles_by_cell.items())},
                "sections_by_cell": {f"{d}/{l}": v for (d, l), v in sorted(stats.sections_by_cell.items())},
                "avg_refs_by_cell": {f"{d}/{l}": v for (d, l), v in sorted(stats.avg_refs_by_cell.items())},
                "avg_ref_sentences_by_cell": {
                    f"{d}/{l}": v for (d, l), v in sorted(stats.avg_ref_sentences_by_cell.items())
                },
            }
            Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return 0
    # split
    if not args.override_existing and any(inst.split != "unassigned" for inst in corpus):
        raise _UsageError(
            "corpus already carries split labels; shipped splits take precedence "
            "(pass --override-existing to re-split)"
        )
    try:
        ratios = tuple(float(part) for part in args.ratios.split(","))
    except ValueError:
        raise _UsageError(f"--ratios must be three comma-separated numbers, got {args.ratios!r}")
    try:
        labeled = stratified_split(corpus, ratios=ratios, seed=args.seed)
    except ValueError as exc:
        raise _UsageError(str(exc))
    export_corpus(labeled, args.out)
    counts = {"train": 0, "val": 0, "test": 0}
    for instance in labeled:
        counts[instance.split] += 1
    print(f"wrote {args.out}: train={counts['train']} val={counts['val']} test={counts['test']}")
    return 0


def _render_grid(table: dict[tuple[str, str], float], fmt: str) -> str:
    domains = sorted({d for d, _ in table})
    languages = sorted({l for _, l in table})
    lines = ["domain\t" + "\t".join(languages)]
    for domain in domains:
        cells = [format(table[(domain, lang)], fmt) if (domain, lang) in table else "-" for lang in languages]
        lines.append(domain + "\t" + "\t".join(cells))
    return "\n".join(lines)


def _make_encoder(kind: str, url: str | None):
    if kind == "stub":
        return StubEncoder()
    return HttpEncoder.from_env(url)


def _cmd_extract(args: argparse.Namespace) -> int:
    corpus = import_corpus(args.corpus, format=args.format)
    if args.instance_id is not None:
        corpus = [inst for inst in corpus if inst.id == args.instance_id]
        if not corpus:
            raise _UsageError(f"no instance with id {args.instance_id!r}")
    encoder = _make_encoder(args.encoder, args.service_url)
    config = HipoRankConfig(
        alpha=args.alpha, lambda_intra=args.lambda_intra, lambda_inter=args.lambda_inter, k=args.k
    )
    with open(args.out, "w", encoding="utf-8") as handle:
        for instance in corpus:
            records = segment([ref.text for ref in instance.references])
            if args.method == "salience":
                summary = salience_rank(instance.section_title, records, encoder, k=args.k)
            else:
                summary = hiporank_rank(instance.section_title, records, encoder, config)
            handle.write(
                json.dumps(
                    {
                        "id": instance.id,
                        "method": summary.method,
                        "k": summary.k_requested,
                        "items": [
                            {
                                "global_index": item.sentence.global_index,
                                "ref_index": item.sentence.ref_index,
                                "sent_index": item.sentence.sent_index,
                                "score": item.score,
                                "text": item.sentence.text,
                            }
                            for item in summary.items
                        ],
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    print(f"wrote {args.out}: {len(corpus)} instances")
    return 0


def _cmd_score(args: argparse.Namespace) -> int:
    try:
        candidates = Path(args.candidate).read_text(encoding="utf-8").splitlines()
        references = Path(args.reference).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise _UsageError(str(exc))
    if len(candidates) != len(references):
        raise _UsageError(
            f"--candidate has {len(candidates)} lines but --reference has {len(references)}"
        )
    if not candidates:
        raise _UsageError("input files are empty")
    triples = [
        MetricTriple(rouge_l=rouge_l(c, r), chrf=chrf(c, r), meteor=meteor(c, r))
        for c, r in zip(candidates, references)
    ]
    overall = micro_average(triples)
    if args.format == "json":
        payload = {
            "rows": [{"rouge_l": t.rouge_l, "chrf": t.chrf, "meteor": t.meteor} for t in triples],
            "micro_average": {"rouge_l": overall.rouge_l, "chrf": overall.chrf, "meteor": overall.meteor},
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = ["index\trouge_l\tchrf\tmeteor"]
        for i, t in enumerate(triples):
            lines.append(f"{i}\t{t.rouge_l!r}\t{t.chrf!r}\t{t.meteor!r}")
        lines.append(f"micro_average\t{overall.rouge_l!r}\t{overall.chrf!r}\t{overall.meteor!r}")
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    file_map = _load_config_file(args.config)
    config = RunConfig(
        corpus=Path(args.corpus),
        setup=resolve_setup(args.setup),
        extractor=args.extractor,
        generator=args.generator,
        service_url=_resolve(args.service_url, "MODEL_SERVICE_URL", file_map, "service_url", None),
        k=int(_resolve(args.k, None, file_map, "k", 50)),
        alpha=float(_resolve(args.alpha, None, file_map, "alpha", 0.5)),
        lambda_intra=float(_resolve(args.lambda_intra, None, file_map, "lambda_intra", 1.0)),
        lambda_inter=float(_resolve(args.lambda_inter, None, file_map, "lambda_inter", 1.0)),
        seed=int(_resolve(args.seed, None, file_map, "seed", 0)),
        workers=int(_resolve(args.workers, "WORKERS", file_map, "workers", 1)),
        out=Path(args.out),
        figures=not args.no_figures,
    )
    config.validate()

    corpus = import_corpus(config.corpus, format=args.corpus_format)
    setup_partition = partition(corpus, config.setup)
    test_split = [inst for inst in corpus if inst.split == "test"]
    if not test_split:
        raise _UsageError("corpus has no test-split instances; run `sectsum corpus split` first")

    if args.encoder == "remote" and not config.service_url:
        raise _UsageError("--encoder remote requires --service-url or MODEL_SERVICE_URL")
    encoder = _make_encoder(args.encoder, config.service_url)
    generator = StubGenerator() if config.generator == "stub" else HttpGenerator.from_env(config.service_url)

    hiporank_config = HipoRankConfig(
        alpha=config.alpha,
        lambda_intra=config.lambda_intra,
        lambda_inter=config.lambda_inter,
        k=config.k,
    )
    results, failures = run_pipeline(
        test_split,
        config.extractor,
        generator,
        encoder=encoder,
        k=config.k,
        hiporank_config=hiporank_config,
        workers=config.workers,
    )
    if not results:
        print("error: every instance failed; first reason: " + failures[0].reason, file=sys.stderr)
        return 2
    report = build_report(
        results,
        failures=failures,
        extractor=config.extractor,
        generator=config.generator,
        setup=config.setup,
        k=config.k,
        config_hash=config_fingerprint(
            {
                "setup": config.setup,
                "extractor": config.extractor,
                "generator": config.generator,
                "k": config.k,
                "alpha": config.alpha,
                "lambda_intra": config.lambda_intra,
                "lambda_inter": config.lambda_inter,
                "seed": config.seed,
            }
        ),
        corpus_hash=corpus_fingerprint(corpus),
    )
    written = write_report_files(report, results, config.out, figures=config.figures)
    print(
        f"scored {len(results)} instances ({len(failures)} failed), "
        f"{len(setup_partition.groups)} setup group(s); wrote {', '.join(str(p) for p in written)}"
    )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "corpus":
            return _cmd_corpus(args)
        if args.command == "extract":
            return _cmd_extract(args)
        if args.command == "score":
            return _cmd_score(args)
        return _cmd_run(args)
    except (_UsageError, CorpusValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failure
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
