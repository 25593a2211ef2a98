"""Report serialization: stable JSON, per-instance TSV sidecar, and figures.

The JSON is byte-stable for identical runs (sorted keys, no timestamps).
Figures are rendered with the Agg backend next to the delimited output:
grouped bars per language and per domain, and a (domain x language) heatmap
per metric, all on the conventional 0-100 scale.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from sectsum.experiment import EvalReport, InstanceResult
from sectsum.metrics import MetricTriple

METRIC_NAMES = ("rouge_l", "chrf", "meteor")
METRIC_LABELS = {"rouge_l": "ROUGE-L", "chrf": "chrF++", "meteor": "METEOR"}


def _triple_dict(triple: MetricTriple) -> dict:
    return {"rouge_l": triple.rouge_l, "chrf": triple.chrf, "meteor": triple.meteor}


def report_to_dict(report: EvalReport) -> dict:
    return {
        "overall": _triple_dict(report.overall),
        "by_language": {lang: _triple_dict(t) for lang, t in report.by_language.items()},
        "by_domain": {dom: _triple_dict(t) for dom, t in report.by_domain.items()},
        "by_cell": {f"{dom}/{lang}": _triple_dict(t) for (dom, lang), t in report.by_cell.items()},
        "run_metadata": report.run_metadata,
    }


def report_to_json(report: EvalReport) -> str:
    return json.dumps(report_to_dict(report), ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def _tsv_safe(text: str) -> str:
    return text.replace("\t", " ").replace("\n", " ").replace("\r", " ")


def write_rows_tsv(rows: list[InstanceResult], path: Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("id\tlanguage\tdomain\trouge_l\tchrf\tmeteor\tgenerated_text\n")
        for row in rows:
            handle.write(
                f"{row.instance_id}\t{row.language}\t{row.domain}"
                f"\t{row.metrics.rouge_l!r}\t{row.metrics.chrf!r}\t{row.metrics.meteor!r}"
                f"\t{_tsv_safe(row.text)}\n"
            )


def _grouped_bars(table: dict[str, MetricTriple], title: str, path: Path) -> None:
    keys = sorted(table)
    x = np.arange(len(keys))
    width = 0.27
    fig, ax = plt.subplots(figsize=(max(6.0, 1.1 * len(keys)), 4.0))
    for offset, metric in enumerate(METRIC_NAMES):
        values = [getattr(table[key], metric) * 100.0 for key in keys]
        ax.bar(x + (offset - 1) * width, values, width, label=METRIC_LABELS[metric])
    ax.set_xticks(x)
    ax.set_xticklabels(keys)
    ax.set_ylabel("score x 100")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _cell_heatmap(by_cell: dict[tuple[str, str], MetricTriple], path: Path) -> None:
    domains = sorted({dom for dom, _ in by_cell})
    languages = sorted({lang for _, lang in by_cell})
    fig, axes = plt.subplots(1, len(METRIC_NAMES), figsize=(5.2 * len(METRIC_NAMES), 4.2))
    for ax, metric in zip(np.atleast_1d(axes), METRIC_NAMES):
        grid = np.full((len(domains), len(languages)), np.nan)
        for (dom, lang), triple in by_cell.items():
            grid[domains.index(dom), languages.index(lang)] = getattr(triple, metric) * 100.0
        image = ax.imshow(np.ma.masked_invalid(grid), aspect="auto", cmap="viridis")
        ax.set_xticks(range(len(languages)))
        ax.set_xticklabels(languages)
        ax.set_yticks(range(len(domains)))
        ax.set_yticklabels(domains)
        ax.set_title(METRIC_LABELS[metric])
        fig.colorbar(image, ax=ax, shrink=0.8)
    fig.suptitle("micro-average per (domain, language) cell, x 100")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report_files(
    report: EvalReport,
    rows: list[InstanceResult],
    out_path: str | Path,
    *,
    figures: bool = True,
) -> list[Path]:
    """Write report JSON plus its TSV sidecar and, optionally, figures.

    Returns the list of paths written.  ``out_path`` names the JSON file;
    sidecars share its stem.
    """
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    written = [out_path]
    out_path.write_text(report_to_json(report), encoding="utf-8")

    rows_path = out_path.with_suffix(".rows.tsv")
    write_rows_tsv(rows, rows_path)
    written.append(rows_path)

    if figures:
        stem = out_path.with_suffix("")
        for table, title, suffix in (
            (report.by_language, "micro-average per language", "_by_language.png"),
            (report.by_domain, "micro-average per domain", "_by_domain.png"),
        ):
            figure_path = Path(str(stem) + suffix)
            _grouped_bars(table, title, figure_path)
            written.append(figure_path)
        heatmap_path = Path(str(stem) + "_by_cell.png")
        _cell_heatmap(report.by_cell, heatmap_path)
        written.append(heatmap_path)
    return written
