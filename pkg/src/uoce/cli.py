"""Command-line surface: validate, stats, score, run, sweep, kg, formats.

Exit codes: 0 success, 1 completed with warnings (or skipped items), 2 input
or validation error.
"""

from __future__ import annotations

import re
import sys
from pathlib import Path

import click

from uoce.dataset import (
    DatasetError,
    DatasetFile,
    dataset_stats,
    load_dataset,
    read_predictions,
    scan_dataset,
    write_predictions,
)
from uoce.kg import (
    FORMAT_DOC_LINKS,
    PARSE_FORMATS,
    SerializationFormat,
    build_corpus_graph,
    serialize_graph,
)
from uoce.kg.instances import DEFAULT_INSTANCE_BASE
from uoce.llm import CompletionError, ResponseCache, RunError, run_eval
from uoce.metrics import MetricKind, score_task
from uoce.model import SLOT_ORDER, TaskKind
from uoce.prompts import PromptConfigError
from uoce.report import (
    SweepCell,
    SweepReport,
    render_score_csv,
    render_score_text,
)
from uoce.runconfig import RunConfigError, load_run_config, make_backend

_TASK = click.Choice([t.value for t in TaskKind], case_sensitive=False)
_METRIC = click.Choice([m.value for m in MetricKind], case_sensitive=False)
_FORMAT = click.Choice(sorted(f.value for f in SerializationFormat))


def _fail(message: str) -> "None":
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _load_dataset(path: str) -> DatasetFile:
    try:
        return load_dataset(path)
    except (OSError, DatasetError) as exc:
        _fail(str(exc))
        raise AssertionError  # unreachable


@click.group()
@click.version_option(package_name="uoce")
def main() -> None:
    """Unified opinion concept extraction toolkit."""


@main.command()
@click.argument("dataset", type=click.Path(exists=True, dir_okay=False))
def validate(dataset: str) -> None:
    """Check a dataset file and report every diagnostic."""
    text = Path(dataset).read_text(encoding="utf-8")
    parsed, findings = scan_dataset(text)
    for line in findings:
        click.echo(line)
    if parsed is None:
        sys.exit(2)
    stats = dataset_stats(parsed)
    click.echo(f"OK: {stats.sentence_count} records, {stats.opinion_count} opinions")
    sys.exit(1 if findings else 0)


@main.command()
@click.argument("dataset", type=click.Path(exists=True, dir_okay=False))
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Also write the table as CSV.")
def stats(dataset: str, csv_path: str | None) -> None:
    """Dataset characteristics: per-slot totals and unique values."""
    ds = _load_dataset(dataset)
    result = dataset_stats(ds)
    click.echo(f"sentences {result.sentence_count}")
    click.echo(f"opinions  {result.opinion_count}")
    click.echo("slot  total  unique")
    for slot in SLOT_ORDER:
        click.echo(
            f"{slot.value:<4}  {result.slot_totals[slot]:>5}  "
            f"{result.slot_uniques[slot]:>6}"
        )
    if csv_path:
        lines = ["slot,total,unique"]
        lines += [
            f"{slot.value},{result.slot_totals[slot]},{result.slot_uniques[slot]}"
            for slot in SLOT_ORDER
        ]
        Path(csv_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
        click.echo(f"wrote {csv_path}")


@main.command()
@click.argument("gold", type=click.Path(exists=True, dir_okay=False))
@click.argument("predictions", type=click.Path(exists=True, dir_okay=False))
@click.option("--task", type=_TASK, default="uoce", show_default=True)
@click.option("--metric", type=_METRIC, default="component", show_default=True)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Also write the report as CSV.")
def score(gold: str, predictions: str, task: str, metric: str, csv_path: str | None) -> None:
    """Score a predictions file against gold data."""
    ds = _load_dataset(gold)
    try:
        preds = read_predictions(predictions, ds)
        report = score_task(
            ds.gold_sets(), preds.prediction_sets(), TaskKind(task), MetricKind(metric)
        )
    except (OSError, DatasetError, ValueError) as exc:
        _fail(str(exc))
        raise AssertionError
    click.echo(render_score_text(report), nl=False)
    if csv_path:
        Path(csv_path).write_text(render_score_csv(report), encoding="utf-8")
        click.echo(f"wrote {csv_path}")


@main.command()
@click.argument("dataset", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Run configuration (TOML or JSON).")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False),
              help="Destination predictions file (JSON lines).")
@click.option("--model", "model_name", default=None,
              help="Model name from the config (default: first entry).")
@click.option("--cache", "cache_path", type=click.Path(dir_okay=False), default=None,
              help="Reply cache file (JSON lines, append-only).")
@click.option("--strict", is_flag=True, help="Drop tuples with any parse diagnostic.")
def run(dataset: str, config_path: str, out_path: str, model_name: str | None,
        cache_path: str | None, strict: bool) -> None:
    """Run one model over a dataset and write predictions."""
    ds = _load_dataset(dataset)
    try:
        settings = load_run_config(config_path)
        specs = {spec.name: spec for spec in settings.models}
        if model_name is None:
            spec = settings.models[0]
        elif model_name in specs:
            spec = specs[model_name]
        else:
            raise RunConfigError(
                f"model {model_name!r} not in config (have: {sorted(specs)})"
            )
        prompt_cfg = settings.prompt_config()
        backend = make_backend(spec, ds)
    except (OSError, RunConfigError, PromptConfigError) as exc:
        _fail(str(exc))
        raise AssertionError
    cache = ResponseCache(cache_path) if cache_path else None
    try:
        predictions = run_eval(ds, prompt_cfg, spec.config, backend, cache, strict)
    except (RunError, CompletionError) as exc:
        _fail(str(exc))
        raise AssertionError
    write_predictions(predictions, out_path)
    total = sum(len(e.tuples) for _, e in predictions.entries)
    click.echo(f"wrote {out_path}: {len(predictions.entries)} sentences, {total} tuples")


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "-", name)


@main.command()
@click.argument("dataset", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Run configuration (TOML or JSON).")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False),
              help="Directory for predictions files and the grid report.")
@click.option("--task", type=_TASK, default="uoce", show_default=True)
@click.option("--metric", type=_METRIC, default="component", show_default=True)
@click.option("--cache", "cache_path", type=click.Path(dir_okay=False), default=None)
@click.option("--strict", is_flag=True, help="Drop tuples with any parse diagnostic.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Also write the grid as CSV.")
def sweep(dataset: str, config_path: str, out_dir: str, task: str, metric: str,
          cache_path: str | None, strict: bool, csv_path: str | None) -> None:
    """Run every (model, variant) cell and print the F1 grid with mu/sigma."""
    ds = _load_dataset(dataset)
    try:
        settings = load_run_config(config_path)
        variants = settings.variants()
    except (OSError, RunConfigError) as exc:
        _fail(str(exc))
        raise AssertionError
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cache = ResponseCache(cache_path) if cache_path else None
    gold = ds.gold_sets()

    cells: dict[tuple[str, str], SweepCell] = {}
    for spec in settings.models:
        try:
            backend = make_backend(spec, ds)
        except RunConfigError as exc:
            _fail(str(exc))
            raise AssertionError
        for variant in variants:
            try:
                prompt_cfg = settings.prompt_config(variant)
                predictions = run_eval(ds, prompt_cfg, spec.config, backend, cache, strict)
                report = score_task(
                    gold, predictions.prediction_sets(), TaskKind(task), MetricKind(metric)
                )
            except (RunError, CompletionError, PromptConfigError) as exc:
                cells[(spec.name, variant)] = SweepCell(error=str(exc))
                continue
            cell_path = out / f"{_safe_name(spec.name)}__{_safe_name(variant)}.jsonl"
            write_predictions(predictions, cell_path)
            cells[(spec.name, variant)] = SweepCell(f1=report.f1)

    grid = SweepReport(
        models=tuple(spec.name for spec in settings.models),
        variants=variants,
        cells=cells,
        task=task,
        metric=metric,
    )
    text = grid.render_text()
    (out / "grid.txt").write_text(text, encoding="utf-8")
    click.echo(text, nl=False)
    if csv_path:
        Path(csv_path).write_text(grid.render_csv(), encoding="utf-8")
        click.echo(f"wrote {csv_path}")
    sys.exit(1 if any(cell.f1 is None for cell in cells.values()) else 0)


@main.command()
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "format_name", type=_FORMAT, default="ttl", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="Output file (default: stdout).")
@click.option("--base-iri", default=DEFAULT_INSTANCE_BASE, show_default=True,
              help="Base IRI for minted opinion individuals.")
@click.option("--dataset", "dataset_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Gold dataset (required when SOURCE is predictions).")
@click.option("--lenient", is_flag=True,
              help="Exit 0 even when invalid tuples had to be skipped.")
def kg(source: str, format_name: str, out_path: str | None, base_iri: str,
       dataset_path: str | None, lenient: bool) -> None:
    """Serialize a dataset or predictions file as one knowledge graph.

    SOURCE ending in .jsonl is treated as predictions and needs --dataset for
    the sentence texts; anything else is loaded as a dataset.
    """
    fmt = SerializationFormat(format_name)
    if source.endswith(".jsonl"):
        if dataset_path is None:
            _fail("predictions input needs --dataset for the sentence records")
        ds = _load_dataset(dataset_path)
        try:
            predictions = read_predictions(source, ds)
        except DatasetError as exc:
            _fail(str(exc))
            raise AssertionError
        by_id = ds.by_id()
        pairs = [(by_id[sid], list(entry.tuples)) for sid, entry in predictions.entries]
    else:
        ds = _load_dataset(source)
        pairs = [(record, list(record.opinions)) for record in ds.records]

    graph, skipped = build_corpus_graph(pairs, base_iri=base_iri)
    text = serialize_graph(graph, fmt)
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
        click.echo(f"wrote {out_path}")
    else:
        click.echo(text, nl=False)
    if fmt not in PARSE_FORMATS:
        click.echo(
            f"note: '{fmt.value}' output is emit-only"
            + (" and drops literal values" if fmt is SerializationFormat.OBO else ""),
            err=True,
        )
    for sid, ordinal, diagnostics in skipped:
        for diag in diagnostics:
            click.echo(f"skipped {sid}#{ordinal}: {diag.message}", err=True)
    sys.exit(1 if skipped and not lenient else 0)


@main.command()
def formats() -> None:
    """List the seven serialization formats with documentation links."""
    for fmt in sorted(SerializationFormat, key=lambda f: f.value):
        support = "read/write" if fmt in PARSE_FORMATS else "write-only"
        click.echo(f"{fmt.value:<7} {support:<10} {FORMAT_DOC_LINKS[fmt]}")


if __name__ == "__main__":
    main()
