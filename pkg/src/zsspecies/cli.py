"""Command-line front end for reproducible benchmark runs.

Subcommands:

  resolve   list each species with its resolved prompt name
  count     scan a caption corpus, write the name-frequency table,
            print name coverage
  prompts   build per-species prompt sets as JSON lines
  classify  score image embeddings against class prompt embeddings,
            write predictions and the evaluation report
  report    render a strategy-by-dataset accuracy comparison table

Flags always win over the optional TOML config file, which exists so a
whole run can be recorded as one artifact. Every error path exits
nonzero after a single ``error: <category>: <message>`` line on stderr;
id mismatches exit 3 and dimension mismatches exit 4, everything else 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from zsspecies.classifier import (
    ClassModel,
    DimensionMismatch,
    breakdown_by_type,
    evaluate,
    report_to_json,
)
from zsspecies.corpus_freq import (
    FrequencyTableError,
    MergeError,
    PatternError,
    build_pattern_set,
    count_corpus_file,
    coverage_report,
    merge,
    read_frequency_table,
    write_frequency_table,
)
from zsspecies.embeddings import EmbeddingFormatError, read_embeddings
from zsspecies.prompts import (
    DEFAULT_PHOTO_TEMPLATE,
    DescriptionError,
    DescriptionStore,
    NameChoice,
    PromptError,
    Strategy,
    StrategyError,
    build_prompt_set,
    write_prompt_sets,
)
from zsspecies.taxonomy import NameMapError, load_name_table, resolve_common

EXIT_DATA = 2
EXIT_ID_MISMATCH = 3
EXIT_DIM_MISMATCH = 4

STRATEGY_ROW_ORDER = [
    "s-name",
    "s-name + descriptions",
    "c-name",
    "c-name + descriptions",
    "f-name",
    "f-name + descriptions",
]


class UsageError(ValueError):
    pass


class LabelsError(ValueError):
    """Malformed labels file."""


class IdMismatchError(ValueError):
    """An id in one input has no counterpart in another."""


class _Parser(argparse.ArgumentParser):
    # Single-line machine-parsable diagnostics instead of argparse's
    # two-line usage dump.
    def error(self, message):
        print(f"error: usage: {message}", file=sys.stderr)
        raise SystemExit(EXIT_DATA)


def load_labels(source) -> list[tuple[str, str]]:
    """Read ``image_id<TAB>species_id`` rows, order preserved."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return load_labels(fh)
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\r\n")
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise LabelsError(f"line {lineno}: expected 2 columns, found {len(cols)}")
        image_id, species_id = cols[0].strip(), cols[1].strip()
        if not image_id or not species_id:
            raise LabelsError(f"line {lineno}: empty id")
        pairs.append((image_id, species_id))
    return pairs


def _merge_config(args: argparse.Namespace) -> None:
    """Fill unset options from the TOML config; explicit flags win."""
    cfg_path = getattr(args, "config", None)
    if cfg_path:
        with open(cfg_path, "rb") as fh:
            data = tomllib.load(fh)
        for key, value in data.items():
            key = key.replace("-", "_")
            if hasattr(args, key) and getattr(args, key) in (None, []):
                setattr(args, key, value)
    for flag in ("with_descriptions", "renormalize", "mixed_fname_descriptions"):
        if hasattr(args, flag):
            setattr(args, flag, bool(getattr(args, flag)))
    if getattr(args, "corpus", None) and isinstance(args.corpus, str):
        args.corpus = [args.corpus]


def _require(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name, None) in (None, []):
            flag = "--" + name.replace("_", "-")
            raise UsageError(f"{flag} is required (flag or config)")


# ---------------------------------------------------------------------------
# subcommands


def cmd_resolve(args) -> int:
    _require(args, "name_map")
    table = load_name_table(args.name_map)
    for rec in table:
        chosen = resolve_common(rec)
        kind = "common" if rec.common_names else "fallback"
        print(f"{rec.species_id}\t{rec.scientific_name}\t{chosen}\t{kind}")
    return 0


def cmd_count(args) -> int:
    _require(args, "name_map", "corpus", "out")
    table = load_name_table(args.name_map)
    patterns = build_pattern_set(table.all_names())
    freq = None
    for path in args.corpus:
        shard = count_corpus_file(path, patterns, args.caption_column)
        freq = shard if freq is None else merge(freq, shard)
    write_frequency_table(freq, args.out)
    cov = coverage_report(freq, table)
    print(f"corpus_lines\t{freq.corpus_lines}")
    print(f"S-names\t{cov.scientific}")
    print(f"+ C-names\t{cov.with_common}")
    return 0


def _load_freq_for(args, table):
    if getattr(args, "freq_table", None):
        return read_frequency_table(args.freq_table)
    if getattr(args, "corpus", None):
        patterns = build_pattern_set(table.all_names())
        freq = None
        for path in args.corpus:
            shard = count_corpus_file(path, patterns, args.caption_column)
            freq = shard if freq is None else merge(freq, shard)
        return freq
    return None


def cmd_prompts(args) -> int:
    _require(args, "name_map", "strategy", "out")
    table = load_name_table(args.name_map)
    strategy = Strategy(NameChoice(args.strategy), args.with_descriptions)
    descriptions = (
        DescriptionStore.load(args.descriptions) if args.descriptions else None
    )
    freq = _load_freq_for(args, table)
    if strategy.name_choice is NameChoice.FREQUENT and freq is None:
        raise StrategyError("f-name needs --freq-table or --corpus")
    template = args.template or DEFAULT_PHOTO_TEMPLATE
    sets = [
        build_prompt_set(
            rec,
            strategy,
            descriptions,
            freq,
            template=template,
            mixed_fname_descriptions=args.mixed_fname_descriptions,
        )
        for rec in table
    ]
    write_prompt_sets(sets, args.out)
    print(f"prompt_sets\t{len(sets)}")
    return 0


def cmd_classify(args) -> int:
    _require(args, "text_emb", "image_emb", "labels", "out")
    text = read_embeddings(args.text_emb, renormalize=args.renormalize)
    images = read_embeddings(args.image_emb, renormalize=args.renormalize)
    labels = load_labels(args.labels)
    model = ClassModel.from_embeddings(text)
    if model.dim != images.dim:
        raise DimensionMismatch(
            f"text embeddings have dim {model.dim}, image embeddings {images.dim}"
        )
    row_by_id = {rid: i for i, rid in enumerate(images.ids)}
    for image_id, _ in labels:
        if image_id not in row_by_id:
            raise IdMismatchError(f"labeled image {image_id!r} has no embedding row")
    class_set = set(model.classes)
    for _, species_id in labels:
        if species_id not in class_set:
            raise IdMismatchError(
                f"label species {species_id!r} has no prompt embeddings"
            )

    rows = images.vectors[[row_by_id[image_id] for image_id, _ in labels]]
    preds = model.classify_batch(rows)
    report = evaluate(
        [(species_id, pred) for (_, species_id), pred in zip(labels, preds)],
        model.classes,
    )
    if args.name_map:
        types = load_name_table(args.name_map).organism_types()
        report.per_type = breakdown_by_type(report, types)

    extra: dict[str, object] = {}
    if args.strategy:
        label = args.strategy
        if args.with_descriptions:
            label += " + descriptions"
        extra["strategy"] = label
    if args.dataset:
        extra["dataset"] = args.dataset

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "predictions.tsv", "w", encoding="utf-8") as fh:
        for (image_id, species_id), pred in zip(labels, preds):
            fh.write(f"{image_id}\t{species_id}\t{pred}\n")
    (out_dir / "report.json").write_text(
        report_to_json(report, extra), encoding="utf-8"
    )
    print(f"macro_accuracy\t{report.macro_accuracy:.6f}")
    return 0


def _format_pct(value: float) -> str:
    return f"{100.0 * value:.2f}%"


def _render_table(header: list[str], rows: list[list[str]], markdown: bool) -> str:
    if markdown:
        lines = ["| " + " | ".join(header) + " |"]
        lines.append("| " + " | ".join("---" for _ in header) + " |")
        for row in rows:
            lines.append("| " + " | ".join(row) + " |")
        return "\n".join(lines) + "\n"
    widths = [
        max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
        for i in range(len(header))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _comparison_tables(reports: list[dict], markdown: bool) -> str:
    datasets: list[str] = []
    strategies: list[str] = []
    cells: dict[tuple[str, str], float] = {}
    per_type: dict[str, dict[str, dict[str, float]]] = {}
    for rep in reports:
        dataset, strategy = rep["dataset"], rep["strategy"]
        if dataset not in datasets:
            datasets.append(dataset)
        if strategy not in strategies:
            strategies.append(strategy)
        cells[(strategy, dataset)] = rep["macro_accuracy"]
        if rep.get("per_type"):
            per_type.setdefault(dataset, {})[strategy] = rep["per_type"]

    ordered = [s for s in STRATEGY_ROW_ORDER if s in strategies]
    ordered += [s for s in strategies if s not in STRATEGY_ROW_ORDER]

    header = ["Prompt Method"] + datasets
    rows = []
    for strategy in ordered:
        row = [strategy]
        for dataset in datasets:
            value = cells.get((strategy, dataset))
            row.append("-" if value is None else _format_pct(value))
        rows.append(row)
    out = _render_table(header, rows, markdown)

    for dataset in datasets:
        if dataset not in per_type:
            continue
        by_strategy = per_type[dataset]
        type_names = sorted({t for accs in by_strategy.values() for t in accs})
        strat_cols = [s for s in ordered if s in by_strategy]
        header = ["Species Type"] + strat_cols
        rows = []
        for type_name in type_names:
            row = [type_name]
            for strategy in strat_cols:
                value = by_strategy[strategy].get(type_name)
                row.append("-" if value is None else _format_pct(value))
            rows.append(row)
        title = f"per-type breakdown: {dataset}"
        out += ("\n## " if markdown else "\n# ") + title + "\n"
        out += _render_table(header, rows, markdown)
    return out


def cmd_report(args) -> int:
    _require(args, "reports")
    loaded: list[dict] = []
    for path in args.reports:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise UsageError(f"{path}: not valid JSON ({exc})") from None
        if "macro_accuracy" not in data:
            raise UsageError(f"{path}: missing macro_accuracy")
        stem = Path(path).stem
        loaded.append(
            {
                "dataset": data.get("dataset") or stem,
                "strategy": data.get("strategy") or stem,
                "macro_accuracy": data["macro_accuracy"],
                "per_class": data.get("per_class") or {},
                "per_type": data.get("per_type"),
            }
        )

    by_dataset: dict[str, set[frozenset]] = {}
    for rep in loaded:
        by_dataset.setdefault(rep["dataset"], set()).add(
            frozenset(rep["per_class"].keys())
        )
    for dataset, class_sets in by_dataset.items():
        if len(class_sets) > 1:
            print(
                f"warning: reports for {dataset!r} cover different class sets",
                file=sys.stderr,
            )

    sys.stdout.write(_comparison_tables(loaded, markdown=False))
    if args.out:
        Path(args.out).write_text(
            _comparison_tables(loaded, markdown=True), encoding="utf-8"
        )
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="zsspecies",
        description="Species-name prompting and zero-shot benchmark toolkit",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML config supplying defaults; flags win")

    p = sub.add_parser(
        "resolve", parents=[common], help="list resolved names per species"
    )
    p.add_argument("--name-map", help="species name-map TSV")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser(
        "count", parents=[common], help="count name occurrences in a caption corpus"
    )
    p.add_argument("corpus", nargs="*", help="caption files (one caption per line; .gz ok)")
    p.add_argument("--name-map", help="species name-map TSV")
    p.add_argument(
        "--caption-column",
        type=int,
        help="0-based TSV column holding the caption (default: whole line)",
    )
    p.add_argument("--out", help="frequency table TSV to write")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser(
        "prompts", parents=[common], help="build per-species prompt sets (JSONL)"
    )
    p.add_argument("--name-map", help="species name-map TSV")
    p.add_argument("--strategy", choices=[c.value for c in NameChoice])
    p.add_argument("--with-descriptions", action="store_true", default=None)
    p.add_argument("--descriptions", help="descriptions TSV (species_id, description)")
    p.add_argument("--freq-table", help="frequency table TSV (needed for f-name)")
    p.add_argument("--corpus", nargs="*", help="count from these captions instead")
    p.add_argument(
        "--caption-column",
        type=int,
        help="0-based TSV column holding the caption (default: whole line)",
    )
    p.add_argument("--template", help="photo prompt template with a {name} placeholder")
    p.add_argument(
        "--mixed-fname-descriptions",
        action="store_true",
        default=None,
        help="under f-name, keep the scientific name in description lines",
    )
    p.add_argument("--out", help="prompt JSONL to write")
    p.set_defaults(func=cmd_prompts)

    p = sub.add_parser(
        "classify", parents=[common], help="score images and write the eval report"
    )
    p.add_argument("--text-emb", help="class prompt embeddings (ids species_id#k)")
    p.add_argument("--image-emb", help="image embeddings")
    p.add_argument("--labels", help="TSV image_id<TAB>species_id")
    p.add_argument("--renormalize", action="store_true", default=None)
    p.add_argument("--name-map", help="adds a per-organism-type breakdown")
    p.add_argument("--strategy", choices=[c.value for c in NameChoice])
    p.add_argument("--with-descriptions", action="store_true", default=None)
    p.add_argument("--dataset", help="dataset label recorded in the report")
    p.add_argument("--out", help="output directory (predictions.tsv, report.json)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser(
        "report", parents=[common], help="comparison table from report JSON files"
    )
    p.add_argument("reports", nargs="*", help="report.json files")
    p.add_argument("--out", help="also write the table as Markdown")
    p.set_defaults(func=cmd_report)

    return parser


_ERROR_MAP: list[tuple[type, str, int]] = [
    (UsageError, "usage", EXIT_DATA),
    (NameMapError, "name-map", EXIT_DATA),
    (DescriptionError, "descriptions", EXIT_DATA),
    (PatternError, "frequency", EXIT_DATA),
    (MergeError, "frequency", EXIT_DATA),
    (FrequencyTableError, "frequency", EXIT_DATA),
    (EmbeddingFormatError, "embeddings", EXIT_DATA),
    (PromptError, "prompts", EXIT_DATA),
    (StrategyError, "strategy", EXIT_DATA),
    (LabelsError, "labels", EXIT_DATA),
    (IdMismatchError, "id-mismatch", EXIT_ID_MISMATCH),
    (DimensionMismatch, "dim-mismatch", EXIT_DIM_MISMATCH),
    (tomllib.TOMLDecodeError, "config", EXIT_DATA),
    (OSError, "io", EXIT_DATA),
    (ValueError, "invalid", EXIT_DATA),
]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "func", None) is None:
        parser.error("a subcommand is required")
    try:
        _merge_config(args)
        return args.func(args)
    except tuple(t for t, _, _ in _ERROR_MAP) as exc:
        for err_type, category, code in _ERROR_MAP:
            if isinstance(exc, err_type):
                print(f"error: {category}: {exc}", file=sys.stderr)
                return code
        raise  # unreachable


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
