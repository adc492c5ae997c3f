"""Command-line interface.

Subcommands compose the library end to end: ``build`` turns a source
manifest into an N-Quads store (with prefix and corpus-statistics sidecars),
``fuse`` populates the fused graph, ``stats``/``query`` inspect a store,
``benchmark``/``train``/``timeline``/``baseline-tm`` cover the timeline
workflow and ``eval`` hosts the metric helpers. Exit codes: 0 on success,
1 on input errors, 2 on internal failures.
"""

from __future__ import annotations

import argparse
import shutil
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - Python 3.10 fallback
    import tomli as tomllib

from .errors import InputError
from .evaluate import (
    classification_metrics,
    coverage,
    format_coverage_report,
    format_store_report,
    pearson,
    store_stats,
)
from .fuse import DEFAULT_TRUST_ORDER, build_fused_graph
from .interlink import load_stats, stats_sidecar_path
from .pipeline import build, load_manifest, write_build
from .store import load_store, save_store
from .timeline.benchmark import (
    build_benchmark,
    load_benchmark,
    parse_abstract_file,
    parse_bio_file,
    save_benchmark,
    split_entities,
)
from .timeline.classifier import TrainingConfig, load_model, save_model, train
from .timeline.features import build_feature_space
from .timeline.generate import (
    format_timeline,
    generate_timeline,
    render_timeline_html,
    save_timeline,
    tm_baseline,
)
from .timeline.candidates import collect_candidates
from .tkg import canned_query_locations, canned_query_top_events, to_tkg
from .vocab import FUSED_GRAPH, GRAPH_NS, expand


def _graph_iri(name: str) -> str:
    if "://" in name:
        return name
    return GRAPH_NS + name


def _load_store_and_stats(path: str):
    store = load_store(path)
    sidecar = stats_sidecar_path(path)
    if not sidecar.exists():
        raise InputError(f"missing corpus statistics sidecar: {sidecar}")
    return store, load_stats(sidecar)


def _read_annotations(path: str, kind: str | None):
    if kind is None:
        suffix = Path(path).suffix
        kind = {".bio": "biography", ".abs": "abstract"}.get(suffix)
        if kind is None:
            raise InputError(f"cannot infer annotation kind from {path!r}; use --kind")
    if kind == "biography":
        return parse_bio_file(path), kind
    if kind == "abstract":
        return parse_abstract_file(path), kind
    raise InputError(f"unknown annotation kind: {kind!r}")


def _read_labels(path: str) -> list[int]:
    labels = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        labels.append(int(line.split("\t")[-1]))
    return labels


def _read_floats(path: str) -> list[float]:
    values = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        values.append(float(line.split("\t")[-1]))
    return values


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


# -- subcommand handlers -------------------------------------------------------


def _cmd_build(args) -> int:
    result = build(load_manifest(args.manifest))
    write_build(result, args.out)
    print(f"wrote {len(result.store)} quads to {args.out}")
    return 0


def _cmd_fuse(args) -> int:
    store = load_store(args.store)
    order = tuple(args.trust_order.split(",")) if args.trust_order else DEFAULT_TRUST_ORDER
    fused = build_fused_graph(store, trust_order=order)
    save_store(fused.freeze(), args.out)
    sidecar = stats_sidecar_path(args.store)
    if sidecar.exists() and Path(args.out) != Path(args.store):
        shutil.copyfile(sidecar, stats_sidecar_path(args.out))
    print(f"wrote {len(fused)} quads to {args.out}")
    return 0


def _cmd_stats(args) -> int:
    store = load_store(args.store)
    report = store_stats(store, top_n=args.top)
    _emit(format_store_report(report), args.out)
    return 0


def _cmd_query_locations(args) -> int:
    store = load_store(args.store)
    for location, graph in canned_query_locations(store, expand(args.event)):
        print(f"{location}\t{graph}")
    return 0


def _cmd_query_top_events(args) -> int:
    store = load_store(args.store)
    graph = _graph_iri(args.mentions_graph)
    rows = canned_query_top_events(store, expand(args.entity), graph)
    for event, count, start in rows:
        print(f"{event}\t{count}\t{start.isoformat() if start else '?'}")
    return 0


def _cmd_benchmark(args) -> int:
    store, _ = _load_store_and_stats(args.store)
    annotations, kind = _read_annotations(args.annotations, args.kind)
    view = to_tkg(store, _graph_iri(args.graph))
    benchmark = build_benchmark(annotations, view, kind)
    save_benchmark(benchmark, args.out)
    positives = sum(benchmark.judgements.values())
    print(f"wrote {len(benchmark.judgements)} judgements ({positives} relevant) to {args.out}")
    return 0


def _config_from_file(path: str, seed: int | None) -> TrainingConfig:
    with open(path, "rb") as handle:
        data = tomllib.load(handle)
    table = data.get("train", data)
    base = TrainingConfig()
    return TrainingConfig(
        positive_weight=float(table.get("positive_weight", base.positive_weight)),
        learning_rate=float(table.get("learning_rate", base.learning_rate)),
        epochs=int(table.get("epochs", base.epochs)),
        l2=float(table.get("l2", base.l2)),
        seed=seed if seed is not None else int(table.get("seed", base.seed)),
        balance=bool(table.get("balance", base.balance)),
    )


def _cmd_train(args) -> int:
    store, stats = _load_store_and_stats(args.store)
    benchmark = load_benchmark(args.benchmark)
    view = to_tkg(store, _graph_iri(args.graph))

    if args.config:
        config = _config_from_file(args.config, args.seed)
    else:
        config = TrainingConfig(seed=args.seed if args.seed is not None else 0)

    if args.split != "all":
        train_half, test_half = split_entities(benchmark.entities, config.seed)
        keep = train_half if args.split == "train" else test_half
        benchmark = benchmark.restricted_to(keep)

    candidates = [
        candidate
        for person in benchmark.entities
        for candidate in collect_candidates(view, person)
    ]
    space = build_feature_space(candidates, benchmark.entities, view, stats=stats)
    model = train(benchmark, space, view, stats, config)
    save_model(model, args.out)
    print(f"wrote model with {len(model.weights)} features to {args.out}")
    return 0


def _cmd_timeline(args) -> int:
    store, stats = _load_store_and_stats(args.store)
    model = load_model(args.model)
    view = to_tkg(store, _graph_iri(args.graph))
    timeline = generate_timeline(expand(args.entity), model, view, stats)
    if args.out:
        save_timeline(timeline, args.out)
    else:
        sys.stdout.write(format_timeline(timeline))
    if args.html:
        Path(args.html).write_text(
            render_timeline_html(timeline), encoding="utf-8", newline="\n"
        )
    return 0


def _cmd_baseline_tm(args) -> int:
    store, stats = _load_store_and_stats(args.store)
    view = to_tkg(store, _graph_iri(args.graph))
    timeline = tm_baseline(
        expand(args.entity), view, stats, args.k, args.frequency_threshold
    )
    _emit(format_timeline(timeline), args.out)
    return 0


def _cmd_eval_metrics(args) -> int:
    report = classification_metrics(_read_labels(args.predictions), _read_labels(args.gold))
    for label in sorted(report.per_class):
        m = report.per_class[label]
        print(f"class\t{label}\t{m.precision:.4f}\t{m.recall:.4f}\t{m.f1:.4f}\t{m.support}")
    print(
        f"weighted\t{report.weighted_precision:.4f}"
        f"\t{report.weighted_recall:.4f}\t{report.weighted_f1:.4f}"
    )
    return 0


def _cmd_eval_pcc(args) -> int:
    value = pearson(_read_floats(args.xs), _read_floats(args.ys))
    print(f"{value!r}")
    return 0


def _cmd_eval_coverage(args) -> int:
    store, _ = _load_store_and_stats(args.store)
    annotations, kind = _read_annotations(args.annotations, args.kind)
    graphs = [_graph_iri(g) for g in args.graphs.split(",") if g]
    report = coverage(
        annotations,
        store,
        graphs,
        source_kind=kind,
        reference_graph=_graph_iri(args.reference),
        extended=args.extended,
    )
    _emit(format_coverage_report(report), args.out)
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chronokg",
        description="Build temporal knowledge graphs and biographical timelines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a store from a source manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("fuse", help="populate the fused graph of a store")
    p.add_argument("--store", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trust-order", help="comma-separated source families")
    p.set_defaults(func=_cmd_fuse)

    p = sub.add_parser("stats", help="summary statistics of a store")
    p.add_argument("--store", required=True)
    p.add_argument("--out")
    p.add_argument("--top", type=int, default=5)
    p.set_defaults(func=_cmd_stats)

    q = sub.add_parser("query", help="canned queries").add_subparsers(
        dest="query", required=True
    )
    p = q.add_parser("locations", help="per-graph locations of an event")
    p.add_argument("--store", required=True)
    p.add_argument("--event", required=True)
    p.set_defaults(func=_cmd_query_locations)
    p = q.add_parser("top-events", help="events of an entity by mention count")
    p.add_argument("--store", required=True)
    p.add_argument("--entity", required=True)
    p.add_argument("--mentions-graph", default="wikipedia_en")
    p.set_defaults(func=_cmd_query_top_events)

    p = sub.add_parser("benchmark", help="judge candidates against annotations")
    p.add_argument("--store", required=True)
    p.add_argument("--graph", default="event_kg")
    p.add_argument("--annotations", required=True)
    p.add_argument("--kind", choices=["biography", "abstract"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_benchmark)

    p = sub.add_parser("train", help="fit a relevance model on a benchmark")
    p.add_argument("--store", required=True)
    p.add_argument("--graph", default="event_kg")
    p.add_argument("--benchmark", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--config", help="TOML file with a [train] table")
    p.add_argument("--split", choices=["all", "train", "test"], default="all")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("timeline", help="generate a timeline with a trained model")
    p.add_argument("--store", required=True)
    p.add_argument("--graph", default="event_kg")
    p.add_argument("--model", required=True)
    p.add_argument("--entity", required=True)
    p.add_argument("--out")
    p.add_argument("--html")
    p.set_defaults(func=_cmd_timeline)

    p = sub.add_parser("baseline-tm", help="greedy popularity baseline timeline")
    p.add_argument("--store", required=True)
    p.add_argument("--graph", default="event_kg")
    p.add_argument("--entity", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--frequency-threshold", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_baseline_tm)

    e = sub.add_parser("eval", help="evaluation helpers").add_subparsers(
        dest="eval", required=True
    )
    p = e.add_parser("metrics", help="precision/recall/F1 from label files")
    p.add_argument("--predictions", required=True)
    p.add_argument("--gold", required=True)
    p.set_defaults(func=_cmd_eval_metrics)
    p = e.add_parser("pcc", help="Pearson correlation from value files")
    p.add_argument("--xs", required=True)
    p.add_argument("--ys", required=True)
    p.set_defaults(func=_cmd_eval_pcc)
    p = e.add_parser("coverage", help="benchmark coverage per source graph")
    p.add_argument("--store", required=True)
    p.add_argument("--annotations", required=True)
    p.add_argument("--kind", choices=["biography", "abstract"])
    p.add_argument("--graphs", required=True, help="comma-separated graph names")
    p.add_argument("--reference", default="event_kg")
    p.add_argument("--extended", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_eval_coverage)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - single boundary for exit code 2
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
