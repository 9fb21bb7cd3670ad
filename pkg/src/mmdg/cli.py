"""Command line entry point: ``mmdg {mine,replay,metrics,baseline,export}``.

Exit codes: 0 success, 1 usage error, 2 input or parse error, 3 internal
invariant violation. Diagnostics go to stderr, data to stdout.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .baseline import baseline_mine
from .conformance import replay, replay_all
from .exceptions import InputError, InvariantViolation
from .graph import DEFAULT_END, DEFAULT_START, GraphUniverse, aggregate
from .ingest import (
    Dataset,
    compute_quartiles,
    parse_criterion,
    parse_csv_log,
    parse_jigsaws,
    parse_plain,
    select_training,
)
from .metrics import assign_models, simplicity
from .miner import MiningResult, mmdg
from .serialize import dumps, from_json, graph_to_dict, to_dot, to_json

log = logging.getLogger("mmdg")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
FORMATS = ("plain", "jigsaws", "csv")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_input_options(p, flag="--input", required=True, formats=FORMATS):
    p.add_argument(flag, dest="input", required=required, type=Path,
                   help="execution log: a file, or a directory of transcriptions for --format jigsaws")
    p.add_argument("--format", choices=formats, default="plain")
    p.add_argument("--meta", type=Path, help="trial metadata table (jigsaws)")
    p.add_argument("--strip-prefix", default="Suturing_", help="prefix removed from trial file names (jigsaws)")
    p.add_argument("--meta-id-col", type=int, default=0)
    p.add_argument("--meta-expertise-col", type=int, default=1)
    p.add_argument("--meta-grs-col", type=int, default=2)
    p.add_argument("--meta-quartile-col", type=int, default=None)
    p.add_argument("--prefer-file-quartiles", action="store_true",
                   help="use the metadata quartile column instead of recomputing quartiles")
    p.add_argument("--select", help="training criterion: expertise=E or quartile=Q1[,Q2]")
    p.add_argument("--start-label", default=DEFAULT_START)
    p.add_argument("--end-label", default=DEFAULT_END)


def _universe(args) -> GraphUniverse:
    return GraphUniverse(args.start_label, args.end_label)


def _load(args) -> Dataset:
    path = args.input
    universe = _universe(args)
    if args.format == "plain":
        return parse_plain(path, universe)
    if args.format == "csv":
        return parse_csv_log(path, universe)
    return parse_jigsaws(
        path,
        args.meta,
        universe,
        strip_prefix=args.strip_prefix or None,
        id_col=args.meta_id_col,
        expertise_col=args.meta_expertise_col,
        grs_col=args.meta_grs_col,
        quartile_col=args.meta_quartile_col,
    )


def _split(args, dataset: Dataset) -> tuple[Dataset, Dataset]:
    if not args.select:
        return dataset, dataset.subset(())
    try:
        key, values = parse_criterion(args.select)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if key == "expertise":
        return select_training(dataset, expertise=values)
    dataset = compute_quartiles(dataset, prefer_existing=args.prefer_file_quartiles)
    return select_training(dataset, quartiles=values)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load_models(path: Path) -> MiningResult:
    with open(path, encoding="utf-8") as fh:
        return from_json(fh.read())


def cmd_mine(args) -> int:
    train, test = _split(args, _load(args))
    if len(train) == 0:
        raise UsageError("no executions selected for training")
    result = mmdg(train.graphs(), train.universe)
    out = args.out
    _write(out / "models.json", to_json(result))
    split = {"train": train.ids, "test": test.ids}
    _write(out / "split.json", dumps(split))
    if args.dot:
        for m, agg in zip(result.models, result.aggregates):
            _write(out / f"model_{m.name}.dot", to_dot(m.graph, name=f"model_{m.name}"))
            _write(out / f"aggregate_{m.iteration}.dot", to_dot(agg, name=f"aggregate_{m.iteration}"))
    for m in result.models:
        print(f"model {m.name}: iteration {m.iteration}, threshold {m.threshold}, "
              f"|V|={m.graph.n_vertices}, |E|={m.graph.n_edges}, covers {len(m.covered_ids)}")
    log.info("wrote %d model(s) to %s", len(result.models), out / "models.json")
    return EXIT_OK


def cmd_replay(args) -> int:
    result = _load_models(args.models)
    models = list(result.models)
    if args.model:
        try:
            models = [result.model(args.model)]
        except KeyError:
            raise UsageError(f"no model named {args.model!r}") from None
    examples = _load(args)
    if examples.universe != result.universe:
        raise InputError("example and models use different sentinels")
    output = []
    for gid, g in examples.graphs():
        best, reports = replay_all(g, models)
        output.append({"example": gid, "best": best, "reports": [r.to_dict() for r in reports]})
        if args.dot:
            for r in reports:
                m = result.model(r.model_name)
                _write(args.dot / f"replay_{gid}_{r.model_name}.dot",
                       to_dot(g, replay=r, name=f"replay_{gid}_{r.model_name}", model_graph=m.graph))
    text = dumps(output)
    if args.out:
        _write(args.out, text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_metrics(args) -> int:
    result = _load_models(args.models)
    train, test = _split(args, _load(args))
    data = {"all": None, "train": train, "test": test}[args.part]
    if data is None:
        data = train.subset(train.records + test.records) if args.select else train
    fitness = assign_models(result.models, data.graphs())
    report = {"fitness": fitness.to_dict()}
    text = "Fitness\n" + fitness.to_text()
    if result.models:
        simp = simplicity(result)
        report["simplicity"] = simp.to_dict()
        text += "\nSimplicity\n" + simp.to_text()
    if args.out:
        _write(args.out / "metrics.json", dumps(report))
        _write(args.out / "metrics.txt", text)
    sys.stdout.write(dumps(report) if args.json else text)
    return EXIT_OK


def cmd_baseline(args) -> int:
    if args.theta < 1:
        raise UsageError("--theta must be >= 1")
    train, _ = _split(args, _load(args))
    model = baseline_mine(train.graphs(), args.theta)
    for w in model.warnings():
        print(f"warning: {w}", file=sys.stderr)
    payload = {
        "theta": model.theta,
        "valid": model.valid,
        "supported": model.supported,
        "supporting_ids": list(model.supporting_ids),
        "graph": graph_to_dict(model.graph),
    }
    _write(args.out / "baseline.json", dumps(payload))
    _write(args.out / "baseline.dot", to_dot(model.graph, name=f"baseline_{model.theta}"))
    print(f"baseline theta={model.theta}: |V|={model.graph.n_vertices}, |E|={model.graph.n_edges}, "
          f"valid={model.valid}, supported by {len(model.supporting_ids)}")
    return EXIT_OK


def cmd_export(args) -> int:
    if args.format == "models" or (args.format is None and args.input.suffix == ".json"):
        result = _load_models(args.input)
        for m, agg in zip(result.models, result.aggregates):
            _write(args.dot / f"model_{m.name}.dot", to_dot(m.graph, name=f"model_{m.name}"))
            _write(args.dot / f"aggregate_{m.iteration}.dot", to_dot(agg, name=f"aggregate_{m.iteration}"))
        return EXIT_OK
    args.format = args.format or "plain"
    train, _ = _split(args, _load(args))
    graph = aggregate([g for _, g in train.graphs()])
    _write(args.dot, to_dot(graph, name="aggregate"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mmdg", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("mine", help="mine task models from an execution log")
    _add_input_options(p)
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.add_argument("--dot", action="store_true", help="also write one DOT file per model and aggregate")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("replay", help="replay executions on mined models")
    p.add_argument("--models", type=Path, required=True)
    _add_input_options(p, flag="--example")
    p.add_argument("--model", help="replay on this model only (default: all)")
    p.add_argument("--out", type=Path, help="also write the JSON report here")
    p.add_argument("--dot", type=Path, help="directory for annotated DOT renderings")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("metrics", help="fitness and simplicity of mined models")
    p.add_argument("--models", type=Path, required=True)
    _add_input_options(p, flag="--data")
    p.add_argument("--part", choices=("all", "train", "test"), default="all",
                   help="with --select, which side of the split to evaluate")
    p.add_argument("--out", type=Path, help="directory for metrics.json and metrics.txt")
    p.add_argument("--json", action="store_true", help="print JSON instead of text tables")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("baseline", help="single frequency-threshold model (unchecked)")
    _add_input_options(p)
    p.add_argument("--theta", type=int, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("export", help="render a log aggregate or a model bundle as DOT")
    _add_input_options(p, formats=FORMATS + ("models",))
    p.set_defaults(format=None)
    p.add_argument("--dot", type=Path, required=True,
                   help="output file (log input) or directory (model bundle input)")
    p.set_defaults(func=cmd_export)
    return parser


def run_cli(argv=None) -> int:
    logging.basicConfig(format="%(name)s: %(levelname)s: %(message)s", stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
        log.setLevel(logging.INFO if args.verbose else logging.WARNING)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run_cli())
