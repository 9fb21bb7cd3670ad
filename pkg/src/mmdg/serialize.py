"""Canonical JSON model bundles and Graphviz DOT rendering.

Both writers are deterministic: keys are emitted in a fixed order, vertices
and edges in lexicographic order, so equal values give byte-identical text.
"""

from __future__ import annotations

import json
from typing import Any

from .conformance import ReplayReport
from .exceptions import InputError, ParseError, SchemaVersionMismatchError
from .graph import DependencyGraph, GraphUniverse, apply_threshold, is_valid
from .miner import MiningResult, TaskModel

FORMAT_VERSION = 1


def graph_to_dict(g: DependencyGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"src": s, "dst": d, "weight": w} for (s, d), w in g.edges.items()],
    }


def _int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


def _list(value, what) -> list:
    if not isinstance(value, list):
        raise ParseError(f"{what} must be a list")
    return value


def _str(value, what) -> str:
    if not isinstance(value, str):
        raise ParseError(f"{what} must be a string, got {value!r}")
    return value


def graph_from_dict(data: Any, universe: GraphUniverse) -> DependencyGraph:
    if not isinstance(data, dict):
        raise ParseError("graph must be an object")
    vertices = [_str(v, "vertex") for v in _list(data.get("vertices"), "vertices")]
    edges = {}
    for item in _list(data.get("edges"), "edges"):
        if not isinstance(item, dict):
            raise ParseError("edge must be an object")
        key = (_str(item.get("src"), "edge src"), _str(item.get("dst"), "edge dst"))
        if key in edges:
            raise ParseError(f"duplicate edge {key}")
        weight = _int(item.get("weight"), "edge weight")
        if weight < 1:
            raise ParseError(f"edge {key} has weight {weight}; weights must be >= 1")
        edges[key] = weight
    try:
        g = DependencyGraph(universe, edges, vertices)
    except InputError as exc:
        raise ParseError(str(exc)) from exc
    missing = set(g.vertices) - set(vertices)
    if missing:
        raise ParseError(f"edge endpoints or sentinels missing from vertex list: {sorted(missing)}")
    return g


def result_to_dict(result: MiningResult) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "start_label": result.universe.start_label,
        "end_label": result.universe.end_label,
        "input_ids": list(result.input_ids),
        "models": [
            {
                "name": m.name,
                "iteration": m.iteration,
                "threshold": m.threshold,
                "graph": graph_to_dict(m.graph),
                "covered": sorted(m.covered_ids),
            }
            for m in result.models
        ],
        "aggregates": [graph_to_dict(g) for g in result.aggregates],
    }


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def to_json(result: MiningResult) -> str:
    return dumps(result_to_dict(result))


def result_from_dict(data: Any) -> MiningResult:
    if not isinstance(data, dict):
        raise ParseError("model bundle must be a JSON object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise SchemaVersionMismatchError(f"unsupported format_version {version!r}; expected {FORMAT_VERSION}")
    try:
        universe = GraphUniverse(_str(data.get("start_label"), "start_label"), _str(data.get("end_label"), "end_label"))
    except InputError as exc:
        raise ParseError(str(exc)) from exc
    aggregates = [graph_from_dict(g, universe) for g in _list(data.get("aggregates"), "aggregates")]
    raw_models = _list(data.get("models"), "models")
    if len(raw_models) != len(aggregates):
        raise ParseError("models and aggregates differ in length")

    covered_sorted = []
    for item in raw_models:
        if not isinstance(item, dict):
            raise ParseError("model must be an object")
        covered_sorted.append([_str(c, "covered id") for c in _list(item.get("covered"), "covered")])
    if "input_ids" in data:
        input_ids = [_str(i, "input id") for i in _list(data["input_ids"], "input_ids")]
    else:
        input_ids = [c for cov in covered_sorted for c in cov]
    position = {gid: k for k, gid in enumerate(input_ids)}
    if len(position) != len(input_ids):
        raise ParseError("duplicate input ids")
    all_covered = [c for cov in covered_sorted for c in cov]
    if sorted(all_covered) != sorted(input_ids):
        raise ParseError("covered ids do not partition the input ids")

    models = []
    for k, (item, cov) in enumerate(zip(raw_models, covered_sorted), start=1):
        name = _str(item.get("name"), "model name")
        iteration = _int(item.get("iteration"), "iteration")
        threshold = _int(item.get("threshold"), "threshold")
        if iteration != k:
            raise ParseError(f"model {name!r} has iteration {iteration}, expected {k}")
        if threshold < 1:
            raise ParseError(f"model {name!r} has threshold {threshold}")
        graph = graph_from_dict(item.get("graph"), universe)
        if not is_valid(graph):
            raise ParseError(f"model {name!r} is not a valid graph")
        if graph != apply_threshold(aggregates[k - 1], threshold):
            raise ParseError(f"model {name!r} does not match its aggregate at threshold {threshold}")
        if not cov:
            raise ParseError(f"model {name!r} covers no executions")
        models.append(TaskModel(name, iteration, threshold, graph, tuple(sorted(cov, key=position.__getitem__))))
    return MiningResult(universe, tuple(models), tuple(aggregates), tuple(input_ids))


def from_json(text: str) -> MiningResult:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return result_from_dict(data)


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(
    graph: DependencyGraph,
    replay: ReplayReport | None = None,
    name: str = "G",
    model_graph: DependencyGraph | None = None,
) -> str:
    """Render ``graph`` as a DOT digraph.

    Sentinels are drawn as double circles labelled ``S`` and ``F``. With a
    replay report, wrong transitions are coloured red and missing ones are
    added as blue dashed edges (labelled with their model weight when
    ``model_graph`` is given).
    """
    wrong = set(replay.wrong_transitions) if replay else set()
    missing = set(replay.missing_transitions) if replay else set()
    vertices = set(graph.vertices)
    for s, d in missing:
        vertices.update((s, d))

    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for v in sorted(vertices):
        if v == graph.start:
            lines.append(f'  {_quote(v)} [label="S", shape=doublecircle];')
        elif v == graph.end:
            lines.append(f'  {_quote(v)} [label="F", shape=doublecircle];')
        else:
            lines.append(f"  {_quote(v)} [label={_quote(v)}];")
    edges = dict(graph.edges)
    for e in missing:
        edges.setdefault(e, model_graph.weight(*e) if model_graph is not None else None)
    for (s, d), w in sorted(edges.items()):
        attrs = [f'label="{w}"' if w else 'label=""']
        if (s, d) in wrong:
            attrs.append("color=red")
        if (s, d) in missing:
            attrs += ["color=blue", "style=dashed"]
        lines.append(f"  {_quote(s)} -> {_quote(d)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
