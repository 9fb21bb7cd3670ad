"""Sequential covering over dependency graphs.

Each iteration aggregates the graphs that are still uncovered, refines the
aggregate by raising an edge-weight threshold as far as it can while the
result stays valid and overlaps at least one example, records that threshold
graph as a model, and drops the examples it overlaps. The loop ends when every
example is covered.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Sequence

from .exceptions import (
    EmptyDatasetError,
    InputError,
    InvalidGraphError,
    InvariantViolation,
    NoEndEdgeError,
    NoLowerWeightError,
    NoStartEdgeError,
    UniverseMismatchError,
)
from .graph import (
    DependencyGraph,
    GraphUniverse,
    aggregate,
    apply_threshold,
    intersect,
    is_valid,
)

LabelledGraphs = Sequence[tuple[str, DependencyGraph]]


@dataclass(frozen=True)
class TaskModel:
    name: str
    iteration: int
    threshold: int
    graph: DependencyGraph
    covered_ids: tuple[str, ...]


@dataclass(frozen=True)
class MiningResult:
    universe: GraphUniverse
    models: tuple[TaskModel, ...] = ()
    aggregates: tuple[DependencyGraph, ...] = ()
    input_ids: tuple[str, ...] = ()

    def __len__(self):
        return len(self.models)

    def model(self, name: str) -> TaskModel:
        for m in self.models:
            if m.name == name:
                return m
        raise KeyError(name)

    def aggregate_of(self, model: TaskModel) -> DependencyGraph:
        return self.aggregates[model.iteration - 1]


def model_name(index: int) -> str:
    """Spreadsheet-style names by generation order: A..Z, AA, AB, ..."""
    letters = string.ascii_uppercase
    name = ""
    index += 1
    while index:
        index, rem = divmod(index - 1, 26)
        name = letters[rem] + name
    return name


def initial_threshold(g_plus: DependencyGraph) -> int:
    """Largest threshold that can keep both an edge leaving start and one entering end."""
    start_w = [g_plus.weight(g_plus.start, v) for v in g_plus.successors(g_plus.start)]
    end_w = [g_plus.weight(v, g_plus.end) for v in g_plus.predecessors(g_plus.end)]
    if not start_w:
        raise NoStartEdgeError("aggregated graph has no edge leaving the start sentinel")
    if not end_w:
        raise NoEndEdgeError("aggregated graph has no edge entering the end sentinel")
    return min(max(start_w), max(end_w))


def next_weight_below(g_plus: DependencyGraph, theta: int) -> int:
    """The largest distinct edge weight of ``g_plus`` strictly below ``theta``."""
    for w in g_plus.distinct_weights():
        if w < theta:
            return w
    raise NoLowerWeightError(f"no edge weight below {theta}")


def covered_by(model_graph: DependencyGraph, dataset: LabelledGraphs) -> list[str]:
    """Ids of the dataset graphs that overlap ``model_graph``, in dataset order."""
    return [gid for gid, g in dataset if is_valid(intersect(g, model_graph))]


def refine(
    g_plus: DependencyGraph,
    theta: int | None,
    dataset: LabelledGraphs,
) -> tuple[DependencyGraph, int, list[str]]:
    """Lower the threshold on ``g_plus`` until the threshold graph is valid and
    overlaps at least one dataset graph.

    ``theta=None`` starts from :func:`initial_threshold`. Returns the threshold
    graph, the threshold that produced it and the covered ids.
    """
    if not dataset:
        raise EmptyDatasetError("refine needs a non-empty dataset")
    if theta is None:
        theta = initial_threshold(g_plus)

    # every step strictly lowers theta through the distinct weights
    budget = len(g_plus.distinct_weights()) + 1
    steps = 0

    def lower(t):
        nonlocal steps
        steps += 1
        if steps > budget:
            raise InvariantViolation("threshold search exceeded the number of distinct weights")
        return next_weight_below(g_plus, t)

    while True:
        model = apply_threshold(g_plus, theta)
        while not is_valid(model):
            theta = lower(theta)
            model = apply_threshold(g_plus, theta)
        covered = covered_by(model, dataset)
        if covered:
            return model, theta, covered
        theta = lower(theta)


def mmdg(dataset: LabelledGraphs, universe: GraphUniverse | None = None) -> MiningResult:
    """Mine an ordered set of task models from ``(id, graph)`` pairs.

    Deterministic for a given input order. An empty dataset yields an empty
    result.
    """
    dataset = list(dataset)
    if universe is None:
        universe = dataset[0][1].universe if dataset else GraphUniverse()
    ids = [gid for gid, _ in dataset]
    if len(set(ids)) != len(ids):
        raise InputError("duplicate execution ids in dataset")
    for gid, g in dataset:
        if g.universe != universe:
            raise UniverseMismatchError(f"graph {gid!r} uses a different universe")
        if not is_valid(g):
            raise InvalidGraphError(f"input graph {gid!r} is not valid")

    models: list[TaskModel] = []
    aggregates: list[DependencyGraph] = []
    remaining = dataset
    while remaining:
        g_plus = aggregate([g for _, g in remaining])
        graph, theta, covered = refine(g_plus, None, remaining)
        iteration = len(models) + 1
        models.append(TaskModel(model_name(len(models)), iteration, theta, graph, tuple(covered)))
        aggregates.append(g_plus)
        done = set(covered)
        remaining = [(gid, g) for gid, g in remaining if gid not in done]
    return MiningResult(universe, tuple(models), tuple(aggregates), tuple(ids))
