"""Fitness and simplicity of a set of mined models."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Sequence

from .exceptions import EmptyResultError, NotASubgraphError
from .graph import DependencyGraph, overlaps
from .miner import LabelledGraphs, MiningResult, TaskModel

UNASSIGNED = "-"


def percent(part: int, whole: int, ndigits: int = 2) -> Decimal:
    """``100 * part / whole`` rounded half-up to ``ndigits``, computed exactly.

    An empty whole gives 0.
    """
    if whole == 0:
        return Decimal(0).scaleb(-ndigits)
    scaled = part * 100 * 10**ndigits
    q, r = divmod(scaled, whole)
    if 2 * r >= whole:
        q += 1
    return Decimal(q).scaleb(-ndigits)


def _fmt_pct(p: Decimal) -> str:
    return f"{p}%"


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    cells = [list(header)] + [list(r) for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = []
    for k, row in enumerate(cells):
        lines.append("  ".join(c.rjust(w) if k else c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FitnessReport:
    model_names: tuple[str, ...]
    counts: dict[str, int]
    unassigned: int
    assignment: dict[str, str | None]

    @property
    def size(self) -> int:
        return len(self.assignment)

    def percentage(self, name: str) -> Decimal:
        return percent(self.counts[name], self.size)

    @property
    def unassigned_percentage(self) -> Decimal:
        return percent(self.unassigned, self.size)

    def to_dict(self) -> dict:
        return {
            "n": self.size,
            "models": [
                {"name": m, "count": self.counts[m], "percent": float(self.percentage(m))}
                for m in self.model_names
            ],
            "unassigned": {"count": self.unassigned, "percent": float(self.unassigned_percentage)},
            "assignment": [{"id": k, "model": v} for k, v in self.assignment.items()],
        }

    def to_text(self) -> str:
        header = ["n"]
        row = [str(self.size)]
        for m in self.model_names:
            header += [m, "%"]
            row += [str(self.counts[m]), _fmt_pct(self.percentage(m))]
        header += [UNASSIGNED, "%"]
        row += [str(self.unassigned), _fmt_pct(self.unassigned_percentage)]
        return _table(header, [row])


def assign_models(models: Sequence[TaskModel], dataset: LabelledGraphs) -> FitnessReport:
    """Assign each execution to the first model, in generation order, that it overlaps."""
    names = tuple(m.name for m in models)
    counts = dict.fromkeys(names, 0)
    assignment: dict[str, str | None] = {}
    for gid, g in dataset:
        # overlaps() raises UniverseMismatchError on foreign sentinels
        hit = next((m.name for m in models if overlaps(g, m.graph)), None)
        assignment[gid] = hit
        if hit is not None:
            counts[hit] += 1
    unassigned = sum(1 for v in assignment.values() if v is None)
    return FitnessReport(names, counts, unassigned, assignment)


def edge_reduction(model_graph: DependencyGraph, aggregate: DependencyGraph, ndigits: int = 2) -> Decimal:
    if not set(model_graph.edges) <= set(aggregate.edges):
        raise NotASubgraphError("model edges are not a subset of the aggregate's")
    return percent(aggregate.n_edges - model_graph.n_edges, aggregate.n_edges, ndigits)


def vertex_reduction(model_graph: DependencyGraph, aggregate: DependencyGraph, ndigits: int = 2) -> Decimal:
    # both counts include the two sentinels
    if not set(model_graph.vertices) <= set(aggregate.vertices):
        raise NotASubgraphError("model vertices are not a subset of the aggregate's")
    return percent(aggregate.n_vertices - model_graph.n_vertices, aggregate.n_vertices, ndigits)


@dataclass(frozen=True)
class SimplicityRow:
    name: str
    iteration: int
    threshold: int
    n_vertices: int
    n_edges: int
    aggregate_vertices: int
    aggregate_edges: int
    vertex_reduction: Decimal
    edge_reduction: Decimal


@dataclass(frozen=True)
class SimplicityReport:
    rows: tuple[SimplicityRow, ...]

    def row(self, name: str) -> SimplicityRow:
        return next(r for r in self.rows if r.name == name)

    def to_dict(self) -> dict:
        return {
            "models": [
                {
                    "name": r.name,
                    "iteration": r.iteration,
                    "threshold": r.threshold,
                    "vertices": r.n_vertices,
                    "edges": r.n_edges,
                    "aggregate_vertices": r.aggregate_vertices,
                    "aggregate_edges": r.aggregate_edges,
                    "vertex_reduction": float(r.vertex_reduction),
                    "edge_reduction": float(r.edge_reduction),
                }
                for r in self.rows
            ]
        }

    def to_text(self) -> str:
        header = ["model", "iter", "theta", "|V|", "|V+|", "V red.", "|E|", "|E+|", "E red."]
        rows = [
            [
                r.name,
                str(r.iteration),
                str(r.threshold),
                str(r.n_vertices),
                str(r.aggregate_vertices),
                _fmt_pct(r.vertex_reduction),
                str(r.n_edges),
                str(r.aggregate_edges),
                _fmt_pct(r.edge_reduction),
            ]
            for r in self.rows
        ]
        return _table(header, rows)


def simplicity(result: MiningResult, ndigits: int = 2) -> SimplicityReport:
    """Size of each model next to the aggregate of its iteration."""
    if not result.models:
        raise EmptyResultError("mining result has no models")
    rows = []
    for m in result.models:
        agg = result.aggregate_of(m)
        rows.append(
            SimplicityRow(
                m.name,
                m.iteration,
                m.threshold,
                m.graph.n_vertices,
                m.graph.n_edges,
                agg.n_vertices,
                agg.n_edges,
                vertex_reduction(m.graph, agg, ndigits),
                edge_reduction(m.graph, agg, ndigits),
            )
        )
    return SimplicityReport(tuple(rows))
