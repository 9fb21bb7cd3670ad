"""Replay of a fresh execution on a mined model.

An execution conforms to a model when the two graphs overlap. Transitions of
the execution that the model does not have are reported as wrong, even when
the execution conforms. For a non-conforming execution the intersection is
inspected for stuck activities: ones reached from start that cannot go on to
end, or ones that lead to end but are never entered from start. The model's
transitions out of (respectively into) those activities that the execution
never took are reported as missing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import DependencyGraph, Edge, intersect, is_valid, reachability
from .miner import TaskModel


@dataclass(frozen=True)
class ReplayReport:
    model_name: str
    conformant: bool
    wrong_transitions: tuple[Edge, ...]
    missing_transitions: tuple[Edge, ...]
    stuck_vertices: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "model": self.model_name,
            "conformant": self.conformant,
            "wrong_transitions": [list(e) for e in self.wrong_transitions],
            "missing_transitions": [list(e) for e in self.missing_transitions],
            "stuck_vertices": list(self.stuck_vertices),
        }


def replay(example: DependencyGraph, model: TaskModel) -> ReplayReport:
    mg = model.graph
    inter = intersect(example, mg)
    conformant = is_valid(inter)
    wrong = sorted(set(example.edges) - set(mg.edges))
    stuck: list[str] = []
    missing: set[Edge] = set()
    if not conformant:
        sets = reachability(inter)
        dead_ends = sets.forward - sets.backward
        unentered = sets.backward - sets.forward
        stuck = sorted(dead_ends | unentered)
        taken = example.edges
        for v in dead_ends:
            missing.update(e for e in mg.out_edges(v) if e not in taken)
        for v in unentered:
            missing.update(e for e in mg.in_edges(v) if e not in taken)
    return ReplayReport(model.name, conformant, tuple(wrong), tuple(sorted(missing)), tuple(stuck))


def replay_all(example: DependencyGraph, models: Sequence[TaskModel]) -> tuple[str | None, list[ReplayReport]]:
    """Replay on every model; the best model is the first conformant one."""
    reports = [replay(example, m) for m in models]
    best = next((r.model_name for r in reports if r.conformant), None)
    return best, reports
