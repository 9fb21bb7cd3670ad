"""Single-model frequency baseline.

Thresholds the aggregate of all executions at a user-chosen edge weight, the
way popularity-based simplification in commercial process-mining tools does.
Unlike the miner, nothing guarantees the result is valid or that any
execution actually follows it; both facts are reported instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import EmptyDatasetError
from .graph import DependencyGraph, aggregate, apply_threshold, is_valid, overlaps
from .miner import LabelledGraphs


@dataclass(frozen=True)
class BaselineModel:
    theta: int
    graph: DependencyGraph
    valid: bool
    supporting_ids: tuple[str, ...]

    @property
    def supported(self) -> bool:
        return bool(self.supporting_ids)

    def warnings(self) -> list[str]:
        out = []
        if not self.valid:
            out.append(f"baseline model at theta={self.theta} is not valid: it has no executable complete walk "
                       "or contains dead-end activities")
        if not self.supported:
            out.append(f"baseline model at theta={self.theta} is not supported by any execution")
        return out


def baseline_mine(dataset: LabelledGraphs, theta: int) -> BaselineModel:
    dataset = list(dataset)
    if not dataset:
        raise EmptyDatasetError("baseline needs at least one execution")
    graph = apply_threshold(aggregate([g for _, g in dataset]), theta)
    support = tuple(gid for gid, g in dataset if overlaps(g, graph))
    return BaselineModel(theta, graph, is_valid(graph), support)
