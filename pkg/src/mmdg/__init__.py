"""Mining multiple task models from a handful of expert executions.

Executions are turned into weighted dependency graphs; a sequential covering
loop then yields one valid, example-supported model per way of doing the task.
"""

from .baseline import BaselineModel, baseline_mine
from .conformance import ReplayReport, replay, replay_all
from .estimator import FrequencyThresholdMiner, MMDGMiner
from .graph import (
    DependencyGraph,
    GraphUniverse,
    ReachabilitySets,
    aggregate,
    apply_threshold,
    from_sequence,
    has_complete_walk,
    intersect,
    is_valid,
    overlaps,
    reachability,
)
from .ingest import (
    Dataset,
    ExecutionRecord,
    TrialMeta,
    compute_quartiles,
    from_sequences,
    parse_csv_log,
    parse_jigsaws,
    parse_plain,
    select_training,
)
from .metrics import FitnessReport, SimplicityReport, assign_models, edge_reduction, simplicity
from .miner import MiningResult, TaskModel, initial_threshold, mmdg, next_weight_below, refine
from .serialize import from_json, to_dot, to_json

__version__ = "0.1.0"
