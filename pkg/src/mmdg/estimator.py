"""scikit-learn style wrappers around the miner and the frequency baseline."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .baseline import baseline_mine
from .conformance import replay_all
from .graph import DEFAULT_END, DEFAULT_START, GraphUniverse, overlaps
from .metrics import assign_models, simplicity
from .miner import mmdg
from .validation import to_dataset, to_graphs


class MMDGMiner(BaseEstimator):
    """Learns one model per way of performing the task.

    ``X`` is a list of executions, each a sequence of activity labels (or a
    whitespace separated string), or a :class:`~mmdg.ingest.Dataset`.

    Attributes set by ``fit``: ``result_`` (the full
    :class:`~mmdg.miner.MiningResult`), ``models_``, ``model_names_``,
    ``universe_`` and ``ids_``.

    >>> est = MMDGMiner().fit(["a b c", "a b c", "a x c"])
    >>> est.model_names_
    ['A', 'B']
    >>> est.predict(["a b c", "a y c"]).tolist()
    ['A', None]
    """

    def __init__(self, start_label: str = DEFAULT_START, end_label: str = DEFAULT_END):
        self.start_label = start_label
        self.end_label = end_label

    def fit(self, X, y=None, ids=None):
        universe = GraphUniverse(self.start_label, self.end_label)
        dataset = to_dataset(X, universe, ids)
        self.result_ = mmdg(dataset.graphs(), universe)
        self.universe_ = universe
        self.models_ = list(self.result_.models)
        self.model_names_ = [m.name for m in self.models_]
        self.ids_ = list(self.result_.input_ids)
        return self

    def _graphs(self, X):
        check_is_fitted(self, "result_")
        return to_graphs(X, self.universe_)

    def transform(self, X):
        """Overlap indicator matrix of shape ``(n_samples, n_models)``."""
        graphs = self._graphs(X)
        out = np.zeros((len(graphs), len(self.models_)), dtype=int)
        for i, g in enumerate(graphs):
            for j, m in enumerate(self.models_):
                out[i, j] = overlaps(g, m.graph)
        return out

    def predict(self, X):
        """Name of the first model (generation order) each execution overlaps, or ``None``."""
        graphs = self._graphs(X)
        report = assign_models(self.models_, [(str(i), g) for i, g in enumerate(graphs)])
        return np.array([report.assignment[str(i)] for i in range(len(graphs))], dtype=object)

    def score(self, X, y=None):
        """Fraction of executions that overlap some model."""
        pred = self.predict(X)
        if len(pred) == 0:
            return 0.0
        return float(np.mean([p is not None for p in pred]))

    def fitness(self, X, ids=None):
        check_is_fitted(self, "result_")
        return assign_models(self.models_, to_dataset(X, self.universe_, ids).graphs())

    def simplicity(self):
        check_is_fitted(self, "result_")
        return simplicity(self.result_)

    def replay(self, X):
        """Per execution: ``(best model name or None, list of ReplayReport)``."""
        return [replay_all(g, self.models_) for g in self._graphs(X)]


class FrequencyThresholdMiner(BaseEstimator):
    """Single model obtained by thresholding the aggregate of all executions.

    The fitted ``model_`` is not checked for validity or example support;
    inspect ``valid_`` and ``supported_`` before relying on it.
    """

    def __init__(self, theta: int = 1, start_label: str = DEFAULT_START, end_label: str = DEFAULT_END):
        self.theta = theta
        self.start_label = start_label
        self.end_label = end_label

    def fit(self, X, y=None, ids=None):
        universe = GraphUniverse(self.start_label, self.end_label)
        dataset = to_dataset(X, universe, ids)
        self.universe_ = universe
        self.model_ = baseline_mine(dataset.graphs(), self.theta)
        self.graph_ = self.model_.graph
        self.valid_ = self.model_.valid
        self.supported_ = self.model_.supported
        return self

    def predict(self, X):
        """Boolean array, True where the execution overlaps the baseline model."""
        check_is_fitted(self, "model_")
        return np.array([overlaps(g, self.graph_) for g in to_graphs(X, self.universe_)], dtype=bool)

    def score(self, X, y=None):
        pred = self.predict(X)
        return float(pred.mean()) if len(pred) else 0.0
