"""Input checks shared by the estimators."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .graph import DependencyGraph, GraphUniverse, from_sequence
from .ingest import Dataset, from_sequences


def check_sequences(X) -> list[tuple[str, ...]]:
    """Normalise ``X`` to a list of activity tuples.

    Accepts a :class:`~mmdg.ingest.Dataset`, an iterable of whitespace
    separated strings, or an iterable of token sequences.
    """
    if isinstance(X, Dataset):
        return [r.sequence for r in X.records]
    if isinstance(X, (str, bytes)) or not isinstance(X, Iterable):
        raise TypeError("X must be an iterable of activity sequences")
    out = []
    for k, item in enumerate(X):
        if isinstance(item, str):
            seq = tuple(item.split())
        elif isinstance(item, Sequence) or hasattr(item, "__iter__"):
            seq = tuple(item)
        else:
            raise TypeError(f"sample {k} is not a sequence of activities")
        if not seq:
            raise ValueError(f"sample {k} is an empty sequence")
        for token in seq:
            if not isinstance(token, str):
                raise TypeError(f"sample {k} contains a non-string activity {token!r}")
        out.append(seq)
    return out


def check_ids(ids, n_samples: int) -> list[str]:
    if ids is None:
        return [str(i) for i in range(n_samples)]
    ids = [str(i) for i in ids]
    if len(ids) != n_samples:
        raise ValueError(f"got {len(ids)} ids for {n_samples} samples")
    if len(set(ids)) != len(ids):
        raise ValueError("ids must be unique")
    return ids


def to_dataset(X, universe: GraphUniverse, ids=None) -> Dataset:
    if isinstance(X, Dataset) and ids is None:
        if X.universe != universe:
            return Dataset(universe, X.records)
        return X
    seqs = check_sequences(X)
    if ids is None and isinstance(X, Dataset):
        ids = X.ids
    return from_sequences(seqs, check_ids(ids, len(seqs)), universe)


def to_graphs(X, universe: GraphUniverse) -> list[DependencyGraph]:
    return [from_sequence(s, universe) for s in check_sequences(X)]
