"""Readers for execution logs, trial metadata and training/test splits.

Three input formats are supported:

* plain text, one execution per line, activities separated by whitespace;
* JIGSAWS-style transcriptions, one file per trial with
  ``<start_frame> <end_frame> <label>`` lines, plus a metadata table;
* CSV event logs with ``case_id`` and ``activity`` columns and an optional
  ``timestamp`` column.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from datetime import datetime
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .exceptions import (
    DuplicateTrialIdError,
    EmptyFileError,
    EmptySequenceError,
    MalformedLineError,
    MissingColumnError,
    MissingMetadataError,
    MissingScoreError,
)
from .graph import DependencyGraph, GraphUniverse, from_sequence

EXPERTISE_LEVELS = ("E", "I", "N")
QUARTILES = ("Q1", "Q2", "Q3", "Q4")


@dataclass(frozen=True)
class TrialMeta:
    expertise: str | None = None
    grs: int | None = None
    quartile: str | None = None


@dataclass(frozen=True)
class ExecutionRecord:
    id: str
    sequence: tuple[str, ...]
    meta: TrialMeta | None = None


@dataclass(frozen=True)
class Dataset:
    universe: GraphUniverse = field(default_factory=GraphUniverse)
    records: tuple[ExecutionRecord, ...] = ()

    def __post_init__(self):
        seen = set()
        for rec in self.records:
            if rec.id in seen:
                raise DuplicateTrialIdError(f"duplicate execution id {rec.id!r}")
            seen.add(rec.id)
            if not rec.sequence:
                raise EmptySequenceError(f"execution {rec.id!r} has no activities")
            for token in rec.sequence:
                self.universe.check_activity(token)

    def __len__(self):
        return len(self.records)

    def __iter__(self) -> Iterator[ExecutionRecord]:
        return iter(self.records)

    @property
    def ids(self) -> list[str]:
        return [r.id for r in self.records]

    def graphs(self) -> list[tuple[str, DependencyGraph]]:
        return [(r.id, from_sequence(r.sequence, self.universe)) for r in self.records]

    def subset(self, records: Iterable[ExecutionRecord]) -> Dataset:
        return Dataset(self.universe, tuple(records))


def from_sequences(
    sequences: Iterable[Sequence[str]],
    ids: Sequence[str] | None = None,
    universe: GraphUniverse | None = None,
) -> Dataset:
    sequences = [tuple(s) for s in sequences]
    if ids is None:
        ids = [f"L{i}" for i in range(1, len(sequences) + 1)]
    if len(ids) != len(sequences):
        raise ValueError("ids and sequences differ in length")
    records = tuple(ExecutionRecord(str(i), s) for i, s in zip(ids, sequences))
    return Dataset(universe or GraphUniverse(), records)


def _read_text(path) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def parse_plain(path, universe: GraphUniverse | None = None) -> Dataset:
    """One execution per line. Blank lines and ``#`` comments are skipped;
    ids are ``L<line number>``."""
    records = []
    for lineno, line in enumerate(_read_text(path).splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        records.append(ExecutionRecord(f"L{lineno}", tuple(stripped.split())))
    if not records:
        raise EmptyFileError(f"{path}: no executions found")
    return Dataset(universe or GraphUniverse(), tuple(records))


def write_plain(dataset: Dataset) -> str:
    return "".join(" ".join(r.sequence) + "\n" for r in dataset.records)


def read_transcription(path) -> tuple[str, ...]:
    """Gesture labels of one transcription file, frame columns dropped after
    checking that they are integers with ``start <= end`` and non-decreasing starts."""
    labels = []
    last_start = None
    for lineno, line in enumerate(_read_text(path).splitlines(), start=1):
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 3:
            raise MalformedLineError(path, lineno, f"expected 3 columns, got {len(parts)}")
        try:
            start, end = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(path, lineno, "frame numbers must be integers") from None
        if start > end:
            raise MalformedLineError(path, lineno, f"start frame {start} after end frame {end}")
        if last_start is not None and start < last_start:
            raise MalformedLineError(path, lineno, "transcription is not in chronological order")
        last_start = start
        labels.append(parts[2])
    return tuple(labels)


def _trial_id(stem: str, strip_prefix: str | None) -> str:
    if strip_prefix and stem.startswith(strip_prefix):
        return stem[len(strip_prefix):]
    return stem


def read_meta(
    path,
    id_col: int = 0,
    expertise_col: int = 1,
    grs_col: int = 2,
    quartile_col: int | None = None,
    strip_prefix: str | None = "Suturing_",
) -> dict[str, TrialMeta]:
    """Trial metadata table, whitespace separated, one trial per line."""
    meta: dict[str, TrialMeta] = {}
    needed = max(c for c in (id_col, expertise_col, grs_col, quartile_col) if c is not None)
    for lineno, line in enumerate(_read_text(path).splitlines(), start=1):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if len(parts) <= needed:
            raise MalformedLineError(path, lineno, f"expected at least {needed + 1} columns")
        tid = _trial_id(parts[id_col], strip_prefix)
        try:
            grs = int(parts[grs_col])
        except ValueError:
            raise MalformedLineError(path, lineno, f"GRS {parts[grs_col]!r} is not an integer") from None
        expertise = parts[expertise_col]
        if expertise not in EXPERTISE_LEVELS:
            raise MalformedLineError(path, lineno, f"unknown expertise tag {expertise!r}")
        quartile = None
        if quartile_col is not None:
            quartile = parts[quartile_col]
            if quartile not in QUARTILES:
                raise MalformedLineError(path, lineno, f"unknown quartile {quartile!r}")
        if tid in meta:
            raise DuplicateTrialIdError(f"{path}:{lineno}: trial {tid!r} listed twice")
        meta[tid] = TrialMeta(expertise, grs, quartile)
    return meta


def parse_jigsaws(
    directory,
    meta_path=None,
    universe: GraphUniverse | None = None,
    strip_prefix: str | None = "Suturing_",
    suffix: str = ".txt",
    **meta_columns,
) -> Dataset:
    """All transcription files of ``directory`` (path-sorted), joined with the
    metadata table by trial id. Trials absent from the table get no metadata."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"{directory}: not a directory")
    meta = read_meta(meta_path, strip_prefix=strip_prefix, **meta_columns) if meta_path else {}
    records = []
    seen = set()
    for path in sorted(directory.glob(f"*{suffix}")):
        tid = _trial_id(path.stem, strip_prefix)
        if tid in seen:
            raise DuplicateTrialIdError(f"trial {tid!r} appears in more than one file")
        seen.add(tid)
        labels = read_transcription(path)
        if not labels:
            raise EmptyFileError(f"{path}: no gestures")
        records.append(ExecutionRecord(tid, labels, meta.get(tid)))
    if not records:
        raise EmptyFileError(f"{directory}: no transcription files")
    return Dataset(universe or GraphUniverse(), tuple(records))


def _timestamp_key(values: list[str], path):
    try:
        return [float(v) for v in values]
    except ValueError:
        pass
    try:
        return [datetime.fromisoformat(v) for v in values]
    except ValueError:
        raise MalformedLineError(path, 0, "timestamps are neither numeric nor ISO 8601") from None


def parse_csv_log(
    path,
    universe: GraphUniverse | None = None,
    case_column: str = "case_id",
    activity_column: str = "activity",
    timestamp_column: str = "timestamp",
) -> Dataset:
    """Event log in CSV. One execution per case, cases in first-appearance
    order. With a timestamp column each case is stably sorted by time."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        columns = reader.fieldnames or []
        for col in (case_column, activity_column):
            if col not in columns:
                raise MissingColumnError(f"{path}: missing column {col!r}")
        has_time = timestamp_column in columns
        cases: dict[str, list[tuple[str, str]]] = {}
        for row in reader:
            case = (row[case_column] or "").strip()
            activity = (row[activity_column] or "").strip()
            if not case or not activity:
                raise MalformedLineError(path, reader.line_num, "empty case id or activity")
            stamp = (row[timestamp_column] or "").strip() if has_time else ""
            cases.setdefault(case, []).append((activity, stamp))
    if not cases:
        raise EmptyFileError(f"{path}: no events")
    records = []
    for case, events in cases.items():
        if has_time:
            keys = _timestamp_key([stamp for _, stamp in events], path)
            order = sorted(range(len(events)), key=keys.__getitem__)
            events = [events[i] for i in order]
        records.append(ExecutionRecord(case, tuple(a for a, _ in events)))
    return Dataset(universe or GraphUniverse(), tuple(records))


def compute_quartiles(dataset: Dataset, prefer_existing: bool = False) -> Dataset:
    """Annotate every record with a GRS quartile, Q1 holding the best scores.

    Records are ranked by descending score, ties by id. Rank ``r`` (1-based)
    of ``n`` falls in the first quartile ``Qk`` with ``r <= ceil(k*n/4)``.
    """
    records = dataset.records
    for r in records:
        if r.meta is None or r.meta.grs is None:
            raise MissingScoreError(f"execution {r.id!r} has no GRS score")
    if prefer_existing and all(r.meta.quartile for r in records):
        return dataset
    n = len(records)
    bounds = [math.ceil(k * n / 4) for k in range(1, 5)]
    ranked = sorted(records, key=lambda r: (-r.meta.grs, r.id))
    quartile_of = {}
    for rank, rec in enumerate(ranked, start=1):
        quartile_of[rec.id] = QUARTILES[next(k for k, b in enumerate(bounds) if rank <= b)]
    return dataset.subset(replace(r, meta=replace(r.meta, quartile=quartile_of[r.id])) for r in records)


def parse_criterion(text: str) -> tuple[str, frozenset[str]]:
    """``expertise=E`` or ``quartile=Q1,Q2``."""
    key, sep, value = text.partition("=")
    key = key.strip()
    values = frozenset(v.strip() for v in value.split(",") if v.strip())
    if not sep or key not in ("expertise", "quartile") or not values:
        raise ValueError(f"bad selection criterion {text!r}; use expertise=E or quartile=Q1[,Q2]")
    allowed = EXPERTISE_LEVELS if key == "expertise" else QUARTILES
    bad = values - set(allowed)
    if bad:
        raise ValueError(f"unknown {key} value(s): {', '.join(sorted(bad))}")
    return key, values


def select_training(
    dataset: Dataset,
    expertise: Iterable[str] | str | None = None,
    quartiles: Iterable[str] | str | None = None,
) -> tuple[Dataset, Dataset]:
    """Split into (train, test). Train holds the records matching the criterion,
    test everything else; dataset order is kept in both parts."""
    if (expertise is None) == (quartiles is None):
        raise ValueError("give exactly one of expertise or quartiles")
    attr = "expertise" if expertise is not None else "quartile"
    wanted = expertise if expertise is not None else quartiles
    wanted = {wanted} if isinstance(wanted, str) else set(wanted)
    train, test = [], []
    for r in dataset.records:
        value = getattr(r.meta, attr, None) if r.meta is not None else None
        if value is None:
            raise MissingMetadataError(f"execution {r.id!r} has no {attr}")
        (train if value in wanted else test).append(r)
    return dataset.subset(train), dataset.subset(test)
