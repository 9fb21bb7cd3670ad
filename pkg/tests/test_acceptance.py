"""Exit criteria. Each test carries an ``acceptance`` marker and the run ends
with one pass/fail line per criterion.

Criteria 2 and 3 need external data and are skipped unless these variables
point at it:

    MMDG_JIGSAWS_TRANSCRIPTIONS   directory of Suturing_*.txt gesture files
    MMDG_JIGSAWS_META             meta_file_Suturing.txt
    MMDG_JIGSAWS_QUARTILE_COL     optional: metadata column holding quartiles
    MMDG_BROWNIE_LOG              plain (one execution per line) or .csv log
"""

import itertools
import os
import random
import time
from decimal import Decimal
from pathlib import Path

import pytest

from conftest import MICROWAVE, STOVE
from mmdg import (
    DependencyGraph,
    GraphUniverse,
    aggregate,
    apply_threshold,
    assign_models,
    compute_quartiles,
    from_sequence,
    from_sequences,
    initial_threshold,
    intersect,
    is_valid,
    mmdg,
    overlaps,
    parse_csv_log,
    parse_jigsaws,
    parse_plain,
    replay,
    select_training,
    simplicity,
)
from mmdg.cli import run_cli
from mmdg.miner import TaskModel
from oracles import nx_valid, random_log, seq_edges, simple_complete_walks, sum_edges


def criterion(number, title):
    return pytest.mark.acceptance(number, title)


# 1. carrot soup

C1 = criterion(1, "carrot soup models, exact structure, < 1 s")


@C1
def test_carrot_pair_gives_single_aggregate_model():
    t0 = time.perf_counter()
    dataset = from_sequences([MICROWAVE, STOVE])
    result = mmdg(dataset.graphs())
    elapsed = time.perf_counter() - t0
    assert len(result.models) == 1
    (model,) = result.models
    agg = aggregate([g for _, g in dataset.graphs()])
    assert model.graph == agg
    assert dict(agg.edges) == sum_edges([MICROWAVE, STOVE])
    assert initial_threshold(agg) == 2 and not is_valid(apply_threshold(agg, 2))
    assert model.threshold == 1
    assert model.covered_ids == ("L1", "L2")
    assert elapsed < 1.0


@C1
def test_carrot_three_to_one():
    t0 = time.perf_counter()
    dataset = from_sequences([MICROWAVE] * 3 + [STOVE])
    result = mmdg(dataset.graphs())
    elapsed = time.perf_counter() - t0
    assert [m.name for m in result.models] == ["A", "B"]
    a, b = result.models
    assert a.threshold == 3 and a.covered_ids == ("L1", "L2", "L3")
    agg = sum_edges([MICROWAVE] * 3 + [STOVE])
    assert dict(a.graph.edges) == {e: agg[e] for e in seq_edges(MICROWAVE)}
    assert a.graph.weight("S", "A") == 4 and a.graph.weight("C", "D") == 3
    assert b.covered_ids == ("L4",)
    assert dict(b.graph.edges) == seq_edges(STOVE)
    assert elapsed < 1.0


# 2. surgical suturing reproduction

C2 = criterion(2, "JIGSAWS suturing reproduction")

JIGSAWS = os.environ.get("MMDG_JIGSAWS_TRANSCRIPTIONS")
JIGSAWS_META = os.environ.get("MMDG_JIGSAWS_META")

# (criterion, training counts, test size, test counts A/B/C/unassigned, test percentages)
EXPERIMENTS = [
    ("expertise=E", [4, 2, 4], 29, [2, 0, 16, 11], ["6.90", "0.00", "55.17", "37.93"]),
    ("quartile=Q1", [5, 2, 2], 30, [11, 6, 1, 12], ["36.67", "20.00", "3.33", "40.00"]),
    ("quartile=Q1,Q2", [7, 6, 3], 23, [9, 2, 5, 7], ["39.13", "8.70", "21.74", "30.43"]),
]


@pytest.fixture(scope="module")
def suturing():
    if not (JIGSAWS and JIGSAWS_META):
        pytest.skip("JIGSAWS suturing data not available")
    qcol = os.environ.get("MMDG_JIGSAWS_QUARTILE_COL")
    return parse_jigsaws(JIGSAWS, JIGSAWS_META, quartile_col=int(qcol) if qcol else None), qcol is not None


@C2
@pytest.mark.parametrize("select, train_counts, test_n, test_counts, test_pct", EXPERIMENTS,
                         ids=["experts", "q1", "q1q2"])
def test_suturing(suturing, select, train_counts, test_n, test_counts, test_pct):
    dataset, file_quartiles = suturing
    t0 = time.perf_counter()
    key, value = select.split("=")
    if key == "expertise":
        train, test = select_training(dataset, expertise=value)
    else:
        dataset = compute_quartiles(dataset, prefer_existing=file_quartiles)
        train, test = select_training(dataset, quartiles=value.split(","))
    result = mmdg(train.graphs(), train.universe)
    train_fit = assign_models(result.models, train.graphs())
    test_fit = assign_models(result.models, test.graphs())
    elapsed = time.perf_counter() - t0

    assert len(result.models) == 3
    assert [train_fit.counts[m.name] for m in result.models] == train_counts
    assert train_fit.unassigned == 0
    assert test_fit.size == test_n
    assert [test_fit.counts[m.name] for m in result.models] + [test_fit.unassigned] == test_counts
    pcts = [test_fit.percentage(m.name) for m in result.models] + [test_fit.unassigned_percentage]
    assert pcts == [Decimal(p) for p in test_pct]
    if key == "expertise":
        reduction = simplicity(result).row("A").edge_reduction
        assert abs(reduction - Decimal("47.62")) <= Decimal("0.01")
    assert elapsed < 10.0


# 3. brownie recipe reproduction

C3 = criterion(3, "brownie recipe reproduction")

BROWNIE = os.environ.get("MMDG_BROWNIE_LOG")


@C3
def test_brownie():
    if not BROWNIE:
        pytest.skip("brownie log not available")
    path = Path(BROWNIE)
    dataset = parse_csv_log(path) if path.suffix == ".csv" else parse_plain(path)
    assert len(dataset) == 16
    result = mmdg(dataset.graphs(), dataset.universe)
    assert len(result.models) == 4
    assert [m.threshold for m in result.models[:3]] == [7, 4, 2]
    fit = assign_models(result.models, dataset.graphs())
    assert [fit.counts[m.name] for m in result.models] == [1, 3, 3, 9]
    report = simplicity(result, ndigits=0)
    assert [r.edge_reduction for r in report.rows[:3]] == [Decimal(70), Decimal(67), Decimal(45)]
    assert all(r.vertex_reduction == 0 for r in report.rows)


# 4. properties over random logs

C4 = criterion(4, "property suite over >= 1000 random logs")

N_LOGS = 1000


def _check_walks(g: DependencyGraph):
    walks = simple_complete_walks(g.edges, g.start, g.end)
    if is_valid(g):
        assert walks
    assert is_valid(g) == nx_valid(g.edges, g.start, g.end)


@C4
def test_random_logs():
    rng = random.Random(20240501)
    small_graphs = 0
    for _ in range(N_LOGS):
        seqs = random_log(rng, max_acts=8, max_seqs=10, max_len=15)
        dataset = from_sequences(seqs)
        labelled = dataset.graphs()
        result = mmdg(labelled)

        covered = [i for m in result.models for i in m.covered_ids]
        assert sorted(covered) == sorted(dataset.ids) and len(covered) == len(set(covered))

        remaining = list(range(len(seqs)))
        for m, agg in zip(result.models, result.aggregates):
            assert is_valid(m.graph)
            assert dict(agg.edges) == sum_edges([seqs[i] for i in remaining])
            assert m.graph == apply_threshold(agg, m.threshold)
            ids = set(m.covered_ids)
            remaining = [i for i in remaining if dataset.ids[i] not in ids]

            weights = agg.distinct_weights()
            for lo, hi in zip(weights[1:], weights):
                assert set(apply_threshold(agg, hi).edges) <= set(apply_threshold(agg, lo).edges)

            for _, g in labelled:
                inter = intersect(m.graph, g)
                expected = {e: min(w, g.weight(*e)) for e, w in m.graph.edges.items() if e in g.edges}
                assert dict(inter.edges) == expected
                assert set(inter.vertices) == set(m.graph.vertices) & set(g.vertices)

            for theta in weights:
                g = apply_threshold(agg, theta)
                if g.n_vertices <= 6:
                    _check_walks(g)
                    small_graphs += 1

        for _, g in labelled:
            if g.n_vertices <= 6:
                _check_walks(g)
                small_graphs += 1

        fit = assign_models(result.models, labelled)
        assert fit.unassigned == 0
        for m in result.models:
            assert sorted(k for k, v in fit.assignment.items() if v == m.name) == sorted(m.covered_ids)
    assert small_graphs >= 1000


@C4
def test_exhaustive_small_graphs():
    # every edge subset over two activities: validity against walk enumeration
    u = GraphUniverse()
    nodes = [u.start_label, "x", "y", u.end_label]
    candidates = [(s, d) for s, d in itertools.product(nodes, nodes)
                  if d != u.start_label and s != u.end_label]
    for k in range(len(candidates) + 1):
        for subset in itertools.combinations(candidates, k):
            _check_walks(DependencyGraph(u, {e: 1 for e in subset}))


# 5. determinism of the command line pipeline

C5 = criterion(5, "byte-identical artifacts across runs")


def _pipeline(log: Path, out: Path):
    assert run_cli(["mine", "--input", str(log), "--out", str(out), "--dot"]) == 0
    assert run_cli(["metrics", "--models", str(out / "models.json"), "--data", str(log), "--out", str(out)]) == 0
    assert run_cli(["export", "--input", str(out / "models.json"), "--dot", str(out / "export")]) == 0
    assert run_cli(["export", "--input", str(log), "--dot", str(out / "aggregate.dot")]) == 0
    return {p.relative_to(out): p.read_bytes() for p in sorted(out.rglob("*")) if p.is_file()}


@C5
def test_determinism(tmp_path, capsys):
    rng = random.Random(5)
    lines = [" ".join(MICROWAVE)] * 3 + [" ".join(STOVE)]
    lines += [" ".join(s) for s in random_log(rng, max_seqs=10)]
    log = tmp_path / "log.txt"
    log.write_text("\n".join(lines) + "\n")
    first = _pipeline(log, tmp_path / "run1")
    out1 = capsys.readouterr().out
    second = _pipeline(log, tmp_path / "run2")
    out2 = capsys.readouterr().out
    assert first == second
    assert out1 == out2
    suffixes = {p.suffix for p in first}
    assert {".json", ".dot", ".txt"} <= suffixes


# 6. replay

C6 = criterion(6, "replay agrees with overlap on 500 pairs; noise edge")


@C6
def test_replay_random_pairs():
    rng = random.Random(6)
    conformant = 0
    for _ in range(500):
        seqs = random_log(rng, max_acts=6, max_seqs=6, max_len=10)
        model = rng.choice(mmdg(from_sequences(seqs).graphs()).models)
        if rng.random() < 0.5:
            # a model walk with a few edits
            example_seq = list(rng.choice(seqs))
            if rng.random() < 0.5:
                example_seq.insert(rng.randint(0, len(example_seq)), rng.choice(["a0", "a1", "b"]))
        else:
            example_seq = [rng.choice(["a0", "a1", "a2", "a3", "b"]) for _ in range(rng.randint(1, 10))]
        example = from_sequence(example_seq)
        rep = replay(example, model)
        oracle = nx_valid(set(seq_edges(example_seq)) & set(model.graph.edges))
        assert rep.conformant == oracle == overlaps(example, model.graph)
        assert set(rep.wrong_transitions) == set(seq_edges(example_seq)) - set(model.graph.edges)
        conformant += rep.conformant
    assert 0 < conformant < 500


@C6
def test_noise_edge():
    model = TaskModel("A", 1, 1, from_sequence(["a", "b", "c", "d"]), ("t",))
    rep = replay(from_sequence(["a", "b", "c", "b", "c", "d"]), model)
    assert rep.conformant
    assert rep.wrong_transitions == (("c", "b"),)
