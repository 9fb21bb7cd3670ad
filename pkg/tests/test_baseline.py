import pytest
from hypothesis import given

from conftest import MICROWAVE, STOVE, logs
from mmdg import aggregate, baseline_mine, from_sequences, mmdg
from mmdg.exceptions import EmptyDatasetError


def test_theta_one_is_aggregate():
    data = from_sequences([MICROWAVE, STOVE]).graphs()
    model = baseline_mine(data, 1)
    assert model.graph == aggregate([g for _, g in data])
    assert model.valid and model.supported
    assert model.warnings() == []


def test_carrot_pair_at_two_is_invalid():
    model = baseline_mine(from_sequences([MICROWAVE, STOVE]).graphs(), 2)
    assert not model.valid
    assert not model.supported
    assert len(model.warnings()) == 2


def test_disjoint_middle_paths():
    # popularity thresholding can splice halves of different executions:
    # a bag-only and a water+oil-only path survive, but nobody did either
    seqs = [
        ["take", "bag", "stir", "pan"], ["take", "bag", "stir", "pan"],
        ["take", "water", "oil", "stir", "pan"], ["take", "water", "oil", "stir", "pan"],
        ["take", "bag", "water", "oil", "stir", "pan"],
    ]
    data = from_sequences(seqs).graphs()
    model = baseline_mine(data, 2)
    assert model.valid
    assert ("take", "bag") in model.graph.edges and ("take", "water") in model.graph.edges
    assert ("bag", "water") not in model.graph.edges
    # MMDG instead returns separate models for the two ways
    result = mmdg(data)
    assert len(result.models) >= 2


def test_empty():
    with pytest.raises(EmptyDatasetError):
        baseline_mine([], 1)


@given(logs)
def test_theta_one_matches_first_aggregate(seqs):
    data = from_sequences(seqs).graphs()
    assert baseline_mine(data, 1).graph == mmdg(data).aggregates[0]
