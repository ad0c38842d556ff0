import json

import numpy as np
import pytest

from mpoxtriage import modelstore
from mpoxtriage.booster import TrainConfig, train
from mpoxtriage.modelstore import (
    ModelFormatError,
    ModelInvariantError,
    ModelVersionError,
    dumps,
    load,
    loads,
    save,
)


@pytest.fixture(scope="module")
def trained(mini_split):
    train_set, _ = mini_split
    model, _ = train(train_set, TrainConfig(n_trees=6, min_child_weight=0.0))
    return model


def test_round_trip_margins_exact(trained, tmp_path):
    path = tmp_path / "model.json"
    save(trained, path)
    restored = load(path)
    rng = np.random.default_rng(1)
    X = rng.random((500, len(trained.vocabulary)))
    assert np.array_equal(trained.predict_margins(X), restored.predict_margins(X))


def test_save_twice_identical_bytes(trained, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    save(trained, a)
    save(trained, b)
    assert a.read_bytes() == b.read_bytes()
    assert modelstore.model_id(trained) == modelstore.file_model_id(a)


def test_version_mismatch(trained):
    obj = json.loads(dumps(trained))
    obj["format_version"] = 2
    with pytest.raises(ModelVersionError):
        loads(json.dumps(obj))


def test_feature_index_out_of_range_names_path(trained):
    obj = json.loads(dumps(trained))

    def first_internal(node, path):
        if "leaf" in node:
            return None
        return node, path

    for i, tree in enumerate(obj["trees"]):
        found = first_internal(tree, f"trees[{i}]")
        if found:
            node, path = found
            node["feature"] = len(obj["vocabulary"]) + 5
            with pytest.raises(ModelInvariantError) as err:
                loads(json.dumps(obj))
            assert path in str(err.value)
            return
    pytest.fail("model had no internal node to tamper with")


def test_non_finite_numbers_rejected(trained):
    obj = json.loads(dumps(trained))
    obj["base_margin"] = float("nan")
    with pytest.raises(ModelInvariantError):
        loads(json.dumps(obj).replace("NaN", "1e999"))  # 1e999 parses to inf


def test_schema_errors():
    with pytest.raises(ModelFormatError):
        loads("not json")
    with pytest.raises(ModelFormatError):
        loads("[1, 2, 3]")
    with pytest.raises(ModelVersionError):
        loads('{"format_version": 0}')
    with pytest.raises(ModelFormatError):
        loads('{"format_version": 1}')


def test_bad_node_keys(trained):
    obj = json.loads(dumps(trained))
    obj["trees"] = [{"weight": 1.0}]
    with pytest.raises(ModelFormatError):
        loads(json.dumps(obj))


def test_excess_trees_rejected(trained):
    obj = json.loads(dumps(trained))
    obj["config"]["n_trees"] = 1
    with pytest.raises(ModelInvariantError):
        loads(json.dumps(obj))


def test_depth_overflow_rejected(trained):
    obj = json.loads(dumps(trained))
    node = {"leaf": 0.5}
    for _ in range(obj["config"]["max_depth"] + 1):
        node = {"feature": 0, "threshold": 0.5, "left": node, "right": {"leaf": 0.0}}
    obj["trees"] = [node]
    with pytest.raises(ModelInvariantError):
        loads(json.dumps(obj))


def test_unsorted_vocabulary_rejected(trained):
    obj = json.loads(dumps(trained))
    obj["vocabulary"] = list(reversed(obj["vocabulary"]))
    with pytest.raises(ModelInvariantError):
        loads(json.dumps(obj))


def test_dumps_uses_shortest_round_trip_floats(trained):
    text = dumps(trained)
    reparsed = json.loads(text)    # float round-trip through text
    rebuilt = loads(json.dumps(reparsed))
    assert dumps(rebuilt) == text
