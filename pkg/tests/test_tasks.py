import numpy as np
import pytest

from synrep.evaluation.datasets import AttributeTriplets, LabeledTextDataset, SimilarityDataset
from synrep.evaluation.models import SoftmaxRegression
from synrep.evaluation.tasks import featurize, run_classification, run_discriminative, run_word_similarity, sentence_features
from synrep.tables import VectorTable

VECS = VectorTable(["a", "b", "c", "d"], np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [-1.0, 0.0]]))


def test_sentence_features_skip_oov_and_average():
    vec, empty = sentence_features(["a", "zzz", "b", "a"], VECS)
    assert not empty
    assert np.allclose(vec, [2 / 3, 1 / 3])
    vec, empty = sentence_features(["zzz"], VECS)
    assert empty and np.array_equal(vec, [0.0, 0.0])


def test_featurize_matches_loop():
    texts = [["a", "c"], [], ["d", "d", "b"], ["q"]]
    X, empty = featurize(texts, VECS)
    for row, toks in zip(X, texts):
        known = [VECS[t] for t in toks if t in VECS]
        assert np.allclose(row, np.mean(known, axis=0) if known else 0.0)
    assert empty.tolist() == [False, True, False, True]


def _separable_dataset():
    items = [(0, ["a", "a"]), (1, ["b"]), (0, ["a", "d"]), (1, ["b", "c"])] * 6
    return LabeledTextDataset("toy", ["x", "y"], {"train": items, "validation": items[:8], "test": items[:8]})


def test_run_classification():
    res = run_classification(_separable_dataset(), VECS, [("lr", SoftmaxRegression())])
    assert res.score == 100.0
    assert res.model == "lr"
    assert res.split_sizes == (24, 8, 8)


def test_discriminative_cosine_rule_and_oov():
    data = AttributeTriplets([("a", "b", "c"), ("a", "d", "b"), ("d", "a", "a"), ("a", "zz", "b")],
                             np.array([1, 1, 0, 0]))
    res = run_discriminative(VECS, data)
    # differences: 0, 0, -2 and an OOV triplet; none exceeds 0, so all predicted negative
    assert res.score == 50.0
    assert res.skipped == 1
    assert run_discriminative(VECS, data, threshold=-0.5).score == 100.0


def test_word_similarity():
    ds = SimilarityDataset("toy", [("a", "c", 8.0), ("a", "b", 5.0), ("a", "d", 1.0), ("a", "zz", 3.0)])
    res = run_word_similarity(ds, VECS)
    assert res.score == pytest.approx(100.0)
    assert res.skipped == 1
    with pytest.raises(ValueError):
        run_word_similarity(SimilarityDataset("x", [("a", "b", 1.0), ("q", "r", 2.0)]), VECS)
