import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from sklearn.base import clone
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from synrep.embedding_io import EmbeddingMatrix
from synrep.lexicon import POS_CLASSES, PosLexicon
from synrep.syntax import (
    SyntacticRepr,
    SyntacticTransformer,
    Variant,
    apply_variant,
    build_transition_matrix,
    normalize_interpretable,
    normalize_l2,
    project,
    project_all,
    project_rows,
    transition_from_rows,
)

rows8 = arrays(np.float64, (8,), elements=st.floats(-1e3, 1e3, allow_subnormal=False))


def _random_C(rng, L=20):
    return transition_from_rows(rng.normal(size=(8, L)))


def _toy_embedding(rng, n=80, L=12):
    vocab = [f"t{i}" for i in range(n)]
    return EmbeddingMatrix(vocab, rng.normal(size=(n, L)).astype(np.float32))


def _toy_lexicon(m, per=3):
    return PosLexicon(tuple(tuple(m.vocab[k * per : (k + 1) * per]) for k in range(8)))


def test_transition_rows_are_class_means(rng):
    m = _toy_embedding(rng)
    lex = _toy_lexicon(m)
    C = build_transition_matrix(m, lex)
    for k, words in enumerate(lex.classes):
        expected = np.mean([m[w].astype(np.float64) for w in words], axis=0)
        assert np.allclose(C.rows[k], expected, atol=1e-12)
    assert C.rows.shape == (8, 12)
    assert C.source_counts == (3,) * 8


def test_vocab_denominator_divides_by_vocabulary_size(rng):
    m = _toy_embedding(rng)
    lex = _toy_lexicon(m)
    C = build_transition_matrix(m, lex, "vocab")
    total = np.sum([m[w].astype(np.float64) for w in lex["verb"]], axis=0)
    assert np.allclose(C.rows[1], total / len(m), atol=1e-12)


def test_repeated_lexicon_words_are_weighted(rng):
    m = _toy_embedding(rng)
    lex = _toy_lexicon(m)
    nouns = ("t0", "t0", "t1")
    C = build_transition_matrix(m, PosLexicon((nouns,) + lex.classes[1:]))
    assert np.allclose(C.rows[0], (2 * m["t0"].astype(float) + m["t1"]) / 3, atol=1e-12)


def test_lexicon_must_be_intersected(rng):
    m = _toy_embedding(rng)
    lex = PosLexicon((("absent",),) + _toy_lexicon(m).classes[1:])
    with pytest.raises(ValueError, match="intersect"):
        build_transition_matrix(m, lex)


def test_projection_is_least_squares_solution(rng):
    # independent check: no perturbation of s lowers the residual
    C = _random_C(rng)
    for _ in range(20):
        x = rng.normal(size=20)
        s = project(x, C).coords
        best = np.linalg.norm(C.rows.T @ s - x)
        for _ in range(200):
            t = s + rng.normal(scale=0.1, size=8)
            assert np.linalg.norm(C.rows.T @ t - x) >= best - 1e-12


def test_projection_recovers_exact_combinations(rng):
    C = _random_C(rng)
    s = rng.normal(size=8)
    assert np.allclose(project(C.rows.T @ s, C).coords, s, atol=1e-10)


def test_projection_linearity(rng):
    C = _random_C(rng)
    for _ in range(100):
        x, y = rng.normal(size=(2, 20))
        a, b = rng.normal(size=2)
        lhs = project(a * x + b * y, C).coords
        rhs = a * project(x, C).coords + b * project(y, C).coords
        assert np.allclose(lhs, rhs, atol=1e-8)


def test_projection_rejects_wrong_length(rng):
    with pytest.raises(ValueError):
        project(np.zeros(5), _random_C(rng))


def test_interpretable_worked_example():
    s = SyntacticRepr(np.array([2.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]))
    out = normalize_interpretable(s)
    assert out.variant is Variant.INTERPRETABLE
    assert out.coords[:3].tolist() == [1.0, 0.5, 0.75]


def test_interpretable_constant_row_is_all_ones():
    out = normalize_interpretable(SyntacticRepr(np.full(8, 3.0)))
    assert np.array_equal(out.coords, np.ones(8))


@settings(max_examples=200, deadline=None)
@given(rows8)
def test_interpretable_range_and_max(s):
    out = normalize_interpretable(SyntacticRepr(s)).coords
    assert out.min() >= 0.5 and out.max() <= 1.0
    assert out.max() == 1.0
    assert np.argmax(out) == np.argmax(s)


@settings(max_examples=200, deadline=None)
@given(rows8)
def test_l2_unit_norm(s):
    if np.linalg.norm(s) == 0:
        with pytest.raises(ValueError):
            normalize_l2(SyntacticRepr(s))
        return
    out = normalize_l2(SyntacticRepr(s)).coords
    assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-9)


def test_argmax_invariant_across_variants(rng):
    S = project_rows(rng.normal(size=(500, 20)), _random_C(rng))
    ref = np.argmax(S, axis=1)
    for v in Variant:
        assert np.array_equal(np.argmax(apply_variant(S, v), axis=1), ref)


def test_project_all_restricts_and_tags(rng):
    m = _toy_embedding(rng)
    C = build_transition_matrix(m, _toy_lexicon(m))
    t = project_all(m, C, "l2", restrict_to=["t5", "nope", "t1"], chunk_size=1)
    assert t.vocab == ["t5", "t1"]
    assert t.meta["variant"] == "l2"
    assert np.allclose(np.linalg.norm(t.data, axis=1), 1.0)
    full = project_all(m, C, "absolute", chunk_size=7)
    assert np.allclose(full["t3"], project(m["t3"], C).coords)


def test_transformer_matches_functional_api(rng):
    m = _toy_embedding(rng)
    lex = _toy_lexicon(m)
    words, labels = lex.to_training_pairs()
    X = m.data[[m.index[w] for w in words]]
    tr = SyntacticTransformer(variant="interpretable").fit(X, labels)
    C = build_transition_matrix(m, lex)
    assert np.allclose(tr.transform(m.data), apply_variant(project_rows(m.data, C), "interpretable"))
    by_name = SyntacticTransformer().fit(X, [POS_CLASSES[i] for i in labels])
    assert np.allclose(by_name.transition_.rows, C.rows)
    assert list(tr.get_feature_names_out()) == list(POS_CLASSES)


def test_transformer_sklearn_contract(rng):
    m = _toy_embedding(rng)
    lex = _toy_lexicon(m)
    tr = SyntacticTransformer(variant="l2", denominator="vocab")
    assert tr.get_params() == {"variant": "l2", "denominator": "vocab", "vocab_size": None}
    tr.fit_lexicon(m, lex)
    assert tr.get_params()["vocab_size"] is None
    C = build_transition_matrix(m, lex, "vocab")
    assert np.allclose(tr.transition_.rows, C.rows)
    fresh = clone(tr)
    assert not hasattr(fresh, "transition_")
    words, labels = lex.to_training_pairs()
    X = m.data[[m.index[w] for w in words]]
    pipe = make_pipeline(SyntacticTransformer(vocab_size=len(m)), StandardScaler()).fit(X, labels)
    assert pipe.transform(X).shape == (24, 8)


def test_transformer_errors(rng):
    from sklearn.exceptions import NotFittedError

    with pytest.raises(NotFittedError):
        SyntacticTransformer().transform(np.zeros((1, 3)))
    X = rng.normal(size=(16, 4))
    with pytest.raises(ValueError):
        SyntacticTransformer().fit(X, np.arange(16) % 9)
    with pytest.raises(ValueError):
        SyntacticTransformer().fit(X, np.zeros(16, int))  # empty classes
    with pytest.raises(ValueError):
        SyntacticTransformer(variant="bogus").fit(X, np.arange(16) % 8)
    with pytest.raises(ValueError):
        SyntacticTransformer(denominator="vocab").fit(X, np.arange(16) % 8)
