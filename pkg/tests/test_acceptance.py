"""Acceptance checks, one test per criterion item.

Criteria 4 and 5 need real pretrained vectors and benchmark data. Point
``SYNREP_REAL_DATA`` at a directory laid out as::

    word2vec.bin            GoogleNews 300-d binary
    glove.txt               GloVe 300-d text
    oracle_wordnet.tsv      word<TAB>pos[,pos...] (noun/verb/adjective/adverb)
    data/20news/...         20news-bydate-{train,test}
    data/trec/...           train_5500.label, TREC_10.label
    data/similarity/simlex999.csv, data/similarity/ws353.csv
    lexicon/                optional; the bundled word lists otherwise

Missing pieces make the affected checks skip with a reason.
"""
import json
import os
import time
from pathlib import Path

import numpy as np
import pytest

from synrep import cli
from synrep.evaluation.datasets import SimilarityDataset, load_similarity
from synrep.evaluation.stats import significance_protocol
from synrep.evaluation.tasks import load_task_dataset, run_classification, run_word_similarity
from synrep.hierarchical import ComposedVectors, overcomplete, weighted
from synrep.interpret import load_oracle, top_k_per_dimension, word_classification
from synrep.lexicon import default_lexicon_dir, intersect, load_pos_lexicon
from synrep.linalg import condition_number, cosine, format_condition, pseudoinverse, singular_values_streaming
from synrep.syntax import (
    SyntacticRepr,
    Variant,
    apply_variant,
    build_transition_matrix,
    normalize_interpretable,
    normalize_l2,
    project,
    project_rows,
    transition_from_rows,
)
from synrep.synthetic import positive_mixture_embedding, write_world

acceptance = pytest.mark.acceptance


# -- 1. property suite -------------------------------------------------------


@acceptance(1, "Penrose conditions on 100 random matrices (1e-8)")
def test_c1_penrose():
    rng = np.random.default_rng(100)
    for _ in range(100):
        m, n = rng.integers(1, 40, size=2)
        A = rng.normal(size=(m, n))
        P = pseudoinverse(A)
        for lhs, rhs in ((A @ P @ A, A), (P @ A @ P, P), ((A @ P).T, A @ P), ((P @ A).T, P @ A)):
            assert np.max(np.abs(lhs - rhs)) <= 1e-8


@acceptance(1, "Kronecker cosine factorisation on 100 random pairs (1e-9)")
def test_c1_kronecker_cosine():
    rng = np.random.default_rng(101)
    for _ in range(100):
        s1, s2 = rng.normal(size=(2, 8))
        r1, r2 = rng.normal(size=(2, 300))
        lhs = cosine(overcomplete(SyntacticRepr(s1), r1).data, overcomplete(SyntacticRepr(s2), r2).data)
        assert abs(lhs - cosine(s1, s2) * cosine(r1, r2)) <= 1e-9


@acceptance(1, "Weighted colinearity gives equal cosines (1e-12)")
def test_c1_weighted_colinearity():
    rng = np.random.default_rng(102)
    for _ in range(100):
        s1, s2 = rng.uniform(0.01, 2.0, size=(2, 8))
        r1, r2 = rng.normal(size=(2, 300))
        lhs = cosine(weighted(SyntacticRepr(s1), r1).data, weighted(SyntacticRepr(s2), r2).data)
        assert abs(lhs - cosine(r1, r2)) <= 1e-12


@acceptance(1, "Interpretable range [0.5, 1] with max == 1")
def test_c1_interpretable_range():
    rng = np.random.default_rng(103)
    for s in rng.normal(scale=10.0, size=(1000, 8)):
        out = normalize_interpretable(SyntacticRepr(s)).coords
        assert out.min() >= 0.5 and out.max() <= 1.0 and out.max() == 1.0


@acceptance(1, "L2 unit norm (1e-9)")
def test_c1_l2_norm():
    rng = np.random.default_rng(104)
    for s in rng.normal(scale=10.0, size=(1000, 8)):
        assert abs(np.linalg.norm(normalize_l2(SyntacticRepr(s)).coords) - 1.0) <= 1e-9


@acceptance(1, "projection linearity (1e-8)")
def test_c1_linearity():
    rng = np.random.default_rng(105)
    C = transition_from_rows(rng.normal(size=(8, 300)))
    for _ in range(100):
        x, y = rng.normal(size=(2, 300))
        a, b = rng.normal(size=2)
        diff = project(a * x + b * y, C).coords - (a * project(x, C).coords + b * project(y, C).coords)
        assert np.max(np.abs(diff)) <= 1e-8


@acceptance(1, "argmax invariance across variants")
def test_c1_argmax_invariance():
    rng = np.random.default_rng(106)
    C = transition_from_rows(rng.normal(size=(8, 50)))
    S = project_rows(rng.normal(size=(5000, 50)), C)
    ref = np.argmax(S, axis=1)
    for v in Variant:
        assert np.array_equal(np.argmax(apply_variant(S, v), axis=1), ref)


# -- 2. analytic reproduction ------------------------------------------------


@acceptance(2, "Weighted similarity scores equal base scores on a 500-word embedding")
def test_c2_weighted_equals_base():
    m, lex, _ = positive_mixture_embedding(n_words=500, dim=40, seed=0)
    C = build_transition_matrix(m, lex)
    rng = np.random.default_rng(7)
    datasets = []
    for name in ("simlex-like", "ws-like", "men-like"):
        idx = rng.choice(500, size=(300, 2))
        pairs = [(m.vocab[a], m.vocab[b], float(rng.uniform(0, 10))) for a, b in idx if a != b]
        datasets.append(SimilarityDataset(name, pairs))
    for v in Variant:
        assert np.all(apply_variant(project_rows(m.data, C), v).mean(axis=1) > 0)
    for ds in datasets:
        base = run_word_similarity(ds, m).score
        rows = [run_word_similarity(ds, ComposedVectors(m, C, v, "weighted")).score for v in Variant]
        for score in rows:
            assert abs(score - base) <= 1e-12
            assert f"{score:.2f}" == f"{base:.2f}"


# -- 3. end-to-end synthetic pipeline ----------------------------------------

COMMANDS = [
    ["build-syntactic", "--variant", "interpretable"],
    ["build-hierarchical", "--kind", "overcomplete"],
    ["build-hierarchical", "--kind", "weighted", "--variant", "l2"],
    ["eval", "--tasks", "sports", "religion", "computer", "trec", "sentiment", "np", "discriminative"],
    ["eval", "--tasks", "sports", "trec", "--kind", "overcomplete"],
    ["similarity"],
    ["similarity", "--kind", "weighted", "--variant", "interpretable"],
    ["significance", "--tasks", "sports", "--kind", "overcomplete"],
    ["sweep", "--tasks", "trec", "--kind", "weighted", "--sizes", "5", "10", "20"],
    ["interpret"],
    ["svd-report"],
    ["viz"],
]


def _snapshot(out: Path) -> dict:
    snap = {}
    for p in sorted(out.rglob("*")):
        if not p.is_file():
            continue
        if p.suffix == ".json":
            d = json.loads(p.read_text())
            d.pop("timestamp", None)
            snap[p.name] = json.dumps(d, sort_keys=True)
        else:
            snap[p.name] = p.read_bytes()
    return snap


@acceptance(3, "every subcommand runs on a 1k-word synthetic workspace, deterministic across runs, < 2 min")
def test_c3_end_to_end(tmp_path):
    start = time.perf_counter()
    config = write_world(tmp_path / "ws", n_words=1000, dim=32, seed=0)
    snaps = []
    for _ in range(2):
        for cmd in COMMANDS:
            assert cli.main(cmd + ["--config", str(config)]) == 0, cmd
        snaps.append(_snapshot(tmp_path / "ws" / "out"))
    assert len(snaps[0]) >= 25
    assert snaps[0].keys() == snaps[1].keys()
    differing = [k for k in snaps[0] if snaps[0][k] != snaps[1][k]]
    assert not differing
    assert time.perf_counter() - start < 120


# -- 4 and 5. real pretrained vectors ------------------------------------------

REAL = Path(os.environ["SYNREP_REAL_DATA"]) if os.environ.get("SYNREP_REAL_DATA") else None


def _need(*parts) -> Path:
    if REAL is None:
        pytest.skip("SYNREP_REAL_DATA not set (real pretrained vectors and benchmarks unavailable)")
    p = REAL.joinpath(*parts)
    if not p.exists():
        pytest.skip(f"{p} not found")
    return p


_CACHE = {}


def _embedding(name):
    if name not in _CACHE:
        path = _need("word2vec.bin" if name == "word2vec" else "glove.txt")
        from synrep.embedding_io import load_embeddings

        _CACHE[name] = load_embeddings(path, "word2vec" if name == "word2vec" else "glove")
    return _CACHE[name]


def _transition(name):
    key = name + ":C"
    if key not in _CACHE:
        lex_dir = REAL / "lexicon" if (REAL / "lexicon").is_dir() else default_lexicon_dir()
        m = _embedding(name)
        _CACHE[key] = build_transition_matrix(m, intersect(load_pos_lexicon(lex_dir), m))
    return _CACHE[key]


def _similarity(file_stem):
    root = _need("data", "similarity")
    hits = sorted(root.glob(f"{file_stem}.*"))
    if not hits:
        pytest.skip(f"{root}/{file_stem}.* not found")
    return load_similarity(hits[0])


@acceptance(4, "SVD report: Word2Vec largest 777.92 +/- 1, condition 5.47 +/- 0.1")
def test_c4_svd_word2vec():
    m = _embedding("word2vec")
    S, n = singular_values_streaming(m.data[i : i + 65536] for i in range(0, len(m), 65536))
    assert abs(S[0] - 777.92) <= 1.0
    assert abs(condition_number(S) - 5.47) <= 0.1


@acceptance(4, "SVD report: Weighted-Absolute largest 161.92 +/- 5, Overcomplete condition '> 1e5'")
def test_c4_svd_hierarchical():
    m, C = _embedding("word2vec"), _transition("word2vec")
    S, _ = singular_values_streaming(ComposedVectors(m, C, "absolute", "weighted").iter_blocks(65536))
    assert abs(S[0] - 161.92) <= 5.0
    S, _ = singular_values_streaming(ComposedVectors(m, C, "absolute", "overcomplete").iter_blocks(8192))
    assert format_condition(condition_number(S)).startswith(">")


@acceptance(4, "similarity: Word2Vec SimLex 44.20 +/- 0.5, WS353 69.41 +/- 0.5")
def test_c4_similarity_word2vec():
    m = _embedding("word2vec")
    assert abs(run_word_similarity(_similarity("simlex999"), m).score - 44.20) <= 0.5
    assert abs(run_word_similarity(_similarity("ws353"), m).score - 69.41) <= 0.5


@acceptance(4, "similarity: GO^I SimLex 40.45 +/- 1.0")
def test_c4_similarity_glove_overcomplete():
    m, C = _embedding("glove"), _transition("glove")
    score = run_word_similarity(_similarity("simlex999"), ComposedVectors(m, C, "interpretable", "overcomplete")).score
    assert abs(score - 40.45) <= 1.0


def _word_classification_accuracy(name, mode):
    m, C = _embedding(name), _transition(name)
    oracle = load_oracle(_need("oracle_wordnet.tsv"))
    reps = ComposedVectors(m, C, "interpretable").materialize([w for w in oracle.entries if w in m])
    return 100.0 * word_classification(reps, oracle, mode).accuracy


@acceptance(4, "word classification: Word2Vec partial 80.33% +/- 2")
def test_c4_word_classification_word2vec():
    assert abs(_word_classification_accuracy("word2vec", "partial") - 80.33) <= 2.0


@acceptance(4, "word classification: GloVe complete 73.58% +/- 2")
def test_c4_word_classification_glove():
    assert abs(_word_classification_accuracy("glove", "complete") - 73.58) <= 2.0


@acceptance(4, "downstream: sports Word2Vec 93.97 +/- 3, WO^A 96.61 +/- 3 and improves; TREC WO^A >= Word2Vec")
def test_c4_downstream():
    m, C = _embedding("word2vec"), _transition("word2vec")
    hier = ComposedVectors(m, C, "absolute", "overcomplete")
    sports = load_task_dataset("sports", _need("data", "20news"), seed=0)
    base_s, hier_s = run_classification(sports, m).score, run_classification(sports, hier).score
    assert abs(base_s - 93.97) <= 3.0
    assert abs(hier_s - 96.61) <= 3.0
    assert hier_s > base_s
    trec = load_task_dataset("trec", _need("data", "trec"), seed=0)
    assert run_classification(trec, hier).score >= run_classification(trec, m).score


@acceptance(4, "significance: 100-run sports Word2Vec vs WO^A p < 0.10; identical control t=0, p=0.5")
def test_c4_significance():
    m, C = _embedding("word2vec"), _transition("word2vec")
    sports = load_task_dataset("sports", _need("data", "20news"), seed=0)
    row = significance_protocol(sports, m, ComposedVectors(m, C, "absolute", "overcomplete"), k=100, seed=0)
    assert row.p < 0.10
    control = significance_protocol(sports, m, m, k=100, seed=0)
    assert (control.t, control.p) == (0.0, 0.5)


INTERJECTION_STOPLIST = {
    "ah", "ahh", "ahhh", "ahhhh", "aw", "aww", "awww", "awwww", "oh", "ohh", "ohhh", "ohhhh", "ooh", "oooh",
    "ooooh", "haha", "hahah", "hahaha", "hahahaha", "hehe", "hehehe", "lol", "omg", "wow", "whoa", "woah",
    "yay", "gosh", "ugh", "hmm", "hmmm", "mmm", "oops", "yikes", "phew", "huh", "duh", "argh", "eh",
    "uh", "um", "umm", "yeah", "yep", "nah", "hey", "ha", "hah",
}


@acceptance(5, "top-15 interjection words contain >= 5 stoplist tokens")
def test_c5_interjection_dimension():
    m, C = _embedding("word2vec"), _transition("word2vec")
    table = ComposedVectors(m, C, "absolute").materialize()
    top = top_k_per_dimension(table, 15)[7]
    hits = [w for w in top if w.lower() in INTERJECTION_STOPLIST]
    assert len(hits) >= 5, top


# -- 6. documented as not reproducible ---------------------------------------


@acceptance(6, "comparison row for the external interpretable baseline")
def test_c6_external_baseline_row():
    pytest.skip("not reproducible at desk scale: the external baseline's vectors are not part of this package")


@acceptance(6, "2-D figure replaced by centroid separation ratio: syntactic space separates better than raw")
def test_c6_separation_ratio(tmp_path):
    config = write_world(tmp_path / "ws", n_words=1000, dim=32, seed=0)
    assert cli.main(["viz", "--config", str(config)]) == 0
    space = json.loads((tmp_path / "ws" / "out" / "space.json").read_text())
    assert space["syntactic"]["separation_ratio"] > space["raw"]["separation_ratio"]
