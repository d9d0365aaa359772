"""Benchmark task runners."""
from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import sparse

from ..linalg import cosine_rows, spearman_rho
from .datasets import (
    NEWSGROUP_TASKS,
    AttributeTriplets,
    LabeledTextDataset,
    SimilarityDataset,
    load_newsgroups,
    load_np_bracketing,
    load_sst,
    load_trec,
)
from .models import train_linear

logger = logging.getLogger(__name__)

TEXT_TASKS = ("sports", "religion", "computer", "trec", "sentiment")
CLASSIFICATION_TASKS = TEXT_TASKS + ("np",)


@dataclass
class TaskResult:
    task: str
    score: float
    metric: str = "accuracy"
    model: str | None = None
    split_sizes: tuple[int, ...] | None = None
    skipped: int = 0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["split_sizes"] is not None:
            d["split_sizes"] = list(d["split_sizes"])
        return d


def lookup_rows(vecs: Mapping, words: Sequence[str]) -> np.ndarray:
    """Stack vectors for ``words`` (all must be present) as float64."""
    if hasattr(vecs, "rows"):
        return np.asarray(vecs.rows(list(words)), dtype=np.float64)
    if hasattr(vecs, "index") and hasattr(vecs, "data"):
        return np.asarray(vecs.data[[vecs.index[w] for w in words]], dtype=np.float64)
    return np.array([np.asarray(vecs[w], dtype=np.float64) for w in words])


def _vector_dim(vecs: Mapping) -> int:
    if hasattr(vecs, "dim"):
        return int(vecs.dim)
    for w in vecs:
        return len(vecs[w])
    raise ValueError("empty vector table")


def sentence_features(text: Sequence[str], vecs: Mapping) -> tuple[np.ndarray, bool]:
    """Mean vector of in-vocabulary tokens; ``(zeros, True)`` when none match."""
    X, empty = featurize([text], vecs)
    return X[0], bool(empty[0])


def featurize(texts: Sequence[Sequence[str]], vecs: Mapping) -> tuple[np.ndarray, np.ndarray]:
    """Averaged-vector features for many token sequences.

    Returns the feature matrix and a boolean mask of rows with no
    in-vocabulary token (those rows are zero).
    """
    vocab: dict[str, int] = {}
    indptr, indices = [0], []
    for toks in texts:
        for t in toks:
            if t in vecs:
                indices.append(vocab.setdefault(t, len(vocab)))
        indptr.append(len(indices))
    dim = _vector_dim(vecs)
    counts = np.diff(indptr)
    if not vocab:
        return np.zeros((len(texts), dim)), counts == 0
    E = lookup_rows(vecs, list(vocab))
    M = sparse.csr_matrix((np.ones(len(indices)), indices, indptr), shape=(len(texts), len(vocab)))
    X = np.asarray(M @ E)
    nz = counts > 0
    X[nz] /= counts[nz, None]
    return X, ~nz


def evaluate_split_features(features: dict[str, np.ndarray], labels: dict[str, np.ndarray], models=None):
    selected = train_linear(models, (features["train"], labels["train"]), (features["validation"], labels["validation"]))
    acc = float(np.mean(selected.predict(features["test"]) == labels["test"])) if len(labels["test"]) else 0.0
    return selected, 100.0 * acc


def run_classification(ds: LabeledTextDataset, vecs: Mapping, models=None) -> TaskResult:
    """Validation-selected linear model on averaged-vector features."""
    features, labels, oov = {}, {}, 0
    for split in ("train", "validation", "test"):
        X, empty = featurize(ds.texts(split), vecs)
        features[split], labels[split] = X, ds.labels(split)
        oov += int(empty.sum())
    if oov:
        logger.info("%s: %d items without any in-vocabulary token", ds.name, oov)
    selected, acc = evaluate_split_features(features, labels, models)
    return TaskResult(
        ds.name, acc, model=selected.name, split_sizes=ds.sizes(), skipped=ds.skipped,
        details={"oov_only_items": oov, "validation_accuracy": 100.0 * selected.validation_accuracy,
                 "validation_scores": {k: 100.0 * v for k, v in selected.scores.items()}},
    )


def load_task_dataset(task: str, root, *, seed: int = 0, lowercase: bool = False) -> LabeledTextDataset:
    if task in NEWSGROUP_TASKS:
        return load_newsgroups(root, task, seed=seed, lowercase=lowercase)
    if task == "trec":
        return load_trec(root, seed=seed, lowercase=lowercase)
    if task == "sentiment":
        return load_sst(root, lowercase=lowercase)
    if task == "np":
        return load_np_bracketing(root, lowercase=lowercase)
    raise ValueError(f"unknown classification task {task!r}")


def run_text_classification(task: str, vecs: Mapping, root, *, seed: int = 0, lowercase: bool = False,
                            models=None) -> TaskResult:
    if task not in TEXT_TASKS:
        raise ValueError(f"unknown text task {task!r}; expected one of {TEXT_TASKS}")
    return run_classification(load_task_dataset(task, root, seed=seed, lowercase=lowercase), vecs, models)


def run_np_bracketing(vecs: Mapping, root, *, lowercase: bool = False, models=None) -> TaskResult:
    return run_classification(load_np_bracketing(root, lowercase=lowercase), vecs, models)


def run_discriminative(vecs: Mapping, data: AttributeTriplets, threshold: float = 0.0) -> TaskResult:
    """Unsupervised cosine baseline over all triplets.

    Positive iff ``cos(attr, c1) - cos(attr, c2) > threshold``; a triplet
    with any out-of-vocabulary word is predicted negative.
    """
    known = np.array([all(w in vecs for w in trip) for trip in data.triplets], dtype=bool)
    pred = np.zeros(len(data.triplets), dtype=int)
    if known.any():
        kept = [t for t, k in zip(data.triplets, known) if k]
        words = list(dict.fromkeys(w for t in kept for w in t))
        pos = {w: i for i, w in enumerate(words)}
        E = lookup_rows(vecs, words)
        c1 = E[[pos[t[0]] for t in kept]]
        c2 = E[[pos[t[1]] for t in kept]]
        at = E[[pos[t[2]] for t in kept]]
        diff = cosine_rows(at, c1) - cosine_rows(at, c2)
        pred[known] = (diff > threshold).astype(int)
    acc = 100.0 * float(np.mean(pred == data.labels)) if len(pred) else 0.0
    n_oov = int((~known).sum())
    return TaskResult("discriminative", acc, skipped=n_oov,
                      details={"threshold": threshold, "triplets": len(pred), "oov_triplets": n_oov})


def run_word_similarity(dataset: SimilarityDataset, vecs: Mapping) -> TaskResult:
    """Spearman rho (as %) between human scores and cosine similarity."""
    usable = [(a, b, s) for a, b, s in dataset.pairs if a in vecs and b in vecs]
    if len(usable) < 2:
        raise ValueError(f"{dataset.name}: fewer than 2 pairs with both words in the vocabulary")
    words = list(dict.fromkeys(w for a, b, _ in usable for w in (a, b)))
    pos = {w: i for i, w in enumerate(words)}
    E = lookup_rows(vecs, words)
    sims = cosine_rows(E[[pos[a] for a, _, _ in usable]], E[[pos[b] for _, b, _ in usable]])
    rho = spearman_rho(np.array([s for _, _, s in usable]), sims)
    return TaskResult(dataset.name, 100.0 * rho, metric="spearman_rho",
                      skipped=len(dataset.pairs) - len(usable),
                      details={"pairs_total": len(dataset.pairs), "pairs_used": len(usable)})
