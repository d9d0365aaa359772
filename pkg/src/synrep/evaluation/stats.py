"""Corrected resampled paired t-test and the paired resampling protocol."""
from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import asdict, dataclass

import numpy as np

from ..linalg import student_t_cdf
from .datasets import LabeledTextDataset
from .tasks import evaluate_split_features, featurize


def corrected_paired_ttest(a, b, n_train: int, n_test: int) -> tuple[float, float]:
    """Lower-tailed paired t-test with the Nadeau-Bengio variance correction.

    ``t = mean(d) / sqrt((1/k + n_test/n_train) * var(d))`` with
    ``d = a - b`` and ``var`` the unbiased sample variance; ``p`` is the
    lower-tail Student-t probability with ``k - 1`` degrees of freedom.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("score series must be 1-D and of equal length")
    k = a.size
    if k < 2:
        raise ValueError("need at least 2 paired runs")
    if n_train <= 0 or n_test <= 0:
        raise ValueError("n_train and n_test must be positive")
    d = a - b
    mean = float(d.mean())
    var = float(d.var(ddof=1))
    if var == 0.0:
        if mean == 0.0:
            return 0.0, 0.5
        return (-math.inf, 0.0) if mean < 0 else (math.inf, 1.0)
    t = mean / math.sqrt((1.0 / k + n_test / n_train) * var)
    return t, student_t_cdf(t, k - 1)


@dataclass
class SignificanceRow:
    task: str
    runs: int
    base_mean: float
    base_sd: float
    hier_mean: float
    hier_sd: float
    t: float
    p: float
    n_train: int
    n_test: int
    base_scores: list
    hier_scores: list

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("t", "p"):
            if math.isinf(d[key]):
                d[key] = "inf" if d[key] > 0 else "-inf"
        return d


def significance_protocol(ds: LabeledTextDataset, base_vecs: Mapping, hier_vecs: Mapping, k: int = 100,
                          seed: int = 0, models=None) -> SignificanceRow:
    """Paired resampling comparison of two vector sets on one task.

    The train, validation and test items are pooled; each run reshuffles
    the pool into splits of the original sizes with a fresh seed, and
    both vector sets are scored on that same split.
    """
    if k < 2:
        raise ValueError("need at least 2 runs")
    pool = [item for split in ("train", "validation", "test") for item in ds.splits[split]]
    sizes = ds.sizes()
    texts = [toks for _, toks in pool]
    y = np.array([lab for lab, _ in pool], dtype=int)
    X_base, _ = featurize(texts, base_vecs)
    X_hier = X_base if hier_vecs is base_vecs else featurize(texts, hier_vecs)[0]

    bounds = np.cumsum((0,) + sizes)
    scores_a, scores_b = [], []
    for child in np.random.SeedSequence(seed).spawn(k):
        perm = np.random.default_rng(child).permutation(len(pool))
        parts = {name: perm[bounds[i] : bounds[i + 1]] for i, name in enumerate(("train", "validation", "test"))}
        labels = {s: y[idx] for s, idx in parts.items()}
        _, acc_a = evaluate_split_features({s: X_base[idx] for s, idx in parts.items()}, labels, models)
        if X_hier is X_base:
            acc_b = acc_a
        else:
            _, acc_b = evaluate_split_features({s: X_hier[idx] for s, idx in parts.items()}, labels, models)
        scores_a.append(acc_a)
        scores_b.append(acc_b)

    n_train = sizes[0] + sizes[1]
    n_test = sizes[2]
    t, p = corrected_paired_ttest(scores_a, scores_b, n_train, n_test)
    a, b = np.array(scores_a), np.array(scores_b)
    return SignificanceRow(ds.name, k, float(a.mean()), float(a.std(ddof=1)), float(b.mean()),
                           float(b.std(ddof=1)), t, p, n_train, n_test, scores_a, scores_b)
