"""Interpretability analyses over syntactic representations."""
from __future__ import annotations

import csv
import json
import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .lexicon import N_CLASSES, POS_CLASSES
from .linalg import pca_2d
from .syntax import SyntacticRepr, Variant
from .tables import VectorTable

logger = logging.getLogger(__name__)

OPEN_CLASSES = POS_CLASSES[:4]


@dataclass(frozen=True)
class PosOracle:
    """Gold part-of-speech label sets (class indices in canonical order)."""

    entries: dict[str, frozenset[int]]
    source: str = "wordnet-4class"

    def __post_init__(self):
        for word, labels in self.entries.items():
            if not labels:
                raise ValueError(f"oracle entry {word!r} has no labels")
            if not all(0 <= i < N_CLASSES for i in labels):
                raise ValueError(f"oracle entry {word!r} has labels outside the canonical classes")

    @property
    def class_indices(self) -> list[int]:
        if self.source == "wordnet-4class":
            return list(range(len(OPEN_CLASSES)))
        return list(range(N_CLASSES))

    def class_counts(self) -> dict[str, int]:
        counts = dict.fromkeys(POS_CLASSES, 0)
        for labels in self.entries.values():
            for i in labels:
                counts[POS_CLASSES[i]] += 1
        return counts


def _label_index(name: str) -> int:
    key = name.strip().lower()
    aliases = {"n": "noun", "v": "verb", "a": "adjective", "adj": "adjective", "s": "adjective",
               "r": "adverb", "adv": "adverb"}
    key = aliases.get(key, key)
    if key not in POS_CLASSES:
        raise ValueError(f"unknown part of speech {name!r}")
    return POS_CLASSES.index(key)


def load_oracle(path, source: str = "wordnet-4class") -> PosOracle:
    """Read ``word<TAB>label[,label...]`` lines."""
    entries: dict[str, set[int]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            word, sep, labels = line.partition("\t")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected word<TAB>labels")
            try:
                entries.setdefault(word, set()).update(_label_index(x) for x in labels.split(",") if x.strip())
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return PosOracle({w: frozenset(s) for w, s in entries.items()}, source)


@dataclass
class ConfusionMatrix:
    counts: np.ndarray
    row_names: list[str]
    col_names: list[str]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def correct(self) -> int:
        n = len(self.row_names)
        return int(np.trace(self.counts[:, :n]))

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0

    def per_class(self) -> dict[str, dict[str, float]]:
        out = {}
        for i, name in enumerate(self.row_names):
            tp = self.counts[i, i]
            col = self.counts[:, i].sum()
            row = self.counts[i].sum()
            p = tp / col if col else 0.0
            r = tp / row if row else 0.0
            f1 = 2 * p * r / (p + r) if p + r else 0.0
            out[name] = {"precision": float(p), "recall": float(r), "f1": float(f1), "support": int(row)}
        return out

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["gold\\predicted"] + self.col_names)
            for name, row in zip(self.row_names, self.counts):
                w.writerow([name] + [int(x) for x in row])

    def metrics(self) -> dict:
        return {"accuracy": 100.0 * self.accuracy, "total": self.total, "per_class": self.per_class()}


def predict_label(s: SyntacticRepr) -> int:
    """Index of the coordinate equal to 1; the lowest index wins ties."""
    if s.variant is not Variant.INTERPRETABLE:
        raise ValueError(f"predict_label needs an interpretable representation, got {s.variant.value}")
    hits = np.flatnonzero(s.coords == 1.0)
    if hits.size == 0:
        raise ValueError("interpretable representation has no coordinate equal to 1")
    return int(hits[0])


def predict_labels(S) -> np.ndarray:
    """Row-wise argmax (first maximum), equivalent to :func:`predict_label` per row."""
    return np.argmax(np.asarray(S), axis=1)


def word_classification(reps: VectorTable, oracle: PosOracle, mode: str = "partial") -> ConfusionMatrix:
    """Score predicted labels against the oracle.

    ``partial`` keeps single-label words only. ``complete`` keeps every word
    and counts a prediction as correct if it is any gold label; wrong
    predictions are attributed to the first gold label in canonical order.
    Predictions outside the oracle's classes land in an ``other`` column.
    """
    if mode not in ("partial", "complete"):
        raise ValueError(f"mode must be 'partial' or 'complete', got {mode!r}")
    classes = oracle.class_indices
    names = [POS_CLASSES[i] for i in classes]
    has_other = len(classes) < N_CLASSES
    cols = names + (["other"] if has_other else [])
    counts = np.zeros((len(classes), len(cols)), dtype=int)
    words = [w for w in reps.vocab if w in oracle.entries]
    if mode == "partial":
        words = [w for w in words if len(oracle.entries[w]) == 1]
    if not words:
        raise ValueError("no words to evaluate")
    pred = predict_labels(reps.data[[reps.index[w] for w in words]])
    col_of = {c: j for j, c in enumerate(classes)}
    skipped = 0
    for w, p in zip(words, pred):
        p = int(p)
        gold = sorted(g for g in oracle.entries[w] if g in col_of)
        if not gold:
            skipped += 1
            continue
        row = col_of[p] if p in gold else col_of[gold[0]]
        col = col_of.get(p, len(cols) - 1)
        counts[row, col] += 1
    if skipped:
        logger.info("%d words had no gold label among the oracle classes", skipped)
    return ConfusionMatrix(counts, names, cols)


def default_tag_mapping_path() -> Path:
    return Path(str(resources.files("synrep") / "data" / "penn_to_pos.tsv"))


def load_tag_mapping(path=None) -> dict[str, str]:
    path = default_tag_mapping_path() if path is None else path
    mapping = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            fine, _, coarse = line.partition("\t")
            coarse = coarse.strip()
            if coarse not in POS_CLASSES:
                raise ValueError(f"{path}:{lineno}: {coarse!r} is not a canonical class")
            mapping[fine.strip()] = coarse
    return mapping


def load_tagged_tsv(path) -> list[tuple[str, str]]:
    """``word<TAB>tag`` lines."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                raise ValueError(f"{path}:{lineno}: expected word<TAB>tag")
            pairs.append((parts[0], parts[1].strip()))
    return pairs


def conflate_tags(tagged_corpus, mapping: Mapping[str, str]) -> PosOracle:
    """Collapse fine-grained tags to the eight classes.

    ``tagged_corpus`` is a ``word -> tag`` mapping or an iterable of
    ``(word, tag)`` pairs; a word seen with several tags gets all of them.
    """
    pairs = tagged_corpus.items() if isinstance(tagged_corpus, Mapping) else tagged_corpus
    entries: dict[str, set[int]] = {}
    unmapped = set()
    for word, tag in pairs:
        if tag not in mapping:
            unmapped.add(tag)
            continue
        entries.setdefault(word, set()).add(POS_CLASSES.index(mapping[tag]))
    if unmapped:
        raise ValueError(f"unmapped tags: {', '.join(sorted(unmapped))}")
    oracle = PosOracle({w: frozenset(s) for w, s in entries.items()}, "conflated-8class")
    logger.info("conflated oracle class counts: %s", oracle.class_counts())
    return oracle


def top_k_per_dimension(reps: VectorTable, k: int) -> list[list[str]]:
    """The ``k`` highest-valued words for each dimension (earlier tokens win ties)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > len(reps):
        logger.warning("k=%d exceeds vocabulary size %d; truncating", k, len(reps))
        k = len(reps)
    out = []
    for j in range(reps.data.shape[1]):
        order = np.argsort(-reps.data[:, j], kind="stable")[:k]
        out.append([reps.vocab[i] for i in order])
    return out


def top_k_markdown(lists: list[list[str]]) -> str:
    lines = ["| Dimension | Top Ranking Words |", "|---|---|"]
    for name, words in zip(POS_CLASSES, lists):
        lines.append(f"| {name} | {', '.join(words)} |")
    return "\n".join(lines) + "\n"


def separation_ratio(X, labels) -> float:
    """Mean distance between class centroids over mean distance of points to their centroid."""
    X = np.asarray(X, dtype=np.float64)
    labels = np.asarray(labels)
    classes = np.unique(labels)
    if len(classes) < 2:
        raise ValueError("need at least two classes")
    cents = np.array([X[labels == c].mean(axis=0) for c in classes])
    intra = np.mean([np.linalg.norm(X[labels == c] - cents[i], axis=1).mean() for i, c in enumerate(classes)])
    diffs = cents[:, None, :] - cents[None, :, :]
    iu = np.triu_indices(len(classes), 1)
    inter = np.linalg.norm(diffs, axis=2)[iu].mean()
    return float(inter / intra) if intra > 0 else float("inf")


def export_space_2d(vecs: Mapping, sample: Iterable[tuple[str, str]], out_prefix, title: str = "") -> dict:
    """Write ``<prefix>.csv`` (word,label,x,y) and ``<prefix>.svg`` for a labelled sample."""
    sample = [(w, lab) for w, lab in sample if w in vecs]
    if len(sample) < 2:
        raise ValueError("need at least two sample words present in the vectors")
    from .evaluation.tasks import lookup_rows

    X = lookup_rows(vecs, [w for w, _ in sample])
    labels = [lab for _, lab in sample]
    P = pca_2d(X)
    out_prefix = Path(out_prefix)
    with open(out_prefix.with_suffix(".csv"), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["word", "label", "x", "y"])
        for (word, lab), (x, y) in zip(sample, P):
            w.writerow([word, lab, f"{x:.6f}", f"{y:.6f}"])
    _scatter_svg(P, labels, out_prefix.with_suffix(".svg"), title)
    ratio = separation_ratio(X, labels) if len(set(labels)) > 1 else None
    return {"points": len(sample), "separation_ratio": ratio}


def _scatter_svg(P, labels, path, title):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "synrep"
    fig, ax = plt.subplots(figsize=(6, 5))
    for lab in sorted(set(labels), key=lambda s: (POS_CLASSES.index(s) if s in POS_CLASSES else 99, s)):
        idx = [i for i, x in enumerate(labels) if x == lab]
        ax.scatter(P[idx, 0], P[idx, 1], s=12, label=lab)
    ax.set_xlabel("PC1")
    ax.set_ylabel("PC2")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=7, markerscale=1.5)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def write_metrics_json(cm: ConfusionMatrix, path, **extra) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({**cm.metrics(), **extra}, fh, indent=2, sort_keys=True)
        fh.write("\n")
