"""Syntactic subspace construction and projection.

The transition matrix ``C`` stacks one averaged embedding per part of
speech (8 x L). A word vector ``x`` is mapped to the least-squares
solution ``s`` of ``C.T @ s = x``, i.e. ``s = pinv(C.T) @ x``.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .lexicon import N_CLASSES, POS_CLASSES, PosLexicon
from .linalg import pseudoinverse
from .tables import VectorTable


class Variant(str, Enum):
    ABSOLUTE = "absolute"
    INTERPRETABLE = "interpretable"
    L2 = "l2"

    @property
    def letter(self) -> str:
        return {"absolute": "A", "interpretable": "I", "l2": "L"}[self.value]


DENOMINATORS = ("class", "vocab")


@dataclass(frozen=True)
class TransitionMatrix:
    rows: np.ndarray
    pinv_t: np.ndarray
    source_counts: tuple[int, ...]
    denominator: str = "class"

    @property
    def dim(self) -> int:
        return self.rows.shape[1]


@dataclass(frozen=True)
class SyntacticRepr:
    coords: np.ndarray
    variant: Variant = Variant.ABSOLUTE

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=np.float64)
        if coords.ndim != 1:
            raise ValueError(f"expected a coordinate vector, got shape {coords.shape}")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "variant", Variant(self.variant))

    def as_dict(self) -> dict[str, float]:
        return dict(zip(POS_CLASSES, map(float, self.coords)))


def _class_means(X: np.ndarray, labels: np.ndarray, n_classes: int, denominator: str, vocab_size=None):
    if denominator not in DENOMINATORS:
        raise ValueError(f"denominator must be one of {DENOMINATORS}, got {denominator!r}")
    X = np.asarray(X, dtype=np.float64)
    counts = np.bincount(labels, minlength=n_classes)
    empty = [POS_CLASSES[i] if n_classes == N_CLASSES else str(i) for i in np.flatnonzero(counts == 0)]
    if empty:
        raise ValueError(f"empty class: {', '.join(empty)}")
    sums = np.zeros((n_classes, X.shape[1]))
    np.add.at(sums, labels, X)
    if denominator == "class":
        rows = sums / counts[:, None]
    else:
        if not vocab_size:
            raise ValueError("denominator='vocab' needs the vocabulary size")
        rows = sums / float(vocab_size)
    zero = np.flatnonzero(~np.any(rows != 0, axis=1))
    if zero.size:
        raise ValueError(f"zero transition row for class index {zero.tolist()}")
    return rows, tuple(int(c) for c in counts)


def transition_from_rows(rows, source_counts=None, denominator: str = "class") -> TransitionMatrix:
    rows = np.asarray(rows, dtype=np.float64)
    if source_counts is None:
        source_counts = (1,) * rows.shape[0]
    return TransitionMatrix(rows, pseudoinverse(rows.T), tuple(source_counts), denominator)


def build_transition_matrix(m: VectorTable, lex: PosLexicon, denominator: str = "class") -> TransitionMatrix:
    """Average the embeddings of each class; duplicates count with multiplicity.

    ``lex`` must already be intersected with ``m``'s vocabulary.
    """
    words, labels = lex.to_training_pairs()
    missing = [w for w in words if w not in m]
    if missing:
        raise ValueError(f"{len(missing)} lexicon words lack embeddings (e.g. {missing[0]!r}); intersect first")
    X = m.data[[m.index[w] for w in words]]
    rows, counts = _class_means(X, np.asarray(labels), N_CLASSES, denominator, vocab_size=len(m))
    return transition_from_rows(rows, counts, denominator)


def project(word_vec, C: TransitionMatrix) -> SyntacticRepr:
    x = np.asarray(word_vec, dtype=np.float64)
    if x.shape != (C.dim,):
        raise ValueError(f"vector length {x.shape} does not match transition matrix width {C.dim}")
    return SyntacticRepr(C.pinv_t @ x, Variant.ABSOLUTE)


def project_rows(X, C: TransitionMatrix) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != C.dim:
        raise ValueError(f"expected (n, {C.dim}) input, got {X.shape}")
    return X @ C.pinv_t.T


def interpretable_rows(S) -> np.ndarray:
    """Per-row affine rescale into [0.5, 1]; the row maximum maps to exactly 1."""
    S = np.asarray(S, dtype=np.float64)
    lo = S.min(axis=1, keepdims=True)
    hi = S.max(axis=1, keepdims=True)
    span = hi - lo
    flat = span[:, 0] == 0
    span[flat] = 1.0
    out = ((S - lo) / span + 1.0) / 2.0
    # rounding can lift a near-maximal coordinate to 1; keep 1 for true maxima only
    out[(out >= 1.0) & (S < hi)] = np.nextafter(1.0, 0.0)
    out[S == hi] = 1.0
    out[flat] = 1.0
    return out


def l2_rows(S) -> np.ndarray:
    S = np.asarray(S, dtype=np.float64)
    norms = np.linalg.norm(S, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise ValueError("cannot L2-normalise a zero syntactic representation")
    return S / norms


def normalize_interpretable(s: SyntacticRepr) -> SyntacticRepr:
    return SyntacticRepr(interpretable_rows(s.coords[None, :])[0], Variant.INTERPRETABLE)


def normalize_l2(s: SyntacticRepr) -> SyntacticRepr:
    return SyntacticRepr(l2_rows(s.coords[None, :])[0], Variant.L2)


def apply_variant(S, variant) -> np.ndarray:
    variant = Variant(variant)
    if variant is Variant.ABSOLUTE:
        return np.asarray(S, dtype=np.float64)
    if variant is Variant.INTERPRETABLE:
        return interpretable_rows(S)
    return l2_rows(S)


def project_all(
    m: VectorTable,
    C: TransitionMatrix,
    variant=Variant.ABSOLUTE,
    restrict_to: Iterable[str] | None = None,
    chunk_size: int = 65536,
) -> VectorTable:
    """Syntactic representations for every word of ``m`` (or of ``m`` and ``restrict_to``)."""
    variant = Variant(variant)
    if restrict_to is not None:
        m = m.subset(restrict_to)
    out = np.empty((len(m), N_CLASSES))
    for start in range(0, len(m), chunk_size):
        block = project_rows(m.data[start : start + chunk_size], C)
        out[start : start + chunk_size] = apply_variant(block, variant)
    return VectorTable(m.vocab, out, meta={"variant": variant.value})


class SyntacticTransformer(TransformerMixin, BaseEstimator):
    """Map word vectors to 8 part-of-speech coordinates.

    ``fit(X, y)`` takes example word vectors ``X`` with their class index
    ``y`` (0..7, canonical order; repeated rows count with multiplicity)
    and builds the transition matrix. ``transform`` projects new vectors.

    Parameters
    ----------
    variant : {"absolute", "interpretable", "l2"}
        Normalisation applied to the projected coordinates.
    denominator : {"class", "vocab"}
        Divide each class sum by the class size (mean) or by ``vocab_size``.
    vocab_size : int, optional
        Required when ``denominator="vocab"``.
    """

    def __init__(self, variant="absolute", denominator="class", vocab_size=None):
        self.variant = variant
        self.denominator = denominator
        self.vocab_size = vocab_size

    def fit(self, X, y):
        return self._fit(X, y, self.vocab_size)

    def _fit(self, X, y, vocab_size):
        X = check_array(X, dtype=np.float64)
        y = np.asarray(y)
        if y.dtype.kind in "US":
            y = np.array([POS_CLASSES.index(v) for v in y])
        y = y.astype(int)
        if len(y) != len(X):
            raise ValueError("X and y have different lengths")
        if y.min() < 0 or y.max() >= N_CLASSES:
            raise ValueError(f"class labels must lie in 0..{N_CLASSES - 1}")
        Variant(self.variant)
        rows, counts = _class_means(X, y, N_CLASSES, self.denominator, vocab_size)
        self.transition_ = transition_from_rows(rows, counts, self.denominator)
        self.n_features_in_ = X.shape[1]
        return self

    def fit_lexicon(self, m: VectorTable, lex: PosLexicon):
        """Fit from an embedding table and an (intersected) lexicon."""
        words, labels = lex.to_training_pairs()
        vocab_size = self.vocab_size if self.vocab_size is not None else len(m)
        return self._fit(m.data[[m.index[w] for w in words]], labels, vocab_size)

    def transform(self, X):
        check_is_fitted(self, "transition_")
        X = check_array(X, dtype=np.float64)
        return apply_variant(project_rows(X, self.transition_), self.variant)

    def get_feature_names_out(self, input_features=None):
        return np.array(POS_CLASSES, dtype=object)
