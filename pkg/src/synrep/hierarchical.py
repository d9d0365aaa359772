"""Composite vectors built from a syntactic representation and the original vector."""
from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .syntax import SyntacticRepr, SyntacticTransformer, TransitionMatrix, Variant, apply_variant, project_rows
from .tables import VectorTable

logger = logging.getLogger(__name__)


class Kind(str, Enum):
    OVERCOMPLETE = "overcomplete"
    WEIGHTED = "weighted"

    @property
    def letter(self) -> str:
        return "O" if self is Kind.OVERCOMPLETE else "W"


@dataclass(frozen=True)
class HierarchicalVector:
    kind: Kind
    data: np.ndarray
    provenance: dict = field(default_factory=dict)


def config_id(base: str, kind=None, variant=None) -> str:
    """Short name for a vector configuration, e.g. ``WO^A`` or ``G``."""
    letter = (base[:1] or "X").upper()
    if kind is None:
        return letter
    return f"{letter}{Kind(kind).letter}^{Variant(variant).letter}"


def overcomplete(s: SyntacticRepr, r) -> HierarchicalVector:
    r = np.asarray(r, dtype=np.float64)
    if r.ndim != 1 or r.size == 0:
        raise ValueError("original vector must be a non-empty 1-D array")
    return HierarchicalVector(Kind.OVERCOMPLETE, np.kron(s.coords, r), {"variant": s.variant.value})


def weighted(s: SyntacticRepr, r) -> HierarchicalVector:
    r = np.asarray(r, dtype=np.float64)
    if r.ndim != 1 or r.size == 0:
        raise ValueError("original vector must be a non-empty 1-D array")
    return HierarchicalVector(Kind.WEIGHTED, s.coords.mean() * r, {"variant": s.variant.value})


def compose_rows(S, R, kind) -> np.ndarray:
    """Row-wise composition of syntactic rows ``S`` (n x k) with originals ``R`` (n x L)."""
    S = np.asarray(S, dtype=np.float64)
    R = np.asarray(R, dtype=np.float64)
    if len(S) != len(R):
        raise ValueError("row count mismatch between syntactic and original vectors")
    if Kind(kind) is Kind.OVERCOMPLETE:
        return (S[:, :, None] * R[:, None, :]).reshape(len(S), -1)
    return S.mean(axis=1, keepdims=True) * R


def compose_all(reps: VectorTable, m: VectorTable, kind) -> VectorTable:
    """Compose every word of ``m`` that has a syntactic representation."""
    kind = Kind(kind)
    words = [w for w in m.vocab if w in reps]
    omitted = len(m) - len(words)
    if not words:
        raise ValueError("no words shared between the representations and the embedding")
    if omitted:
        logger.info("compose_all: %d words without a syntactic representation omitted", omitted)
    S = reps.data[[reps.index[w] for w in words]]
    R = m.data[[m.index[w] for w in words]]
    meta = {"kind": kind.value, "omitted": omitted, **{k: v for k, v in reps.meta.items() if k == "variant"}}
    return VectorTable(words, compose_rows(S, R, kind), meta=meta)


class ComposedVectors(Mapping):
    """Lazily computed hierarchical (or syntactic) vectors over an embedding.

    Avoids materialising ``V x 8L`` overcomplete matrices; rows are built
    on access. ``kind=None`` yields the syntactic representation itself.
    """

    def __init__(self, m: VectorTable, C: TransitionMatrix, variant, kind=None):
        self.m = m
        self.C = C
        self.variant = Variant(variant)
        self.kind = None if kind is None else Kind(kind)

    @property
    def dim(self) -> int:
        if self.kind is None:
            return self.C.rows.shape[0]
        return self.C.rows.shape[0] * self.m.dim if self.kind is Kind.OVERCOMPLETE else self.m.dim

    def rows(self, words) -> np.ndarray:
        R = np.asarray(self.m.data[[self.m.index[w] for w in words]], dtype=np.float64).reshape(len(words), self.m.dim)
        S = apply_variant(project_rows(R, self.C), self.variant) if len(words) else np.zeros((0, self.C.rows.shape[0]))
        if self.kind is None:
            return S
        return compose_rows(S, R, self.kind)

    def iter_blocks(self, chunk_size: int = 4096) -> Iterator[np.ndarray]:
        vocab = self.m.vocab
        for start in range(0, len(vocab), chunk_size):
            yield self.rows(vocab[start : start + chunk_size])

    def __getitem__(self, word):
        if word not in self.m:
            raise KeyError(word)
        return self.rows([word])[0]

    def __contains__(self, word) -> bool:
        return word in self.m

    def __iter__(self):
        return iter(self.m.vocab)

    def __len__(self) -> int:
        return len(self.m)

    def materialize(self, words=None) -> VectorTable:
        words = list(self.m.vocab if words is None else dict.fromkeys(w for w in words if w in self.m))
        return VectorTable(words, self.rows(words).reshape(len(words), self.dim))


class HierarchicalTransformer(TransformerMixin, BaseEstimator):
    """Syntactic projection followed by composition with the input vector.

    ``fit(X, y)`` has the same meaning as :class:`SyntacticTransformer`.
    Output width is ``8 * L`` for ``kind="overcomplete"`` and ``L`` for
    ``kind="weighted"``.
    """

    def __init__(self, kind="overcomplete", variant="absolute", denominator="class", vocab_size=None):
        self.kind = kind
        self.variant = variant
        self.denominator = denominator
        self.vocab_size = vocab_size

    def _syntactic(self):
        return SyntacticTransformer(self.variant, self.denominator, self.vocab_size)

    def fit(self, X, y):
        Kind(self.kind)
        self.syntactic_ = self._syntactic().fit(X, y)
        self.n_features_in_ = self.syntactic_.n_features_in_
        return self

    def fit_lexicon(self, m: VectorTable, lex):
        Kind(self.kind)
        self.syntactic_ = self._syntactic().fit_lexicon(m, lex)
        self.n_features_in_ = self.syntactic_.n_features_in_
        return self

    def transform(self, X):
        check_is_fitted(self, "syntactic_")
        X = check_array(X, dtype=np.float64)
        return compose_rows(self.syntactic_.transform(X), X, self.kind)
