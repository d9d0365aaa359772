"""Word-indexed dense vector tables."""
from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Mapping

import numpy as np


class VectorTable(Mapping):
    """Ordered vocabulary plus a dense ``(V, D)`` matrix with O(1) lookup.

    Behaves as a read-only ``Mapping[str, ndarray]`` so any table can be
    handed to the evaluation runners directly.
    """

    dtype = np.float64

    def __init__(self, vocab: Iterable[str], data, meta: dict | None = None):
        vocab = list(vocab)
        data = np.asarray(data, dtype=self.dtype)
        if data.ndim == 1 and len(vocab) == 0:
            data = data.reshape(0, 0)
        if data.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got shape {data.shape}")
        if data.shape[0] != len(vocab):
            raise ValueError(
                f"row count {data.shape[0]} does not match vocabulary size {len(vocab)}"
            )
        index = {}
        for i, w in enumerate(vocab):
            if w in index:
                raise ValueError(f"duplicate token {w!r}")
            index[w] = i
        if data.size and not np.all(np.isfinite(data)):
            raise ValueError("table contains NaN or Inf entries")
        data.setflags(write=False)
        self.vocab = vocab
        self.data = data
        self.index = index
        self.meta = dict(meta or {})

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def lookup(self, word: str) -> np.ndarray | None:
        i = self.index.get(word)
        return None if i is None else self.data[i]

    def __getitem__(self, word: str) -> np.ndarray:
        return self.data[self.index[word]]

    def __contains__(self, word) -> bool:
        return word in self.index

    def __iter__(self) -> Iterator[str]:
        return iter(self.vocab)

    def __len__(self) -> int:
        return len(self.vocab)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(V={len(self)}, dim={self.dim if self.data.size else 0})"

    def subset(self, words: Iterable[str]) -> "VectorTable":
        """Rows for ``words`` that are present, in first-seen order."""
        seen = dict.fromkeys(w for w in words if w in self.index)
        keep = list(seen)
        rows = [self.index[w] for w in keep]
        data = self.data[rows] if rows else np.zeros((0, self.dim), dtype=self.dtype)
        return type(self)(keep, data, meta=self.meta)


def save_table_text(table: VectorTable, path, tag: str = "") -> None:
    """Write ``word<TAB>v1 v2 ...<TAB>tag`` lines (floats in repr precision)."""
    with open(path, "w", encoding="utf-8") as fh:
        for word, row in zip(table.vocab, table.data):
            values = " ".join(repr(float(x)) for x in row)
            fh.write(f"{word}\t{values}\t{tag}\n")


def load_table_text(path) -> tuple[VectorTable, str]:
    vocab, rows, tags = [], [], set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 tab-separated fields")
            vocab.append(parts[0])
            rows.append([float(x) for x in parts[1].split()])
            tags.add(parts[2])
    if len(tags) > 1:
        raise ValueError(f"{path}: mixed tags {sorted(tags)}")
    return VectorTable(vocab, rows), (tags.pop() if tags else "")


def save_table_npz(table: VectorTable, path, **meta) -> None:
    np.savez(
        path,
        vocab=np.array(table.vocab, dtype=object),
        data=np.asarray(table.data),
        meta=np.array(json.dumps({**table.meta, **meta}, sort_keys=True)),
    )


def load_table_npz(path) -> VectorTable:
    with np.load(path, allow_pickle=True) as f:
        vocab = [str(w) for w in f["vocab"]]
        meta = json.loads(str(f["meta"])) if "meta" in f else {}
        return VectorTable(vocab, f["data"], meta=meta)
