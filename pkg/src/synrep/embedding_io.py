"""Readers and writers for pretrained embedding files.

Two on-disk formats are supported:

* word2vec binary: an ASCII header ``"<count> <dim>\\n"`` followed by
  ``count`` records, each a token terminated by a space and ``dim``
  little-endian float32 values (an optional newline may precede a token).
* GloVe text: one ``token v1 v2 ...`` line per word, no header.

Tokens are kept verbatim (no case folding); phrases such as
``New_York`` stay as they are.
"""
from __future__ import annotations

import logging
import mmap
from collections.abc import Iterable
from pathlib import Path

import numpy as np

from .tables import VectorTable

logger = logging.getLogger(__name__)

_F32 = np.dtype("<f4")


class EmbeddingFormatError(ValueError):
    """Raised when an embedding file does not parse."""


class EmbeddingMatrix(VectorTable):
    """Pretrained vectors stored as float32, one row per token."""

    dtype = np.float32


def lookup(m: VectorTable, word: str) -> np.ndarray | None:
    """Exact-match row for ``word`` or ``None``."""
    return m.lookup(word)


def read_vocab_file(path) -> set[str]:
    with open(path, encoding="utf-8") as fh:
        return {line.rstrip("\n") for line in fh if line.strip()}


class _Collector:
    def __init__(self, restrict: set[str] | None, capacity: int | None = None, dim: int | None = None):
        self.restrict = restrict
        self.vocab: list[str] = []
        self.rows: list[np.ndarray] = []
        self.block = np.empty((capacity, dim), dtype=np.float32) if capacity is not None else None
        self.seen: set[str] = set()
        self.duplicates = 0

    def add(self, token: str, row: np.ndarray) -> None:
        if self.restrict is not None and token not in self.restrict:
            return
        if token in self.seen:
            self.duplicates += 1
            return
        self.seen.add(token)
        if self.block is not None:
            self.block[len(self.vocab)] = row
        else:
            self.rows.append(np.array(row, dtype=np.float32))
        self.vocab.append(token)

    def finish(self, dim: int, path) -> EmbeddingMatrix:
        if self.duplicates:
            logger.warning("%s: %d duplicate tokens ignored (first occurrence kept)", path, self.duplicates)
        if self.block is not None:
            data = self.block[: len(self.vocab)]
        elif self.rows:
            data = np.vstack(self.rows)
        else:
            data = np.zeros((0, dim), dtype=np.float32)
        bad = ~np.all(np.isfinite(data), axis=1) if data.size else np.zeros(0, bool)
        if bad.any():
            raise EmbeddingFormatError(
                f"{path}: non-finite values for token {self.vocab[int(np.argmax(bad))]!r}"
            )
        return EmbeddingMatrix(self.vocab, data, meta={"source": str(path)})


def load_word2vec_binary(path, vocab: Iterable[str] | None = None) -> EmbeddingMatrix:
    """Parse a word2vec binary file.

    ``vocab`` optionally restricts which tokens are kept, to cap memory.
    """
    restrict = set(vocab) if vocab is not None else None
    path = Path(path)
    with open(path, "rb") as fh:
        size = path.stat().st_size
        if size == 0:
            raise EmbeddingFormatError(f"{path}: empty file")
        buf = mmap.mmap(fh.fileno(), 0, access=mmap.ACCESS_READ)
        try:
            return _parse_word2vec(buf, size, path, restrict)
        finally:
            buf.close()


def _parse_word2vec(buf, size: int, path, restrict) -> EmbeddingMatrix:
    end = buf.find(b"\n")
    if end < 0:
        raise EmbeddingFormatError(f"{path}: missing header line")
    header = buf[:end].split()
    try:
        count, dim = (int(x) for x in header)
    except ValueError:
        raise EmbeddingFormatError(f"{path}: malformed header {bytes(buf[:end])!r}") from None
    if count < 0 or dim <= 0:
        raise EmbeddingFormatError(f"{path}: invalid header values count={count} dim={dim}")

    nbytes = dim * 4
    pos = end + 1
    out = _Collector(restrict, capacity=count if restrict is None else None, dim=dim)
    lossy = 0
    for rec in range(count):
        while pos < size and buf[pos : pos + 1] in (b"\n", b"\r"):
            pos += 1
        space = buf.find(b" ", pos)
        if space < 0:
            raise EmbeddingFormatError(
                f"{path}: truncated at byte offset {pos} (record {rec} of {count}, token unterminated)"
            )
        raw = buf[pos:space]
        try:
            token = raw.decode("utf-8")
        except UnicodeDecodeError:
            token = raw.decode("utf-8", errors="replace")
            lossy += 1
        start = space + 1
        if start + nbytes > size:
            raise EmbeddingFormatError(
                f"{path}: truncated at byte offset {size} (record {rec} of {count} needs "
                f"{nbytes} bytes from offset {start})"
            )
        row = np.frombuffer(buf[start : start + nbytes], dtype=_F32)
        out.add(token, row)
        pos = start + nbytes
    if buf[pos:size].strip():
        raise EmbeddingFormatError(
            f"{path}: header declares {count} records but data continues at byte offset {pos}"
        )
    if lossy:
        logger.warning("%s: %d tokens were not valid UTF-8 (decoded with replacement)", path, lossy)
    return out.finish(dim, path)


def load_glove_text(path, vocab: Iterable[str] | None = None) -> EmbeddingMatrix:
    """Parse a GloVe-style text file; the dimension comes from the first line."""
    restrict = set(vocab) if vocab is not None else None
    out = _Collector(restrict)
    dim = None
    with open(path, encoding="utf-8", errors="replace") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.rstrip("\n").rstrip("\r").split(" ")
            if parts == [""]:
                continue
            if dim is None:
                dim = len(parts) - 1
                if dim <= 0:
                    raise EmbeddingFormatError(f"{path}:{lineno}: no vector values on first line")
            elif len(parts) - 1 != dim:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: expected {dim} values, found {len(parts) - 1}"
                )
            try:
                row = np.array(parts[1:], dtype=np.float32)
            except ValueError as exc:
                raise EmbeddingFormatError(f"{path}:{lineno}: {exc}") from None
            out.add(parts[0], row)
    if dim is None:
        raise EmbeddingFormatError(f"{path}: empty file")
    return out.finish(dim, path)


def load_embeddings(path, fmt: str = "word2vec", vocab: Iterable[str] | None = None) -> EmbeddingMatrix:
    if fmt == "word2vec":
        return load_word2vec_binary(path, vocab)
    if fmt == "glove":
        return load_glove_text(path, vocab)
    raise ValueError(f"unknown embedding format {fmt!r} (expected 'word2vec' or 'glove')")


def save_word2vec_binary(m: VectorTable, path) -> None:
    data = np.ascontiguousarray(m.data, dtype=_F32)
    with open(path, "wb") as fh:
        fh.write(f"{len(m)} {m.dim}\n".encode("ascii"))
        for word, row in zip(m.vocab, data):
            fh.write(word.encode("utf-8") + b" ")
            fh.write(row.tobytes())
            fh.write(b"\n")


def save_glove_text(m: VectorTable, path) -> None:
    data = np.asarray(m.data, dtype=np.float32)
    with open(path, "w", encoding="utf-8") as fh:
        for word, row in zip(m.vocab, data):
            vals = " ".join(np.format_float_positional(x, unique=True, trim="-") for x in row)
            fh.write(f"{word} {vals}\n")
