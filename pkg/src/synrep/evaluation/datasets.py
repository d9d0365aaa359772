"""Benchmark dataset readers.

Expected layouts (all text is read as UTF-8, newsgroups and TREC as latin-1):

* 20 newsgroups: ``<root>/{train,test}/<group>/<message>`` or the stock
  ``20news-bydate-train`` / ``20news-bydate-test`` directories.
* TREC: ``<root>/train_5500.label`` and ``<root>/TREC_10.label`` with
  ``COARSE:fine question words`` lines.
* SST and NP bracketing: ``<root>/{train,dev,test}.tsv`` with
  ``label<TAB>text`` lines.
* Discriminative attributes: ``concept1,concept2,attribute,label`` lines,
  one file or a directory of ``*.txt``/``*.csv`` files.
* Word similarity: ``word1,word2,score`` (comma or tab separated).
"""
from __future__ import annotations

import logging
import math
import string
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)

NEWSGROUP_TASKS = {
    "sports": ("rec.sport.hockey", "rec.sport.baseball"),
    "religion": ("alt.atheism", "soc.religion.christian"),
    "computer": ("comp.sys.ibm.pc.hardware", "comp.sys.mac.hardware"),
}

# train/validation/test sizes of the published protocol, used for logging only
REFERENCE_SPLITS = {
    "sports": (957, 240, 796),
    "religion": (863, 216, 717),
    "computer": (934, 234, 777),
    "np": (1602, 179, 446),
    "trec": (4906, 546, 500),
    "sentiment": (6920, 872, 1821),
}

SPLITS = ("train", "validation", "test")

_PUNCT = string.punctuation + "‘’“”"


class DatasetError(ValueError):
    pass


def tokenize(text: str, lowercase: bool = False) -> list[str]:
    """Whitespace split, then strip surrounding punctuation from each token."""
    if lowercase:
        text = text.lower()
    out = []
    for piece in text.split():
        piece = piece.strip(_PUNCT)
        if piece:
            out.append(piece)
    return out


@dataclass
class LabeledTextDataset:
    name: str
    class_names: list[str]
    splits: dict[str, list[tuple[int, list[str]]]]
    skipped: int = 0

    def __post_init__(self):
        for split in SPLITS:
            self.splits.setdefault(split, [])
            for label, _ in self.splits[split]:
                if not 0 <= label < len(self.class_names):
                    raise DatasetError(f"{self.name}: label {label} outside class list")
        ref = REFERENCE_SPLITS.get(self.name)
        if ref is not None and ref != self.sizes():
            logger.info("%s: split sizes %s differ from reference %s", self.name, self.sizes(), ref)

    def sizes(self) -> tuple[int, int, int]:
        return tuple(len(self.splits[s]) for s in SPLITS)

    def texts(self, split: str) -> list[list[str]]:
        return [toks for _, toks in self.splits[split]]

    def labels(self, split: str) -> np.ndarray:
        return np.array([lab for lab, _ in self.splits[split]], dtype=int)

    def vocabulary(self) -> set[str]:
        return {t for s in SPLITS for _, toks in self.splits[s] for t in toks}


@dataclass
class SimilarityDataset:
    name: str
    pairs: list[tuple[str, str, float]] = field(default_factory=list)

    def __post_init__(self):
        if not self.pairs:
            raise DatasetError(f"{self.name}: no word pairs")
        if not all(math.isfinite(s) for _, _, s in self.pairs):
            raise DatasetError(f"{self.name}: non-finite similarity score")


@dataclass
class AttributeTriplets:
    triplets: list[tuple[str, str, str]]
    labels: np.ndarray


def carve_validation(items: list, fraction: float, seed: int) -> tuple[list, list]:
    """Hold out ``ceil(fraction * n)`` shuffled items as validation."""
    order = np.random.default_rng(seed).permutation(len(items))
    n_val = math.ceil(fraction * len(items))
    val = [items[i] for i in sorted(order[:n_val])]
    train = [items[i] for i in sorted(order[n_val:])]
    return train, val


def _require(path: Path, what: str) -> Path:
    if not path.exists():
        raise DatasetError(f"{what} not found at {path}")
    return path


# -- 20 newsgroups -----------------------------------------------------------


def strip_newsgroup_message(text: str) -> str:
    """Drop the header block and a trailing signature separated by a dash line."""
    _, sep, body = text.partition("\n\n")
    body = body if sep else text
    lines = body.strip().split("\n")
    for i in range(len(lines) - 1, -1, -1):
        if lines[i].strip().strip("-") == "":
            if i > 0:
                lines = lines[:i]
            break
    return "\n".join(lines)


def _newsgroup_split_dir(root: Path, split: str) -> Path:
    for name in (split, f"20news-bydate-{split}"):
        if (root / name).is_dir():
            return root / name
    raise DatasetError(f"20 newsgroups {split} directory not found under {root} (expected {root / split})")


def load_newsgroups(root, task: str, *, seed: int = 0, validation_fraction: float = 0.2,
                    lowercase: bool = False, strip: bool = True) -> LabeledTextDataset:
    if task not in NEWSGROUP_TASKS:
        raise DatasetError(f"unknown newsgroup task {task!r}")
    root = _require(Path(root), "20 newsgroups root")
    groups = NEWSGROUP_TASKS[task]
    loaded = {}
    for split in ("train", "test"):
        base = _newsgroup_split_dir(root, split)
        items = []
        for label, group in enumerate(groups):
            gdir = _require(base / group, f"newsgroup {group!r}")
            for f in sorted(gdir.iterdir(), key=lambda p: p.name):
                if not f.is_file():
                    continue
                text = f.read_text(encoding="latin-1")
                if strip:
                    text = strip_newsgroup_message(text)
                items.append((label, tokenize(text, lowercase)))
        loaded[split] = items
    train, val = carve_validation(loaded["train"], validation_fraction, seed)
    return LabeledTextDataset(task, list(groups), {"train": train, "validation": val, "test": loaded["test"]})


# -- TREC --------------------------------------------------------------------

TREC_CLASSES = ["ABBR", "DESC", "ENTY", "HUM", "LOC", "NUM"]


def _read_trec(path: Path, lowercase: bool) -> list[tuple[int, list[str]]]:
    items = []
    with open(path, encoding="latin-1") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            head, _, question = line.partition(" ")
            coarse = head.split(":", 1)[0]
            if coarse not in TREC_CLASSES:
                raise DatasetError(f"{path}:{lineno}: unknown TREC label {head!r}")
            items.append((TREC_CLASSES.index(coarse), tokenize(question, lowercase)))
    return items


def load_trec(root, *, seed: int = 0, validation_fraction: float = 0.1, lowercase: bool = False) -> LabeledTextDataset:
    root = _require(Path(root), "TREC root")

    def pick(*names):
        for n in names:
            if (root / n).is_file():
                return root / n
        raise DatasetError(f"TREC file not found under {root} (tried {', '.join(names)})")

    train_all = _read_trec(pick("train_5500.label", "train.label"), lowercase)
    test = _read_trec(pick("TREC_10.label", "test.label"), lowercase)
    train, val = carve_validation(train_all, validation_fraction, seed)
    return LabeledTextDataset("trec", list(TREC_CLASSES), {"train": train, "validation": val, "test": test})


# -- TSV tasks ---------------------------------------------------------------


def _read_tsv(path: Path) -> list[tuple[str, str]]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            label, sep, text = line.partition("\t")
            if not sep:
                raise DatasetError(f"{path}:{lineno}: expected label<TAB>text")
            if lineno == 1 and label.strip().lower() == "label":
                continue
            rows.append((label.strip(), text))
    return rows


def _tsv_split_files(root: Path, what: str) -> dict[str, Path]:
    root = _require(root, what)
    out = {}
    for split, names in {"train": ("train.tsv",), "validation": ("dev.tsv", "validation.tsv"),
                         "test": ("test.tsv",)}.items():
        for n in names:
            if (root / n).is_file():
                out[split] = root / n
                break
        else:
            raise DatasetError(f"{what}: missing {names[0]} under {root}")
    return out


def _sentiment_label(raw: str) -> int | None:
    """Binary polarity; 5-way labels drop the neutral middle class."""
    key = raw.lower()
    if key in ("negative", "neg"):
        return 0
    if key in ("positive", "pos"):
        return 1
    if key == "neutral":
        return None
    value = int(raw)
    if value in (0, 1):
        return value
    raise DatasetError(f"unexpected sentiment label {raw!r}")


def load_sst(root, *, lowercase: bool = False) -> LabeledTextDataset:
    files = _tsv_split_files(Path(root), "SST")
    raw = {s: _read_tsv(p) for s, p in files.items()}
    labels = {lab for rows in raw.values() for lab, _ in rows}
    five_way = bool(labels) and labels <= {"0", "1", "2", "3", "4"} and not labels <= {"0", "1"}
    splits, dropped = {}, 0
    for split, rows in raw.items():
        items = []
        for lab, text in rows:
            if five_way:
                v = int(lab)
                y = None if v == 2 else int(v > 2)
            else:
                y = _sentiment_label(lab)
            if y is None:
                dropped += 1
                continue
            items.append((y, tokenize(text, lowercase)))
        splits[split] = items
    if dropped:
        logger.info("SST: dropped %d neutral sentences", dropped)
    return LabeledTextDataset("sentiment", ["negative", "positive"], splits, skipped=dropped)


def load_np_bracketing(root, *, lowercase: bool = False) -> LabeledTextDataset:
    files = _tsv_split_files(Path(root), "NP bracketing")
    classes = ["left", "right"]
    splits, skipped = {}, 0
    for split, path in files.items():
        items = []
        for lab, text in _read_tsv(path):
            if lab.lower() not in classes:
                raise DatasetError(f"{path}: unknown bracketing label {lab!r}")
            toks = tokenize(text, lowercase)
            if len(toks) != 3:
                skipped += 1
                continue
            items.append((classes.index(lab.lower()), toks))
        splits[split] = items
    if skipped:
        logger.info("NP bracketing: skipped %d phrases that are not three tokens", skipped)
    return LabeledTextDataset("np", classes, splits, skipped=skipped)


# -- pair / triplet tasks ----------------------------------------------------


def load_discriminative(path) -> AttributeTriplets:
    path = _require(Path(path), "discriminative attributes data")
    files = sorted(p for p in path.iterdir() if p.suffix in (".txt", ".csv")) if path.is_dir() else [path]
    if not files:
        raise DatasetError(f"no .txt/.csv files in {path}")
    triplets, labels = [], []
    for f in files:
        with open(f, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                parts = [p.strip() for p in line.strip().split(",")]
                if parts == [""]:
                    continue
                if len(parts) != 4:
                    raise DatasetError(f"{f}:{lineno}: expected concept1,concept2,attribute,label")
                if parts[3] not in ("0", "1"):
                    if lineno == 1 and not parts[3].lstrip("-").isdigit():
                        continue
                    raise DatasetError(f"{f}:{lineno}: label must be 0 or 1, got {parts[3]!r}")
                labels.append(int(parts[3]))
                triplets.append(tuple(parts[:3]))
    return AttributeTriplets(triplets, np.array(labels, dtype=int))


def load_similarity(path, name: str | None = None) -> SimilarityDataset:
    path = _require(Path(path), "similarity dataset")
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            parts = line.split("\t") if "\t" in line else line.split(",")
            if len(parts) < 3:
                raise DatasetError(f"{path}:{lineno}: expected word1,word2,score")
            try:
                score = float(parts[2])
            except ValueError:
                if lineno == 1:
                    continue
                raise DatasetError(f"{path}:{lineno}: bad score {parts[2]!r}") from None
            pairs.append((parts[0].strip(), parts[1].strip(), score))
    return SimilarityDataset(name or path.stem, pairs)
