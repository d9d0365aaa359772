"""Part-of-speech word lists that span the syntactic subspace."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

logger = logging.getLogger(__name__)

# Coordinate order of every syntactic representation.
POS_CLASSES = (
    "noun",
    "verb",
    "adjective",
    "adverb",
    "pronoun",
    "conjunction",
    "preposition",
    "interjection",
)
N_CLASSES = len(POS_CLASSES)


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class PosLexicon:
    """Eight word lists in canonical order (duplicates allowed)."""

    classes: tuple[tuple[str, ...], ...]
    dropped: tuple[int, ...] = field(default=(0,) * N_CLASSES, compare=False)

    def __post_init__(self):
        if len(self.classes) != N_CLASSES:
            raise LexiconError(f"expected {N_CLASSES} classes, got {len(self.classes)}")
        object.__setattr__(self, "classes", tuple(tuple(c) for c in self.classes))

    @classmethod
    def from_dict(cls, words: dict[str, list[str]]) -> "PosLexicon":
        missing = [c for c in POS_CLASSES if c not in words]
        if missing:
            raise LexiconError(f"missing class: {', '.join(missing)}")
        return cls(tuple(tuple(words[c]) for c in POS_CLASSES))

    def __getitem__(self, name: str) -> tuple[str, ...]:
        return self.classes[POS_CLASSES.index(name)]

    def counts(self) -> dict[str, int]:
        return {name: len(words) for name, words in zip(POS_CLASSES, self.classes)}

    def words(self) -> set[str]:
        return {w for c in self.classes for w in c}

    def to_training_pairs(self) -> tuple[list[str], list[int]]:
        """Flatten to (word, class index) pairs, multiplicity preserved."""
        words, labels = [], []
        for i, cls_words in enumerate(self.classes):
            words.extend(cls_words)
            labels.extend([i] * len(cls_words))
        return words, labels


def load_pos_lexicon(directory) -> PosLexicon:
    """Read ``<class>.txt`` files (one token per line) from ``directory``."""
    directory = Path(directory)
    words = {}
    for name in POS_CLASSES:
        path = directory / f"{name}.txt"
        if not path.is_file():
            raise LexiconError(f"missing class: {name} (expected {path})")
        entries = _read_list(path)
        if not entries:
            raise LexiconError(f"empty class: {name} ({path})")
        words[name] = entries
    return PosLexicon.from_dict(words)


def _read_list(path) -> list[str]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            token = line.strip()
            if token and not token.startswith("#"):
                out.append(token)
    return out


def default_lexicon_dir() -> Path:
    """Directory of the word lists bundled with the package."""
    return Path(str(resources.files("synrep") / "data" / "lexicon"))


def save_pos_lexicon(lex: PosLexicon, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, words in zip(POS_CLASSES, lex.classes):
        (directory / f"{name}.txt").write_text("".join(w + "\n" for w in words), encoding="utf-8")


def intersect(lex: PosLexicon, vocab) -> PosLexicon:
    """Keep only words that have an embedding row in ``vocab``."""
    kept, dropped = [], []
    for name, words in zip(POS_CLASSES, lex.classes):
        keep = tuple(w for w in words if w in vocab)
        if not keep:
            raise LexiconError(f"class {name!r} has no words in the embedding vocabulary")
        kept.append(keep)
        dropped.append(len(words) - len(keep))
    if any(dropped):
        logger.info(
            "lexicon intersect dropped %s",
            ", ".join(f"{n}={d}" for n, d in zip(POS_CLASSES, dropped) if d),
        )
    return PosLexicon(tuple(kept), dropped=tuple(dropped))


def sized_word_list(lex: PosLexicon, n: int) -> PosLexicon:
    """Resize every class to exactly ``n`` entries.

    Takes the first ``n`` distinct words; short classes are then cycled
    from the start until they reach ``n``.
    """
    if n <= 0:
        raise LexiconError(f"word list size must be positive, got {n}")
    sized = []
    for name, words in zip(POS_CLASSES, lex.classes):
        distinct = list(dict.fromkeys(words))
        if not distinct:
            raise LexiconError(f"class {name!r} is empty")
        base = distinct[:n]
        sized.append(tuple(base[i % len(base)] for i in range(n)))
    return PosLexicon(tuple(sized))
