"""Word-list size sweeps."""
from __future__ import annotations

import csv
from collections.abc import Callable, Iterable, Mapping

from ..lexicon import PosLexicon, sized_word_list


def size_sweep(
    run_task: Callable[[Mapping], float],
    sizes: Iterable[int],
    lexicon: PosLexicon,
    vecs_builder: Callable[[PosLexicon], Mapping],
) -> list[tuple[int, float]]:
    """Re-derive vectors from each resized lexicon and score them.

    ``vecs_builder`` turns a lexicon into a vector mapping (fresh subspace
    plus composition); ``run_task`` turns a vector mapping into a score.
    """
    sizes = list(sizes)
    if not sizes:
        raise ValueError("no word list sizes given")
    return [(n, float(run_task(vecs_builder(sized_word_list(lexicon, n))))) for n in sizes]


def write_sweep_csv(rows, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "accuracy"])
        for n, acc in rows:
            w.writerow([n, f"{acc:.6f}"])
