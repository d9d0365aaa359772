"""Synthetic embeddings, lexicons and datasets for smoke runs.

``python -m synrep.synthetic OUT_DIR`` writes a complete toy workspace
(embedding files, word lists, every benchmark dataset and a config file)
that the CLI can run end to end without downloads.
"""
from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from .embedding_io import EmbeddingMatrix, save_glove_text, save_word2vec_binary
from .lexicon import N_CLASSES, POS_CLASSES, PosLexicon, save_pos_lexicon


def positive_mixture_embedding(n_words: int = 500, dim: int = 40, seed: int = 0, noise: float = 0.05):
    """Words built as positive mixtures of 8 class directions plus small noise.

    Returns ``(embedding, lexicon, class_of_word)``. Every projected
    syntactic representation of these words has a positive mean.
    """
    rng = np.random.default_rng(seed)
    dirs = rng.normal(size=(N_CLASSES, dim))
    cls = np.arange(n_words) % N_CLASSES
    weights = rng.uniform(0.1, 0.4, size=(n_words, N_CLASSES))
    weights[np.arange(n_words), cls] += 1.0
    X = weights @ dirs + noise * rng.normal(size=(n_words, dim))
    vocab = [f"w{i:04d}" for i in range(n_words)]
    lex = PosLexicon(tuple(tuple(w for w, c in zip(vocab, cls) if c == k)[:20] for k in range(N_CLASSES)))
    return EmbeddingMatrix(vocab, X.astype(np.float32)), lex, cls


class World:
    """Toy vocabulary: POS-structured words plus topic words for classification tasks."""

    def __init__(self, n_words: int = 1000, dim: int = 32, seed: int = 0):
        self.rng = np.random.default_rng(seed)
        rng = self.rng
        self.dim = dim
        self.pos_dirs = rng.normal(size=(N_CLASSES, dim))
        self.vocab = [f"{POS_CLASSES[i % N_CLASSES][:3]}{i:04d}" for i in range(n_words)]
        self.pos = np.arange(n_words) % N_CLASSES
        strength = rng.uniform(0.5, 1.5, size=n_words)
        X = strength[:, None] * self.pos_dirs[self.pos] + 0.8 * rng.normal(size=(n_words, dim))
        self.X = X.astype(np.float32)
        self.index = {w: i for i, w in enumerate(self.vocab)}

    def embedding(self) -> EmbeddingMatrix:
        return EmbeddingMatrix(self.vocab, self.X)

    def words_of(self, k: int) -> list[str]:
        return [w for w, p in zip(self.vocab, self.pos) if p == k]

    def nearest_words(self, center: np.ndarray, candidates: list[str], n: int) -> list[str]:
        C = self.X[[self.index[w] for w in candidates]]
        order = np.argsort(np.linalg.norm(C - center, axis=1), kind="stable")
        return [candidates[i] for i in order[:n]]


def _doc(rng, pools, label, length, shared):
    words = list(rng.choice(pools[label], size=length // 2)) + list(rng.choice(shared, size=length - length // 2))
    rng.shuffle(words)
    return " ".join(words)


def write_world(out_dir, n_words: int = 1000, dim: int = 32, seed: int = 0) -> Path:
    """Materialise a synthetic workspace under ``out_dir``; returns the config path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    world = World(n_words, dim, seed)
    rng = np.random.default_rng(seed + 1)
    emb = world.embedding()
    save_word2vec_binary(emb, out / "vectors.bin")
    save_glove_text(emb, out / "vectors.txt")

    lex_words = {name: world.words_of(k)[:30] for k, name in enumerate(POS_CLASSES)}
    save_pos_lexicon(PosLexicon.from_dict(lex_words), out / "lexicon")

    nouns = world.words_of(0)
    shared = world.words_of(1) + world.words_of(4)
    data = out / "data"

    # newsgroups: two topic pools per task, drawn from distinct noun clusters
    groups = {
        "sports": ("rec.sport.hockey", "rec.sport.baseball"),
        "religion": ("alt.atheism", "soc.religion.christian"),
        "computer": ("comp.sys.ibm.pc.hardware", "comp.sys.mac.hardware"),
    }
    for t, (g0, g1) in enumerate(groups.values()):
        pools = [nouns[(2 * t) * 10 : (2 * t) * 10 + 10], nouns[(2 * t + 1) * 10 : (2 * t + 1) * 10 + 10]]
        for split, n_docs in (("train", 40), ("test", 20)):
            for label, g in enumerate((g0, g1)):
                d = data / "20news" / split / g
                d.mkdir(parents=True, exist_ok=True)
                for i in range(n_docs):
                    body = _doc(rng, pools, label, 12, shared)
                    (d / f"{i:05d}").write_text(f"From: someone\nSubject: s{i}\n\n{body}\n-- \nsig line\n", encoding="latin-1")

    # TREC: six coarse classes
    trec_pools = [nouns[60 + 6 * k : 66 + 6 * k] for k in range(6)]
    labels = ["ABBR:abb", "DESC:def", "ENTY:other", "HUM:ind", "LOC:city", "NUM:count"]
    (data / "trec").mkdir(parents=True, exist_ok=True)
    for fname, n in (("train_5500.label", 120), ("TREC_10.label", 30)):
        with open(data / "trec" / fname, "w", encoding="latin-1") as fh:
            for i in range(n):
                k = i % 6
                fh.write(f"{labels[k]} {_doc(rng, trec_pools, k, 8, shared)} ?\n")

    # SST: 5-way labels, neutral (2) dropped on load
    sent_pools = [world.words_of(2)[:15], world.words_of(2)[15:30]]
    (data / "sst").mkdir(parents=True, exist_ok=True)
    for fname, n in (("train.tsv", 100), ("dev.tsv", 30), ("test.tsv", 40)):
        with open(data / "sst" / fname, "w", encoding="utf-8") as fh:
            for i in range(n):
                lab = [0, 1, 2, 3, 4][i % 5]
                side = 0 if lab < 2 else 1
                fh.write(f"{lab}\t{_doc(rng, sent_pools, side, 10, shared)}\n")

    # NP bracketing: left if the first word is an adjective, right otherwise
    adjs, advs = world.words_of(2), world.words_of(3)
    (data / "np").mkdir(parents=True, exist_ok=True)
    for fname, n in (("train.tsv", 80), ("dev.tsv", 20), ("test.tsv", 30)):
        with open(data / "np" / fname, "w", encoding="utf-8") as fh:
            for i in range(n):
                left = i % 2 == 0
                first = rng.choice(adjs if left else advs)
                fh.write(f"{'left' if left else 'right'}\t{first} {rng.choice(nouns)} {rng.choice(nouns)}\n")
            fh.write("left\ttoo short\n")

    # discriminative attributes: attribute close to concept1 for positives
    (data / "semeval").mkdir(parents=True, exist_ok=True)
    with open(data / "semeval" / "all.txt", "w", encoding="utf-8") as fh:
        for i in range(200):
            c1, c2 = rng.choice(nouns, size=2, replace=False)
            positive = i % 2 == 0
            center = world.X[world.index[c1 if positive else c2]]
            attr = world.nearest_words(center, [w for w in nouns if w not in (c1, c2)], 1)[0]
            fh.write(f"{c1},{c2},{attr},{int(positive)}\n")
        fh.write("unknownword,otherword,nothing,1\n")

    # similarity: human score = negative distance with noise, plus OOV rows
    (data / "similarity").mkdir(parents=True, exist_ok=True)
    for name in ("toysim", "toyrel"):
        with open(data / "similarity" / f"{name}.csv", "w", encoding="utf-8") as fh:
            fh.write("word1,word2,score\n")
            for _ in range(150):
                a, b = rng.choice(world.vocab, size=2, replace=False)
                va, vb = world.X[world.index[a]], world.X[world.index[b]]
                cos = float(va @ vb / (np.linalg.norm(va) * np.linalg.norm(vb)))
                fh.write(f"{a},{b},{5 + 5 * cos + rng.normal(scale=0.5):.3f}\n")
            fh.write("absent1,absent2,3.0\n")

    # oracles: 4-class WordNet style (some multi-label words) and a tagged corpus
    with open(out / "oracle.tsv", "w", encoding="utf-8") as fh:
        for i, (w, p) in enumerate(zip(world.vocab, world.pos)):
            if p < 4:
                extra = f",{POS_CLASSES[(p + 1) % 4]}" if i % 10 == 0 else ""
                fh.write(f"{w}\t{POS_CLASSES[p]}{extra}\n")
    penn = {0: "NN", 1: "VB", 2: "JJ", 3: "RB", 4: "PRP", 5: "CC", 6: "IN", 7: "UH"}
    with open(out / "tagged.tsv", "w", encoding="utf-8") as fh:
        for w, p in zip(world.vocab, world.pos):
            fh.write(f"{w}\t{penn[int(p)]}\n")
    with open(out / "sample.tsv", "w", encoding="utf-8") as fh:
        for k in range(N_CLASSES):
            for w in world.words_of(k)[:12]:
                fh.write(f"{w}\t{POS_CLASSES[k]}\n")

    config = out / "run.cfg"
    config.write_text(
        "\n".join(
            [
                "# synthetic workspace",
                f"embedding = {out / 'vectors.bin'}",
                "embedding_format = word2vec",
                "base_name = word2vec",
                f"lexicon_dir = {out / 'lexicon'}",
                f"data_dir = {data}",
                f"oracle = {out / 'oracle.tsv'}",
                f"tagged_corpus = {out / 'tagged.tsv'}",
                f"sample = {out / 'sample.tsv'}",
                f"output_dir = {out / 'out'}",
                "seed = 7",
                "runs = 5",
                "",
            ]
        ),
        encoding="utf-8",
    )
    return config


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out_dir")
    ap.add_argument("--words", type=int, default=1000)
    ap.add_argument("--dim", type=int, default=32)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    print(write_world(args.out_dir, args.words, args.dim, args.seed))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
