"""Command line front-end.

Every subcommand reads an optional flat ``key = value`` config file
(``--config``); flags override file values. Exit codes: 0 success,
1 user error (bad flags, config or data), 2 internal error.
"""
from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .embedding_io import EmbeddingFormatError, load_embeddings, read_vocab_file
from .evaluation.datasets import DatasetError, load_discriminative, load_similarity
from .evaluation.report import EvalReport, _jsonable
from .evaluation.stats import significance_protocol
from .evaluation.sweep import size_sweep, write_sweep_csv
from .evaluation.tasks import (
    CLASSIFICATION_TASKS,
    load_task_dataset,
    run_classification,
    run_discriminative,
    run_word_similarity,
)
from .hierarchical import ComposedVectors, Kind, config_id
from .interpret import (
    conflate_tags,
    export_space_2d,
    load_oracle,
    load_tag_mapping,
    load_tagged_tsv,
    top_k_markdown,
    top_k_per_dimension,
    word_classification,
    write_metrics_json,
)
from .lexicon import LexiconError, PosLexicon, default_lexicon_dir, intersect, load_pos_lexicon, sized_word_list
from .linalg import condition_number, default_tolerance, format_condition, singular_values_streaming
from .syntax import DENOMINATORS, TransitionMatrix, Variant, build_transition_matrix, transition_from_rows
from .tables import save_table_npz, save_table_text

logger = logging.getLogger("synrep")

CACHE_ENV = "SYNREP_CACHE_DIR"
ALL_TASKS = CLASSIFICATION_TASKS + ("discriminative",)
COMMANDS = (
    "build-syntactic",
    "build-hierarchical",
    "eval",
    "similarity",
    "significance",
    "sweep",
    "interpret",
    "svd-report",
    "viz",
)
SEEDED = {"eval", "significance", "sweep"}


class ConfigError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid configuration:\n  - " + "\n  - ".join(self.problems))


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    embedding: str | None = None
    embedding_format: str = "word2vec"
    base_name: str = "word2vec"
    vocab_file: str | None = None
    lexicon_dir: str | None = None
    wordnet_words: str | None = None
    variant: str | None = None
    kind: str | None = None
    vectors: str | None = None
    denominator: str = "class"
    word_list_size: int | None = None
    tasks: list = field(default_factory=list)
    data_dir: str | None = None
    newsgroups_dir: str | None = None
    trec_dir: str | None = None
    sst_dir: str | None = None
    np_dir: str | None = None
    semeval_path: str | None = None
    similarity_dir: str | None = None
    lowercase: bool = False
    threshold: float = 0.0
    oracle: str | None = None
    oracle_source: str = "wordnet-4class"
    tagged_corpus: str | None = None
    tag_mapping: str | None = None
    sample: str | None = None
    top_k: int = 15
    seed: int | None = None
    runs: int = 100
    sizes: list = field(default_factory=lambda: [10, 50, 100, 200, 500])
    svd_configs: list = field(default_factory=lambda: ["overcomplete:absolute", "weighted:absolute"])
    output_dir: str = "out"

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


_LISTS = {"tasks", "sizes", "svd_configs"}
_INTS = {"word_list_size", "top_k", "seed", "runs"}
_FLOATS = {"threshold"}
_BOOLS = {"lowercase"}
_FIELDS = {f.name for f in dataclasses.fields(RunConfig)}


def _coerce(key: str, raw):
    if raw is None or isinstance(raw, (list, bool, int, float)) and not isinstance(raw, str):
        return raw
    text = str(raw).strip()
    if text.lower() in ("", "none", "null"):
        return [] if key in _LISTS else None
    if key in _LISTS:
        items = [x.strip() for x in text.replace(",", " ").split() if x.strip()]
        return [int(x) for x in items] if key == "sizes" else items
    if key in _INTS:
        return int(text)
    if key in _FLOATS:
        return float(text)
    if key in _BOOLS:
        if text.lower() in ("1", "true", "yes", "on"):
            return True
        if text.lower() in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"expected a boolean, got {text!r}")
    return text


def parse_config_file(path) -> dict:
    values, problems = {}, []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep:
                problems.append(f"{path}:{lineno}: expected key = value")
            elif key not in _FIELDS:
                problems.append(f"{path}:{lineno}: unknown key {key!r}")
            else:
                values[key] = value.strip()
    if problems:
        raise ConfigError(problems)
    return values


def _exists(path) -> bool:
    return path is not None and Path(path).exists()


def task_path(cfg: RunConfig, task: str) -> Path | None:
    explicit = {
        "sports": cfg.newsgroups_dir, "religion": cfg.newsgroups_dir, "computer": cfg.newsgroups_dir,
        "trec": cfg.trec_dir, "sentiment": cfg.sst_dir, "np": cfg.np_dir,
        "discriminative": cfg.semeval_path, "similarity": cfg.similarity_dir,
    }[task]
    if explicit:
        return Path(explicit)
    if not cfg.data_dir:
        return None
    sub = {"sports": "20news", "religion": "20news", "computer": "20news", "trec": "trec",
           "sentiment": "sst", "np": "np", "discriminative": "semeval", "similarity": "similarity"}[task]
    return Path(cfg.data_dir) / sub


def validate_config(file_values: dict, overrides: dict, command: str) -> RunConfig:
    """Merge file values with flag overrides and check everything at once."""
    problems = []
    merged = {}
    for source in (file_values, {k: v for k, v in overrides.items() if v is not None}):
        for key, raw in source.items():
            try:
                merged[key] = _coerce(key, raw)
            except ValueError as exc:
                problems.append(f"{key}: {exc}")
    cfg = RunConfig(**{k: v for k, v in merged.items() if k in _FIELDS})

    if command != "viz" or cfg.embedding is not None:
        if not cfg.embedding:
            problems.append("embedding: path is required")
        elif not _exists(cfg.embedding):
            problems.append(f"embedding: {cfg.embedding} does not exist")
    if cfg.embedding_format not in ("word2vec", "glove"):
        problems.append(f"embedding_format: {cfg.embedding_format!r} is not 'word2vec' or 'glove'")
    for key in ("vocab_file", "lexicon_dir", "wordnet_words", "tag_mapping"):
        value = getattr(cfg, key)
        if value is not None and not _exists(value):
            problems.append(f"{key}: {value} does not exist")
    if cfg.variant is not None and cfg.variant not in [v.value for v in Variant]:
        problems.append(f"variant: {cfg.variant!r} is not one of absolute, interpretable, l2")
    if cfg.kind is not None and cfg.kind not in [k.value for k in Kind]:
        problems.append(f"kind: {cfg.kind!r} is not one of overcomplete, weighted")
    if cfg.denominator not in DENOMINATORS:
        problems.append(f"denominator: {cfg.denominator!r} is not one of {', '.join(DENOMINATORS)}")
    if cfg.vectors is None:
        cfg.vectors = "hierarchical" if cfg.kind else ("syntactic" if cfg.variant and command == "eval" else "base")
    if cfg.vectors not in ("base", "syntactic", "hierarchical"):
        problems.append(f"vectors: {cfg.vectors!r} is not one of base, syntactic, hierarchical")
    if cfg.vectors == "base" and (cfg.kind or cfg.variant) and command in ("eval", "similarity"):
        problems.append("vectors = base contradicts kind/variant; drop them or choose hierarchical")
    if cfg.vectors == "hierarchical" and not cfg.kind:
        problems.append("vectors = hierarchical needs kind")
    if cfg.word_list_size is not None and cfg.word_list_size <= 0:
        problems.append("word_list_size must be positive")
    if command in SEEDED and cfg.seed is None:
        problems.append("seed is required for stochastic steps")
    if cfg.runs < 2:
        problems.append("runs must be at least 2")
    if any(n <= 0 for n in cfg.sizes):
        problems.append("sizes must all be positive")
    if cfg.top_k < 0:
        problems.append("top_k must be non-negative")

    unknown = [t for t in cfg.tasks if t not in ALL_TASKS]
    if unknown:
        problems.append(f"tasks: unknown {', '.join(unknown)} (choose from {', '.join(ALL_TASKS)})")
    if command in ("eval", "significance", "sweep") and not cfg.tasks:
        problems.append("tasks: at least one task is required")
    if command in ("significance", "sweep"):
        if cfg.kind is None:
            problems.append(f"{command}: kind is required (hierarchical vectors to compare)")
        bad = [t for t in cfg.tasks if t not in CLASSIFICATION_TASKS]
        if bad and command == "significance":
            problems.append(f"significance: {', '.join(bad)} has no train/test protocol")
    needed = list(cfg.tasks) if command in ("eval", "significance", "sweep") else []
    if command == "similarity":
        needed = ["similarity"]
    for t in needed:
        if t not in ALL_TASKS and t != "similarity":
            continue
        p = task_path(cfg, t)
        if p is None:
            problems.append(f"{t}: no data path (set data_dir or the task's *_dir key)")
        elif not p.exists():
            problems.append(f"{t}: data not found at {p}")
    if command == "interpret" and not (cfg.oracle or cfg.tagged_corpus):
        problems.append("interpret: oracle or tagged_corpus is required")
    for key in ("oracle", "tagged_corpus"):
        value = getattr(cfg, key)
        if value is not None and not _exists(value):
            problems.append(f"{key}: {value} does not exist")
    if command == "viz":
        if not cfg.sample:
            problems.append("viz: sample (word<TAB>label file) is required")
        elif not _exists(cfg.sample):
            problems.append(f"sample: {cfg.sample} does not exist")
    if cfg.variant is None:
        cfg.variant = "absolute"
    if problems:
        raise ConfigError(problems)
    return cfg


# -- shared pipeline pieces --------------------------------------------------


class Session:
    """Lazily loaded embedding, lexicon and transition matrix for one run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self._emb = None
        self._lex = None
        self._C = None
        self.out = Path(cfg.output_dir)
        self.out.mkdir(parents=True, exist_ok=True)

    @property
    def emb(self):
        if self._emb is None:
            vocab = read_vocab_file(self.cfg.vocab_file) if self.cfg.vocab_file else None
            self._emb = load_embeddings(self.cfg.embedding, self.cfg.embedding_format, vocab)
            logger.info("loaded %d x %d embedding from %s", len(self._emb), self._emb.dim, self.cfg.embedding)
        return self._emb

    def lexicon(self, size: int | None = None) -> PosLexicon:
        if self._lex is None:
            self._lex = intersect(load_pos_lexicon(self.cfg.lexicon_dir or default_lexicon_dir()), self.emb)
        return sized_word_list(self._lex, size) if size else self._lex

    def transition(self, size: int | None = None) -> TransitionMatrix:
        size = size if size is not None else self.cfg.word_list_size
        if size is None and self._C is not None:
            return self._C
        lex = self.lexicon(size)
        C = self._cached_transition(lex)
        if size is None:
            self._C = C
        return C

    def _cached_transition(self, lex: PosLexicon) -> TransitionMatrix:
        cache = os.environ.get(CACHE_ENV)
        if not cache:
            return build_transition_matrix(self.emb, lex, self.cfg.denominator)
        st = Path(self.cfg.embedding).stat()
        h = hashlib.sha256()
        h.update(f"{Path(self.cfg.embedding).resolve()}|{st.st_size}|{st.st_mtime_ns}|{self.cfg.vocab_file}|"
                 f"{self.cfg.denominator}".encode())
        for words in lex.classes:
            h.update("\x1f".join(words).encode() + b"\x1e")
        path = Path(cache) / f"transition-{h.hexdigest()[:20]}.npz"
        if path.exists():
            with np.load(path) as f:
                return transition_from_rows(f["rows"], tuple(int(c) for c in f["counts"]), self.cfg.denominator)
        C = build_transition_matrix(self.emb, lex, self.cfg.denominator)
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savez(path, rows=C.rows, counts=np.array(C.source_counts))
        return C

    def vectors(self, C: TransitionMatrix | None = None, vectors: str | None = None):
        vectors = vectors or self.cfg.vectors
        if vectors == "base":
            return self.emb
        C = C or self.transition()
        return ComposedVectors(self.emb, C, self.cfg.variant, self.cfg.kind if vectors == "hierarchical" else None)

    def vector_id(self, vectors: str | None = None) -> str:
        vectors = vectors or self.cfg.vectors
        if vectors == "base":
            return config_id(self.cfg.base_name)
        if vectors == "syntactic":
            return f"{config_id(self.cfg.base_name)}S^{Variant(self.cfg.variant).letter}"
        return config_id(self.cfg.base_name, self.cfg.kind, self.cfg.variant)

    def slug(self, vectors: str | None = None) -> str:
        return self.vector_id(vectors).replace("^", "")


def _load_classification(cfg: RunConfig, task: str):
    return load_task_dataset(task, task_path(cfg, task), seed=cfg.seed or 0, lowercase=cfg.lowercase)


def _score_task(cfg: RunConfig, task: str, vecs, dataset=None):
    if task == "discriminative":
        return run_discriminative(vecs, load_discriminative(task_path(cfg, task)), cfg.threshold)
    return run_classification(dataset or _load_classification(cfg, task), vecs)


def _restrict_words(cfg: RunConfig):
    return read_vocab_file(cfg.wordnet_words) if cfg.wordnet_words else None


def _write_json(path: Path, payload: dict) -> None:
    payload = {**payload, "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")


# -- subcommands -------------------------------------------------------------


def cmd_build_syntactic(s: Session) -> str:
    cfg = s.cfg
    cfg.vectors, cfg.kind = "syntactic", None
    vecs = s.vectors()
    words = _restrict_words(cfg)
    table = vecs.materialize(None if words is None else [w for w in s.emb.vocab if w in words])
    stem = s.out / f"syntactic_{cfg.variant}"
    save_table_text(table, stem.with_suffix(".tsv"), tag=cfg.variant)
    save_table_npz(table, stem.with_suffix(".npz"), variant=cfg.variant)
    C = s.transition()
    _write_json(stem.with_suffix(".json"), {
        "words": len(table), "variant": cfg.variant, "class_counts": dict(zip(s.lexicon().counts(), C.source_counts)),
        "dropped": dict(zip(s.lexicon().counts(), s.lexicon().dropped)), "config": cfg.to_dict(),
    })
    return f"build-syntactic: {len(table)} words -> {stem.with_suffix('.tsv')}"


def cmd_build_hierarchical(s: Session) -> str:
    cfg = s.cfg
    if cfg.kind is None:
        raise ConfigError(["build-hierarchical: kind is required"])
    cfg.vectors = "hierarchical"
    vecs = s.vectors()
    words = _restrict_words(cfg)
    table = vecs.materialize(None if words is None else [w for w in s.emb.vocab if w in words])
    stem = s.out / f"hierarchical_{s.slug()}"
    save_table_text(table, stem.with_suffix(".tsv"), tag=f"{cfg.kind}:{cfg.variant}")
    save_table_npz(table, stem.with_suffix(".npz"), kind=cfg.kind, variant=cfg.variant, base=cfg.base_name)
    return f"build-hierarchical: {s.vector_id()} {len(table)} x {table.dim} -> {stem.with_suffix('.tsv')}"


def cmd_eval(s: Session) -> str:
    cfg = s.cfg
    vecs = s.vectors()
    report = EvalReport(s.vector_id(), cfg.seed, config=cfg.to_dict())
    lines = []
    for task in cfg.tasks:
        res = _score_task(cfg, task, vecs)
        report.add(res)
        lines.append(f"{task}: {res.score:.2f}")
        print(f"{s.vector_id()} {task}: accuracy {res.score:.2f}% (model {res.model or 'cosine'})")
    stem = s.out / f"eval_{s.slug()}"
    report.write_json(stem.with_suffix(".json"))
    report.write_csv(stem.with_suffix(".csv"))
    return f"eval {s.vector_id()}: " + ", ".join(lines)


def cmd_similarity(s: Session) -> str:
    cfg = s.cfg
    vecs = s.vectors()
    root = task_path(cfg, "similarity")
    files = sorted(p for p in root.iterdir() if p.suffix in (".csv", ".txt", ".tsv")) if root.is_dir() else [root]
    if not files:
        raise DatasetError(f"no similarity files in {root}")
    report = EvalReport(s.vector_id(), cfg.seed or 0, config=cfg.to_dict())
    for f in files:
        res = run_word_similarity(load_similarity(f), vecs)
        report.add(res)
        print(f"{s.vector_id()} {res.task}: rho {res.score:.2f} ({res.details['pairs_used']}/{res.details['pairs_total']} pairs)")
    stem = s.out / f"similarity_{s.slug()}"
    report.write_json(stem.with_suffix(".json"))
    report.write_csv(stem.with_suffix(".csv"))
    return f"similarity {s.vector_id()}: {len(files)} datasets"


def cmd_significance(s: Session) -> str:
    cfg = s.cfg
    base = s.emb
    hier = s.vectors(vectors="hierarchical")
    rows = {}
    for task in cfg.tasks:
        row = significance_protocol(_load_classification(cfg, task), base, hier, k=cfg.runs, seed=cfg.seed)
        rows[task] = row.to_dict()
        print(f"{task}: base {row.base_mean:.2f}±{row.base_sd:.2f} vs {s.vector_id('hierarchical')} "
              f"{row.hier_mean:.2f}±{row.hier_sd:.2f}  t={row.t:.2f} p={row.p:.3f}")
    payload = {"base": s.vector_id("base"), "hierarchical": s.vector_id("hierarchical"), "runs": cfg.runs,
               "seed": cfg.seed, "tasks": rows, "config": cfg.to_dict()}
    _write_json(s.out / f"significance_{s.slug('hierarchical')}.json", payload)
    return f"significance: {len(rows)} tasks"


def cmd_sweep(s: Session) -> str:
    cfg = s.cfg
    out = []
    for task in cfg.tasks:
        dataset = None if task == "discriminative" else _load_classification(cfg, task)
        rows = size_sweep(
            lambda vecs: _score_task(cfg, task, vecs, dataset).score,
            cfg.sizes,
            s.lexicon(),
            lambda lex: ComposedVectors(s.emb, build_transition_matrix(s.emb, lex, cfg.denominator),
                                        cfg.variant, cfg.kind),
        )
        path = s.out / f"sweep_{task}_{s.slug('hierarchical')}.csv"
        write_sweep_csv(rows, path)
        _sweep_svg(rows, path.with_suffix(".svg"), f"{task} accuracy per word list size ({s.vector_id('hierarchical')})")
        for n, acc in rows:
            print(f"{task} n={n}: {acc:.2f}")
        out.append(task)
    return f"sweep: {', '.join(out)} over sizes {cfg.sizes}"


def _sweep_svg(rows, path, title):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "synrep"
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot([n for n, _ in rows], [a for _, a in rows], marker="o")
    ax.set_xlabel("word list size")
    ax.set_ylabel("accuracy (%)")
    ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def cmd_interpret(s: Session) -> str:
    cfg = s.cfg
    syn = ComposedVectors(s.emb, s.transition(), Variant.INTERPRETABLE)
    absolute = ComposedVectors(s.emb, s.transition(), Variant.ABSOLUTE)
    words = _restrict_words(cfg)
    summary = {"config": cfg.to_dict(), "vectors": s.vector_id("base")}
    parts = []
    if cfg.oracle:
        oracle = load_oracle(cfg.oracle, cfg.oracle_source)
        reps = syn.materialize([w for w in oracle.entries if w in s.emb])
        for mode in ("partial", "complete"):
            cm = word_classification(reps, oracle, mode)
            cm.write_csv(s.out / f"confusion_{mode}.csv")
            write_metrics_json(cm, s.out / f"classification_{mode}.json", mode=mode, source=oracle.source)
            summary[mode] = 100.0 * cm.accuracy
            print(f"word classification ({mode}): accuracy {100.0 * cm.accuracy:.2f}% over {cm.total} words")
            parts.append(f"{mode} {100.0 * cm.accuracy:.2f}%")
    if cfg.tagged_corpus:
        oracle8 = conflate_tags(load_tagged_tsv(cfg.tagged_corpus), load_tag_mapping(cfg.tag_mapping))
        reps = syn.materialize([w for w in oracle8.entries if w in s.emb])
        cm = word_classification(reps, oracle8, "complete")
        cm.write_csv(s.out / "confusion_eight_class.csv")
        write_metrics_json(cm, s.out / "classification_eight_class.json", class_counts=oracle8.class_counts())
        summary["eight_class"] = 100.0 * cm.accuracy
        print(f"eight-class classification: accuracy {100.0 * cm.accuracy:.2f}% over {cm.total} words")
        parts.append(f"eight-class {100.0 * cm.accuracy:.2f}%")
    table = absolute.materialize(None if words is None else [w for w in s.emb.vocab if w in words])
    top = top_k_per_dimension(table, cfg.top_k)
    (s.out / "top_words.md").write_text(top_k_markdown(top), encoding="utf-8")
    summary["top_words"] = dict(zip([c for c in s.lexicon().counts()], top))
    _write_json(s.out / "interpret.json", summary)
    return "interpret: " + ", ".join(parts + [f"top-{cfg.top_k} words written"])


def cmd_svd_report(s: Session) -> str:
    cfg = s.cfg
    entries = {}

    def record(name, blocks):
        S, n = singular_values_streaming(blocks)
        tol = default_tolerance((n, len(S)), S[0])
        cond = condition_number(S, tol)
        entries[name] = {"largest_singular_value": float(S[0]), "condition_number": format_condition(cond),
                         "condition_number_value": cond if np.isfinite(cond) else "inf", "rows": n, "dim": len(S)}
        print(f"{name}: largest singular value {S[0]:.2f}, condition number {format_condition(cond)}")

    emb = s.emb
    record(s.vector_id("base"), (emb.data[i : i + 65536] for i in range(0, len(emb), 65536)))
    for spec in cfg.svd_configs:
        kind, _, variant = spec.partition(":")
        vecs = ComposedVectors(emb, s.transition(), variant or "absolute", kind)
        record(config_id(cfg.base_name, kind, variant or "absolute"), vecs.iter_blocks(2048))
    _write_json(s.out / "svd_report.json", {"matrices": entries, "config": cfg.to_dict()})
    return f"svd-report: {len(entries)} matrices"


def cmd_viz(s: Session) -> str:
    cfg = s.cfg
    sample = []
    with open(cfg.sample, encoding="utf-8") as fh:
        for line in fh:
            word, _, label = line.rstrip("\n").partition("\t")
            if word and label:
                sample.append((word, label.split(",")[0].strip()))
    raw = export_space_2d(s.emb, sample, s.out / "space_raw", title=f"{s.vector_id('base')} embedding space")
    syn = ComposedVectors(s.emb, s.transition(), cfg.variant)
    transformed = export_space_2d(syn, sample, s.out / "space_syntactic", title=f"syntactic space ({cfg.variant})")
    _write_json(s.out / "space.json", {"raw": raw, "syntactic": transformed, "config": cfg.to_dict()})
    return (f"viz: {raw['points']} points, separation ratio raw {raw['separation_ratio']:.3f} "
            f"vs syntactic {transformed['separation_ratio']:.3f}")


HANDLERS = {
    "build-syntactic": cmd_build_syntactic,
    "build-hierarchical": cmd_build_hierarchical,
    "eval": cmd_eval,
    "similarity": cmd_similarity,
    "significance": cmd_significance,
    "sweep": cmd_sweep,
    "interpret": cmd_interpret,
    "svd-report": cmd_svd_report,
    "viz": cmd_viz,
}


# -- argument parsing --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--config", help="flat key = value config file")
    g.add_argument("--embedding")
    g.add_argument("--embedding-format", dest="embedding_format", choices=["word2vec", "glove"])
    g.add_argument("--base-name", dest="base_name", help="base vector name used in ids (word2vec, glove)")
    g.add_argument("--vocab-file", dest="vocab_file", help="restrict loading to these tokens")
    g.add_argument("--lexicon-dir", dest="lexicon_dir")
    g.add_argument("--wordnet-words", dest="wordnet_words", help="restrict outputs to these words")
    g.add_argument("--denominator", choices=list(DENOMINATORS))
    g.add_argument("--word-list-size", dest="word_list_size", type=int)
    g.add_argument("--data-dir", dest="data_dir")
    g.add_argument("--output-dir", dest="output_dir")
    g.add_argument("--seed", type=int)
    g.add_argument("--lowercase", action="store_const", const=True)
    g.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="synrep", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    variants = [v.value for v in Variant]
    kinds = [k.value for k in Kind]

    p = sub.add_parser("build-syntactic", parents=[common], help="write syntactic representations")
    p.add_argument("--variant", choices=variants)

    p = sub.add_parser("build-hierarchical", parents=[common], help="write hierarchical vectors")
    p.add_argument("--kind", choices=kinds)
    p.add_argument("--variant", choices=variants)
    p.add_argument("--base", dest="base_name")

    for name, helptext in (("eval", "downstream benchmark tasks"), ("similarity", "word similarity benchmarks")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--vectors", choices=["base", "syntactic", "hierarchical"])
        p.add_argument("--kind", choices=kinds)
        p.add_argument("--variant", choices=variants)
        if name == "eval":
            p.add_argument("--tasks", nargs="+")
            p.add_argument("--threshold", type=float)
        else:
            p.add_argument("--similarity-dir", dest="similarity_dir")

    p = sub.add_parser("significance", parents=[common], help="paired resampled t-test, base vs hierarchical")
    p.add_argument("--tasks", nargs="+")
    p.add_argument("--kind", choices=kinds)
    p.add_argument("--variant", choices=variants)
    p.add_argument("--runs", type=int)

    p = sub.add_parser("sweep", parents=[common], help="accuracy per word list size")
    p.add_argument("--tasks", nargs="+")
    p.add_argument("--kind", choices=kinds)
    p.add_argument("--variant", choices=variants)
    p.add_argument("--sizes", nargs="+", type=int)

    p = sub.add_parser("interpret", parents=[common], help="word classification and top words per dimension")
    p.add_argument("--oracle")
    p.add_argument("--oracle-source", dest="oracle_source", choices=["wordnet-4class", "conflated-8class"])
    p.add_argument("--tagged-corpus", dest="tagged_corpus")
    p.add_argument("--tag-mapping", dest="tag_mapping")
    p.add_argument("--top-k", dest="top_k", type=int)

    p = sub.add_parser("svd-report", parents=[common], help="largest singular value and condition number")
    p.add_argument("--svd-configs", dest="svd_configs", nargs="*", help="kind:variant pairs")

    p = sub.add_parser("viz", parents=[common], help="2-D PCA scatter of raw and syntactic spaces")
    p.add_argument("--sample", help="word<TAB>label file")
    p.add_argument("--variant", choices=variants)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage() + "synrep: error: a subcommand is required")
        overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config", "verbose")}
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        file_values = parse_config_file(args.config) if args.config else {}
        cfg = validate_config(file_values, overrides, args.command)
        print(HANDLERS[args.command](Session(cfg)))
        return 0
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (ConfigError, DatasetError, LexiconError, EmbeddingFormatError, FileNotFoundError) as exc:
        print(f"synrep: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        logger.debug("internal error", exc_info=True)
        print(f"synrep: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
