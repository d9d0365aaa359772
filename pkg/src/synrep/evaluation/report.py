"""Evaluation report serialisation (JSON plus a flat CSV)."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .tasks import TaskResult


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):
        return obj.item()
    return obj


@dataclass
class EvalReport:
    vectors: str
    seed: int
    results: list[TaskResult] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def add(self, result: TaskResult) -> None:
        if result.metric == "accuracy" and not 0.0 <= result.score <= 100.0:
            raise ValueError(f"{result.task}: accuracy {result.score} outside [0, 100]")
        self.results.append(result)

    def to_dict(self, timestamp: bool = True) -> dict:
        d = {
            "vectors": self.vectors,
            "seed": self.seed,
            "tasks": {r.task: r.to_dict() for r in self.results},
            "config": self.config,
            **self.extra,
        }
        if timestamp:
            d["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return _jsonable(d)

    def write_json(self, path, timestamp: bool = True) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(timestamp), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["vectors", "task", "metric", "score", "model", "skipped"])
            for r in self.results:
                w.writerow([self.vectors, r.task, r.metric, f"{r.score:.4f}", r.model or "", r.skipped])
