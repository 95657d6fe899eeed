"""Cosine-similarity zero-shot classification and its benchmark metric.

A class is represented by one or more prompt embeddings. An image is
scored against a class by the mean cosine similarity over the class's
prompts (every vector unit-norm, so dot products are cosines), and
predicted as the argmax class, ties broken deterministically toward the
lowest class index. The benchmark metric is macro accuracy: top-1
accuracy computed per class, then averaged over the K classes, so every
class weighs the same regardless of its test-set size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from zsspecies.embeddings import EmbeddingMatrix


class DimensionMismatch(ValueError):
    """Image and class-prompt embeddings disagree on dimensionality."""


def split_prompt_id(row_id: str) -> str:
    """Class id for a text-embedding row id of the form ``species_id#k``.

    Rows without the ``#k`` suffix count as single-prompt classes.
    """
    if "#" in row_id:
        base, suffix = row_id.rsplit("#", 1)
        if base and suffix.isdigit():
            return base
    return row_id


class ClassModel:
    """Immutable per-class prompt embeddings, ready for batch scoring.

    Internally the prompt rows are stacked grouped-by-class so per-class
    means reduce to one segmented sum over a single matrix product.
    Scores are computed in float64 for stable, platform-independent
    argmax behavior.
    """

    def __init__(self, classes: Sequence[str], prompt_stacks: Sequence[np.ndarray]):
        if len(classes) == 0:
            raise ValueError("a class model needs at least one class")
        if len(classes) != len(prompt_stacks):
            raise ValueError("one prompt stack per class required")
        if len(set(classes)) != len(classes):
            raise ValueError("class ids are not unique")
        dims = set()
        for cls_id, stack in zip(classes, prompt_stacks):
            stack = np.asarray(stack)
            if stack.ndim != 2 or stack.shape[0] == 0:
                raise ValueError(f"class {cls_id!r} needs >= 1 prompt embedding")
            dims.add(stack.shape[1])
        if len(dims) != 1:
            raise DimensionMismatch(f"classes disagree on dim: {sorted(dims)}")
        self.classes: tuple[str, ...] = tuple(classes)
        counts = np.array([np.asarray(s).shape[0] for s in prompt_stacks])
        self._starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
        self._counts = counts.astype(np.float64)
        self._prompts = np.vstack([np.asarray(s) for s in prompt_stacks]).astype(
            np.float64
        )

    @classmethod
    def from_embeddings(cls, matrix: EmbeddingMatrix) -> "ClassModel":
        """Group text-embedding rows into classes by their ``species_id#k`` ids,
        class order following first appearance in the manifest."""
        order: list[str] = []
        rows: dict[str, list[np.ndarray]] = {}
        for rid, row in zip(matrix.ids, matrix.vectors):
            cls_id = split_prompt_id(rid)
            if cls_id not in rows:
                rows[cls_id] = []
                order.append(cls_id)
            rows[cls_id].append(row)
        return cls(order, [np.vstack(rows[c]) for c in order])

    @property
    def dim(self) -> int:
        return int(self._prompts.shape[1])

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def score(self, image_emb: np.ndarray) -> np.ndarray:
        """Mean cosine similarity of one image against each class."""
        image_emb = np.asarray(image_emb, dtype=np.float64)
        if image_emb.ndim != 1 or image_emb.shape[0] != self.dim:
            raise DimensionMismatch(
                f"image embedding has shape {image_emb.shape}, model dim is {self.dim}"
            )
        sims = self._prompts @ image_emb
        return np.add.reduceat(sims, self._starts) / self._counts

    def score_batch(self, images: np.ndarray) -> np.ndarray:
        """(N, K) score matrix for N images at once."""
        images = np.asarray(images, dtype=np.float64)
        if images.ndim != 2 or images.shape[1] != self.dim:
            raise DimensionMismatch(
                f"image batch has shape {images.shape}, model dim is {self.dim}"
            )
        sims = images @ self._prompts.T
        return np.add.reduceat(sims, self._starts, axis=1) / self._counts

    def classify(self, image_emb: np.ndarray) -> str:
        return self.classes[int(np.argmax(self.score(image_emb)))]

    def classify_batch(self, images: np.ndarray) -> list[str]:
        picks = np.argmax(self.score_batch(images), axis=1)
        return [self.classes[int(i)] for i in picks]


@dataclass
class EvalReport:
    """Per-class accuracies and their macro average over K classes."""

    per_class: dict[str, float]
    macro_accuracy: float
    K: int
    per_type: dict[str, float] | None = None
    tallies: dict[str, tuple[int, int]] = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "macro_accuracy": self.macro_accuracy,
            "per_class": dict(self.per_class),
            "per_type": None if self.per_type is None else dict(self.per_type),
        }


def evaluate(
    predictions: Iterable[tuple[str, str]], classes: Sequence[str]
) -> EvalReport:
    """Macro accuracy from (true_id, predicted_id) pairs.

    Every class in ``classes`` must have at least one labeled example;
    the metric divides by K, so silently skipping an empty class would
    change what is being measured.
    """
    classes = list(classes)
    class_set = set(classes)
    correct = {c: 0 for c in classes}
    total = {c: 0 for c in classes}
    for true_id, pred_id in predictions:
        if true_id not in class_set:
            raise ValueError(f"true label {true_id!r} is not a benchmark class")
        total[true_id] += 1
        if pred_id == true_id:
            correct[true_id] += 1
    for c in classes:
        if total[c] == 0:
            raise ValueError(
                f"class {c!r} has no labeled examples; macro accuracy is undefined"
            )
    per_class = {c: correct[c] / total[c] for c in classes}
    macro = sum(per_class.values()) / len(classes)
    return EvalReport(
        per_class=per_class,
        macro_accuracy=macro,
        K=len(classes),
        tallies={c: (correct[c], total[c]) for c in classes},
    )


def breakdown_by_type(
    report: EvalReport | Mapping[str, float],
    types: Mapping[str, str | None],
) -> dict[str, float]:
    """Mean of per-class accuracies within each organism type.

    Consistent with the macro metric: classes weigh equally inside their
    type. Every class must carry a type tag.
    """
    per_class = report.per_class if isinstance(report, EvalReport) else report
    grouped: dict[str, list[float]] = {}
    for cls_id, acc in per_class.items():
        organism_type = types.get(cls_id)
        if not organism_type:
            raise ValueError(f"class {cls_id!r} has no organism type")
        grouped.setdefault(organism_type, []).append(acc)
    return {t: sum(vals) / len(vals) for t, vals in sorted(grouped.items())}


def report_to_json(report: EvalReport, extra: Mapping[str, object] | None = None) -> str:
    """Canonical report serialization: sorted keys, no timestamps, so
    identical inputs dump byte-identical JSON. ``extra`` adds run metadata
    (e.g. strategy and dataset labels) next to the metric keys."""
    payload = report.to_dict()
    if extra:
        payload.update(extra)
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
