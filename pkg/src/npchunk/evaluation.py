"""Chunk-level scoring: accuracy, precision, recall, F-beta."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .corpus import ChunkSpan
from .representation import SchemeError, TagSequence


def f_measure(precision: float, recall: float, beta: float = 1.0) -> float:
    """F_beta = (1 + beta^2) * P * R / (beta^2 * P + R); 0 when P + R = 0."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    denominator = beta * beta * precision + recall
    if denominator == 0.0:
        return 0.0
    return (1.0 + beta * beta) * precision * recall / denominator


@dataclass(frozen=True)
class ChunkScore:
    """Aggregate counts over a test corpus; rates derive from the counts.

    ``accuracy`` is tag-level and only defined for complete schemes (the
    bracket combinations have no single tag sequence to compare).
    """

    found: int
    correct: int
    gold: int
    beta: float = 1.0
    accuracy: float | None = None

    def __post_init__(self):
        if self.correct > self.found or self.correct > self.gold:
            raise ValueError("correct count exceeds found or gold count")

    @property
    def precision(self) -> float:
        return self.correct / self.found if self.found else 0.0

    @property
    def recall(self) -> float:
        return self.correct / self.gold if self.gold else 0.0

    @property
    def f_beta(self) -> float:
        return f_measure(self.precision, self.recall, self.beta)

    def with_accuracy(self, accuracy: float | None) -> "ChunkScore":
        return replace(self, accuracy=accuracy)


def score_chunks(
    gold: Sequence[Iterable[ChunkSpan]],
    pred: Sequence[Iterable[ChunkSpan]],
    beta: float = 1.0,
) -> ChunkScore:
    """Score predicted spans against gold spans, sentence by sentence.

    A predicted span is correct iff a gold span with the same (start,
    end) exists in the same sentence.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    if len(gold) != len(pred):
        raise ValueError(
            f"gold has {len(gold)} sentences but predictions have {len(pred)}"
        )
    found = correct = total_gold = 0
    for gold_spans, pred_spans in zip(gold, pred):
        gold_set = set(gold_spans)
        pred_set = set(pred_spans)
        found += len(pred_set)
        total_gold += len(gold_set)
        correct += len(gold_set & pred_set)
    if found == 0 and total_gold == 0:
        warnings.warn("scoring empty span sets: F defined as 0", stacklevel=2)
    return ChunkScore(found=found, correct=correct, gold=total_gold, beta=beta)


def score_tags(gold: Sequence[TagSequence], pred: Sequence[TagSequence]) -> float:
    """Fraction of positions whose tags agree; complete schemes only."""
    if len(gold) != len(pred):
        raise ValueError(
            f"gold has {len(gold)} sentences but predictions have {len(pred)}"
        )
    total = agree = 0
    for gold_seq, pred_seq in zip(gold, pred):
        if gold_seq.scheme is not pred_seq.scheme:
            raise ValueError(
                f"scheme mismatch: {gold_seq.scheme} vs {pred_seq.scheme}"
            )
        if not gold_seq.scheme.complete:
            raise SchemeError(
                f"tag accuracy is undefined for partial scheme {gold_seq.scheme}"
            )
        if len(gold_seq) != len(pred_seq):
            raise ValueError("tag sequences differ in length")
        total += len(gold_seq)
        agree += sum(g == p for g, p in zip(gold_seq.tags, pred_seq.tags))
    if total == 0:
        warnings.warn("scoring empty tag sequences: accuracy defined as 0", stacklevel=2)
        return 0.0
    return agree / total


def format_report(score: ChunkScore) -> str:
    """One stable, machine-parseable line per experiment.

    Percentages carry two decimals to match the conventional tables;
    accuracy prints as ``-`` when undefined.
    """
    accuracy = "-" if score.accuracy is None else f"{score.accuracy * 100:.2f}%"
    return (
        f"accuracy={accuracy} "
        f"precision={score.precision * 100:.2f}% "
        f"recall={score.recall * 100:.2f}% "
        f"f{score.beta:g}={score.f_beta * 100:.2f}"
    )


def format_cv_report(f_mean: float, f_std: float, beta: float = 1.0) -> str:
    """Cross-validation summary line, mirroring the ``F +- sigma`` shape."""
    return f"f{beta:g}_mean={f_mean * 100:.2f} f{beta:g}_std={f_std * 100:.2f}"
