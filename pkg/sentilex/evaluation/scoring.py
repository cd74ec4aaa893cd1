"""Span-exact polar scores plus token-level neutral and micro scores."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from sentilex.corpus.utils import TokenizedDocument
from sentilex.evaluation.utils import GoldAnnotation, MatchSpan, validate_gold
from sentilex.lexicon.exceptions import ValidationError
from sentilex.lexicon.utils import Polarity

logger = logging.getLogger(__name__)

POS, NEG, NEU = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL

SCORING_NOTE = (
    "positive/negative: exact span and polarity; "
    "neutral and micro: per token, tokens outside every polar span count as neutral"
)

_CODES = {NEU: 0, POS: 1, NEG: 2}


def safe_ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator else 0.0


def harmonic_mean(precision: float, recall: float) -> float:
    return 2 * precision * recall / (precision + recall) if precision + recall else 0.0


@dataclass(frozen=True)
class ClassScores:
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "ClassScores":
        precision, recall = safe_ratio(tp, tp + fp), safe_ratio(tp, tp + fn)
        return cls(precision, recall, harmonic_mean(precision, recall), tp, fp, fn)


@dataclass(frozen=True)
class EvalReport:
    positive: ClassScores
    negative: ClassScores
    neutral: ClassScores
    macro_f: float
    micro_f: float
    n_tokens: int
    gold_neutral_tokens: int
    predicted_neutral_tokens: int
    lexicon_size: int | None = None
    note: str = SCORING_NOTE


def _token_classes(spans, documents: dict[str, TokenizedDocument]) -> dict[str, np.ndarray]:
    classes = {doc_id: np.zeros(len(document), dtype=np.int8) for doc_id, document in documents.items()}
    for span in spans:
        if span.polarity.is_polar:
            classes[span.doc_id][span.start: span.end] = _CODES[span.polarity]
    return classes


def evaluate(
    matches: Sequence[MatchSpan],
    gold: Sequence[GoldAnnotation],
    documents: Iterable[TokenizedDocument],
    lexicon_size: int | None = None,
) -> EvalReport:
    documents = {document.doc_id: document for document in documents}
    validate_gold(gold, documents.values())
    for match in matches:
        document = documents.get(match.doc_id)
        if document is None or match.start < 0 or match.end > len(document) or match.end <= match.start:
            raise ValidationError(f"match {match.term!r} at {match.doc_id}[{match.start}:{match.end}] is out of bounds")

    gold_keys = {a.key for a in gold}
    polar = {}
    for polarity in (POS, NEG):
        predicted = {m.key for m in matches if m.polarity == polarity}
        expected = {key for key in gold_keys if key[3] == polarity}
        tp = len(predicted & expected)
        polar[polarity] = ClassScores.from_counts(tp, len(predicted) - tp, len(expected) - tp)

    gold_tokens = _token_classes(gold, documents)
    predicted_tokens = _token_classes(matches, documents)
    gold_all = np.concatenate([gold_tokens[d] for d in sorted(documents)]) if documents else np.zeros(0, np.int8)
    predicted_all = (
        np.concatenate([predicted_tokens[d] for d in sorted(documents)]) if documents else np.zeros(0, np.int8)
    )

    gold_neutral = gold_all == _CODES[NEU]
    predicted_neutral = predicted_all == _CODES[NEU]
    tp_neutral = int(np.sum(gold_neutral & predicted_neutral))
    neutral = ClassScores.from_counts(
        tp_neutral,
        int(predicted_neutral.sum()) - tp_neutral,
        int(gold_neutral.sum()) - tp_neutral,
    )

    # single-label tokens: pooled P = pooled R = accuracy
    micro = safe_ratio(int(np.sum(gold_all == predicted_all)), len(gold_all))
    report = EvalReport(
        positive=polar[POS],
        negative=polar[NEG],
        neutral=neutral,
        macro_f=(polar[POS].f1 + polar[NEG].f1 + neutral.f1) / 3,
        micro_f=micro,
        n_tokens=int(len(gold_all)),
        gold_neutral_tokens=int(gold_neutral.sum()),
        predicted_neutral_tokens=int(predicted_neutral.sum()),
        lexicon_size=lexicon_size,
    )
    logger.info("Evaluation: macro-F %.3f, micro-F %.3f over %d tokens", report.macro_f, report.micro_f, report.n_tokens)
    return report


def gold_as_matches(gold: Sequence[GoldAnnotation]) -> list[MatchSpan]:
    """The gold annotations as a match list (the perfect-lexicon oracle)."""
    return [MatchSpan(a.doc_id, a.start, a.end, a.polarity, a.surface or f"{a.doc_id}:{a.start}") for a in gold]
