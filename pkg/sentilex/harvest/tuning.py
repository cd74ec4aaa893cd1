from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from sentilex.corpus.utils import TokenizedDocument
from sentilex.evaluation.service import evaluate_lexicon
from sentilex.evaluation.utils import GoldAnnotation
from sentilex.harvest.utils import RankedCandidates
from sentilex.lexicon.exceptions import ValidationError
from sentilex.lexicon.utils import Lexicon, SeedSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TuningResult:
    lexicon: Lexicon
    kept: int
    baseline_macro_f: float
    best_macro_f: float
    # (candidates added, dev macro-F) for every evaluated prefix, seeds only first
    trace: tuple[tuple[int, float], ...]


def tune_lexicon_size(
    candidates: RankedCandidates,
    seeds: SeedSet,
    dev_documents: Sequence[TokenizedDocument],
    dev_gold: Sequence[GoldAnnotation],
    step: int = 1,
) -> TuningResult:
    """Grow seeds + candidates block by block; stop at the first strict drop in dev macro-F."""
    if step < 1:
        raise ValidationError(f"step must be >= 1, got {step}")

    def score(limit: int) -> float:
        return evaluate_lexicon(candidates.with_seeds(seeds, limit), dev_documents, dev_gold).macro_f

    baseline = score(0)
    kept, best = 0, baseline
    trace = [(0, baseline)]
    for limit in range(step, len(candidates) + step, step):
        limit = min(limit, len(candidates))
        value = score(limit)
        trace.append((limit, value))
        if value < best:
            logger.info("dev macro-F dropped %.4f -> %.4f at %d candidate(s); stopping", best, value, limit)
            break
        kept, best = limit, value

    logger.info("Kept %d of %d candidate(s): dev macro-F %.4f (seeds only %.4f)", kept, len(candidates), best, baseline)
    lexicon = candidates.with_seeds(seeds, kept)
    return TuningResult(
        lexicon=lexicon.with_provenance(f"{lexicon.provenance}[:{kept}]"),
        kept=kept,
        baseline_macro_f=baseline,
        best_macro_f=best,
        trace=tuple(trace),
    )
