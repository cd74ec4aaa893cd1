from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from sentilex.lexicon.utils import Lexicon, LexiconEntry, Polarity, SeedSet, rank_key

logger = logging.getLogger(__name__)


def classify_score(value: float, threshold: float) -> Polarity:
    if abs(value) <= threshold:
        return Polarity.NEUTRAL
    return Polarity.POSITIVE if value > 0 else Polarity.NEGATIVE


@dataclass(frozen=True)
class RankedCandidates:
    """Polar, non-seed candidate terms, best first (score desc, term asc)."""

    entries: tuple[LexiconEntry, ...]
    provenance: str = ""

    @classmethod
    def build(
        cls,
        labels: Mapping[str, tuple[Polarity, float]],
        seeds: SeedSet | Iterable[str],
        provenance: str = "",
    ) -> "RankedCandidates":
        if isinstance(seeds, SeedSet):
            excluded = set(seeds.resolve(labels)) | seeds.literals()
        else:
            excluded = set(seeds)
        entries = [
            LexiconEntry(term, polarity, max(0.0, float(score)))
            for term, (polarity, score) in labels.items()
            if term not in excluded and Polarity(polarity).is_polar
        ]
        candidates = cls(entries=tuple(sorted(entries, key=rank_key)), provenance=provenance)
        counts = candidates.counts()
        logger.info(
            "%s: %d candidates (%d positive, %d negative)",
            provenance or "candidates",
            len(candidates),
            counts[Polarity.POSITIVE],
            counts[Polarity.NEGATIVE],
        )
        return candidates

    @classmethod
    def from_lexicon(cls, lexicon: Lexicon, seeds: SeedSet | None = None) -> "RankedCandidates":
        labels = {entry.term: (entry.polarity, entry.score) for entry in lexicon.entries.values()}
        return cls.build(labels, seeds if seeds is not None else (), provenance=lexicon.provenance)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[LexiconEntry]:
        return iter(self.entries)

    def counts(self) -> dict[Polarity, int]:
        out = {Polarity.POSITIVE: 0, Polarity.NEGATIVE: 0}
        for entry in self.entries:
            out[entry.polarity] += 1
        return out

    def terms(self, polarity: Polarity | None = None) -> list[str]:
        return [e.term for e in self.entries if polarity is None or e.polarity == polarity]

    def as_lexicon(self, limit: int | None = None) -> Lexicon:
        entries = self.entries if limit is None else self.entries[:limit]
        return Lexicon.from_entries(entries, provenance=self.provenance)

    def with_seeds(self, seeds: SeedSet, limit: int | None = None) -> Lexicon:
        """Seeds plus the first ``limit`` candidates; seed entries win on overlap."""
        combined = dict(seeds.as_lexicon().entries)
        for entry in self.entries if limit is None else self.entries[:limit]:
            combined.setdefault(entry.term, entry)
        label = f"{self.provenance}+seeds({seeds.name})" if seeds.name else f"{self.provenance}+seeds"
        return Lexicon(entries=combined, provenance=label)
