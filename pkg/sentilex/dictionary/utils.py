from __future__ import annotations

import logging
from typing import Mapping

from sentilex.lexicon.exceptions import EmptySeedError
from sentilex.lexicon.utils import Lexicon, LexiconEntry, Polarity, SeedSet
from sentilex.taxonomy.utils import TermGraph

logger = logging.getLogger(__name__)


def resolve_graph_seeds(graph: TermGraph, seeds: SeedSet) -> dict[str, Polarity]:
    """Seed terms present in ``graph`` mapped to their polarity.

    Literal seeds missing from the graph are skipped with a warning; at least
    one polar seed has to remain.
    """
    resolved = seeds.resolve(graph.nodes)
    absent = sorted(term for term in seeds.literals() if term not in graph)
    if absent:
        logger.warning("%d seed term(s) absent from the graph: %s", len(absent), ", ".join(absent))
    if not any(p.is_polar for p in resolved.values()):
        raise EmptySeedError(f"no positive or negative seed of {seeds.name or 'the seed set'} occurs in the graph")
    return resolved


def seeded_component(graph: TermGraph, seed_map: Mapping[str, Polarity]) -> set[str]:
    return graph.reachable_from(sorted(seed_map))


def build_lexicon(
    labels: Mapping[str, tuple[Polarity, float]],
    seed_map: Mapping[str, Polarity],
    provenance: str,
) -> Lexicon:
    """Assemble the output lexicon; seeds always keep their own polarity."""
    entries = {}
    for term, (polarity, score) in labels.items():
        if term in seed_map:
            polarity = seed_map[term]
        entries[term] = LexiconEntry(term, polarity, max(0.0, float(score)))
    for term, polarity in seed_map.items():
        if term not in entries:
            entries[term] = LexiconEntry(term, polarity, 1.0)
    lexicon = Lexicon(entries=entries, provenance=provenance)
    counts = lexicon.counts()
    logger.info(
        "%s: %d entries (%d positive, %d negative, %d neutral)",
        provenance,
        len(lexicon),
        counts[Polarity.POSITIVE],
        counts[Polarity.NEGATIVE],
        counts[Polarity.NEUTRAL],
    )
    return lexicon
