from __future__ import annotations

import logging
from typing import Mapping

import numpy as np

from sentilex.dictionary.utils import resolve_graph_seeds
from sentilex.harvest.params import CorpusAlgorithm, CorpusParams
from sentilex.harvest.utils import RankedCandidates, classify_score
from sentilex.lexicon.exceptions import DegenerateSeedsError
from sentilex.lexicon.utils import Polarity, SeedSet
from sentilex.taxonomy.utils import TermGraph

logger = logging.getLogger(__name__)


def _arcs(graph: TermGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # both directions of every positive edge; antonym links carry no reach
    tails, heads, weights = [], [], []
    for u, v, w in graph.edges():
        if w <= 0:
            continue
        i, j = graph.index(u), graph.index(v)
        tails += [i, j]
        heads += [j, i]
        weights += [w, w]
    return np.array(tails, dtype=np.int64), np.array(heads, dtype=np.int64), np.array(weights, dtype=np.float64)


def max_product_reach(graph: TermGraph, source: str, max_length: int, arcs=None) -> np.ndarray:
    """Best path-weight product from ``source`` to every node over at most ``max_length`` edges."""
    tails, heads, weights = arcs if arcs is not None else _arcs(graph)
    alpha = np.zeros(len(graph), dtype=np.float64)
    alpha[graph.index(source)] = 1.0
    for _ in range(max_length):
        relaxed = alpha.copy()
        np.maximum.at(relaxed, heads, alpha[tails] * weights)
        if np.array_equal(relaxed, alpha):
            break
        alpha = relaxed
    return alpha


def polarity_masses(
    graph: TermGraph,
    seed_map: Mapping[str, Polarity],
    max_length: int,
) -> tuple[np.ndarray, np.ndarray]:
    arcs = _arcs(graph)
    positive = np.zeros(len(graph), dtype=np.float64)
    negative = np.zeros(len(graph), dtype=np.float64)
    for term, polarity in sorted(seed_map.items()):
        if polarity == Polarity.POSITIVE:
            positive += max_product_reach(graph, term, max_length, arcs)
        elif polarity == Polarity.NEGATIVE:
            negative += max_product_reach(graph, term, max_length, arcs)
    return positive, negative


def velikovich(graph: TermGraph, seeds: SeedSet, params: CorpusParams | None = None) -> RankedCandidates:
    params = params or CorpusParams.for_algorithm(CorpusAlgorithm.VELIKOVICH)
    seed_map = resolve_graph_seeds(graph, seeds)
    positive, negative = polarity_masses(graph, seed_map, params.max_path_length)

    gamma = params.gamma
    if gamma is None:
        if negative.sum() == 0 or positive.sum() == 0:
            raise DegenerateSeedsError(
                "positive or negative seed mass is zero; pass gamma explicitly or add seeds of both polarities"
            )
        gamma = float(positive.sum() / negative.sum())
    logger.debug("velikovich: gamma=%.6f over %d nodes", gamma, len(graph))

    polarity_score = positive - gamma * negative
    candidates = [i for i, term in enumerate(graph.nodes) if term not in seed_map]
    top = max((abs(polarity_score[i]) for i in candidates), default=0.0)
    labels = {}
    for i in candidates:
        value = float(polarity_score[i] / top) if top > 0 else 0.0
        labels[graph.nodes[i]] = (classify_score(value, params.neutral_threshold), abs(value))
    return RankedCandidates.build(labels, seeds, provenance=params.describe())
