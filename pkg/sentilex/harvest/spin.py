"""Mean-field spin relaxation over a co-occurrence graph merged with taxonomy links."""
from __future__ import annotations

import logging
from typing import Iterator, Mapping

import numpy as np
from scipy import sparse

from sentilex.dictionary.utils import resolve_graph_seeds
from sentilex.harvest.params import CorpusAlgorithm, CorpusParams
from sentilex.harvest.utils import RankedCandidates, classify_score
from sentilex.lexicon.utils import Polarity, SeedSet
from sentilex.taxonomy.utils import TermGraph

logger = logging.getLogger(__name__)

SPIN = {Polarity.POSITIVE: 1.0, Polarity.NEGATIVE: -1.0, Polarity.NEUTRAL: 0.0}


def normalized_couplings(graph: TermGraph) -> sparse.csr_array:
    """``w_ij / sqrt(d_i * d_j)`` with ``d`` the weighted degree over ``|w|``."""
    adjacency = graph.adjacency()
    degree = np.asarray(abs(adjacency).sum(axis=1)).ravel()
    inv_sqrt = np.zeros_like(degree)
    nonzero = degree > 0
    inv_sqrt[nonzero] = 1.0 / np.sqrt(degree[nonzero])
    scale = sparse.diags_array(inv_sqrt)
    return sparse.csr_array(scale @ adjacency @ scale)


def spin_iterates(
    graph: TermGraph,
    seed_map: Mapping[str, Polarity],
    beta: float,
    max_iterations: int,
) -> Iterator[tuple[np.ndarray, float]]:
    """Yield ``(x, max change)`` after every synchronous tanh update; seeds stay clamped."""
    couplings = normalized_couplings(graph)
    clamped = np.array(sorted(graph.index(t) for t in seed_map), dtype=np.int64)
    clamp_values = np.array([SPIN[seed_map[graph.nodes[i]]] for i in clamped], dtype=np.float64)

    x = np.zeros(len(graph), dtype=np.float64)
    x[clamped] = clamp_values
    for _ in range(max_iterations):
        updated = np.tanh(beta * (couplings @ x))
        updated[clamped] = clamp_values
        change = float(np.max(np.abs(updated - x))) if len(x) else 0.0
        x = updated
        yield x, change


def takamura_ising(graph: TermGraph, seeds: SeedSet, params: CorpusParams | None = None) -> RankedCandidates:
    params = params or CorpusParams.for_algorithm(CorpusAlgorithm.TAKAMURA)
    seed_map = resolve_graph_seeds(graph, seeds)

    x = np.array([SPIN[seed_map.get(t, Polarity.NEUTRAL)] for t in graph.nodes], dtype=np.float64)
    converged, iterations = False, 0
    for x, change in spin_iterates(graph, seed_map, params.beta, params.max_iterations):
        iterations += 1
        if change < params.tolerance:
            converged = True
            break
    if converged:
        logger.debug("spin model converged after %d iteration(s)", iterations)
    else:
        logger.warning(
            "spin model did not converge within %d iterations (beta=%s); keeping the last iterate",
            params.max_iterations,
            params.beta,
        )

    labels = {
        term: (classify_score(value, params.neutral_threshold), abs(value))
        for term, value in zip(graph.nodes, x.tolist())
    }
    return RankedCandidates.build(labels, seeds, provenance=params.describe())
