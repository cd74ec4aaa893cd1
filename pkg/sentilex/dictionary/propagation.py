"""Propagation-style dictionary induction over a signed term graph.

* breadth-first polarity spreading (``hu_liu``),
* signed adjacency-matrix multiplication (``blair_goldensohn``),
* label propagation with clamped seeds (``rao_label_propagation``).
"""
from __future__ import annotations

import logging
from typing import Iterator

import numpy as np
from scipy import sparse

from sentilex.dictionary.params import DictAlgorithm, DictParams
from sentilex.dictionary.utils import build_lexicon, resolve_graph_seeds, seeded_component
from sentilex.lexicon.exceptions import NumericOverflowError
from sentilex.lexicon.utils import Lexicon, Polarity, SeedSet
from sentilex.taxonomy.utils import TermGraph

logger = logging.getLogger(__name__)

POS, NEG, NEU = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL

# Column order of label-propagation triples.
LABEL_COLUMNS = (POS, NEG, NEU)
_SWAP = [1, 0, 2]


def hu_liu(graph: TermGraph, seeds: SeedSet, params: DictParams | None = None) -> Lexicon:
    params = params or DictParams.for_algorithm(DictAlgorithm.HU_LIU)
    seed_map = resolve_graph_seeds(graph, seeds)

    labels: dict[str, tuple[Polarity, float]] = {term: (pol, 1.0) for term, pol in seed_map.items()}
    frontier = sorted(term for term, pol in seed_map.items() if pol.is_polar)

    for round_no in range(1, params.max_iterations + 1):
        proposals: dict[str, set[Polarity]] = {}
        for term in frontier:
            polarity = labels[term][0]
            for neighbor, weight in graph.neighbors(term):
                if neighbor in labels:
                    continue
                proposals.setdefault(neighbor, set()).add(polarity if weight > 0 else polarity.flipped())
        if not proposals:
            break

        score = 1.0 / (round_no + 1)
        frontier = []
        for term in sorted(proposals):
            found = proposals[term]
            if len(found) == 1:
                labels[term] = (found.pop(), score)
                frontier.append(term)
            else:
                # conflicting proposals settle as neutral and stop spreading
                labels[term] = (NEU, score)
        logger.debug("hu_liu round %d: %d new terms", round_no, len(proposals))

    return build_lexicon(labels, seed_map, params.describe())


def _seed_indices(graph: TermGraph, seed_map) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    def pick(polarity):
        return np.array(sorted(graph.index(t) for t, p in seed_map.items() if p == polarity), dtype=np.int64)

    return pick(POS), pick(NEG), pick(NEU)


def blair_goldensohn_scores(graph: TermGraph, seed_map, iterations: int) -> np.ndarray:
    """Signed score vector after ``iterations`` multiplications with the adjacency matrix."""
    adjacency = graph.adjacency()
    pos_idx, neg_idx, neu_idx = _seed_indices(graph, seed_map)
    v = np.zeros(len(graph), dtype=np.float64)
    v[pos_idx] = 1.0
    v[neg_idx] = -1.0

    for step in range(1, iterations + 1):
        v = adjacency @ v
        v[neu_idx] = 0.0
        v[pos_idx] = np.abs(v[pos_idx])
        v[neg_idx] = -np.abs(v[neg_idx])
        if not np.all(np.isfinite(v)):
            raise NumericOverflowError(
                f"score vector overflowed at iteration {step}; rerun with fewer iterations (max_iterations < {step})"
            )
    return v


def blair_goldensohn(graph: TermGraph, seeds: SeedSet, params: DictParams | None = None) -> Lexicon:
    params = params or DictParams.for_algorithm(DictAlgorithm.BLAIR_GOLDENSOHN)
    seed_map = resolve_graph_seeds(graph, seeds)
    v = blair_goldensohn_scores(graph, seed_map, params.max_iterations)

    labels = {}
    for i in np.flatnonzero(v):
        value = float(v[i])
        magnitude = abs(value)
        if magnitude > params.threshold:
            polarity = POS if value > 0 else NEG
        else:
            polarity = NEU
        labels[graph.nodes[i]] = (polarity, float(np.log1p(magnitude)))
    for term in seed_map:
        labels.setdefault(term, (seed_map[term], float(np.log1p(abs(v[graph.index(term)])))))

    return build_lexicon(labels, seed_map, params.describe())


def _transition_parts(graph: TermGraph) -> tuple[sparse.csr_array, sparse.csr_array, np.ndarray]:
    adjacency = sparse.csr_array(graph.adjacency())
    degree = np.asarray(abs(adjacency).sum(axis=1)).ravel()
    inverse = np.divide(1.0, degree, out=np.zeros_like(degree), where=degree > 0)
    scale = sparse.diags_array(inverse)
    positive = sparse.csr_array(scale @ adjacency.maximum(0))
    negative = sparse.csr_array(scale @ (-adjacency).maximum(0))
    return positive, negative, degree


def _initial_labels(n: int, seed_rows: dict[int, Polarity]) -> np.ndarray:
    labels = np.full((n, 3), 1.0 / 3.0)
    for row, polarity in seed_rows.items():
        labels[row] = 0.0
        labels[row, LABEL_COLUMNS.index(polarity)] = 1.0
    return labels


def label_propagation_iterates(
    graph: TermGraph,
    seed_map,
    max_iterations: int,
    tolerance: float,
) -> Iterator[tuple[np.ndarray, float]]:
    """Yield ``(Y, max_row_change)`` after every update.

    ``Y`` holds one ``(positive, negative, neutral)`` distribution per node in
    ``graph.nodes`` order. Antonym edges pass the neighbour's triple with
    positive and negative mass swapped.
    """
    positive, negative, degree = _transition_parts(graph)
    seed_rows = {graph.index(term): pol for term, pol in seed_map.items()}
    isolated = degree == 0
    for row in sorted(seed_rows):
        if isolated[row]:
            logger.warning("seed %r has no edges and is excluded from propagation", graph.nodes[row])

    labels = _initial_labels(len(graph), seed_rows)
    clamped = labels[sorted(seed_rows)].copy() if seed_rows else None
    clamp_rows = sorted(seed_rows)

    for _ in range(max_iterations):
        updated = positive @ labels + negative @ labels[:, _SWAP]
        updated[isolated] = labels[isolated]
        if clamp_rows:
            updated[clamp_rows] = clamped
        change = float(np.max(np.abs(updated - labels))) if len(labels) else 0.0
        labels = updated
        yield labels, change
        if change < tolerance:
            return


def rao_label_propagation(graph: TermGraph, seeds: SeedSet, params: DictParams | None = None) -> Lexicon:
    params = params or DictParams.for_algorithm(DictAlgorithm.LABEL_PROPAGATION)
    seed_map = resolve_graph_seeds(graph, seeds)

    labels, change, iterations = _initial_labels(len(graph), {}), float("inf"), 0
    for labels, change in label_propagation_iterates(graph, seed_map, params.max_iterations, params.tolerance):
        iterations += 1
    if change >= params.tolerance:
        logger.warning(
            "label propagation stopped after %d iterations with max change %.3g (tolerance %.3g)",
            iterations,
            change,
            params.tolerance,
        )
    else:
        logger.debug("label propagation converged after %d iterations", iterations)

    out = {}
    for term in sorted(seeded_component(graph, seed_map)):
        triple = labels[graph.index(term)]
        order = np.argsort(-triple, kind="stable")
        best, runner_up = triple[order[0]], triple[order[1]]
        polarity = LABEL_COLUMNS[order[0]] if best - runner_up > params.threshold else NEU
        out[term] = (polarity, float(best))

    return build_lexicon(out, seed_map, params.describe())
