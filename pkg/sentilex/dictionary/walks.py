from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from sentilex.dictionary.params import DictAlgorithm, DictParams
from sentilex.dictionary.utils import build_lexicon, resolve_graph_seeds, seeded_component
from sentilex.lexicon.utils import Lexicon, Polarity, SeedSet
from sentilex.taxonomy.utils import TermGraph

logger = logging.getLogger(__name__)

POS, NEG, NEU = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL


@dataclass(frozen=True)
class WalkTable:
    """Padded per-node neighbour lists with cumulative |w| transition probabilities."""

    neighbors: np.ndarray
    cumulative: np.ndarray
    degree: np.ndarray

    @classmethod
    def from_graph(cls, graph: TermGraph) -> "WalkTable":
        n = len(graph)
        rows = [graph.neighbors(term) for term in graph.nodes]
        width = max((len(r) for r in rows), default=0) or 1
        neighbors = np.zeros((n, width), dtype=np.int64)
        cumulative = np.full((n, width), np.inf)
        degree = np.zeros(n, dtype=np.int64)
        for i, row in enumerate(rows):
            if not row:
                continue
            weights = np.array([abs(w) for _, w in row])
            cum = np.cumsum(weights / weights.sum())
            cum[-1] = 1.0
            neighbors[i, : len(row)] = [graph.index(v) for v, _ in row]
            cumulative[i, : len(row)] = cum
            degree[i] = len(row)
        return cls(neighbors=neighbors, cumulative=cumulative, degree=degree)


def mean_hitting_times(
    table: WalkTable,
    start: int,
    is_positive: np.ndarray,
    is_negative: np.ndarray,
    walks: int,
    max_length: int,
    rng: np.random.Generator,
) -> tuple[float, float]:
    """Mean steps until the first positive and the first negative seed hit.

    A walk stops at the first polar seed it reaches, whatever its class, or
    after ``max_length`` steps. A class the walk did not stop at counts as
    ``max_length``.
    """
    position = np.full(walks, start, dtype=np.int64)
    hit_pos = np.full(walks, float(max_length))
    hit_neg = np.full(walks, float(max_length))
    active = np.full(walks, table.degree[start] > 0)

    for step in range(1, max_length + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        current = position[idx]
        draws = rng.random(idx.size)
        choice = (table.cumulative[current] <= draws[:, None]).sum(axis=1)
        following = table.neighbors[current, choice]
        position[idx] = following

        stopped_pos = is_positive[following]
        stopped_neg = is_negative[following]
        hit_pos[idx[stopped_pos]] = step
        hit_neg[idx[stopped_neg]] = step
        active[idx] = ~(stopped_pos | stopped_neg)

    return float(hit_pos.mean()), float(hit_neg.mean())


def awadallah_radwan(graph: TermGraph, seeds: SeedSet, params: DictParams | None = None) -> Lexicon:
    params = params or DictParams.for_algorithm(DictAlgorithm.RANDOM_WALK)
    seed_map = resolve_graph_seeds(graph, seeds)
    rng = np.random.default_rng(params.rng_seed)
    table = WalkTable.from_graph(graph)

    is_positive = np.zeros(len(graph), dtype=bool)
    is_negative = np.zeros(len(graph), dtype=bool)
    for term, polarity in seed_map.items():
        if polarity == POS:
            is_positive[graph.index(term)] = True
        elif polarity == NEG:
            is_negative[graph.index(term)] = True

    labels: dict[str, tuple[Polarity, float]] = {}
    candidates = sorted(seeded_component(graph, seed_map) - set(seed_map))
    for term in candidates:
        h_pos, h_neg = mean_hitting_times(
            table,
            graph.index(term),
            is_positive,
            is_negative,
            params.walks_per_node,
            params.max_walk_length,
            rng,
        )
        difference = h_neg - h_pos
        if abs(difference) > params.threshold:
            polarity = POS if difference > 0 else NEG
        else:
            polarity = NEU
        labels[term] = (polarity, abs(difference) / params.max_walk_length)
    logger.debug("random walks from %d candidate terms", len(candidates))

    return build_lexicon(labels, seed_map, params.describe())
