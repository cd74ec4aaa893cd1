from __future__ import annotations

import logging
from typing import Mapping

import networkx as nx

from sentilex.dictionary.params import DictAlgorithm, DictParams
from sentilex.dictionary.utils import build_lexicon, resolve_graph_seeds, seeded_component
from sentilex.lexicon.exceptions import InconsistentSeedsError
from sentilex.lexicon.utils import Lexicon, Polarity, SeedSet
from sentilex.taxonomy.utils import TermGraph

logger = logging.getLogger(__name__)

POS, NEG, NEU = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL

# Tuples never collide with term strings.
SOURCE = ("terminal", "source")
SINK = ("terminal", "sink")


def _add_capacity(flow_graph: nx.DiGraph, u, v, capacity: float):
    if flow_graph.has_edge(u, v):
        flow_graph[u][v]["capacity"] += capacity
    else:
        flow_graph.add_edge(u, v, capacity=capacity)


def cut_network(graph: TermGraph, seed_map: Mapping[str, Polarity], source_polarity: Polarity) -> nx.DiGraph:
    """Capacity network for one cut problem.

    Positive edges become capacities in both directions. Seeds of
    ``source_polarity`` hang off the source, every other seed off the sink,
    with no capacity attribute (unbounded). An antonym of a polar seed is
    tied to the terminal of the opposite polarity with capacity ``|w|``.
    """
    network = nx.DiGraph()
    network.add_nodes_from([SOURCE, SINK])
    network.add_nodes_from(graph.nodes)

    for u, v, w in graph.edges():
        if w > 0:
            _add_capacity(network, u, v, w)
            _add_capacity(network, v, u, w)

    for term, polarity in sorted(seed_map.items()):
        if polarity == source_polarity:
            network.add_edge(SOURCE, term)
        else:
            network.add_edge(term, SINK)

    for u, v, w in graph.edges():
        if w >= 0:
            continue
        for seed, other in ((u, v), (v, u)):
            polarity = seed_map.get(seed)
            if polarity is None or not polarity.is_polar or other in seed_map:
                continue
            if polarity.flipped() == source_polarity:
                _add_capacity(network, SOURCE, other, abs(w))
            else:
                _add_capacity(network, other, SINK, abs(w))
    return network


def min_cut_partition(
    graph: TermGraph,
    seed_map: Mapping[str, Polarity],
    source_polarity: Polarity,
) -> tuple[float, set[str]]:
    """``(cut value, terms on the source side)`` of one exact s-t minimum cut."""
    network = cut_network(graph, seed_map, source_polarity)
    try:
        cut_value, (source_side, _) = nx.minimum_cut(network, SOURCE, SINK)
    except nx.NetworkXUnbounded as e:
        raise InconsistentSeedsError(f"no finite cut separates the {source_polarity} seeds from the rest") from e
    return float(cut_value), {n for n in source_side if n != SOURCE}


def rao_mincut(graph: TermGraph, seeds: SeedSet, params: DictParams | None = None) -> Lexicon:
    params = params or DictParams.for_algorithm(DictAlgorithm.MINCUT)
    seed_map = resolve_graph_seeds(graph, seeds)

    value_pos, positive_side = min_cut_partition(graph, seed_map, POS)
    value_neg, negative_side = min_cut_partition(graph, seed_map, NEG)
    logger.debug("mincut values: positive %.6f, negative %.6f", value_pos, value_neg)

    labels = {}
    for term in sorted(seeded_component(graph, seed_map)):
        in_pos, in_neg = term in positive_side, term in negative_side
        if in_pos and not in_neg:
            polarity = POS
        elif in_neg and not in_pos:
            polarity = NEG
        else:
            polarity = NEU
        labels[term] = (polarity, 1.0)

    return build_lexicon(labels, seed_map, params.describe())
