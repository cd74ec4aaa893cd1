from __future__ import annotations

import logging
from collections import Counter
from typing import Sequence

import networkx as nx
from django.db import models

from sentilex.corpus.utils import (
    PMI_EPSILON,
    CorpusStats,
    TokenizedDocument,
    count_cooccurrences,
    pmi_value,
)
from sentilex.lexicon.exceptions import ValidationError
from sentilex.taxonomy.utils import TermGraph

logger = logging.getLogger(__name__)

CONJUNCTIONS = frozenset({"und", "oder", "sowie"})


class Weighting(models.TextChoices):
    PMI = "pmi", "Normalized positive PMI"
    COUNT = "count", "Normalized count"


class EdgeSource(models.TextChoices):
    WINDOW = "window", "Token window"
    CONJUNCTION = "conjunction", "Coordinating conjunction"
    BOTH = "both", "Window and conjunction"


class WeightedTermGraph(TermGraph):
    """Co-occurrence graph; corpus edges weigh in (0, 1].

    Negative weights only appear after :meth:`merged` pulls in taxonomy
    antonym edges.
    """

    def __init__(self, graph: nx.Graph, has_taxonomy_edges: bool = False):
        super().__init__(graph)
        if not has_taxonomy_edges:
            for u, v, w in graph.edges(data="weight"):
                if w <= 0:
                    raise ValidationError(f"corpus edge ({u!r}, {v!r}) has non-positive weight {w!r}")
        self.has_taxonomy_edges = has_taxonomy_edges

    def merged(self, taxonomy: TermGraph) -> "WeightedTermGraph":
        """Union with signed taxonomy edges; on a shared pair the stronger |w| wins, antonyms on ties."""
        edges = self.edges() + taxonomy.edges()
        nodes = set(self.nodes) | set(taxonomy.nodes)
        combined = TermGraph.from_edges(edges, nodes=nodes)
        logger.info(
            "Merged co-occurrence graph (%d edges) with taxonomy graph (%d edges): %d nodes, %d edges",
            self.number_of_edges(),
            taxonomy.number_of_edges(),
            len(combined),
            combined.number_of_edges(),
        )
        return WeightedTermGraph(nx.Graph(combined.nx_graph), has_taxonomy_edges=True)


def count_conjunction_pairs(documents: Sequence[TokenizedDocument], vocabulary) -> Counter:
    """Pairs of lemmas directly flanking a coordinating conjunction."""
    vocabulary = set(vocabulary)
    counts: Counter = Counter()
    for document in documents:
        lemmas = document.lemmas
        for i in range(1, len(lemmas) - 1):
            if lemmas[i] not in CONJUNCTIONS:
                continue
            u, v = lemmas[i - 1], lemmas[i + 1]
            if u != v and u in vocabulary and v in vocabulary:
                counts[(u, v) if u < v else (v, u)] += 1
    return counts


def build_cooccurrence_graph(
    documents: Sequence[TokenizedDocument],
    stats: CorpusStats,
    window: int | None = None,
    weighting: Weighting | str = Weighting.PMI,
    edge_source: EdgeSource | str = EdgeSource.WINDOW,
    epsilon: float = PMI_EPSILON,
) -> WeightedTermGraph:
    weighting, edge_source = Weighting(weighting), EdgeSource(edge_source)
    window = stats.window if window is None else window
    if window < 1:
        raise ValidationError(f"window must be >= 1, got {window}")

    counts: Counter = Counter()
    if edge_source in (EdgeSource.WINDOW, EdgeSource.BOTH):
        if window == stats.window:
            counts.update(stats.cooccurrence)
        else:
            counts.update(count_cooccurrences(documents, stats.vocabulary, window))
    if edge_source in (EdgeSource.CONJUNCTION, EdgeSource.BOTH):
        counts.update(count_conjunction_pairs(documents, stats.vocabulary))

    if weighting == Weighting.PMI:
        raw = {
            pair: pmi_value(count, stats.term_frequency[pair[0]], stats.term_frequency[pair[1]], stats.n_tokens, epsilon)
            for pair, count in counts.items()
        }
        raw = {pair: value for pair, value in raw.items() if value > 0}
    else:
        raw = {pair: float(count) for pair, count in counts.items() if count > 0}

    graph = nx.Graph()
    graph.add_nodes_from(stats.vocabulary)
    if raw:
        top = max(raw.values())
        graph.add_edges_from((u, v, {"weight": value / top}) for (u, v), value in sorted(raw.items()))

    logger.info(
        "Co-occurrence graph (%s, %s, window %d): %d nodes, %d edges, %d pair(s) dropped",
        weighting.value,
        edge_source.value,
        window,
        graph.number_of_nodes(),
        graph.number_of_edges(),
        len(counts) - len(raw),
    )
    return WeightedTermGraph(graph)
