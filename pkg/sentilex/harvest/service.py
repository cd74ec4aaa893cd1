from __future__ import annotations

import logging
from typing import Sequence

from sentilex.corpus.graphs import EdgeSource, Weighting, build_cooccurrence_graph
from sentilex.corpus.utils import CorpusStats, TokenizedDocument, distant_label
from sentilex.harvest.distant import kiritchenko, severyn
from sentilex.harvest.params import GRAPH_ALGORITHMS, CorpusAlgorithm, CorpusParams
from sentilex.harvest.paths import velikovich
from sentilex.harvest.spin import takamura_ising
from sentilex.harvest.utils import RankedCandidates
from sentilex.lexicon.utils import SeedSet
from sentilex.taxonomy.utils import TermGraph

logger = logging.getLogger(__name__)


def induce_from_corpus(
    documents: Sequence[TokenizedDocument],
    stats: CorpusStats,
    seeds: SeedSet,
    params: CorpusParams,
    taxonomy: TermGraph | None = None,
    weighting: Weighting | str = Weighting.PMI,
    edge_source: EdgeSource | str = EdgeSource.WINDOW,
) -> RankedCandidates:
    logger.info("Inducing %s over %d documents with seed set %r", params.describe(), stats.n_docs, seeds.name)
    if params.algorithm in GRAPH_ALGORITHMS:
        graph = build_cooccurrence_graph(documents, stats, weighting=weighting, edge_source=edge_source)
        if params.algorithm == CorpusAlgorithm.VELIKOVICH:
            return velikovich(graph, seeds, params)
        if taxonomy is not None:
            graph = graph.merged(taxonomy)
        return takamura_ising(graph, seeds, params)

    labeled = distant_label(documents, seeds, stats=stats)
    if params.algorithm == CorpusAlgorithm.KIRITCHENKO:
        return kiritchenko(labeled, stats, seeds, params)
    return severyn(labeled, seeds, params)
