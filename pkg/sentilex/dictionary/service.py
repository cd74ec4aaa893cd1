from __future__ import annotations

import logging
from typing import Mapping, Sequence

from sentilex.dictionary.classifiers import esuli_sebastiani, kim_hovy
from sentilex.dictionary.cuts import rao_mincut
from sentilex.dictionary.params import DictAlgorithm, DictParams
from sentilex.dictionary.propagation import blair_goldensohn, hu_liu, rao_label_propagation
from sentilex.dictionary.walks import awadallah_radwan
from sentilex.lexicon.utils import Lexicon, SeedSet
from sentilex.taxonomy.utils import LexicalGraph, TermGraph

logger = logging.getLogger(__name__)

DICTIONARY_ALGORITHMS = {
    DictAlgorithm.HU_LIU: hu_liu,
    DictAlgorithm.BLAIR_GOLDENSOHN: blair_goldensohn,
    DictAlgorithm.KIM_HOVY: kim_hovy,
    DictAlgorithm.ESULI_SEBASTIANI: esuli_sebastiani,
    DictAlgorithm.MINCUT: rao_mincut,
    DictAlgorithm.LABEL_PROPAGATION: rao_label_propagation,
    DictAlgorithm.RANDOM_WALK: awadallah_radwan,
}


def gloss_map(lexical: LexicalGraph) -> dict[str, list[str]]:
    return {term: lexical.glosses(term) for term in sorted(lexical.lemma_index)}


def induce_from_dictionary(
    graph: TermGraph,
    seeds: SeedSet,
    params: DictParams,
    glosses: Mapping[str, Sequence[str]] | None = None,
) -> Lexicon:
    logger.info("Inducing %s over %d terms with seed set %r", params.describe(), len(graph), seeds.name)
    algorithm = DICTIONARY_ALGORITHMS[params.algorithm]
    if params.algorithm == DictAlgorithm.ESULI_SEBASTIANI:
        return algorithm(graph, seeds, params, glosses=glosses)
    return algorithm(graph, seeds, params)
