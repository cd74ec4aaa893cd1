"""Candidates learned from distantly labeled documents."""
from __future__ import annotations

import logging

import numpy as np
from sklearn.feature_extraction.text import CountVectorizer
from sklearn.linear_model import SGDClassifier

from sentilex.corpus.utils import CorpusStats, LabeledDocumentSet, class_pmi
from sentilex.harvest.params import CorpusAlgorithm, CorpusParams
from sentilex.harvest.utils import RankedCandidates, classify_score
from sentilex.lexicon.exceptions import DegenerateFeaturesError, DegenerateSeedsError
from sentilex.lexicon.utils import Polarity, SeedSet

logger = logging.getLogger(__name__)

POS, NEG = Polarity.POSITIVE, Polarity.NEGATIVE


def _require_both_classes(labeled: LabeledDocumentSet):
    if labeled.n_pos == 0 or labeled.n_neg == 0:
        raise DegenerateSeedsError(
            f"distant labeling produced {labeled.n_pos} positive and {labeled.n_neg} negative documents; "
            "both classes are needed"
        )


def pmi_differences(labeled: LabeledDocumentSet, stats: CorpusStats | None = None) -> dict[str, float]:
    _require_both_classes(labeled)
    terms = sorted(labeled.vocabulary if stats is None else labeled.vocabulary & stats.vocabulary)
    return {term: class_pmi(labeled, term, POS) - class_pmi(labeled, term, NEG) for term in terms}


def kiritchenko(
    labeled: LabeledDocumentSet,
    stats: CorpusStats | None,
    seeds: SeedSet,
    params: CorpusParams | None = None,
) -> RankedCandidates:
    params = params or CorpusParams.for_algorithm(CorpusAlgorithm.KIRITCHENKO)
    labels = {
        term: (classify_score(value, params.neutral_threshold), abs(value))
        for term, value in pmi_differences(labeled, stats).items()
    }
    return RankedCandidates.build(labels, seeds, provenance=params.describe())


class LemmaNgrams:
    """CountVectorizer analyzer: lemma unigrams and adjacent-lemma bigrams.

    Only lemmas in ``vocabulary`` count; seed lemmas are left out as
    unigrams because they define the labels.
    """

    def __init__(self, vocabulary, excluded=()):
        self.vocabulary = frozenset(vocabulary)
        self.excluded = frozenset(excluded)

    def __call__(self, lemmas: list[str]) -> list[str]:
        features = [lemma for lemma in lemmas if lemma in self.vocabulary and lemma not in self.excluded]
        features += [
            f"{a} {b}" for a, b in zip(lemmas, lemmas[1:]) if a in self.vocabulary and b in self.vocabulary
        ]
        return features


def feature_weights(labeled: LabeledDocumentSet, seeds: SeedSet, params: CorpusParams) -> dict[str, float]:
    """Hinge-loss linear model weights per feature (positive class = +1)."""
    _require_both_classes(labeled)
    pairs = list(labeled.labeled())
    documents = [document.lemmas for document, _ in pairs]
    y = np.array([1 if polarity == POS else -1 for _, polarity in pairs])

    vectorizer = CountVectorizer(analyzer=LemmaNgrams(labeled.vocabulary, seeds.literals()), lowercase=False)
    try:
        X = vectorizer.fit_transform(documents)
    except ValueError as e:
        raise DegenerateFeaturesError(f"no features left after filtering: {e}") from e

    model = SGDClassifier(
        loss="hinge",
        penalty="l2",
        alpha=params.regularization,
        max_iter=params.max_iterations,
        tol=None,
        shuffle=True,
        random_state=params.rng_seed,
    )
    model.fit(X, y)
    names = vectorizer.get_feature_names_out()
    logger.debug("hinge model over %d documents and %d features", X.shape[0], X.shape[1])
    return dict(zip(names.tolist(), model.coef_[0].tolist()))


def severyn(labeled: LabeledDocumentSet, seeds: SeedSet, params: CorpusParams | None = None) -> RankedCandidates:
    params = params or CorpusParams.for_algorithm(CorpusAlgorithm.SEVERYN)
    weights = feature_weights(labeled, seeds, params)
    top = max((abs(w) for w in weights.values()), default=0.0)
    if top == 0:
        return RankedCandidates.build({}, seeds, provenance=params.describe())

    positive = sorted((t for t, w in weights.items() if w > 0), key=lambda t: (-weights[t], t))[: params.top_k]
    negative = sorted((t for t, w in weights.items() if w < 0), key=lambda t: (weights[t], t))[: params.top_k]
    labels = {term: (POS, weights[term] / top) for term in positive}
    labels.update({term: (NEG, -weights[term] / top) for term in negative})
    return RankedCandidates.build(labels, seeds, provenance=params.describe())
