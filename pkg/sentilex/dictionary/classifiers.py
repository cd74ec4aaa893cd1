from __future__ import annotations

import logging
import math
from collections import Counter
from typing import Mapping, Sequence

import numpy as np
from scipy.special import logsumexp
from sklearn.feature_extraction import DictVectorizer
from sklearn.metrics.pairwise import euclidean_distances
from sklearn.neighbors import NearestCentroid
from sklearn.svm import LinearSVC

from sentilex.dictionary.params import DictAlgorithm, DictParams
from sentilex.dictionary.utils import build_lexicon, resolve_graph_seeds
from sentilex.lexicon.exceptions import DegenerateFeaturesError
from sentilex.lexicon.utils import Lexicon, Polarity, SeedSet
from sentilex.taxonomy.utils import TermGraph

logger = logging.getLogger(__name__)

POS, NEG, NEU = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL
CLASSES = (POS, NEG, NEU)

MIN_GLOSS_COVERAGE = 0.5


def class_bags(graph: TermGraph, seed_map: Mapping[str, Polarity]) -> dict[Polarity, set[str]]:
    """Seeds of each class plus their neighbours over positive edges."""
    bags: dict[Polarity, set[str]] = {c: set() for c in CLASSES}
    for term, polarity in seed_map.items():
        bags[polarity].add(term)
        bags[polarity].update(n for n, w in graph.neighbors(term) if w > 0)
    return bags


def kim_hovy_posterior(
    graph: TermGraph,
    term: str,
    bags: Mapping[Polarity, set[str]],
    priors: Sequence[float],
) -> dict[Polarity, float]:
    vocabulary = len(graph)
    in_any_bag = set().union(*bags.values())
    evidence = [n for n, w in graph.neighbors(term) if w > 0 and n in in_any_bag]

    log_scores = []
    for cls, prior in zip(CLASSES, priors):
        denominator = len(bags[cls]) + vocabulary
        log_score = math.log(prior)
        for neighbor in evidence:
            log_score += math.log(((neighbor in bags[cls]) + 1) / denominator)
        log_scores.append(log_score)

    log_scores = np.array(log_scores)
    posterior = np.exp(log_scores - logsumexp(log_scores))
    return {cls: float(p) for cls, p in zip(CLASSES, posterior)}


def kim_hovy(graph: TermGraph, seeds: SeedSet, params: DictParams | None = None) -> Lexicon:
    params = params or DictParams.for_algorithm(DictAlgorithm.KIM_HOVY)
    seed_map = resolve_graph_seeds(graph, seeds)
    priors = params.priors or (1 / 3, 1 / 3, 1 / 3)
    bags = class_bags(graph, seed_map)
    logger.debug("kim_hovy bag sizes: %s", {c.value: len(b) for c, b in bags.items()})

    labels = {}
    for term in graph.nodes:
        if term in seed_map:
            labels[term] = (seed_map[term], 1.0)
            continue
        posterior = kim_hovy_posterior(graph, term, bags, priors)
        ranked = sorted(posterior.items(), key=lambda kv: -kv[1])
        (best, p_best), (_, p_second) = ranked[0], ranked[1]
        if math.isclose(p_best, p_second, rel_tol=1e-12, abs_tol=1e-15):
            labels[term] = (NEU, p_best)
        else:
            labels[term] = (best, p_best)

    return build_lexicon(labels, seed_map, params.describe())


def expand_training_sets(
    graph: TermGraph,
    seed_map: Mapping[str, Polarity],
    rounds: int,
) -> dict[str, tuple[Polarity, int]]:
    """Grow the seed classes for ``rounds`` rounds; value is (class, round added).

    Positive edges keep the class, antonym edges swap positive and negative,
    and neutral terms only grow over positive edges. A term proposed for two
    classes in the same round is left out.
    """
    training = {term: (pol, 0) for term, pol in seed_map.items()}
    for round_no in range(1, rounds + 1):
        proposals: dict[str, set[Polarity]] = {}
        for term, (polarity, _) in sorted(training.items()):
            for neighbor, weight in graph.neighbors(term):
                if neighbor in training:
                    continue
                if polarity.is_polar:
                    proposals.setdefault(neighbor, set()).add(polarity if weight > 0 else polarity.flipped())
                elif weight > 0:
                    proposals.setdefault(neighbor, set()).add(NEU)
        added = [t for t in sorted(proposals) if len(proposals[t]) == 1]
        for term in added:
            training[term] = (next(iter(proposals[term])), round_no)
        if not added:
            break
    return training


def term_features(graph: TermGraph, glosses: Mapping[str, Sequence[str]]) -> list[dict[str, float]]:
    rows = []
    for term in graph.nodes:
        features: dict[str, float] = {}
        for gloss in glosses.get(term, ()):
            for word in gloss.lower().split():
                features[f"g:{word}"] = features.get(f"g:{word}", 0.0) + 1.0
        for neighbor, weight in graph.neighbors(term):
            features[f"{'n' if weight > 0 else 'a'}:{neighbor}"] = 1.0
        rows.append(features)
    return rows


def committee_vote(verdicts: Sequence[Polarity], distances: Mapping[Polarity, float]) -> Polarity:
    """Majority over members; a split goes to the class whose centroid is nearer."""
    counts = Counter(verdicts).most_common()
    if len(counts) == 1 or counts[0][1] > counts[1][1]:
        return counts[0][0]
    top = counts[0][1]
    tied = sorted((cls for cls, n in counts if n == top), key=lambda c: (distances.get(c, math.inf), CLASSES.index(c)))
    first, second = distances.get(tied[0], math.inf), distances.get(tied[1], math.inf)
    if math.isclose(first, second, rel_tol=1e-12, abs_tol=1e-12):
        return NEU
    return tied[0]


class _ConstantTask:
    def __init__(self, answer: bool):
        self.answer = answer

    def margins(self, X) -> np.ndarray:
        return np.full(X.shape[0], 1.0 if self.answer else -1.0)


class _RocchioTask:
    def __init__(self, X, y: np.ndarray):
        self.model = NearestCentroid().fit(X, y)
        self.target_row = list(self.model.classes_).index(True)

    def margins(self, X) -> np.ndarray:
        distances = euclidean_distances(X, self.model.centroids_)
        return distances[:, 1 - self.target_row] - distances[:, self.target_row]


class _SvmTask:
    def __init__(self, X, y: np.ndarray, rng_seed: int, max_iterations: int):
        self.model = LinearSVC(
            C=1.0, loss="hinge", dual=True, random_state=rng_seed, max_iter=max_iterations
        ).fit(X, y)

    def margins(self, X) -> np.ndarray:
        return self.model.decision_function(X)


class GlossCommittee:
    """A Rocchio member and a linear SVM member, each running a
    positive-vs-rest and a negative-vs-rest task."""

    MEMBERS = ("rocchio", "svm")

    def __init__(self, rng_seed: int = 0, max_iterations: int = 1000):
        self.rng_seed = rng_seed
        self.max_iterations = max_iterations
        self.tasks: dict[str, dict[Polarity, object]] = {}
        self.class_centroids: dict[Polarity, np.ndarray] = {}

    def fit(self, X, labels: Sequence[Polarity]) -> "GlossCommittee":
        labels = np.array([Polarity(lab).value for lab in labels])
        for member in self.MEMBERS:
            self.tasks[member] = {}
            for target in (POS, NEG):
                y = labels == target.value
                if y.all() or not y.any():
                    task = _ConstantTask(bool(y.all()))
                elif member == "rocchio":
                    task = _RocchioTask(X, y)
                else:
                    task = _SvmTask(X, y, self.rng_seed, self.max_iterations)
                self.tasks[member][target] = task

        self.class_centroids = {}
        for cls in CLASSES:
            mask = labels == cls.value
            if mask.any():
                self.class_centroids[cls] = np.asarray(X[mask].mean(axis=0)).ravel()
        return self

    def member_margins(self, X) -> dict[str, dict[Polarity, np.ndarray]]:
        return {
            member: {target: task.margins(X) for target, task in tasks.items()} for member, tasks in self.tasks.items()
        }

    @staticmethod
    def verdict(pos_margin: float, neg_margin: float) -> Polarity:
        if pos_margin > 0 and not neg_margin > 0:
            return POS
        if neg_margin > 0 and not pos_margin > 0:
            return NEG
        return NEU

    def classify(self, X) -> tuple[list[Polarity], dict[str, dict[Polarity, np.ndarray]]]:
        margins = self.member_margins(X)
        classes = sorted(self.class_centroids, key=CLASSES.index)
        distances = euclidean_distances(X, np.vstack([self.class_centroids[c] for c in classes]))

        out = []
        for i in range(X.shape[0]):
            verdicts = [self.verdict(margins[m][POS][i], margins[m][NEG][i]) for m in self.MEMBERS]
            out.append(committee_vote(verdicts, dict(zip(classes, distances[i]))))
        return out, margins


def _raw_margin(margins, i: int, polarity: Polarity) -> float:
    members = list(margins.values())
    if polarity is POS:
        values = [m[POS][i] for m in members]
    elif polarity is NEG:
        values = [m[NEG][i] for m in members]
    else:
        values = [-max(m[POS][i], m[NEG][i]) for m in members]
    return float(np.mean(values))


def esuli_sebastiani(
    graph: TermGraph,
    seeds: SeedSet,
    params: DictParams | None = None,
    glosses: Mapping[str, Sequence[str]] | None = None,
) -> Lexicon:
    params = params or DictParams.for_algorithm(DictAlgorithm.ESULI_SEBASTIANI)
    glosses = glosses or {}
    seed_map = resolve_graph_seeds(graph, seeds)

    covered = sum(1 for term in graph.nodes if glosses.get(term))
    if len(graph) and covered / len(graph) < MIN_GLOSS_COVERAGE:
        logger.warning("only %d of %d terms have a gloss; gloss features will be sparse", covered, len(graph))

    X = DictVectorizer(sparse=True, sort=True).fit_transform(term_features(graph, glosses))
    if X.shape[1] == 0 or X.nnz == 0:
        raise DegenerateFeaturesError("every term has an empty feature vector (no glosses and no edges)")

    training = expand_training_sets(graph, seed_map, params.expansion_rounds)
    logger.info(
        "esuli_sebastiani training sets after %d round(s): %s",
        params.expansion_rounds,
        dict(Counter(p.value for p, _ in training.values())),
    )
    rows = [graph.index(term) for term in sorted(training)]
    committee = GlossCommittee(params.rng_seed, params.max_iterations).fit(
        X[rows], [training[term][0] for term in sorted(training)]
    )
    predicted, margins = committee.classify(X)

    raw = {}
    for i, term in enumerate(graph.nodes):
        if term in seed_map:
            continue
        polarity = predicted[i]
        raw[term] = (polarity, _raw_margin(margins, i, polarity))

    labels: dict[str, tuple[Polarity, float]] = {term: (pol, 1.0) for term, pol in seed_map.items()}
    if raw:
        low = min(score for _, score in raw.values())
        high = max(score for _, score in raw.values())
        for term, (polarity, score) in raw.items():
            labels[term] = (polarity, (score - low) / (high - low) if high > low else 1.0)

    return build_lexicon(labels, seed_map, params.describe())
