import math
import random
from decimal import Decimal, localcontext

import numpy as np
from django.test import SimpleTestCase

from sentilex.corpus.utils import (
    DocumentLabel,
    LabeledDocumentSet,
    Token,
    TokenizedDocument,
    compute_stats,
    distant_label,
    pmi,
)
from sentilex.evaluation.utils import GoldAnnotation
from sentilex.harvest.distant import feature_weights, kiritchenko, severyn
from sentilex.harvest.params import CorpusAlgorithm, CorpusParams
from sentilex.harvest.paths import max_product_reach, velikovich
from sentilex.harvest.service import induce_from_corpus
from sentilex.harvest.spin import spin_iterates, takamura_ising
from sentilex.harvest.tuning import tune_lexicon_size
from sentilex.harvest.utils import RankedCandidates
from sentilex.lexicon.exceptions import DegenerateSeedsError, ValidationError
from sentilex.lexicon.utils import Polarity, SeedEntry, SeedSet
from sentilex.taxonomy.utils import TermGraph

POS, NEG, NEU = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL

SEEDS = SeedSet(entries=(SeedEntry("gut", POS), SeedEntry("schlecht", NEG)), name="gold")


def seeds_of(**polarities):
    return SeedSet(entries=tuple(SeedEntry(term, pol) for term, pol in polarities.items()), name="test")


def doc(doc_id, text):
    return TokenizedDocument(doc_id, tuple(Token(w, w) for w in text.split()))


def params(algorithm, **overrides):
    return CorpusParams.for_algorithm(algorithm, **overrides)


def swap_classes(labeled: LabeledDocumentSet) -> LabeledDocumentSet:
    flip = {
        DocumentLabel.POSITIVE: DocumentLabel.NEGATIVE,
        DocumentLabel.NEGATIVE: DocumentLabel.POSITIVE,
        DocumentLabel.DISCARDED: DocumentLabel.DISCARDED,
    }
    return LabeledDocumentSet(
        labels={doc_id: flip[label] for doc_id, label in labeled.labels.items()},
        class_counts={term: (neg, pos) for term, (pos, neg) in labeled.class_counts.items()},
        class_totals=(labeled.class_totals[1], labeled.class_totals[0]),
        documents=labeled.documents,
    )


def random_positive_graph(rng: random.Random, n: int) -> TermGraph:
    nodes = [f"n{i}" for i in range(n)]
    edges = [
        (u, v, rng.choice([0.1, 0.25, 0.5, 0.75, 0.9, 1.0]))
        for i, u in enumerate(nodes)
        for v in nodes[i + 1:]
        if rng.random() < 0.45
    ]
    return TermGraph.from_edges(edges, nodes=nodes)


def brute_force_reach(graph: TermGraph, source: str, max_length: int) -> dict[str, float]:
    best = {source: 1.0}

    def walk(term, product, visited):
        if len(visited) - 1 == max_length:
            return
        for neighbor, weight in graph.neighbors(term):
            if neighbor in visited or weight <= 0:
                continue
            value = product * weight
            best[neighbor] = max(best.get(neighbor, 0.0), value)
            walk(neighbor, value, visited | {neighbor})

    walk(source, 1.0, {source})
    return best


# positive reviews mention toll/super, negative ones mies/furchtbar, tag and haus everywhere
REVIEWS = (
    [doc(f"p{i}", "der tag war gut und toll") for i in range(12)]
    + [doc(f"q{i}", "das haus ist super gut") for i in range(8)]
    + [doc(f"n{i}", "der tag war schlecht und mies") for i in range(12)]
    + [doc(f"m{i}", "das haus ist furchtbar schlecht") for i in range(8)]
    + [doc(f"x{i}", "ein tag im haus") for i in range(5)]
)


class CorpusParamsTests(SimpleTestCase):
    def test_defaults_per_algorithm(self):
        self.assertEqual(params(CorpusAlgorithm.TAKAMURA).neutral_threshold, 0.05)
        self.assertEqual(params(CorpusAlgorithm.VELIKOVICH).neutral_threshold, 0.01)
        self.assertEqual(params(CorpusAlgorithm.KIRITCHENKO).neutral_threshold, 0.1)
        self.assertEqual(params("sev", top_k=None).top_k, 100)

    def test_validation(self):
        with self.assertRaises(ValidationError):
            CorpusParams(max_path_length=0)
        with self.assertRaises(ValidationError):
            CorpusParams(beta=-1.0)
        with self.assertRaises(ValueError):
            CorpusParams(algorithm="xx")

    def test_describe(self):
        self.assertEqual(params("kir").describe(), "kir(neutral_threshold=0.1)")


class RankedCandidatesTests(SimpleTestCase):
    def test_seeds_and_neutrals_are_dropped_and_ties_sorted(self):
        candidates = RankedCandidates.build(
            {"gut": (POS, 1.0), "toll": (POS, 0.5), "mies": (NEG, 0.5), "tag": (NEU, 0.9), "super": (POS, 0.7)},
            SEEDS,
        )
        self.assertEqual(candidates.terms(), ["super", "mies", "toll"])

    def test_with_seeds_prefix(self):
        candidates = RankedCandidates.build({"toll": (POS, 0.9), "mies": (NEG, 0.4)}, SEEDS)
        lexicon = candidates.with_seeds(SEEDS, 1)
        self.assertEqual(lexicon.terms(), {"gut", "schlecht", "toll"})
        self.assertEqual(lexicon.get("gut").score, 1.0)


class TakamuraTests(SimpleTestCase):
    def test_single_neighbor_fixed_point(self):
        graph = TermGraph.from_edges([("gut", "toll", 1.0)])
        candidates = takamura_ising(graph, SEEDS, params("tkm", beta=1.0))
        [entry] = list(candidates)
        self.assertEqual((entry.term, entry.polarity), ("toll", POS))
        self.assertAlmostEqual(entry.score, math.tanh(1.0), delta=1e-9)

    def test_chain_matches_scalar_iteration(self):
        graph = TermGraph.from_edges([("gut", "a", 1.0), ("a", "b", 1.0)])
        beta = 1.5
        c = 1 / math.sqrt(2)
        xa = xb = 0.0
        for _ in range(10000):
            xa, xb = math.tanh(beta * (c * 1.0 + c * xb)), math.tanh(beta * c * xa)
        candidates = takamura_ising(graph, seeds_of(gut=POS), params("tkm", beta=beta, tolerance=1e-14, max_iterations=10000))
        scores = {e.term: e.score for e in candidates}
        self.assertAlmostEqual(scores["a"], xa, delta=1e-9)
        self.assertAlmostEqual(scores["b"], xb, delta=1e-9)

    def test_zero_temperature_is_all_neutral(self):
        graph = TermGraph.from_edges([("gut", "toll", 1.0), ("toll", "super", 0.5), ("schlecht", "mies", 1.0)])
        self.assertEqual(len(takamura_ising(graph, SEEDS, params("tkm", beta=0.0))), 0)

    def test_no_edges_is_all_neutral(self):
        graph = TermGraph.from_edges([], nodes=["gut", "schlecht", "toll"])
        self.assertEqual(len(takamura_ising(graph, SEEDS, params("tkm"))), 0)

    def test_spins_bounded_and_seeds_clamped(self):
        rng = random.Random(12)
        for _ in range(50):
            n = rng.randint(3, 25)
            nodes = [f"n{i}" for i in range(n)]
            edges = [
                (u, v, rng.choice([-1.0, -0.5, 0.3, 0.8, 1.0]))
                for i, u in enumerate(nodes)
                for v in nodes[i + 1:]
                if rng.random() < 0.3
            ]
            graph = TermGraph.from_edges(edges, nodes=nodes)
            seed_map = {nodes[0]: POS, nodes[1]: NEG, nodes[2]: NEU}
            beta = rng.uniform(0.1, 5.0)
            for x, _ in spin_iterates(graph, seed_map, beta, 30):
                self.assertTrue(np.all(np.abs(x) <= 1.0))
                self.assertEqual(x[graph.index(nodes[0])], 1.0)
                self.assertEqual(x[graph.index(nodes[1])], -1.0)
                self.assertEqual(x[graph.index(nodes[2])], 0.0)

    def test_non_convergence_warns(self):
        graph = TermGraph.from_edges([("gut", "a", 1.0), ("a", "b", 1.0), ("b", "c", 1.0)])
        with self.assertLogs("sentilex.harvest.spin", level="WARNING"):
            takamura_ising(graph, seeds_of(gut=POS), params("tkm", max_iterations=1))

    def test_antonym_link_flips_sign(self):
        graph = TermGraph.from_edges([("gut", "toll", 1.0), ("toll", "mies", -1.0)])
        candidates = takamura_ising(graph, seeds_of(gut=POS), params("tkm", beta=2.0))
        self.assertEqual(candidates.terms(POS), ["toll"])
        self.assertEqual(candidates.terms(NEG), ["mies"])


class VelikovichTests(SimpleTestCase):
    def test_single_path_product(self):
        graph = TermGraph.from_edges([("s", "a", 0.5), ("a", "b", 0.5)])
        alpha = max_product_reach(graph, "s", 2)
        self.assertEqual(alpha[graph.index("b")], 0.25)
        self.assertEqual(alpha[graph.index("s")], 1.0)
        self.assertEqual(max_product_reach(graph, "s", 1)[graph.index("b")], 0.0)

    def test_maximum_not_sum_over_paths(self):
        graph = TermGraph.from_edges([("s", "a", 0.8), ("a", "b", 0.5), ("s", "c", 0.6), ("c", "b", 0.5)])
        self.assertEqual(max_product_reach(graph, "s", 2)[graph.index("b")], 0.4)

    def test_matches_path_enumeration(self):
        rng = random.Random(7)
        for _ in range(200):
            graph = random_positive_graph(rng, rng.randint(2, 7))
            source = rng.choice(graph.nodes)
            max_length = rng.randint(1, 4)
            alpha = max_product_reach(graph, source, max_length)
            expected = brute_force_reach(graph, source, max_length)
            for term in graph.nodes:
                self.assertEqual(alpha[graph.index(term)], expected.get(term, 0.0))

    def test_reach_grows_with_path_bound(self):
        rng = random.Random(8)
        for _ in range(30):
            graph = random_positive_graph(rng, 7)
            source = graph.nodes[0]
            previous = max_product_reach(graph, source, 1)
            for length in range(2, 6):
                current = max_product_reach(graph, source, length)
                self.assertTrue(np.all(current >= previous))
                self.assertTrue(np.all((current >= 0) & (current <= 1)))
                previous = current

    def test_polarity_from_seed_mass(self):
        graph = TermGraph.from_edges(
            [("gut", "toll", 0.9), ("toll", "super", 0.8), ("schlecht", "mies", 0.9), ("tag", "toll", 0.1)]
        )
        candidates = velikovich(graph, SEEDS, params("vel"))
        self.assertEqual(set(candidates.terms(POS)), {"toll", "super", "tag"})
        self.assertEqual(candidates.terms(NEG), ["mies"])

        flipped = velikovich(graph, SEEDS.flipped(), params("vel"))
        self.assertEqual(set(flipped.terms(NEG)), set(candidates.terms(POS)))
        self.assertEqual(set(flipped.terms(POS)), set(candidates.terms(NEG)))

    def test_zero_negative_mass(self):
        graph = TermGraph.from_edges([("gut", "toll", 0.9), ("mies", "furchtbar", 0.5)])
        with self.assertRaises(DegenerateSeedsError):
            velikovich(graph, seeds_of(gut=POS), params("vel"))


class KiritchenkoTests(SimpleTestCase):
    def setUp(self):
        self.stats = compute_stats(REVIEWS, min_freq=1)
        self.labeled = distant_label(REVIEWS, SEEDS, stats=self.stats)

    def test_directions(self):
        candidates = kiritchenko(self.labeled, self.stats, SEEDS, params("kir"))
        self.assertIn("toll", candidates.terms(POS))
        self.assertIn("super", candidates.terms(POS))
        self.assertIn("mies", candidates.terms(NEG))
        self.assertIn("furchtbar", candidates.terms(NEG))
        # tag and haus are spread evenly over both classes
        self.assertNotIn("tag", candidates.terms())
        self.assertNotIn("haus", candidates.terms())

    def test_scores_match_brute_force_counting(self):
        candidates = {e.term: e for e in kiritchenko(self.labeled, self.stats, SEEDS, params("kir"))}
        pos_docs = [d for d in REVIEWS if "gut" in d.lemmas and "schlecht" not in d.lemmas]
        neg_docs = [d for d in REVIEWS if "schlecht" in d.lemmas and "gut" not in d.lemmas]

        def count(docs, term=None):
            return sum(1 for d in docs for lemma in d.lemmas if term is None or lemma == term)

        total = Decimal(count(pos_docs) + count(neg_docs))
        half = Decimal("0.5")
        with localcontext() as ctx:
            ctx.prec = 50
            for term, entry in candidates.items():
                joint_pos, joint_neg = Decimal(count(pos_docs, term)), Decimal(count(neg_docs, term))
                marginal = joint_pos + joint_neg
                pos_total, neg_total = Decimal(count(pos_docs)), Decimal(count(neg_docs))
                pmi_pos = ((joint_pos + half) * total / ((marginal + half) * (pos_total + half))).ln()
                pmi_neg = ((joint_neg + half) * total / ((marginal + half) * (neg_total + half))).ln()
                expected = float((pmi_pos - pmi_neg) / Decimal(2).ln())
                self.assertAlmostEqual(entry.score, abs(expected), delta=1e-9)
                self.assertEqual(entry.polarity, POS if expected > 0 else NEG)

    def test_score_is_pmi_difference(self):
        candidates = {e.term: e.score for e in kiritchenko(self.labeled, self.stats, SEEDS, params("kir"))}
        expected = pmi(self.labeled, "toll", POS) - pmi(self.labeled, "toll", NEG)
        self.assertAlmostEqual(candidates["toll"], expected, delta=1e-12)

    def test_class_swap_flips_scores(self):
        original = kiritchenko(self.labeled, self.stats, SEEDS, params("kir"))
        swapped = kiritchenko(swap_classes(self.labeled), self.stats, SEEDS, params("kir"))
        self.assertEqual(swapped.terms(POS), original.terms(NEG))
        self.assertEqual(swapped.terms(NEG), original.terms(POS))
        self.assertEqual([e.score for e in swapped], [e.score for e in original])

    def test_single_class_is_degenerate(self):
        labeled = distant_label([doc("1", "gut toll")], SEEDS)
        with self.assertRaises(DegenerateSeedsError):
            kiritchenko(labeled, None, SEEDS, params("kir"))


class SeverynTests(SimpleTestCase):
    def setUp(self):
        self.labeled = distant_label(REVIEWS, SEEDS, stats=compute_stats(REVIEWS, min_freq=1))

    def test_separable_direction(self):
        candidates = severyn(self.labeled, SEEDS, params("sev", top_k=5))
        self.assertIn("toll", candidates.terms(POS))
        self.assertIn("mies", candidates.terms(NEG))
        self.assertNotIn("gut", candidates.terms())
        self.assertTrue(all(0 < e.score <= 1 for e in candidates))

    def test_bigrams_are_features(self):
        weights = feature_weights(self.labeled, SEEDS, params("sev"))
        self.assertIn("und toll", weights)
        self.assertIn("super gut", weights)
        self.assertNotIn("gut", weights)

    def test_class_swap_swaps_lists(self):
        original = severyn(self.labeled, SEEDS, params("sev", top_k=4))
        swapped = severyn(swap_classes(self.labeled), SEEDS, params("sev", top_k=4))
        self.assertEqual(swapped.terms(POS), original.terms(NEG))
        self.assertEqual(swapped.terms(NEG), original.terms(POS))

    def test_deterministic_under_seed(self):
        first = severyn(self.labeled, SEEDS, params("sev", rng_seed=3))
        second = severyn(self.labeled, SEEDS, params("sev", rng_seed=3))
        self.assertEqual(first, second)

    def test_single_class_is_degenerate(self):
        with self.assertRaises(DegenerateSeedsError):
            severyn(distant_label([doc("1", "gut toll")], SEEDS), SEEDS)


class TuneLexiconSizeTests(SimpleTestCase):
    dev = [doc("d1", "gut toll tag schlecht")]
    gold = [GoldAnnotation("d1", 0, 1, POS), GoldAnnotation("d1", 1, 2, POS), GoldAnnotation("d1", 3, 4, NEG)]

    def test_helpful_then_harmful(self):
        candidates = RankedCandidates.build({"toll": (POS, 0.9), "tag": (NEG, 0.5)}, SEEDS)
        result = tune_lexicon_size(candidates, SEEDS, self.dev, self.gold, step=1)
        self.assertEqual(result.kept, 1)
        self.assertEqual(result.lexicon.terms(), {"gut", "schlecht", "toll"})
        self.assertGreaterEqual(result.best_macro_f, result.baseline_macro_f)
        self.assertEqual([size for size, _ in result.trace], [0, 1, 2])

    def test_all_harmful(self):
        candidates = RankedCandidates.build({"tag": (NEG, 0.5)}, SEEDS)
        result = tune_lexicon_size(candidates, SEEDS, self.dev, self.gold)
        self.assertEqual(result.kept, 0)
        self.assertEqual(result.lexicon.terms(), {"gut", "schlecht"})

    def test_single_block_when_step_exceeds_candidates(self):
        mixed = RankedCandidates.build({"toll": (POS, 0.9), "tag": (NEG, 0.5)}, SEEDS)
        self.assertEqual(tune_lexicon_size(mixed, SEEDS, self.dev, self.gold, step=5).kept, 0)
        helpful = RankedCandidates.build({"toll": (POS, 0.9)}, SEEDS)
        self.assertEqual(tune_lexicon_size(helpful, SEEDS, self.dev, self.gold, step=5).kept, 1)

    def test_empty_candidates_return_seeds(self):
        result = tune_lexicon_size(RankedCandidates(entries=()), SEEDS, self.dev, self.gold)
        self.assertEqual((result.kept, result.lexicon.terms()), (0, {"gut", "schlecht"}))


class InduceFromCorpusTests(SimpleTestCase):
    def test_every_algorithm_runs(self):
        stats = compute_stats(REVIEWS, min_freq=1, window=2)
        taxonomy = TermGraph.from_edges([("gut", "schlecht", -1.0), ("toll", "super", 0.8)])
        for algorithm in CorpusAlgorithm:
            with self.subTest(algorithm=algorithm):
                candidates = induce_from_corpus(
                    REVIEWS, stats, SEEDS, params(algorithm), taxonomy=taxonomy
                )
                self.assertFalse({"gut", "schlecht"} & set(candidates.terms()))
                scores = [round(e.score, 6) for e in candidates]
                self.assertEqual(scores, sorted(scores, reverse=True))
