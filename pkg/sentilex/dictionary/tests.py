import itertools
import math
import random
from pathlib import Path
from unittest import mock

import numpy as np
from django.conf import settings
from django.test import SimpleTestCase
from sklearn.feature_extraction import DictVectorizer

from sentilex.corpus.utils import read_documents
from sentilex.dictionary.classifiers import (
    GlossCommittee,
    class_bags,
    committee_vote,
    esuli_sebastiani,
    expand_training_sets,
    kim_hovy,
    kim_hovy_posterior,
)
from sentilex.dictionary.cuts import SINK, SOURCE, cut_network, min_cut_partition, rao_mincut
from sentilex.dictionary.params import DictAlgorithm, DictParams
from sentilex.dictionary.propagation import (
    blair_goldensohn,
    hu_liu,
    label_propagation_iterates,
    rao_label_propagation,
)
from sentilex.dictionary.service import DICTIONARY_ALGORITHMS, gloss_map, induce_from_dictionary
from sentilex.dictionary.walks import WalkTable, awadallah_radwan, mean_hitting_times
from sentilex.evaluation.service import evaluate_lexicon
from sentilex.evaluation.utils import read_gold
from sentilex.lexicon.exceptions import DegenerateFeaturesError, EmptySeedError, NumericOverflowError, ValidationError
from sentilex.lexicon.formats import read_seeds
from sentilex.lexicon.utils import Polarity, SeedEntry, SeedSet
from sentilex.taxonomy.utils import TermGraph, derive_term_graph, load_taxonomy_dir

POS, NEG, NEU = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL
FIXTURES = Path(settings.FIXTURES_DIR)
DECAY = FIXTURES / "decay"


def seeds(**polarities):
    return SeedSet(entries=tuple(SeedEntry(term, pol) for term, pol in polarities.items()), name="test")


def params(algorithm, **overrides):
    return DictParams.for_algorithm(algorithm, **overrides)


def polar_sets(lexicon):
    return lexicon.terms(POS), lexicon.terms(NEG)


def hitting_times_for(graph, seed_map, term, walk_params):
    is_positive = np.array([seed_map.get(t) == POS for t in graph.nodes])
    is_negative = np.array([seed_map.get(t) == NEG for t in graph.nodes])
    return mean_hitting_times(
        WalkTable.from_graph(graph),
        graph.index(term),
        is_positive,
        is_negative,
        walk_params.walks_per_node,
        walk_params.max_walk_length,
        np.random.default_rng(walk_params.rng_seed),
    )


class ToyTaxonomyMixin:
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        lexical = load_taxonomy_dir(FIXTURES / "toy")
        cls.toy_graph = derive_term_graph(lexical)
        cls.toy_glosses = gloss_map(lexical)
        cls.toy_seeds = read_seeds(FIXTURES / "seeds.tsv")


class DictParamsTests(SimpleTestCase):
    def test_algorithm_defaults(self):
        self.assertEqual(params(DictAlgorithm.LABEL_PROPAGATION).threshold, 0.05)
        self.assertEqual(params(DictAlgorithm.RANDOM_WALK).threshold, 0.1)
        self.assertEqual(params(DictAlgorithm.BLAIR_GOLDENSOHN).max_iterations, 5)
        self.assertEqual(params(DictAlgorithm.HU_LIU, max_iterations=None).max_iterations, 5)

    def test_rejects_bad_values(self):
        with self.assertRaises(ValidationError):
            params(DictAlgorithm.HU_LIU, max_iterations=0)
        with self.assertRaises(ValidationError):
            params(DictAlgorithm.KIM_HOVY, priors=(0.5, 0.5, 0.5))
        with self.assertRaises(ValidationError):
            params(DictAlgorithm.LABEL_PROPAGATION, tolerance=0)

    def test_describe(self):
        self.assertEqual(params(DictAlgorithm.HU_LIU).describe(), "hl(max_iterations=5)")


class HuLiuTests(SimpleTestCase):
    def test_one_hop(self):
        graph = TermGraph.from_edges([("a", "b", 1.0)])
        lexicon = hu_liu(graph, seeds(a=POS), params(DictAlgorithm.HU_LIU, max_iterations=1))
        self.assertEqual(lexicon.get("b").polarity, POS)
        self.assertEqual(lexicon.get("b").score, 0.5)
        self.assertEqual(lexicon.get("a").score, 1.0)

    def test_antonym_flips(self):
        graph = TermGraph.from_edges([("a", "b", -1.0)])
        self.assertEqual(hu_liu(graph, seeds(a=POS)).get("b").polarity, NEG)

    def test_conflict_becomes_neutral(self):
        graph = TermGraph.from_edges([("a", "b", 1.0), ("b", "c", 1.0)])
        lexicon = hu_liu(graph, seeds(a=POS, c=NEG), params(DictAlgorithm.HU_LIU, max_iterations=1))
        self.assertEqual(lexicon.get("b").polarity, NEU)

    def test_round_limit_and_unreached(self):
        graph = TermGraph.from_edges([("a", "b", 1.0), ("b", "c", 1.0), ("c", "d", 1.0)], nodes=["z"])
        lexicon = hu_liu(graph, seeds(a=POS), params(DictAlgorithm.HU_LIU, max_iterations=2))
        self.assertAlmostEqual(lexicon.get("c").score, 1 / 3)
        self.assertNotIn("d", lexicon)
        self.assertNotIn("z", lexicon)

    def test_neutral_seed_blocks(self):
        graph = TermGraph.from_edges([("a", "n", 1.0), ("n", "b", 1.0)])
        lexicon = hu_liu(graph, seeds(a=POS, n=NEU))
        self.assertEqual(lexicon.get("n").polarity, NEU)
        self.assertNotIn("b", lexicon)

    def test_no_seed_in_graph(self):
        graph = TermGraph.from_edges([("a", "b", 1.0)])
        with self.assertRaises(EmptySeedError):
            hu_liu(graph, seeds(zz=POS))


def random_balanced_graph(rng: random.Random, n: int):
    """Signed graph whose signs follow a hidden two-group split."""
    group = {f"t{i:02d}": rng.choice([1, -1]) for i in range(n)}
    nodes = sorted(group)
    edges = []
    for u, v in itertools.combinations(nodes, 2):
        if rng.random() < 0.25:
            edges.append((u, v, group[u] * group[v] * rng.choice([0.3, 0.5, 0.8, 1.0])))
    return TermGraph.from_edges(edges, nodes=nodes), group


class BlairGoldensohnTests(SimpleTestCase):
    def test_star(self):
        graph = TermGraph.from_edges([("a", "b", 1.0), ("a", "c", 1.0)])
        lexicon = blair_goldensohn(graph, seeds(a=POS), params(DictAlgorithm.BLAIR_GOLDENSOHN, max_iterations=1))
        for term in ("b", "c"):
            self.assertEqual(lexicon.get(term).polarity, POS)
            self.assertAlmostEqual(lexicon.get(term).score, math.log(2))

    def test_matches_dense_matrix_power(self):
        rng = random.Random(3)
        for _ in range(20):
            graph, group = random_balanced_graph(rng, 20)
            picked = rng.sample(graph.nodes, 3)
            seed_set = seeds(**{t: POS if group[t] > 0 else NEG for t in picked})
            dense = graph.adjacency().toarray()
            v0 = np.array([0.0 if t not in picked else float(group[t]) for t in graph.nodes])
            for k in range(1, 6):
                lexicon = blair_goldensohn(graph, seed_set, params(DictAlgorithm.BLAIR_GOLDENSOHN, max_iterations=k))
                expected = np.linalg.matrix_power(dense, k) @ v0
                for i, term in enumerate(graph.nodes):
                    entry = lexicon.get(term)
                    if expected[i] == 0 and term not in picked:
                        self.assertIsNone(entry)
                        continue
                    self.assertLess(abs(entry.score - math.log1p(abs(expected[i]))), 1e-9)
                    if expected[i] != 0:
                        self.assertEqual(entry.polarity, POS if expected[i] > 0 else NEG)

    def test_overflow(self):
        nodes = [f"t{i:02d}" for i in range(30)]
        graph = TermGraph.from_edges([(u, v, 1.0) for u, v in itertools.combinations(nodes, 2)])
        with np.errstate(over="ignore", invalid="ignore"):
            with self.assertRaises(NumericOverflowError):
                blair_goldensohn(graph, seeds(t00=POS), params(DictAlgorithm.BLAIR_GOLDENSOHN, max_iterations=300))

    def test_neutral_seed_stays_zero(self):
        graph = TermGraph.from_edges([("a", "n", 1.0), ("n", "b", 1.0)])
        lexicon = blair_goldensohn(graph, seeds(a=POS, n=NEU), params(DictAlgorithm.BLAIR_GOLDENSOHN, max_iterations=4))
        self.assertEqual(lexicon.get("n").polarity, NEU)
        self.assertNotIn("b", lexicon)


class BlairGoldensohnIterationTests(SimpleTestCase):
    """A neutral term six hops from the positive seed enters the lexicon at K=6."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.graph = derive_term_graph(load_taxonomy_dir(DECAY))
        cls.seeds = read_seeds(DECAY / "seeds.tsv")
        cls.documents = read_documents(DECAY / "corpus.vert")
        cls.gold = read_gold(DECAY / "gold.tsv")

    def macro_f(self, iterations):
        lexicon = blair_goldensohn(self.graph, self.seeds, params(DictAlgorithm.BLAIR_GOLDENSOHN, max_iterations=iterations))
        return lexicon, evaluate_lexicon(lexicon, self.documents, self.gold).macro_f

    def test_sixth_iteration_hurts(self):
        five, macro_five = self.macro_f(5)
        six, macro_six = self.macro_f(6)
        self.assertNotIn("rechnung", five)
        self.assertEqual(six.get("rechnung").polarity, POS)
        self.assertAlmostEqual(macro_five, 1.0)
        self.assertLess(macro_six, macro_five)

class KimHovyTests(SimpleTestCase):
    def test_only_neighbor_is_positive_seed(self):
        graph = TermGraph.from_edges([("a", "w", 1.0), ("c", "z", 1.0)])
        lexicon = kim_hovy(graph, seeds(a=POS, c=NEG))
        self.assertEqual(lexicon.get("w").polarity, POS)

    def test_no_evidence_uniform_priors_is_neutral(self):
        graph = TermGraph.from_edges([("a", "w", 1.0)], nodes=["y"])
        lexicon = kim_hovy(graph, seeds(a=POS))
        self.assertEqual(lexicon.get("y").polarity, NEU)

    def test_hand_computed_posterior(self):
        graph = TermGraph.from_edges(
            [("a", "b", 1.0), ("b", "d", 1.0), ("c", "d", 1.0), ("d", "e", 1.0), ("e", "f", -1.0)]
        )
        seed_map = {"a": POS, "c": NEG}
        bags = class_bags(graph, seed_map)
        self.assertEqual(bags[POS], {"a", "b"})
        self.assertEqual(bags[NEG], {"c", "d"})
        # e's only positive neighbour is d: P(d|+) = 1/8, P(d|-) = 2/8, P(d|0) = 1/6
        posterior = kim_hovy_posterior(graph, "e", bags, (1 / 3, 1 / 3, 1 / 3))
        self.assertAlmostEqual(posterior[POS], 3 / 13, places=12)
        self.assertAlmostEqual(posterior[NEG], 6 / 13, places=12)
        self.assertAlmostEqual(posterior[NEU], 4 / 13, places=12)
        entry = kim_hovy(graph, seeds(a=POS, c=NEG)).get("e")
        self.assertEqual(entry.polarity, NEG)
        self.assertAlmostEqual(entry.score, 6 / 13, places=9)

    def test_priors_decide_without_evidence(self):
        graph = TermGraph.from_edges([("a", "w", 1.0)], nodes=["y"])
        lexicon = kim_hovy(graph, seeds(a=POS), params(DictAlgorithm.KIM_HOVY, priors=(0.2, 0.5, 0.3)))
        self.assertEqual(lexicon.get("y").polarity, NEG)


class EsuliSebastianiTests(SimpleTestCase):
    def test_identical_gloss_is_positive_under_rocchio(self):
        rows = [
            {"g:schön": 1, "g:angenehm": 1},
            {"g:schlecht": 1, "g:mies": 1},
            {"g:tisch": 1, "g:platte": 1},
            {"g:schön": 1, "g:angenehm": 1},
        ]
        X = DictVectorizer().fit_transform(rows)
        committee = GlossCommittee().fit(X[:3], [POS, NEG, NEU])
        margins = committee.member_margins(X[3:])["rocchio"]
        self.assertEqual(GlossCommittee.verdict(margins[POS][0], margins[NEG][0]), POS)

    def test_split_with_equal_distances_is_neutral(self):
        self.assertEqual(committee_vote([POS, NEG], {POS: 1.0, NEG: 1.0, NEU: 2.0}), NEU)
        self.assertEqual(committee_vote([POS, NEG], {POS: 0.5, NEG: 1.0, NEU: 2.0}), POS)
        self.assertEqual(committee_vote([NEG, NEG], {POS: 0.0, NEG: 9.0}), NEG)

    def test_transitive_expansion(self):
        graph = TermGraph.from_edges([("a", "b", 1.0), ("b", "c", 1.0)])
        self.assertEqual(expand_training_sets(graph, {"a": POS}, 2)["c"], (POS, 2))
        self.assertNotIn("c", expand_training_sets(graph, {"a": POS}, 1))

    def test_expansion_swaps_over_antonyms(self):
        graph = TermGraph.from_edges([("a", "b", -1.0), ("n", "m", 1.0), ("n", "k", -1.0)])
        training = expand_training_sets(graph, {"a": POS, "n": NEU}, 1)
        self.assertEqual(training["b"], (NEG, 1))
        self.assertEqual(training["m"], (NEU, 1))
        self.assertNotIn("k", training)

    def test_svm_member_uses_hinge_loss(self):
        X = DictVectorizer().fit_transform([{"g:schön": 1}, {"g:schlecht": 1}, {"g:tisch": 1}])
        committee = GlossCommittee().fit(X, [POS, NEG, NEU])
        for target in (POS, NEG):
            self.assertEqual(committee.tasks["svm"][target].model.loss, "hinge")

    def test_committee_overrides_expansion_labels(self):
        graph = TermGraph.from_edges([("a", "b", 1.0), ("b", "c", 1.0), ("n", "m", 1.0)])
        es_params = params(DictAlgorithm.ESULI_SEBASTIANI, expansion_rounds=2)
        self.assertEqual(expand_training_sets(graph, {"a": POS, "n": NEG}, 2)["c"], (POS, 2))

        def all_negative(committee, X):
            zeros = np.zeros(X.shape[0])
            return [NEG] * X.shape[0], {m: {POS: zeros, NEG: zeros} for m in GlossCommittee.MEMBERS}

        with mock.patch.object(GlossCommittee, "classify", all_negative):
            lexicon = esuli_sebastiani(graph, seeds(a=POS, n=NEG), es_params)
        self.assertEqual(lexicon.get("a").polarity, POS)
        for term in ("b", "c", "m"):
            self.assertEqual(lexicon.get(term).polarity, NEG)

    def test_degenerate_features(self):
        graph = TermGraph.from_edges([], nodes=["gut", "haus"])
        with self.assertRaises(DegenerateFeaturesError):
            esuli_sebastiani(graph, seeds(gut=POS))


class MinCutTests(SimpleTestCase):
    def test_heavier_side_wins(self):
        graph = TermGraph.from_edges([("p", "x", 1.0), ("x", "n", 0.5)])
        lexicon = rao_mincut(graph, seeds(p=POS, n=NEG))
        self.assertEqual(lexicon.get("x").polarity, POS)
        self.assertEqual(lexicon.get("x").score, 1.0)

    def test_component_without_seeds_is_not_polar(self):
        graph = TermGraph.from_edges([("p", "n", 0.5), ("x", "y", 1.0)])
        lexicon = rao_mincut(graph, seeds(p=POS, n=NEG))
        self.assertNotIn("x", lexicon.terms(POS) | lexicon.terms(NEG))

    def test_antonym_of_seed_goes_to_opposite_side(self):
        graph = TermGraph.from_edges([("p", "x", -1.0), ("p", "y", 0.3), ("y", "n", 0.2)])
        lexicon = rao_mincut(graph, seeds(p=POS, n=NEG))
        self.assertEqual(lexicon.get("x").polarity, NEG)

    @staticmethod
    def brute_force_cut(network, terms):
        best = math.inf
        for bits in itertools.product([True, False], repeat=len(terms)):
            side = {SOURCE} | {t for t, keep in zip(terms, bits) if keep}
            cost = 0.0
            for u, v, data in network.edges(data=True):
                if u in side and v not in side:
                    cost += data.get("capacity", math.inf)
            best = min(best, cost)
        return best

    def test_matches_exhaustive_enumeration(self):
        rng = random.Random(5)
        for _ in range(100):
            terms = [f"t{i}" for i in range(8)]
            edges = []
            for u, v in itertools.combinations(terms, 2):
                if rng.random() < 0.35:
                    edges.append((u, v, rng.choice([0.25, 0.5, 0.75, 1.0, -0.5, -1.0])))
            graph = TermGraph.from_edges(edges, nodes=terms)
            chosen = rng.sample(terms, 3)
            seed_map = {chosen[0]: POS, chosen[1]: NEG, chosen[2]: rng.choice([POS, NEG, NEU])}
            for source in (POS, NEG):
                value, side = min_cut_partition(graph, seed_map, source)
                network = cut_network(graph, seed_map, source)
                self.assertAlmostEqual(value, self.brute_force_cut(network, terms), places=9)
                achieved = sum(
                    d.get("capacity", math.inf)
                    for u, v, d in network.edges(data=True)
                    if (u == SOURCE or u in side) and not (v == SOURCE or v in side)
                )
                self.assertAlmostEqual(achieved, value, places=9)
                self.assertNotIn(SINK, side)


def random_signed_graph(rng: random.Random, n: int, density: float = 0.2):
    nodes = [f"t{i:02d}" for i in range(n)]
    edges = []
    for u, v in itertools.combinations(nodes, 2):
        if rng.random() < density:
            edges.append((u, v, rng.choice([0.2, 0.5, 1.0, -0.5, -1.0])))
    return TermGraph.from_edges(edges, nodes=nodes)


class LabelPropagationTests(SimpleTestCase):
    def test_seeds_stay_one_hot_and_rows_stay_distributions(self):
        rng = random.Random(9)
        graph = random_signed_graph(rng, 25)
        seed_map = {"t00": POS, "t01": NEG, "t02": NEU}
        for labels, _ in label_propagation_iterates(graph, seed_map, 200, 1e-12):
            np.testing.assert_array_equal(labels[graph.index("t00")], [1.0, 0.0, 0.0])
            np.testing.assert_array_equal(labels[graph.index("t01")], [0.0, 1.0, 0.0])
            np.testing.assert_array_equal(labels[graph.index("t02")], [0.0, 0.0, 1.0])
            self.assertTrue(np.all(labels >= 0))
            self.assertLess(np.max(np.abs(labels.sum(axis=1) - 1.0)), 1e-9)

    def test_symmetric_path_is_neutral(self):
        graph = TermGraph.from_edges([("p", "x", 1.0), ("x", "n", 1.0)])
        lexicon = rao_label_propagation(graph, seeds(p=POS, n=NEG))
        self.assertEqual(lexicon.get("x").polarity, NEU)
        self.assertAlmostEqual(lexicon.get("x").score, 0.5)

    def test_antonym_routes_swapped_mass(self):
        graph = TermGraph.from_edges([("p", "x", -1.0)])
        self.assertEqual(rao_label_propagation(graph, seeds(p=POS)).get("x").polarity, NEG)

    @staticmethod
    def dense_fixed_point(graph, seed_map, steps=10_000):
        dense = graph.adjacency().toarray()
        degree = np.abs(dense).sum(axis=1)
        safe = np.where(degree > 0, degree, 1.0)
        positive = np.maximum(dense, 0) / safe[:, None]
        negative = np.maximum(-dense, 0) / safe[:, None]
        labels = np.full((len(graph), 3), 1 / 3)
        clamp = {}
        for term, pol in seed_map.items():
            row = np.zeros(3)
            row[[POS, NEG, NEU].index(pol)] = 1.0
            clamp[graph.index(term)] = row
        for i, row in clamp.items():
            labels[i] = row
        for _ in range(steps):
            updated = positive @ labels + negative @ labels[:, [1, 0, 2]]
            updated[degree == 0] = labels[degree == 0]
            for i, row in clamp.items():
                updated[i] = row
            labels = updated
        return labels

    def test_matches_dense_iteration(self):
        rng = random.Random(13)
        for _ in range(50):
            graph = random_signed_graph(rng, rng.randint(5, 40), density=0.25)
            chosen = rng.sample(graph.nodes, 3)
            seed_map = {chosen[0]: POS, chosen[1]: NEG, chosen[2]: NEU}
            expected = self.dense_fixed_point(graph, seed_map)
            labels = None
            for labels, _ in label_propagation_iterates(graph, seed_map, 10_000, 1e-13):
                pass
            self.assertLess(np.max(np.abs(labels - expected)), 1e-6)


class RandomWalkTests(SimpleTestCase):
    def test_single_edge_to_positive_seed(self):
        graph = TermGraph.from_edges([("p", "x", 1.0), ("n", "m", 1.0)])
        h_pos, _ = hitting_times_for(graph, {"p": POS, "n": NEG}, "x", params(DictAlgorithm.RANDOM_WALK))
        self.assertEqual(h_pos, 1.0)
        self.assertEqual(awadallah_radwan(graph, seeds(p=POS, n=NEG)).get("x").polarity, POS)

    def test_walk_stops_at_first_seed(self):
        graph = TermGraph.from_edges([("n", "p", 1.0), ("p", "x", 1.0)])
        walk_params = params(DictAlgorithm.RANDOM_WALK, walks_per_node=2000, max_walk_length=20)
        h_pos, h_neg = hitting_times_for(graph, {"p": POS, "n": NEG}, "x", walk_params)
        self.assertEqual((h_pos, h_neg), (1.0, 20.0))
        entry = awadallah_radwan(graph, seeds(p=POS, n=NEG), walk_params).get("x")
        self.assertEqual(entry.polarity, POS)
        self.assertAlmostEqual(entry.score, 0.95)

    def test_unreached_classes_count_as_max_length(self):
        graph = TermGraph.from_edges([("x", "y", 1.0), ("p", "n", 1.0)])
        walk_params = params(DictAlgorithm.RANDOM_WALK, walks_per_node=50, max_walk_length=7)
        self.assertEqual(hitting_times_for(graph, {"p": POS, "n": NEG}, "x", walk_params), (7.0, 7.0))

    def test_symmetric_path_is_neutral(self):
        # every walk stops after one step, so |h_pos - h_neg| = |2f - 1| * (max_length - 1)
        graph = TermGraph.from_edges([("p", "x", 1.0), ("x", "n", 1.0)])
        walk_params = params(DictAlgorithm.RANDOM_WALK, walks_per_node=40_000, max_walk_length=5, rng_seed=17)
        h_pos, h_neg = hitting_times_for(graph, {"p": POS, "n": NEG}, "x", walk_params)
        self.assertLess(abs(h_pos - h_neg), 0.15)
        self.assertEqual(awadallah_radwan(graph, seeds(p=POS, n=NEG), walk_params).get("x").polarity, NEU)

    def test_fixed_seed_is_deterministic(self):
        rng = random.Random(21)
        graph = random_signed_graph(rng, 30)
        seed_set = seeds(t00=POS, t01=NEG)
        first = awadallah_radwan(graph, seed_set, params(DictAlgorithm.RANDOM_WALK, rng_seed=4))
        second = awadallah_radwan(graph, seed_set, params(DictAlgorithm.RANDOM_WALK, rng_seed=4))
        self.assertEqual(dict(first.entries), dict(second.entries))


class ToyTaxonomyTests(ToyTaxonomyMixin, SimpleTestCase):
    def run_algorithm(self, algorithm, seed_set=None):
        return induce_from_dictionary(
            self.toy_graph, seed_set or self.toy_seeds, params(algorithm), glosses=self.toy_glosses
        )

    def test_polar_seeds_keep_their_polarity(self):
        present = {t: p for t, p in self.toy_seeds.resolve(self.toy_graph.nodes).items() if p.is_polar}
        for algorithm in DICTIONARY_ALGORITHMS:
            with self.subTest(algorithm=algorithm):
                lexicon = self.run_algorithm(algorithm)
                self.assertLessEqual(set(lexicon.entries), set(self.toy_graph.nodes))
                for term, polarity in present.items():
                    self.assertEqual(lexicon.get(term).polarity, polarity)

    def test_absent_seeds_are_reported(self):
        with self.assertLogs("sentilex.dictionary", level="WARNING") as logs:
            self.run_algorithm(DictAlgorithm.HU_LIU)
        self.assertTrue(any("absent from the graph" in line for line in logs.output))

    def test_seed_neighbours_are_labelled(self):
        # neighbourhoods dominated by same-polarity seeds; the walk ignores edge signs
        expected = {"toll": POS, "hervorragend": POS, "prima": POS, "mies": NEG, "miserabel": NEG}
        for algorithm in DICTIONARY_ALGORITHMS:
            lexicon = self.run_algorithm(algorithm)
            for term, polarity in expected.items():
                with self.subTest(algorithm=algorithm, term=term):
                    self.assertEqual(lexicon.get(term).polarity, polarity)

    def test_flipping_seeds_swaps_polar_sets(self):
        flipped = self.toy_seeds.flipped()
        for algorithm in (
            DictAlgorithm.HU_LIU,
            DictAlgorithm.BLAIR_GOLDENSOHN,
            DictAlgorithm.MINCUT,
            DictAlgorithm.LABEL_PROPAGATION,
            DictAlgorithm.RANDOM_WALK,
        ):
            with self.subTest(algorithm=algorithm):
                positive, negative = polar_sets(self.run_algorithm(algorithm))
                flipped_positive, flipped_negative = polar_sets(self.run_algorithm(algorithm, flipped))
                self.assertEqual(positive, flipped_negative)
                self.assertEqual(negative, flipped_positive)

    def test_esuli_sebastiani_labels_gloss_neighbours(self):
        lexicon = self.run_algorithm(DictAlgorithm.ESULI_SEBASTIANI)
        for entry in lexicon.entries.values():
            self.assertGreaterEqual(entry.score, 0.0)
            self.assertLessEqual(entry.score, 1.0)
        self.assertEqual(len(lexicon), len(self.toy_graph))
