import math
import random
import tempfile
from collections import Counter
from decimal import Decimal, localcontext
from pathlib import Path

from django.test import SimpleTestCase

from sentilex.corpus.graphs import EdgeSource, Weighting, build_cooccurrence_graph
from sentilex.corpus.utils import (
    DocumentLabel,
    LabeledDocumentSet,
    Token,
    TokenizedDocument,
    compute_stats,
    distant_label,
    load_corpus,
    pmi,
    read_documents,
)
from sentilex.lexicon.exceptions import EmptyCorpusError, OutOfVocabularyError, ParseError
from sentilex.lexicon.utils import Polarity, SeedEntry, SeedKind, SeedSet
from sentilex.taxonomy.utils import TermGraph

POS, NEG = Polarity.POSITIVE, Polarity.NEGATIVE

SEEDS = SeedSet(entries=(SeedEntry("gut", POS), SeedEntry("schlecht", NEG)), name="gold")


def doc(doc_id, *lemmas):
    return TokenizedDocument(doc_id, tuple(Token(form=lemma, lemma=lemma) for lemma in lemmas))


def vertical(documents) -> str:
    blocks = []
    for document in documents:
        lines = [f"#doc {document.doc_id}"] + [f"{t.form}\t{t.lemma}" for t in document.tokens]
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


class CorpusFileMixin:
    def setUp(self):
        super().setUp()
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)

    def write(self, text: str, name: str = "corpus.vert") -> Path:
        path = Path(self._tmp.name) / name
        path.write_text(text, encoding="utf-8")
        return path


def synthetic_documents(rng: random.Random, n_docs: int, vocabulary: list[str], max_len: int = 20):
    return [
        doc(f"d{i}", *(rng.choice(vocabulary) for _ in range(rng.randint(1, max_len))))
        for i in range(n_docs)
    ]


class ReadDocumentsTests(CorpusFileMixin, SimpleTestCase):
    def test_forms_verbatim_lemmas_normalized(self):
        path = self.write("#doc 1\nTolle\tToll\n:-)\t:-)\n\n#doc 2\nMist\tmist\n")
        documents = read_documents(path)
        self.assertEqual([d.doc_id for d in documents], ["1", "2"])
        self.assertEqual(documents[0].tokens[0], Token(form="Tolle", lemma="toll"))
        self.assertEqual(documents[0].forms, ["Tolle", ":-)"])

    def test_comment_lines_are_skipped(self):
        path = self.write("# exported corpus\n#doc a\nx\tx\n")
        self.assertEqual(len(read_documents(path)), 1)

    def test_token_outside_document(self):
        with self.assertRaises(ParseError) as ctx:
            read_documents(self.write("x\tx\n"))
        self.assertEqual(ctx.exception.line, 1)

    def test_malformed_token_line_reports_location(self):
        with self.assertRaises(ParseError) as ctx:
            read_documents(self.write("#doc a\nx\tx\nbroken line\n"))
        self.assertEqual(ctx.exception.line, 3)

    def test_empty_document(self):
        with self.assertRaises(ParseError):
            read_documents(self.write("#doc a\n\n#doc b\nx\tx\n"))

    def test_duplicate_document_id(self):
        with self.assertRaises(ParseError):
            read_documents(self.write("#doc a\nx\tx\n\n#doc a\ny\ty\n"))

    def test_empty_corpus(self):
        with self.assertRaises(EmptyCorpusError):
            read_documents(self.write("# nothing here\n"))


class LoadCorpusTests(CorpusFileMixin, SimpleTestCase):
    def test_min_freq_filters_vocabulary(self):
        path = self.write(vertical([doc("1", "a", "a", "b")]))
        _, stats = load_corpus(path, min_freq=2)
        self.assertEqual(stats.vocabulary, {"a"})
        self.assertEqual(stats.tf("a"), 2)
        with self.assertRaises(OutOfVocabularyError):
            stats.tf("b")

    def test_min_freq_one_keeps_everything(self):
        _, stats = load_corpus(self.write(vertical([doc("1", "a", "a", "b")])), min_freq=1)
        self.assertEqual(stats.vocabulary, {"a", "b"})
        self.assertEqual(stats.n_tokens, 3)
        self.assertEqual(stats.n_docs, 1)

    def test_counts_match_line_counting(self):
        rng = random.Random(3)
        vocabulary = [f"w{i}" for i in range(25)]
        path = self.write(vertical(synthetic_documents(rng, 100, vocabulary)))
        _, stats = load_corpus(path, min_freq=1)

        tf, df, seen = Counter(), Counter(), set()
        for line in path.read_text(encoding="utf-8").splitlines():
            if line.startswith("#doc"):
                df.update(seen)
                seen = set()
            elif "\t" in line:
                lemma = line.split("\t")[1]
                tf[lemma] += 1
                seen.add(lemma)
        df.update(seen)

        self.assertEqual(dict(stats.term_frequency), dict(tf))
        self.assertEqual(dict(stats.document_frequency), dict(df))
        self.assertEqual(stats.n_tokens, sum(tf.values()))

    def test_filtered_terms_leave_no_cooccurrence(self):
        stats = compute_stats([doc("1", "a", "b", "a", "c", "a")], min_freq=2, window=5)
        self.assertEqual(dict(stats.cooccurrence), {})


class CooccurrenceGraphTests(SimpleTestCase):
    def test_adjacent_pair_has_weight_one(self):
        documents = [doc("1", "a", "b")]
        graph = build_cooccurrence_graph(documents, compute_stats(documents, min_freq=1, window=1), window=1)
        self.assertEqual(graph.edges(), [("a", "b", 1.0)])

    def test_pair_outside_window(self):
        documents = [doc("1", "a", "c", "b")]
        graph = build_cooccurrence_graph(documents, compute_stats(documents, min_freq=1, window=1), window=1)
        self.assertIsNone(graph.weight("a", "b"))
        self.assertIsNotNone(graph.weight("a", "c"))

    def test_window_override_recounts(self):
        documents = [doc("1", "a", "c", "b")]
        stats = compute_stats(documents, min_freq=1, window=1)
        graph = build_cooccurrence_graph(documents, stats, window=2, weighting=Weighting.COUNT)
        self.assertEqual(graph.weight("a", "b"), 1.0)

    def test_cooccurrence_symmetric(self):
        rng = random.Random(11)
        documents = synthetic_documents(rng, 50, list("abcdefg"))
        stats = compute_stats(documents, min_freq=1, window=3)
        for u in stats.vocabulary:
            for v in stats.vocabulary:
                self.assertEqual(stats.cooccurrence_count(u, v), stats.cooccurrence_count(v, u))

    def test_pmi_weights_match_brute_force(self):
        rng = random.Random(5)
        vocabulary = [f"t{i}" for i in range(20)]
        documents = synthetic_documents(rng, 500, vocabulary, max_len=12)
        window = 3
        stats = compute_stats(documents, min_freq=4, window=window)
        graph = build_cooccurrence_graph(documents, stats, window=window, weighting=Weighting.PMI)

        tf = Counter(lemma for d in documents for lemma in d.lemmas)
        total = sum(tf.values())
        joint = Counter()
        for d in documents:
            lemmas = d.lemmas
            for i in range(len(lemmas)):
                for j in range(i + 1, len(lemmas)):
                    u, v = lemmas[i], lemmas[j]
                    if j - i <= window and u != v and tf[u] >= 4 and tf[v] >= 4:
                        joint[tuple(sorted((u, v)))] += 1
        brute = {
            pair: math.log2((c + 0.5) * total / ((tf[pair[0]] + 0.5) * (tf[pair[1]] + 0.5)))
            for pair, c in joint.items()
        }
        brute = {pair: value for pair, value in brute.items() if value > 0}
        top = max(brute.values())

        self.assertEqual({(u, v) for u, v, _ in graph.edges()}, set(brute))
        for u, v, w in graph.edges():
            self.assertAlmostEqual(w, brute[(u, v)] / top, places=12)
            self.assertTrue(0 < w <= 1)
        self.assertTrue(set(graph.nodes) <= stats.vocabulary)

    def test_conjunction_edges(self):
        documents = [doc("1", "toll", "und", "super"), doc("2", "toll", "sowie", "prima", "tag")]
        stats = compute_stats(documents, min_freq=1, window=1)
        graph = build_cooccurrence_graph(
            documents, stats, weighting=Weighting.COUNT, edge_source=EdgeSource.CONJUNCTION
        )
        self.assertEqual(graph.edges(), [("prima", "toll", 1.0), ("super", "toll", 1.0)])

        both = build_cooccurrence_graph(documents, stats, weighting=Weighting.COUNT, edge_source=EdgeSource.BOTH)
        self.assertIsNotNone(both.weight("toll", "und"))
        self.assertIsNotNone(both.weight("toll", "super"))

    def test_count_weighting(self):
        documents = [doc("1", "a", "b", "a", "b", "c")]
        stats = compute_stats(documents, min_freq=1, window=1)
        graph = build_cooccurrence_graph(documents, stats, weighting=Weighting.COUNT)
        self.assertEqual(graph.weight("a", "b"), 1.0)
        self.assertAlmostEqual(graph.weight("b", "c"), 1 / 3)

    def test_merged_keeps_antonym_edges(self):
        documents = [doc("1", "gut", "toll", "mies")]
        stats = compute_stats(documents, min_freq=1, window=1)
        graph = build_cooccurrence_graph(documents, stats, weighting=Weighting.COUNT)
        taxonomy = TermGraph.from_edges([("gut", "schlecht", -1.0), ("gut", "toll", 0.5)])
        merged = graph.merged(taxonomy)
        self.assertTrue(merged.has_taxonomy_edges)
        self.assertEqual(merged.weight("gut", "schlecht"), -1.0)
        self.assertEqual(merged.weight("gut", "toll"), 1.0)
        self.assertIn("schlecht", merged)


class DistantLabelTests(SimpleTestCase):
    def test_single_polarity_document(self):
        labeled = distant_label([doc("1", "das", "ist", "gut")], SEEDS)
        self.assertEqual(labeled.labels["1"], DocumentLabel.POSITIVE)
        self.assertEqual((labeled.n_pos, labeled.n_neg), (1, 0))

    def test_conflict_and_silence_are_discarded(self):
        labeled = distant_label([doc("1", "gut", "und", "schlecht"), doc("2", "nichts")], SEEDS)
        self.assertEqual(labeled.labels["1"], DocumentLabel.DISCARDED)
        self.assertEqual(labeled.labels["2"], DocumentLabel.DISCARDED)
        self.assertEqual(labeled.class_totals, (0, 0))

    def test_pattern_seeds_match_forms(self):
        seeds = SeedSet(
            entries=(SeedEntry(r"[:;=]-?[)D\]]", POS, SeedKind.PATTERN), SeedEntry(r"[:;=]-?[(\[]", NEG, SeedKind.PATTERN))
        )
        documents = [
            TokenizedDocument("1", (Token("Super", "super"), Token(":-)", "smiley"))),
            TokenizedDocument("2", (Token("Mist", "mist"), Token(":(", "smiley"))),
        ]
        labeled = distant_label(documents, seeds)
        self.assertEqual(dict(labeled.labels), {"1": DocumentLabel.POSITIVE, "2": DocumentLabel.NEGATIVE})

    def test_imbalance_warning(self):
        documents = [doc(f"p{i}", "gut", "tag") for i in range(9)] + [doc("n0", "schlecht", "tag")]
        with self.assertLogs("sentilex.corpus.utils", level="WARNING") as logs:
            labeled = distant_label(documents, SEEDS)
        self.assertEqual(labeled.ratio(), 9.0)
        self.assertIn("imbalanced", "\n".join(logs.output))

    def test_stable_under_permutation(self):
        rng = random.Random(2)
        documents = synthetic_documents(rng, 60, ["gut", "schlecht", "tag", "haus", "und"], max_len=5)
        expected = distant_label(documents, SEEDS)
        for _ in range(5):
            shuffled = list(documents)
            rng.shuffle(shuffled)
            again = distant_label(shuffled, SEEDS)
            self.assertEqual(dict(again.labels), dict(expected.labels))
            self.assertEqual(dict(again.class_counts), dict(expected.class_counts))

    def test_class_counts_bounded_by_frequency(self):
        rng = random.Random(8)
        documents = synthetic_documents(rng, 80, ["gut", "schlecht", "tag", "haus"], max_len=6)
        stats = compute_stats(documents, min_freq=1)
        labeled = distant_label(documents, SEEDS, stats=stats)
        self.assertLessEqual(labeled.n_pos + labeled.n_neg, stats.n_docs)
        for term, (pos, neg) in labeled.class_counts.items():
            self.assertLessEqual(pos + neg, stats.tf(term))


class PmiTests(SimpleTestCase):
    def test_hand_computed_value(self):
        labeled = LabeledDocumentSet(labels={}, class_counts={"w": (8, 2)}, class_totals=(50, 50))
        with localcontext() as ctx:
            ctx.prec = 40
            ratio = (Decimal("8.5") * 100) / (Decimal("10.5") * Decimal("50.5"))
            expected = float(ratio.ln() / Decimal(2).ln())
        self.assertAlmostEqual(pmi(labeled, "w", POS), expected, places=12)

    def test_sign_for_class_exclusive_term(self):
        documents = [doc(f"p{i}", "gut", "toll", "tag") for i in range(20)]
        documents += [doc(f"n{i}", "schlecht", "mies", "tag") for i in range(20)]
        labeled = distant_label(documents, SEEDS)
        self.assertGreater(pmi(labeled, "toll", POS), 0)
        self.assertLess(pmi(labeled, "toll", NEG), 0)

    def test_independent_term_is_near_zero(self):
        documents = [doc(f"p{i}", "gut", "tag", "haus", "auto") for i in range(1000)]
        documents += [doc(f"n{i}", "schlecht", "tag", "haus", "auto") for i in range(1000)]
        labeled = distant_label(documents, SEEDS)
        self.assertLess(abs(pmi(labeled, "tag", POS)), 0.05)
        self.assertLess(abs(pmi(labeled, "tag", NEG)), 0.05)

    def test_term_pmi_and_out_of_vocabulary(self):
        documents = [doc("1", "a", "b")]
        stats = compute_stats(documents, min_freq=1, window=1)
        self.assertAlmostEqual(pmi(stats, "a", "b"), math.log2(1.5 * 2 / (1.5 * 1.5)))
        with self.assertRaises(OutOfVocabularyError):
            pmi(stats, "a", "zzz")
        with self.assertRaises(KeyError):
            pmi(distant_label(documents, SEEDS), "a", POS)
