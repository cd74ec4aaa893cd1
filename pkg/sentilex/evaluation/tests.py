import json
import random
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from sentilex.corpus.utils import Token, TokenizedDocument
from sentilex.evaluation.reports import ReportFormat, format_report, parse_report
from sentilex.evaluation.scoring import evaluate, gold_as_matches
from sentilex.evaluation.service import evaluate_lexicon
from sentilex.evaluation.utils import (
    GoldAnnotation,
    MatchChannel,
    MatchSpan,
    MatchTrie,
    build_trie,
    exclude_nonalphabetic,
    match_corpus,
    read_gold,
    validate_gold,
)
from sentilex.lexicon.exceptions import GoldValidationError, ValidationError
from sentilex.lexicon.utils import Lexicon, LexiconEntry, Polarity

POS, NEG, NEU = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL


def lex(*items):
    return Lexicon.from_entries([LexiconEntry(t, p, 1.0) for t, p in items], provenance="t")


def sentence(doc_id, text, lemmas=None):
    forms = text.split()
    lemmas = lemmas.split() if lemmas else [f.lower() for f in forms]
    return TokenizedDocument(doc_id, tuple(Token(f, l) for f, l in zip(forms, lemmas)))


# ten tokens, one positive gold span over "sehr gut"
FIXTURE = sentence("d1", "Das ist sehr gut , aber leider zu teuer .")
FIXTURE_GOLD = [GoldAnnotation("d1", 2, 4, POS, "sehr gut")]
FIXTURE_LEXICON = lex(("sehr gut", POS), ("leider", NEG))


class GoldFileTests(SimpleTestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)

    def write(self, text):
        path = Path(self._tmp.name) / "gold.tsv"
        path.write_text(text, encoding="utf-8")
        return path

    def test_reads_annotations(self):
        gold = read_gold(self.write("# doc start end polarity surface\nd1\t2\t4\tpositive\tsehr gut\nd1\t6\t7\tnegative\n"))
        self.assertEqual(gold, [GoldAnnotation("d1", 2, 4, POS, "sehr gut"), GoldAnnotation("d1", 6, 7, NEG)])
        self.assertEqual(gold[0].line, 2)

    def test_every_bad_line_is_listed(self):
        with self.assertRaises(GoldValidationError) as ctx:
            read_gold(self.write("d1\t2\t4\tpositive\nd1\tx\t4\tpositive\nd1\t3\t3\tnegative\nd1\t1\t2\tneutral\n"))
        self.assertEqual([line for line, _ in ctx.exception.problems], [2, 3, 4])
        self.assertIsInstance(ctx.exception, ValidationError)

    def test_out_of_bounds_and_overlap(self):
        gold = [
            GoldAnnotation("d1", 8, 11, POS, line=1),
            GoldAnnotation("d1", 2, 4, POS, line=2),
            GoldAnnotation("d1", 3, 5, NEG, line=3),
            GoldAnnotation("zz", 0, 1, NEG, line=4),
        ]
        with self.assertRaises(GoldValidationError) as ctx:
            validate_gold(gold, [FIXTURE])
        self.assertEqual(sorted(line for line, _ in ctx.exception.problems), [1, 3, 4])


class MatchTrieTests(SimpleTestCase):
    def test_multiword_entry(self):
        trie = build_trie(lex(("sehr gut", POS)))
        self.assertEqual(trie.depth, 2)
        self.assertEqual(len(trie), 1)
        self.assertEqual(trie.lookup(["Sehr", "GUT"]), ("sehr gut", POS))
        self.assertIsNone(trie.lookup(["sehr"]))

    def test_normalization_collapses_case_variants(self):
        trie = MatchTrie()
        trie.add("gut", POS)
        trie.add("GUT", POS)
        self.assertEqual(len(trie), 1)
        self.assertEqual(list(trie.root.children), ["gut"])

    def test_every_entry_is_retrievable(self):
        rng = random.Random(4)
        words = [f"w{i}" for i in range(40)]
        terms = {" ".join(rng.sample(words, rng.randint(1, 3))) for _ in range(1200)}
        terms = sorted(terms)[:1000]
        lexicon = lex(*[(t, rng.choice([POS, NEG, NEU])) for t in terms])
        trie = build_trie(lexicon)
        self.assertEqual(len(trie), len(lexicon))
        for entry in lexicon:
            self.assertEqual(trie.lookup(entry.term.split(" ")), (entry.term, entry.polarity))


class MatchCorpusTests(SimpleTestCase):
    def test_form_and_lemma_agreeing(self):
        matches = match_corpus(build_trie(lex(("gut", POS))), [sentence("1", "Gut", "gut")])
        self.assertEqual(matches, [MatchSpan("1", 0, 1, POS, "gut", MatchChannel.FORM)])

    def test_lemma_channel(self):
        matches = match_corpus(build_trie(lex(("gut", POS))), [sentence("1", "Guten Morgen", "gut morgen")])
        self.assertEqual(matches, [MatchSpan("1", 0, 1, POS, "gut", MatchChannel.LEMMA)])

    def test_longest_match_wins(self):
        matches = match_corpus(build_trie(lex(("gut", POS), ("sehr gut", POS))), [sentence("1", "sehr gut")])
        self.assertEqual([(m.start, m.end, m.term) for m in matches], [(0, 2, "sehr gut")])

    def test_lemma_branch_can_outrun_form_branch(self):
        trie = build_trie(lex(("gute", POS), ("gut nacht", NEU)))
        matches = match_corpus(trie, [sentence("1", "Gute Nacht", "gut nacht")])
        self.assertEqual(matches, [MatchSpan("1", 0, 2, NEU, "gut nacht", MatchChannel.MIXED)])

    def test_no_overlap_no_matches(self):
        self.assertEqual(match_corpus(build_trie(lex(("toll", POS))), [sentence("1", "ein ganz normaler Tag")]), [])

    def test_spans_never_overlap_and_fit_entry_length(self):
        rng = random.Random(9)
        words = ["a", "b", "c", "d"]
        lexicon = lex(*{(" ".join(rng.choices(words, k=rng.randint(1, 3))), POS) for _ in range(8)})
        documents = [sentence(str(i), " ".join(rng.choices(words, k=15))) for i in range(20)]
        matches = match_corpus(build_trie(lexicon), documents)
        self.assertEqual(matches, match_corpus(build_trie(lexicon), documents))
        by_doc = {}
        for m in matches:
            self.assertEqual(m.end - m.start, len(m.term.split(" ")))
            by_doc.setdefault(m.doc_id, []).append(m)
        for spans in by_doc.values():
            for previous, current in zip(spans, spans[1:]):
                self.assertLessEqual(previous.end, current.start)


class EvaluateTests(SimpleTestCase):
    def test_hand_counted_fixture(self):
        report = evaluate_lexicon(FIXTURE_LEXICON, [FIXTURE], FIXTURE_GOLD)
        self.assertEqual((report.positive.precision, report.positive.recall, report.positive.f1), (1.0, 1.0, 1.0))
        self.assertEqual((report.negative.precision, report.negative.recall, report.negative.f1), (0.0, 0.0, 0.0))
        self.assertEqual((report.negative.tp, report.negative.fp, report.negative.fn), (0, 1, 0))
        self.assertEqual(report.neutral.precision, 1.0)
        self.assertAlmostEqual(report.neutral.recall, 7 / 8, delta=1e-12)
        self.assertAlmostEqual(report.neutral.f1, 2 * 0.875 / 1.875, delta=1e-12)
        self.assertAlmostEqual(report.macro_f, (1 + 0 + 2 * 0.875 / 1.875) / 3, delta=1e-12)
        self.assertAlmostEqual(report.micro_f, 0.9, delta=1e-12)
        self.assertEqual(report.lexicon_size, 2)

    def test_perfect_lexicon(self):
        document = sentence("d1", "gut und schlecht und sehr gut")
        gold = [GoldAnnotation("d1", 0, 1, POS), GoldAnnotation("d1", 2, 3, NEG), GoldAnnotation("d1", 4, 6, POS)]
        report = evaluate_lexicon(lex(("gut", POS), ("schlecht", NEG), ("sehr gut", POS)), [document], gold)
        for polarity in (POS, NEG, NEU):
            scores = {POS: report.positive, NEG: report.negative, NEU: report.neutral}[polarity]
            self.assertEqual((scores.precision, scores.recall, scores.f1), (1.0, 1.0, 1.0))
        self.assertEqual((report.macro_f, report.micro_f), (1.0, 1.0))

    def test_empty_lexicon(self):
        report = evaluate_lexicon(Lexicon.empty(), [FIXTURE], FIXTURE_GOLD)
        self.assertEqual((report.positive.f1, report.negative.f1), (0.0, 0.0))
        self.assertEqual(report.neutral.recall, 1.0)
        self.assertAlmostEqual(report.neutral.precision, 8 / 10, delta=1e-12)

    def test_gold_replayed_as_matches(self):
        document = sentence("d1", "gut und schlecht und sehr gut")
        gold = [GoldAnnotation("d1", 0, 1, POS), GoldAnnotation("d1", 2, 3, NEG), GoldAnnotation("d1", 4, 6, POS)]
        self.assertEqual(evaluate(gold_as_matches(gold), gold, [document]).macro_f, 1.0)

    def test_micro_equals_token_accuracy(self):
        rng = random.Random(21)
        words = ["gut", "schlecht", "tag", "haus", "toll", "mies"]
        documents = [sentence(str(i), " ".join(rng.choices(words, k=12))) for i in range(10)]
        gold = []
        for document in documents:
            position = 0
            while position < len(document) - 1:
                if rng.random() < 0.3:
                    gold.append(GoldAnnotation(document.doc_id, position, position + 1, rng.choice([POS, NEG])))
                position += rng.randint(1, 3)
        lexicon = lex(("gut", POS), ("toll", POS), ("schlecht", NEG), ("tag", NEG))
        report = evaluate_lexicon(lexicon, documents, gold)

        gold_class = {(a.doc_id, a.start): a.polarity for a in gold}
        matches = match_corpus(build_trie(lexicon), documents)
        predicted_class = {(m.doc_id, m.start): m.polarity for m in matches}
        total = sum(len(d) for d in documents)
        correct = sum(
            gold_class.get((d.doc_id, i), NEU) == predicted_class.get((d.doc_id, i), NEU)
            for d in documents
            for i in range(len(d))
        )
        self.assertAlmostEqual(report.micro_f, correct / total, delta=1e-12)

    def test_unmatched_entry_changes_nothing(self):
        base = evaluate_lexicon(FIXTURE_LEXICON, [FIXTURE], FIXTURE_GOLD)
        grown = evaluate_lexicon(lex(("sehr gut", POS), ("leider", NEG), ("fantastisch", POS)), [FIXTURE], FIXTURE_GOLD)
        self.assertEqual((grown.macro_f, grown.micro_f), (base.macro_f, base.micro_f))
        self.assertEqual((grown.positive, grown.negative, grown.neutral), (base.positive, base.negative, base.neutral))

    def test_out_of_bounds_gold_is_rejected(self):
        with self.assertRaises(GoldValidationError):
            evaluate([], [GoldAnnotation("d1", 9, 12, POS)], [FIXTURE])

    def test_nonalphabetic_filter(self):
        document = sentence("d1", "super :-) echt toll")
        gold = [GoldAnnotation("d1", 1, 2, POS), GoldAnnotation("d1", 3, 4, POS)]
        matches = match_corpus(build_trie(lex((":-)", POS), ("toll", POS))), [document])
        kept_gold, kept_matches = exclude_nonalphabetic(gold, matches, [document])
        self.assertEqual([a.start for a in kept_gold], [3])
        self.assertEqual([m.term for m in kept_matches], ["toll"])


class FormatReportTests(SimpleTestCase):
    def fixture_report(self):
        return evaluate_lexicon(FIXTURE_LEXICON, [FIXTURE], FIXTURE_GOLD)

    def test_perfect_report_prints_ones(self):
        document = sentence("d1", "gut und schlecht")
        gold = [GoldAnnotation("d1", 0, 1, POS), GoldAnnotation("d1", 2, 3, NEG)]
        text = format_report(evaluate_lexicon(lex(("gut", POS), ("schlecht", NEG)), [document], gold))
        for line in text.splitlines()[1:4]:
            self.assertEqual(line.split()[1:4], ["1.000", "1.000", "1.000"])
        self.assertIn("macro-F 1.000  micro-F 1.000", text)

    def test_fixture_text_row(self):
        lines = format_report(self.fixture_report(), ReportFormat.TEXT).splitlines()
        rows = {line.split()[0]: line.split() for line in lines[1:4]}
        self.assertEqual(rows["positive"][3], "1.000")
        self.assertEqual(rows["negative"][3], "0.000")
        self.assertIn("terms 2", lines[4])

    def test_json_round_trip(self):
        report = self.fixture_report()
        text = format_report(report, ReportFormat.JSON)
        self.assertEqual(json.loads(text)["negative"]["fp"], 1)
        self.assertEqual(parse_report(text), report)

    def test_csv_row(self):
        lines = format_report(self.fixture_report(), ReportFormat.CSV_ROW).splitlines()
        self.assertEqual(lines[0], "positive_f,negative_f,neutral_f,macro_f,micro_f,lexicon_size")
        self.assertEqual(lines[1].split(",")[:2], ["1.000", "0.000"])
        self.assertEqual(lines[1].split(",")[-1], "2")
