import random
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from sentilex.lexicon.exceptions import InconsistentSeedsError, InvalidTermError, ParseError, ValidationError
from sentilex.lexicon.formats import format_lexicon, read_lexicon, read_seeds, write_lexicon
from sentilex.lexicon.utils import (
    Lexicon,
    LexiconEntry,
    Polarity,
    SeedEntry,
    SeedKind,
    SeedSet,
    lexicon_intersection,
    lexicon_union,
    normalize_term,
    top_k,
)

POS, NEG, NEU = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL


def lex(*items, provenance="t"):
    return Lexicon.from_entries([LexiconEntry(t, p, s) for t, p, s in items], provenance=provenance)


def random_lexicon(rng: random.Random) -> Lexicon:
    terms = rng.sample(["a", "b", "c", "d", "e"], rng.randint(0, 5))
    return lex(*[(t, rng.choice(list(Polarity)), rng.choice([0.1, 0.5, 0.9])) for t in terms])


class NormalizeTermTests(SimpleTestCase):
    def test_case_fold_and_trim(self):
        self.assertEqual(normalize_term("Gut "), "gut")

    def test_whitespace_collapse(self):
        self.assertEqual(normalize_term("sehr   GUT"), "sehr gut")
        self.assertEqual(normalize_term("\tsehr\n gut "), "sehr gut")

    def test_sharp_s_is_kept(self):
        self.assertEqual(normalize_term("Außergewöhnlich"), "außergewöhnlich")

    def test_empty_after_trim_is_rejected(self):
        with self.assertRaises(InvalidTermError):
            normalize_term("   ")

    def test_idempotent(self):
        for raw in ["Gut ", "sehr   GUT", "Außergewöhnlich", " ÄRGER  über"]:
            once = normalize_term(raw)
            self.assertEqual(normalize_term(once), once)


class LexiconEntryTests(SimpleTestCase):
    def test_rejects_unnormalized_term(self):
        with self.assertRaises(InvalidTermError):
            LexiconEntry("Gut", POS, 1.0)

    def test_rejects_negative_score(self):
        with self.assertRaises(ValidationError):
            LexiconEntry("gut", POS, -0.5)

    def test_neutral_zero_score_allowed(self):
        self.assertEqual(LexiconEntry("tisch", NEU, 0.0).score, 0.0)

    def test_duplicate_terms_rejected(self):
        with self.assertRaises(ValidationError):
            lex(("gut", POS, 1.0), ("gut", NEG, 0.5))


class SetAlgebraTests(SimpleTestCase):
    def test_union_of_disjoint_lexicons(self):
        merged = lexicon_union([lex(("a", POS, 0.9)), lex(("b", NEG, 0.5))])
        self.assertEqual(dict(merged.entries), {"a": LexiconEntry("a", POS, 0.9), "b": LexiconEntry("b", NEG, 0.5)})

    def test_union_conflict_highest_score_wins(self):
        merged = lexicon_union([lex(("a", POS, 0.9)), lex(("a", NEG, 0.2))])
        self.assertEqual(merged.get("a"), LexiconEntry("a", POS, 0.9))

    def test_union_conflict_tie_becomes_neutral(self):
        merged = lexicon_union([lex(("a", POS, 0.5)), lex(("a", NEG, 0.5))])
        self.assertEqual(merged.get("a"), LexiconEntry("a", NEU, 0.5))

    def test_union_idempotent(self):
        base = lex(("a", POS, 0.9), ("b", NEG, 0.1), ("c", NEU, 0.0))
        self.assertEqual(dict(lexicon_union([base, base]).entries), dict(base.entries))

    def test_intersection_keeps_shared_terms(self):
        out = lexicon_intersection([lex(("a", POS, 0.9), ("b", NEG, 0.5)), lex(("a", POS, 0.4))])
        self.assertEqual(dict(out.entries), {"a": LexiconEntry("a", POS, 0.4)})

    def test_intersection_requires_same_polarity(self):
        self.assertEqual(len(lexicon_intersection([lex(("a", POS, 0.9)), lex(("a", NEG, 0.9))])), 0)

    def test_intersection_idempotent(self):
        base = lex(("a", POS, 0.9), ("b", NEG, 0.1))
        self.assertEqual(dict(lexicon_intersection([base, base]).entries), dict(base.entries))

    def test_empty_list_rejected(self):
        with self.assertRaises(ValidationError):
            lexicon_union([])
        with self.assertRaises(ValidationError):
            lexicon_intersection([])

    def test_commutative_and_associative(self):
        rng = random.Random(7)
        for _ in range(200):
            a, b, c = random_lexicon(rng), random_lexicon(rng), random_lexicon(rng)
            for op in (lexicon_union, lexicon_intersection):
                self.assertEqual(dict(op([a, b]).entries), dict(op([b, a]).entries))
                left = op([op([a, b]), c])
                right = op([a, op([b, c])])
                self.assertEqual(dict(left.entries), dict(right.entries))
                self.assertEqual(dict(op([a, b, c]).entries), dict(left.entries))

    def test_intersection_subset_of_union(self):
        rng = random.Random(11)
        for _ in range(200):
            group = [random_lexicon(rng) for _ in range(rng.randint(1, 4))]
            self.assertLessEqual(
                set(lexicon_intersection(group).entries), set(lexicon_union(group).entries)
            )


class TopKTests(SimpleTestCase):
    def test_first_entry(self):
        self.assertEqual([e.term for e in top_k(lex(("a", POS, 0.9), ("b", POS, 0.1)), 1)], ["a"])

    def test_k_exceeds_size(self):
        base = lex(("a", POS, 0.9), ("b", NEG, 0.4), ("c", NEU, 0.1))
        self.assertEqual(len(top_k(base, 10)), 3)

    def test_ties_broken_by_term(self):
        base = lex(("b", POS, 0.5), ("a", POS, 0.5))
        self.assertEqual([e.term for e in top_k(base, 2)], ["a", "b"])

    def test_polarity_filter_and_seed_exclusion(self):
        base = lex(("gut", POS, 1.0), ("toll", POS, 0.8), ("mies", NEG, 0.9))
        seeds = SeedSet(entries=(SeedEntry("gut", POS),))
        self.assertEqual([e.term for e in top_k(base, 5, polarity=POS, seeds=seeds)], ["toll"])

    def test_k_must_be_positive(self):
        with self.assertRaises(ValidationError):
            top_k(lex(("a", POS, 1.0)), 0)


class SeedSetTests(SimpleTestCase):
    def test_needs_a_polar_entry(self):
        with self.assertRaises(ValidationError):
            SeedSet(entries=(SeedEntry("neutral", NEU),))

    def test_pattern_must_compile(self):
        with self.assertRaises(ValidationError):
            SeedEntry("[:", POS, SeedKind.PATTERN)

    def test_resolve_literals_and_patterns(self):
        seeds = SeedSet(
            entries=(
                SeedEntry("gut", POS),
                SeedEntry("schlecht", NEG),
                SeedEntry(r"[:;]-?\)", POS, SeedKind.PATTERN),
            )
        )
        resolved = seeds.resolve(["gut", "schlecht", ":)", ";-)", "haus"])
        self.assertEqual(resolved, {"gut": POS, "schlecht": NEG, ":)": POS, ";-)": POS})

    def test_resolve_conflict(self):
        seeds = SeedSet(entries=(SeedEntry("gut", POS), SeedEntry("gut", NEG)))
        with self.assertRaises(InconsistentSeedsError):
            seeds.resolve(["gut"])

    def test_flipped(self):
        seeds = SeedSet(entries=(SeedEntry("gut", POS), SeedEntry("sachlich", NEU)))
        flipped = seeds.flipped()
        self.assertEqual(flipped.literals(NEG), {"gut"})
        self.assertEqual(flipped.literals(NEU), {"sachlich"})


class FormatTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_round_trip_is_byte_identical(self):
        text = "gut\tpositive\t1.000000\nsehr gut\tpositive\t1.000000\nmies\tnegative\t0.250000\ntisch\tneutral\t0.000000\n"
        src = self.dir / "in.tsv"
        src.write_bytes(text.encode("utf-8"))
        out = write_lexicon(read_lexicon(src), self.dir / "out.tsv")
        self.assertEqual(out.read_bytes(), src.read_bytes())

    def test_write_sorts_and_formats(self):
        base = lex(("b", POS, 0.5), ("a", NEG, 0.5), ("c", NEU, 0.1234567))
        self.assertEqual(
            format_lexicon(base),
            "a\tnegative\t0.500000\nb\tpositive\t0.500000\nc\tneutral\t0.123457\n",
        )

    def test_comments_ignored(self):
        src = self.dir / "c.tsv"
        src.write_text("# header\ngut\tpositive\t1.0\n\n", encoding="utf-8")
        self.assertEqual(read_lexicon(src).terms(), {"gut"})

    def test_parse_error_reports_line(self):
        src = self.dir / "bad.tsv"
        src.write_text("gut\tpositive\t1.0\nmies\tbad\t0.5\n", encoding="utf-8")
        with self.assertRaises(ParseError) as ctx:
            read_lexicon(src)
        self.assertEqual(ctx.exception.line, 2)

    def test_seed_file_with_patterns(self):
        src = self.dir / "seeds.tsv"
        src.write_text("Gut\tpositive\nschlecht\tnegative\t1.0\n[:;]-?\\(\tnegative\t1.0\tpattern\n", encoding="utf-8")
        seeds = read_seeds(src)
        self.assertEqual(seeds.literals(), {"gut", "schlecht"})
        self.assertEqual(seeds.match_polarities(":-("), {NEG})
        self.assertEqual(seeds.name, "seeds")
