import csv
import importlib.util
import json
import os
import shutil
import tempfile
import time
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from sentilex.corpus.utils import compute_stats, distant_label, load_corpus, read_documents
from sentilex.dictionary.params import DictAlgorithm
from sentilex.evaluation.reports import parse_report
from sentilex.harvest.distant import kiritchenko
from sentilex.harvest.params import CorpusAlgorithm, CorpusParams
from sentilex.harvest.service import induce_from_corpus
from sentilex.lexicon.exceptions import ConfigError
from sentilex.lexicon.formats import read_lexicon, read_seeds, write_lexicon
from sentilex.lexicon.utils import Lexicon, LexiconEntry, Polarity
from sentilex.taxonomy.utils import derive_term_graph, load_taxonomy_dir
from sentilex.toolkit.utils import load_run_config, provenance_path, read_provenance, resolve_config

FIXTURES = Path(settings.FIXTURES_DIR)
TOY = FIXTURES / "toy"
SEEDS = FIXTURES / "seeds.tsv"
DEV_CORPUS = FIXTURES / "dev" / "corpus.vert"
DEV_GOLD = FIXTURES / "dev" / "gold.tsv"
REVIEWS = FIXTURES / "reviews.vert"
DECAY = FIXTURES / "decay"

POS, NEG, NEU = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL


def run(name, *args, **options) -> str:
    out = StringIO()
    call_command(name, *args, stdout=out, stderr=StringIO(), **options)
    return out.getvalue()


class WorkspaceMixin:
    def setUp(self):
        super().setUp()
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)
        self.tmp = Path(self._tmp.name)

    def write(self, name: str, text: str) -> Path:
        path = self.tmp / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        return path

    def write_lexicon(self, name: str, *entries) -> Path:
        lexicon = Lexicon.from_entries([LexiconEntry(term, pol, score) for term, pol, score in entries])
        return write_lexicon(lexicon, self.tmp / name)

    def assertExitCode(self, code, name, *args, **options):
        with self.assertRaises(CommandError) as ctx:
            run(name, *args, **options)
        self.assertEqual(ctx.exception.returncode, code, str(ctx.exception))
        return ctx.exception

    def evaluate_json(self, lexicon_path):
        output = self.tmp / f"{Path(lexicon_path).stem}.report.json"
        run("evaluate", lexicon=str(lexicon_path), corpus=str(DEV_CORPUS), gold=str(DEV_GOLD), format="json", output=str(output))
        return parse_report(output.read_text(encoding="utf-8"))


class RunConfigTests(WorkspaceMixin, SimpleTestCase):
    def test_defaults(self):
        config = resolve_config({}, {})
        self.assertEqual((config["min_freq"], config["window"], config["step"]), (4, 5, 1))
        self.assertEqual(config["format"], "text")

    def test_flags_override_file_values(self):
        config = resolve_config({"beta": "2.0", "window": "3"}, {"beta": 0.5, "window": None})
        self.assertEqual(config["beta"], 0.5)
        self.assertEqual(config["window"], 3)

    def test_unknown_key_is_rejected(self):
        with self.assertRaises(ConfigError) as ctx:
            resolve_config({"colour": "blue"}, {})
        self.assertIn("colour", str(ctx.exception))

    def test_algorithm_must_fit_the_command(self):
        with self.assertRaises(ConfigError):
            resolve_config({"algorithm": "tkm"}, {}, algorithms=DictAlgorithm)
        self.assertEqual(resolve_config({"algorithm": "tkm"}, {}, algorithms=CorpusAlgorithm)["algorithm"], "tkm")

    def test_priors(self):
        self.assertEqual(resolve_config({"priors": "0.5,0.25,0.25"}, {})["priors"], (0.5, 0.25, 0.25))
        with self.assertRaises(ConfigError):
            resolve_config({"priors": "0.5,0.5"}, {})

    def test_config_file_is_not_interpolated(self):
        path = self.write("run.cfg", "# run\nalgorithm=hl\nseeds=${HOME}/seeds.tsv\n")
        self.assertEqual(load_run_config(path), {"algorithm": "hl", "seeds": "${HOME}/seeds.tsv"})

    def test_missing_config_file(self):
        with self.assertRaises(ConfigError):
            load_run_config(self.tmp / "absent.cfg")


class InduceDictCommandTests(WorkspaceMixin, SimpleTestCase):
    def induce(self, algorithm="hl", name="out.tsv", **options):
        output = self.tmp / name
        run("induce_dict", algorithm=algorithm, taxonomy=str(TOY), seeds=str(SEEDS), output=str(output), **options)
        return output

    def test_output_keeps_graph_present_polar_seeds(self):
        lexicon = read_lexicon(self.induce())
        graph = derive_term_graph(load_taxonomy_dir(TOY))
        present = {t: p for t, p in read_seeds(SEEDS).resolve(graph.nodes).items() if p.is_polar}
        self.assertTrue(present)
        for term, polarity in present.items():
            self.assertEqual(lexicon.get(term).polarity, polarity)

    def test_unknown_algorithm_exits_2(self):
        error = self.assertExitCode(2, "induce_dict", algorithm="xx", taxonomy=str(TOY), seeds=str(SEEDS), output=str(self.tmp / "o.tsv"))
        self.assertIn("algorithm", str(error))

    def test_corpus_algorithm_is_not_a_dictionary_algorithm(self):
        self.assertExitCode(2, "induce_dict", algorithm="kir", taxonomy=str(TOY), seeds=str(SEEDS), output=str(self.tmp / "o.tsv"))

    def test_missing_setting_exits_2(self):
        self.assertExitCode(2, "induce_dict", algorithm="hl", taxonomy=str(TOY), output=str(self.tmp / "o.tsv"))

    def test_missing_taxonomy_exits_1(self):
        self.assertExitCode(1, "induce_dict", algorithm="hl", taxonomy=str(self.tmp / "nowhere"), seeds=str(SEEDS), output=str(self.tmp / "o.tsv"))

    def test_malformed_seed_file_exits_2(self):
        seeds = self.write("bad.tsv", "gut\tgood\n")
        self.assertExitCode(2, "induce_dict", algorithm="hl", taxonomy=str(TOY), seeds=str(seeds), output=str(self.tmp / "o.tsv"))

    def test_rerun_is_byte_identical(self):
        first = self.induce("rndwalk", "a.tsv", rng_seed=3)
        second = self.induce("rndwalk", "b.tsv", rng_seed=3)
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_sidecar_records_config_and_counts(self):
        output = self.induce("bg", max_iterations=2)
        record = read_provenance(provenance_path(output))
        self.assertEqual(record["command"], "induce_dict")
        self.assertEqual(record["config"]["algorithm"], "bg")
        self.assertEqual(record["config"]["max_iterations"], 2)
        self.assertEqual(record["details"]["params"]["max_iterations"], 2)
        self.assertEqual(sum(record["details"]["counts"].values()), len(read_lexicon(output)))
        self.assertTrue(any("absent from the graph" in warning for warning in record["warnings"]))
        self.assertIn(str(output), record["outputs"])

    def test_config_file_with_flag_override(self):
        config = self.write("run.cfg", f"algorithm=bg\ntaxonomy={TOY}\nseeds={SEEDS}\nmax_iterations=1\n")
        output = self.tmp / "out.tsv"
        run("induce_dict", config=str(config), algorithm="hl", output=str(output))
        self.assertEqual(read_provenance(provenance_path(output))["config"]["algorithm"], "hl")

    def test_unknown_config_key_exits_2(self):
        config = self.write("run.cfg", "algorithm=hl\ntemperature=3\n")
        self.assertExitCode(2, "induce_dict", config=str(config))

    def test_edge_policy_flags(self):
        output = self.induce("hl", antonym=-0.5)
        self.assertEqual(read_provenance(provenance_path(output))["details"]["edge_policy"]["antonym"], -0.5)

    def test_positive_antonym_weight_exits_2(self):
        self.assertExitCode(2, "induce_dict", algorithm="hl", taxonomy=str(TOY), seeds=str(SEEDS), output=str(self.tmp / "o.tsv"), antonym=0.5)


class InduceCorpusCommandTests(WorkspaceMixin, SimpleTestCase):
    def induce(self, algorithm, name="candidates.tsv", corpus=REVIEWS, seeds=SEEDS, **options):
        output = self.tmp / name
        run("induce_corpus", algorithm=algorithm, corpus=str(corpus), seeds=str(seeds), output=str(output), **options)
        return output

    def test_kir_scores_match_direct_computation(self):
        lexicon = read_lexicon(self.induce("kir"))
        documents, stats = load_corpus(REVIEWS)
        seeds = read_seeds(SEEDS)
        expected = kiritchenko(distant_label(documents, seeds, stats=stats), stats, seeds, CorpusParams.for_algorithm("kir"))
        self.assertEqual(len(lexicon), len(expected))
        self.assertEqual(lexicon.terms(POS), {"toll", "super"})
        self.assertEqual(lexicon.terms(NEG), {"mies", "furchtbar"})
        for entry in expected:
            self.assertEqual(lexicon.get(entry.term).polarity, entry.polarity)
            self.assertAlmostEqual(lexicon.get(entry.term).score, entry.score, places=6)

    def test_sev_is_deterministic(self):
        first = self.induce("sev", "a.tsv", rng_seed=5, min_freq=1)
        second = self.induce("sev", "b.tsv", rng_seed=5, min_freq=1)
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_tkm_without_coupling_emits_nothing(self):
        output = self.induce("tkm", beta=0.0)
        self.assertEqual(output.read_text(encoding="utf-8"), "")

    def test_tkm_with_taxonomy_merge(self):
        output = self.induce("tkm", taxonomy=str(TOY))
        self.assertTrue(read_provenance(provenance_path(output))["config"]["taxonomy"])

    def test_single_polarity_seeds_exit_1(self):
        seeds = self.write("positive.tsv", "gut\tpositive\n")
        self.assertExitCode(1, "induce_corpus", algorithm="kir", corpus=str(REVIEWS), seeds=str(seeds), output=str(self.tmp / "o.tsv"))

    def test_dictionary_algorithm_exits_2(self):
        self.assertExitCode(2, "induce_corpus", algorithm="hl", corpus=str(REVIEWS), seeds=str(SEEDS), output=str(self.tmp / "o.tsv"))

    def test_imbalance_warning_reaches_sidecar(self):
        blocks = [f"#doc p{i}\nder\tder\nfilm\tfilm\nist\tist\ngut\tgut\ntoll\ttoll\n" for i in range(12)]
        blocks += [f"#doc n{i}\nder\tder\nfilm\tfilm\nist\tist\nschlecht\tschlecht\nmies\tmies\n" for i in range(2)]
        corpus = self.write("skewed.vert", "\n".join(blocks))
        output = self.induce("kir", corpus=corpus, min_freq=1)
        warnings = read_provenance(provenance_path(output))["warnings"]
        self.assertTrue(any("imbalanced" in warning for warning in warnings))


class CombineCommandTests(WorkspaceMixin, SimpleTestCase):
    def combine(self, operation, *inputs):
        output = self.tmp / "combined.tsv"
        run("combine", operation, *(str(path) for path in inputs), output=str(output))
        return output

    def test_union_of_disjoint_lexicons(self):
        a = self.write_lexicon("a.tsv", ("gut", POS, 1.0))
        b = self.write_lexicon("b.tsv", ("mies", NEG, 0.5))
        output = self.combine("union", a, b)
        self.assertEqual(read_lexicon(output).terms(), {"gut", "mies"})
        record = read_provenance(provenance_path(output))
        self.assertEqual(record["args"], ["union", str(a), str(b)])
        self.assertEqual(set(record["details"]["inputs"]), {str(a), str(b)})

    def test_intersection_of_identical_lexicons(self):
        a = self.write_lexicon("a.tsv", ("gut", POS, 1.0), ("mies", NEG, 0.5))
        b = self.write_lexicon("b.tsv", ("gut", POS, 1.0), ("mies", NEG, 0.5))
        self.assertEqual(read_lexicon(self.combine("intersection", a, b)).terms(), {"gut", "mies"})

    def test_union_conflict_goes_to_higher_score(self):
        a = self.write_lexicon("a.tsv", ("billig", POS, 0.4))
        b = self.write_lexicon("b.tsv", ("billig", NEG, 0.9))
        entry = read_lexicon(self.combine("union", a, b)).get("billig")
        self.assertEqual((entry.polarity, entry.score), (NEG, 0.9))

    def test_needs_two_inputs(self):
        a = self.write_lexicon("a.tsv", ("gut", POS, 1.0))
        self.assertExitCode(2, "combine", "union", str(a), output=str(self.tmp / "o.tsv"))

    def test_unknown_operation(self):
        a = self.write_lexicon("a.tsv", ("gut", POS, 1.0))
        self.assertExitCode(2, "combine", "difference", str(a), str(a), output=str(self.tmp / "o.tsv"))

    def test_unreadable_input_exits_1(self):
        a = self.write_lexicon("a.tsv", ("gut", POS, 1.0))
        self.assertExitCode(1, "combine", "union", str(a), str(self.tmp / "missing.tsv"), output=str(self.tmp / "o.tsv"))


PERFECT = (
    ("gut", POS, 1.0),
    ("toll", POS, 1.0),
    ("hervorragend", POS, 1.0),
    ("prima", POS, 1.0),
    ("mies", NEG, 1.0),
    ("schlecht", NEG, 1.0),
    ("miserabel", NEG, 1.0),
)


class EvaluateCommandTests(WorkspaceMixin, SimpleTestCase):
    def test_perfect_lexicon(self):
        lexicon = self.write_lexicon("perfect.tsv", *PERFECT)
        out = run("evaluate", lexicon=str(lexicon), corpus=str(DEV_CORPUS), gold=str(DEV_GOLD))
        self.assertIn("macro-F 1.000  micro-F 1.000  terms 7", out)
        for line in out.splitlines()[1:4]:
            self.assertEqual(line.split()[1:4], ["1.000", "1.000", "1.000"])

    def test_empty_lexicon(self):
        report = self.evaluate_json(self.write("empty.tsv", ""))
        self.assertEqual(report.positive.f1, 0.0)
        self.assertEqual(report.negative.f1, 0.0)
        self.assertEqual(report.neutral.recall, 1.0)
        self.assertEqual(report.lexicon_size, 0)

    def test_csv_row(self):
        lexicon = self.write_lexicon("perfect.tsv", *PERFECT)
        out = run("evaluate", lexicon=str(lexicon), corpus=str(DEV_CORPUS), gold=str(DEV_GOLD), format="csv-row")
        rows = list(csv.DictReader(StringIO(out)))
        self.assertEqual(rows[0]["macro_f"], "1.000")
        self.assertEqual(rows[0]["lexicon_size"], "7")

    def test_bad_gold_span_lists_offending_line(self):
        gold = self.write("gold.tsv", "# doc_id\tstart\tend\tpolarity\nd1\t3\t40\tpositive\n")
        lexicon = self.write_lexicon("perfect.tsv", *PERFECT)
        error = self.assertExitCode(2, "evaluate", lexicon=str(lexicon), corpus=str(DEV_CORPUS), gold=str(gold))
        self.assertIn("line 2", str(error))

    def test_report_file_gets_sidecar(self):
        lexicon = self.write_lexicon("perfect.tsv", *PERFECT)
        self.evaluate_json(lexicon)
        record = read_provenance(provenance_path(self.tmp / "perfect.report.json"))
        self.assertEqual(record["details"]["macro_f"], 1.0)

    def test_exclude_nonalphabetic(self):
        corpus = self.write("smiley.vert", "#doc s1\nsuper\tsuper\n:-)\t:-)\n")
        gold = self.write("smiley.tsv", "s1\t0\t1\tpositive\ns1\t1\t2\tpositive\n")
        lexicon = self.write_lexicon("lex.tsv", ("super", POS, 1.0))
        common = {"lexicon": str(lexicon), "corpus": str(corpus), "gold": str(gold), "format": "json"}
        run("evaluate", output=str(self.tmp / "all.json"), **common)
        run("evaluate", output=str(self.tmp / "alpha.json"), exclude_nonalphabetic=True, **common)
        self.assertEqual(parse_report((self.tmp / "all.json").read_text(encoding="utf-8")).positive.recall, 0.5)
        self.assertEqual(parse_report((self.tmp / "alpha.json").read_text(encoding="utf-8")).positive.recall, 1.0)


class PipelineTests(WorkspaceMixin, SimpleTestCase):
    """Taxonomy neighbours of the seeds are the gold polar terms of the dev corpus."""

    def setUp(self):
        super().setUp()
        seeds_only = write_lexicon(read_seeds(SEEDS).as_lexicon(), self.tmp / "seeds_only.tsv")
        self.baseline = self.evaluate_json(seeds_only).macro_f

    def test_every_dictionary_algorithm_beats_the_seeds(self):
        for algorithm in DictAlgorithm.values:
            with self.subTest(algorithm=algorithm):
                output = self.tmp / f"{algorithm}.tsv"
                run("induce_dict", algorithm=algorithm, taxonomy=str(TOY), seeds=str(SEEDS), output=str(output))
                self.assertGreater(self.evaluate_json(output).macro_f, self.baseline)

    def test_blair_goldensohn_degrades_after_five_iterations(self):
        scores = {}
        for iterations in (5, 6):
            output = self.tmp / f"bg{iterations}.tsv"
            run("induce_dict", algorithm="bg", taxonomy=str(DECAY), seeds=str(DECAY / "seeds.tsv"), max_iterations=iterations, output=str(output))
            report = self.tmp / f"bg{iterations}.json"
            run("evaluate", lexicon=str(output), corpus=str(DECAY / "corpus.vert"), gold=str(DECAY / "gold.tsv"), format="json", output=str(report))
            scores[iterations] = parse_report(report.read_text(encoding="utf-8")).macro_f
        self.assertLess(scores[6], scores[5])

    def test_tuned_size_never_loses_to_the_seeds(self):
        candidates = self.tmp / "candidates.tsv"
        run("induce_corpus", algorithm="kir", corpus=str(REVIEWS), seeds=str(SEEDS), output=str(candidates))
        tuned = self.tmp / "tuned.tsv"
        run("tune_size", candidates=str(candidates), seeds=str(SEEDS), corpus=str(DEV_CORPUS), gold=str(DEV_GOLD), output=str(tuned))
        self.assertGreaterEqual(self.evaluate_json(tuned).macro_f, self.baseline)

        details = read_provenance(provenance_path(tuned))["details"]
        self.assertAlmostEqual(details["baseline_macro_f"], self.baseline)
        self.assertEqual(details["trace"][0][0], 0)
        self.assertLessEqual(details["kept"], details["available"])


class TuneSizeCommandTests(WorkspaceMixin, SimpleTestCase):
    def tune(self, *entries, step=1):
        candidates = self.write_lexicon("candidates.tsv", *entries)
        output = self.tmp / "tuned.tsv"
        run("tune_size", candidates=str(candidates), seeds=str(SEEDS), corpus=str(DEV_CORPUS), gold=str(DEV_GOLD), step=step, output=str(output))
        return read_lexicon(output), read_provenance(provenance_path(output))["details"]

    def test_harmful_candidates_leave_the_seeds(self):
        lexicon, details = self.tune(("essen", NEG, 0.9), ("film", POS, 0.8))
        self.assertEqual(details["kept"], 0)
        self.assertEqual(lexicon.terms(), read_seeds(SEEDS).as_lexicon().terms())

    def test_helpful_then_harmful(self):
        lexicon, details = self.tune(("toll", POS, 0.9), ("essen", NEG, 0.8), ("mies", NEG, 0.7))
        self.assertEqual(details["kept"], 1)
        self.assertIn("toll", lexicon)
        self.assertNotIn("essen", lexicon)

    def test_step_covers_the_tail(self):
        _, details = self.tune(("toll", POS, 0.9), ("mies", NEG, 0.8), ("prima", POS, 0.7), step=2)
        self.assertEqual([point[0] for point in details["trace"]], [0, 2, 3])
        self.assertEqual(details["kept"], 3)


class TopTermsCommandTests(WorkspaceMixin, SimpleTestCase):
    def setUp(self):
        super().setUp()
        self.lexicon = self.write_lexicon(
            "lex.tsv", ("gut", POS, 1.0), ("toll", POS, 0.9), ("super", POS, 0.5), ("mies", NEG, 0.8), ("tag", NEU, 0.0)
        )

    def test_skips_seeds(self):
        out = run("top_terms", str(self.lexicon), k=1, seeds=str(SEEDS))
        self.assertIn("toll", out)
        self.assertNotIn("gut", out)
        self.assertIn("mies", out)

    def test_single_polarity(self):
        out = run("top_terms", str(self.lexicon), k=5, polarity="negative")
        self.assertIn("mies", out)
        self.assertNotIn("toll", out)

    def test_bad_polarity_exits_2(self):
        self.assertExitCode(2, "top_terms", str(self.lexicon), polarity="happy")

    def test_bad_k_exits_2(self):
        self.assertExitCode(2, "top_terms", str(self.lexicon), k=0)


class SweepCommandTests(WorkspaceMixin, SimpleTestCase):
    def setUp(self):
        super().setUp()
        self.seed_dir = self.tmp / "seeds"
        self.seed_dir.mkdir()
        shutil.copy(SEEDS, self.seed_dir / "a_turney.tsv")
        shutil.copy(FIXTURES / "seeds" / "gold_precision.tsv", self.seed_dir / "b_gold.tsv")

    def sweep(self, algos, name="sweep.csv", **options):
        output = self.tmp / name
        options.setdefault("no_timing", True)
        run(
            "sweep",
            seed_dir=str(self.seed_dir),
            algos=algos,
            taxonomy=str(TOY),
            dev_corpus=str(DEV_CORPUS),
            gold=str(DEV_GOLD),
            output=str(output),
            **options,
        )
        return output

    def rows(self, path):
        with open(path, encoding="utf-8", newline="") as f:
            return list(csv.DictReader(f))

    def test_matrix_order(self):
        rows = self.rows(self.sweep("lblprop,hl"))
        self.assertEqual(
            [(row["algorithm"], row["seed_set"]) for row in rows],
            [("lblprop", "a_turney"), ("lblprop", "b_gold"), ("hl", "a_turney"), ("hl", "b_gold")],
        )
        for row in rows:
            self.assertGreater(float(row["macro_f"]), 0.0)
            self.assertEqual(row["runtime_seconds"], "")

    def test_broken_seed_file_only_fails_its_cells(self):
        self.write("seeds/c_broken.tsv", "gut\tgood\n")
        output = self.sweep("hl,bg")
        rows = self.rows(output)
        broken = [row for row in rows if row["seed_set"] == "c_broken"]
        self.assertEqual(len(rows), 6)
        self.assertEqual(len(broken), 2)
        self.assertTrue(all(row["macro_f"] == "error" for row in broken))
        self.assertTrue(all(row["macro_f"] != "error" for row in rows if row not in broken))
        self.assertEqual(read_provenance(provenance_path(output))["details"]["failed"], 2)

    def test_all_cells_failing_exits_1(self):
        for path in self.seed_dir.iterdir():
            path.unlink()
        self.write("seeds/broken.tsv", "gut\tgood\n")
        with self.assertRaises(CommandError) as ctx:
            self.sweep("hl")
        self.assertEqual(ctx.exception.returncode, 1)

    def test_rerun_is_identical(self):
        first = self.sweep("hl,rndwalk", "a.csv")
        second = self.sweep("hl,rndwalk", "b.csv")
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_grid(self):
        rows = self.rows(self.sweep("bg", grid="max_iterations=1,3"))
        self.assertEqual([row["setting"] for row in rows], ["max_iterations=1", "max_iterations=3"] * 2)

    def test_bad_grid_value_exits_2(self):
        self.assertExitCode(2, "sweep", seed_dir=str(self.seed_dir), algos="bg", taxonomy=str(TOY), dev_corpus=str(DEV_CORPUS), gold=str(DEV_GOLD), output=str(self.tmp / "s.csv"), grid="max_iterations=0")

    def test_unknown_algorithm_exits_2(self):
        self.assertExitCode(2, "sweep", seed_dir=str(self.seed_dir), algos="hl,zz", taxonomy=str(TOY), dev_corpus=str(DEV_CORPUS), gold=str(DEV_GOLD), output=str(self.tmp / "s.csv"))

    def test_empty_seed_dir_exits_2(self):
        empty = self.tmp / "empty"
        empty.mkdir()
        self.assertExitCode(2, "sweep", seed_dir=str(empty), algos="hl", taxonomy=str(TOY), dev_corpus=str(DEV_CORPUS), gold=str(DEV_GOLD), output=str(self.tmp / "s.csv"))

    def test_corpus_algorithm_cells(self):
        rows = self.rows(self.sweep("kir", corpus=str(REVIEWS)))
        self.assertEqual(len(rows), 2)
        self.assertTrue(all(row["macro_f"] != "error" for row in rows))

    def test_timing_column(self):
        rows = self.rows(self.sweep("hl", no_timing=False))
        self.assertTrue(all(float(row["runtime_seconds"]) >= 0 for row in rows))


class ReplayCommandTests(WorkspaceMixin, SimpleTestCase):
    def assertReplays(self, output):
        replayed = self.tmp / f"replayed{Path(output).suffix}"
        run("replay", str(provenance_path(output)), output=str(replayed))
        self.assertEqual(Path(output).read_bytes(), replayed.read_bytes())

    def test_induce_dict(self):
        output = self.tmp / "rw.tsv"
        run("induce_dict", algorithm="rndwalk", taxonomy=str(TOY), seeds=str(SEEDS), output=str(output), rng_seed=11, walks_per_node=20)
        self.assertReplays(output)

    def test_induce_dict_from_config_file(self):
        config = self.write("run.cfg", f"algorithm=kh\ntaxonomy={TOY}\nseeds={SEEDS}\npriors=0.4,0.4,0.2\n")
        output = self.tmp / "kh.tsv"
        run("induce_dict", config=str(config), output=str(output))
        self.assertReplays(output)

    def test_induce_corpus(self):
        output = self.tmp / "sev.tsv"
        run("induce_corpus", algorithm="sev", corpus=str(REVIEWS), seeds=str(SEEDS), output=str(output), min_freq=1, top_k=3)
        self.assertReplays(output)

    def test_combine(self):
        a = self.write_lexicon("a.tsv", ("gut", POS, 1.0), ("billig", POS, 0.2))
        b = self.write_lexicon("b.tsv", ("mies", NEG, 0.5), ("billig", NEG, 0.7))
        output = self.tmp / "union.tsv"
        run("combine", "union", str(a), str(b), output=str(output))
        self.assertReplays(output)

    def test_evaluate(self):
        lexicon = self.write_lexicon("lex.tsv", ("gut", POS, 1.0), ("leider", NEG, 1.0))
        output = self.tmp / "report.json"
        run("evaluate", lexicon=str(lexicon), corpus=str(DEV_CORPUS), gold=str(DEV_GOLD), format="json", output=str(output))
        self.assertReplays(output)

    def test_sweep(self):
        output = self.tmp / "sweep.csv"
        run("sweep", seed_dir=str(FIXTURES / "seeds"), algos="hl", taxonomy=str(TOY), dev_corpus=str(DEV_CORPUS), gold=str(DEV_GOLD), output=str(output), no_timing=True, grid="max_iterations=1,2")
        self.assertReplays(output)

    def test_tune_size(self):
        candidates = self.write_lexicon("candidates.tsv", ("toll", POS, 0.9), ("essen", NEG, 0.8))
        output = self.tmp / "tuned.tsv"
        run("tune_size", candidates=str(candidates), seeds=str(SEEDS), corpus=str(DEV_CORPUS), gold=str(DEV_GOLD), output=str(output))
        self.assertReplays(output)

    def test_not_a_sidecar(self):
        path = self.write("x.provenance.json", "{not json")
        self.assertExitCode(2, "replay", str(path))

    def test_unknown_command(self):
        path = self.write("x.provenance.json", json.dumps({"command": "flush", "args": [], "config": {}}))
        self.assertExitCode(2, "replay", str(path))


def load_synthetic_generator():
    spec = importlib.util.spec_from_file_location("synthetic_corpus", settings.BASE_DIR / "scripts" / "synthetic_corpus.py")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module.generate


# SENTILEX_SCALE_TEST=1 runs the full million tokens
SCALE_TOKENS = 1_000_000 if os.environ.get("SENTILEX_SCALE_TEST") else 100_000


class ScaleSmokeTests(WorkspaceMixin, SimpleTestCase):
    def test_corpus_pipeline_under_a_minute(self):
        path = self.tmp / "synthetic.vert"
        load_synthetic_generator()(SCALE_TOKENS, str(path), seed=7)
        seeds = read_seeds(SEEDS)

        started = time.perf_counter()
        documents = read_documents(path)
        stats = compute_stats(documents, min_freq=4, window=5)
        candidates = induce_from_corpus(documents, stats, seeds, CorpusParams.for_algorithm("kir"))
        elapsed = time.perf_counter() - started

        self.assertEqual(stats.n_tokens, SCALE_TOKENS)
        self.assertIn("toll", candidates.terms(POS))
        self.assertLess(elapsed, 60.0)
