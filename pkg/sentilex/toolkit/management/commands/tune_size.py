from sentilex.corpus.utils import read_documents
from sentilex.evaluation.utils import read_gold, validate_gold
from sentilex.harvest.tuning import tune_lexicon_size
from sentilex.harvest.utils import RankedCandidates
from sentilex.lexicon.formats import read_lexicon, read_seeds, write_lexicon
from sentilex.toolkit.base import ToolkitCommand
from sentilex.toolkit.utils import require, write_provenance


class Command(ToolkitCommand):
    help = "Cut a ranked candidate list where development macro-F first drops"  # noqa: A003

    config_keys = ("candidates", "seeds", "corpus", "gold", "step", "output")

    def add_command_arguments(self, parser):
        parser.add_argument("--candidates", help="Ranked candidate TSV (induce_corpus output)")
        parser.add_argument("--seeds", help="Seed TSV file")
        parser.add_argument("--corpus", help="Development corpus in vertical format")
        parser.add_argument("--gold", help="Gold span TSV of the development corpus")
        parser.add_argument("--step", type=int, help="Candidates added per evaluation")
        parser.add_argument("-o", "--output", help="Lexicon TSV to write")

    def run(self, *args, **options):
        config = self.resolve(options)
        require(config, "candidates", "seeds", "corpus", "gold", "output")

        seeds = read_seeds(config["seeds"])
        candidates = RankedCandidates.from_lexicon(read_lexicon(config["candidates"]), seeds)
        documents = read_documents(config["corpus"])
        gold = read_gold(config["gold"])
        validate_gold(gold, documents)

        result = tune_lexicon_size(candidates, seeds, documents, gold, step=config["step"])
        write_lexicon(result.lexicon, config["output"])
        write_provenance(
            config["output"],
            "tune_size",
            config,
            warnings=self.warnings,
            details={
                "kept": result.kept,
                "available": len(candidates),
                "baseline_macro_f": result.baseline_macro_f,
                "best_macro_f": result.best_macro_f,
                "trace": [list(point) for point in result.trace],
            },
        )
        self.stdout.write(
            self.style.SUCCESS(
                f"Kept {result.kept} of {len(candidates)} candidates "
                f"(dev macro-F {result.best_macro_f:.3f}, seeds only {result.baseline_macro_f:.3f}); "
                f"wrote {len(result.lexicon)} entries to {config['output']}"
            )
        )
