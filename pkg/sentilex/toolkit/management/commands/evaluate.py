from pathlib import Path

from sentilex.corpus.utils import read_documents
from sentilex.evaluation.reports import format_report
from sentilex.evaluation.service import evaluate_lexicon
from sentilex.evaluation.utils import read_gold
from sentilex.lexicon.formats import read_lexicon
from sentilex.toolkit.base import ToolkitCommand
from sentilex.toolkit.utils import require, write_provenance


class Command(ToolkitCommand):
    help = "Score a lexicon against gold polar spans of an annotated corpus"  # noqa: A003

    config_keys = ("lexicon", "corpus", "gold", "format", "output", "exclude_nonalphabetic")

    def add_command_arguments(self, parser):
        parser.add_argument("--lexicon", help="Lexicon TSV to evaluate")
        parser.add_argument("--corpus", help="Annotated corpus in vertical format")
        parser.add_argument("--gold", help="Gold span TSV")
        parser.add_argument("--format", help="text, json or csv-row")
        parser.add_argument("-o", "--output", help="Write the report here instead of standard output")
        parser.add_argument(
            "--exclude-nonalphabetic",
            action="store_true",
            default=None,
            help="Ignore gold spans and matches without any letter (emoticons)",
        )

    def run(self, *args, **options):
        config = self.resolve(options)
        require(config, "lexicon", "corpus", "gold")

        lexicon = read_lexicon(config["lexicon"])
        documents = read_documents(config["corpus"])
        gold = read_gold(config["gold"])
        report = evaluate_lexicon(lexicon, documents, gold, nonalphabetic=not config["exclude_nonalphabetic"])
        text = format_report(report, config["format"])

        output = config.get("output")
        if not output:
            self.stdout.write(text, ending="")
            return

        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        write_provenance(
            output,
            "evaluate",
            config,
            warnings=self.warnings,
            details={"macro_f": report.macro_f, "micro_f": report.micro_f, "lexicon_size": report.lexicon_size},
        )
        self.stdout.write(self.style.SUCCESS(f"macro-F {report.macro_f:.3f}, micro-F {report.micro_f:.3f}; wrote {output}"))
