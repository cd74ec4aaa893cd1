from sentilex.lexicon.exceptions import ConfigError
from sentilex.lexicon.formats import read_lexicon, write_lexicon
from sentilex.lexicon.utils import lexicon_intersection, lexicon_union
from sentilex.toolkit.base import ToolkitCommand
from sentilex.toolkit.utils import file_digest, require, write_provenance

OPERATIONS = {
    "union": lexicon_union,
    "intersection": lexicon_intersection,
}


class Command(ToolkitCommand):
    help = "Combine two or more lexicons by union or intersection"  # noqa: A003

    config_keys = ("output",)

    def add_command_arguments(self, parser):
        parser.add_argument("operation", help="union or intersection")
        parser.add_argument("inputs", nargs="*", help="Lexicon TSV files")
        parser.add_argument("-o", "--output", help="Lexicon TSV to write")

    def run(self, *args, **options):
        config = self.resolve(options)
        require(config, "output")
        operation, inputs = options["operation"], options["inputs"]
        if operation not in OPERATIONS:
            raise ConfigError(f"unknown operation {operation!r}; expected union or intersection")
        if len(inputs) < 2:
            raise ConfigError(f"{operation} needs at least two input lexicons, got {len(inputs)}")

        lexicons = [read_lexicon(path) for path in inputs]
        combined = OPERATIONS[operation](lexicons)
        write_lexicon(combined, config["output"])

        write_provenance(
            config["output"],
            "combine",
            config,
            args=[operation, *inputs],
            warnings=self.warnings,
            details={
                "inputs": {str(path): file_digest(path) for path in inputs},
                "label": combined.provenance,
                "counts": combined.counts(),
            },
        )
        self.stdout.write(self.style.SUCCESS(f"Wrote {combined.provenance}: {len(combined)} entries to {config['output']}"))
