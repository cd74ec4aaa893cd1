from django.core.management import call_command

from sentilex.lexicon.exceptions import ConfigError
from sentilex.toolkit.base import ToolkitCommand
from sentilex.toolkit.utils import read_provenance

REPLAYABLE = frozenset({"induce_dict", "induce_corpus", "combine", "evaluate", "sweep", "tune_size"})


class Command(ToolkitCommand):
    help = "Re-run a command from its provenance sidecar"  # noqa: A003

    def add_command_arguments(self, parser):
        parser.add_argument("sidecar", help="*.provenance.json written next to an output file")
        parser.add_argument("-o", "--output", help="Write to this path instead of the recorded one")

    def run(self, *args, **options):
        record = read_provenance(options["sidecar"])
        command = record["command"]
        if command not in REPLAYABLE:
            raise ConfigError(f"{options['sidecar']}: cannot replay command {command!r}")

        config = dict(record["config"])
        if options["output"]:
            config["output"] = options["output"]
        self.stdout.write(f"Replaying {command} -> {config.get('output', '(stdout)')}")
        call_command(command, *record["args"], preset=config, stdout=self.stdout, stderr=self.stderr)
