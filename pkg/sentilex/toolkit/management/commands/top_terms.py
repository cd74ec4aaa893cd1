from sentilex.lexicon.exceptions import ConfigError
from sentilex.lexicon.formats import read_lexicon, read_seeds
from sentilex.lexicon.utils import Polarity, top_k
from sentilex.toolkit.base import ToolkitCommand
from sentilex.toolkit.utils import require


class Command(ToolkitCommand):
    help = "List the highest-ranked non-seed entries of a lexicon"  # noqa: A003

    config_keys = ("lexicon", "seeds")

    def add_command_arguments(self, parser):
        parser.add_argument("lexicon", nargs="?", help="Lexicon TSV")
        parser.add_argument("-k", type=int, default=10, help="Entries per polarity")
        parser.add_argument("--polarity", help="Only this polarity (default: positive and negative)")
        parser.add_argument("--seeds", help="Seed TSV whose terms are skipped")

    def run(self, *args, **options):
        config = self.resolve(options)
        require(config, "lexicon")
        lexicon = read_lexicon(config["lexicon"])
        seeds = read_seeds(config["seeds"]) if config.get("seeds") else None

        if options["polarity"]:
            if options["polarity"] not in Polarity.values:
                raise ConfigError(f"unknown polarity {options['polarity']!r}")
            polarities = [Polarity(options["polarity"])]
        else:
            polarities = [Polarity.POSITIVE, Polarity.NEGATIVE]

        for polarity in polarities:
            entries = top_k(lexicon, options["k"], polarity=polarity, seeds=seeds)
            self.stdout.write(self.style.MIGRATE_HEADING(f"{polarity.value} ({len(entries)})"))
            for rank, entry in enumerate(entries, start=1):
                self.stdout.write(f"{rank:>4}  {entry.term}\t{entry.score:.6f}")
