from sentilex.dictionary.params import DictAlgorithm
from sentilex.dictionary.service import gloss_map, induce_from_dictionary
from sentilex.lexicon.formats import read_seeds, write_lexicon
from sentilex.taxonomy.utils import derive_term_graph, load_taxonomy_dir
from sentilex.toolkit.base import ToolkitCommand
from sentilex.toolkit.serializers import DICT_PARAM_KEYS, POLICY_KEYS
from sentilex.toolkit.utils import dict_params_from, edge_policy_from, require, write_provenance


class Command(ToolkitCommand):
    help = "Induce a sentiment lexicon from a lexical taxonomy and a seed set"  # noqa: A003

    config_keys = ("algorithm", "taxonomy", "seeds", "output") + DICT_PARAM_KEYS + POLICY_KEYS
    algorithms = DictAlgorithm

    def add_command_arguments(self, parser):
        parser.add_argument("--algo", dest="algorithm", help=f"One of: {', '.join(DictAlgorithm.values)}")
        parser.add_argument("--taxonomy", help="Directory holding synsets.tsv and relations.tsv")
        parser.add_argument("--seeds", help="Seed TSV file")
        parser.add_argument("-o", "--output", help="Lexicon TSV to write")

        parser.add_argument("--max-iterations", type=int)
        parser.add_argument("--threshold", type=float)
        parser.add_argument("--tolerance", type=float)
        parser.add_argument("--rng-seed", type=int)
        parser.add_argument("--walks-per-node", type=int)
        parser.add_argument("--max-walk-length", type=int)
        parser.add_argument("--expansion-rounds", type=int)
        parser.add_argument("--priors", help="positive,negative,neutral class priors (kh)")
        for key in POLICY_KEYS:
            parser.add_argument(f"--{key.replace('_', '-')}-weight", dest=key, type=float)

    def run(self, *args, **options):
        config = self.resolve(options)
        require(config, "algorithm", "taxonomy", "seeds", "output")
        params = dict_params_from(config)
        policy = edge_policy_from(config)

        seeds = read_seeds(config["seeds"])
        lexical = load_taxonomy_dir(config["taxonomy"])
        graph = derive_term_graph(lexical, policy)
        self.stdout.write(f"Term graph: {len(graph)} terms, {graph.number_of_edges()} edges")

        lexicon = induce_from_dictionary(graph, seeds, params, glosses=gloss_map(lexical))
        write_lexicon(lexicon, config["output"])

        counts = lexicon.counts()
        write_provenance(
            config["output"],
            "induce_dict",
            config,
            warnings=self.warnings,
            details={
                "params": params.as_dict(),
                "edge_policy": policy.as_dict(),
                "graph_hash": graph.canonical_hash(),
                "counts": counts,
            },
        )
        self.stdout.write(
            self.style.SUCCESS(
                f"Wrote {len(lexicon)} entries to {config['output']} "
                f"({counts['positive']} positive, {counts['negative']} negative, {counts['neutral']} neutral)"
            )
        )
        for message in self.warnings:
            self.stdout.write(self.style.WARNING(message))
