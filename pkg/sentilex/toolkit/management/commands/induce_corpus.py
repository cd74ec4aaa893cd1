from sentilex.corpus.graphs import EdgeSource, Weighting
from sentilex.corpus.utils import load_corpus
from sentilex.harvest.params import CorpusAlgorithm
from sentilex.harvest.service import induce_from_corpus
from sentilex.lexicon.formats import read_seeds, write_lexicon
from sentilex.taxonomy.utils import derive_term_graph, load_taxonomy_dir
from sentilex.toolkit.base import ToolkitCommand
from sentilex.toolkit.serializers import CORPUS_PARAM_KEYS, POLICY_KEYS
from sentilex.toolkit.utils import corpus_params_from, edge_policy_from, require, write_provenance


class Command(ToolkitCommand):
    help = "Harvest ranked polar candidate terms from a lemmatised corpus"  # noqa: A003

    config_keys = (
        ("algorithm", "corpus", "seeds", "taxonomy", "output", "min_freq", "window", "weighting", "edge_source")
        + CORPUS_PARAM_KEYS
        + POLICY_KEYS
    )
    algorithms = CorpusAlgorithm

    def add_command_arguments(self, parser):
        parser.add_argument("--algo", dest="algorithm", help=f"One of: {', '.join(CorpusAlgorithm.values)}")
        parser.add_argument("--corpus", help="Vertical corpus file")
        parser.add_argument("--seeds", help="Seed TSV file")
        parser.add_argument("--taxonomy", help="Taxonomy directory whose edges are merged into the graph (tkm)")
        parser.add_argument("-o", "--output", help="Candidate TSV to write")

        parser.add_argument("--min-freq", type=int)
        parser.add_argument("--window", type=int)
        parser.add_argument("--weighting", help=f"One of: {', '.join(Weighting.values)}")
        parser.add_argument("--edge-source", help=f"One of: {', '.join(EdgeSource.values)}")

        parser.add_argument("--beta", type=float)
        parser.add_argument("--max-iterations", type=int)
        parser.add_argument("--tolerance", type=float)
        parser.add_argument("--max-path-length", type=int)
        parser.add_argument("--gamma", type=float)
        parser.add_argument("--top-k", type=int)
        parser.add_argument("--neutral-threshold", type=float)
        parser.add_argument("--regularization", type=float)
        parser.add_argument("--rng-seed", type=int)

    def run(self, *args, **options):
        config = self.resolve(options)
        require(config, "algorithm", "corpus", "seeds", "output")
        params = corpus_params_from(config)

        seeds = read_seeds(config["seeds"])
        documents, stats = load_corpus(config["corpus"], min_freq=config["min_freq"], window=config["window"])
        self.stdout.write(f"Corpus: {stats.n_docs} documents, {stats.n_tokens} tokens, {len(stats.vocabulary)} terms")

        taxonomy = None
        if config.get("taxonomy"):
            if params.algorithm == CorpusAlgorithm.TAKAMURA:
                taxonomy = derive_term_graph(load_taxonomy_dir(config["taxonomy"]), edge_policy_from(config))
            else:
                self.stdout.write(self.style.WARNING(f"--taxonomy is ignored by {params.algorithm.value}"))

        candidates = induce_from_corpus(
            documents,
            stats,
            seeds,
            params,
            taxonomy=taxonomy,
            weighting=config["weighting"],
            edge_source=config["edge_source"],
        )
        write_lexicon(candidates.as_lexicon(), config["output"])

        counts = {polarity.value: n for polarity, n in candidates.counts().items()}
        write_provenance(
            config["output"],
            "induce_corpus",
            config,
            warnings=self.warnings,
            details={"params": params.as_dict(), "counts": counts, "n_docs": stats.n_docs, "n_tokens": stats.n_tokens},
        )
        self.stdout.write(
            self.style.SUCCESS(
                f"Wrote {len(candidates)} candidates to {config['output']} "
                f"({counts['positive']} positive, {counts['negative']} negative)"
            )
        )
        for message in self.warnings:
            self.stdout.write(self.style.WARNING(message))
