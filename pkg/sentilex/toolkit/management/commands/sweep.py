import csv
import logging
import time
from pathlib import Path

from sentilex.corpus.utils import load_corpus, read_documents
from sentilex.dictionary.params import DictAlgorithm
from sentilex.dictionary.service import gloss_map, induce_from_dictionary
from sentilex.evaluation.service import evaluate_lexicon
from sentilex.evaluation.utils import read_gold, validate_gold
from sentilex.harvest.params import CorpusAlgorithm
from sentilex.harvest.service import induce_from_corpus
from sentilex.lexicon.exceptions import ComputationError, ConfigError, SentilexError
from sentilex.lexicon.formats import read_seeds
from sentilex.taxonomy.utils import derive_term_graph, load_taxonomy_dir
from sentilex.toolkit.base import ToolkitCommand
from sentilex.toolkit.serializers import CORPUS_PARAM_KEYS, DICT_PARAM_KEYS, POLICY_KEYS
from sentilex.toolkit.utils import (
    corpus_params_from,
    dict_params_from,
    edge_policy_from,
    require,
    resolve_config,
    write_provenance,
)

logger = logging.getLogger(__name__)

SWEEP_FIELDS = ("algorithm", "seed_set", "setting", "macro_f", "micro_f", "lexicon_size", "runtime_seconds")
ERROR = "error"


def parse_algorithms(value: str) -> list[str]:
    names = [name.strip() for name in value.split(",") if name.strip()]
    known = set(DictAlgorithm.values) | set(CorpusAlgorithm.values)
    unknown = [name for name in names if name not in known]
    if not names or unknown:
        raise ConfigError(f"--algos must list known algorithms, got {value!r}")
    return list(dict.fromkeys(names))


def parse_grid(value: str | None, base: dict) -> tuple[str | None, list]:
    """``key=v1,v2`` over a single parameter; each value is validated like a config entry."""
    if not value:
        return None, [None]
    key, sep, raw_values = value.partition("=")
    key = key.strip().replace("-", "_")
    if not sep or key not in set(DICT_PARAM_KEYS) | set(CORPUS_PARAM_KEYS):
        raise ConfigError(f"--grid expects <parameter>=v1,v2,..., got {value!r}")
    if key == "priors":
        raise ConfigError("priors cannot be swept")
    values = []
    for raw in (part.strip() for part in raw_values.split(",")):
        if raw:
            values.append(resolve_config(base, {key: raw})[key])
    if not values:
        raise ConfigError(f"--grid {key} lists no values")
    return key, values


class Command(ToolkitCommand):
    help = "Evaluate every (algorithm, seed set, setting) cell and write a CSV matrix"  # noqa: A003

    config_keys = (
        ("seed_dir", "taxonomy", "corpus", "dev_corpus", "gold", "output", "min_freq", "window")
        + ("weighting", "edge_source", "exclude_nonalphabetic")
        + tuple(dict.fromkeys(DICT_PARAM_KEYS + CORPUS_PARAM_KEYS))
        + POLICY_KEYS
    )

    def add_command_arguments(self, parser):
        parser.add_argument("--seed-dir", help="Directory of seed TSV files, one seed set each")
        parser.add_argument("--algos", help="Comma-separated algorithm ids")
        parser.add_argument("--taxonomy", help="Taxonomy directory (dictionary algorithms)")
        parser.add_argument("--corpus", help="Training corpus (corpus algorithms)")
        parser.add_argument("--dev-corpus", help="Annotated development corpus")
        parser.add_argument("--gold", help="Gold span TSV of the development corpus")
        parser.add_argument("-o", "--output", help="CSV matrix to write")
        parser.add_argument("--grid", help="Parameter sweep, e.g. beta=0.5,1,2")
        parser.add_argument("--no-timing", action="store_true", help="Leave runtime_seconds blank")
        parser.add_argument("--min-freq", type=int)
        parser.add_argument("--window", type=int)
        parser.add_argument("--rng-seed", type=int)
        parser.add_argument(
            "--exclude-nonalphabetic", action="store_true", default=None, help="Ignore letterless spans"
        )

    def run(self, *args, **options):
        config = self.resolve(options)
        require(config, "seed_dir", "dev_corpus", "gold", "output")
        algorithms = parse_algorithms(options["algos"] or "")
        grid_key, grid_values = parse_grid(options["grid"], {})

        seed_files = sorted(Path(config["seed_dir"]).glob("*.tsv"))
        if not seed_files:
            raise ConfigError(f"{config['seed_dir']} holds no seed files (*.tsv)")

        dev_documents = read_documents(config["dev_corpus"])
        gold = read_gold(config["gold"])
        validate_gold(gold, dev_documents)

        graph = glosses = documents = stats = None
        if any(name in DictAlgorithm.values for name in algorithms):
            require(config, "taxonomy")
            lexical = load_taxonomy_dir(config["taxonomy"])
            graph = derive_term_graph(lexical, edge_policy_from(config))
            glosses = gloss_map(lexical)
        if any(name in CorpusAlgorithm.values for name in algorithms):
            require(config, "corpus")
            documents, stats = load_corpus(config["corpus"], min_freq=config["min_freq"], window=config["window"])

        def run_cell(algorithm, seeds, setting):
            overrides = {grid_key: setting} if grid_key else {}
            if algorithm in DictAlgorithm.values:
                params = dict_params_from({**config, **overrides}, algorithm=algorithm)
                return induce_from_dictionary(graph, seeds, params, glosses=glosses)
            params = corpus_params_from({**config, **overrides}, algorithm=algorithm)
            candidates = induce_from_corpus(
                documents, stats, seeds, params, weighting=config["weighting"], edge_source=config["edge_source"]
            )
            return candidates.with_seeds(seeds)

        rows, failures = [], 0
        for algorithm in algorithms:
            for seed_file in seed_files:
                for setting in grid_values:
                    row = {
                        "algorithm": algorithm,
                        "seed_set": seed_file.stem,
                        "setting": f"{grid_key}={setting}" if grid_key else "",
                    }
                    started = time.perf_counter()
                    try:
                        seeds = read_seeds(seed_file)
                        lexicon = run_cell(algorithm, seeds, setting)
                        report = evaluate_lexicon(
                            lexicon, dev_documents, gold, nonalphabetic=not config["exclude_nonalphabetic"]
                        )
                    except (SentilexError, OSError) as e:
                        logger.warning("Cell %s/%s %s failed: %s", algorithm, seed_file.stem, row["setting"], e)
                        failures += 1
                        row.update({field: ERROR for field in ("macro_f", "micro_f", "lexicon_size", "runtime_seconds")})
                    else:
                        elapsed = time.perf_counter() - started
                        row.update(
                            {
                                "macro_f": f"{report.macro_f:.6f}",
                                "micro_f": f"{report.micro_f:.6f}",
                                "lexicon_size": str(len(lexicon)),
                                "runtime_seconds": "" if options["no_timing"] else f"{elapsed:.3f}",
                            }
                        )
                    rows.append(row)

        output = Path(config["output"])
        output.parent.mkdir(parents=True, exist_ok=True)
        with open(output, "w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=SWEEP_FIELDS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)

        sweep_args = ["--algos", ",".join(algorithms)]
        if options["grid"]:
            sweep_args += ["--grid", options["grid"]]
        if options["no_timing"]:
            sweep_args.append("--no-timing")
        write_provenance(
            output,
            "sweep",
            config,
            args=sweep_args,
            warnings=self.warnings,
            details={"cells": len(rows), "failed": failures, "seed_sets": [path.name for path in seed_files]},
        )

        if failures == len(rows):
            raise ComputationError(f"all {len(rows)} sweep cells failed")
        style = self.style.WARNING if failures else self.style.SUCCESS
        self.stdout.write(style(f"Wrote {len(rows)} cells ({failures} failed) to {output}"))
