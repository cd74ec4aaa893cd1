from rest_framework import serializers

from sentilex.corpus.graphs import EdgeSource, Weighting
from sentilex.corpus.utils import DEFAULT_MIN_FREQ, DEFAULT_WINDOW
from sentilex.dictionary.params import DictAlgorithm
from sentilex.evaluation.reports import ReportFormat
from sentilex.harvest.params import CorpusAlgorithm

ALGORITHM_CHOICES = DictAlgorithm.choices + CorpusAlgorithm.choices

DICT_PARAM_KEYS = (
    "max_iterations",
    "threshold",
    "tolerance",
    "rng_seed",
    "walks_per_node",
    "max_walk_length",
    "expansion_rounds",
    "priors",
)
CORPUS_PARAM_KEYS = (
    "beta",
    "max_iterations",
    "tolerance",
    "max_path_length",
    "gamma",
    "top_k",
    "neutral_threshold",
    "regularization",
    "rng_seed",
)
POLICY_KEYS = ("co_member", "similar", "hypernym", "hyponym", "related", "antonym")


class PriorsField(serializers.CharField):
    """``positive,negative,neutral`` class priors."""

    def to_internal_value(self, data):
        text = super().to_internal_value(data)
        try:
            values = tuple(float(part) for part in text.split(","))
        except ValueError:
            raise serializers.ValidationError("priors must be three comma-separated numbers")
        if len(values) != 3:
            raise serializers.ValidationError("priors must be three comma-separated numbers")
        return values

    def to_representation(self, value):
        return ",".join(repr(float(v)) for v in value)


class RunConfigSerializer(serializers.Serializer):
    """Flat ``key=value`` run configuration shared by every command.

    Unset keys fall back to the per-algorithm defaults of the module that
    consumes them.
    """

    algorithm = serializers.ChoiceField(choices=ALGORITHM_CHOICES, required=False)

    # paths
    taxonomy = serializers.CharField(required=False)
    seeds = serializers.CharField(required=False)
    corpus = serializers.CharField(required=False)
    dev_corpus = serializers.CharField(required=False)
    gold = serializers.CharField(required=False)
    lexicon = serializers.CharField(required=False)
    candidates = serializers.CharField(required=False)
    seed_dir = serializers.CharField(required=False)
    output = serializers.CharField(required=False)

    # dictionary induction
    max_iterations = serializers.IntegerField(min_value=1, required=False)
    threshold = serializers.FloatField(min_value=0.0, required=False)
    tolerance = serializers.FloatField(required=False)
    rng_seed = serializers.IntegerField(min_value=0, required=False)
    walks_per_node = serializers.IntegerField(min_value=1, required=False)
    max_walk_length = serializers.IntegerField(min_value=1, required=False)
    expansion_rounds = serializers.IntegerField(min_value=1, required=False)
    priors = PriorsField(required=False)

    # taxonomy edge policy
    co_member = serializers.FloatField(min_value=-1.0, max_value=1.0, required=False)
    similar = serializers.FloatField(min_value=-1.0, max_value=1.0, required=False)
    hypernym = serializers.FloatField(min_value=-1.0, max_value=1.0, required=False)
    hyponym = serializers.FloatField(min_value=-1.0, max_value=1.0, required=False)
    related = serializers.FloatField(min_value=-1.0, max_value=1.0, required=False)
    antonym = serializers.FloatField(min_value=-1.0, max_value=1.0, required=False)

    # corpus statistics and corpus induction
    min_freq = serializers.IntegerField(min_value=1, default=DEFAULT_MIN_FREQ)
    window = serializers.IntegerField(min_value=1, default=DEFAULT_WINDOW)
    weighting = serializers.ChoiceField(choices=Weighting.choices, default=Weighting.PMI.value)
    edge_source = serializers.ChoiceField(choices=EdgeSource.choices, default=EdgeSource.WINDOW.value)
    beta = serializers.FloatField(min_value=0.0, required=False)
    max_path_length = serializers.IntegerField(min_value=1, required=False)
    gamma = serializers.FloatField(required=False)
    top_k = serializers.IntegerField(min_value=1, required=False)
    neutral_threshold = serializers.FloatField(min_value=0.0, required=False)
    regularization = serializers.FloatField(required=False)

    # tuning and evaluation
    step = serializers.IntegerField(min_value=1, default=1)
    format = serializers.ChoiceField(choices=ReportFormat.choices, default=ReportFormat.TEXT.value)  # noqa: A003
    exclude_nonalphabetic = serializers.BooleanField(default=False)

    def to_internal_value(self, data):
        unknown = sorted(set(data) - set(self.fields))
        if unknown:
            raise serializers.ValidationError({key: ["Unknown configuration key."] for key in unknown})
        return super().to_internal_value(data)

    def validate_algorithm(self, value):
        allowed = self.context.get("algorithms")
        if allowed is not None and value not in allowed.values:
            raise serializers.ValidationError(
                f'"{value}" is not a valid choice here; expected one of {", ".join(allowed.values)}.'
            )
        return value
