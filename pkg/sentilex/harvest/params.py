from __future__ import annotations

from dataclasses import asdict, dataclass

from django.db import models

from sentilex.lexicon.exceptions import ValidationError


class CorpusAlgorithm(models.TextChoices):
    TAKAMURA = "tkm", "Takamura spin model"
    VELIKOVICH = "vel", "Velikovich max-path propagation"
    KIRITCHENKO = "kir", "Kiritchenko PMI difference"
    SEVERYN = "sev", "Severyn distantly supervised SVM"


ALGORITHM_DEFAULTS: dict[str, dict] = {
    CorpusAlgorithm.TAKAMURA: {"max_iterations": 1000, "neutral_threshold": 0.05},
    CorpusAlgorithm.VELIKOVICH: {"neutral_threshold": 0.01},
    CorpusAlgorithm.KIRITCHENKO: {"neutral_threshold": 0.1},
    CorpusAlgorithm.SEVERYN: {"max_iterations": 20},
}

# Algorithms that run on the co-occurrence graph rather than on distant labels.
GRAPH_ALGORITHMS = frozenset({CorpusAlgorithm.TAKAMURA, CorpusAlgorithm.VELIKOVICH})


@dataclass(frozen=True)
class CorpusParams:
    algorithm: CorpusAlgorithm = CorpusAlgorithm.TAKAMURA
    beta: float = 1.0
    max_iterations: int = 1000
    tolerance: float = 1e-6
    max_path_length: int = 3
    gamma: float | None = None
    top_k: int = 100
    neutral_threshold: float = 0.0
    regularization: float = 1e-4
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "algorithm", CorpusAlgorithm(self.algorithm))
        for name in ("max_iterations", "max_path_length", "top_k"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be a positive integer, got {getattr(self, name)}")
        # beta = 0 is the degenerate all-neutral case and stays allowed
        if self.beta < 0:
            raise ValidationError(f"beta must be >= 0, got {self.beta}")
        if self.tolerance <= 0 or self.regularization <= 0:
            raise ValidationError("tolerance and regularization must be > 0")
        if self.gamma is not None and self.gamma <= 0:
            raise ValidationError(f"gamma must be > 0, got {self.gamma}")
        if self.neutral_threshold < 0:
            raise ValidationError(f"neutral_threshold must be >= 0, got {self.neutral_threshold}")

    @classmethod
    def for_algorithm(cls, algorithm, **overrides) -> "CorpusParams":
        algorithm = CorpusAlgorithm(algorithm)
        values = {**ALGORITHM_DEFAULTS[algorithm], **{k: v for k, v in overrides.items() if v is not None}}
        return cls(algorithm=algorithm, **values)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["algorithm"] = self.algorithm.value
        return out

    def describe(self) -> str:
        relevant = {
            CorpusAlgorithm.TAKAMURA: ("beta", "max_iterations", "neutral_threshold"),
            CorpusAlgorithm.VELIKOVICH: ("max_path_length", "gamma", "neutral_threshold"),
            CorpusAlgorithm.KIRITCHENKO: ("neutral_threshold",),
            CorpusAlgorithm.SEVERYN: ("top_k", "max_iterations", "rng_seed"),
        }[self.algorithm]
        args = ",".join(f"{name}={getattr(self, name)}" for name in relevant)
        return f"{self.algorithm.value}({args})"
