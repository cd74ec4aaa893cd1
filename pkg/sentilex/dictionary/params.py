from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from django.db import models

from sentilex.lexicon.exceptions import ValidationError


class DictAlgorithm(models.TextChoices):
    HU_LIU = "hl", "Hu & Liu propagation"
    BLAIR_GOLDENSOHN = "bg", "Blair-Goldensohn matrix propagation"
    KIM_HOVY = "kh", "Kim & Hovy Bayesian expansion"
    ESULI_SEBASTIANI = "es", "Esuli & Sebastiani gloss committee"
    MINCUT = "mincut", "Rao & Ravichandran min-cut"
    LABEL_PROPAGATION = "lblprop", "Rao & Ravichandran label propagation"
    RANDOM_WALK = "rndwalk", "Awadallah & Radwan random walk"


# Per-algorithm overrides on top of the DictParams field defaults.
ALGORITHM_DEFAULTS: dict[str, dict] = {
    DictAlgorithm.HU_LIU: {"max_iterations": 5},
    DictAlgorithm.BLAIR_GOLDENSOHN: {"max_iterations": 5},
    DictAlgorithm.KIM_HOVY: {},
    DictAlgorithm.ESULI_SEBASTIANI: {"max_iterations": 1000},
    DictAlgorithm.MINCUT: {},
    DictAlgorithm.LABEL_PROPAGATION: {"max_iterations": 1000, "threshold": 0.05},
    DictAlgorithm.RANDOM_WALK: {"threshold": 0.1},
}


@dataclass(frozen=True)
class DictParams:
    algorithm: DictAlgorithm = DictAlgorithm.HU_LIU
    max_iterations: int = 5
    threshold: float = 0.0
    tolerance: float = 1e-6
    rng_seed: int = 0
    walks_per_node: int = 100
    max_walk_length: int = 20
    expansion_rounds: int = 2
    priors: tuple[float, float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "algorithm", DictAlgorithm(self.algorithm))
        for name in ("max_iterations", "walks_per_node", "max_walk_length", "expansion_rounds"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be a positive integer, got {getattr(self, name)}")
        if self.threshold < 0:
            raise ValidationError(f"threshold must be >= 0, got {self.threshold}")
        if self.tolerance <= 0:
            raise ValidationError(f"tolerance must be > 0, got {self.tolerance}")
        if self.priors is not None:
            priors = tuple(float(p) for p in self.priors)
            if len(priors) != 3 or any(p <= 0 for p in priors) or not math.isclose(sum(priors), 1.0, abs_tol=1e-9):
                raise ValidationError(f"priors must be three positive values summing to 1, got {self.priors}")
            object.__setattr__(self, "priors", priors)

    @classmethod
    def for_algorithm(cls, algorithm, **overrides) -> "DictParams":
        algorithm = DictAlgorithm(algorithm)
        values = {**ALGORITHM_DEFAULTS[algorithm], **{k: v for k, v in overrides.items() if v is not None}}
        return cls(algorithm=algorithm, **values)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["algorithm"] = self.algorithm.value
        out["priors"] = list(self.priors) if self.priors is not None else None
        return out

    def describe(self) -> str:
        relevant = {
            DictAlgorithm.HU_LIU: ("max_iterations",),
            DictAlgorithm.BLAIR_GOLDENSOHN: ("max_iterations", "threshold"),
            DictAlgorithm.KIM_HOVY: ("priors",),
            DictAlgorithm.ESULI_SEBASTIANI: ("expansion_rounds", "rng_seed"),
            DictAlgorithm.MINCUT: (),
            DictAlgorithm.LABEL_PROPAGATION: ("max_iterations", "threshold", "tolerance"),
            DictAlgorithm.RANDOM_WALK: ("walks_per_node", "max_walk_length", "threshold", "rng_seed"),
        }[self.algorithm]
        args = ",".join(f"{name}={getattr(self, name)}" for name in relevant)
        return f"{self.algorithm.value}({args})"
