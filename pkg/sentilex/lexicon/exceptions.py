from __future__ import annotations


class SentilexError(Exception):
    """Base class of every error the toolkit raises on purpose."""


class ValidationError(SentilexError, ValueError):
    """Bad input: malformed files, invalid parameters, unknown keys."""


class ComputationError(SentilexError, RuntimeError):
    """Well-formed input on which an algorithm cannot produce a result."""


class InvalidTermError(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message: str, *, path=None, line: int | None = None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(f"{location}{message}")


class ReferentialIntegrityError(ValidationError):
    pass


class InvalidPolicyError(ValidationError):
    pass


class GoldValidationError(ValidationError):
    def __init__(self, problems: list[tuple[int, str]]):
        self.problems = problems
        lines = "; ".join(f"line {lineno}: {msg}" for lineno, msg in problems)
        super().__init__(f"{len(problems)} invalid gold annotation(s): {lines}")


class ConfigError(ValidationError):
    pass


class EmptySeedError(ComputationError):
    pass


class InconsistentSeedsError(ComputationError):
    pass


class DegenerateSeedsError(ComputationError):
    pass


class DegenerateFeaturesError(ComputationError):
    pass


class NumericOverflowError(ComputationError):
    pass


class OutOfVocabularyError(ComputationError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "term not in vocabulary"


class EmptyCorpusError(ComputationError):
    pass
