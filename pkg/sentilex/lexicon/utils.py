from __future__ import annotations

import logging
import re
import unicodedata
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from django.db import models

from sentilex.lexicon.exceptions import InconsistentSeedsError, InvalidTermError, ValidationError

logger = logging.getLogger(__name__)

SCORE_DECIMALS = 6


class Polarity(models.TextChoices):
    POSITIVE = "positive", "Positive"
    NEGATIVE = "negative", "Negative"
    NEUTRAL = "neutral", "Neutral"

    @property
    def is_polar(self) -> bool:
        return self is not Polarity.NEUTRAL

    def flipped(self) -> "Polarity":
        if self is Polarity.POSITIVE:
            return Polarity.NEGATIVE
        if self is Polarity.NEGATIVE:
            return Polarity.POSITIVE
        return self


class SeedKind(models.TextChoices):
    LITERAL = "literal", "Literal"
    PATTERN = "pattern", "Pattern"


def normalize_term(raw: str) -> str:
    """Canonical form used for lexicon terms, trie keys and lemmas.

    NFC, simple lower-casing (``ß`` is kept), whitespace runs collapsed to a
    single space.
    """
    if raw is None:
        raise InvalidTermError("term is missing")
    text = " ".join(unicodedata.normalize("NFC", raw).split())
    if not text:
        raise InvalidTermError(f"term {raw!r} is empty after trimming")
    return text.lower()


def rank_key(entry: "LexiconEntry") -> tuple[float, str]:
    # Scores are compared at file precision so that ranking survives a
    # write/read cycle.
    return (-round(entry.score, SCORE_DECIMALS), entry.term)


@dataclass(frozen=True)
class LexiconEntry:
    term: str
    polarity: Polarity
    score: float

    def __post_init__(self):
        if not self.term or normalize_term(self.term) != self.term:
            raise InvalidTermError(f"lexicon term {self.term!r} is not normalized")
        if not (self.score >= 0.0):
            raise ValidationError(f"score of {self.term!r} must be >= 0, got {self.score!r}")
        object.__setattr__(self, "polarity", Polarity(self.polarity))


@dataclass(frozen=True)
class Lexicon:
    entries: Mapping[str, LexiconEntry]
    provenance: str = ""

    def __post_init__(self):
        for term, entry in self.entries.items():
            if term != entry.term:
                raise ValidationError(f"lexicon key {term!r} does not match entry term {entry.term!r}")
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    @classmethod
    def from_entries(cls, entries: Iterable[LexiconEntry], provenance: str = "") -> "Lexicon":
        by_term: dict[str, LexiconEntry] = {}
        for entry in entries:
            if entry.term in by_term:
                raise ValidationError(f"duplicate lexicon term {entry.term!r}")
            by_term[entry.term] = entry
        return cls(entries=by_term, provenance=provenance)

    @classmethod
    def empty(cls, provenance: str = "") -> "Lexicon":
        return cls(entries={}, provenance=provenance)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, term: object) -> bool:
        return term in self.entries

    def __iter__(self) -> Iterator[LexiconEntry]:
        return iter(self.ranked())

    def get(self, term: str) -> LexiconEntry | None:
        return self.entries.get(term)

    def ranked(self) -> list[LexiconEntry]:
        return sorted(self.entries.values(), key=rank_key)

    def terms(self, polarity: Polarity | None = None) -> set[str]:
        return {e.term for e in self.entries.values() if polarity is None or e.polarity == polarity}

    def counts(self) -> dict[str, int]:
        out = {p.value: 0 for p in Polarity}
        for entry in self.entries.values():
            out[entry.polarity.value] += 1
        return out

    def with_provenance(self, provenance: str) -> "Lexicon":
        return Lexicon(entries=self.entries, provenance=provenance)


@dataclass(frozen=True)
class SeedEntry:
    term: str
    polarity: Polarity
    kind: SeedKind = SeedKind.LITERAL

    def __post_init__(self):
        object.__setattr__(self, "polarity", Polarity(self.polarity))
        object.__setattr__(self, "kind", SeedKind(self.kind))
        if self.kind == SeedKind.LITERAL:
            if normalize_term(self.term) != self.term:
                raise InvalidTermError(f"seed term {self.term!r} is not normalized")
        else:
            try:
                re.compile(self.term)
            except re.error as e:
                raise ValidationError(f"seed pattern {self.term!r} does not compile: {e}") from e

    @property
    def regex(self) -> re.Pattern:
        return re.compile(self.term)


@dataclass(frozen=True)
class SeedSet:
    entries: tuple[SeedEntry, ...]
    name: str = ""
    _patterns: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not any(e.polarity.is_polar for e in self.entries):
            raise ValidationError("a seed set needs at least one positive or negative entry")
        patterns = tuple((e.regex, e.polarity) for e in self.entries if e.kind == SeedKind.PATTERN)
        object.__setattr__(self, "_patterns", patterns)

    def __len__(self) -> int:
        return len(self.entries)

    def literals(self, polarity: Polarity | None = None) -> set[str]:
        return {
            e.term
            for e in self.entries
            if e.kind == SeedKind.LITERAL and (polarity is None or e.polarity == polarity)
        }

    def match_polarities(self, token: str) -> set[Polarity]:
        """Polarities of the pattern seeds that fully match ``token``."""
        return {pol for rx, pol in self._patterns if rx.fullmatch(token)}

    def resolve(self, vocabulary: Iterable[str]) -> dict[str, Polarity]:
        """Map every vocabulary term hit by a literal or pattern seed to its polarity."""
        literal_map: dict[str, Polarity] = {}
        for entry in self.entries:
            if entry.kind != SeedKind.LITERAL:
                continue
            known = literal_map.get(entry.term)
            if known is not None and known != entry.polarity:
                raise InconsistentSeedsError(f"seed {entry.term!r} is both {known} and {entry.polarity}")
            literal_map[entry.term] = entry.polarity

        resolved: dict[str, Polarity] = {}
        for term in vocabulary:
            found = set(self.match_polarities(term)) if self._patterns else set()
            if term in literal_map:
                found.add(literal_map[term])
            if not found:
                continue
            if len(found) > 1:
                raise InconsistentSeedsError(
                    f"term {term!r} is matched by seeds of several polarities: {sorted(found)}"
                )
            resolved[term] = found.pop()
        return resolved

    def flipped(self) -> "SeedSet":
        return SeedSet(
            entries=tuple(SeedEntry(e.term, e.polarity.flipped(), e.kind) for e in self.entries),
            name=f"{self.name}~flipped" if self.name else "flipped",
        )

    def as_lexicon(self, score: float = 1.0) -> Lexicon:
        entries: dict[str, LexiconEntry] = {}
        for entry in self.entries:
            if entry.kind == SeedKind.LITERAL:
                entries[entry.term] = LexiconEntry(entry.term, entry.polarity, score)
        return Lexicon(entries=entries, provenance=f"seeds({self.name})" if self.name else "seeds")


def _merge_label(lexicons: list[Lexicon], op: str) -> str:
    labels = [lex.provenance or "?" for lex in lexicons]
    return f"{op}({', '.join(labels)})"


def lexicon_union(lexicons: list[Lexicon]) -> Lexicon:
    """Every term of every input; a polarity conflict goes to the highest
    score, and a tie between differing polarities becomes neutral."""
    if not lexicons:
        raise ValidationError("lexicon_union needs at least one lexicon")

    best: dict[str, tuple[float, set[Polarity]]] = {}
    for lexicon in lexicons:
        for entry in lexicon.entries.values():
            current = best.get(entry.term)
            if current is None or entry.score > current[0]:
                best[entry.term] = (entry.score, {entry.polarity})
            elif entry.score == current[0]:
                current[1].add(entry.polarity)

    entries = {}
    for term, (score, polarities) in best.items():
        polarity = next(iter(polarities)) if len(polarities) == 1 else Polarity.NEUTRAL
        entries[term] = LexiconEntry(term, polarity, score)
    return Lexicon(entries=entries, provenance=_merge_label(lexicons, "union"))


def lexicon_intersection(lexicons: list[Lexicon]) -> Lexicon:
    """Terms present in every input with the same polarity, at their lowest score."""
    if not lexicons:
        raise ValidationError("lexicon_intersection needs at least one lexicon")

    first, rest = lexicons[0], lexicons[1:]
    entries = {}
    for term, entry in first.entries.items():
        score = entry.score
        for other in rest:
            twin = other.entries.get(term)
            if twin is None or twin.polarity != entry.polarity:
                break
            score = min(score, twin.score)
        else:
            entries[term] = LexiconEntry(term, entry.polarity, score)
    return Lexicon(entries=entries, provenance=_merge_label(lexicons, "intersection"))


def top_k(
    lexicon: Lexicon,
    k: int,
    polarity: Polarity | None = None,
    seeds: SeedSet | None = None,
) -> list[LexiconEntry]:
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    excluded = set()
    if seeds is not None:
        excluded = set(seeds.resolve(lexicon.entries.keys()))
    picked = []
    for entry in lexicon.ranked():
        if polarity is not None and entry.polarity != polarity:
            continue
        if entry.term in excluded:
            continue
        picked.append(entry)
        if len(picked) == k:
            break
    return picked
