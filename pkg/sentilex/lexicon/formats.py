from __future__ import annotations

import math
from pathlib import Path

from sentilex.lexicon.exceptions import ParseError, SentilexError
from sentilex.lexicon.utils import (
    SCORE_DECIMALS,
    Lexicon,
    LexiconEntry,
    Polarity,
    SeedEntry,
    SeedKind,
    SeedSet,
    normalize_term,
)

POLARITY_VALUES = {p.value for p in Polarity}


def iter_data_lines(path):
    """Yield ``(line_number, fields)`` for non-blank, non-comment lines."""
    with open(path, "r", encoding="utf-8", newline="") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            yield lineno, line.split("\t")


def _parse_polarity(value: str, path, lineno: int) -> Polarity:
    if value not in POLARITY_VALUES:
        raise ParseError(f"unknown polarity {value!r}", path=path, line=lineno)
    return Polarity(value)


def _parse_score(value: str, path, lineno: int) -> float:
    try:
        score = float(value)
    except ValueError:
        raise ParseError(f"score {value!r} is not a number", path=path, line=lineno)
    if not math.isfinite(score) or score < 0:
        raise ParseError(f"score {value!r} must be a finite number >= 0", path=path, line=lineno)
    return score


def read_lexicon(path, provenance: str | None = None) -> Lexicon:
    entries: dict[str, LexiconEntry] = {}
    for lineno, fields in iter_data_lines(path):
        if len(fields) != 3:
            raise ParseError(f"expected 3 tab-separated fields, got {len(fields)}", path=path, line=lineno)
        term_raw, polarity_raw, score_raw = fields
        try:
            term = normalize_term(term_raw)
        except SentilexError as e:
            raise ParseError(str(e), path=path, line=lineno) from e
        if term in entries:
            raise ParseError(f"duplicate term {term!r}", path=path, line=lineno)
        entries[term] = LexiconEntry(
            term,
            _parse_polarity(polarity_raw, path, lineno),
            _parse_score(score_raw, path, lineno),
        )
    return Lexicon(entries=entries, provenance=provenance if provenance is not None else Path(path).stem)


def format_lexicon(lexicon: Lexicon) -> str:
    return "".join(
        f"{entry.term}\t{entry.polarity.value}\t{entry.score:.{SCORE_DECIMALS}f}\n" for entry in lexicon.ranked()
    )


def write_lexicon(lexicon: Lexicon, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_lexicon(lexicon))
    return path


def read_seeds(path, name: str | None = None) -> SeedSet:
    """Seed TSV: ``term<TAB>polarity[<TAB>score[<TAB>pattern|literal]]``."""
    entries: list[SeedEntry] = []
    for lineno, fields in iter_data_lines(path):
        if not 2 <= len(fields) <= 4:
            raise ParseError(f"expected 2 to 4 tab-separated fields, got {len(fields)}", path=path, line=lineno)
        term_raw, polarity_raw = fields[0], fields[1]
        polarity = _parse_polarity(polarity_raw, path, lineno)

        kind = SeedKind.LITERAL
        rest = fields[2:]
        if rest and rest[-1] in SeedKind.values:
            kind = SeedKind(rest.pop())
        if rest:
            _parse_score(rest[0], path, lineno)
        if len(rest) > 1:
            raise ParseError(f"unexpected column {rest[1]!r}", path=path, line=lineno)

        try:
            term = normalize_term(term_raw) if kind == SeedKind.LITERAL else term_raw
            entries.append(SeedEntry(term, polarity, kind))
        except SentilexError as e:
            raise ParseError(str(e), path=path, line=lineno) from e

    if not entries:
        raise ParseError("seed file has no entries", path=path)
    try:
        return SeedSet(entries=tuple(entries), name=name if name is not None else Path(path).stem)
    except SentilexError as e:
        raise ParseError(str(e), path=path) from e
