from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from django.db import models

from sentilex.corpus.utils import TokenizedDocument
from sentilex.lexicon.exceptions import GoldValidationError, SentilexError, ValidationError
from sentilex.lexicon.formats import iter_data_lines
from sentilex.lexicon.utils import Lexicon, Polarity, normalize_term

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GoldAnnotation:
    doc_id: str
    start: int
    end: int
    polarity: Polarity
    surface: str = ""
    line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "polarity", Polarity(self.polarity))
        if self.start < 0 or self.end <= self.start:
            raise ValidationError(f"span [{self.start}, {self.end}) is empty or negative")
        if not self.polarity.is_polar:
            raise ValidationError("gold annotations are positive or negative")

    @property
    def key(self) -> tuple[str, int, int, Polarity]:
        return (self.doc_id, self.start, self.end, self.polarity)


def read_gold(path) -> list[GoldAnnotation]:
    """``doc_id<TAB>start<TAB>end<TAB>polarity[<TAB>surface]``; every bad line is reported."""
    annotations: list[GoldAnnotation] = []
    problems: list[tuple[int, str]] = []
    for lineno, fields in iter_data_lines(path):
        if len(fields) not in (4, 5):
            problems.append((lineno, f"expected 4 or 5 tab-separated fields, got {len(fields)}"))
            continue
        doc_id, start_raw, end_raw, polarity_raw = fields[:4]
        try:
            start, end = int(start_raw), int(end_raw)
        except ValueError:
            problems.append((lineno, f"span bounds {start_raw!r}, {end_raw!r} are not integers"))
            continue
        if polarity_raw not in (Polarity.POSITIVE, Polarity.NEGATIVE):
            problems.append((lineno, f"polarity must be positive or negative, got {polarity_raw!r}"))
            continue
        try:
            annotations.append(
                GoldAnnotation(doc_id, start, end, Polarity(polarity_raw), fields[4] if len(fields) == 5 else "", lineno)
            )
        except SentilexError as e:
            problems.append((lineno, str(e)))
    if problems:
        raise GoldValidationError(problems)
    return annotations


def validate_gold(gold: Sequence[GoldAnnotation], documents: Iterable[TokenizedDocument]) -> None:
    """Spans must sit inside known documents and must not overlap each other."""
    lengths = {document.doc_id: len(document) for document in documents}
    problems: list[tuple[int, str]] = []
    by_doc: dict[str, list[GoldAnnotation]] = {}
    for annotation in gold:
        where = annotation.line or 0
        if annotation.doc_id not in lengths:
            problems.append((where, f"unknown document {annotation.doc_id!r}"))
            continue
        if annotation.end > lengths[annotation.doc_id]:
            problems.append(
                (where, f"span [{annotation.start}, {annotation.end}) exceeds document "
                        f"{annotation.doc_id!r} of {lengths[annotation.doc_id]} tokens")
            )
            continue
        by_doc.setdefault(annotation.doc_id, []).append(annotation)
    for doc_id, spans in by_doc.items():
        spans.sort(key=lambda a: (a.start, a.end))
        for previous, current in zip(spans, spans[1:]):
            if current.start < previous.end:
                problems.append((current.line or 0, f"span [{current.start}, {current.end}) overlaps "
                                                    f"[{previous.start}, {previous.end}) in {doc_id!r}"))
    if problems:
        raise GoldValidationError(problems)


class MatchChannel(models.TextChoices):
    FORM = "form", "Word form"
    LEMMA = "lemma", "Lemma"
    MIXED = "mixed", "Form and lemma"


@dataclass(frozen=True)
class MatchSpan:
    doc_id: str
    start: int
    end: int
    polarity: Polarity
    term: str
    channel: MatchChannel = MatchChannel.FORM

    @property
    def key(self) -> tuple[str, int, int, Polarity]:
        return (self.doc_id, self.start, self.end, self.polarity)


class _TrieNode:
    __slots__ = ("children", "entry")

    def __init__(self):
        self.children: dict[str, _TrieNode] = {}
        self.entry: tuple[str, Polarity] | None = None


class MatchTrie:
    """Token-sequence trie over normalized lexicon entries."""

    def __init__(self):
        self.root = _TrieNode()
        self._size = 0

    @classmethod
    def build(cls, lexicon: Lexicon) -> "MatchTrie":
        trie = cls()
        for entry in lexicon.ranked():
            trie.add(entry.term, entry.polarity)
        logger.debug("Match trie: %d entries, depth %d", len(trie), trie.depth)
        return trie

    def add(self, term: str, polarity: Polarity):
        node = self.root
        for word in normalize_term(term).split(" "):
            node = node.children.setdefault(word, _TrieNode())
        if node.entry is None:
            self._size += 1
        node.entry = (normalize_term(term), Polarity(polarity))

    def __len__(self) -> int:
        return self._size

    @property
    def depth(self) -> int:
        deepest, stack = 0, [(self.root, 0)]
        while stack:
            node, level = stack.pop()
            deepest = max(deepest, level)
            stack.extend((child, level + 1) for child in node.children.values())
        return deepest

    def lookup(self, words: Sequence[str]) -> tuple[str, Polarity] | None:
        node = self.root
        for word in words:
            node = node.children.get(normalize_term(word))
            if node is None:
                return None
        return node.entry


def build_trie(lexicon: Lexicon) -> MatchTrie:
    return MatchTrie.build(lexicon)


def _token_keys(document: TokenizedDocument) -> list[tuple[str | None, str]]:
    keys = []
    for token in document.tokens:
        try:
            form = normalize_term(token.form)
        except SentilexError:
            form = None
        keys.append((form, token.lemma))
    return keys


def _longest_at(trie: MatchTrie, keys, start: int):
    """Longest terminal walk from ``start``; each step may follow the form or the lemma."""
    best = None
    stack = [(trie.root, start, ())]
    while stack:
        node, position, channels = stack.pop()
        if node.entry is not None and position > start:
            if best is None or position > best[0]:
                best = (position, node.entry, channels)
        if position == len(keys):
            continue
        form, lemma = keys[position]
        steps = []
        if form is not None and form in node.children:
            steps.append((node.children[form], MatchChannel.FORM))
        if lemma != form and lemma in node.children:
            steps.append((node.children[lemma], MatchChannel.LEMMA))
        # popped last-in-first-out: the form branch is explored first
        for child, channel in reversed(steps):
            stack.append((child, position + 1, channels + (channel,)))
    return best


def match_document(trie: MatchTrie, document: TokenizedDocument) -> list[MatchSpan]:
    keys = _token_keys(document)
    spans: list[MatchSpan] = []
    i = 0
    while i < len(keys):
        found = _longest_at(trie, keys, i)
        if found is None:
            i += 1
            continue
        end, (term, polarity), channels = found
        used = set(channels)
        channel = used.pop() if len(used) == 1 else MatchChannel.MIXED
        spans.append(MatchSpan(document.doc_id, i, end, polarity, term, channel))
        i = end
    return spans


def match_corpus(trie: MatchTrie, documents: Iterable[TokenizedDocument]) -> list[MatchSpan]:
    spans = [span for document in documents for span in match_document(trie, document)]
    spans.sort(key=lambda s: (s.doc_id, s.start))
    logger.debug("%d lexicon match(es)", len(spans))
    return spans


def is_alphabetic_span(document: TokenizedDocument, start: int, end: int) -> bool:
    return any(ch.isalpha() for token in document.tokens[start:end] for ch in token.form)


def exclude_nonalphabetic(
    gold: Sequence[GoldAnnotation],
    matches: Sequence[MatchSpan],
    documents: Iterable[TokenizedDocument],
) -> tuple[list[GoldAnnotation], list[MatchSpan]]:
    """Drop gold spans and matches made only of tokens without a letter (smileys and the like)."""
    by_id = {document.doc_id: document for document in documents}

    def keep(span) -> bool:
        document = by_id.get(span.doc_id)
        return document is None or is_alphabetic_span(document, span.start, span.end)

    kept_gold = [a for a in gold if keep(a)]
    kept_matches = [m for m in matches if keep(m)]
    logger.info(
        "Non-alphabetic filter dropped %d gold span(s) and %d match(es)",
        len(gold) - len(kept_gold),
        len(matches) - len(kept_matches),
    )
    return kept_gold, kept_matches
