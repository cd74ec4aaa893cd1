from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from django.db import models

from sentilex.lexicon.exceptions import (
    EmptyCorpusError,
    OutOfVocabularyError,
    ParseError,
    SentilexError,
    ValidationError,
)
from sentilex.lexicon.utils import Polarity, SeedSet, normalize_term

logger = logging.getLogger(__name__)

DEFAULT_MIN_FREQ = 4
DEFAULT_WINDOW = 5
PMI_EPSILON = 0.5
IMBALANCE_RATIO = 5.0

DOC_HEADER = "#doc"


@dataclass(frozen=True)
class Token:
    form: str
    lemma: str


@dataclass(frozen=True)
class TokenizedDocument:
    doc_id: str
    tokens: tuple[Token, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValidationError(f"document {self.doc_id!r} has no tokens")

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def lemmas(self) -> list[str]:
        return [t.lemma for t in self.tokens]

    @property
    def forms(self) -> list[str]:
        return [t.form for t in self.tokens]


def read_documents(path) -> list[TokenizedDocument]:
    """Parse the vertical corpus format.

    ``#doc <id>`` opens a document, every ``form<TAB>lemma`` line adds a
    token and a blank line (or end of file) closes it. Lemmas are
    normalized, forms are kept verbatim.
    """
    documents: list[TokenizedDocument] = []
    seen: set[str] = set()
    current_id: str | None = None
    current_start = 0
    tokens: list[Token] = []

    def close():
        nonlocal current_id, tokens
        if current_id is None:
            return
        if not tokens:
            raise ParseError(f"document {current_id!r} has no tokens", path=path, line=current_start)
        documents.append(TokenizedDocument(doc_id=current_id, tokens=tuple(tokens)))
        current_id, tokens = None, []

    with open(path, "r", encoding="utf-8", newline="") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                close()
                continue
            if line.startswith(DOC_HEADER + " ") or line == DOC_HEADER:
                close()
                doc_id = line[len(DOC_HEADER):].strip()
                if not doc_id:
                    raise ParseError("document header without an id", path=path, line=lineno)
                if doc_id in seen:
                    raise ParseError(f"duplicate document id {doc_id!r}", path=path, line=lineno)
                seen.add(doc_id)
                current_id, current_start = doc_id, lineno
                continue
            if "\t" not in line and line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise ParseError(f"expected form<TAB>lemma, got {len(fields)} field(s)", path=path, line=lineno)
            if current_id is None:
                raise ParseError("token outside of a document", path=path, line=lineno)
            form, lemma = fields
            if not form.strip():
                raise ParseError("empty token form", path=path, line=lineno)
            try:
                tokens.append(Token(form=form, lemma=normalize_term(lemma)))
            except SentilexError as e:
                raise ParseError(f"bad lemma: {e}", path=path, line=lineno) from e
        close()

    if not documents:
        raise EmptyCorpusError(f"{path}: corpus contains no documents")
    return documents


def _pair(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u < v else (v, u)


def count_cooccurrences(
    documents: Iterable[TokenizedDocument],
    vocabulary: Iterable[str],
    window: int,
) -> Counter:
    """Unordered lemma pairs seen at most ``window`` positions apart."""
    vocabulary = set(vocabulary)
    counts: Counter = Counter()
    for document in documents:
        lemmas = document.lemmas
        for i, u in enumerate(lemmas):
            if u not in vocabulary:
                continue
            for v in lemmas[i + 1: i + 1 + window]:
                if v != u and v in vocabulary:
                    counts[_pair(u, v)] += 1
    return counts


@dataclass(frozen=True)
class CorpusStats:
    n_tokens: int
    n_docs: int
    term_frequency: Mapping[str, int]
    document_frequency: Mapping[str, int]
    cooccurrence: Mapping[tuple[str, str], int]
    window: int
    min_freq: int

    @property
    def vocabulary(self) -> frozenset[str]:
        return frozenset(self.term_frequency)

    def __contains__(self, term: object) -> bool:
        return term in self.term_frequency

    def tf(self, term: str) -> int:
        try:
            return self.term_frequency[term]
        except KeyError:
            raise OutOfVocabularyError(f"term {term!r} is not in the filtered vocabulary") from None

    def cooccurrence_count(self, u: str, v: str) -> int:
        return self.cooccurrence.get(_pair(u, v), 0)


def compute_stats(
    documents: Sequence[TokenizedDocument],
    min_freq: int = DEFAULT_MIN_FREQ,
    window: int = DEFAULT_WINDOW,
) -> CorpusStats:
    if min_freq < 1:
        raise ValidationError(f"min_freq must be >= 1, got {min_freq}")
    if window < 1:
        raise ValidationError(f"window must be >= 1, got {window}")
    if not documents:
        raise EmptyCorpusError("no documents to count")

    tf: Counter = Counter()
    df: Counter = Counter()
    for document in documents:
        lemmas = document.lemmas
        tf.update(lemmas)
        df.update(set(lemmas))
    n_tokens = sum(tf.values())

    kept = {term: count for term, count in tf.items() if count >= min_freq}
    stats = CorpusStats(
        n_tokens=n_tokens,
        n_docs=len(documents),
        term_frequency=MappingProxyType(dict(sorted(kept.items()))),
        document_frequency=MappingProxyType({term: df[term] for term in sorted(kept)}),
        cooccurrence=MappingProxyType(dict(count_cooccurrences(documents, kept, window))),
        window=window,
        min_freq=min_freq,
    )
    logger.info(
        "Corpus stats: %d documents, %d tokens, %d of %d lemmas with frequency >= %d",
        stats.n_docs,
        stats.n_tokens,
        len(kept),
        len(tf),
        min_freq,
    )
    return stats


def load_corpus(
    path,
    min_freq: int = DEFAULT_MIN_FREQ,
    window: int = DEFAULT_WINDOW,
) -> tuple[list[TokenizedDocument], CorpusStats]:
    documents = read_documents(path)
    return documents, compute_stats(documents, min_freq=min_freq, window=window)


class DocumentLabel(models.TextChoices):
    POSITIVE = "positive", "Positive"
    NEGATIVE = "negative", "Negative"
    DISCARDED = "discarded", "Discarded"


@dataclass(frozen=True)
class LabeledDocumentSet:
    labels: Mapping[str, DocumentLabel]
    class_counts: Mapping[str, tuple[int, int]]
    class_totals: tuple[int, int]
    documents: tuple[TokenizedDocument, ...] = field(repr=False, default=())

    @property
    def n_pos(self) -> int:
        return sum(1 for label in self.labels.values() if label == DocumentLabel.POSITIVE)

    @property
    def n_neg(self) -> int:
        return sum(1 for label in self.labels.values() if label == DocumentLabel.NEGATIVE)

    @property
    def vocabulary(self) -> frozenset[str]:
        return frozenset(self.class_counts)

    def ratio(self) -> float:
        n_pos, n_neg = self.n_pos, self.n_neg
        if min(n_pos, n_neg) == 0:
            return math.inf if max(n_pos, n_neg) else 1.0
        return max(n_pos, n_neg) / min(n_pos, n_neg)

    def labeled(self) -> Iterator[tuple[TokenizedDocument, Polarity]]:
        for document in self.documents:
            label = self.labels[document.doc_id]
            if label == DocumentLabel.POSITIVE:
                yield document, Polarity.POSITIVE
            elif label == DocumentLabel.NEGATIVE:
                yield document, Polarity.NEGATIVE


def document_polarities(document: TokenizedDocument, seeds: SeedSet) -> set[Polarity]:
    positive, negative = seeds.literals(Polarity.POSITIVE), seeds.literals(Polarity.NEGATIVE)
    found: set[Polarity] = set()
    for token in document.tokens:
        if token.lemma in positive:
            found.add(Polarity.POSITIVE)
        if token.lemma in negative:
            found.add(Polarity.NEGATIVE)
        found |= {p for p in seeds.match_polarities(token.form) if p.is_polar}
    return found


def distant_label(
    documents: Sequence[TokenizedDocument],
    seeds: SeedSet,
    stats: CorpusStats | None = None,
) -> LabeledDocumentSet:
    """Label each document by the polar seeds it contains.

    A document is positive when it holds a positive seed and no negative one
    (and vice versa); documents with both or neither are discarded.
    """
    labels: dict[str, DocumentLabel] = {}
    counts: dict[str, list[int]] = {}
    totals = [0, 0]
    vocabulary = stats.vocabulary if stats is not None else None

    for document in documents:
        found = document_polarities(document, seeds)
        if found == {Polarity.POSITIVE}:
            label, column = DocumentLabel.POSITIVE, 0
        elif found == {Polarity.NEGATIVE}:
            label, column = DocumentLabel.NEGATIVE, 1
        else:
            labels[document.doc_id] = DocumentLabel.DISCARDED
            continue
        labels[document.doc_id] = label
        totals[column] += len(document)
        for lemma in document.lemmas:
            if vocabulary is not None and lemma not in vocabulary:
                continue
            counts.setdefault(lemma, [0, 0])[column] += 1

    labeled = LabeledDocumentSet(
        labels=MappingProxyType(labels),
        class_counts=MappingProxyType({t: (c[0], c[1]) for t, c in sorted(counts.items())}),
        class_totals=(totals[0], totals[1]),
        documents=tuple(documents),
    )
    n_pos, n_neg = labeled.n_pos, labeled.n_neg
    logger.info(
        "Distant labels: %d positive, %d negative, %d discarded",
        n_pos,
        n_neg,
        len(labels) - n_pos - n_neg,
    )
    if labeled.ratio() > IMBALANCE_RATIO:
        logger.warning(
            "distant labels are imbalanced: %d positive vs %d negative documents (ratio %.1f:1 exceeds %.0f:1)",
            n_pos,
            n_neg,
            labeled.ratio(),
            IMBALANCE_RATIO,
        )
    return labeled


def pmi_value(joint: float, count: float, context: float, total: float, epsilon: float = PMI_EPSILON) -> float:
    """``log2((joint + e) * total / ((count + e) * (context + e)))``."""
    return math.log2((joint + epsilon) * total / ((count + epsilon) * (context + epsilon)))


def term_pmi(stats: CorpusStats, term: str, other: str, epsilon: float = PMI_EPSILON) -> float:
    count, other_count = stats.tf(term), stats.tf(other)
    return pmi_value(stats.cooccurrence_count(term, other), count, other_count, stats.n_tokens, epsilon)


def class_pmi(labeled: LabeledDocumentSet, term: str, polarity: Polarity, epsilon: float = PMI_EPSILON) -> float:
    if term not in labeled.class_counts:
        raise OutOfVocabularyError(f"term {term!r} does not occur in any labeled document")
    polarity = Polarity(polarity)
    if not polarity.is_polar:
        raise ValidationError("class PMI is defined for positive and negative only")
    column = 0 if polarity == Polarity.POSITIVE else 1
    joint_counts = labeled.class_counts[term]
    return pmi_value(
        joint_counts[column],
        sum(joint_counts),
        labeled.class_totals[column],
        sum(labeled.class_totals),
        epsilon,
    )


def pmi(source: CorpusStats | LabeledDocumentSet, term: str, context, epsilon: float = PMI_EPSILON) -> float:
    """PMI of ``term`` with another term (corpus stats) or with a class (labeled set)."""
    if isinstance(source, LabeledDocumentSet):
        return class_pmi(source, term, context, epsilon)
    return term_pmi(source, term, context, epsilon)
