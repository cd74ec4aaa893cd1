from __future__ import annotations

import hashlib
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

import networkx as nx
from django.db import models
from scipy import sparse

from sentilex.lexicon.exceptions import (
    InvalidPolicyError,
    ParseError,
    ReferentialIntegrityError,
    SentilexError,
    ValidationError,
)
from sentilex.lexicon.formats import iter_data_lines
from sentilex.lexicon.utils import normalize_term

logger = logging.getLogger(__name__)

SYNSETS_FILE = "synsets.tsv"
RELATIONS_FILE = "relations.tsv"


class PartOfSpeech(models.TextChoices):
    NOUN = "noun", "Noun"
    VERB = "verb", "Verb"
    ADJECTIVE = "adjective", "Adjective"
    OTHER = "other", "Other"


class RelationKind(models.TextChoices):
    ANTONYM = "antonym", "Antonym"
    HYPERNYM = "hypernym", "Hypernym"
    HYPONYM = "hyponym", "Hyponym"
    SIMILAR = "similar", "Similar"
    RELATED = "related", "Related"


@dataclass(frozen=True)
class Synset:
    id: str
    pos: PartOfSpeech
    lemmas: tuple[str, ...]
    gloss: str | None = None


@dataclass(frozen=True)
class RelationEdge:
    src: str
    dst: str
    kind: RelationKind


@dataclass(frozen=True)
class LexicalGraph:
    synsets: Mapping[str, Synset]
    edges: tuple[RelationEdge, ...]
    lemma_index: Mapping[str, frozenset[str]]

    @classmethod
    def build(cls, synsets: Iterable[Synset], edges: Iterable[RelationEdge]) -> "LexicalGraph":
        by_id: dict[str, Synset] = {}
        index: dict[str, set[str]] = {}
        for synset in synsets:
            if synset.id in by_id:
                raise ValidationError(f"duplicate synset id {synset.id!r}")
            by_id[synset.id] = synset
            for lemma in synset.lemmas:
                index.setdefault(lemma, set()).add(synset.id)
        edges = tuple(edges)
        for edge in edges:
            for end in (edge.src, edge.dst):
                if end not in by_id:
                    raise ReferentialIntegrityError(f"relation {edge.kind} refers to unknown synset {end!r}")
        return cls(
            synsets=MappingProxyType(by_id),
            edges=edges,
            lemma_index=MappingProxyType({k: frozenset(v) for k, v in index.items()}),
        )

    def glosses(self, term: str) -> list[str]:
        return [
            self.synsets[sid].gloss for sid in sorted(self.lemma_index.get(term, ())) if self.synsets[sid].gloss
        ]


def _parse_synset(fields: list[str], path, lineno: int) -> Synset:
    if len(fields) not in (3, 4):
        raise ParseError(f"expected 3 or 4 tab-separated fields, got {len(fields)}", path=path, line=lineno)
    sid, pos, lemma_field = fields[0].strip(), fields[1].strip(), fields[2]
    if not sid:
        raise ParseError("empty synset id", path=path, line=lineno)
    if pos not in PartOfSpeech.values:
        raise ParseError(f"unknown part of speech {pos!r}", path=path, line=lineno)
    lemmas: list[str] = []
    try:
        for raw in lemma_field.split("|"):
            lemma = normalize_term(raw)
            if lemma not in lemmas:
                lemmas.append(lemma)
    except SentilexError as e:
        raise ParseError(f"bad lemma list: {e}", path=path, line=lineno) from e
    gloss = fields[3].strip() if len(fields) == 4 and fields[3].strip() else None
    return Synset(id=sid, pos=PartOfSpeech(pos), lemmas=tuple(lemmas), gloss=gloss)


def load_taxonomy(synsets_path, relations_path) -> LexicalGraph:
    synsets: dict[str, Synset] = {}
    for lineno, fields in iter_data_lines(synsets_path):
        synset = _parse_synset(fields, synsets_path, lineno)
        if synset.id in synsets:
            raise ParseError(f"duplicate synset id {synset.id!r}", path=synsets_path, line=lineno)
        synsets[synset.id] = synset

    edges: list[RelationEdge] = []
    for lineno, fields in iter_data_lines(relations_path):
        if len(fields) != 3:
            raise ParseError(f"expected 3 tab-separated fields, got {len(fields)}", path=relations_path, line=lineno)
        src, kind, dst = (f.strip() for f in fields)
        if kind not in RelationKind.values:
            raise ParseError(f"unknown relation kind {kind!r}", path=relations_path, line=lineno)
        if kind == RelationKind.ANTONYM and src == dst:
            raise ParseError(f"antonym self-loop on {src!r}", path=relations_path, line=lineno)
        for end in (src, dst):
            if end not in synsets:
                raise ReferentialIntegrityError(f"{relations_path}:{lineno}: unknown synset id {end!r}")
        edges.append(RelationEdge(src=src, dst=dst, kind=RelationKind(kind)))

    graph = LexicalGraph.build(synsets.values(), edges)
    logger.info(
        "Loaded taxonomy: %d synsets, %d relations, %d lemmas",
        len(graph.synsets),
        len(graph.edges),
        len(graph.lemma_index),
    )
    return graph


def load_taxonomy_dir(directory) -> LexicalGraph:
    directory = Path(directory)
    return load_taxonomy(directory / SYNSETS_FILE, directory / RELATIONS_FILE)


@dataclass(frozen=True)
class EdgePolicy:
    co_member: float = 1.0
    similar: float = 0.8
    hypernym: float = 0.3
    hyponym: float = 0.3
    related: float = 0.2
    antonym: float = -1.0

    def __post_init__(self):
        for name, weight in asdict(self).items():
            if not -1.0 <= weight <= 1.0:
                raise InvalidPolicyError(f"edge weight {name}={weight} outside [-1, 1]")
        if self.antonym >= 0:
            raise InvalidPolicyError(f"antonym weight must be negative, got {self.antonym}")
        if self.co_member <= 0:
            raise InvalidPolicyError(f"co-membership weight must be positive, got {self.co_member}")
        for kind in (RelationKind.SIMILAR, RelationKind.HYPERNYM, RelationKind.HYPONYM, RelationKind.RELATED):
            if self.weight_for(kind) < 0:
                raise InvalidPolicyError(f"only antonymy may carry a negative weight, {kind}={self.weight_for(kind)}")

    def weight_for(self, kind: RelationKind) -> float:
        return getattr(self, RelationKind(kind).value)

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def _stronger(new: float, old: float | None) -> bool:
    if old is None:
        return True
    if abs(new) != abs(old):
        return abs(new) > abs(old)
    return new < old


class TermGraph:
    """Undirected, signed, weighted graph over normalized terms."""

    def __init__(self, graph: nx.Graph):
        for u, v, w in graph.edges(data="weight"):
            if u == v:
                raise ValidationError(f"self-loop on {u!r}")
            if w is None or w == 0 or not -1.0 <= w <= 1.0:
                raise ValidationError(f"edge ({u!r}, {v!r}) has weight {w!r} outside [-1, 1] \\ {{0}}")
        self._graph = nx.freeze(graph)
        self._nodes = tuple(sorted(graph.nodes))
        self._index = {term: i for i, term in enumerate(self._nodes)}

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str, float]], nodes: Iterable[str] = ()) -> "TermGraph":
        graph = nx.Graph()
        graph.add_nodes_from(nodes)
        for u, v, w in edges:
            if not _stronger(w, graph.edges[u, v]["weight"] if graph.has_edge(u, v) else None):
                continue
            graph.add_edge(u, v, weight=float(w))
        return cls(graph)

    @property
    def nx_graph(self) -> nx.Graph:
        return self._graph

    @property
    def nodes(self) -> tuple[str, ...]:
        return self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, term: object) -> bool:
        return term in self._index

    def index(self, term: str) -> int:
        return self._index[term]

    def number_of_edges(self) -> int:
        return self._graph.number_of_edges()

    def neighbors(self, term: str) -> list[tuple[str, float]]:
        return sorted((v, w) for v, w in ((v, d["weight"]) for v, d in self._graph.adj[term].items()))

    def weight(self, u: str, v: str) -> float | None:
        data = self._graph.get_edge_data(u, v)
        return None if data is None else data["weight"]

    def edges(self) -> list[tuple[str, str, float]]:
        return sorted((min(u, v), max(u, v), w) for u, v, w in self._graph.edges(data="weight"))

    def adjacency(self, absolute: bool = False) -> sparse.csr_array:
        matrix = nx.to_scipy_sparse_array(self._graph, nodelist=list(self._nodes), weight="weight", format="csr")
        return abs(matrix) if absolute else matrix

    def reachable_from(self, terms: Iterable[str]) -> set[str]:
        out: set[str] = set()
        for term in terms:
            if term in self._index and term not in out:
                out |= nx.node_connected_component(self._graph, term)
        return out

    def canonical_hash(self) -> str:
        lines = [f"n\t{n}" for n in self._nodes] + [f"e\t{u}\t{v}\t{w!r}" for u, v, w in self.edges()]
        return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()


def derive_term_graph(graph: LexicalGraph, policy: EdgePolicy | None = None) -> TermGraph:
    """Lemma-level signed graph: co-members of a synset, and lemma pairs
    across every relation edge, weighted by the policy."""
    policy = policy or EdgePolicy()
    best: dict[tuple[str, str], float] = {}

    def offer(u: str, v: str, w: float):
        if u == v or w == 0:
            return
        key = (u, v) if u < v else (v, u)
        if _stronger(w, best.get(key)):
            best[key] = w

    for synset in graph.synsets.values():
        lemmas = synset.lemmas
        for i, u in enumerate(lemmas):
            for v in lemmas[i + 1:]:
                offer(u, v, policy.co_member)

    for edge in graph.edges:
        w = policy.weight_for(edge.kind)
        for u in graph.synsets[edge.src].lemmas:
            for v in graph.synsets[edge.dst].lemmas:
                offer(u, v, w)

    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(sorted(graph.lemma_index))
    for (u, v), w in sorted(best.items()):
        nx_graph.add_edge(u, v, weight=w)
    term_graph = TermGraph(nx_graph)
    logger.info("Derived term graph: %d nodes, %d edges", len(term_graph), term_graph.number_of_edges())
    return term_graph
