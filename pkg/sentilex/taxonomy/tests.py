import tempfile
from pathlib import Path

from django.conf import settings
from django.test import SimpleTestCase

from sentilex.lexicon.exceptions import InvalidPolicyError, ParseError, ReferentialIntegrityError, ValidationError
from sentilex.taxonomy.utils import (
    EdgePolicy,
    LexicalGraph,
    PartOfSpeech,
    RelationEdge,
    RelationKind,
    Synset,
    TermGraph,
    derive_term_graph,
    load_taxonomy,
    load_taxonomy_dir,
)

TOY_TAXONOMY = Path(settings.FIXTURES_DIR) / "toy"


def synset(sid, *lemmas, gloss=None):
    return Synset(id=sid, pos=PartOfSpeech.ADJECTIVE, lemmas=tuple(lemmas), gloss=gloss)


class LoadTaxonomyTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, synsets: str, relations: str):
        (self.dir / "synsets.tsv").write_text(synsets, encoding="utf-8")
        (self.dir / "relations.tsv").write_text(relations, encoding="utf-8")
        return self.dir / "synsets.tsv", self.dir / "relations.tsv"

    def test_two_synsets_one_antonym(self):
        graph = load_taxonomy(
            *self.write(
                "s1\tadjective\tGut|fein\tvon hoher qualität\ns2\tadjective\tschlecht\n",
                "s1\tantonym\ts2\n",
            )
        )
        self.assertEqual(len(graph.synsets), 2)
        self.assertEqual(len(graph.edges), 1)
        self.assertEqual(graph.synsets["s1"].lemmas, ("gut", "fein"))
        self.assertIsNone(graph.synsets["s2"].gloss)
        self.assertEqual(graph.glosses("gut"), ["von hoher qualität"])

    def test_unknown_synset_id(self):
        paths = self.write("s1\tadjective\tgut\n", "s1\tsimilar\tx9\n")
        with self.assertRaises(ReferentialIntegrityError):
            load_taxonomy(*paths)

    def test_malformed_line_reports_line_number(self):
        paths = self.write("# header\ns1\tadjective\tgut\ns2\tadverb\tsehr\n", "")
        with self.assertRaises(ParseError) as ctx:
            load_taxonomy(*paths)
        self.assertEqual(ctx.exception.line, 3)

    def test_antonym_self_loop_rejected(self):
        paths = self.write("s1\tadjective\tgut\n", "s1\tantonym\ts1\n")
        with self.assertRaises(ParseError):
            load_taxonomy(*paths)

    def test_unknown_relation_kind(self):
        paths = self.write("s1\tadjective\tgut\ns2\tadjective\tfein\n", "s1\tsynonym\ts2\n")
        with self.assertRaises(ParseError):
            load_taxonomy(*paths)

    def test_bundled_toy_taxonomy(self):
        graph = load_taxonomy_dir(TOY_TAXONOMY)
        self.assertEqual(len(graph.synsets), 50)
        self.assertEqual(len(graph.edges), 70)
        lemmas = [lemma for s in graph.synsets.values() for lemma in s.lemmas]
        self.assertEqual(len(graph.lemma_index), len(set(lemmas)))
        for lemma, ids in graph.lemma_index.items():
            for sid in ids:
                self.assertIn(lemma, graph.synsets[sid].lemmas)

    def test_build_rejects_dangling_edge(self):
        with self.assertRaises(ReferentialIntegrityError):
            LexicalGraph.build([synset("s1", "gut")], [RelationEdge("s1", "s2", RelationKind.SIMILAR)])


class EdgePolicyTests(SimpleTestCase):
    def test_defaults(self):
        policy = EdgePolicy()
        self.assertEqual(policy.weight_for(RelationKind.ANTONYM), -1.0)
        self.assertEqual(policy.weight_for(RelationKind.SIMILAR), 0.8)
        self.assertEqual(policy.weight_for(RelationKind.HYPERNYM), 0.3)

    def test_non_negative_antonym_rejected(self):
        with self.assertRaises(InvalidPolicyError):
            EdgePolicy(antonym=0.0)
        with self.assertRaises(InvalidPolicyError):
            EdgePolicy(antonym=0.5)

    def test_out_of_range_rejected(self):
        with self.assertRaises(InvalidPolicyError):
            EdgePolicy(similar=1.5)

    def test_negative_synonymy_rejected(self):
        with self.assertRaises(InvalidPolicyError):
            EdgePolicy(similar=-0.2)


class DeriveTermGraphTests(SimpleTestCase):
    def test_co_membership_edge(self):
        graph = derive_term_graph(LexicalGraph.build([synset("s1", "gut", "schön")], []))
        self.assertEqual(graph.edges(), [("gut", "schön", 1.0)])

    def test_antonym_edge(self):
        lexical = LexicalGraph.build(
            [synset("s1", "gut"), synset("s2", "schlecht")],
            [RelationEdge("s1", "s2", RelationKind.ANTONYM)],
        )
        self.assertEqual(derive_term_graph(lexical).edges(), [("gut", "schlecht", -1.0)])

    def test_negative_edge_wins_magnitude_tie(self):
        lexical = LexicalGraph.build(
            [synset("s1", "gut", "schlecht"), synset("s2", "schlecht")],
            [RelationEdge("s1", "s2", RelationKind.ANTONYM)],
        )
        self.assertEqual(derive_term_graph(lexical).weight("gut", "schlecht"), -1.0)

    def test_larger_magnitude_wins(self):
        lexical = LexicalGraph.build(
            [synset("s1", "gut"), synset("s2", "fein")],
            [RelationEdge("s1", "s2", RelationKind.RELATED), RelationEdge("s2", "s1", RelationKind.SIMILAR)],
        )
        self.assertEqual(derive_term_graph(lexical).weight("gut", "fein"), 0.8)

    def test_zero_weight_kind_adds_no_edge(self):
        lexical = LexicalGraph.build(
            [synset("s1", "gut"), synset("s2", "fein")],
            [RelationEdge("s1", "s2", RelationKind.RELATED)],
        )
        graph = derive_term_graph(lexical, EdgePolicy(related=0.0))
        self.assertEqual(graph.edges(), [])
        self.assertEqual(graph.nodes, ("fein", "gut"))

    def test_toy_graph_invariants(self):
        lexical = load_taxonomy_dir(TOY_TAXONOMY)
        graph = derive_term_graph(lexical)
        self.assertEqual(set(graph.nodes), set(lexical.lemma_index))
        for u in graph.nodes:
            for v, w in graph.neighbors(u):
                self.assertIn((u, w), graph.neighbors(v))
                self.assertNotEqual(w, 0)
        adjacency = graph.adjacency()
        self.assertEqual((adjacency != adjacency.T).nnz, 0)

    def test_negative_edges_only_from_antonymy(self):
        graph = derive_term_graph(load_taxonomy_dir(TOY_TAXONOMY))
        negatives = {(u, v) for u, v, w in graph.edges() if w < 0}
        self.assertIn(("gut", "schlecht"), negatives)
        self.assertNotIn(("gut", "toll"), negatives)

    def test_deterministic_hash(self):
        first = derive_term_graph(load_taxonomy_dir(TOY_TAXONOMY))
        second = derive_term_graph(load_taxonomy_dir(TOY_TAXONOMY))
        self.assertEqual(first.canonical_hash(), second.canonical_hash())
        changed = derive_term_graph(load_taxonomy_dir(TOY_TAXONOMY), EdgePolicy(similar=0.7))
        self.assertNotEqual(first.canonical_hash(), changed.canonical_hash())


class TermGraphTests(SimpleTestCase):
    def test_from_edges_keeps_stronger_edge(self):
        graph = TermGraph.from_edges([("a", "b", 0.5), ("b", "a", -0.5), ("a", "c", 0.2)])
        self.assertEqual(graph.weight("a", "b"), -0.5)
        self.assertEqual(graph.neighbors("a"), [("b", -0.5), ("c", 0.2)])

    def test_rejects_out_of_range_weight(self):
        with self.assertRaises(ValidationError):
            TermGraph.from_edges([("a", "b", 1.5)])

    def test_reachable_from(self):
        graph = TermGraph.from_edges([("a", "b", 1.0), ("c", "d", 1.0)], nodes=["e"])
        self.assertEqual(graph.reachable_from(["a"]), {"a", "b"})
        self.assertEqual(graph.reachable_from(["e", "zz"]), {"e"})
