from __future__ import annotations

from typing import Sequence

from sentilex.corpus.utils import TokenizedDocument
from sentilex.evaluation.scoring import EvalReport, evaluate
from sentilex.evaluation.utils import GoldAnnotation, build_trie, exclude_nonalphabetic, match_corpus, validate_gold
from sentilex.lexicon.utils import Lexicon


def evaluate_lexicon(
    lexicon: Lexicon,
    documents: Sequence[TokenizedDocument],
    gold: Sequence[GoldAnnotation],
    nonalphabetic: bool = True,
) -> EvalReport:
    """Match ``lexicon`` against ``documents`` and score it; ``nonalphabetic=False`` drops letterless spans."""
    validate_gold(gold, documents)
    matches = match_corpus(build_trie(lexicon), documents)
    if not nonalphabetic:
        gold, matches = exclude_nonalphabetic(gold, matches, documents)
    return evaluate(matches, gold, documents, lexicon_size=len(lexicon))
