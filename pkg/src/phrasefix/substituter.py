"""Candidate generation: two-stage fuzzy retrieval plus ranking, and the
two-common-words heuristic of the fixed-length baseline."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .distance import REJECT, DistanceConfig, combined_score
from .lexicon import SynonymLexicon
from .lm import LanguageModel
from .phrase_index import PhraseDoc, PhraseIndex


@dataclass(frozen=True)
class ScoredPhrase:
    tokens: tuple[str, ...]
    score: float  # log10 LM score


@dataclass
class SubstituterConfig:
    k: int = 5
    t_pool: int = 200
    distance: DistanceConfig = field(default_factory=DistanceConfig)
    include_identity: bool = True

    def __post_init__(self):
        if not 1 <= self.k <= self.t_pool:
            raise ValueError(f"need 1 <= k <= t_pool, got k={self.k} t_pool={self.t_pool}")


def find_best_sub(index: PhraseIndex, lm: LanguageModel, lexicon: SynonymLexicon,
                  phrase: Sequence[str], config: SubstituterConfig) -> list[ScoredPhrase]:
    """Up to k replacement candidates for ``phrase``.

    Stage 1 retrieves the fuzzy-matching phrase documents and keeps the
    t_pool best by combined distance score (rejects dropped); stage 2
    re-ranks that pool by LM score. The original phrase is seeded into the
    pool before the final truncation when ``include_identity`` is set.
    """
    query = tuple(phrase)
    if not query:
        raise ValueError("empty phrase")
    scored: list[tuple[float, PhraseDoc]] = []
    for docid in index.retrieve(query, config.distance.d_t):
        doc = index.docs[docid]
        s = combined_score(query, doc.tokens, lexicon, config.distance)
        if s is REJECT:
            continue
        scored.append((s, doc))
    scored.sort(key=lambda item: (-item[0], item[1].tokens))
    pool = {doc.tokens: ScoredPhrase(doc.tokens, doc.lm_score)
            for _, doc in scored[:config.t_pool]}
    if config.include_identity and query not in pool:
        pool[query] = ScoredPhrase(query, lm.score_sequence(query))
    ranked = sorted(pool.values(), key=lambda c: (-c.score, c.tokens))
    return ranked[:config.k]


def find_k_best_common(docs: Sequence[PhraseDoc],
                       phrase: Sequence[str]) -> list[tuple[str, ...]]:
    """All stored phrases sharing at least two word types with ``phrase``."""
    words = set(phrase)
    if len(tuple(phrase)) < 2:
        return []
    return [doc.tokens for doc in docs if len(words & set(doc.tokens)) >= 2]
