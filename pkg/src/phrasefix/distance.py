"""Word- and phrase-level similarity: Levenshtein, greedy word alignment,
orthographic / synset / word-order components and their weighted combination.

All components are similarities in [0, 1], higher is better. Word-order
violations under rigid mode yield the REJECT sentinel instead of a score.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .lexicon import SynonymLexicon


class _RejectType:
    __slots__ = ()

    def __repr__(self):
        return "REJECT"


REJECT = _RejectType()

MODES = ("A", "B", "C", "D")


@lru_cache(maxsize=None)
def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance with substitution as a single operation."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(cur[j - 1] + 1, prev[j] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def align(p_tokens: Sequence[str], r_tokens: Sequence[str],
          threshold: int) -> list[tuple[int, int]]:
    """Greedy left-to-right one-to-one alignment of P onto R.

    Each word of P takes the still-unaligned word of R at minimal
    Levenshtein distance strictly below ``threshold``; ties go to the
    leftmost word of R.
    """
    if threshold < 1:
        raise ValueError("alignment threshold must be >= 1")
    pairs: list[tuple[int, int]] = []
    used: set[int] = set()
    for i, p in enumerate(p_tokens):
        best = None
        for j, r in enumerate(r_tokens):
            if j in used:
                continue
            d = levenshtein(p, r)
            if d < threshold and (best is None or d < best[0]):
                best = (d, j)
        if best is not None:
            used.add(best[1])
            pairs.append((i, best[1]))
    return pairs


def f1_similarity(p_tokens: Sequence[str], r_tokens: Sequence[str]) -> float:
    """1 minus the mean best normalized edit distance of P's words into R."""
    if not p_tokens or not r_tokens:
        raise ValueError("phrases must be non-empty")
    total = 0.0
    for p in p_tokens:
        total += min(levenshtein(p, r) / max(len(p), len(r)) for r in r_tokens)
    return min(1.0, max(0.0, 1.0 - total / len(p_tokens)))


def f2_synset(p_tokens: Sequence[str], r_tokens: Sequence[str],
              lexicon: SynonymLexicon) -> float:
    """Fraction of P's words with an identical word or synset-mate in R."""
    if not p_tokens:
        raise ValueError("phrase must be non-empty")
    matched = sum(
        1 for p in p_tokens if any(lexicon.share_synset(p, r) for r in r_tokens))
    return matched / len(p_tokens)


def lcs_length(a: Sequence, b: Sequence) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, 1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def count_inversions(seq: Sequence[int]) -> int:
    return sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq))
        if seq[i] > seq[j])


def f3_word_order(p_tokens: Sequence[str], r_tokens: Sequence[str], mode: str,
                  threshold: int):
    """Word-order score of R against P after alignment.

    rigid: 1 if the aligned R-indices are strictly increasing, else REJECT.
    lcs: LCS of the R-index sequence against its sorted order over pair count.
    inversion: 1 / (1 + number of inversion pairs).
    """
    pairs = align(p_tokens, r_tokens, threshold)
    seq = [j for _, j in pairs]
    if mode == "rigid":
        if not seq:
            return REJECT
        ordered = all(seq[t] < seq[t + 1] for t in range(len(seq) - 1))
        return 1.0 if ordered else REJECT
    if not seq:
        return 0.0
    if mode == "lcs":
        return lcs_length(seq, sorted(seq)) / len(seq)
    if mode == "inversion":
        return 1.0 / (1.0 + count_inversions(seq))
    raise ValueError(f"unknown word-order mode {mode!r}")


@dataclass
class DistanceConfig:
    """Phrase-distance configuration.

    mode A: f1 + f2; B: f1 + f2 gated by rigid word order; C adds the LCS
    word-order component; D the inversion-pair one. ``weights`` (optional)
    are per enabled component and renormalized to sum to 1.
    """

    mode: str = "C"
    weights: tuple[float, ...] | None = None
    align_threshold: int = 3
    d_t: int = 3

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.d_t < 1:
            raise ValueError("d_t must be >= 1")
        self.component_weights()  # validate eagerly

    def n_components(self) -> int:
        return 2 if self.mode in ("A", "B") else 3

    def component_weights(self) -> tuple[float, ...]:
        n = self.n_components()
        w = self.weights if self.weights is not None else (1.0,) * n
        if len(w) != n:
            raise ValueError(f"mode {self.mode} needs {n} weights, got {len(w)}")
        if any(x < 0 for x in w) or sum(w) <= 0:
            raise ValueError("weights must be nonnegative with positive sum")
        total = sum(w)
        return tuple(x / total for x in w)


def combined_score(p_tokens: Sequence[str], r_tokens: Sequence[str],
                   lexicon: SynonymLexicon, config: DistanceConfig):
    """Weighted combination of the enabled components, or REJECT."""
    weights = config.component_weights()
    parts = [f1_similarity(p_tokens, r_tokens),
             f2_synset(p_tokens, r_tokens, lexicon)]
    if config.mode == "B":
        if f3_word_order(p_tokens, r_tokens, "rigid", config.align_threshold) is REJECT:
            return REJECT
    elif config.mode == "C":
        parts.append(f3_word_order(p_tokens, r_tokens, "lcs", config.align_threshold))
    elif config.mode == "D":
        parts.append(
            f3_word_order(p_tokens, r_tokens, "inversion", config.align_threshold))
    return sum(w * v for w, v in zip(weights, parts))
