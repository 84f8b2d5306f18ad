"""Machine translation quality scores and correlation against them.

BLEU and NIST operate on lowercased whitespace tokens of the raw texts;
the stopword and lemma machinery stays out of their way on purpose, since
both scores are defined over surface n-grams.

BLEU here is the plain corpus formula for a single segment: clipped
n-gram precisions up to order 4, geometric mean with uniform weights, no
smoothing, and the short-candidate brevity penalty.  Orders longer than
the candidate contribute no n-grams and are left out of the mean, which
keeps a text perfectly similar to itself no matter how short.

NIST accumulates information-weighted n-gram matches arithmetically up
to order 5.  N-gram information comes from the reference side:
``log2(count(prefix) / count(ngram))``, with total reference length over
the unigram count at order 1.  Its brevity factor is
``exp(beta * ln(min(ratio, 1))^2)`` calibrated so a candidate two thirds
of the reference length is halved.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import RawText
from .errors import ZeroVarianceError

_NIST_BETA = math.log(0.5) / math.log(2.0 / 3.0) ** 2


@dataclass(frozen=True)
class TranslationTriple:
    """A candidate translation with its reference translations."""

    id: str
    candidate: RawText
    references: tuple[RawText, ...]


@dataclass(frozen=True)
class CorrelationReport:
    index_name: str
    gold_name: str
    pearson: float
    pairs: int


def gold_tokens(text: str) -> list[str]:
    """Lowercase whitespace tokenization used by both gold scores."""
    return text.lower().split()


def _ngrams(tokens, n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def clipped_counts(cand_tokens, ref_token_lists, n: int) -> tuple[int, int]:
    """Matched (clipped at the per-reference maximum) and total candidate
    n-grams of order n."""
    cand = _ngrams(cand_tokens, n)
    total = sum(cand.values())
    if total == 0:
        return 0, 0
    limit: Counter = Counter()
    for ref in ref_token_lists:
        for gram, count in _ngrams(ref, n).items():
            if count > limit[gram]:
                limit[gram] = count
    matched = sum(min(count, limit[gram]) for gram, count in cand.items())
    return matched, total


def bleu(candidate: str, references, max_n: int = 4) -> float:
    """Geometric-mean clipped precision with brevity penalty, in [0, 1]."""
    cand = gold_tokens(candidate)
    refs = [gold_tokens(r) for r in references]
    if not cand or not refs or all(not r for r in refs):
        return 0.0
    log_sum = 0.0
    orders = 0
    for n in range(1, max_n + 1):
        matched, total = clipped_counts(cand, refs, n)
        if total == 0:
            break
        if matched == 0:
            return 0.0
        log_sum += math.log(matched / total)
        orders += 1
    if orders == 0:
        return 0.0
    # Reference length closest to the candidate's; ties go to the shorter.
    c = len(cand)
    r = min((abs(len(ref) - c), len(ref)) for ref in refs)[1]
    brevity = 1.0 if c > r else math.exp(1.0 - r / c)
    return brevity * math.exp(log_sum / orders)


def nist(candidate: str, references, max_n: int = 5) -> float:
    """Information-weighted n-gram score, arithmetic over orders."""
    cand = gold_tokens(candidate)
    refs = [gold_tokens(r) for r in references]
    if not cand or not refs or all(not r for r in refs):
        return 0.0
    pooled = [Counter() for _ in range(max_n + 1)]
    for ref in refs:
        for n in range(1, max_n + 1):
            pooled[n].update(_ngrams(ref, n))
    total_ref_unigrams = sum(pooled[1].values())

    def info(gram) -> float:
        n = len(gram)
        denom = pooled[n][gram]
        if n == 1:
            numer = total_ref_unigrams
        else:
            numer = pooled[n - 1][gram[:-1]]
        return math.log2(numer / denom)

    score = 0.0
    for n in range(1, max_n + 1):
        cand_grams = _ngrams(cand, n)
        total = sum(cand_grams.values())
        if total == 0:
            break
        limit: Counter = Counter()
        for ref in refs:
            for gram, count in _ngrams(ref, n).items():
                if count > limit[gram]:
                    limit[gram] = count
        gained = sum(
            min(count, limit[gram]) * info(gram)
            for gram, count in cand_grams.items()
            if limit[gram] > 0
        )
        score += gained / total
    mean_ref_len = sum(len(r) for r in refs) / len(refs)
    ratio = len(cand) / mean_ref_len if mean_ref_len > 0 else 0.0
    if ratio <= 0.0:
        return 0.0
    brevity = 1.0 if ratio >= 1.0 else math.exp(_NIST_BETA * math.log(min(ratio, 1.0)) ** 2)
    return score * brevity


def pearson_correlation(xs, ys) -> float:
    """Sample Pearson correlation of two equal-length sequences.

    Needs at least three pairs; a constant sequence on either side makes
    the statistic undefined and raises ZeroVarianceError.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("inputs must be equal-length one-dimensional sequences")
    if len(x) < 3:
        raise ValueError(f"need at least 3 pairs, got {len(x)}")
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(np.sum(xc * xc))
    syy = float(np.sum(yc * yc))
    if sxx == 0.0 or syy == 0.0:
        raise ZeroVarianceError("correlation undefined for a constant sequence")
    return float(np.sum(xc * yc) / np.sqrt(sxx * syy))


def correlate(index_scores, gold_scores, index_name: str, gold_name: str) -> CorrelationReport:
    r = pearson_correlation(index_scores, gold_scores)
    return CorrelationReport(
        index_name=index_name, gold_name=gold_name, pearson=r, pairs=len(index_scores)
    )
