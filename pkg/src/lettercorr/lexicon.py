"""Rank-frequency lexicon, letter-share bands, and lexical change analyses.

Word types are ranked by decreasing frequency and partitioned into
contiguous rank bands that each account for a fixed share of all letters
in the text. Filtering the text down to one band and profiling the
divergence of adjacent segments shows which part of the vocabulary drives
changes in letter composition; half-vs-half word counts expose the same
drift at the level of individual words.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .divergence import fluctuation_level, jsd, segment_distribution
from .textnorm import SPACE, NormalizedText, Token, tokenize


@dataclass(frozen=True)
class LexiconEntry:
    rank: int
    word: str
    count: int
    length: int
    letter_share: float


@dataclass(frozen=True)
class FrequencyLexicon:
    """Word types ordered by decreasing count, ties broken alphabetically."""

    entries: tuple[LexiconEntry, ...]
    total_letters: int

    def __len__(self) -> int:
        return len(self.entries)

    def words_in_ranks(self, rank_lo: int, rank_hi: int) -> frozenset[str]:
        """Word types with rank in [rank_lo, rank_hi]; empty when lo > hi."""
        if rank_lo > rank_hi:
            return frozenset()
        return frozenset(e.word for e in self.entries[rank_lo - 1 : rank_hi])


@dataclass(frozen=True)
class Band:
    """Contiguous rank range; empty bands have rank_lo > rank_hi."""

    index: int
    rank_lo: int
    rank_hi: int
    word_types: int
    letter_share: float


@dataclass(frozen=True)
class BandPartition:
    bands: tuple[Band, ...]
    target_share: float
    degenerate: bool


@dataclass(frozen=True)
class BandJsdEntry:
    band: Band
    mean_normalized: float
    pair_count: int
    mean_trials: float


@dataclass(frozen=True)
class BandJsdReport:
    entries: tuple[BandJsdEntry, ...]
    segment_length: int

    def peak(self) -> BandJsdEntry:
        """Entry with the largest mean normalized divergence."""
        scored = [e for e in self.entries if not math.isnan(e.mean_normalized)]
        if not scored:
            raise ValueError("no band produced a countable segment pair")
        return max(scored, key=lambda e: e.mean_normalized)


class VarianceModel(NamedTuple):
    expected_count: float
    standard_deviation: float
    relative_sd: float


def build_lexicon(tokens: Iterable[Token]) -> FrequencyLexicon:
    """Rank word types by decreasing count; rank 1 is the most frequent."""
    counts = Counter(t.text for t in tokens)
    if not counts:
        raise ValueError("no tokens to rank")
    total_letters = sum(c * len(w) for w, c in counts.items())
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    entries = tuple(
        LexiconEntry(
            rank=i + 1,
            word=w,
            count=c,
            length=len(w),
            letter_share=c * len(w) / total_letters,
        )
        for i, (w, c) in enumerate(ordered)
    )
    return FrequencyLexicon(entries=entries, total_letters=total_letters)


def zipf_fit(lex: FrequencyLexicon, rank_lo: int, rank_hi: int) -> float:
    """Least-squares slope of ln(count) against ln(rank) over a rank range.

    Natural novels come out near -1.
    """
    sel = lex.entries[max(rank_lo, 1) - 1 : rank_hi]
    if len(sel) < 10:
        raise ValueError(
            f"need at least 10 ranks in [{rank_lo}, {rank_hi}], have {len(sel)}"
        )
    ranks = np.array([e.rank for e in sel], dtype=np.float64)
    counts = np.array([e.count for e in sel], dtype=np.float64)
    slope, _ = np.polyfit(np.log(ranks), np.log(counts), 1)
    return float(slope)


def partition_bands(
    lex: FrequencyLexicon, band_count: int = 5, target_share: float = 0.2
) -> BandPartition:
    """Split the lexicon into contiguous rank bands of equal letter share.

    Scanning in rank order, a band closes at the first word whose
    cumulative letter share reaches the band's cumulative target; the last
    band absorbs whatever remains. A single dominant word can close
    several targets at once, leaving empty bands; the partition is then
    flagged degenerate.
    """
    if band_count < 1:
        raise ValueError("band_count must be at least 1")
    if not 0.0 < target_share <= 1.0:
        raise ValueError("target_share must lie in (0, 1]")
    if not lex.entries:
        raise ValueError("empty lexicon")

    # integer letter counts keep the cumulative scan free of float drift
    closes: list[int] = []
    cum_letters = 0
    for e in lex.entries:
        cum_letters += e.count * e.length
        while (
            len(closes) < band_count - 1
            and cum_letters >= (len(closes) + 1) * target_share * lex.total_letters - 1e-6
        ):
            closes.append(e.rank)

    bounds: list[tuple[int, int]] = []
    prev = 0
    for c in closes:
        bounds.append((prev + 1, c))
        prev = c
    while len(bounds) < band_count - 1:
        bounds.append((prev + 1, prev))
    bounds.append((prev + 1, len(lex.entries)))

    bands = []
    for i, (lo, hi) in enumerate(bounds):
        members = lex.entries[lo - 1 : hi] if lo <= hi else ()
        letters = sum(e.count * e.length for e in members)
        bands.append(
            Band(
                index=i + 1,
                rank_lo=lo,
                rank_hi=hi,
                word_types=len(members),
                letter_share=letters / lex.total_letters,
            )
        )
    return BandPartition(
        bands=tuple(bands),
        target_share=target_share,
        degenerate=any(b.word_types == 0 for b in bands),
    )


def band_filter_text(
    text: NormalizedText,
    lex: FrequencyLexicon,
    band: Band,
    tokens: Sequence[Token] | None = None,
) -> NormalizedText:
    """Blank out every word not in the band, keeping offsets intact.

    Out-of-band tokens are overwritten with spaces of equal length, so the
    output has exactly the text's length and in-band words sit at their
    original positions.
    """
    if tokens is None:
        tokens = tokenize(text)
    keep = lex.words_in_ranks(band.rank_lo, band.rank_hi)
    out = text.codes.copy()
    for t in tokens:
        if t.text not in keep:
            out[t.start : t.start + t.length] = SPACE
    return NormalizedText(out)


def band_jsd(
    text: NormalizedText,
    lex: FrequencyLexicon,
    partition: BandPartition,
    segment_length: int = 100_000,
) -> BandJsdReport:
    """Mean normalized divergence of adjacent segment pairs per band.

    Segment pairs tile the original coordinate space from the start
    (offsets 0, 2L, 4L, ...). For each band the text is filtered to that
    band's words, letter distributions are counted per segment with spaces
    ignored, and each pair's divergence is normalized by the fluctuation
    level for its own letter counts before averaging. Pairs where a
    segment contains no in-band letters are skipped.
    """
    n = len(text)
    length = int(segment_length)
    if length < 1:
        raise ValueError("segment length must be positive")
    starts = range(0, n - 2 * length + 1, 2 * length)
    if len(starts) == 0:
        raise ValueError(f"text of length {n} is shorter than one segment pair of {2 * length}")
    tokens = tokenize(text)
    entries = []
    for band in partition.bands:
        filtered = band_filter_text(text, lex, band, tokens)
        norms: list[float] = []
        effs: list[float] = []
        for s in starts:
            left = segment_distribution(filtered, s, length, include_space=False)
            right = segment_distribution(filtered, s + length, length, include_space=False)
            if left.total == 0 or right.total == 0:
                continue
            pooled = int(np.count_nonzero(left.counts + right.counts))
            if pooled < 2:
                continue
            level = fluctuation_level(pooled, left.total, right.total)
            norms.append(jsd(left, right) / level)
            effs.append(2.0 / (1.0 / left.total + 1.0 / right.total))
        entries.append(
            BandJsdEntry(
                band=band,
                mean_normalized=float(np.mean(norms)) if norms else math.nan,
                pair_count=len(norms),
                mean_trials=float(np.mean(effs)) if effs else math.nan,
            )
        )
    return BandJsdReport(entries=tuple(entries), segment_length=length)


@dataclass(frozen=True)
class HalfComparison:
    """Word counts for the two halves of a text, split at a token boundary."""

    first: dict[str, int]
    second: dict[str, int]
    first_tokens: int
    second_tokens: int
    split_at: int

    def words(self) -> list[str]:
        """All word types, by decreasing total count, then alphabetically."""
        totals = Counter(self.first)
        totals.update(self.second)
        return sorted(totals, key=lambda w: (-totals[w], w))

    def frequency(self, word: str, half: int) -> float:
        """Occurrences per token in half 1 or 2."""
        if half == 1:
            return self.first.get(word, 0) / self.first_tokens
        if half == 2:
            return self.second.get(word, 0) / self.second_tokens
        raise ValueError("half must be 1 or 2")

    def relative_change(self, word: str) -> float:
        """(f2 - f1) / f1 on per-token frequencies; inf when f1 = 0."""
        f1 = self.frequency(word, 1)
        f2 = self.frequency(word, 2)
        if f1 == 0.0:
            return math.inf if f2 > 0 else 0.0
        return (f2 - f1) / f1

    def count_ratio(self, numer: str, denom: str, half: int) -> float:
        """Count ratio of two words within one half."""
        top = self.first.get(numer, 0) if half == 1 else self.second.get(numer, 0)
        bottom = self.first.get(denom, 0) if half == 1 else self.second.get(denom, 0)
        if bottom == 0:
            raise ValueError(f"word {denom!r} does not occur in half {half}")
        return top / bottom


def compare_halves(text: NormalizedText) -> HalfComparison:
    """Word counts for the first and second halves of the text.

    The split point is the midpoint symbol snapped to the nearest token
    boundary, so no word is cut in two and the per-half counts partition
    the full token stream.
    """
    tokens = tokenize(text)
    if not tokens:
        raise ValueError("no words in text")
    mid = len(text) // 2
    split = mid
    for t in tokens:
        if t.start >= mid:
            break
        end = t.start + t.length
        if end > mid:
            split = t.start if mid - t.start < end - mid else end
            break
    first = Counter(t.text for t in tokens if t.start < split)
    second = Counter(t.text for t in tokens if t.start >= split)
    return HalfComparison(
        first=dict(first),
        second=dict(second),
        first_tokens=sum(first.values()),
        second_tokens=sum(second.values()),
        split_at=split,
    )


def content_word_variance_model(
    word_count: float = 100, avg_word_length: float = 4.5, letter_prob: float = 0.1
) -> VarianceModel:
    """Poisson estimate of one letter's count variation in a content-word pool.

    A pool of ``word_count`` words of ``avg_word_length`` letters drawn
    from a language with per-letter probability ``letter_prob`` contains
    ``word_count * avg_word_length * letter_prob`` of that letter on
    average, with standard deviation sqrt of that (variance = mean). The
    relative spread 1/sqrt(expected) is what makes a small pool of
    frequent words dominate letter-distribution drift. ``relative_sd`` is
    nan when the expected count is zero.
    """
    if word_count <= 0 or avg_word_length <= 0:
        raise ValueError("word count and word length must be positive")
    if not 0.0 <= letter_prob <= 1.0:
        raise ValueError("letter probability must lie in [0, 1]")
    expected = word_count * avg_word_length * letter_prob
    sd = math.sqrt(expected)
    relative = sd / expected if expected > 0 else math.nan
    return VarianceModel(expected, sd, relative)
