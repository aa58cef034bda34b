"""Random-walk displacement analysis of letter indicator sequences.

A text is reduced to a binary sequence marking one letter's occurrences.
The displacement function F(k) is the variance, over all starting
positions, of the sums of length-k windows of that sequence. Linear
growth of F(k) in k signals an uncorrelated sequence; persistent
correlations show up as a steeper power law.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .textnorm import NormalizedText, symbol_code


@dataclass(frozen=True, eq=False)
class IndicatorSeries:
    """Binary occurrence sequence for one symbol of a text."""

    bits: np.ndarray
    source_letter: int

    def __post_init__(self) -> None:
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.ndim != 1 or bits.size == 0:
            raise ValueError("indicator series must be a non-empty 1-d sequence")
        if int(bits.max()) > 1:
            raise ValueError("indicator series may only contain 0 and 1")
        object.__setattr__(self, "bits", bits)

    def __len__(self) -> int:
        return self.bits.size

    @property
    def mean(self) -> float:
        return float(self.bits.mean())


@dataclass(frozen=True, eq=False)
class DisplacementCurve:
    """Sampled (k, F(k)) pairs for a source sequence of length n."""

    k: np.ndarray
    f: np.ndarray
    n: int

    def __post_init__(self) -> None:
        k = np.ascontiguousarray(self.k, dtype=np.int64)
        f = np.ascontiguousarray(self.f, dtype=np.float64)
        if k.shape != f.shape or k.ndim != 1:
            raise ValueError("k and F must be 1-d arrays of equal length")
        if k.size and (k[0] < 1 or np.any(np.diff(k) <= 0)):
            raise ValueError("window lengths must be strictly increasing and >= 1")
        if k.size and int(k[-1]) > self.n // 4:
            raise ValueError(f"window k={int(k[-1])} exceeds N/4={self.n // 4}")
        if np.any(f < 0):
            raise ValueError("displacement values must be non-negative")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "f", f)

    def __len__(self) -> int:
        return self.k.size


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares power-law fit of a displacement curve in log space."""

    alpha: float
    log_intercept: float
    k_min: int
    k_max: int
    rms_residual: float
    excluded_zero: int


def indicator(text: NormalizedText, letter: int | str) -> IndicatorSeries:
    """Binary series with a one wherever ``letter`` occurs in ``text``."""
    code = symbol_code(letter)
    if len(text) == 0:
        raise ValueError("empty text")
    bits = (text.codes == code).astype(np.uint8)
    return IndicatorSeries(bits=bits, source_letter=code)


def displacement(series: IndicatorSeries, k_grid: Iterable[int]) -> DisplacementCurve:
    """Variance of length-k window sums over all starting positions.

    For each window length k the sums over every start i in [0, N-k] are
    taken from a single prefix-sum pass, then their variance is computed.
    Window sums stay in 64-bit integers; only the moments are floating
    point, so results match a direct double loop to rounding error.
    Window lengths are capped at N/4 to keep enough windows for a stable
    variance.
    """
    bits = series.bits
    n = bits.size
    ks = np.asarray(list(k_grid) if not isinstance(k_grid, np.ndarray) else k_grid, dtype=np.int64)
    if ks.size == 0:
        raise ValueError("window grid is empty")
    if ks[0] < 1:
        raise ValueError(f"window k={int(ks[0])} must be at least 1")
    if np.any(np.diff(ks) <= 0):
        raise ValueError("window grid must be strictly increasing")
    limit = n // 4
    if ks[-1] > limit:
        bad = int(ks[np.argmax(ks > limit)])
        raise ValueError(f"window k={bad} exceeds N/4={limit} for a sequence of length {n}")

    prefix = np.empty(n + 1, dtype=np.int64)
    prefix[0] = 0
    np.cumsum(bits, dtype=np.int64, out=prefix[1:])

    f = np.empty(ks.size, dtype=np.float64)
    for j, k in enumerate(ks):
        sums = prefix[k:] - prefix[:-k]
        # shift by the integer mean before squaring: variance is unchanged
        # and the float moments see only small centered values
        shift = int(sums.sum(dtype=np.int64)) // sums.size
        z = (sums - shift).astype(np.float64)
        m1 = z.sum() / z.size
        f[j] = max((z * z).sum() / z.size - m1 * m1, 0.0)
    return DisplacementCurve(k=ks, f=f, n=n)


def fit_exponent(curve: DisplacementCurve, k_min: int, k_max: int) -> ScalingFit:
    """Fit F(k) ~ k**alpha by least squares on (ln k, ln F) within a range.

    Grid points with F = 0 cannot enter the log fit; they are dropped and
    counted in ``excluded_zero``. At least 3 usable points are required.
    """
    if k_min >= k_max:
        raise ValueError(f"empty fit range [{k_min}, {k_max}]")
    in_range = (curve.k >= k_min) & (curve.k <= k_max)
    usable = in_range & (curve.f > 0)
    excluded = int(np.count_nonzero(in_range & (curve.f <= 0)))
    if np.count_nonzero(usable) < 3:
        raise ValueError(
            f"need at least 3 points with F > 0 in [{k_min}, {k_max}], "
            f"have {int(np.count_nonzero(usable))}"
        )
    lk = np.log(curve.k[usable])
    lf = np.log(curve.f[usable])
    slope, intercept = np.polyfit(lk, lf, 1)
    resid = lf - (slope * lk + intercept)
    return ScalingFit(
        alpha=float(slope),
        log_intercept=float(intercept),
        k_min=int(k_min),
        k_max=int(k_max),
        rms_residual=float(np.sqrt(np.mean(resid * resid))),
        excluded_zero=excluded,
    )


def default_k_grid(n: int, points_per_decade: int = 20) -> np.ndarray:
    """Log-spaced unique integer window lengths from 1 to n // 4."""
    if n < 40:
        raise ValueError(f"sequence of length {n} is too short for a window grid (need >= 40)")
    if points_per_decade < 1:
        raise ValueError("points_per_decade must be at least 1")
    k_max = n // 4
    count = max(int(round(np.log10(k_max) * points_per_decade)) + 1, 2)
    grid = np.unique(np.geomspace(1.0, float(k_max), count).astype(np.int64))
    if grid[-1] != k_max:
        grid = np.append(grid, k_max)
    return grid


def average_displacement(curves: Sequence[DisplacementCurve]) -> DisplacementCurve:
    """Equal-weight mean of per-letter displacement curves on one grid."""
    if not curves:
        raise ValueError("no curves to average")
    k0 = curves[0].k
    for c in curves[1:]:
        if not np.array_equal(c.k, k0):
            raise ValueError("curves must share the same window grid")
    f = np.mean(np.stack([c.f for c in curves]), axis=0)
    return DisplacementCurve(k=k0.copy(), f=f, n=curves[0].n)
