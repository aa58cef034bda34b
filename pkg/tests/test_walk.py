import numpy as np
import pytest
from numpy.lib.stride_tricks import sliding_window_view

from lettercorr import (
    DisplacementCurve,
    IndicatorSeries,
    average_displacement,
    default_k_grid,
    displacement,
    fit_exponent,
    indicator,
    normalize,
)


def direct_displacement(bits: np.ndarray, ks) -> np.ndarray:
    """O(N*k) reference: materialize every window sum, then its variance."""
    return np.array(
        [float(np.var(sliding_window_view(bits, int(k)).sum(axis=1, dtype=np.int64))) for k in ks]
    )


def centered_profile_displacement(bits: np.ndarray, ks) -> np.ndarray:
    """Alternative route: running sum of mean-centered data, k-lag increments."""
    profile = np.concatenate(([0.0], np.cumsum(bits - bits.mean(), dtype=np.float64)))
    return np.array([float(np.var(profile[k:] - profile[:-k])) for k in ks])


def _series(bits) -> IndicatorSeries:
    return IndicatorSeries(bits=np.asarray(bits, dtype=np.uint8), source_letter=0)


def test_indicator_examples():
    text = normalize("aba")
    s = indicator(text, "a")
    assert s.bits.tolist() == [1, 0, 1]
    assert s.mean == pytest.approx(2 / 3)
    assert indicator(text, "z").bits.tolist() == [0, 0, 0]
    assert indicator(text, "z").mean == 0.0


def test_indicator_series_partition_the_alphabet():
    rng = np.random.default_rng(5)
    from lettercorr import NormalizedText

    text = NormalizedText(rng.integers(0, 27, size=500).astype(np.uint8))
    total = np.zeros(500, dtype=np.int64)
    for code in range(27):
        total += indicator(text, code).bits
    assert np.all(total == 1)


def test_indicator_rejects_empty_text():
    with pytest.raises(ValueError, match="empty text"):
        indicator(normalize(""), "a")


def test_constant_zero_series_has_zero_displacement():
    curve = displacement(_series([0] * 100), [1, 2, 5, 10, 25])
    assert np.all(curve.f == 0.0)


def test_alternating_series_vanishes_at_even_k():
    bits = np.tile([1, 0], 200)
    curve = displacement(_series(bits), [2, 4, 8, 16, 64])
    assert np.all(curve.f == 0.0)


def test_prefix_sum_matches_direct_oracle():
    rng = np.random.default_rng(17)
    for _ in range(10):
        n = int(rng.integers(200, 4000))
        bits = (rng.random(n) < rng.uniform(0.05, 0.5)).astype(np.uint8)
        ks = np.unique(rng.integers(1, max(n // 4, 2), size=6))
        got = displacement(_series(bits), ks).f
        want = direct_displacement(bits, ks)
        assert np.allclose(got, want, rtol=1e-9, atol=1e-12)


def test_variance_form_matches_centered_profile_form():
    rng = np.random.default_rng(23)
    for _ in range(5):
        n = int(rng.integers(1000, 10_000))
        bits = (rng.random(n) < 0.2).astype(np.uint8)
        ks = np.unique(rng.integers(1, n // 4, size=8))
        got = displacement(_series(bits), ks).f
        want = centered_profile_displacement(bits, ks)
        assert np.allclose(got, want, rtol=1e-9, atol=1e-12)


def test_iid_displacement_grows_like_k_times_variance():
    # Monte-Carlo oracle: across independent Bernoulli(p) series the mean
    # of F(k)/k must approach p(1-p) within 3 standard errors
    p = 0.1
    ks = [10, 100, 1000]
    rng = np.random.default_rng(99)
    ratios = np.empty((100, len(ks)))
    for i in range(100):
        bits = (rng.random(1_000_000) < p).astype(np.uint8)
        ratios[i] = displacement(_series(bits), ks).f / ks
    for j, k in enumerate(ks):
        mean = ratios[:, j].mean()
        sem = ratios[:, j].std(ddof=1) / 10.0
        assert abs(mean - p * (1 - p)) < 3 * sem, f"k={k}: {mean} vs {p * (1 - p)}"


def test_relabeling_zero_one_leaves_displacement_unchanged():
    rng = np.random.default_rng(3)
    bits = (rng.random(5000) < 0.3).astype(np.uint8)
    ks = [1, 7, 50, 400, 1250]
    f_orig = displacement(_series(bits), ks).f
    f_flip = displacement(_series(1 - bits), ks).f
    assert np.allclose(f_orig, f_flip, rtol=1e-12, atol=1e-15)


def test_displacement_rejects_oversized_windows():
    with pytest.raises(ValueError, match="k=30 exceeds N/4=25"):
        displacement(_series([0, 1] * 50), [10, 30])


def test_displacement_rejects_bad_grids():
    s = _series([0, 1] * 50)
    with pytest.raises(ValueError, match="strictly increasing"):
        displacement(s, [5, 5])
    with pytest.raises(ValueError, match="at least 1"):
        displacement(s, [0, 3])
    with pytest.raises(ValueError, match="empty"):
        displacement(s, [])


def test_fit_recovers_exact_power_laws():
    k = np.unique(np.geomspace(10, 10_000, 30).astype(np.int64))
    curve = DisplacementCurve(k=k, f=3.0 * k.astype(float) ** 1.2, n=40_000)
    fit = fit_exponent(curve, 10, 10_000)
    assert fit.alpha == pytest.approx(1.2, abs=1e-9)
    assert fit.rms_residual == pytest.approx(0.0, abs=1e-9)
    assert fit.excluded_zero == 0

    linear = DisplacementCurve(k=k, f=k.astype(float), n=40_000)
    assert fit_exponent(linear, 10, 10_000).alpha == pytest.approx(1.0, abs=1e-12)


def test_fit_excludes_zero_points_and_counts_them():
    k = np.array([10, 20, 40, 80, 160])
    f = np.array([10.0, 0.0, 40.0, 80.0, 160.0])
    fit = fit_exponent(DisplacementCurve(k=k, f=f, n=1000), 10, 160)
    assert fit.excluded_zero == 1
    assert fit.alpha == pytest.approx(1.0, abs=1e-12)


def test_fit_needs_three_usable_points():
    k = np.array([10, 20, 40, 80])
    f = np.array([1.0, 2.0, 0.0, 0.0])
    with pytest.raises(ValueError, match="at least 3"):
        fit_exponent(DisplacementCurve(k=k, f=f, n=1000), 10, 80)
    with pytest.raises(ValueError, match="empty fit range"):
        fit_exponent(DisplacementCurve(k=k, f=f, n=1000), 80, 10)


def test_iid_series_fits_near_unity_over_every_decade():
    rng = np.random.default_rng(2024)
    bits = (rng.random(1_000_000) < 0.3).astype(np.uint8)
    curve = displacement(_series(bits), default_k_grid(1_000_000))
    for lo in (10, 100, 1000, 10_000):
        alpha = fit_exponent(curve, lo, lo * 10).alpha
        assert 0.9 <= alpha <= 1.1, f"decade [{lo}, {lo * 10}]: {alpha}"


def test_default_k_grid_shapes():
    g = default_k_grid(400, 10)
    assert g[0] == 1 and g[-1] == 100
    assert np.all(np.diff(g) > 0)
    assert default_k_grid(40)[-1] == 10
    assert default_k_grid(1_000_000)[-1] == 250_000
    with pytest.raises(ValueError, match="too short"):
        default_k_grid(39)


def test_average_displacement():
    k = np.array([1, 2, 4])
    a = DisplacementCurve(k=k, f=np.array([1.0, 2.0, 4.0]), n=100)
    b = DisplacementCurve(k=k, f=np.array([3.0, 2.0, 0.0]), n=100)
    avg = average_displacement([a, b])
    assert avg.f.tolist() == [2.0, 2.0, 2.0]
    other = DisplacementCurve(k=np.array([1, 3, 4]), f=np.ones(3), n=100)
    with pytest.raises(ValueError, match="same window grid"):
        average_displacement([a, other])
