import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from yule_impact.impact import (
    BinRangeError,
    BinSpec,
    DegenerateFitError,
    DegenerateRangeError,
    EmptyInputError,
    EmptyTruncationError,
    InsufficientPointsError,
    Significance,
    TruncatedDistribution,
    bin_frequencies,
    f_significance,
    h_index,
    log_pipeline,
    ols_fit,
    summary_stats,
    truncate_top_h,
)

counts_lists = st.lists(st.integers(min_value=0, max_value=60), max_size=40)


def brute_h(counts):
    return max(h for h in range(len(counts) + 1) if sum(c >= h for c in counts) >= h)


# ---- h-index ---------------------------------------------------------------

@pytest.mark.parametrize(
    "counts,h", [([], 0), ([10, 8, 5, 4, 3], 4), ([1, 1, 1], 1), ([0, 0], 0), ([5, 5, 5, 5, 5], 5)]
)
def test_h_index_examples(counts, h):
    assert h_index(counts).h == h


@given(counts_lists)
def test_h_index_matches_brute_force(counts):
    assert h_index(counts).h == brute_h(counts)


@given(counts_lists)
def test_h_index_bracketing(counts):
    h = h_index(counts).h
    assert sum(c >= h for c in counts) >= h
    assert sum(c >= h + 1 for c in counts) <= h


# ---- truncation ------------------------------------------------------------

def test_truncate_example():
    d = truncate_top_h([10, 8, 5, 4, 3])
    assert d.counts == (10, 8, 5, 4)
    assert (d.min_inlinks, d.max_inlinks, d.total_range, d.total_inlinks) == (4, 10, 7, 27)


def test_truncate_flat():
    d = truncate_top_h([5, 5, 5, 5, 5])
    assert d.h == 5 and d.total_range == 1 and d.total_inlinks == 25


def test_truncate_ties_keep_input_order():
    d = truncate_top_h([3, 9, 3, 3, 1])
    assert d.counts == (9, 3, 3)
    assert d.indices == (1, 0, 2)


def test_truncate_rejects_h_zero():
    with pytest.raises(EmptyTruncationError):
        truncate_top_h([0, 0, 0])
    with pytest.raises(EmptyTruncationError):
        truncate_top_h([])


@given(counts_lists)
def test_truncation_invariants(counts):
    assume(brute_h(counts) >= 1)
    d = truncate_top_h(counts)
    assert d.h == brute_h(counts)
    assert list(d.counts) == sorted(counts, reverse=True)[: d.h]
    assert d.min_inlinks >= d.h
    assert d.total_range == d.max_inlinks - d.min_inlinks + 1
    assert d.total_inlinks == sum(d.counts)


def test_shimomura_row_arithmetic():
    # h = 50, minimum 52, maximum 929
    counts = [929] + [52] * 49 + [40] * 30
    d = truncate_top_h(counts)
    assert d.h == 50 and d.min_inlinks == 52 and d.total_range == 878


# ---- binning ---------------------------------------------------------------

def brute_bins(values, k, lower, upper):
    """Exact-rational FREQUENCY allocation."""
    lo, hi = Fraction(lower), Fraction(upper)
    out = [0] * k
    for v in values:
        fv = Fraction(v)
        for j in range(k):
            if fv <= lo + (hi - lo) * (j + 1) / k:
                out[j] += 1
                break
    return out


def test_bin_example():
    hist = bin_frequencies([1, 2, 3, 4], BinSpec(k=2, lower=1, upper=4))
    assert hist.counts.tolist() == [2, 2]
    assert hist.midpoints.tolist() == [1.75, 3.25]


def test_bin_edge_value_goes_low():
    # 2.5 sits exactly on the edge and belongs to the lower bin
    assert bin_frequencies([2.5], BinSpec(k=2, lower=1, upper=4)).counts.tolist() == [1, 0]


def test_bin_max_lands_in_top_bin():
    hist = bin_frequencies([0.0, 0.1, 1.0], BinSpec(k=25, lower=0.0, upper=1.0))
    assert hist.counts[-1] == 1 and hist.counts.sum() == 3


def test_bin_degenerate_range():
    with pytest.raises(DegenerateRangeError):
        BinSpec(k=25, lower=7.0, upper=7.0)


def test_bin_out_of_range():
    with pytest.raises(BinRangeError) as err:
        bin_frequencies([1.0, 5.0], BinSpec(k=2, lower=1, upper=4))
    assert err.value.value == 5.0


def test_binspec_needs_two_bins():
    with pytest.raises(ValueError):
        BinSpec(k=1, lower=0, upper=1)


@given(
    data=st.data(),
    lower=st.integers(-50, 50),
    span=st.integers(1, 100),
    k=st.integers(2, 30),
)
def test_bins_match_exact_oracle(data, lower, span, k):
    upper = lower + span
    values = data.draw(st.lists(st.integers(lower, upper), max_size=60))
    hist = bin_frequencies(values, BinSpec(k=k, lower=lower, upper=upper))
    assert hist.counts.tolist() == brute_bins(values, k, lower, upper)
    assert hist.counts.sum() == len(values)


@given(
    values=st.lists(st.floats(0.0, 1.0), max_size=80),
    k=st.integers(2, 40),
)
def test_bins_conserve_mass(values, k):
    hist = bin_frequencies(values, BinSpec(k=k, lower=0.0, upper=1.0))
    assert hist.counts.sum() == len(values)
    assert np.all(np.diff(hist.midpoints) > 0)


def test_midpoint_formula():
    spec = BinSpec(k=25, lower=math.log(51), upper=math.log(930), domain="log")
    w = (spec.upper - spec.lower) / 25
    expected = [spec.lower + (j + 0.5) * w for j in range(25)]
    np.testing.assert_allclose(spec.midpoints(), expected, rtol=1e-14)


# ---- log pipeline ----------------------------------------------------------

def test_log_pipeline_shape_and_conservation():
    counts = [929, 500, 300, 200] + list(range(52, 98))
    d = truncate_top_h(counts)
    x, y, hist = log_pipeline(d)
    assert len(x) == len(y) == 25
    assert hist.counts.sum() == d.h
    assert hist.spec.lower == pytest.approx(math.log(d.min_inlinks + 1))
    assert hist.spec.upper == pytest.approx(math.log(d.max_inlinks + 1))
    np.testing.assert_allclose(x, np.log1p(hist.counts))
    assert ols_fit(x, y).df == 23


def exponential_profile(k=5, low=100, high=1218):
    """Works per log bin n_j = 2**(k - j) - 1, so ln(n_j + 1) is linear in j."""
    lo, hi = math.log(low + 1), math.log(high + 1)
    w = (hi - lo) / k
    works = []
    for j in range(k):
        n = 2 ** (k - j) - 1
        c = round(math.exp(lo + (j + 0.5) * w)) - 1
        assert lo + j * w < math.log(c + 1) <= lo + (j + 1) * w
        works += [c] * n
    works[0] = low  # the minimum sits in bin 0
    works[-1] = high  # the single work of the top bin is the maximum
    return works


def test_exponential_decay_gives_perfect_fit():
    works = exponential_profile()
    # pad with works too weakly cited to enter the h-core
    d = truncate_top_h(works + [3] * 20)
    assert d.h == len(works) == 57
    x, y, hist = log_pipeline(d, k=5)
    assert hist.counts.tolist() == [31, 15, 7, 3, 1]
    fit = ols_fit(x, y)
    assert fit.r_squared == 1.0
    assert math.isinf(fit.f_stat)
    assert fit.significance is Significance.ONE_PERCENT
    assert fit.slope < 0


def test_log_pipeline_degenerate():
    d = truncate_top_h([5, 5, 5, 5, 5])
    with pytest.raises(DegenerateRangeError):
        log_pipeline(d)


def test_transform_variant_shifts_range():
    d = TruncatedDistribution(counts=(20, 10, 10), min_inlinks=10, max_inlinks=20, total_range=11, total_inlinks=40)
    _, _, a = log_pipeline(d, k=4)
    _, _, b = log_pipeline(d, k=4, transform="log_zero_plus_one")
    assert a.spec.lower == pytest.approx(math.log(11))
    assert b.spec.lower == pytest.approx(math.log(10))
    with pytest.raises(ValueError):
        log_pipeline(d, transform="sqrt")


# ---- fit and F test ---------------------------------------------------------

def test_ols_against_numpy_polyfit():
    rng = np.random.default_rng(1)
    y = np.linspace(0, 5, 25)
    x = 3.0 - 0.4 * y + rng.normal(0, 0.3, 25)
    fit = ols_fit(x, y)
    slope, intercept = np.polyfit(y, x, 1)
    assert fit.slope == pytest.approx(slope, rel=1e-10)
    assert fit.intercept == pytest.approx(intercept, rel=1e-10)
    assert fit.r_squared == pytest.approx(np.corrcoef(x, y)[0, 1] ** 2, rel=1e-12)
    assert (fit.n, fit.df, fit.v1, fit.v2) == (25, 23, 1, 23)
    assert fit.f_stat == pytest.approx(fit.r_squared / (1 - fit.r_squared) * 23, rel=1e-12)


@given(
    pts=st.lists(
        st.tuples(st.floats(-100, 100, allow_subnormal=False), st.floats(-100, 100, allow_subnormal=False)),
        min_size=3,
        max_size=40,
    )
)
def test_ols_symmetry(pts):
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    assume(np.ptp(x) > 1e-3 and np.ptp(y) > 1e-3)
    a, b = ols_fit(x, y), ols_fit(y, x)
    assert a.r_squared == pytest.approx(b.r_squared, rel=1e-12, abs=1e-15)
    if math.isinf(a.f_stat) or math.isinf(b.f_stat):
        assert math.isinf(a.f_stat) and math.isinf(b.f_stat)
    else:
        assert a.f_stat == pytest.approx(b.f_stat, rel=1e-9, abs=1e-12)
    assert 0.0 <= a.r_squared <= 1.0


def test_ols_perfect_line():
    y = np.arange(10.0)
    fit = ols_fit(2.0 * y + 1.0, y)
    assert fit.r_squared == 1.0 and math.isinf(fit.f_stat)
    assert fit.p_value == 0.0


def test_ols_errors():
    with pytest.raises(DegenerateFitError):
        ols_fit([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(InsufficientPointsError):
        ols_fit([1.0, 2.0], [1.0, 2.0])


def synthetic_xy(r_squared, n=25, seed=0):
    """Points whose squared correlation is exactly ``r_squared``."""
    y = np.arange(n, dtype=float)
    yc = (y - y.mean()) / np.linalg.norm(y - y.mean())
    e = np.random.default_rng(seed).normal(size=n)
    e -= e.mean()
    e -= (e @ yc) * yc
    e /= np.linalg.norm(e)
    x = -math.sqrt(r_squared) * yc + math.sqrt(1 - r_squared) * e
    return x, y


@pytest.mark.parametrize("r2,f", [(0.4779, 21.05), (0.6152, 36.77)])
def test_published_f_from_r_squared(r2, f):
    fit = ols_fit(*synthetic_xy(r2))
    assert fit.r_squared == pytest.approx(r2, abs=1e-12)
    assert fit.f_stat == pytest.approx(f, abs=0.02)
    assert fit.significance is Significance.ONE_PERCENT


def test_f_significance_thresholds():
    p, level = f_significance(4.28, 1, 23)
    assert p == pytest.approx(0.05, abs=0.002) and level is Significance.FIVE_PERCENT
    p, level = f_significance(7.88, 1, 23)
    assert p == pytest.approx(0.01, abs=0.001) and level is Significance.ONE_PERCENT
    assert f_significance(0.0, 1, 23) == (1.0, Significance.NONE)
    assert f_significance(4.27, 1, 23)[1] is Significance.NONE
    assert f_significance(math.inf, 1, 23) == (0.0, Significance.ONE_PERCENT)


@pytest.mark.parametrize("f", [-1.0, math.nan, -math.inf])
def test_f_significance_rejects_bad_input(f):
    with pytest.raises(ValueError):
        f_significance(f, 1, 23)


@given(st.lists(st.integers(0, 50_000), min_size=2, max_size=20, unique=True))
def test_p_value_strictly_decreasing(ks):
    # f on a 0.01 grid; closer values can share a p that rounds to the same double
    ps = [f_significance(k / 100, 1, 23)[0] for k in sorted(ks)]
    assert all(p2 < p1 for p1, p2 in zip(ps, ps[1:]))


# ---- summary ---------------------------------------------------------------

@pytest.mark.parametrize("counts,frac", [([0, 0, 1], 2 / 3), ([5, 3], 0.0), ([0] + [4] * 9, 0.10)])
def test_uncited_fraction(counts, frac):
    s = summary_stats(counts)
    assert s.n_works == len(counts)
    assert s.uncited_fraction == pytest.approx(frac, abs=1e-15)


def test_summary_empty():
    with pytest.raises(EmptyInputError):
        summary_stats([])
