"""Long-range correlation estimators: DFA (first order) and rescaled-range Hurst.

DFA: the series is mean-centered and cumulatively summed into a profile, the
profile is cut into non-overlapping windows of length n (remainder dropped),
each window is detrended by its own least-squares line, and the pooled RMS
residual D(n) is fit as a power law D(n) ~ n^alpha in log-log scale.

R/S: S is the population standard deviation, X(n) the running sum of mean
deviations, R = max X - min X. The pointwise Hurst estimate for a prefix of
length N is ln(R/S) / ln(N/2); the regression estimate fits log of the
block-averaged R/S against log of the block size. The associated fractal
dimension of a self-affine record is 2 - H.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DegenerateSeriesError(ValueError):
    """Series has no usable fluctuation (constant input, zero variance, ...)."""


@dataclass(frozen=True)
class TrendCoefficients:
    """Least-squares line y(k) = a*k + b over k = 1..n."""

    a: float
    b: float


@dataclass(frozen=True)
class FluctuationCurve:
    """DFA output: (window, D) points plus the fitted log-log exponent."""

    windows: np.ndarray
    d: np.ndarray
    alpha: float
    alpha_r2: float

    def to_csv(self) -> str:
        lines = ["n,d"]
        lines += [f"{int(n)},{d:.12g}" for n, d in zip(self.windows, self.d)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class HurstResult:
    """Pointwise H(N) curve, regression H, and fractal dimension 2 - H."""

    pointwise: tuple[tuple[int, float], ...]
    h_regression: float
    fractal_dim: float
    rs_windows: np.ndarray
    rs_means: np.ndarray
    skipped_prefixes: tuple[int, ...] = ()

    def pointwise_csv(self) -> str:
        lines = ["N,h"]
        lines += [f"{n},{h:.12g}" for n, h in self.pointwise]
        return "\n".join(lines) + "\n"


def profile(series) -> np.ndarray:
    """Cumulative sum of the mean-centered series: y(k) = sum_{i<=k} (x_i - mean)."""
    x = np.asarray(series, dtype=float)
    if x.size < 2:
        raise ValueError("profile needs at least 2 points")
    return np.cumsum(x - x.mean())


def local_trend(segment) -> TrendCoefficients:
    """OLS line through (k, y_k) for k = 1..n, via the closed normal-equation forms."""
    y = np.asarray(segment, dtype=float)
    n = y.size
    if n < 2:
        raise ValueError("local_trend needs at least 2 points")
    k = np.arange(1, n + 1, dtype=float)
    sk = k.sum()
    skk = (k * k).sum()
    sy = y.sum()
    sky = (k * y).sum()
    denom = n * skk - sk * sk
    a = (n * sky - sk * sy) / denom
    b = (sy * skk - sk * sky) / denom
    return TrendCoefficients(a=float(a), b=float(b))


def default_dfa_windows(n_points: int) -> np.ndarray:
    """~20 window sizes geometrically spaced in [4, N/4], deduplicated."""
    hi = n_points // 4
    if hi < 4:
        raise ValueError("series too short for DFA windows")
    grid = np.unique(np.round(np.geomspace(4, hi, 20)).astype(int))
    return grid[(grid >= 4) & (grid <= hi)]


def _loglog_fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """OLS slope and R^2 of log10(y) against log10(x)."""
    lx = np.log10(x)
    ly = np.log10(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    pred = slope * lx + intercept
    ss_res = float(((ly - pred) ** 2).sum())
    ss_tot = float(((ly - ly.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), r2


def _segment_residuals(prof: np.ndarray, n: int) -> np.ndarray:
    """Residuals of per-segment linear detrending, one row per retained segment."""
    nseg = prof.size // n
    seg = prof[: nseg * n].reshape(nseg, n)
    k = np.arange(1, n + 1, dtype=float)
    sk = k.sum()
    skk = (k * k).sum()
    denom = n * skk - sk * sk
    sy = seg.sum(axis=1)
    sky = seg @ k
    a = (n * sky - sk * sy) / denom
    b = (sy * skk - sk * sky) / denom
    return seg - (np.outer(a, k) + b[:, None])


def dfa(series, windows=None) -> FluctuationCurve:
    """Detrended fluctuation analysis with linear detrending.

    D(n) is the RMS over all retained profile points of the detrended
    residuals; alpha is the OLS slope of log10 D vs log10 n.
    """
    x = np.asarray(series, dtype=float)
    if x.size < 16:
        raise ValueError("dfa needs at least 16 points")
    if np.ptp(x) == 0.0:
        raise DegenerateSeriesError("zero fluctuation: series is constant")
    if windows is None:
        windows = default_dfa_windows(x.size)
    windows = np.unique(np.asarray(windows, dtype=int))
    if windows.size == 0:
        raise ValueError("empty window grid")
    if windows.min() < 4 or windows.max() > x.size // 4:
        raise ValueError("windows must satisfy 4 <= n <= N/4")
    prof = profile(x)
    d = np.empty(windows.size)
    for i, n in enumerate(windows):
        resid = _segment_residuals(prof, int(n))
        d[i] = np.sqrt(np.mean(resid**2))
    if np.any(d == 0.0):
        raise DegenerateSeriesError("zero fluctuation at some window; log fit undefined")
    alpha, r2 = _loglog_fit(windows.astype(float), d)
    return FluctuationCurve(windows=windows, d=d, alpha=alpha, alpha_r2=r2)


def rs_statistic(series) -> float:
    """Rescaled range R/S with population standard deviation S."""
    x = np.asarray(series, dtype=float)
    if x.size < 2:
        raise ValueError("rs_statistic needs at least 2 points")
    s = float(x.std())  # population form (divide by N)
    if s == 0.0:
        raise DegenerateSeriesError("degenerate series: zero standard deviation")
    cum = np.cumsum(x - x.mean())
    r = float(cum.max() - cum.min())
    return r / s


def default_prefix_grid(n_points: int) -> np.ndarray:
    """~20 prefix lengths geometrically spaced in [16, N]."""
    if n_points < 16:
        raise ValueError("series too short for pointwise Hurst")
    return np.unique(np.round(np.geomspace(16, n_points, 20)).astype(int))


def hurst_pointwise(series) -> tuple[list[tuple[int, float]], list[int]]:
    """H(N) = ln(R/S of prefix) / ln(N/2) over a geometric grid of prefix lengths.

    Returns (points, skipped) where skipped lists prefix lengths whose R/S was
    degenerate.
    """
    x = np.asarray(series, dtype=float)
    if x.size < 16:
        raise ValueError("hurst_pointwise needs at least 16 points")
    points: list[tuple[int, float]] = []
    skipped: list[int] = []
    for n in default_prefix_grid(x.size):
        n = int(n)
        try:
            rs = rs_statistic(x[:n])
        except DegenerateSeriesError:
            skipped.append(n)
            continue
        points.append((n, float(np.log(rs) / np.log(n / 2.0))))
    return points, skipped


def default_rs_windows(n_points: int) -> np.ndarray:
    """~20 block sizes geometrically spaced in [16, N/4], deduplicated.

    Blocks shorter than 16 carry a strong small-sample upward bias in R/S
    (the N >> 1 regime does not hold there), so they are excluded by default.
    """
    hi = n_points // 4
    if hi < 16:
        raise ValueError("series too short for R/S windows")
    grid = np.unique(np.round(np.geomspace(16, hi, 20)).astype(int))
    return grid[(grid >= 16) & (grid <= hi)]


def hurst_regression(series, windows=None) -> HurstResult:
    """Multi-window R/S regression estimate of the Hurst index.

    For each block size w the R/S statistic is averaged over the floor(N/w)
    non-overlapping blocks; H is the OLS slope of log(mean R/S) vs log(w).
    """
    x = np.asarray(series, dtype=float)
    if x.size < 64:
        raise ValueError("hurst_regression needs at least 64 points")
    if windows is None:
        windows = default_rs_windows(x.size)
    windows = np.unique(np.asarray(windows, dtype=int))
    used_w: list[int] = []
    means: list[float] = []
    for w in windows:
        w = int(w)
        nblk = x.size // w
        if nblk < 1 or w < 2:
            continue
        vals = []
        for b in range(nblk):
            blk = x[b * w : (b + 1) * w]
            try:
                vals.append(rs_statistic(blk))
            except DegenerateSeriesError:
                continue
        if vals:
            used_w.append(w)
            means.append(float(np.mean(vals)))
    if len(used_w) < 4:
        raise DegenerateSeriesError("insufficient scaling range: fewer than 4 usable windows")
    w_arr = np.asarray(used_w, dtype=float)
    m_arr = np.asarray(means)
    h, _ = _loglog_fit(w_arr, m_arr)
    points, skipped = hurst_pointwise(x)
    return HurstResult(
        pointwise=tuple(points),
        h_regression=h,
        fractal_dim=2.0 - h,
        rs_windows=w_arr,
        rs_means=m_arr,
        skipped_prefixes=tuple(skipped),
    )
