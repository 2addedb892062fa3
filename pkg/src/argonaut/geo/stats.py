"""Validation and inferential statistics over matchup tables and series."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.stats import t as student_t

from .types import (
    AllZero,
    DegenerateInput,
    DepthBinStats,
    InferentialStats,
    MatchupRow,
    MatchupTable,
    NegativeInput,
    NoValidRows,
    ValidationStats,
)


def vector_speed(u: float, v: float) -> float:
    """Magnitude of a (u, v) velocity pair."""
    if not (math.isfinite(u) and math.isfinite(v)):
        raise ValueError("velocity components must be finite")
    return math.sqrt(u * u + v * v)


def log10p1(x: float) -> float:
    if x < 0:
        raise NegativeInput(f"log10(x+1) requires x >= 0, got {x}")
    return math.log10(x + 1.0)


def _valid_pairs(matched: MatchupTable) -> tuple[np.ndarray, np.ndarray]:
    obs = np.array([r.obs.value for r in matched.rows], dtype=np.float64)
    model = np.array([r.model for r in matched.rows], dtype=np.float64)
    keep = np.isfinite(obs) & np.isfinite(model)
    return model[keep], obs[keep]


def _stats_from_arrays(model: np.ndarray, obs: np.ndarray) -> ValidationStats:
    diff = model - obs
    bias = float(diff.mean())
    rmse = float(np.sqrt(np.mean(diff * diff)))
    r: float | None
    if model.size < 2 or float(np.std(model)) == 0.0 or float(np.std(obs)) == 0.0:
        r = None
    else:
        r = float(np.corrcoef(model, obs)[0, 1])
    return ValidationStats(n=int(model.size), bias=bias, rmse=rmse, pearson_r=r)


def validation_stats(matched: MatchupTable) -> ValidationStats:
    """Bias, RMSE and Pearson r of model-minus-observation pairs.

    Pearson r is reported as undefined (None) when either side has zero
    variance.
    """
    model, obs = _valid_pairs(matched)
    if model.size == 0:
        raise NoValidRows("no rows with both observation and model value")
    return _stats_from_arrays(model, obs)


def depth_bin_stats(matched: MatchupTable, bin_edges_m: Sequence[float]) -> list[DepthBinStats]:
    """Per-depth-bin validation statistics.

    Bins are half-open [lo, hi), the last bin is closed; empty bins are
    reported with n=0 and no statistics.
    """
    edges = list(bin_edges_m)
    if len(edges) < 2:
        raise ValueError("need at least two bin edges")
    if any(b <= a for a, b in zip(edges, edges[1:])):
        raise ValueError("bin edges must be strictly increasing")

    def bin_of(depth: float) -> int | None:
        if depth < edges[0] or depth > edges[-1]:
            return None
        for k in range(len(edges) - 1):
            if edges[k] <= depth < edges[k + 1]:
                return k
        return len(edges) - 2  # depth == edges[-1], closed last bin

    buckets: list[list[MatchupRow]] = [[] for _ in range(len(edges) - 1)]
    for row in matched.rows:
        k = bin_of(row.obs.depth_m)
        if k is not None:
            buckets[k].append(row)

    out = []
    for k, rows in enumerate(buckets):
        model, obs = _valid_pairs(MatchupTable(rows=tuple(rows)))
        if model.size == 0:
            out.append(DepthBinStats(lo_m=edges[k], hi_m=edges[k + 1], n=0, stats=None))
        else:
            out.append(
                DepthBinStats(
                    lo_m=edges[k], hi_m=edges[k + 1], n=int(model.size),
                    stats=_stats_from_arrays(model, obs),
                )
            )
    return out


def shannon_index(counts: Sequence[float]) -> float:
    """Shannon-Wiener H' with zero-abundance entries masked out of the sum."""
    arr = np.asarray(counts, dtype=np.float64)
    if np.any(arr < 0):
        raise NegativeInput("abundance counts must be non-negative")
    total = float(arr.sum())
    if total <= 0:
        raise AllZero("all counts are zero")
    p = arr[arr > 0] / total
    h = -float(np.sum(p * np.log(p)))
    return max(h, 0.0)  # -0.0 from a single taxon normalizes to 0.0


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..n with ties averaged."""
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(values.size, dtype=np.float64)
    sorted_vals = values[order]
    i = 0
    while i < values.size:
        j = i
        while j + 1 < values.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        avg = (i + j) / 2.0 + 1.0
        ranks[order[i : j + 1]] = avg
        i = j + 1
    return ranks


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    a = a - a.mean()
    b = b - b.mean()
    denom = math.sqrt(float(np.dot(a, a)) * float(np.dot(b, b)))
    if denom == 0.0:
        raise DegenerateInput("zero variance")
    return float(np.dot(a, b)) / denom


def _normal_two_sided_p(z: float) -> float:
    return math.erfc(abs(z) / math.sqrt(2.0))


def _t_two_sided_p(t: float, df: float) -> float:
    if not math.isfinite(t):
        return 0.0
    return float(2.0 * student_t.sf(abs(t), df))


def spearman(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Spearman rho (Pearson on average ranks) with t-approximation p-value."""
    n = x.size
    rho = _pearson(_average_ranks(x), _average_ranks(y))
    if abs(rho) >= 1.0:
        return float(np.clip(rho, -1.0, 1.0)), 0.0
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    return rho, _t_two_sided_p(t, n - 2)


def mann_whitney(g1: np.ndarray, g2: np.ndarray) -> tuple[float, float]:
    """Two-sided Mann-Whitney U (normal approximation with tie correction).

    Reports U of the first group; ties contribute half a pair.
    """
    n1, n2 = g1.size, g2.size
    combined = np.concatenate([g1, g2])
    ranks = _average_ranks(combined)
    r1 = float(ranks[:n1].sum())
    u = r1 - n1 * (n1 + 1) / 2.0

    n = n1 + n2
    mu = n1 * n2 / 2.0
    _, tie_counts = np.unique(combined, return_counts=True)
    tie_term = float(np.sum(tie_counts**3 - tie_counts))
    var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0))) if n > 1 else 0.0
    if var <= 0:
        return u, 1.0
    z = (u - mu) / math.sqrt(var)
    return u, _normal_two_sided_p(z)


def welch(g1: np.ndarray, g2: np.ndarray) -> tuple[float, float]:
    """Welch's t with Welch-Satterthwaite degrees of freedom.

    Undefined (NaN) when a group has fewer than two values.
    """
    n1, n2 = g1.size, g2.size
    if n1 < 2 or n2 < 2:
        return float("nan"), float("nan")
    v1 = float(g1.var(ddof=1))
    v2 = float(g2.var(ddof=1))
    se2 = v1 / n1 + v2 / n2
    if se2 == 0.0:
        return 0.0, 1.0
    t = (float(g1.mean()) - float(g2.mean())) / math.sqrt(se2)
    df = se2 * se2 / ((v1 / n1) ** 2 / (n1 - 1) + (v2 / n2) ** 2 / (n2 - 1))
    return t, _t_two_sided_p(t, df)


def ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Least-squares slope and intercept of y on x."""
    sxx = float(np.sum((x - x.mean()) ** 2))
    if sxx == 0.0:
        raise DegenerateInput("x is constant; OLS slope undefined")
    slope = float(np.sum((x - x.mean()) * (y - y.mean()))) / sxx
    intercept = float(y.mean()) - slope * float(x.mean())
    return slope, intercept


def inferential_suite(
    x: Sequence[float], y: Sequence[float], group: Sequence[bool]
) -> InferentialStats:
    """The paired analysis bundle: Spearman and OLS over (x, y), plus
    Mann-Whitney U and Welch's t comparing y between the two groups.

    ``group[i]`` selects the first sample for the two-sample tests.
    """
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    ga = np.asarray(group, dtype=bool)
    if xa.size != ya.size or xa.size != ga.size:
        raise ValueError("x, y and group must have equal length")
    if xa.size < 3:
        raise ValueError("need at least 3 paired observations")
    if not ga.any() or ga.all():
        raise ValueError("both groups must be non-empty")

    rho, rho_p = spearman(xa, ya)
    u, u_p = mann_whitney(ya[ga], ya[~ga])
    t, t_p = welch(ya[ga], ya[~ga])
    slope, intercept = ols(xa, ya)
    return InferentialStats(
        spearman_rho=rho, spearman_p=rho_p,
        mann_whitney_u=u, mann_whitney_p=u_p,
        welch_t=t, welch_p=t_p,
        ols_slope=slope, ols_intercept=intercept,
    )
