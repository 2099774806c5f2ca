"""Self-normalized confidence intervals for a mean.

The empirical measure of a recentred sample is a discrete zero-mean
law, so every observation has a partner under the pairing map.  Ties
are handled deterministically: the copies of a repeated value take the
midpoints of equal slices of the value's level range, which spreads
them evenly without randomization.  The studentizing denominators built
from the widths ``|x - r|`` or the products ``|x r|`` do not move when
a trial mean is subtracted, so the normalized pivot is linear in the
trial mean and percentile bootstrap quantiles of the pivot invert to a
closed-form interval.

The partner computation is vectorized across bootstrap resamples: all
rows are sorted at once and the level lookups run through a single
offset-packed ``searchsorted``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (BadLambda, BadLevel, ConstantSample, EmptySample,
                     InputError, TooFewResamples)

__all__ = [
    "EmpiricalPartners",
    "empirical_partners",
    "denominator",
    "pivot",
    "PivotRun",
    "bootstrap_ci",
    "PIVOT_KINDS",
]

PIVOT_KINDS = ("W", "Y_lambda")


def _as_rows(xs) -> np.ndarray:
    arr = np.asarray(xs, dtype=float)
    if arr.ndim != 1:
        raise InputError("expected a one-dimensional sample")
    if arr.size == 0:
        raise EmptySample("empty sample")
    if not np.isfinite(arr).all():
        raise InputError("sample contains non-finite entries")
    return arr


def _sorted_partners(S: np.ndarray) -> np.ndarray:
    """Partners of the entries of row-sorted recentred samples.

    Each entry carries mass ``1/n``; its level is the midpoint of its
    own slice of the cumulative weight on its side, and the partner is
    the opposite-side value whose cumulative slice covers that level.
    Ties resolve themselves: equal values produce evenly spread levels
    whatever their order."""
    b, n = S.shape
    neg_w = np.where(S < 0, -S, 0.0) / n
    pos_w = np.where(S > 0, S, 0.0) / n
    # cumulative negative mass from small magnitudes up: suffix sums
    suf = np.cumsum(neg_w[:, ::-1], axis=1)[:, ::-1]
    cum = np.cumsum(pos_w, axis=1)

    totals = np.maximum(suf[:, 0], cum[:, -1])
    step = 2.0 * (float(totals.max(initial=0.0)) + 1.0)
    offs = step * np.arange(b)[:, None]

    # positive entries look up the negative side
    h_pos = cum - 0.5 * pos_w
    rev = suf[:, ::-1]
    flat = (rev + offs).ravel()
    q = (np.minimum(h_pos, suf[:, :1]) + offs).ravel()
    i = np.searchsorted(flat, q, side="left") - np.repeat(
        np.arange(b) * n, n)
    j = np.clip(n - 1 - i, 0, n - 1).reshape(b, n)
    from_neg = np.take_along_axis(S, j, axis=1)

    # negative entries look up the positive side
    h_neg = suf - 0.5 * neg_w
    flat = (cum + offs).ravel()
    q = (np.minimum(h_neg, cum[:, -1:]) + offs).ravel()
    k = np.searchsorted(flat, q, side="left") - np.repeat(
        np.arange(b) * n, n)
    k = np.clip(k, 0, n - 1).reshape(b, n)
    from_pos = np.take_along_axis(S, k, axis=1)

    return np.where(S > 0, from_neg, np.where(S < 0, from_pos, 0.0))


def _den_rows(Z: np.ndarray, kind: str, lam: float) -> np.ndarray:
    S = np.sort(Z, axis=1)
    R = _sorted_partners(S)
    if kind == "W":
        W = np.abs(S - R)
        return 0.5 * np.sqrt((W * W).sum(axis=1))
    Y = np.abs(S * R)
    return (Y ** lam).sum(axis=1) ** (1.0 / (2.0 * lam))


def _check_kind(kind: str, lam) -> float:
    if kind not in PIVOT_KINDS:
        raise InputError(f"unknown pivot kind {kind!r}; "
                         f"pick one of {PIVOT_KINDS}")
    lam = float(lam)
    if kind == "Y_lambda" and not lam > 0:
        raise BadLambda(f"exponent must be positive, got {lam!r}")
    return lam


@dataclass(frozen=True)
class EmpiricalPartners:
    """Per-observation partners of a recentred sample, original order."""

    values: np.ndarray
    partners: np.ndarray

    @property
    def widths(self) -> np.ndarray:
        return np.abs(self.values - self.partners)

    @property
    def products(self) -> np.ndarray:
        return np.abs(self.values * self.partners)


def empirical_partners(xs, *, recentre: bool = True) -> EmpiricalPartners:
    """Partner of every observation under the empirical pairing.

    With ``recentre`` (the default) the sample mean is subtracted first;
    the values returned are the recentred ones."""
    arr = _as_rows(xs)
    z = arr - arr.mean() if recentre else arr.copy()
    order = np.argsort(z, kind="stable")
    S = z[order][None, :]
    R = _sorted_partners(S)[0]
    partners = np.empty_like(z)
    partners[order] = R
    return EmpiricalPartners(z, partners)


def denominator(xs, kind: str = "W", lam: float = 1.0) -> float:
    """Studentizer of the recentred sample: half the root sum of squared
    widths (``"W"``), or the power-sum norm of the products
    (``"Y_lambda"``).  Free of any trial mean by construction."""
    lam = _check_kind(kind, lam)
    arr = _as_rows(xs)
    z = arr - arr.mean()
    if not np.any(z != 0.0):
        raise ConstantSample("constant sample has no spread to "
                             "normalize by")
    return float(_den_rows(z[None, :], kind, lam)[0])


def pivot(xs, theta, kind: str = "W", lam: float = 1.0) -> float:
    """Normalized pivot ``(sum(x) - n theta) / denominator``; linear and
    decreasing in ``theta``."""
    arr = _as_rows(xs)
    den = denominator(arr, kind, lam)
    return float((arr.sum() - arr.size * float(theta)) / den)


@dataclass(frozen=True)
class PivotRun:
    """Everything produced by one bootstrap inversion."""

    kind: str
    lam: float
    level: float
    n: int
    resamples: int
    seed: Optional[int]
    mean: float
    den: float
    quantiles: tuple
    ci: tuple

    def to_jsonable(self) -> dict:
        return {
            "kind": self.kind,
            "lambda": self.lam,
            "level": self.level,
            "n": self.n,
            "resamples": self.resamples,
            "seed": self.seed,
            "mean": self.mean,
            "denominator": self.den,
            "pivot_quantiles": list(self.quantiles),
            "ci": list(self.ci),
        }


def bootstrap_ci(xs, *, level: float = 0.95, resamples: int = 2000,
                 kind: str = "W", lam: float = 1.0,
                 seed: Optional[int] = None, rng=None) -> PivotRun:
    """Percentile-of-pivot bootstrap interval for the mean.

    Each resample is recentred by its own mean before its denominator
    is computed, and its pivot is evaluated at the original sample
    mean.  Because the pivot is linear in the trial mean, the quantile
    band inverts in closed form."""
    if not 0.0 < level < 1.0:
        raise BadLevel(f"confidence level must lie in (0, 1), "
                       f"got {level!r}")
    resamples = int(resamples)
    if resamples < 100:
        raise TooFewResamples(f"{resamples} resamples cannot resolve "
                              "the quantiles; use at least 100")
    lam = _check_kind(kind, lam)
    arr = _as_rows(xs)
    n = arr.size
    xbar = float(arr.mean())
    den0 = denominator(arr, kind, lam)

    if rng is None:
        rng = np.random.default_rng(seed)
    idx = rng.integers(0, n, size=(resamples, n))
    draws = arr[idx]
    Z = draws - draws.mean(axis=1, keepdims=True)
    dens = _den_rows(Z, kind, lam)
    nums = draws.sum(axis=1) - n * xbar
    with np.errstate(divide="ignore", invalid="ignore"):
        pivots = np.where(dens > 0.0, nums / np.where(dens > 0.0, dens, 1.0),
                          np.sign(nums) * math.inf)
    pivots = np.nan_to_num(pivots, nan=0.0)
    alpha = 1.0 - level
    q_lo, q_hi = np.quantile(pivots, [alpha / 2.0, 1.0 - alpha / 2.0])
    ci = ((arr.sum() - q_hi * den0) / n, (arr.sum() - q_lo * den0) / n)
    return PivotRun(kind, lam, level, n, resamples, seed, xbar, den0,
                    (float(q_lo), float(q_hi)),
                    (float(ci[0]), float(ci[1])))
