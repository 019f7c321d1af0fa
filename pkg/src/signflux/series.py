"""Streaming partial sums S1, S2 with checkpoints and growth-exponent fits.

The two running sums over the eigenform and two-squares tables are

    S1(X) = sum_{n <= X} A(n) r2(n),
    S2(X) = sum_{n <= X} A(n)^2 r2(n).

S1 oscillates around zero with heavy cancellation; S2 grows linearly,
S2(X) ~ c_f X, and the interesting quantity is the residual after removing
the fitted linear drift.  Because pointwise values of an oscillating sum
under-measure its envelope, growth exponents are fitted against the
supremum of |S - drift| over dyadic windows [X, 2X].

Summation is compensated: terms are consumed in blocks, each block total is
exactly rounded (math.fsum), and block offsets are re-fsummed so the
cross-block accumulation carries no drift.  Intra-block prefixes use a
vectorized cumulative sum whose error is bounded by block_size * eps times
the local magnitude, far below anything the fits can see.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Iterator

import numpy as np

from .errors import InsufficientData, LimitMismatch
from .eigenform import EigenformTable
from .arithmetic import ArithmeticTables

_BLOCK = 1 << 16


@dataclass(frozen=True)
class CheckpointSpec:
    """Where to sample the running sums.

    Checkpoints sit at geometrically spaced integers (ratio 2^{1/8} by
    default, 8 samples per octave); sup windows are the dyadic intervals
    [X, 2X] for X = window_first * 2^j.
    """

    ratio: float = 2.0 ** 0.125
    first: int = 16
    window_first: int = 1000

    def checkpoint_values(self, limit: int) -> list[int]:
        xs: list[int] = []
        x = float(self.first)
        while round(x) <= limit:
            xs.append(int(round(x)))
            x_next = x * self.ratio
            x = x_next if round(x_next) > round(x) else x + 1.0
        return sorted(set(xs))

    def window_starts(self, limit: int) -> list[int]:
        xs: list[int] = []
        x = self.window_first
        while 2 * x <= limit:
            xs.append(x)
            x *= 2
        return xs


@dataclass(frozen=True)
class CheckpointSeries:
    """Sampled values of one running sum.

    checkpoints: (X, S(X)) pairs, strictly increasing in X.
    sup_windows: (X, sup_{X <= Y <= 2X} |S(Y) - drift(Y)|) pairs, where the
    drift is zero for S1 and the fitted linear term for S2 residuals; None
    until computed.
    """

    kind: str
    checkpoints: list[tuple[int, float]]
    sup_windows: list[tuple[int, float]] | None = None


@dataclass(frozen=True)
class ExponentEstimate:
    """Least-squares slope of log magnitude against log X."""

    slope: float
    intercept: float
    r_squared: float
    window: tuple[int, int]


def _term_block(
    eig: EigenformTable, arith: ArithmeticTables, lo: int, hi: int, kind: str
) -> np.ndarray:
    a = eig.normalized[lo:hi]
    r = arith.r2[lo:hi]
    return a * r if kind == "S1" else a * a * r


def _stream_prefix_blocks(
    eig: EigenformTable, arith: ArithmeticTables, kind: str
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (lo, prefix_values) per block; prefix_values[i] = S(lo + i)."""
    n = eig.limit
    offsets: list[float] = []
    offset = 0.0
    for lo in range(1, n + 1, _BLOCK):
        hi = min(lo + _BLOCK, n + 1)
        terms = _term_block(eig, arith, lo, hi, kind)
        yield lo, offset + np.cumsum(terms)
        offsets.append(math.fsum(terms))
        offset = math.fsum(offsets)


def stream_sums(
    eig: EigenformTable,
    arith: ArithmeticTables,
    spec: CheckpointSpec = CheckpointSpec(),
) -> tuple[CheckpointSeries, CheckpointSeries]:
    """One pass over n = 1..limit emitting S1 and S2 checkpoint series.

    The S1 series carries sup windows of |S1| over each dyadic window.  The
    S2 series is returned without sup windows; residual windows need the
    fitted drift first (see residual_sup_windows).
    """
    n = _shared_limit(eig, arith)
    cps = spec.checkpoint_values(n)
    wins = spec.window_starts(n)
    vals: dict[str, list[tuple[int, float]]] = {"S1": [], "S2": []}
    s1_sups = [0.0] * len(wins)
    offsets: dict[str, list[float]] = {"S1": [], "S2": []}
    offset = {"S1": 0.0, "S2": 0.0}
    cp_pos = 0

    for lo in range(1, n + 1, _BLOCK):
        hi = min(lo + _BLOCK, n + 1)
        prefix: dict[str, np.ndarray] = {}
        for kind in ("S1", "S2"):
            terms = _term_block(eig, arith, lo, hi, kind)
            prefix[kind] = offset[kind] + np.cumsum(terms)
            offsets[kind].append(math.fsum(terms))
            offset[kind] = math.fsum(offsets[kind])
        while cp_pos < len(cps) and cps[cp_pos] < hi:
            x = cps[cp_pos]
            for kind in ("S1", "S2"):
                vals[kind].append((x, float(prefix[kind][x - lo])))
            cp_pos += 1
        for i, x in enumerate(wins):
            a, b = max(x, lo), min(2 * x, hi - 1)
            if a <= b:
                block_max = float(np.max(np.abs(prefix["S1"][a - lo : b - lo + 1])))
                s1_sups[i] = max(s1_sups[i], block_max)

    s1 = CheckpointSeries("S1", vals["S1"], list(zip(wins, s1_sups)))
    s2 = CheckpointSeries("S2", vals["S2"], None)
    return s1, s2


def _shared_limit(eig: EigenformTable, arith: ArithmeticTables) -> int:
    if eig.limit != arith.limit:
        raise LimitMismatch(
            f"eigenform limit {eig.limit} != arithmetic limit {arith.limit}"
        )
    return eig.limit


def direct_sum(
    eig: EigenformTable, arith: ArithmeticTables, kind: str, upto: int
) -> float:
    """Exactly rounded fresh evaluation of S1 or S2 at one point."""
    n = _shared_limit(eig, arith)
    if upto > n:
        raise LimitMismatch(f"sum to {upto} exceeds table limit {n}")
    terms = _term_block(eig, arith, 1, upto + 1, kind)
    return math.fsum(terms)


def estimate_cf(s2: CheckpointSeries) -> tuple[float, CheckpointSeries]:
    """Slope of S2(X) against X and the residual series S2(X) - c_f X.

    The slope is the no-intercept least-squares fit over the top decade of
    checkpoints, where the linear term dominates the sublinear error.
    """
    pts = s2.checkpoints
    if len(pts) < 10:
        raise InsufficientData(f"need >= 10 checkpoints, have {len(pts)}")
    xs = np.array([x for x, _ in pts], dtype=float)
    vs = np.array([v for _, v in pts])
    if xs[-1] < 100.0 * xs[0]:
        raise InsufficientData(
            f"checkpoints span {xs[-1] / xs[0]:.1f}x, need >= 2 decades"
        )
    top = xs >= xs[-1] / 10.0
    c_f = float(np.sum(xs[top] * vs[top]) / np.sum(xs[top] ** 2))
    residuals = [(int(x), float(v - c_f * x)) for (x, _), v in zip(pts, vs)]
    return c_f, CheckpointSeries("S2_residual", residuals, None)


def residual_sup_windows(
    eig: EigenformTable,
    arith: ArithmeticTables,
    c_f: float,
    spec: CheckpointSpec = CheckpointSpec(),
) -> list[tuple[int, float]]:
    """sup_{X <= Y <= 2X} |S2(Y) - c_f Y| over each dyadic window.

    A second full pass; the drift cannot be removed during the first pass
    because c_f is fitted from its output.
    """
    n = _shared_limit(eig, arith)
    wins = spec.window_starts(n)
    sups = [0.0] * len(wins)
    for lo, prefix in _stream_prefix_blocks(eig, arith, "S2"):
        hi = lo + len(prefix)
        for i, x in enumerate(wins):
            a, b = max(x, lo), min(2 * x, hi - 1)
            if a <= b:
                ys = np.arange(a, b + 1, dtype=float)
                block = np.abs(prefix[a - lo : b - lo + 1] - c_f * ys)
                sups[i] = max(sups[i], float(np.max(block)))
    return list(zip(wins, sups))


def attach_sup_windows(
    series: CheckpointSeries, sup_windows: list[tuple[int, float]]
) -> CheckpointSeries:
    return replace(series, sup_windows=sup_windows)


def fit_exponent(series: CheckpointSeries, mode: str) -> ExponentEstimate:
    """OLS of log magnitude against log X.

    mode "sup_dyadic_abs" fits the dyadic sup windows; mode "residual_abs"
    fits |checkpoint value| directly (for residual series).  Windows or
    checkpoints with zero magnitude carry no information on a log scale and
    are dropped with a warning.
    """
    if mode == "sup_dyadic_abs":
        if series.sup_windows is None:
            raise InsufficientData(f"series {series.kind!r} has no sup windows")
        data = series.sup_windows
        minimum = 8
    elif mode == "residual_abs":
        data = [(x, abs(v)) for x, v in series.checkpoints]
        minimum = 8
    else:
        raise ValueError(f"unknown fit mode {mode!r}")

    kept = [(x, m) for x, m in data if m > 0.0]
    if len(kept) < len(data):
        warnings.warn(
            f"dropped {len(data) - len(kept)} zero-magnitude points from "
            f"{series.kind} exponent fit",
            stacklevel=2,
        )
    if len(kept) < minimum:
        raise InsufficientData(
            f"need >= {minimum} usable points for the fit, have {len(kept)}"
        )
    lx = np.log([x for x, _ in kept])
    lm = np.log([m for _, m in kept])
    slope, intercept = np.polyfit(lx, lm, 1)
    fitted = slope * lx + intercept
    ss_res = float(np.sum((lm - fitted) ** 2))
    ss_tot = float(np.sum((lm - np.mean(lm)) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    window = (int(kept[0][0]), int(kept[-1][0]))
    return ExponentEstimate(float(slope), float(intercept), r_squared, window)
