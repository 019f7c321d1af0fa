"""Truncated Dirichlet series, local Euler factors, and a Perron cross-check.

Series kinds
------------
    f_theta2 : L(2s, chi_{-4}) * sum A(n) r2(n) n^{-s}
    f_f      : zeta(2s)        * sum A(n)^2 n^{-s}
    f_f_chi  : L(2s, chi_{-4}) * sum chi_{-4}(n) A(n)^2 n^{-s}
    Ltilde   :                   sum A(n)^2 (r2(n)/4) n^{-s}

All evaluations are restricted to Re s >= 1 + delta, where every series
converges absolutely; no analytic continuation is attempted.  Each value is
returned together with a rigorous truncation tail bound derived from the
Deligne envelope |A(n)| <= d(n) (so |A^2 r2/4| <= d(n)^3 and so on).  Tails
of sum_{n>M} d(n)^k n^{-sigma} are bounded by the difference between an
Euler-product upper bound for the full sum and the exact sieved partial
sum; the local factors have the closed forms

    sum_j (j+1)^2 x^j = (1 + x) / (1 - x)^3,
    sum_j (j+1)^3 x^j = (1 + 4x + x^2) / (1 - x)^4.

The coefficients A(n)^2 r2(n)/4 are multiplicative, so the plain sum
(the Ltilde kind) factors over primes and should decompose as the product
of the two square-coefficient quotient series (coefficients A(n)^2 and
chi_{-4}(n) A(n)^2, which are the f_f and f_f_chi kinds with their
prefactors divided back out) times a correction Euler product U(s).  U_p
is solved per prime as the ratio of deep local truncations, and the
residual reported for a shallower depth J shrinks like the first omitted
term p^{-(J+1) Re s}.

Prefactor normalization: the convolution prefactor here is L(2s, chi_{-4})
where some conventions use zeta(2s); the quotient forms divide it back
out, so the cross-checks are insensitive to the choice.  Note the quotient
with theta-squared has plain coefficients A(n) r2(n), while the Ltilde
kind carries r2(n)/4 (the division by 4 is what makes the coefficients
multiplicative); the contour checks keep each series paired with the
primed sum of its own coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AbscissaViolation,
    DepthUnavailable,
    LimitMismatch,
    QuadratureFailure,
    TruncationTooShort,
)
from .eigenform import EigenformTable
from .arithmetic import ArithmeticTables, divisor_counts, primes_upto

KINDS = ("f_theta2", "f_f", "f_f_chi", "Ltilde")
DEFAULT_DELTA = 1e-3
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


@dataclass(frozen=True)
class SeriesSpec:
    """A truncated series evaluation plan over shared tables."""

    kind: str
    eig: EigenformTable
    arith: ArithmeticTables
    truncation: int

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}")
        limit = min(self.eig.limit, self.arith.limit)
        if not 1 <= self.truncation <= limit:
            raise LimitMismatch(
                f"truncation {self.truncation} outside [1, {limit}]"
            )


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    tail_bound: float


@dataclass(frozen=True)
class EulerFactorCheck:
    """Local data of the multiplicative decomposition at one prime."""

    prime: int
    depth: int
    depth_solved: int
    ltilde_local: complex
    ff_local: complex
    ffchi_local: complex
    u_p: complex
    abs_u_minus_1: float
    residual: float


@dataclass(frozen=True)
class PerronCheck:
    kind: str
    x: float
    t: float
    sigma: float
    truncation: int
    contour_value: float
    direct_value: float
    discrepancy: float


def _require_abscissa(s: complex, delta: float) -> complex:
    s = complex(s)
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if s.real < 1.0 + delta:
        raise AbscissaViolation(
            f"Re s = {s.real} is left of the guard abscissa 1 + {delta}"
        )
    return s


def _local_factor_d2(x: float) -> float:
    return (1.0 + x) / (1.0 - x) ** 3


def _local_factor_d3(x: float) -> float:
    return (1.0 + x * (4.0 + x)) / (1.0 - x) ** 4


_LOCAL_FACTORS = {2: _local_factor_d2, 3: _local_factor_d3}


def divisor_power_series_upper(sigma: float, power: int, prime_limit: int = 10**5) -> float:
    """Upper bound for sum_{n>=1} d(n)^power n^{-sigma}, sigma > 1."""
    if sigma <= 1.0:
        raise AbscissaViolation(f"divisor-power series diverges at sigma={sigma}")
    factor = _LOCAL_FACTORS[power]
    log_prod = 0.0
    for p in primes_upto(prime_limit):
        log_prod += math.log(factor(float(p) ** -sigma))
    # (F(x)-1)/x has nonnegative Taylor coefficients, so it is increasing;
    # bound the omitted primes linearly and the prime sum by the integral.
    x0 = float(prime_limit) ** -sigma
    slope = (factor(x0) - 1.0) / x0
    prime_tail = slope * prime_limit ** (1.0 - sigma) / (sigma - 1.0)
    return math.exp(log_prod + prime_tail)


def divisor_power_tail(truncation: int, sigma: float, power: int) -> float:
    """Upper bound for sum_{n>truncation} d(n)^power n^{-sigma}."""
    d = divisor_counts(truncation)[1:].astype(float)
    n = np.arange(1, truncation + 1, dtype=float)
    partial = float(np.sum(d**power * n**-sigma))
    return max(0.0, divisor_power_series_upper(sigma, power) - partial)


def _coefficients(spec: SeriesSpec) -> np.ndarray:
    m = spec.truncation
    a = spec.eig.normalized[1 : m + 1]
    r2 = spec.arith.r2[1 : m + 1]
    chi = spec.arith.chi4[1 : m + 1]
    if spec.kind == "f_theta2":
        return a * r2
    if spec.kind == "f_f":
        return a * a
    if spec.kind == "f_f_chi":
        return chi * a * a
    return a * a * (r2 / 4.0)


def _envelope_tail(kind: str, truncation: int, sigma: float) -> float:
    if kind == "f_theta2":
        return 4.0 * divisor_power_tail(truncation, sigma, 2)
    if kind in ("f_f", "f_f_chi"):
        return divisor_power_tail(truncation, sigma, 2)
    return divisor_power_tail(truncation, sigma, 3)


def _prefactor(kind: str, s: complex, truncation: int) -> tuple[complex, float]:
    """(partial value, tail bound) of zeta(2s) or L(2s, chi_{-4})."""
    if kind == "Ltilde":
        return 1.0 + 0.0j, 0.0
    w = 2.0 * s
    n = np.arange(1, truncation + 1, dtype=float)
    powers = np.exp(-w * np.log(n))
    if kind == "f_f":
        value = complex(np.sum(powers))
        tail = truncation ** (1.0 - w.real) / (w.real - 1.0)
    else:
        chi = np.zeros(truncation, dtype=float)
        chi[0::4] = 1.0  # n = 1, 5, 9, ...
        if truncation >= 3:
            chi[2::4] = -1.0  # n = 3, 7, 11, ...
        value = complex(np.sum(chi * powers))
        # Abel summation against the bounded character partial sums
        tail = abs(w) / w.real * truncation**-w.real
    return value, tail


def eval_series(
    spec: SeriesSpec,
    s: complex,
    tol: float | None = None,
    delta: float = DEFAULT_DELTA,
) -> SeriesValue:
    """Truncated evaluation with a rigorous combined tail bound.

    The reported bound covers the truncation of the main sum (via the
    Deligne envelope) and of the prefactor series; it does not include
    double-rounding, which is many orders below it.
    """
    s = _require_abscissa(s, delta)
    m = spec.truncation
    coeffs = _coefficients(spec)
    n = np.arange(1, m + 1, dtype=float)
    main = complex(np.sum(coeffs * np.exp(-s * np.log(n))))
    pref, pref_tail = _prefactor(spec.kind, s, m)
    sum_tail = _envelope_tail(spec.kind, m, s.real)
    tail = abs(pref) * sum_tail + abs(main) * pref_tail + pref_tail * sum_tail
    if tol is not None and tail > tol:
        raise TruncationTooShort(
            f"tail bound {tail:.3e} exceeds requested tolerance {tol:.3e} "
            f"at truncation {m}"
        )
    return SeriesValue(pref * main, tail)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, math.isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


def _local_sums(
    eig: EigenformTable, arith: ArithmeticTables, p: int, s: complex, depth: int
) -> tuple[complex, complex, complex]:
    lt = ff = ffchi = 0.0 + 0.0j
    pj = 1
    for _ in range(depth + 1):
        a = eig.normalized[pj]
        a2 = a * a
        weight = pj ** -s
        lt += a2 * (arith.r2[pj] / 4.0) * weight
        ff += a2 * weight
        ffchi += int(arith.chi4[pj]) * a2 * weight
        pj *= p
    return lt, ff, ffchi


def solve_local_factor(
    eig: EigenformTable,
    arith: ArithmeticTables,
    p: int,
    s: complex,
    depth: int,
    delta: float = DEFAULT_DELTA,
) -> EulerFactorCheck:
    """Solve the correction factor U_p and check the local decomposition.

    U_p is the ratio of the deepest available truncations (all prime powers
    p^j within the table).  The residual compares the depth-`depth` local
    factors against U_p; it decays like the first omitted term
    p^{-(depth+1) Re s} times a Deligne-envelope constant.
    """
    s = _require_abscissa(s, delta)
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    limit = min(eig.limit, arith.limit)
    if depth < 1 or p**depth > limit:
        raise DepthUnavailable(
            f"depth {depth} at p={p} needs p^depth <= table limit {limit}"
        )
    depth_solved = int(math.log(limit) / math.log(p))
    while p**depth_solved > limit:  # guard against log rounding
        depth_solved -= 1
    lt_deep, ff_deep, ffchi_deep = _local_sums(eig, arith, p, s, depth_solved)
    u_p = lt_deep / (ff_deep * ffchi_deep)
    lt, ff, ffchi = _local_sums(eig, arith, p, s, depth)
    residual = abs(lt - ff * ffchi * u_p)
    return EulerFactorCheck(
        prime=p,
        depth=depth,
        depth_solved=depth_solved,
        ltilde_local=lt,
        ff_local=ff,
        ffchi_local=ffchi,
        u_p=u_p,
        abs_u_minus_1=abs(u_p - 1.0),
        residual=residual,
    )


def local_envelope_tail(p: int, depth: int, sigma: float) -> float:
    """Deligne-envelope bound on the omitted terms of one local factor.

    sum_{j>depth} (j+1)^3 p^{-j sigma}, computed as the closed form minus
    the exact partial sum.
    """
    x = float(p) ** -sigma
    partial = sum((j + 1) ** 3 * x**j for j in range(depth + 1))
    return max(0.0, _local_factor_d3(x) - partial)


def euler_product_ltilde(
    eig: EigenformTable,
    arith: ArithmeticTables,
    s: complex,
    prime_limit: int,
    delta: float = DEFAULT_DELTA,
) -> tuple[complex, float]:
    """Product of local factors of the plain multiplicative series.

    Returns (product over p <= prime_limit at maximal depth, tail bound).
    The bound covers per-factor depth truncation and the omitted primes.
    """
    s = _require_abscissa(s, delta)
    sigma = s.real
    limit = min(eig.limit, arith.limit)
    if prime_limit > limit:
        raise LimitMismatch(
            f"prime limit {prime_limit} exceeds table limit {limit}"
        )
    product = 1.0 + 0.0j
    prod_abs = 1.0
    prod_abs_hi = 1.0
    for p in (int(q) for q in primes_upto(prime_limit)):
        depth = 1
        while p ** (depth + 1) <= limit:
            depth += 1
        local, _, _ = _local_sums(eig, arith, p, s, depth)
        product *= local
        prod_abs *= abs(local)
        prod_abs_hi *= abs(local) + local_envelope_tail(p, depth, sigma)
    truncation_err = prod_abs_hi - prod_abs
    # omitted primes: each |local - 1| <= F3(p^-sigma) - 1
    x0 = float(prime_limit) ** -sigma
    slope = (_local_factor_d3(x0) - 1.0) / x0
    omitted = slope * prime_limit ** (1.0 - sigma) / (sigma - 1.0)
    tail = truncation_err + (prod_abs + truncation_err) * math.expm1(omitted)
    return product, tail


# ----------------------------------------------------------------------
# Truncated Perron cross-check
# ----------------------------------------------------------------------


def direct_primed_sum(coeffs: np.ndarray, x: float) -> float:
    """sum_{n <= X} c_n with the last term halved when X is an integer."""
    top = int(math.floor(x))
    total = math.fsum(coeffs[1 : top + 1])
    if top >= 1 and x == float(top):
        total -= 0.5 * coeffs[top]
    return total


def _integrand(
    coeffs: np.ndarray, x: float, sigma: float, t: np.ndarray
) -> np.ndarray:
    """Re[ D(sigma + it) X^{sigma+it} / (sigma+it) ] at the nodes t."""
    m = len(coeffs) - 1
    series = np.zeros(len(t), dtype=complex)
    for lo in range(1, m + 1, 1 << 16):
        hi = min(lo + (1 << 16), m + 1)
        n = np.arange(lo, hi, dtype=float)
        amp = coeffs[lo:hi] * n**-sigma
        series += np.exp(-1j * np.outer(t, np.log(n))) @ amp
    s = sigma + 1j * t
    return np.real(series * x**sigma * np.exp(1j * t * math.log(x)) / s)


def perron_contour(
    coeffs: np.ndarray,
    x: float,
    t_max: float,
    sigma: float,
    panel_tol: float = 1e-8,
    max_depth: int = 40,
) -> float:
    """(1/2 pi i) integral of D(s) X^s / s over the segment |Im s| <= T.

    D is the finite Dirichlet sum with coefficients `coeffs` (index n holds
    c_n).  Conjugate symmetry folds the segment onto [0, T]; panels are
    sized to the fastest oscillation exp(i t log(X/n)) and refined by
    bisection until each contributes below `panel_tol`.
    """
    m = len(coeffs) - 1
    max_freq = max(abs(math.log(x)), abs(math.log(x / m)), 1e-9)
    width = 2.0 * (2.0 * math.pi / max_freq)
    panels = max(4, int(math.ceil(t_max / width)))
    edges = np.linspace(0.0, t_max, panels + 1)

    def gauss(a: float, b: float) -> float:
        t = 0.5 * (b - a) * _GL_NODES + 0.5 * (a + b)
        vals = _integrand(coeffs, x, sigma, t)
        return 0.5 * (b - a) * float(np.dot(_GL_WEIGHTS, vals))

    total = 0.0
    stack = [(float(a), float(b), gauss(float(a), float(b)), 0) for a, b in zip(edges[:-1], edges[1:])]
    while stack:
        a, b, coarse, depth = stack.pop()
        mid = 0.5 * (a + b)
        left = gauss(a, mid)
        right = gauss(mid, b)
        if abs(coarse - (left + right)) <= panel_tol:
            total += left + right
            continue
        if depth >= max_depth:
            raise QuadratureFailure(
                f"panel [{a}, {b}] stalled at depth {depth} "
                f"(estimate {abs(coarse - (left + right)):.3e} > {panel_tol:.3e})"
            )
        stack.append((a, mid, left, depth + 1))
        stack.append((mid, b, right, depth + 1))
    return total / math.pi


def perron_check(
    eig: EigenformTable,
    arith: ArithmeticTables,
    kind: str,
    x: float,
    t_max: float,
    sigma: float,
    truncation: int | None = None,
    panel_tol: float = 1e-8,
    delta: float = DEFAULT_DELTA,
) -> PerronCheck:
    """Contour value of the truncated formula against the direct primed sum.

    kind "S1" pairs the quotient series with coefficients A(n) r2(n); kind
    "S2" pairs the plain multiplicative series with coefficients
    A(n)^2 r2(n)/4.  The contour integral reproduces the primed partial sum
    of the same coefficients up to the familiar O(X^{1+eps}/T) truncation
    error, which is what the discrepancy measures.
    """
    _require_abscissa(sigma + 0.0j, delta)
    if kind not in ("S1", "S2"):
        raise ValueError(f"perron kind must be 'S1' or 'S2', got {kind!r}")
    limit = min(eig.limit, arith.limit)
    if x < 1.0:
        raise ValueError(f"X must be >= 1, got {x}")
    if truncation is None:
        truncation = min(limit, max(1000, int(math.ceil(10.0 * x))))
    if not math.ceil(x) <= truncation <= limit:
        raise LimitMismatch(
            f"truncation {truncation} outside [ceil(X), table limit {limit}]"
        )
    a = eig.normalized[: truncation + 1]
    r2 = arith.r2[: truncation + 1]
    coeffs = a * r2 if kind == "S1" else a * a * (r2 / 4.0)
    contour = perron_contour(coeffs, x, t_max, sigma, panel_tol=panel_tol)
    direct = direct_primed_sum(coeffs, x)
    return PerronCheck(
        kind=kind,
        x=x,
        t=t_max,
        sigma=sigma,
        truncation=truncation,
        contour_value=contour,
        direct_value=direct,
        discrepancy=abs(contour - direct),
    )
