"""Sign-change detection in {A(n) r2(n)} and the exact exponent calculators.

A sign change is a pair of indices n1 < n2 carrying opposite strict signs
with only signless (zero) entries between them.  Since r2(n) >= 0, the sign
of A(n) r2(n) is the sign of the exact integer a(n) wherever r2(n) > 0 and
zero elsewhere; signs are always taken from exact integers, never from the
floating-point table, so a reported change can never be a rounding
artifact.  Indices with zero value (non-representable n, and hypothetical
vanishing coefficients) neither form nor break a change.

The calculators work in exact rational arithmetic:

    admissible window exponents:  max(alpha + beta, eta) - (gamma - 1) < r < 1
    transfer from moment/subconvexity inputs:
        beta <= 1 - 1 / (2 (1 + beta')),
        eta  <= 1 - 1 / (2 (1 + max(eta', 2 eta'' - 1))).

With convexity inputs (beta', eta', eta'') = (1, 2, 1) these give
(3/4, 5/6) and windows [X, X + X^r] for r > 5/6; with the measured
beta = 3/5 and eta = 3/4 the window exponent drops to r > 3/4; under the
Generalized Lindeloef Hypothesis (all inputs 0) both bounds are 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import OutOfRange
from .eigenform import EigenformTable
from .arithmetic import ArithmeticTables


@dataclass(frozen=True)
class SignChangeReport:
    """Sign changes found on an inclusive index interval."""

    interval: tuple[int, int]
    changes: list[tuple[int, int]]
    count: int


def find_sign_changes(signs: np.ndarray, start_index: int = 0) -> SignChangeReport:
    """All adjacent opposite-sign pairs in a sign array.

    `signs` holds values in {-1, 0, +1} for consecutive indices beginning at
    `start_index`; zeros are signless and skipped.
    """
    signs = np.asarray(signs)
    nz = np.nonzero(signs)[0]
    pairs: list[tuple[int, int]] = []
    if len(nz) >= 2:
        vals = signs[nz]
        flips = np.nonzero(vals[1:] * vals[:-1] < 0)[0]
        pairs = [
            (start_index + int(nz[i]), start_index + int(nz[i + 1])) for i in flips
        ]
    end = start_index + len(signs) - 1
    return SignChangeReport((start_index, end), pairs, len(pairs))


def _effective_signs(
    eig: EigenformTable, arith: ArithmeticTables, lo: int, hi: int
) -> np.ndarray:
    """Signs of A(n) r2(n) for n in [lo, hi], from the exact tables."""
    return np.where(
        arith.r2[lo : hi + 1] > 0, eig.signs[lo : hi + 1], np.int8(0)
    )


def scan_window(
    eig: EigenformTable, arith: ArithmeticTables, x: int, r: float | Rational
) -> SignChangeReport:
    """Sign changes of {A(n) r2(n)} for n in [X, X + ceil(X^r)]."""
    if x < 2:
        raise OutOfRange(f"window start must be >= 2, got {x}")
    hi = x + math.ceil(float(x) ** float(r))
    limit = min(eig.limit, arith.limit)
    if hi > limit:
        raise OutOfRange(f"window [{x}, {hi}] exceeds table limit {limit}")
    return find_sign_changes(_effective_signs(eig, arith, x, hi), x)


def count_dyadic(
    eig: EigenformTable, arith: ArithmeticTables, x: int
) -> SignChangeReport:
    """Sign changes of {A(n) r2(n)} on the dyadic interval [X, 2X]."""
    limit = min(eig.limit, arith.limit)
    if x < 1 or 2 * x > limit:
        raise OutOfRange(f"dyadic interval [{x}, {2 * x}] exceeds table limit {limit}")
    return find_sign_changes(_effective_signs(eig, arith, x, 2 * x), x)


@dataclass(frozen=True)
class CriteriaParams:
    """Inputs to the sign-change window criterion, as exact rationals.

    alpha bounds the coefficients, beta the first partial sum, and the
    second partial sum is c X^gamma + O(X^{eta}).  The optional primed
    fields are the moment/subconvexity inputs of the transfer formulas.
    """

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    eta: Fraction
    beta_prime: Fraction | None = None
    eta_prime: Fraction | None = None
    eta_double_prime: Fraction | None = None

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma", "eta"):
            value = getattr(self, name)
            if value < 0:
                raise ValueError(f"{name} must be nonnegative, got {value}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")


def admissible_r(params: CriteriaParams) -> tuple[Fraction, Fraction] | None:
    """Open interval of admissible window exponents, or None if empty.

    r_min = max(alpha + beta, eta) - (gamma - 1); the guaranteed-change
    windows are [X, X + X^r] for r_min < r < 1.
    """
    r_min = max(params.alpha + params.beta, params.eta) - (params.gamma - 1)
    if r_min >= 1:
        return None
    return (r_min, Fraction(1))


def transfer_exponents(
    beta_prime: Fraction | int,
    eta_prime: Fraction | int,
    eta_double_prime: Fraction | int,
) -> tuple[Fraction, Fraction]:
    """Exact (beta, eta) bounds from first/second moment and pointwise inputs."""
    bp = Fraction(beta_prime)
    ep = Fraction(eta_prime)
    epp = Fraction(eta_double_prime)
    if bp < 0 or ep < 0 or epp < 0:
        raise ValueError("transfer inputs must be nonnegative")
    beta_bound = 1 - Fraction(1, 2) / (1 + bp)
    eta_bound = 1 - Fraction(1, 2) / (1 + max(ep, 2 * epp - 1))
    return beta_bound, eta_bound
