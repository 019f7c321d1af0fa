"""Sieves for r2(n), chi_{-4}(n), mu(n), and the square-twisted inversion.

r2(n) counts ordered representations n = c^2 + d^2 over all integer pairs
(signs and zeros included).  The classical divisor-sum identity

    r2(n) / 4 = sum_{d | n} chi_{-4}(d)

drives the sieve: add +1 on multiples of every d = 1 mod 4 and -1 on
multiples of every d = 3 mod 4.  This makes r2(n)/4 multiplicative, which
several downstream checks rely on.

The forward map and its inverse,

    b(n) = sum_{d^2 | n} chi_{-4}(d^2) a(n/d^2),
    a(n) = sum_{d^2 | n} mu(d) chi_{-4}(d^2) b(n/d^2),

are a square-supported, character-twisted Moebius inversion pair.  Since
chi_{-4}(d^2) is 1 for odd d and 0 for even d, both sums run over odd d
only.  Float and exact-integer versions are provided; the exact round trip
is a bit-for-bit identity test of the inversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import InvalidLimit, LimitMismatch
from .eigenform import EigenformTable


@dataclass(frozen=True)
class ArithmeticTables:
    """Sieved r2, chi_{-4}, and mu arrays; index 0 is unused."""

    limit: int
    r2: np.ndarray  # int32, r2[n] = #{(c,d) in Z^2 : c^2 + d^2 = n}
    chi4: np.ndarray  # int8, the nontrivial character mod 4
    mu: np.ndarray  # int8, the Moebius function


def sieve_arithmetic(limit: int) -> ArithmeticTables:
    """Sieve r2, chi_{-4}, and mu up to `limit`."""
    if limit < 1:
        raise InvalidLimit(f"limit must be >= 1, got {limit}")
    n = limit

    quarter = np.zeros(n + 1, dtype=np.int32)  # r2/4 via the divisor identity
    for d in range(1, n + 1, 4):
        quarter[d::d] += 1
    for d in range(3, n + 1, 4):
        quarter[d::d] -= 1
    r2 = 4 * quarter

    chi4 = np.zeros(n + 1, dtype=np.int8)
    chi4[1::4] = 1
    if n >= 3:
        chi4[3::4] = -1

    mu = np.ones(n + 1, dtype=np.int8)
    composite = np.zeros(n + 1, dtype=bool)
    root = int(math.isqrt(n))
    for p in range(2, root + 1):
        if not composite[p]:
            composite[p * p :: p] = True
            mu[p::p] *= -1
            mu[p * p :: p * p] = 0
    # primes above sqrt(n) divide each n <= limit at most once
    for p in np.nonzero(~composite[root + 1 :])[0] + root + 1:
        mu[p::p] *= -1
    if n >= 1:
        mu[0] = 0

    return ArithmeticTables(limit=n, r2=r2, chi4=chi4, mu=mu)


def r2_bruteforce(n: int) -> int:
    """Lattice-point count of c^2 + d^2 = n; the oracle for the r2 sieve."""
    count = 0
    for c in range(-math.isqrt(n), math.isqrt(n) + 1):
        rem = n - c * c
        d = math.isqrt(rem)
        if d * d == rem:
            count += 1 if d == 0 else 2
    return count


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n by the classic sieve."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(math.isqrt(n)) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0]


@lru_cache(maxsize=4)
def divisor_counts(limit: int) -> np.ndarray:
    """d(n) for n <= limit by the harmonic sieve (int32, index 0 unused)."""
    d = np.zeros(limit + 1, dtype=np.int32)
    for k in range(1, limit + 1):
        d[k::k] += 1
    return d


def _check_limits(eig: EigenformTable, arith: ArithmeticTables) -> int:
    if eig.limit != arith.limit:
        raise LimitMismatch(
            f"eigenform limit {eig.limit} != arithmetic limit {arith.limit}"
        )
    return eig.limit


def b_coefficients(eig: EigenformTable, arith: ArithmeticTables) -> np.ndarray:
    """b(n) = sum over odd d with d^2 | n of A(n/d^2) r2(n/d^2), as doubles."""
    n = _check_limits(eig, arith)
    base = eig.normalized * arith.r2
    b = np.zeros(n + 1)
    d = 1
    while d * d <= n:
        step = d * d
        count = n // step
        b[step :: step] += base[1 : count + 1]
        d += 2
    return b


def invert_b(b: Sequence[float], arith: ArithmeticTables) -> np.ndarray:
    """Recover a(n) = sum over odd d, d^2 | n of mu(d) b(n/d^2)."""
    b = np.asarray(b, dtype=float)
    n = arith.limit
    if len(b) != n + 1:
        raise LimitMismatch(f"b has {len(b) - 1} entries, tables have {n}")
    out = np.zeros(n + 1)
    mu = arith.mu
    d = 1
    while d * d <= n:
        m = int(mu[d])
        if m != 0:
            step = d * d
            count = n // step
            out[step :: step] += m * b[1 : count + 1]
        d += 2
    return out


def b_coefficients_exact(eig: EigenformTable, arith: ArithmeticTables) -> list[int]:
    """Exact-integer forward map with a(n) r2(n) in place of A(n) r2(n).

    The inversion identity is pointwise in the input sequence, so running it
    on the unnormalized integers turns the round trip into an exact test.
    """
    n = _check_limits(eig, arith)
    exact = eig.exact
    r2 = arith.r2.tolist()
    b = [0] * (n + 1)
    d = 1
    while d * d <= n:
        step = d * d
        for m in range(1, n // step + 1):
            b[step * m] += exact[m] * r2[m]
        d += 2
    return b


def invert_b_exact(b: Sequence[int], arith: ArithmeticTables) -> list[int]:
    """Exact-integer inverse of b_coefficients_exact."""
    n = arith.limit
    if len(b) != n + 1:
        raise LimitMismatch(f"b has {len(b) - 1} entries, tables have {n}")
    mu = arith.mu.tolist()
    out = [0] * (n + 1)
    d = 1
    while d * d <= n:
        m = mu[d]
        if m != 0:
            step = d * d
            for i in range(1, n // step + 1):
                out[step * i] += m * b[i]
        d += 2
    return out


def landau_ramanujan_constant(prime_limit: int = 10**6) -> float:
    """The constant K in K * X / sqrt(log X) for sums-of-two-squares counts.

    Computed from its Euler product K = 2^{-1/2} prod_{p = 3 mod 4}
    (1 - p^{-2})^{-1/2}; the omitted primes above `prime_limit` contribute
    a relative error below 1/(prime_limit * log(prime_limit)).
    """
    log_sum = 0.0
    for p in primes_upto(prime_limit):
        if p % 4 == 3:
            log_sum -= 0.5 * math.log1p(-1.0 / (int(p) * int(p)))
    return math.exp(log_sum) / math.sqrt(2.0)


def representable_count(arith: ArithmeticTables, upto: int | None = None) -> int:
    """#{n <= upto : r2(n) > 0}."""
    n = arith.limit if upto is None else upto
    if n > arith.limit:
        raise LimitMismatch(f"count requested to {n}, table limit {arith.limit}")
    return int(np.count_nonzero(arith.r2[1 : n + 1]))
