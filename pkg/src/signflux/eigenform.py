"""Exact and normalized Fourier coefficients of level-1 Hecke eigenforms.

The default form is the discriminant cusp form of weight 12,

    Delta = q * prod_{m>=1} (1 - q^m)^24 = sum_{n>=1} a(n) q^n,

whose integer coefficients a(n) are the Ramanujan tau values.  The
normalized coefficients A(n) = a(n) / n^{(k-1)/2} satisfy A(1) = 1, are
multiplicative, and obey Deligne's bound |A(n)| <= d(n).

Construction route
------------------
We expand the 24th power of the Euler product through the cube of the eta
series.  By Jacobi,

    prod_{m>=1} (1 - q^m)^3 = sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2},

a sparse series with ~sqrt(2N) nonzero terms up to degree N.  Three
truncated power-series squarings then give the 24th power, and a shift by
one index gives a(n).  All arithmetic is exact: each squaring is done by
Kronecker substitution (pack the coefficients into one big integer, square
it with GMP, unpack with balanced-digit correction), so no convolution is
ever performed in floating point.

The slow reference expansion `delta_coefficients_naive` multiplies out the
product factor by factor in O(N^2) integer operations; it shares no code
with the fast path and serves as its oracle.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Mapping, Sequence

import gmpy2
import numpy as np

from .errors import (
    CacheFormatError,
    InvalidLimit,
    MissingPrime,
    OutOfRange,
    OverflowRisk,
)

DEFAULT_WEIGHT = 12

# Largest limit for which every |a(n)| is certified to fit a signed 128-bit
# integer (the on-disk cache format).  From Deligne, |a(n)| <= d(n) * n^5.5;
# max_{n <= 2.5e6} d(n) = 384 (at n = 2162160), and
# 384 * (2.5e6)^5.5 < 2^126.9 < 2^127.  Python integers never overflow, so
# this guards the storage contract, not the in-memory arithmetic.
CERTIFIED_LIMIT = 2_500_000

_CACHE_MAGIC = b"SGNF"
_CACHE_VERSION = 1
# magic(4) + version u32 + weight u32 + limit u64
_CACHE_HEADER = struct.Struct("<4sIIQ")


@dataclass(frozen=True)
class EigenformTable:
    """Exact and normalized eigenform coefficients up to a limit.

    exact[n] = a(n) for 1 <= n <= limit (index 0 is an unused zero).
    normalized[n] = a(n) / n^{(k-1)/2} in double precision.
    signs[n] = sign of a(n) in {-1, 0, +1}, taken from the exact integers.
    """

    weight: int
    limit: int
    exact: list[int]
    normalized: np.ndarray
    signs: np.ndarray


def _square_truncated(coeffs: Sequence[int], deg: int) -> list[int]:
    """Square an integer polynomial, truncated to degree `deg`.

    Kronecker substitution: evaluate at x = 2^w for a field width w wide
    enough that no product coefficient can reach the sign boundary, square
    the resulting integer, and read the signed coefficients back off with a
    balanced base-2^w digit walk.  The width is certified from the actual
    input maxima, so the unpacking is exact for any input.
    """
    max_c = max(abs(c) for c in coeffs)
    if max_c == 0:
        return [0] * (deg + 1)
    # Any product coefficient is a sum of at most len(coeffs) terms c_i*c_j.
    bound = len(coeffs) * max_c * max_c
    width = bound.bit_length() + 2
    pos = [c if c > 0 else 0 for c in coeffs]
    neg = [-c if c < 0 else 0 for c in coeffs]
    packed = gmpy2.pack(pos, width) - gmpy2.pack(neg, width)
    digits = gmpy2.unpack(packed * packed, width)
    half = 1 << (width - 1)
    full = 1 << width
    top = min(deg, len(digits) - 1)
    out: list[int] = []
    carry = 0
    for i in range(top + 1):
        t = digits[i] + carry
        if t >= half:
            out.append(int(t - full))
            carry = 1
        else:
            out.append(int(t))
            carry = 0
    out.extend([0] * (deg - top))
    return out


def _finalize(weight: int, limit: int, exact: list[int]) -> EigenformTable:
    """Attach normalized values and exact-integer signs to a coefficient list."""
    half_weight = (weight - 1) / 2.0
    normalized = np.zeros(limit + 1)
    signs = np.zeros(limit + 1, dtype=np.int8)
    for n in range(1, limit + 1):
        a = exact[n]
        normalized[n] = float(a) / n**half_weight
        signs[n] = 1 if a > 0 else (-1 if a < 0 else 0)
    return EigenformTable(
        weight=weight, limit=limit, exact=exact, normalized=normalized, signs=signs
    )


def _check_limit(limit: int) -> None:
    if limit < 1:
        raise InvalidLimit(f"limit must be >= 1, got {limit}")
    if limit > CERTIFIED_LIMIT:
        raise OverflowRisk(
            f"limit {limit} exceeds the certified exact-arithmetic bound "
            f"{CERTIFIED_LIMIT} (128-bit coefficient storage)"
        )


def build_delta_table(limit: int) -> EigenformTable:
    """Coefficients of the weight-12 discriminant form up to `limit`.

    The exact array holds the q-expansion coefficients of
    q * prod (1-q^m)^24; the normalized array holds a(n) / n^5.5.
    """
    _check_limit(limit)
    deg = limit - 1
    cube = [0] * (deg + 1)
    j = 0
    while j * (j + 1) // 2 <= deg:
        cube[j * (j + 1) // 2] = (2 * j + 1) if j % 2 == 0 else -(2 * j + 1)
        j += 1
    sixth = _square_truncated(cube, deg)
    twelfth = _square_truncated(sixth, deg)
    product24 = _square_truncated(twelfth, deg)
    exact = [0] + product24  # shift by q: a(n) = [q^{n-1}] of the 24th power
    return _finalize(DEFAULT_WEIGHT, limit, exact)


def delta_coefficients_naive(limit: int) -> list[int]:
    """O(N^2) reference expansion of q * prod (1-q^m)^24.

    Multiplies the 24 factors in one at a time with exact integers.  Slow on
    purpose; independent of the Kronecker-substitution fast path.
    """
    _check_limit(limit)
    deg = limit - 1
    poly = [0] * (deg + 1)
    poly[0] = 1
    for m in range(1, deg + 1):
        for _ in range(24):
            for i in range(deg, m - 1, -1):
                poly[i] -= poly[i - m]
    return [0] + poly


def _smallest_prime_factors(limit: int) -> np.ndarray:
    spf = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == p:
            sl = spf[p * p :: p]
            sl[sl == (np.arange(p * p, limit + 1, p))] = p
    return spf


def build_by_hecke_extension(
    prime_values: Mapping[int, int], weight: int, limit: int
) -> EigenformTable:
    """Extend seed values a(p) to all n <= limit by the Hecke relations.

    Prime powers follow a(p^{j+1}) = a(p) a(p^j) - p^{k-1} a(p^{j-1}); the
    rest is filled in multiplicatively.  Every prime p <= limit must be
    seeded, otherwise MissingPrime is raised.
    """
    _check_limit(limit)
    spf = _smallest_prime_factors(limit).tolist()
    exact = [0] * (limit + 1)
    exact[1] = 1
    # prime-power part of each n, via the spf sieve
    ppart = [0] * (limit + 1)
    for n in range(2, limit + 1):
        p = spf[n]
        m = n // p
        if n == p:
            try:
                exact[n] = int(prime_values[p])
            except KeyError:
                raise MissingPrime(f"no seed value a({p}) supplied") from None
            ppart[n] = n
            continue
        if spf[m] == p:
            ppart[n] = ppart[m] * p
        else:
            ppart[n] = p
        q = ppart[n]
        if q == n:
            # prime power p^j, j >= 2
            pk = p ** (weight - 1)
            exact[n] = exact[p] * exact[n // p] - pk * exact[n // (p * p)]
        else:
            exact[n] = exact[q] * exact[n // q]
    return _finalize(weight, limit, exact)


def truncate_table(table: EigenformTable, limit: int) -> EigenformTable:
    """A view of the table restricted to a smaller limit."""
    if limit >= table.limit:
        return table
    if limit < 1:
        raise InvalidLimit(f"limit must be >= 1, got {limit}")
    return EigenformTable(
        weight=table.weight,
        limit=limit,
        exact=table.exact[: limit + 1],
        normalized=table.normalized[: limit + 1],
        signs=table.signs[: limit + 1],
    )


def normalized_value(table: EigenformTable, n: int) -> float:
    """A(n) = a(n) / n^{(k-1)/2} in double precision.

    Relative error is at most a few machine epsilons: one rounding for the
    int-to-double conversion, one for the power, one for the division.
    """
    if not 1 <= n <= table.limit:
        raise OutOfRange(f"index {n} outside [1, {table.limit}]")
    return float(table.normalized[n])


def prime_seed_values(table: EigenformTable) -> dict[int, int]:
    """a(p) for every prime p <= limit, suitable for build_by_hecke_extension."""
    spf = _smallest_prime_factors(table.limit)
    primes = np.nonzero(spf == np.arange(table.limit + 1))[0]
    return {int(p): table.exact[p] for p in primes if p >= 2}


def write_cache(table: EigenformTable, path: str) -> None:
    """Write the exact coefficients as little-endian signed 128-bit integers.

    Layout: header (magic "SGNF", version u32, weight u32, limit u64)
    followed by a(1), ..., a(limit), 16 bytes each.
    """
    header = _CACHE_HEADER.pack(
        _CACHE_MAGIC, _CACHE_VERSION, table.weight, table.limit
    )
    with open(path, "wb") as fh:
        fh.write(header)
        for n in range(1, table.limit + 1):
            try:
                fh.write(table.exact[n].to_bytes(16, "little", signed=True))
            except OverflowError:
                raise OverflowRisk(
                    f"a({n}) does not fit the signed 128-bit cache format"
                ) from None


def read_cache(path: str) -> EigenformTable:
    """Read a coefficient cache written by write_cache."""
    with open(path, "rb") as fh:
        header = fh.read(_CACHE_HEADER.size)
        if len(header) != _CACHE_HEADER.size:
            raise CacheFormatError(f"{path}: truncated header")
        magic, version, weight, limit = _CACHE_HEADER.unpack(header)
        if magic != _CACHE_MAGIC:
            raise CacheFormatError(f"{path}: bad magic {magic!r}")
        if version != _CACHE_VERSION:
            raise CacheFormatError(f"{path}: unsupported version {version}")
        body = fh.read(16 * limit)
    if len(body) != 16 * limit:
        raise CacheFormatError(f"{path}: truncated body")
    exact = [0] * (limit + 1)
    for n in range(1, limit + 1):
        exact[n] = int.from_bytes(body[16 * (n - 1) : 16 * n], "little", signed=True)
    return _finalize(weight, limit, exact)
