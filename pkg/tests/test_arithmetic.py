import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signflux import arithmetic
from signflux.errors import InvalidLimit, LimitMismatch

ARITH_500 = arithmetic.sieve_arithmetic(500)


def naive_mu(n):
    """Moebius function by trial-division factorization."""
    if n == 1:
        return 1
    count = 0
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            count += 1
        p += 1
    if m > 1:
        count += 1
    return -1 if count % 2 else 1


def test_sieve_rejects_zero():
    with pytest.raises(InvalidLimit):
        arithmetic.sieve_arithmetic(0)


def test_r2_examples():
    r2 = ARITH_500.r2
    assert list(r2[1:6]) == [4, 4, 0, 4, 8]
    assert r2[3] == 0
    assert r2[25] == 12


def test_r2_against_lattice_enumeration():
    for n in range(1, 401):
        assert ARITH_500.r2[n] == arithmetic.r2_bruteforce(n)


def test_divisor_identity_both_ways():
    # 4 * sum_{d|n} chi(d) equals the lattice count; evaluate the divisor
    # sum directly, independent of the sieve accumulation order
    chi = lambda d: 0 if d % 2 == 0 else (1 if d % 4 == 1 else -1)
    for n in range(1, 301):
        divisor_sum = 4 * sum(chi(d) for d in range(1, n + 1) if n % d == 0)
        assert divisor_sum == arithmetic.r2_bruteforce(n)
        assert divisor_sum == ARITH_500.r2[n]


def test_chi4_values():
    chi4 = ARITH_500.chi4
    assert chi4[3] == -1
    for n in range(1, 501):
        if n % 2 == 0:
            assert chi4[n] == 0
        else:
            assert chi4[n] == (1 if n % 4 == 1 else -1)


def test_mu_against_factorization():
    for n in range(1, 501):
        assert ARITH_500.mu[n] == naive_mu(n)


@settings(max_examples=150)
@given(st.integers(1, 400), st.integers(1, 400))
def test_r2_quarter_multiplicative(m, n):
    if math.gcd(m, n) != 1 or m * n > 500:
        return
    r2 = ARITH_500.r2
    assert r2[m * n] * 4 == r2[m] * r2[n]


def test_b_coefficient_examples(delta_small, arith_small):
    b = arithmetic.b_coefficients(delta_small, arith_small)
    a_norm = delta_small.normalized
    assert b[1] == 4.0
    # even d is killed by the character, so only the d=1 term survives at n=4
    assert b[4] == pytest.approx(a_norm[4] * 4, rel=1e-14)
    assert b[9] == pytest.approx(a_norm[9] * 4 + 4.0, rel=1e-14)


def test_b_requires_matching_limits(delta_small):
    other = arithmetic.sieve_arithmetic(100)
    with pytest.raises(LimitMismatch):
        arithmetic.b_coefficients(delta_small, other)


def test_inversion_round_trip_float(delta_mid, arith_mid):
    b = arithmetic.b_coefficients(delta_mid, arith_mid)
    back = arithmetic.invert_b(b, arith_mid)
    target = delta_mid.normalized * arith_mid.r2
    assert np.max(np.abs(back[1:] - target[1:])) < 1e-9


def test_inversion_indicator_example():
    arith = arithmetic.sieve_arithmetic(81)
    b = np.zeros(82)
    b[9] = 1.0
    c = arithmetic.invert_b(b, arith)
    assert c[9] == 1.0
    assert c[81] == -1.0
    others = [n for n in range(1, 82) if n not in (9, 81)]
    assert all(c[n] == 0.0 for n in others)


def test_inversion_round_trip_exact(delta_small, arith_small):
    b = arithmetic.b_coefficients_exact(delta_small, arith_small)
    back = arithmetic.invert_b_exact(b, arith_small)
    for n in range(1, arith_small.limit + 1):
        assert back[n] == delta_small.exact[n] * int(arith_small.r2[n])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=120))
def test_inversion_is_left_inverse_on_any_sequence(values):
    """The twisted inversion inverts the forward map for arbitrary input."""
    limit = len(values)
    arith = arithmetic.sieve_arithmetic(limit)
    seq = [0] + values
    forward = [0] * (limit + 1)
    d = 1
    while d * d <= limit:
        for m in range(1, limit // (d * d) + 1):
            forward[d * d * m] += seq[m]
        d += 2
    back = arithmetic.invert_b_exact(forward, arith)
    assert back[1:] == seq[1:]


def test_landau_ramanujan_constant_converges():
    coarse = arithmetic.landau_ramanujan_constant(10**4)
    fine = arithmetic.landau_ramanujan_constant(10**5)
    # literature value 0.7642236535...
    assert fine == pytest.approx(0.7642236535, abs=1e-5)
    assert abs(fine - coarse) < 1e-4


def test_representable_count(arith_small):
    direct = sum(1 for n in range(1, 1001) if arithmetic.r2_bruteforce(n) > 0)
    assert arithmetic.representable_count(arith_small, 1000) == direct
    with pytest.raises(LimitMismatch):
        arithmetic.representable_count(arith_small, arith_small.limit + 1)


def test_divisor_counts():
    d = arithmetic.divisor_counts(100)
    for n in range(1, 101):
        assert d[n] == sum(1 for k in range(1, n + 1) if n % k == 0)


def test_primes_upto():
    assert list(arithmetic.primes_upto(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(arithmetic.primes_upto(1)) == 0
