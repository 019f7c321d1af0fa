import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signflux import eigenform
from signflux.arithmetic import divisor_counts
from signflux.errors import (
    CacheFormatError,
    InvalidLimit,
    MissingPrime,
    OutOfRange,
    OverflowRisk,
)

# first values of the naive product expansion, frozen once from
# delta_coefficients_naive(10)
TAU_FIRST = [0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]


def test_limit_one_is_trivial():
    table = eigenform.build_delta_table(1)
    assert table.exact == [0, 1]
    assert table.normalized[1] == 1.0


def test_naive_oracle_first_values():
    assert eigenform.delta_coefficients_naive(10) == TAU_FIRST


def test_fast_build_matches_oracle_values():
    table = eigenform.build_delta_table(10)
    assert table.exact == TAU_FIRST


def test_fast_build_matches_naive_to_200():
    assert eigenform.build_delta_table(200).exact == eigenform.delta_coefficients_naive(200)


def test_hecke_recursion_small_primes(delta_mid):
    a = delta_mid.exact
    for p in (2, 3, 5, 7):
        pk = p**11
        j = 1
        while p ** (j + 1) <= delta_mid.limit:
            assert a[p] * a[p**j] == a[p ** (j + 1)] + pk * a[p ** (j - 1)]
            j += 1


_CACHED_TABLE = eigenform.build_delta_table(1000)


@settings(max_examples=200)
@given(st.integers(2, 500), st.integers(2, 500))
def test_multiplicative_on_coprime_pairs(m, n):
    table = _CACHED_TABLE
    if math.gcd(m, n) != 1 or m * n > table.limit:
        return
    assert table.exact[m * n] == table.exact[m] * table.exact[n]


def test_cross_construction_agrees():
    seeds = eigenform.prime_seed_values(_CACHED_TABLE)
    rebuilt = eigenform.build_by_hecke_extension(seeds, 12, 1000)
    assert rebuilt.exact == _CACHED_TABLE.exact


def test_zero_seeds_force_recursion_values():
    table = eigenform.build_by_hecke_extension({2: 0, 3: 0, 5: 0, 7: 0}, 12, 8)
    assert table.exact[4] == -(2**11)
    assert table.exact[8] == 0
    # a(p) = 0 makes the normalized value an exact float zero with no sign
    assert table.normalized[2] == 0.0
    assert table.signs[2] == 0


def test_hand_recursion_matches_oracle():
    table = eigenform.build_by_hecke_extension({2: -24, 3: 252}, 12, 4)
    assert table.exact[4] == (-24) ** 2 - 2**11 == -1472


def test_missing_prime_seed():
    with pytest.raises(MissingPrime):
        eigenform.build_by_hecke_extension({2: -24}, 12, 10)


def test_invalid_limit():
    with pytest.raises(InvalidLimit):
        eigenform.build_delta_table(0)


def test_overflow_guard():
    with pytest.raises(OverflowRisk):
        eigenform.build_delta_table(10**12)


def test_normalized_examples(delta_small):
    assert eigenform.normalized_value(delta_small, 1) == 1.0
    assert eigenform.normalized_value(delta_small, 2) == pytest.approx(
        -24 / 2**5.5, rel=1e-12
    )
    # 4^5.5 = 2^11 is exact in binary, so the quotient is an exact double
    assert eigenform.normalized_value(delta_small, 4) == -1472 / 2048
    with pytest.raises(OutOfRange):
        eigenform.normalized_value(delta_small, delta_small.limit + 1)
    with pytest.raises(OutOfRange):
        eigenform.normalized_value(delta_small, 0)


def test_normalized_relative_error(delta_small):
    mpmath.mp.prec = 120
    eps = np.finfo(float).eps
    for n in (2, 3, 17, 100, 999, 2048, 2999):
        exact = mpmath.mpf(delta_small.exact[n]) / mpmath.mpf(n) ** 5.5
        got = eigenform.normalized_value(delta_small, n)
        assert abs(got - float(exact)) <= 4 * eps * abs(float(exact))


def test_signs_match_exact(delta_small):
    # float conversion must never flip a sign; exact zero maps to 0.0
    for n in range(1, delta_small.limit + 1):
        a = delta_small.exact[n]
        assert delta_small.signs[n] == (1 if a > 0 else (-1 if a < 0 else 0))
        if a == 0:
            assert delta_small.normalized[n] == 0.0
        else:
            assert (delta_small.normalized[n] > 0) == (a > 0)


def test_deligne_bound_small(delta_small):
    d = divisor_counts(delta_small.limit)
    for n in range(1, delta_small.limit + 1):
        assert delta_small.exact[n] ** 2 <= int(d[n]) ** 2 * n**11


def test_exact_fits_cache_width(delta_small):
    assert max(abs(a) for a in delta_small.exact) < 2**127


def test_cache_round_trip(tmp_path, delta_small):
    path = tmp_path / "delta.sgnf"
    eigenform.write_cache(delta_small, str(path))
    loaded = eigenform.read_cache(str(path))
    assert loaded.weight == delta_small.weight
    assert loaded.limit == delta_small.limit
    assert loaded.exact == delta_small.exact
    assert np.array_equal(loaded.normalized, delta_small.normalized)


def test_cache_deterministic_bytes(tmp_path):
    table = eigenform.build_delta_table(500)
    p1, p2 = tmp_path / "a.sgnf", tmp_path / "b.sgnf"
    eigenform.write_cache(table, str(p1))
    eigenform.write_cache(eigenform.build_delta_table(500), str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_cache_rejects_garbage(tmp_path):
    path = tmp_path / "bad.sgnf"
    path.write_bytes(b"NOT-A-CACHE-FILE")
    with pytest.raises(CacheFormatError):
        eigenform.read_cache(str(path))
