"""Eigenform coefficient data along sums of two squares.

Tables of exact and normalized Hecke eigenform coefficients, sieved
two-squares arithmetic, streaming partial sums with growth-exponent fits,
sign-change scanning, exact rational exponent calculators, and truncated
Dirichlet-series cross-checks (local Euler factors, contour integration).
"""

from .eigenform import (
    CERTIFIED_LIMIT,
    EigenformTable,
    build_by_hecke_extension,
    build_delta_table,
    delta_coefficients_naive,
    normalized_value,
    prime_seed_values,
    read_cache,
    truncate_table,
    write_cache,
)
from .arithmetic import (
    ArithmeticTables,
    b_coefficients,
    b_coefficients_exact,
    divisor_counts,
    invert_b,
    invert_b_exact,
    landau_ramanujan_constant,
    primes_upto,
    r2_bruteforce,
    representable_count,
    sieve_arithmetic,
)
from .series import (
    CheckpointSeries,
    CheckpointSpec,
    ExponentEstimate,
    attach_sup_windows,
    direct_sum,
    estimate_cf,
    fit_exponent,
    residual_sup_windows,
    stream_sums,
)
from .signscan import (
    CriteriaParams,
    SignChangeReport,
    admissible_r,
    count_dyadic,
    find_sign_changes,
    scan_window,
    transfer_exponents,
)
from .dirichlet import (
    EulerFactorCheck,
    PerronCheck,
    SeriesSpec,
    SeriesValue,
    euler_product_ltilde,
    eval_series,
    perron_check,
    perron_contour,
    solve_local_factor,
)

__version__ = "0.1.0"
