"""Closed-form bound formulas: frozen values, domain guards, and exact
power-cleared inequality checks against counts from test-local enumeration
or the oracle-tested polynomials.
"""

import math
from fractions import Fraction
from itertools import combinations

import pytest
from mpmath import mpf

from regcount import (
    BoundParams,
    DivisibilityError,
    DomainError,
    LogBound,
    balanced_profile,
    binary_entropy,
    block_miss_stats,
    eval_partition,
    gurvits_bound,
    independent_count_upper,
    independent_partition_upper,
    independent_upper_pm_exact,
    matching_count_upper,
    matching_partition_upper,
    matching_polynomial,
    occupancy_lambda,
    optimal_lambda,
    profile_matching_lower,
    stirling_rhs,
    stirling_term_check,
    union_independent_lower,
    union_matching_lower_explicit,
    union_small_t_exact,
)
from regcount.bounds import (
    BIPARTITE,
    GENERAL,
    LOWER,
    MARKOV,
    PERFECT_MATCHING,
    SMALL_T,
    UPPER,
    log2,
)

TIGHT = 1e-30  # far above 120-bit rounding, far below any real discrepancy


def test_log2_and_entropy():
    assert abs(log2(Fraction(8)) - 3) < TIGHT
    assert abs(log2(Fraction(3, 4)) - math.log2(0.75)) < 1e-12
    with pytest.raises(DomainError):
        log2(Fraction(0))
    assert binary_entropy(Fraction(1, 2)) == 1
    assert binary_entropy(0) == 0
    assert binary_entropy(1) == 0
    assert abs(binary_entropy(Fraction(1, 4)) - (2 - 0.75 * math.log2(3))) < 1e-12
    with pytest.raises(DomainError):
        binary_entropy(Fraction(3, 2))


def test_logbound_admits_slack():
    up = LogBound(mpf(3), UPPER)
    assert up.admits(mpf(3))
    assert up.admits(mpf(3) + mpf(2) ** -41)
    assert not up.admits(mpf(3) + mpf(2) ** -39)
    lo = LogBound(mpf(3), LOWER)
    assert lo.admits(mpf(3) - mpf(2) ** -41)
    assert not lo.admits(mpf(3) - mpf(2) ** -39)


def test_bound_params_validation():
    p = BoundParams(n=8, d=2, size=2)
    assert p.alpha == Fraction(1, 2)
    with pytest.raises(DomainError):
        BoundParams(n=0, d=2)
    with pytest.raises(DomainError):
        BoundParams(n=8, d=-1)
    with pytest.raises(DomainError):
        BoundParams(n=8, d=2, size=5)
    with pytest.raises(DomainError):
        BoundParams(n=8, d=2, lam=Fraction(-1))


def test_matching_partition_upper_against_cycle(c8):
    p = BoundParams(n=8, d=2, lam=Fraction(1))
    b = matching_partition_upper(p)
    assert b.direction == UPPER
    assert abs(b.value - 4 * log2(Fraction(3))) < TIGHT
    z = eval_partition(matching_polynomial(c8), Fraction(1))
    assert z == 47
    # power-cleared form of the same inequality, exactly: z^2 <= (1+d)^n
    assert z**2 <= 3**8
    assert b.admits(log2(Fraction(z)))


def test_optimal_lambda():
    assert optimal_lambda(BoundParams(n=8, d=2, size=2)) == Fraction(1, 2)
    assert optimal_lambda(BoundParams(n=6, d=3, size=1)) == Fraction(1, 6)
    with pytest.raises(DomainError):
        optimal_lambda(BoundParams(n=8, d=2, size=0))
    with pytest.raises(DomainError):
        optimal_lambda(BoundParams(n=8, d=2, size=4))
    with pytest.raises(DomainError):
        optimal_lambda(BoundParams(n=8, d=0, size=2))


def test_matching_count_upper_values(c8):
    # alpha = 1/2 at (8, 2, 2) gives exactly (n/2)(1/2 + H(1/2)) = 6
    b = matching_count_upper(BoundParams(n=8, d=2, size=2))
    assert abs(b.value - 6) < TIGHT
    assert b.admits(log2(Fraction(20)))
    assert matching_polynomial(c8).coefficient(2) == 20
    assert matching_count_upper(BoundParams(n=8, d=2, size=0)).value == 0
    full = matching_count_upper(BoundParams(n=8, d=2, size=4))
    assert abs(full.value - 4) < TIGHT
    with pytest.raises(DomainError):
        matching_count_upper(BoundParams(n=8, d=0, size=2))


def test_union_matching_lower_explicit_value():
    b = union_matching_lower_explicit(BoundParams(n=8, d=2, size=2))
    assert b.direction == LOWER
    want = 4 * (0.5 * 1 + 2 * 1 + 0.5 * (math.log2(0.5) - math.log2(math.e)))
    assert abs(float(b.value) - want) < 1e-12
    with pytest.raises(DomainError):
        union_matching_lower_explicit(BoundParams(n=8, d=2, size=0))
    with pytest.raises(DomainError):
        union_matching_lower_explicit(BoundParams(n=8, d=2, size=4))


def test_balanced_profile():
    assert balanced_profile(12, 3, 5) == (3, 2)
    assert balanced_profile(8, 2, 4) == (2, 2)
    assert balanced_profile(12, 2, 0) == (0, 0, 0)
    for n, d, ell in ((12, 3, 5), (16, 2, 7), (24, 4, 11)):
        prof = balanced_profile(n, d, ell)
        assert sum(prof) == ell
        assert max(prof) - min(prof) <= 1
    with pytest.raises(DivisibilityError):
        balanced_profile(10, 3, 2)
    with pytest.raises(DomainError):
        balanced_profile(8, 2, 5)


def test_stirling_check_holds_at_c_one_small_grid():
    # the acceptance suite sweeps d <= 64; this is the cheap sanity slice
    for d in range(1, 11):
        for a in range(d + 1):
            assert stirling_term_check(d, a, 1)
    with pytest.raises(DomainError):
        stirling_rhs(4, 2, Fraction(1, 2))
    with pytest.raises(DomainError):
        stirling_rhs(4, 5, 1)


def test_profile_lower_is_sum_of_terms_and_holds():
    from regcount import union_matching_count, union_params

    prof = balanced_profile(8, 2, 2)
    b = profile_matching_lower(8, 2, prof, 1)
    assert b.direction == LOWER
    assert abs(b.value - sum(stirling_rhs(2, a, 1) for a in prof)) < TIGHT
    exact = union_matching_count(union_params(8, 2), 2)
    assert b.admits(log2(Fraction(exact)))


def test_gurvits_bound(c8):
    b = gurvits_bound(c8, Fraction(1))
    # nu = 4 and |E|/nu = 2, so the bound is 4 log2(3); cleared: z <= 3^4
    assert abs(b.value - 4 * log2(Fraction(3))) < TIGHT
    z = eval_partition(matching_polynomial(c8), Fraction(1))
    assert z <= 3**4
    assert b.admits(log2(Fraction(z)))
    from regcount import build_graph

    with pytest.raises(DomainError):
        gurvits_bound(build_graph(3, []), Fraction(1))
    with pytest.raises(DomainError):
        gurvits_bound(c8, Fraction(-1))


def test_independent_partition_upper(c8, k33):
    from regcount import independence_polynomial

    z8 = eval_partition(independence_polynomial(c8), Fraction(1))
    assert z8 == 47
    gen = independent_partition_upper(BoundParams(n=8, d=2, lam=Fraction(1)), bipartite=False)
    assert abs(gen.value - 8) < TIGHT
    assert gen.admits(log2(Fraction(z8)))
    bip = independent_partition_upper(BoundParams(n=8, d=2, lam=Fraction(1)), bipartite=True)
    assert abs(bip.value - 2 * log2(Fraction(7))) < TIGHT
    assert z8**2 <= 7**4
    assert bip.admits(log2(Fraction(z8)))
    # K_{3,3} at lambda = 1: z = 1 + 6 + 6 + 2 = 15 and the bipartite form
    # is exactly log2(2 * 2^3 - 1) = log2 15, equality on the block
    z33 = eval_partition(independence_polynomial(k33), Fraction(1))
    assert z33 == 15
    bip33 = independent_partition_upper(BoundParams(n=6, d=3, lam=Fraction(1)), bipartite=True)
    assert abs(bip33.value - log2(Fraction(15))) < TIGHT
    with pytest.raises(DomainError):
        independent_partition_upper(BoundParams(n=8, d=0), bipartite=False)


def test_occupancy_lambda():
    assert occupancy_lambda(8, 2) == 1
    assert occupancy_lambda(12, 2) == Fraction(1, 2)
    assert occupancy_lambda(8, 0) == 0
    with pytest.raises(DomainError):
        occupancy_lambda(8, 4)


def test_independent_upper_pm_exact(c8):
    from regcount import independence_polynomial

    assert independent_upper_pm_exact(8, 2) == 24
    assert independence_polynomial(c8).coefficient(2) == 20
    assert independent_upper_pm_exact(8, 0) == 1
    assert independent_upper_pm_exact(8, 4) == 2**4
    with pytest.raises(DomainError):
        independent_upper_pm_exact(7, 2)
    with pytest.raises(DomainError):
        independent_upper_pm_exact(8, 5)


def test_independent_count_upper_variants():
    pm = independent_count_upper(BoundParams(n=8, d=2, size=2), PERFECT_MATCHING)
    assert abs(pm.value - log2(Fraction(24))) < TIGHT
    gen = independent_count_upper(BoundParams(n=8, d=2, size=2), GENERAL)
    assert abs(gen.value - 8) < TIGHT
    bip = independent_count_upper(BoundParams(n=8, d=2, size=2), BIPARTITE)
    want = 4 * (1 + 0.5 - math.log2(math.e) / 4 * 0.25)
    assert abs(float(bip.value) - want) < 1e-12
    for b in (gen, bip, pm):
        assert b.admits(log2(Fraction(20)))
    with pytest.raises(DomainError):
        independent_count_upper(BoundParams(n=8, d=2, size=2), "typo")
    with pytest.raises(DomainError):
        independent_count_upper(BoundParams(n=8, d=0, size=2), GENERAL)


def test_union_small_t_exact_is_a_true_count():
    from regcount import union_independent_count, union_params

    assert union_small_t_exact(8, 2, 1) == 8
    assert union_small_t_exact(8, 2, 2) == 16
    assert union_small_t_exact(12, 3, 2) == 36
    # scattered sets are a subfamily, so the closed form never exceeds the count
    for n, d in ((8, 2), (12, 3), (12, 2)):
        p = union_params(n, d)
        for t in range(p.copies + 1):
            assert union_small_t_exact(n, d, t) <= union_independent_count(p, t)
    # at t = 1 every size-1 set is scattered
    assert union_small_t_exact(12, 2, 1) == union_independent_count(union_params(12, 2), 1)
    with pytest.raises(DomainError):
        union_small_t_exact(8, 2, 3)
    with pytest.raises(DivisibilityError):
        union_small_t_exact(10, 4, 1)


def test_union_independent_lower_variants():
    markov = union_independent_lower(BoundParams(n=8, d=2, size=2, c=Fraction(2)), MARKOV)
    assert markov.direction == LOWER
    assert abs(markov.value - log2(Fraction(6))) < TIGHT
    assert log2(Fraction(20)) >= markov.value
    small = union_independent_lower(BoundParams(n=8, d=2, size=2), SMALL_T)
    # log-product form gives exactly log2 12, weaker than the exact scattered
    # count 16 because it rounds each conditional factor down
    assert abs(small.value - log2(Fraction(12))) < TIGHT
    assert union_small_t_exact(8, 2, 2) == 16
    with pytest.raises(DomainError):
        union_independent_lower(BoundParams(n=8, d=2, size=2, c=Fraction(1)), MARKOV)
    with pytest.raises(DomainError):
        union_independent_lower(BoundParams(n=8, d=2, size=3), SMALL_T)
    with pytest.raises(DomainError):
        union_independent_lower(BoundParams(n=8, d=2, size=2), "typo")


def oracle_mean_missed_blocks(n, d, t):
    half = n // 2
    blocks = [set(range(i * d, (i + 1) * d)) for i in range(half // d)]
    total = 0
    subsets = 0
    for chosen in combinations(range(half), t):
        chosen = set(chosen)
        subsets += 1
        total += sum(1 for b in blocks if not (b & chosen))
    return Fraction(total, subsets)


def test_block_miss_stats_exact_and_bounded():
    for n, d, t in ((8, 2, 2), (12, 2, 3), (12, 3, 2), (16, 4, 3)):
        mu, bound = block_miss_stats(BoundParams(n=n, d=d, size=t))
        assert isinstance(mu, Fraction) and isinstance(bound, Fraction)
        assert mu == oracle_mean_missed_blocks(n, d, t)
        assert mu <= bound
    with pytest.raises(DivisibilityError):
        block_miss_stats(BoundParams(n=10, d=4, size=1))
