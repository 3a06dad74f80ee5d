"""Tests for power generating functions: construction, oracle, paired forms."""

from fractions import Fraction

import pytest

from recsums import seq
from recsums.gfpow import (display_r1, display_r2, display_r3, gf_oracle,
                           gf_power, gf_power_claimed, paired_form)
from recsums.polyrat import Polynomial, PowerSeries, RationalFunction
from recsums.qfield import RecurrenceSpec

FIB = RecurrenceSpec(1, 1, 0, 1)
PELL = RecurrenceSpec(2, 1, 0, 1)

GRID_SPECS = [
    RecurrenceSpec(a, b, 0, 1)
    for a, b in ((1, 1), (2, 1), (1, 2), (3, -2), (1, -3))
]
GRID_SPECS_SHIFTED = [
    RecurrenceSpec(a, b, 2, 1)
    for a, b in ((1, 1), (2, 1), (1, 2), (3, -2), (1, -3))
]


def test_first_power_is_the_defining_rational_function():
    assert gf_power(FIB, 1) == RationalFunction(
        Polynomial([0, 1]), Polynomial([1, -1, -1])
    )
    assert gf_power(RecurrenceSpec(1, 2, 0, 1), 1) == RationalFunction(
        Polynomial([0, 1]), Polynomial([1, -1, -2])
    )


def test_square_power_matches_product_form():
    expected = RationalFunction(
        Polynomial([0, 1]) * Polynomial([1, -1]),
        Polynomial([1, 1]) * Polynomial([1, -3, 1]),
    )
    assert gf_power(FIB, 2) == expected


def test_oracle_examples():
    assert gf_oracle(FIB, 2, 6).coefficients == (0, 1, 1, 4, 9, 25)
    assert gf_oracle(FIB, 3, 5).coefficients == (0, 1, 1, 8, 27)
    zero = RecurrenceSpec(1, 1, 0, 0)
    assert gf_oracle(zero, 2, 5) == PowerSeries.of([Fraction(0)] * 5)


@pytest.mark.parametrize("spec", GRID_SPECS + GRID_SPECS_SHIFTED)
@pytest.mark.parametrize("r", range(1, 5))
def test_expansion_matches_oracle(spec, r):
    assert gf_power(spec, r).expand(32) == gf_oracle(spec, r, 32)


@pytest.mark.parametrize("spec", GRID_SPECS)
@pytest.mark.parametrize("r", range(1, 7))
def test_denominator_divides_the_pole_product(spec, r):
    from recsums.polyrat import descend
    from recsums.qfield import roots

    f = gf_power(spec, r)
    assert f.den.degree <= r + 1
    alpha, beta = roots(spec)
    product = Polynomial([1])
    for k in range(r + 1):
        product = product * Polynomial([1, -(alpha**k * beta ** (r - k))])
    assert descend(product) % f.den == Polynomial()


@pytest.mark.parametrize("spec", (FIB, PELL))
@pytest.mark.parametrize("r", range(1, 7))
def test_claimed_equals_ground_truth_for_b1(spec, r):
    assert gf_power_claimed(spec, r) == gf_power(spec, r)


@pytest.mark.parametrize("spec", GRID_SPECS + GRID_SPECS_SHIFTED)
@pytest.mark.parametrize("r", range(1, 7))
def test_general_paired_form_is_exact_for_all_b(spec, r):
    assert gf_power_claimed(spec, r) == gf_power(spec, r)


def test_printed_odd_denominator_only_holds_with_x_restored_b1():
    # restoring the missing x makes the printed odd form exact at b = 1 ...
    assert paired_form(FIB, 3, "b1") == gf_power(FIB, 3)
    # ... but the literal printed form (no x on the middle term) does not
    assert paired_form(FIB, 3, "printed") != gf_power(FIB, 3)
    # ... and the printed -x^2 is wrong once b != 1
    b2 = RecurrenceSpec(1, 2, 0, 1)
    assert paired_form(b2, 3, "b1") != gf_power(b2, 3)
    assert paired_form(b2, 3, "general") == gf_power(b2, 3)


def test_printed_even_form_is_a_b1_statement():
    assert paired_form(FIB, 2, "printed") == gf_power(FIB, 2)
    b2 = RecurrenceSpec(1, 2, 0, 1)
    assert paired_form(b2, 2, "printed") != gf_power(b2, 2)
    assert paired_form(b2, 2, "general") == gf_power(b2, 2)


def test_display_r1_carries_spurious_prefactor():
    assert display_r1(FIB, "printed") != gf_power(FIB, 1)
    assert display_r1(FIB, "unit-prefactor") == gf_power(FIB, 1)
    assert display_r1(PELL, "unit-prefactor") == gf_power(PELL, 1)


def test_display_r2_verbatim_at_b1():
    assert display_r2(FIB) == gf_power(FIB, 2)
    assert display_r2(PELL) == gf_power(PELL, 2)


def test_display_r3_printed_fails_even_for_fibonacci():
    assert display_r3(FIB, "printed") != gf_power(FIB, 3)
    assert display_r3(FIB, "proof-consistent") == gf_power(FIB, 3)
    assert display_r3(PELL, "proof-consistent") == gf_power(PELL, 3)


def test_display_r3_uses_the_printed_denominator_product():
    v_handle = seq.companion(FIB)
    v1, v3 = seq.term(v_handle, 1), seq.term(v_handle, 3)
    den = Polynomial([1, -v3, -1]) * Polynomial([1, v1, -1])
    f = display_r3(FIB, "proof-consistent")
    # canonical form keeps the full degree-4 denominator (no common factor)
    assert f.den == den
    assert gf_power(FIB, 3).den == den


def test_rejects_bad_power():
    with pytest.raises(ValueError):
        gf_power(FIB, 0)
    with pytest.raises(ValueError):
        gf_oracle(FIB, 1, 0)
