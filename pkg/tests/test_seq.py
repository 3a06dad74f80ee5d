"""Tests for sequence evaluation: iterative, fast doubling, negative indices."""

from fractions import Fraction

import pytest

from recsums import seq
from recsums.qfield import (RecurrenceSpec, binet_coeffs, rationalize, roots)


def test_fibonacci_term():
    assert seq.term(seq.fibonacci(), 10) == 55


def test_lucas_preset_initial_terms():
    lucas = seq.lucas()
    assert [seq.term(lucas, n) for n in range(5)] == [2, 1, 3, 4, 7]


def test_companion_kind_matches_lucas_numbers():
    v = seq.companion(RecurrenceSpec(1, 1, 0, 1))
    assert [seq.term(v, n) for n in range(5)] == [2, 1, 3, 4, 7]


def test_negative_index_backward_recurrence():
    fib = seq.fibonacci()
    assert seq.term(fib, -3) == 2
    # F_{-n} = (-1)^{n+1} F_n
    for n in range(1, 12):
        assert seq.term(fib, -n) == (-1) ** (n + 1) * seq.term(fib, n)


def test_pell_terms():
    pell = seq.pell()
    assert [seq.term(pell, n) for n in range(1, 6)] == [1, 2, 5, 12, 29]


def test_generalized_pell_indexing():
    h = seq.generalized_pell(1, 3)
    assert [seq.term(h, n) for n in range(5)] == [1, 1, 3, 7, 17]
    assert seq.pell_q().spec == h.spec


def test_preset_parsing():
    assert seq.preset("fibonacci").spec == RecurrenceSpec(1, 1, 0, 1)
    assert seq.preset("gen-pell:1,2").spec == RecurrenceSpec(2, 1, 0, 1)
    with pytest.raises(ValueError):
        seq.preset("golden")


def test_term_fast_examples():
    fib = seq.fibonacci()
    assert seq.term_fast(fib, 20) == 6765
    assert seq.term_fast(fib, 20) == seq.term(fib, 20)
    assert seq.term_fast(fib, 0) == 0
    f16 = seq.term_fast(fib, 16)
    assert f16 == 987
    assert f16 == seq.term_fast(fib, 8) * seq.term_fast(seq.lucas(), 8)


def test_term_fast_rejects_negative():
    with pytest.raises(ValueError):
        seq.term_fast(seq.fibonacci(), -1)


FAST_GRID = [
    RecurrenceSpec(1, 1, 0, 1),
    RecurrenceSpec(1, 2, 0, 1),
    RecurrenceSpec(3, -2, 2, 1),
    RecurrenceSpec(2, 3, Fraction(1, 2), Fraction(1, 3)),
]


@pytest.mark.parametrize("spec", FAST_GRID)
def test_term_fast_agrees_with_iterative_to_2000(spec):
    handle = seq.SequenceHandle(spec)
    values = seq.terms(handle, 2001)
    for n in range(2001):
        assert seq.term_fast(handle, n) == values[n]
    v_handle = seq.companion(spec)
    v_values = seq.terms(v_handle, 201)
    for n in range(201):
        assert seq.term_fast(v_handle, n) == v_values[n]


def test_power_term():
    fib = seq.fibonacci()
    assert seq.power_term(fib, 5, 3) == 125
    assert seq.power_term(fib, 7, 1) == seq.term(fib, 7)
    assert seq.power_term(fib, 4, 4) == 81
    with pytest.raises(ValueError):
        seq.power_term(fib, 3, 0)


@pytest.mark.parametrize("spec", FAST_GRID)
def test_companion_identity_rationalizes(spec):
    alpha, beta = roots(spec)
    v = seq.companion(spec)
    for n in range(65):
        assert rationalize(alpha**n + beta**n) == seq.term(v, n)


@pytest.mark.parametrize("spec", FAST_GRID)
def test_backward_forward_consistency(spec):
    handle = seq.SequenceHandle(spec)
    for n in range(1, 20):
        older = seq.term(handle, -n - 1)
        old = seq.term(handle, -n)
        assert spec.a * old + spec.b * older == seq.term(handle, -n + 1)


def test_binet_check_on_rational_initial_values():
    spec = RecurrenceSpec(1, 1, Fraction(1, 2), Fraction(1, 3))
    alpha, beta = roots(spec)
    a_coef, b_coef = binet_coeffs(spec)
    handle = seq.SequenceHandle(spec)
    for n, value in enumerate(seq.terms(handle, 30)):
        assert rationalize(a_coef * alpha**n - b_coef * beta**n) == value
