from __future__ import annotations

from math import gcd

import pytest
from hypothesis import given, strategies as st

from latinquot.errors import ArgumentOutOfRange
from latinquot.numth import (
    CLOSED_FORMS,
    Part,
    check_grid,
    gcd_minus_plus,
    gcd_minus_tri,
    gcd_minus_tri_as_stated,
    gcd_plus_tri,
    operands,
    oracle,
)


@pytest.mark.parametrize("fn,args,want", [
    (gcd_minus_plus, (2, 4, 2), 5), (gcd_minus_plus, (3, 3, 1), 2), (gcd_minus_plus, (2, 3, 3), 1),
    (gcd_minus_tri, (2, 3, 1), 7), (gcd_minus_tri, (2, 6, 2), 21), (gcd_minus_tri, (7, 2, 1), 3),
    (gcd_plus_tri, (2, 6, 4), 13), (gcd_plus_tri, (2, 3, 2), 3), (gcd_plus_tri, (2, 3, 1), 1),
])
def test_examples(fn, args, want):
    assert fn(*args).value == want


def test_operands():
    assert operands(Part.MinusPlus, 2, 4, 2) == (15, 5)
    assert operands(Part.MinusTri, 2, 6, 2) == (63, 21)
    assert operands(Part.PlusTri, 2, 6, 4) == (65, 273)
    assert oracle(Part.PlusTri, 2, 6, 4) == gcd(65, 273)


def test_grid_matches_oracle():
    res = check_grid(9, 12, 12)
    assert res.checked == 8 * 12 * 12 * 3
    assert res.failures == []
    assert res.ok


def test_stated_case_condition_is_refuted():
    res = check_grid(9, 12, 12)
    bad = {(a, r, s) for a, r, s, _, _ in res.stated_condition_mismatches}
    assert (2, 3, 1) in bad and (2, 6, 2) in bad
    assert gcd_minus_tri_as_stated(2, 3, 1) != oracle(Part.MinusTri, 2, 3, 1)


@given(st.integers(2, 20), st.integers(1, 14), st.integers(1, 14))
def test_closed_forms_random(a, r, s):
    for part, fn in CLOSED_FORMS.items():
        assert fn(a, r, s).value == oracle(part, a, r, s)


@given(st.integers(2, 20), st.integers(1, 14), st.integers(1, 14))
def test_value_divides_both_operands(a, r, s):
    for part, fn in CLOSED_FORMS.items():
        x, y = operands(part, a, r, s)
        v = fn(a, r, s).value
        assert x % v == 0 and y % v == 0


def test_case_labels_present():
    assert gcd_minus_plus(2, 4, 2).branch
    assert gcd_plus_tri(2, 3, 1).branch


@pytest.mark.parametrize("args", [(1, 2, 3), (2, 0, 1), (2, 1, 0)])
def test_out_of_range(args):
    with pytest.raises(ArgumentOutOfRange):
        gcd_minus_plus(*args)


def test_operand_size_limit():
    with pytest.raises(ArgumentOutOfRange):
        oracle(Part.MinusTri, 1000, 5, 40)
