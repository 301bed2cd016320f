from __future__ import annotations

from math import gcd

import pytest

from latinquot.csets import (
    Method,
    c1,
    c1_intersect_c2,
    c1_intersect_fix,
    c2,
    grid,
    order3_codes,
    trace_zero_codes,
)
from latinquot.ffield import frobenius_order, make_field


@pytest.mark.parametrize("args,want", [((7, 1, 1), {2, 4}), ((3, 1, 1), {1})])
def test_c1_examples(args, want):
    assert set(c1(*args).codes) == want


def test_c1_cardinality_gf8():
    assert len(c1(2, 3, 1)) == 3 == 2**1 + 1


def test_c2_examples():
    assert set(c2(7, 1, 1).codes) == {5}
    assert c2(2, 1, 1).codes == []
    assert len(c2(3, 2, 1)) == 3


def test_intersections():
    assert set(c1_intersect_fix(7, 1, 1, 1).codes) == {2, 4}
    assert c1_intersect_fix(2, 3, 1, 1).codes == []
    assert set(c1_intersect_fix(3, 1, 1, 1).codes) == {1}
    f4 = make_field(2, 2)
    assert set(c1_intersect_c2(2, 2, 2, 1).codes) == set(order3_codes(f4).tolist())
    assert c1_intersect_c2(7, 1, 1, 1).codes == []
    for d in (1, 2, 3):
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                assert set(c1_intersect_c2(3, d, i, j).codes) == {1}


@pytest.mark.parametrize("p,d,i", [(2, 3, 1), (2, 6, 2), (5, 2, 1), (3, 3, 1), (7, 2, 2), (13, 1, 1)])
def test_brute_force_equals_closed_form(p, d, i):
    for fn in (c1, c2):
        bf = fn(p, d, i, Method.BruteForce)
        cf = fn(p, d, i, Method.ClosedForm)
        assert set(bf.codes) == set(cf.codes)


def test_c1_defining_equation():
    # c in C_1 iff c^(tau^i) = -c^-1 (c + 1), checked directly
    for p, d in ((2, 3), (5, 2), (7, 1), (3, 2)):
        f = make_field(p, d)
        for i in range(1, d + 1):
            want = {c for c in range(1, f.order) if c != f.neg(1)
                    and f.frob(c, i) == f.neg(f.mul(f.inv(c), f.add(c, 1)))}
            assert set(c1(p, d, i).codes) == want


def test_trace_zero_codes_gf8():
    f = make_field(2, 3)
    tz = set(trace_zero_codes(f, 1).tolist()) - {0}
    assert len(tz) == 3


def test_full_grid():
    rows = grid((2, 3, 5, 7, 11, 13), 6, 10**4)
    assert rows
    assert all(r.agree for r in rows)
    assert all(r.cardinality_ok for r in rows)
    for r in rows:
        f = make_field(r.p, r.d, bound=10**4)
        o = frobenius_order(f, r.i)
        if o % 3 == 0:
            assert r.c1_size == r.p ** gcd(r.d, r.i) + 1
