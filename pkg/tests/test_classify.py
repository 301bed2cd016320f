from __future__ import annotations

import dataclasses
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latinquot.classify import (
    NOT_QC,
    QUASIPRIMITIVE,
    QUOTIENT_COMPLETE,
    VContext,
    canonical_specs,
    complete_quotients,
    induced_linear_action,
    lsg_arc_transitivity,
    lsg_stabilizer_generators,
    normal_subgroup_crosscheck,
    orbit_span,
    scan,
    table3_predicate,
    theorem_1_1_condition,
    thm_1_2_ok,
    verify_thm_1_1,
    verify_thm_1_2,
)
from latinquot.errors import BoundExceeded, NotLinear
from latinquot.ffield import make_field, trace
from latinquot.graphs import lsg
from latinquot.groups import (
    Autoparatopism,
    VectorSpace,
    build_G0,
    canonical_spec,
    close_group,
    make_x_y,
    small_group_catalog,
)

CATALOG = small_group_catalog()


def _mats(spec):
    G = build_G0(spec, close=False)
    return [induced_linear_action(z, spec.U) for z in G.generators]


def test_orbit_span_examples():
    s3 = canonical_spec(3, 1, 1, 1)
    ctx = VContext(s3.U)
    W = orbit_span(ctx.code(1, 1), _mats(s3), ctx)
    assert (W.tag, W.c) == ("Vc", 1)
    s7 = canonical_spec(7, 1, 1, 1)
    ctx7 = VContext(s7.U)
    W7 = orbit_span(ctx7.code(1, 2), _mats(s7), ctx7)
    assert (W7.tag, W7.c) == ("Vc", 2)
    perms = [tuple(int(v) for v in ctx7.image_codes(M)) for M in _mats(s7)]
    from latinquot.groups import orbit

    # the orbit lies in the line V_2, which has only 6 nonzero vectors
    assert orbit(ctx7.code(1, 2), perms) == {ctx7.code(a, 2 * a % 7) for a in range(1, 7)}


def test_induced_action_of_diagonal_is_block_diagonal():
    f = make_field(3, 2)
    U = VectorSpace(f, 1)
    sigma = tuple(f.mul(f.primitive, u) for u in range(9))
    M = induced_linear_action(Autoparatopism.diagonal(sigma), U)
    assert M.shape == (4, 4)
    assert not M[:2, 2:].any() and not M[2:, :2].any()
    assert np.array_equal(M[:2, :2], M[2:, 2:])


def test_induced_action_of_x_matches_vertex_permutation():
    U = VectorSpace(make_field(5), 1)
    x, y = make_x_y(U)
    ctx = VContext(U)
    for z in (x, y, x * y):
        M = induced_linear_action(z, U)
        vp = z.vertex_permutation(U)
        assert np.array_equal(ctx.image_codes(M), vp)


def test_nonlinear_element_rejected():
    U = VectorSpace(make_field(5), 1)
    with pytest.raises(NotLinear):
        induced_linear_action(Autoparatopism.diagonal((0, 2, 1, 3, 4)), U)


def test_table3_examples():
    assert set(table3_predicate(canonical_spec(3, 1, 1, 1)).members) == {1}
    assert set(table3_predicate(canonical_spec(7, 1, 1, 1, l=1)).members) == {2, 4}
    f8 = make_field(2, 3)
    tz = {b for b in range(1, 8) if trace(f8, b).value == 0}
    got = set(table3_predicate(canonical_spec(2, 3, 1, 2, i=1, l=3)).members)
    assert len(got) == 3 and got == tz  # c = b^(p^m - 1) = b with m = 1


@pytest.mark.parametrize("args,k,labels,order", [
    ((3, 1, 1, 1, {}), 1, {"V_1"}, 3),
    ((7, 1, 1, 1, {"l": 1}), 2, {"V_2", "V_4"}, 7),
    ((2, 3, 1, 2, {"i": 1, "l": 3}), 3, None, 8),
])
def test_main_cases(args, k, labels, order):
    p, d, n, line, kw = args
    r = complete_quotients(p, d, n, canonical_spec(p, d, n, line, **kw))
    assert r.outcome == QUOTIENT_COMPLETE and r.k == k
    if labels:
        assert {w.label for w in r.witnesses} == labels
    assert r.quotient_orders == [order] * k
    assert r.condition("table3 matches orbits")
    assert r.condition("V_0 is a transversal") and r.condition("quotient orders = p^d")
    assert r.condition("quotient diameter <= 2")


def test_main_case_p7_witness_pair_is_c_and_c_inverse():
    f = make_field(7)
    r = complete_quotients(7, 1, 1)
    cs = [w.c for w in r.witnesses]
    assert f.mul(cs[0], cs[1]) == 1
    assert all(f.pow(c, 3) == 1 and c != 1 for c in cs)


def test_quasiprimitive_cases():
    assert complete_quotients(5, 1, 1).outcome == QUASIPRIMITIVE
    assert complete_quotients(2, 1, 1).outcome == QUASIPRIMITIVE


def test_excluded_lines_are_logged():
    r = complete_quotients(7, 1, 1)
    labels = {lab for lab, _ in r.excluded_log}
    assert labels <= {"V_inf", "V_0", "V_6"}


def test_q_independent_orbits_span_V():
    for p, d in ((2, 2), (3, 2), (2, 4)):
        spec = canonical_spec(p, d, 2, 1)
        r = complete_quotients(p, d, 2, spec)
        assert r.condition("q-independent orbits span V")


SPECS = [s for p, d in ((2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 4), (5, 2))
         for s in canonical_specs(p, d)]
_REPORTS = {}


def report_for(spec):
    if spec.label not in _REPORTS:
        _REPORTS[spec.label] = complete_quotients(spec.U.p, spec.U.dim, spec.U.n, spec)
    return _REPORTS[spec.label]


@settings(max_examples=25)
@given(st.sampled_from(SPECS))
def test_table3_agrees_with_direct_orbits(spec):
    r = report_for(spec)
    assert r.condition("table3 matches orbits")
    assert r.condition("spans invariant")
    assert r.condition("quotient diameter <= 2")
    if r.quotient_complete:
        assert thm_1_2_ok(r.p, r.d, r.k, r.quotient_orders)


def test_table3_members_are_witness_lines():
    for spec in SPECS:
        r = report_for(spec)
        if r.quotient_complete and spec.U.n == 1:
            vc = {w.c for w in r.witnesses if w.tag == "Vc"}
            assert vc <= set(r.table3.members)


def test_theorem_1_1_examples():
    assert not verify_thm_1_1(2, 1).exists_qc
    r22 = verify_thm_1_1(2, 2)
    assert r22.exists_qc and r22.witness.line == 1 and r22.witness.ell == 2
    r23 = verify_thm_1_1(2, 3)
    assert r23.exists_qc and r23.witness.line == 2 and (r23.witness.i, r23.witness.ell) == (1, 3)
    assert theorem_1_1_condition(5, 2) and not theorem_1_1_condition(5, 1)


def test_theorem_1_2_negative_control():
    r3 = complete_quotients(3, 1, 1)
    r7 = complete_quotients(7, 1, 1)
    assert verify_thm_1_2([r3, r7])
    fake = dataclasses.replace(r3, witnesses=r3.witnesses * 2, quotient_orders=[3, 3])
    assert fake.k == 2
    assert not verify_thm_1_2([fake])


def test_scan_is_deterministic():
    a = [r.to_dict() for r in scan(3, 2)]
    b = [r.to_dict() for r in scan(3, 2)]
    assert a == b
    assert all(d["runtime_ms"] is None for d in a)
    assert any(d["p"] == 3 and d["k"] == 1 for d in a)


def test_graph_bound():
    with pytest.raises(BoundExceeded):
        complete_quotients(11, 2, 1, graph_bound=10**4)


@pytest.mark.parametrize("p,d,line", [(3, 1, 1), (3, 1, 3), (3, 1, 4), (2, 2, 1), (2, 1, 1)])
def test_normal_subgroup_crosscheck(p, d, line):
    cc = normal_subgroup_crosscheck(canonical_spec(p, d, 1, line))
    assert cc.agrees


# -- arc-transitivity ------------------------------------------------------------


def brute_force_stabilizer(H):
    """Every autoparatopism of the Cayley table of H fixing (e, e, e), by exhaustion."""
    n, e = H.order, H.identity
    triples = {(a, b, H.mul(a, b)) for a in range(n) for b in range(n)}
    others = [v for v in range(n) if v != e]
    fixing = []
    for img in itertools.permutations(others):
        s = list(range(n))
        for v, w in zip(others, img):
            s[v] = w
        fixing.append(tuple(s))
    out = []
    for gamma in itertools.permutations(range(3)):
        for s0, s1, s2 in itertools.product(fixing, repeat=3):
            z = Autoparatopism((s0, s1, s2), gamma)
            if all(z.apply(t) in triples for t in triples):
                out.append(z)
    return out


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "C2^2"])
def test_stabilizer_generators_give_full_stabilizer(name):
    H = CATALOG[name]
    full = brute_force_stabilizer(H)
    assert len(full) == 6 * len(H.automorphisms())
    ours = close_group([tuple(int(v) for v in p) for p in lsg_stabilizer_generators(H)])
    assert {tuple(int(v) for v in z.vertex_permutation(H)) for z in full} == set(ours)
    # arc-transitivity decided from the exhaustive group
    g = lsg(H)
    base = H.identity * (1 + H.order)
    orbit_nb = {int(z.vertex_permutation(H)[g.neighbors(base)[0]]) for z in full}
    assert (orbit_nb == set(g.neighbors(base))) == lsg_arc_transitivity(H).arc_transitive


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_arc_transitive_iff_elementary_abelian(name):
    r = lsg_arc_transitivity(CATALOG[name], name)
    assert r.vertex_transitive
    assert r.arc_transitive == CATALOG[name].is_elementary_abelian
