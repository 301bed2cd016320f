from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from latinquot.errors import GoursatViolation, NotInStabilizer, NotTransitive, SpecLineMismatch
from latinquot.ffield import make_field
from latinquot.groups import (
    Autoparatopism,
    FiniteGroup,
    SemilinearMap,
    StabilizerSpec,
    Translation,
    VectorSpace,
    alpha_of_permutation,
    build_G0,
    canonical_spec,
    check_spec,
    close_group,
    compose,
    cycle_string,
    gl_generators,
    is_transitive_on_nonzero,
    make_x_y,
    orbit,
    perm_identity,
    perm_inverse,
    perm_order,
    pi_theta_alpha,
    small_group_catalog,
    square_det_generators,
    sym3_elements,
)

CATALOG = small_group_catalog()
AUT_ORDERS = {"C2": 1, "C3": 2, "C4": 2, "C2^2": 6, "C5": 4, "C6": 2, "Sym3": 6, "C7": 6, "C8": 4,
              "C2xC4": 8, "C2^3": 168, "D4": 8, "Q8": 24, "C9": 6, "C3^2": 48}


def test_permutation_helpers():
    p, q = (1, 2, 0), (0, 2, 1)
    assert compose(p, q) == (2, 1, 0)  # p first
    assert compose(p, perm_inverse(p)) == perm_identity(3)
    assert perm_order((1, 0, 3, 4, 2)) == 6
    assert cycle_string((1, 2, 0)) == "(1 2 3)"
    assert cycle_string((0, 1)) == "()"


def test_catalog_orders_and_types():
    assert [H.order for H in CATALOG.values()] == [2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8, 9, 9]
    ea = {k for k, H in CATALOG.items() if H.is_elementary_abelian}
    assert ea == {"C2", "C3", "C2^2", "C5", "C7", "C2^3", "C3^2"}
    assert not CATALOG["D4"].is_abelian and not CATALOG["Q8"].is_abelian
    # D4 and Q8 are told apart by their number of involutions
    inv = lambda H: sum(1 for a in H.elements() if H.element_order(a) == 2)
    assert inv(CATALOG["D4"]) == 5 and inv(CATALOG["Q8"]) == 1


@pytest.mark.parametrize("name", sorted(AUT_ORDERS))
def test_automorphism_counts(name):
    H = CATALOG[name]
    autos = H.automorphisms()
    assert len(autos) == AUT_ORDERS[name]
    for phi in autos[:10]:
        for a in H.elements():
            for b in H.elements():
                assert phi[H.mul(a, b)] == H.mul(phi[a], phi[b])
    assert len(close_group(H.automorphism_generators(), identity=perm_identity(H.order))) == len(autos)


def test_group_axioms_of_tables():
    for H in CATALOG.values():
        t = H.table
        n = H.order
        assert all(sorted(row) == list(range(n)) for row in t.tolist())
        assert all(sorted(col) == list(range(n)) for col in t.T.tolist())
        e = H.identity
        assert all(H.mul(a, H.inv(a)) == e for a in H.elements())
        a, b, c = 1 % n, 2 % n, (n - 1)
        assert H.mul(H.mul(a, b), c) == H.mul(a, H.mul(b, c))


def _additive(q):
    f = make_field(*{2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}[q])
    return VectorSpace(f, 1)


def test_x_y_table1_images():
    U = _additive(5)
    x, y = make_x_y(U)
    for a in range(5):
        for b in range(5):
            t = (a, b, (a + b) % 5)
            assert x.apply(t) == ((-a - b) % 5, a, (-b) % 5)
            assert y.apply(t) == ((a + b) % 5, (-b) % 5, a)
    assert x.apply((1, 2, 3)) == (2, 1, 3)
    assert y.apply((1, 2, 3)) == (3, 3, 1)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_x_y_relations(name):
    H = CATALOG[name]
    x, y = make_x_y(H)
    assert (x ** 3).is_identity
    assert (y ** 2).is_identity
    assert ((x * y) ** 2).is_identity
    assert len(close_group([x, y])) == 6
    assert set(sym3_elements(H)) == {(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)}
    assert x.preserves(H) and y.preserves(H)
    assert pi_theta_alpha(x, H).theta_string == "(1 2 3)"


@st.composite
def two_autoparatopisms(draw):
    name = draw(st.sampled_from(sorted(CATALOG)))
    H = CATALOG[name]
    autos = H.automorphisms()
    els = list(close_group(list(make_x_y(H))))
    def one():
        d = Autoparatopism.diagonal(draw(st.sampled_from(autos)))
        return d * draw(st.sampled_from(els))
    a, b = one(), one()
    u, v = draw(st.integers(0, H.order - 1)), draw(st.integers(0, H.order - 1))
    return H, a, b, (u, v, H.mul(u, v))


@given(two_autoparatopisms())
def test_composition_matches_action(data):
    H, a, b, t = data
    assert (a * b).apply(t) == b.apply(a.apply(t))
    assert a.inverse().apply(a.apply(t)) == t
    assert (a * b).preserves(H)
    va, vb, vab = a.vertex_permutation(H), b.vertex_permutation(H), (a * b).vertex_permutation(H)
    assert tuple(vab) == compose(va, vb)


def test_pi_theta_alpha():
    H = CATALOG["C7"]
    sigma = (0, 3, 6, 2, 5, 1, 4)  # multiplication by 3
    d = Autoparatopism.diagonal(sigma)
    assert pi_theta_alpha(d, H).pi == sigma
    U = VectorSpace(make_field(2, 2), 1)
    z = SemilinearMap.frobenius(U.field, 1, 1)
    assert pi_theta_alpha(z, U=U).alpha == 1
    f4 = make_field(2, 2)
    assert pi_theta_alpha(SemilinearMap(((f4.primitive,),), 1, f4), U=U).alpha == 1
    with pytest.raises(NotInStabilizer):
        pi_theta_alpha(Translation(1, 0).autoparatopism(H), H)


@pytest.mark.parametrize("name", [k for k, H in CATALOG.items() if H.is_abelian])
def test_conjugated_translation_is_translation_by_image(name):
    H = CATALOG[name]
    n = H.order
    x, y = make_x_y(H)
    zs = [x, y, x * y] + [Autoparatopism.diagonal(a) for a in H.automorphism_generators()]
    for z in zs:
        zv = z.vertex_permutation(H)
        for a in H.elements():
            for b in H.elements():
                t = Translation(a, b).autoparatopism(H)
                conj = z.inverse() * t * z
                img = int(zv[a + n * b])
                tt = Translation(img % n, img // n).autoparatopism(H)
                assert conj == tt


def test_translation_apply():
    H = CATALOG["C5"]
    T = Translation(2, 3)
    assert T.apply((1, 1, 2), H) == (3, 4, 2)
    assert T.autoparatopism(H).apply((1, 1, 2)) == (3, 4, 2)
    with pytest.raises(ValueError):
        Translation(1, 1).autoparatopism(CATALOG["Sym3"])


def test_vector_space_codes():
    f = make_field(3, 1)
    U = VectorSpace(f, 2)
    assert U.order == 9 and U.dim == 2
    for c in range(9):
        assert U.from_coords(U.coords(c)) == c
    assert U.add(U.from_coords((1, 2)), U.from_coords((2, 2))) == U.from_coords((0, 1))
    assert U.scale(2, U.from_coords((1, 2))) == U.from_coords((2, 1))


def test_semilinear_worked_example():
    f = make_field(2, 2)
    w = f.primitive
    A = SemilinearMap(((w,),), 1, f)
    B = SemilinearMap(((w,),), 0, f)
    for u in range(4):
        assert (A * B).apply((u,)) == B.apply(A.apply((u,)))
        assert (A * B).apply((u,)) == (f.mul(f.pow(u, 2), f.pow(w, 3)),)


@st.composite
def semilinear_pair(draw):
    p, e, n = draw(st.sampled_from([(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 1, 2), (3, 1, 2), (2, 2, 2)]))
    f = make_field(p, e)
    U = VectorSpace(f, n)

    def one():
        m = tuple(tuple(draw(st.integers(0, f.order - 1)) for _ in range(n)) for _ in range(n))
        a = draw(st.integers(0, e - 1))
        try:
            return SemilinearMap(m, a, f)
        except ValueError:  # singular
            return SemilinearMap.scalar(f, 1, n, a)
    return U, one(), one(), draw(st.integers(0, U.order - 1))


@given(semilinear_pair())
def test_semilinear_product_and_inverse(data):
    U, A, B, u = data
    v = U.coords(u)
    assert (A * B).apply(v) == B.apply(A.apply(v))
    assert A.inverse().apply(A.apply(v)) == tuple(v)
    assert compose(A.perm_tuple(U), B.perm_tuple(U)) == (A * B).perm_tuple(U)
    assert SemilinearMap.from_permutation(A.perm_tuple(U), U) == A
    assert alpha_of_permutation(A.perm_tuple(U), U) == A.auto


def test_close_and_orbit_examples():
    f7 = make_field(7)
    U = VectorSpace(f7, 1)
    scalars = close_group([SemilinearMap.scalar(f7, f7.primitive, 1)])
    assert len(scalars) == 6
    perms = [z.perm_tuple(U) for z in scalars]
    assert orbit(0, perms) == {0}
    assert orbit(1, perms) == set(range(1, 7))
    assert close_group([perm_identity(4)]) == [perm_identity(4)]
    f5 = make_field(5)
    U2 = VectorSpace(f5, 2)
    w = f5.primitive
    gens = [SemilinearMap(((f5.mul(w, w), 0), (0, 1)), 0, f5), SemilinearMap(((w, 0), (0, w)), 0, f5)]
    assert len(orbit(U2.from_coords((1, 1)), [g.perm_tuple(U2) for g in gens])) == 8


def test_transitivity_examples():
    f7 = make_field(7)
    U7 = VectorSpace(f7, 1)
    assert is_transitive_on_nonzero(gl_generators(f7, 1), U7)
    assert not is_transitive_on_nonzero(square_det_generators(f7, 1), U7)
    f8 = make_field(2, 3)
    U8 = VectorSpace(f8, 1)
    assert is_transitive_on_nonzero(gl_generators(f8, 1) + [SemilinearMap.frobenius(f8, 1)], U8)


def test_build_G0_examples():
    G = build_G0(canonical_spec(3, 1, 1, 1))
    assert G.order == 6
    s2 = canonical_spec(2, 3, 1, 2, i=1, l=3)
    _, checks = check_spec(s2)
    assert len(checks) >= 3 and all(ok for _, ok in checks)
    s4 = canonical_spec(7, 1, 1, 4)
    _, checks = check_spec(s4)
    assert all(ok for _, ok in checks)


def test_projection_of_G0_is_K_and_theta():
    spec = canonical_spec(3, 1, 1, 3)
    G = build_G0(spec)
    thetas = {z.gamma for z in G.elements}
    assert len(thetas) == 6
    spec1 = canonical_spec(3, 1, 1, 1)
    assert {z.gamma for z in build_G0(spec1).elements} == {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


def test_spec_errors():
    with pytest.raises(GoursatViolation):
        check_spec(canonical_spec(2, 3, 1, 2, i=1, l=1))
    f7 = make_field(7)
    U = VectorSpace(f7, 1)
    with pytest.raises(NotTransitive):
        check_spec(StabilizerSpec(1, U, [SemilinearMap.scalar(f7, 2, 1)]))
    with pytest.raises(SpecLineMismatch):
        canonical_spec(2, 2, 1, 4)
    with pytest.raises(SpecLineMismatch):
        check_spec(StabilizerSpec(2, U, gl_generators(f7, 1)))


def test_spec_derived_parameters():
    s = canonical_spec(2, 6, 1, 2, i=2, l=3)
    assert s.e == 6 and s.ell == 3 and s.i == 2 and s.m == 1
    assert canonical_spec(3, 4, 2, 1).e == 2
