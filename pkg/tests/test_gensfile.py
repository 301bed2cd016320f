from __future__ import annotations

import pytest

from latinquot.ffield import make_field
from latinquot.gensfile import GensFileError, format_gens, parse_gens
from latinquot.groups import SemilinearMap, VectorSpace, canonical_spec, check_spec


def U(p, e, n=1):
    return VectorSpace(make_field(p, e), n)


def test_matrix_lines_round_trip():
    spec = canonical_spec(3, 2, 1, 4, l=1, j=1)
    from latinquot.gensfile import Generators

    text = format_gens(Generators(spec.K_gens, spec.g, spec.h))
    back = parse_gens(text, spec.U)
    assert back.K == spec.K_gens and back.h == spec.h and back.g is None


def test_perm_line():
    V = U(7, 1)
    gens = parse_gens("K perm " + " ".join(str(3 * u % 7) for u in range(7)) + "\n", V)
    assert gens.K == [SemilinearMap(((3,),), 0, V.field)]


def test_frobenius_perm_is_recovered():
    V = U(2, 3)
    f = V.field
    z = SemilinearMap(((f.primitive,),), 1, f)
    gens = parse_gens("g perm " + " ".join(map(str, z.perm_tuple(V))), V)
    assert gens.g == z


def test_comments_and_default_role():
    V = U(5, 1)
    gens = parse_gens("# scalars\nmatrix 5 1 1 2 frob 0  # generator\n\n", V)
    assert len(gens.K) == 1
    check_spec(canonical_spec(5, 1))


@pytest.mark.parametrize("text", [
    "matrix 5 1 1 7 frob 0",         # entry out of range
    "matrix 7 1 1 3 frob 0",         # wrong field
    "matrix 5 1 1 2",                # missing frob
    "perm 0 1 2",                    # wrong length
    "perm 0 2 1 3 4",                # not semilinear
    "rotate 1",                      # unknown kind
    "matrix 5 1 1 0 frob 0",         # singular
])
def test_errors(text):
    with pytest.raises(GensFileError):
        parse_gens(text, U(5, 1))
