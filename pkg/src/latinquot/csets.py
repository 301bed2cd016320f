"""The root sets C1(p,d,i) and C2(p,d,i) of GF(p^d) and their intersections.

    C1(p,d,i) = { c != 0 : c^(p^i) = -c^-1 (c+1) }
    C2(p,d,i) = { c != 0, -1 : c^(p^i) = -c (c+1)^-1 }

Every public function computes the set by a definitional scan over the
field and, independently, by the closed-form case analysis; the scan is
returned and the two are compared.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from .ffield import DEFAULT_BOUND, Field, FieldElement, fix_subfield_codes, frobenius_order, make_field


class Kind(enum.Enum):
    C1 = "C1"
    C2 = "C2"


class Method(enum.Enum):
    BruteForce = "brute-force"
    ClosedForm = "closed-form"
    Both = "both"


class ClosedFormMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class CSetResult:
    kind: Kind
    params: tuple[int, int, int]
    members: frozenset[FieldElement]
    method: Method
    case_label: str
    agrees: bool | None = None

    @property
    def codes(self) -> list[int]:
        return sorted(c.value for c in self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Intersection:
    """Result of an intersection; ``lemma`` is the case analysis, ``members`` the raw intersection."""

    params: tuple[int, ...]
    members: frozenset[FieldElement]
    lemma: frozenset[FieldElement]
    case_label: str
    agrees: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "agrees", self.members == self.lemma)

    @property
    def codes(self) -> list[int]:
        return sorted(c.value for c in self.members)


def _wrap(f: Field, codes) -> frozenset[FieldElement]:
    return frozenset(FieldElement(int(c), f) for c in codes)


def _nonzero(f: Field) -> np.ndarray:
    return np.arange(1, f.order, dtype=np.int64)


def order3_codes(f: Field) -> np.ndarray:
    """Elements c with c^2 + c + 1 = 0 and c != 1, i.e. of multiplicative order 3."""
    c = _nonzero(f)
    sq = f.mul_vec(c, c)
    mask = f.add_vec(f.add_vec(sq, c), np.ones_like(c)) == 0
    return c[mask & (c != 1)]


@lru_cache(maxsize=None)
def _brute_c1(f: Field, i: int) -> tuple[int, ...]:
    c = _nonzero(f)
    rhs = f.neg_vec(f.mul_vec(f.inv_vec(c), f.add_vec(c, np.ones_like(c))))
    return tuple(int(x) for x in c[f.frob_table(i)[c] == rhs])


@lru_cache(maxsize=None)
def _brute_c2(f: Field, i: int) -> tuple[int, ...]:
    c = _nonzero(f)
    c = c[c != f.neg(1)]
    rhs = f.neg_vec(f.mul_vec(c, f.inv_vec(f.add_vec(c, np.ones_like(c)))))
    return tuple(int(x) for x in c[f.frob_table(i)[c] == rhs])


def trace_zero_codes(f: Field, i: int) -> np.ndarray:
    """Nonzero b with b + b^(p^i) + b^(p^2i) = 0."""
    b = _nonzero(f)
    t1 = f.frob_table(i)[b]
    t2 = f.frob_table(2 * i)[b]
    return b[f.add_vec(f.add_vec(b, t1), t2) == 0]


def _closed_c1(f: Field, i: int) -> tuple[set[int], str]:
    p = f.p
    g = gcd(f.d, i)
    if frobenius_order(f, i) % 3:
        if p**g % 3 == 1:
            return set(int(x) for x in order3_codes(f)), "|tau^i| !=0 mod 3, p^(d,i) = 1 mod 3: |c| = 3"
        if p == 3:
            return {1}, "|tau^i| !=0 mod 3, p = 3: {1}"
        return set(), "|tau^i| !=0 mod 3: empty"
    b = trace_zero_codes(f, i)
    # b^(p^i - 1) = b^(p^i) * b^-1
    vals = f.mul_vec(f.frob_table(i)[b], f.inv_vec(b))
    return set(int(x) for x in vals), "3 | |tau^i|: b^(p^i-1) with b + b^(p^i) + b^(p^2i) = 0"


def _closed_c2(f: Field, i: int) -> tuple[set[int], str]:
    p = f.p
    if frobenius_order(f, i) % 2:
        if p == 2:
            return set(), "|tau^i| odd, p = 2: empty"
        return {f.neg(2 % p)}, "|tau^i| odd, p >= 3: {-2}"
    b = _nonzero(f)
    e = f.order - 1
    expo = (pow(p, i, e) + 1) % e if e > 1 else 0
    powered = np.array([f.pow(int(x), expo) for x in b], dtype=np.int64)
    b = b[(powered == 1) & (b != 1)]
    vals = f.add_vec(b, np.full_like(b, f.neg(1)))
    return set(int(x) for x in vals), "|tau^i| even: b - 1 with b^(p^i+1) = 1, b != 1"


def _get_field(p: int, d: int, bound: int) -> Field:
    return make_field(p, d, bound=bound)


def _result(kind, f, i, method, brute_fn, closed_fn) -> CSetResult:
    params = (f.p, f.d, i)
    if method is Method.BruteForce:
        return CSetResult(kind, params, _wrap(f, brute_fn(f, i)), method, "definition")
    closed, label = closed_fn(f, i)
    if method is Method.ClosedForm:
        return CSetResult(kind, params, _wrap(f, closed), method, label)
    brute = set(brute_fn(f, i))
    if brute != closed:
        raise ClosedFormMismatch(f"{kind.value}{params}: brute force {sorted(brute)} != closed form {sorted(closed)}")
    return CSetResult(kind, params, _wrap(f, brute), Method.BruteForce, label, agrees=True)


def c1(p: int, d: int, i: int, method: Method = Method.Both, bound: int = DEFAULT_BOUND) -> CSetResult:
    """C1(p,d,i). The default computes both ways, asserts agreement, returns the scan."""
    if i < 1:
        raise ValueError("i must be >= 1")
    return _result(Kind.C1, _get_field(p, d, bound), i, method, _brute_c1, _closed_c1)


def c2(p: int, d: int, i: int, method: Method = Method.Both, bound: int = DEFAULT_BOUND) -> CSetResult:
    """C2(p,d,i); c = -1 is excluded from the scan since c + 1 is not invertible."""
    if i < 1:
        raise ValueError("i must be >= 1")
    return _result(Kind.C2, _get_field(p, d, bound), i, method, _brute_c2, _closed_c2)


def c1_intersect_fix(p: int, d: int, i: int, j: int, bound: int = DEFAULT_BOUND) -> Intersection:
    """C1(p,d,i) intersected with Fix(tau^j), raw and by case analysis."""
    if i < 1 or j < 1:
        raise ValueError("i, j must be >= 1")
    f = _get_field(p, d, bound)
    raw = set(_brute_c1(f, i)) & set(int(x) for x in fix_subfield_codes(f, j))
    gij = gcd(i, j)
    if frobenius_order(f, i) % 3 or (j // gij) % 3:
        if p ** gcd(d, i) % 3 == 1 and p ** gcd(d, j) % 3 == 1:
            lemma, label = set(int(x) for x in order3_codes(f)), "part 1: |c| = 3"
        elif p == 3:
            lemma, label = {1}, "part 1: p = 3"
        else:
            lemma, label = set(), "part 1: empty"
    elif (i // gij) % 3 == 1:
        lemma, label = set(_brute_c1(f, gij)), "part 2: C1(p,d,(i,j))"
    else:
        lemma = {f.inv(c) for c in _brute_c1(f, gij)}
        label = "part 2: inverses of C1(p,d,(i,j))"
    return Intersection((p, d, i, j), _wrap(f, raw), _wrap(f, lemma), label)


def c1_intersect_c2(p: int, d: int, i: int, j: int, bound: int = DEFAULT_BOUND) -> Intersection:
    if i < 1 or j < 1:
        raise ValueError("i, j must be >= 1")
    f = _get_field(p, d, bound)
    raw = set(_brute_c1(f, i)) & set(_brute_c2(f, j))
    if p % 3 == 2 and frobenius_order(f, j) % 2 == 0 and i % 2 == 0 and j % 2 == 1:
        lemma, label = set(int(x) for x in order3_codes(f)), "p = 2 mod 3, |tau^j| even, i even, j odd: |c| = 3"
    elif p == 3:
        lemma, label = {1}, "p = 3"
    else:
        lemma, label = set(), "otherwise: empty"
    return Intersection((p, d, i, j), _wrap(f, raw), _wrap(f, lemma), label)


@dataclass
class GridRow:
    p: int
    d: int
    i: int
    j: int
    c1_size: int
    c2_size: int
    c1_label: str
    c2_label: str
    fix_label: str
    c1c2_label: str
    agree: bool
    cardinality_ok: bool


def grid(primes=(2, 3, 5, 7, 11, 13), dmax: int = 6, bound: int = 10**4) -> list[GridRow]:
    """Closed form against brute force for every (p, d, i, j) with p^d <= bound."""
    rows = []
    for p in primes:
        for d in range(1, dmax + 1):
            if p**d > bound:
                break
            for i in range(1, d + 1):
                f = _get_field(p, d, bound)
                g = gcd(d, i)
                agree = True
                try:
                    r1 = c1(p, d, i, bound=bound)
                    r2 = c2(p, d, i, bound=bound)
                except ClosedFormMismatch:
                    agree = False
                    r1 = c1(p, d, i, Method.BruteForce, bound)
                    r2 = c2(p, d, i, Method.BruteForce, bound)
                card = True
                o = frobenius_order(f, i)
                if o % 3 == 0:
                    card &= len(r1) == p**g + 1
                if o % 2 == 0:
                    card &= len(r2) == p**g
                for j in range(1, d + 1):
                    x1 = c1_intersect_fix(p, d, i, j, bound)
                    x2 = c1_intersect_c2(p, d, i, j, bound)
                    rows.append(GridRow(p, d, i, j, len(r1), len(r2), r1.case_label, r2.case_label,
                                        x1.case_label, x2.case_label, agree and x1.agrees and x2.agrees, card))
    return rows
