"""Exact arithmetic in GF(p^d).

Elements are stored as integer codes in ``[0, p^d)``: the code of
``c_0 + c_1 x + ... + c_{d-1} x^{d-1}`` is ``c_0 + c_1 p + ... + c_{d-1} p^{d-1}``.
The same codes are used in every export, so labels are stable across runs.

The default modulus of GF(p^d) is the lexicographically smallest monic
primitive polynomial of degree d (coefficient lists compared from the constant
term upwards), and the primitive element is the class of ``x``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BoundExceeded,
    DegreeOutOfRange,
    IncompatibleSubfields,
    NonPrime,
    ZeroElement,
)

DEFAULT_BOUND = 10**6
# Full add/mul tables are built only for fields at most this large.
TABLE_LIMIT = 1024
LOG_LIMIT = 2 * 10**5  # above TABLE_LIMIT and up to this order, multiply through log tables

_MODULUS_OVERRIDES: dict[tuple[int, int], tuple[int, ...]] = {}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n in increasing order."""
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, d) with q = p^d, or None if q is not a prime power."""
    if q < 2:
        return None
    p = prime_factors(q)
    if len(p) != 1:
        return None
    d, r = 0, q
    while r > 1:
        r //= p[0]
        d += 1
    return p[0], d


# -- polynomials over GF(p): tuples of coefficients, constant term first ----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    f = _trim(list(f))
    df = len(f) - 1
    lead_inv = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - df
        for k in range(df + 1):
            a[shift + k] = (a[shift + k] - c * f[k]) % p
        _trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_rem([c % p for c in prod], f, p)


def _poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result: list[int] = [1]
    base = _poly_rem(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _monic_polys(p: int, deg: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of the given degree in lexicographic order (constant term first)."""
    for n in range(p**deg):
        coeffs = []
        for k in range(deg):
            coeffs.append(n // p ** (deg - 1 - k) % p)
        yield tuple(coeffs) + (1,)


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division against every monic polynomial of degree 1..deg(f)//2."""
    f = _trim(list(f))
    deg = len(f) - 1
    if deg < 1:
        return False
    for dg in range(1, deg // 2 + 1):
        for g in _monic_polys(p, dg):
            if not _poly_rem(f, g, p):
                return False
    return True


def _is_primitive_poly(f: Sequence[int], p: int) -> bool:
    deg = len(f) - 1
    q = p**deg
    if not is_irreducible(f, p):
        return False
    x = [0, 1]
    if _poly_powmod(x, q - 1, f, p) != [1]:
        return False
    if q == 2:
        return True
    return all(_poly_powmod(x, (q - 1) // r, f, p) != [1] for r in prime_factors(q - 1))


def smallest_primitive_poly(p: int, d: int) -> tuple[int, ...]:
    for f in _monic_polys(p, d):
        if _is_primitive_poly(f, p):
            return f
    raise AssertionError("no primitive polynomial found")  # unreachable for prime p


# -- fields -----------------------------------------------------------------------


class Field:
    """The finite field GF(p^d) on integer codes.

    Arithmetic entry points (``add``, ``mul``, ``inv``, ``frob``...) take and
    return codes. :class:`FieldElement` wraps a code for operator syntax.
    Instances are immutable after construction; build them with
    :func:`make_field` so that equal parameters give the same object.
    """

    def __init__(self, p: int, d: int, modulus: Sequence[int], primitive: int | None = None):
        self.p = p
        self.d = d
        self.order = p**d
        self.modulus = tuple(modulus)
        self._weights = [p**k for k in range(d)]
        self._mul_table: np.ndarray | None = None
        self._inv_table: np.ndarray | None = None
        self._frob_tables: dict[int, np.ndarray] = {}
        self._digit_array: np.ndarray | None = None
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None
        self._use_logs = False  # switched on once the primitive element is known
        if primitive is None:
            primitive = self._x_code()
            if not self._has_full_order(primitive):
                # only reachable with an override modulus that is not primitive
                primitive = next(c for c in range(1, self.order) if self._has_full_order(c))
        if not self._has_full_order(primitive):
            raise ValueError(f"{primitive} is not a primitive element of GF({p}^{d})")
        self.primitive = primitive
        self._use_logs = self.d > 1 and TABLE_LIMIT < self.order <= LOG_LIMIT

    def __repr__(self) -> str:
        return f"Field(p={self.p}, d={self.d}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (make_field, (self.p, self.d, self.order, self.modulus))

    # codes <-> coefficients
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.d):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, coeffs: Iterable[int]) -> int:
        return sum((c % self.p) * w for c, w in zip(coeffs, self._weights))

    def _x_code(self) -> int:
        return self.from_digits(_poly_rem([0, 1], self.modulus, self.p) + [0] * self.d)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.order)

    def element(self, code: int) -> FieldElement:
        if not 0 <= code < self.order:
            raise ValueError(f"code {code} outside GF({self.order})")
        return FieldElement(code, self)

    # arithmetic on codes
    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.d == 1:
            return (a + b) % p
        out, w = 0, 1
        for _ in range(self.d):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += (ra + rb) % p * w
            w *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.d == 1:
            return -a % p
        out, w = 0, 1
        for _ in range(self.d):
            a, r = divmod(a, p)
            out += (-r % p) * w
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.d == 1:
            return a * b % self.p
        if self._mul_table is None and self.order <= TABLE_LIMIT:
            self._build_mul_table()
        if self._mul_table is not None:
            return int(self._mul_table[a, b])
        if self._use_logs:
            if a == 0 or b == 0:
                return 0
            exp, log = self._log_tables()
            return int(exp[(int(log[a]) + int(log[b])) % (self.order - 1)])
        return self._mul_raw(a, b)

    def _log_tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self._exp is None:
            q = self.order
            exp = np.empty(q - 1, dtype=np.int64)
            c = 1
            for k in range(q - 1):
                exp[k] = c
                c = self._mul_raw(c, self.primitive)
            log = np.zeros(q, dtype=np.int64)
            log[exp] = np.arange(q - 1)
            self._exp, self._log = exp, log
        return self._exp, self._log

    def _mul_raw(self, a: int, b: int) -> int:
        prod = _poly_mulmod(self.digits(a), self.digits(b), self.modulus, self.p)
        return self.from_digits(prod)

    def _build_mul_table(self) -> None:
        q, d, p = self.order, self.d, self.p
        digs = self.digit_array()
        # row k of mat holds the digits of a * x^k
        xk = [p**k for k in range(d)]
        table = np.empty((q, q), dtype=np.int32)
        weights = np.array(self._weights, dtype=np.int64)
        for a in range(q):
            mat = np.array([self.digits(self._mul_raw(a, xk[k])) for k in range(d)], dtype=np.int64)
            table[a] = (digs @ mat) % p @ weights
        self._mul_table = table

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("0 has no inverse")
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_table is None and self.order <= 2 * 10**5:
            self._build_inv_table()
        if self._inv_table is not None:
            return int(self._inv_table[a])
        return self.pow(a, self.order - 2)

    def _build_inv_table(self) -> None:
        q = self.order
        walk = [1]
        for _ in range(q - 2):
            walk.append(self.mul(walk[-1], self.primitive))
        table = np.zeros(q, dtype=np.int64)
        for k, c in enumerate(walk):
            table[c] = walk[(q - 1 - k) % (q - 1)]
        self._inv_table = table

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.d == 1:
            return pow(a, e, self.p)
        if self._use_logs:
            if a == 0:
                return 0 if e else 1
            exp, log = self._log_tables()
            return int(exp[int(log[a]) * e % (self.order - 1)])
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frob(self, a: int, i: int = 1) -> int:
        """Return a^(p^i), the image of a under the i-th power of Frobenius."""
        i %= self.d
        if i == 0 or a in (0, 1):
            return a
        return int(self.frob_table(i)[a])

    def frob_table(self, i: int = 1) -> np.ndarray:
        """Array t with t[a] = a^(p^i) for every code a."""
        i %= self.d
        if i not in self._frob_tables:
            if i == 0:
                t = np.arange(self.order, dtype=np.int64)
            elif i == 1:
                t = np.array([self.pow(a, self.p) for a in range(self.order)], dtype=np.int64)
            else:
                t = self.frob_table(i - 1)[self.frob_table(1)]
            self._frob_tables[i] = t
        return self._frob_tables[i]

    def _has_full_order(self, w: int) -> bool:
        q = self.order
        if w == 0:
            return False
        if self.pow(w, q - 1) != 1:
            return False
        return all(self.pow(w, (q - 1) // r) != 1 for r in prime_factors(q - 1)) if q > 2 else True

    # vectorised arithmetic over arrays of codes
    def digit_array(self) -> np.ndarray:
        """(q, d) array of base-p digits of every code."""
        if self._digit_array is None:
            codes = np.arange(self.order, dtype=np.int64)
            self._digit_array = np.stack([(codes // w) % self.p for w in self._weights], axis=1)
        return self._digit_array

    def _encode_digits(self, digs: np.ndarray) -> np.ndarray:
        return (digs % self.p) @ np.array(self._weights, dtype=np.int64)

    def add_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        digs = self.digit_array()
        return self._encode_digits(digs[a] + digs[b])

    def neg_vec(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.asarray(a)
        return self._encode_digits(-self.digit_array()[a])

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.d == 1:
            return a * b % self.p
        if self._mul_table is None and self.order <= TABLE_LIMIT:
            self._build_mul_table()
        if self._mul_table is not None:
            return self._mul_table[a, b].astype(np.int64)
        if self._use_logs:
            exp, log = self._log_tables()
            a, b = np.broadcast_arrays(a, b)
            out = exp[(log[a] + log[b]) % (self.order - 1)]
            return np.where((a == 0) | (b == 0), 0, out)
        p, d, f = self.p, self.d, self.modulus
        da, db = self.digit_array()[a], self.digit_array()[b]
        prod = np.zeros(a.shape + (2 * d - 1,), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                prod[..., i + j] += da[..., i] * db[..., j]
        prod %= p
        lead_inv = pow(f[-1], p - 2, p)
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[..., k] * lead_inv % p
            for t in range(d + 1):
                prod[..., k - d + t] = (prod[..., k - d + t] - c * f[t]) % p
        return self._encode_digits(prod[..., :d])

    def inv_vec(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroElement("0 has no inverse")
        if self.d == 1:
            return np.array([pow(int(x), self.p - 2, self.p) for x in a.ravel()], dtype=np.int64).reshape(a.shape)
        if self._inv_table is None:
            self._build_inv_table()
        return self._inv_table[a]


@dataclass(frozen=True)
class FieldElement:
    """An element of a :class:`Field`, identified by its integer code."""

    value: int
    field: Field

    @property
    def coeffs(self) -> list[int]:
        return self.field.digits(self.value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_digits([other % self.field.p] + [0] * (self.field.d - 1))
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field.add(self.value, self._coerce(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field.sub(self.value, self._coerce(other)), self.field)

    def __rsub__(self, other):
        return FieldElement(self.field.sub(self._coerce(other), self.value), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __mul__(self, other):
        return FieldElement(self.field.mul(self.value, self._coerce(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field.div(self.value, self._coerce(other)), self.field)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.value, e), self.field)

    def frob(self, i: int = 1) -> FieldElement:
        return FieldElement(self.field.frob(self.value, i), self.field)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"GF({self.field.order})<{self.value}>"


@dataclass(frozen=True)
class FieldAutomorphism:
    """The map c -> c^(p^exponent) of a field of degree d over its prime field."""

    exponent: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.d)

    def __mul__(self, other: FieldAutomorphism) -> FieldAutomorphism:
        return FieldAutomorphism(self.exponent + other.exponent, self.d)

    def inverse(self) -> FieldAutomorphism:
        return FieldAutomorphism(-self.exponent, self.d)

    @property
    def order(self) -> int:
        return self.d // gcd(self.d, self.exponent)

    def __call__(self, c: FieldElement) -> FieldElement:
        return c.frob(self.exponent)


# -- construction -----------------------------------------------------------------


def load_modulus_overrides(path: str | Path) -> dict[tuple[int, int], tuple[int, ...]]:
    """Read ``p d c0 c1 ... cd`` lines and register them as moduli for :func:`make_field`."""
    found: dict[tuple[int, int], tuple[int, ...]] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        nums = [int(t) for t in line.split()]
        if len(nums) < 3:
            raise ValueError(f"{path}:{lineno}: expected 'p d c0 ... cd'")
        p, d, coeffs = nums[0], nums[1], nums[2:]
        if len(coeffs) != d + 1:
            raise ValueError(f"{path}:{lineno}: degree {d} needs {d + 1} coefficients")
        found[(p, d)] = tuple(coeffs)
    set_modulus_overrides(found)
    return found


def set_modulus_overrides(overrides: dict[tuple[int, int], Sequence[int]]) -> None:
    _MODULUS_OVERRIDES.clear()
    _MODULUS_OVERRIDES.update({k: tuple(v) for k, v in overrides.items()})
    _make_field_cached.cache_clear()


def make_field(p: int, d: int = 1, bound: int = DEFAULT_BOUND, modulus: Sequence[int] | None = None) -> Field:
    """Return GF(p^d) with the deterministic modulus (or an explicit irreducible one)."""
    if not is_prime(p):
        raise NonPrime(p)
    if d < 1:
        raise DegreeOutOfRange(f"degree must be >= 1, got {d}")
    if p**d > bound:
        raise BoundExceeded(f"field order {p}^{d} exceeds bound {bound}")
    if modulus is None:
        modulus = _MODULUS_OVERRIDES.get((p, d))
    return _make_field_cached(p, d, None if modulus is None else tuple(modulus))


@functools.lru_cache(maxsize=None)
def _make_field_cached(p: int, d: int, modulus: tuple[int, ...] | None) -> Field:
    if modulus is None:
        return Field(p, d, smallest_primitive_poly(p, d))
    f = [c % p for c in modulus]
    if len(_trim(list(f))) != d + 1:
        raise DegreeOutOfRange(f"modulus {modulus} does not have degree {d}")
    lead_inv = pow(f[-1], p - 2, p)
    f = [c * lead_inv % p for c in f]
    if not is_irreducible(f, p):
        raise ValueError(f"modulus {modulus} is reducible over GF({p})")
    return Field(p, d, f)


# -- operations -------------------------------------------------------------------


def frobenius_order(f: Field, i: int) -> int:
    """Order of c -> c^(p^i) on f, namely d / gcd(d, i)."""
    if i < 1:
        raise ValueError("i must be >= 1")
    return f.d // gcd(f.d, i)


def fix_subfield_codes(f: Field, i: int) -> np.ndarray:
    """Sorted codes of the elements fixed by c -> c^(p^i)."""
    codes = np.arange(f.order, dtype=np.int64)
    return codes[f.frob_table(i) == codes]


def fix_subfield(f: Field, i: int) -> frozenset[FieldElement]:
    if i < 1:
        raise ValueError("i must be >= 1")
    return frozenset(FieldElement(int(c), f) for c in fix_subfield_codes(f, i))


def mult_order(c: FieldElement) -> int:
    """Least m >= 1 with c^m = 1, by linear scan."""
    if c.value == 0:
        raise ZeroElement("0 has no multiplicative order")
    f = c.field
    m, acc = 1, c.value
    while acc != 1:
        acc = f.mul(acc, c.value)
        m += 1
    return m


def trace(f: Field, b: FieldElement | int, source: int | None = None, target: int = 1) -> FieldElement:
    """Relative trace from Fix(tau^source) down to Fix(tau^target).

    ``source`` must be a multiple of ``target`` and ``b`` must lie in the
    source subfield. The result is the sum of b^(p^(target*k)) over the
    relative degree.
    """
    if source is None:
        source = f.d
    if target < 1 or source < 1 or source % target:
        raise IncompatibleSubfields(f"source exponent {source} is not a multiple of target {target}")
    code = b.value if isinstance(b, FieldElement) else int(b)
    if f.frob(code, source) != code:
        raise IncompatibleSubfields(f"{code} is not in Fix(tau^{source})")
    e_deg = gcd(f.d, source)
    rel = e_deg // gcd(e_deg, target)
    acc, term = 0, code
    for _ in range(rel):
        acc = f.add(acc, term)
        term = f.frob(term, target)
    return FieldElement(acc, f)
