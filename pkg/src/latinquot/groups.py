"""Groups acting on latin squares of Cayley tables.

Everything acts on the right: for permutations ``p`` and ``q`` the product
``compose(p, q)`` means "first p, then q", and similarly for autoparatopisms
and semilinear maps.

Elements of ``H`` are integer codes. For an elementary abelian ``H`` we use a
:class:`VectorSpace` U = GF(q)^n whose codes are the base-p digit strings of
the coordinates, so the additive group of U is independent of ``n``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import BoundExceeded, GoursatViolation, NotInStabilizer, NotTransitive, SpecLineMismatch
from .ffield import DEFAULT_BOUND, Field, make_field

Perm = tuple[int, ...]


# -- permutations ------------------------------------------------------------------


def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """p then q."""
    return tuple(q[x] for x in p)


def perm_inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_order(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    order = 1
    for s in range(len(p)):
        if seen[s]:
            continue
        length, x = 0, s
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


def cycle_string(p: Sequence[int], base: int = 1) -> str:
    """Cycle notation, fixed points omitted, ``()`` for the identity."""
    seen = set()
    parts = []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            continue
        cyc, x = [], s
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + base))
            x = p[x]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


# -- small finite groups -------------------------------------------------------------


class FiniteGroup:
    """A group given by its multiplication table on codes 0..n-1."""

    def __init__(self, table, name: str = "", labels: Sequence[str] | None = None):
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n):
            raise ValueError("table must be square")
        self.table = t
        self.name = name
        self.labels = list(labels) if labels is not None else None
        ident = [e for e in range(n) if np.array_equal(t[e], np.arange(n))]
        if len(ident) != 1:
            raise ValueError("table has no unique identity")
        self.identity = ident[0]
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            (b,) = np.nonzero(t[a] == self.identity)[0][:1]
            inv[a] = b
        self.inverse = inv

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or self.order})"

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def mul_vec(self, a, b) -> np.ndarray:
        return self.table[np.asarray(a), np.asarray(b)]

    def inv_vec(self, a) -> np.ndarray:
        return self.inverse[np.asarray(a)]

    def elements(self) -> range:
        return range(self.order)

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    @property
    def is_elementary_abelian(self) -> bool:
        if not self.is_abelian or self.order == 1:
            return self.order == 1
        orders = {self.element_order(a) for a in self.elements() if a != self.identity}
        return len(orders) == 1 and _is_prime(orders.pop())

    def subgroup_closure(self, gens: Iterable[int]) -> set[int]:
        gens = list(gens)
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily by code order."""
        gens: list[int] = []
        span = {self.identity}
        for a in self.elements():
            if a not in span:
                gens.append(a)
                span = self.subgroup_closure(gens)
        return gens

    def automorphisms(self) -> list[Perm]:
        """All automorphisms, by extending every order-preserving image of a generating set."""
        gens = self.generators()
        orders = [self.element_order(a) for a in self.elements()]
        choices = [[b for b in self.elements() if orders[b] == orders[g]] for g in gens]
        out = []
        for images in itertools.product(*choices):
            phi = self._extend(gens, images)
            if phi is not None:
                out.append(phi)
        return out

    def automorphism_generators(self) -> list[Perm]:
        """A generating subset of Aut(H), chosen greedily."""
        autos = self.automorphisms()
        ident = perm_identity(self.order)
        gens: list[Perm] = []
        span = {ident}
        for a in autos:
            if a not in span:
                gens.append(a)
                span = set(close_group(gens, identity=ident))
        return gens

    def _extend(self, gens: Sequence[int], images: Sequence[int]) -> Perm | None:
        n = self.order
        phi = [-1] * n
        phi[self.identity] = self.identity
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g, im in zip(gens, images):
                y = self.mul(x, g)
                val = self.mul(phi[x], im)
                if phi[y] == -1:
                    phi[y] = val
                    queue.append(y)
                elif phi[y] != val:
                    return None
        if len(set(phi)) != n:
            return None
        return tuple(phi)

    # constructors
    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        a = np.arange(n)
        return cls((a[:, None] + a[None, :]) % n, f"C{n}")

    @classmethod
    def direct_product(cls, g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
        n1, n2 = g1.order, g2.order
        t = np.empty((n1 * n2, n1 * n2), dtype=np.int64)
        for a in range(n1 * n2):
            a1, a2 = a % n1, a // n1
            t[a] = g1.table[a1][np.arange(n1 * n2) % n1] + n1 * g2.table[a2][np.arange(n1 * n2) // n1]
        return cls(t, f"{g1.name}x{g2.name}")

    @classmethod
    def from_permutations(cls, perms: Sequence[Perm], name: str = "") -> FiniteGroup:
        perms = list(perms)
        index = {p: k for k, p in enumerate(perms)}
        t = [[index[compose(a, b)] for b in perms] for a in perms]
        return cls(t, name)

    @classmethod
    def dihedral(cls, m: int) -> FiniteGroup:
        """Dihedral group of order 2m as symmetries of an m-gon."""
        r = tuple((k + 1) % m for k in range(m))
        s = tuple((-k) % m for k in range(m))
        return cls.from_permutations(close_group([r, s]), f"D{2 * m}")

    @classmethod
    def symmetric3(cls) -> FiniteGroup:
        g = cls.from_permutations(close_group([(1, 2, 0), (1, 0, 2)]), "Sym3")
        return g

    @classmethod
    def quaternion(cls) -> FiniteGroup:
        # unit quaternions {±1, ±i, ±j, ±k} as signed basis products
        basis = "1ijk"
        mult = {
            ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
            ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
            ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
        }
        elems = [(s, b) for s in (1, -1) for b in basis]
        index = {e: k for k, e in enumerate(elems)}
        t = []
        for s1, b1 in elems:
            row = []
            for s2, b2 in elems:
                s, b = mult[(b1, b2)]
                row.append(index[(s1 * s2 * s, b)])
            t.append(row)
        labels = [("" if s > 0 else "-") + b for s, b in elems]
        return cls(t, "Q8", labels)

    @classmethod
    def elementary_abelian(cls, p: int, d: int) -> FiniteGroup:
        return VectorSpace(make_field(p, 1), d).as_group()


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


def small_group_catalog() -> dict[str, FiniteGroup]:
    """Every group of order at most 9 up to isomorphism, except the trivial group."""
    C = FiniteGroup.cyclic
    cat = {
        "C2": C(2), "C3": C(3), "C4": C(4), "C2^2": FiniteGroup.elementary_abelian(2, 2),
        "C5": C(5), "C6": C(6), "Sym3": FiniteGroup.symmetric3(), "C7": C(7), "C8": C(8),
        "C2xC4": FiniteGroup.direct_product(C(2), C(4)), "C2^3": FiniteGroup.elementary_abelian(2, 3),
        "D4": FiniteGroup.dihedral(4), "Q8": FiniteGroup.quaternion(), "C9": C(9),
        "C3^2": FiniteGroup.elementary_abelian(3, 2),
    }
    for k, g in cat.items():
        g.name = k
    return cat


# -- the vector space U = GF(q)^n ------------------------------------------------------


class VectorSpace:
    """U = GF(q)^n with codes sum_k u_k q^k; also the additive group H of U."""

    def __init__(self, fld: Field, n: int = 1):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.field = fld
        self.n = n
        self.p = fld.p
        self.q = fld.order
        self.order = fld.order**n
        self.dim = fld.d * n  # dimension over GF(p)
        self.identity = 0
        self._digits: np.ndarray | None = None
        self._weights = np.array([self.p**k for k in range(self.dim)], dtype=np.int64)

    def __repr__(self) -> str:
        return f"VectorSpace(GF({self.p}^{self.field.d})^{self.n})"

    def elements(self) -> range:
        return range(self.order)

    # coordinates
    def coords(self, u: int) -> list[int]:
        out = []
        for _ in range(self.n):
            u, r = divmod(u, self.q)
            out.append(r)
        return out

    def from_coords(self, cs: Sequence[int]) -> int:
        return sum(c * self.q**k for k, c in enumerate(cs))

    def digits(self) -> np.ndarray:
        """(|U|, dim) array of GF(p) coordinates of every code."""
        if self._digits is None:
            codes = np.arange(self.order, dtype=np.int64)
            self._digits = np.stack([(codes // w) % self.p for w in self._weights], axis=1)
        return self._digits

    def encode(self, digs: np.ndarray) -> np.ndarray:
        return (np.asarray(digs) % self.p) @ self._weights

    def basis(self) -> list[int]:
        """Codes of the standard GF(p)-basis."""
        return [int(w) for w in self._weights]

    # group operations (additive)
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return int(self.encode(self.digits()[a] + self.digits()[b]))

    mul = add

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return int(self.encode(-self.digits()[a]))

    inv = neg

    def add_vec(self, a, b) -> np.ndarray:
        a, b = np.asarray(a), np.asarray(b)
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.encode(self.digits()[a] + self.digits()[b])

    mul_vec = add_vec

    def neg_vec(self, a) -> np.ndarray:
        a = np.asarray(a)
        if self.p == 2:
            return a
        return self.encode(-self.digits()[a])

    inv_vec = neg_vec

    def scale(self, c: int, u: int) -> int:
        return self.from_coords([self.field.mul(c, x) for x in self.coords(u)])

    def scale_vec(self, c: int, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        out = np.zeros_like(u)
        for k in range(self.n):
            w = self.q**k
            coord = (u // w) % self.q
            out += self.field.mul_vec(coord, np.full_like(coord, c)) * w
        return out

    @property
    def is_abelian(self) -> bool:
        return True

    @property
    def is_elementary_abelian(self) -> bool:
        return True

    def as_group(self) -> FiniteGroup:
        a = np.arange(self.order)
        t = self.add_vec(a[:, None], a[None, :])
        return FiniteGroup(t, f"C{self.p}^{self.dim}")


# -- generic closure and orbits ------------------------------------------------------


def _default_act(point, g):
    if hasattr(g, "apply"):
        return g.apply(point)
    return g[point]


def close_group(gens: Sequence, identity=None, bound: int = DEFAULT_BOUND) -> list:
    """All products of the generators, by breadth-first right multiplication.

    Elements must be hashable and support ``*``; tuples are treated as
    permutations and composed with :func:`compose`.
    """
    gens = list(gens)
    if identity is None:
        if not gens:
            raise ValueError("need an identity when there are no generators")
        g0 = gens[0]
        identity = perm_identity(len(g0)) if isinstance(g0, tuple) else g0 * g0.inverse()
    mul = compose if isinstance(identity, tuple) else (lambda a, b: a * b)
    seen = {identity: None}
    out = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen[y] = None
                out.append(y)
                if len(out) > bound:
                    raise BoundExceeded(f"group closure exceeds {bound} elements")
                queue.append(y)
    return out


def orbit(point: Hashable, gens: Sequence, act: Callable | None = None, bound: int = DEFAULT_BOUND) -> set:
    act = act or _default_act
    seen = {point}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = act(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > bound:
                    raise BoundExceeded(f"orbit exceeds {bound} points")
                queue.append(y)
    return seen


def perm_orbits(n: int, gens: Sequence[Sequence[int]]) -> list[list[int]]:
    """Orbits of permutation arrays on range(n), each sorted, ordered by least element."""
    arrs = [np.asarray(g, dtype=np.int64) for g in gens]
    label = np.full(n, -1, dtype=np.int64)
    orbits = []
    for s in range(n):
        if label[s] >= 0:
            continue
        k = len(orbits)
        label[s] = k
        members = [s]
        frontier = np.array([s], dtype=np.int64)
        while frontier.size:
            nxt = np.unique(np.concatenate([a[frontier] for a in arrs])) if arrs else frontier[:0]
            nxt = nxt[label[nxt] < 0]
            label[nxt] = k
            members.extend(int(v) for v in nxt)
            frontier = nxt
        orbits.append(sorted(members))
    return orbits


# -- autoparatopisms -----------------------------------------------------------------


@dataclass(frozen=True)
class Autoparatopism:
    """[(s1, s2, s3), gamma] acting on triples of H.

    ``gamma[k]`` is the image of coordinate k (0-based). The image of
    (h1, h2, h3) has ``h_k^{s_k}`` in position ``gamma[k]``.
    """

    sigma: tuple[Perm, Perm, Perm]
    gamma: tuple[int, int, int] = (0, 1, 2)

    @classmethod
    def identity(cls, n: int) -> Autoparatopism:
        e = perm_identity(n)
        return cls((e, e, e))

    @classmethod
    def diagonal(cls, s: Sequence[int]) -> Autoparatopism:
        s = tuple(int(x) for x in s)
        return cls((s, s, s))

    @property
    def degree(self) -> int:
        return len(self.sigma[0])

    def apply(self, t: Sequence[int]) -> tuple[int, int, int]:
        out = [0, 0, 0]
        for k in range(3):
            out[self.gamma[k]] = self.sigma[k][t[k]]
        return tuple(out)

    def __mul__(self, other: Autoparatopism) -> Autoparatopism:
        # self then other: coordinate s is mapped by sigma_s, lands in gamma(s),
        # and is then mapped by other's permutation for that position
        sig = tuple(compose(self.sigma[s], other.sigma[self.gamma[s]]) for s in range(3))
        gam = tuple(other.gamma[self.gamma[s]] for s in range(3))
        return Autoparatopism(sig, gam)

    def inverse(self) -> Autoparatopism:
        sig = [None, None, None]
        for s in range(3):
            sig[self.gamma[s]] = perm_inverse(self.sigma[s])
        return Autoparatopism(tuple(sig), perm_inverse(self.gamma))

    def __pow__(self, k: int) -> Autoparatopism:
        base = self if k >= 0 else self.inverse()
        out = Autoparatopism.identity(self.degree)
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def is_identity(self) -> bool:
        e = perm_identity(self.degree)
        return self.gamma == (0, 1, 2) and all(s == e for s in self.sigma)

    def order(self) -> int:
        k, x = 1, self
        while not x.is_identity:
            x = x * self
            k += 1
        return k

    def theta_string(self) -> str:
        return cycle_string(self.gamma)

    def preserves(self, H) -> bool:
        """True if the Cayley triple set {(a, b, ab)} of H is mapped into itself."""
        n = H.order
        a = np.repeat(np.arange(n), n)
        b = np.tile(np.arange(n), n)
        trip = np.stack([a, b, H.mul_vec(a, b)])
        img = np.empty_like(trip)
        for k in range(3):
            img[self.gamma[k]] = np.asarray(self.sigma[k])[trip[k]]
        return bool(np.array_equal(H.mul_vec(img[0], img[1]), img[2]))

    def vertex_permutation(self, H) -> np.ndarray:
        """The induced permutation of lsg(H) vertices, vertex (a, b, ab) having code a + |H| b."""
        n = H.order
        a = np.tile(np.arange(n), n)
        b = np.repeat(np.arange(n), n)
        trip = np.stack([a, b, H.mul_vec(a, b)])
        img = np.empty_like(trip)
        for k in range(3):
            img[self.gamma[k]] = np.asarray(self.sigma[k])[trip[k]]
        return img[0] + n * img[1]


def make_x_y(H) -> tuple[Autoparatopism, Autoparatopism]:
    """x = [(i, phi, phi), (1 2 3)] and y = [(i, phi, i), (1 3)] with phi the inversion map."""
    e = perm_identity(H.order)
    phi = tuple(int(v) for v in H.inv_vec(np.arange(H.order)))
    x = Autoparatopism((e, phi, phi), (1, 2, 0))
    y = Autoparatopism((e, phi, e), (2, 1, 0))
    return x, y


def sym3_elements(H) -> dict[tuple[int, int, int], Autoparatopism]:
    """The six elements of <x, y>, keyed by their coordinate permutation."""
    x, y = make_x_y(H)
    return {z.gamma: z for z in close_group([x, y])}


@dataclass(frozen=True)
class Translation:
    """(rho_a, rho_b, rho_{a+b}) for an abelian H."""

    a: int
    b: int

    def autoparatopism(self, H) -> Autoparatopism:
        if not H.is_abelian:
            raise ValueError("translations of this form need an abelian H")
        els = np.arange(H.order)
        ra = tuple(int(v) for v in H.mul_vec(els, np.full_like(els, self.a)))
        rb = tuple(int(v) for v in H.mul_vec(els, np.full_like(els, self.b)))
        ab = H.mul(self.a, self.b)
        rab = tuple(int(v) for v in H.mul_vec(els, np.full_like(els, ab)))
        return Autoparatopism((ra, rb, rab))

    def apply(self, t: Sequence[int], H) -> tuple[int, int, int]:
        return (H.mul(t[0], self.a), H.mul(t[1], self.b), H.mul(t[2], H.mul(self.a, self.b)))


# -- semilinear maps ------------------------------------------------------------------

Matrix = tuple[tuple[int, ...], ...]


def _mat_mul(f: Field, A: Matrix, B: Matrix) -> Matrix:
    n, m, k = len(A), len(B), len(B[0])
    out = []
    for r in range(n):
        row = []
        for c in range(k):
            acc = 0
            for t in range(m):
                acc = f.add(acc, f.mul(A[r][t], B[t][c]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _mat_frob(f: Field, A: Matrix, i: int) -> Matrix:
    return tuple(tuple(f.frob(a, i % f.d) for a in row) for row in A)


def _mat_inv(f: Field, A: Matrix) -> Matrix | None:
    n = len(A)
    M = [list(row) + [1 if r == c else 0 for c in range(n)] for r, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = f.inv(M[col][col])
        M[col] = [f.mul(inv, v) for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                c = M[r][col]
                M[r] = [f.sub(a, f.mul(c, b)) for a, b in zip(M[r], M[col])]
    return tuple(tuple(row[n:]) for row in M)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))


@dataclass(frozen=True)
class SemilinearMap:
    """(A, tau^a) acting on row vectors by u -> (u A)^(tau^a).

    The product (A, tau^a)(B, tau^b), meaning "first (A, tau^a), then
    (B, tau^b)", equals (A B^(tau^-a), tau^(a+b)). For 1x1 matrices over
    GF(4) with A = (w), a = 1, B = (w), b = 0: u -> (u w)^2 w = u^2 w^3, and
    indeed A B^(tau^-1) = w * w^2 = w^3 acting before tau gives (u w^3)^2 =
    u^2 w^6 = u^2 w^3.
    """

    matrix: Matrix
    auto: int
    field: Field = field(repr=False)

    def __post_init__(self):
        m = tuple(tuple(int(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "auto", self.auto % self.field.d)
        if any(len(row) != len(m) for row in m):
            raise ValueError("matrix must be square")
        if _mat_inv(self.field, m) is None:
            raise ValueError("matrix is singular")

    @classmethod
    def identity(cls, fld: Field, n: int = 1) -> SemilinearMap:
        return cls(identity_matrix(n), 0, fld)

    @classmethod
    def scalar(cls, fld: Field, c: int, n: int = 1, auto: int = 0) -> SemilinearMap:
        return cls(tuple(tuple(c if r == k else 0 for k in range(n)) for r in range(n)), auto, fld)

    @classmethod
    def frobenius(cls, fld: Field, i: int = 1, n: int = 1) -> SemilinearMap:
        return cls(identity_matrix(n), i, fld)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def apply(self, u: Sequence[int]) -> tuple[int, ...]:
        f = self.field
        out = []
        for c in range(self.n):
            acc = 0
            for r in range(self.n):
                acc = f.add(acc, f.mul(u[r], self.matrix[r][c]))
            out.append(f.frob(acc, self.auto))
        return tuple(out)

    def __mul__(self, other: SemilinearMap) -> SemilinearMap:
        f = self.field
        B = _mat_frob(f, other.matrix, -self.auto)
        return SemilinearMap(_mat_mul(f, self.matrix, B), self.auto + other.auto, f)

    def inverse(self) -> SemilinearMap:
        f = self.field
        Ainv = _mat_inv(f, self.matrix)
        return SemilinearMap(_mat_frob(f, Ainv, self.auto), -self.auto, f)

    def __pow__(self, k: int) -> SemilinearMap:
        base = self if k >= 0 else self.inverse()
        out = SemilinearMap.identity(self.field, self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_linear(self) -> bool:
        return self.auto == 0

    def permutation(self, U: VectorSpace) -> np.ndarray:
        """Image code of every vector of U."""
        f, q = self.field, U.q
        codes = np.arange(U.order, dtype=np.int64)
        coords = [(codes // q**k) % q for k in range(self.n)]
        out = np.zeros_like(codes)
        ft = f.frob_table(self.auto)
        for c in range(self.n):
            acc = np.zeros_like(codes)
            for r in range(self.n):
                if self.matrix[r][c]:
                    acc = f.add_vec(acc, f.mul_vec(coords[r], np.full_like(codes, self.matrix[r][c])))
            out += ft[acc] * q**c
        return out

    @classmethod
    def from_permutation(cls, perm: Sequence[int], U: VectorSpace) -> SemilinearMap:
        """Recover (A, tau^a) from its action on U; ValueError if perm is not semilinear."""
        a = alpha_of_permutation(perm, U)
        if a is None:
            raise ValueError("permutation is not semilinear")
        f = U.field
        rows = [tuple(f.frob(c, -a % f.d) for c in U.coords(perm[U.from_coords([int(r == k) for k in range(U.n)])]))
                for r in range(U.n)]
        out = cls(tuple(rows), a, f)
        if out.perm_tuple(U) != tuple(int(v) for v in perm):
            raise ValueError("permutation is not semilinear")
        return out

    def perm_tuple(self, U: VectorSpace) -> Perm:
        return tuple(int(v) for v in self.permutation(U))

    def to_dict(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix], "frob": self.auto}


def gl_generators(fld: Field, n: int) -> list[SemilinearMap]:
    """Generators of GL_n(q): a primitive diagonal entry and elementary transvections."""
    w = fld.primitive
    gens = [SemilinearMap(_diag(n, w), 0, fld)]
    for r in range(n):
        for c in range(n):
            if r != c:
                for k in range(fld.d):
                    M = [list(row) for row in identity_matrix(n)]
                    M[r][c] = fld.p**k
                    gens.append(SemilinearMap(tuple(map(tuple, M)), 0, fld))
    return gens


def square_det_generators(fld: Field, n: int) -> list[SemilinearMap]:
    """Generators of the matrices with square determinant (index 2 in GL_n(q), q odd)."""
    w2 = fld.mul(fld.primitive, fld.primitive)
    gens = [SemilinearMap(_diag(n, w2), 0, fld)]
    gens += [g for g in gl_generators(fld, n)[1:]]
    return gens


def _diag(n: int, c: int) -> Matrix:
    return tuple(tuple((c if k == 0 else 1) if r == k else 0 for k in range(n)) for r in range(n))


def is_transitive_on_nonzero(gens: Sequence, U: VectorSpace, bound: int = DEFAULT_BOUND) -> bool:
    """True iff the orbit of the first basis vector is U minus zero."""
    if U.order > bound:
        raise BoundExceeded(f"|U| = {U.order} exceeds {bound}")
    arrs = [g.permutation(U) if isinstance(g, SemilinearMap) else np.asarray(g) for g in gens]
    orbs = perm_orbits(U.order, arrs)
    start = next(o for o in orbs if 1 in o)
    return len(start) == U.order - 1


def alpha_of_permutation(sigma: Sequence[int], U: VectorSpace) -> int | None:
    """The exponent a with sigma(w u) = w^(p^a) sigma(u) for all u, or None if sigma is not semilinear."""
    f = U.field
    s = np.asarray(sigma, dtype=np.int64)
    codes = np.arange(U.order, dtype=np.int64)
    if s[0] != 0:
        return None
    # additivity against each basis vector
    for b in U.basis():
        if not np.array_equal(s[U.add_vec(codes, np.full_like(codes, b))], U.add_vec(s, np.full_like(codes, s[b]))):
            return None
    lhs = s[U.scale_vec(f.primitive, codes)]
    for a in range(f.d):
        if np.array_equal(lhs, U.scale_vec(f.frob(f.primitive, a), s)):
            return a
    return None


# -- stabilizer shapes -------------------------------------------------------


@dataclass
class StabilizerSpec:
    """K, g, h for one line of the list of possible point stabilizers G_0.

    ``ell``, ``i``, ``j`` are exponents of the field-automorphism parts,
    each in 1..e with e = [GF(q) : GF(p)]; 0 is reported as e.
    """

    line: int
    U: VectorSpace
    K_gens: list[SemilinearMap]
    g: SemilinearMap | None = None
    h: SemilinearMap | None = None
    label: str = ""

    @property
    def e(self) -> int:
        return self.U.field.d

    @property
    def ell(self) -> int:
        return gcd(self.e, *[k.auto for k in self.K_gens]) if self.K_gens else self.e

    @property
    def i(self) -> int | None:
        return None if self.g is None else (self.g.auto or self.e)

    @property
    def j(self) -> int | None:
        return None if self.h is None else (self.h.auto or self.e)

    @property
    def m(self) -> int | None:
        return None if self.i is None else gcd(self.i, self.ell)

    def derived(self) -> dict:
        return {"l": self.ell, "i": self.i, "j": self.j, "m": self.m}


@dataclass
class G0Group:
    spec: StabilizerSpec
    generators: list[Autoparatopism]
    K: list[Perm]  # elements of K as permutations of U
    elements: list[Autoparatopism] | None = None
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def order(self) -> int | None:
        return None if self.elements is None else len(self.elements)


def check_spec(spec: StabilizerSpec, bound: int = DEFAULT_BOUND) -> tuple[list[Perm], list[tuple[str, bool]]]:
    """Check the coset conditions and the transitivity column.

    Returns the elements of K as permutations of U, and the checks made.
    """
    line, g, h = spec.line, spec.g, spec.h
    needs_g, needs_h = line in (2, 5), line in (4, 5)
    if line not in (1, 2, 3, 4, 5):
        raise SpecLineMismatch(f"line must be 1..5, got {line}")
    if needs_g != (g is not None) or needs_h != (h is not None):
        raise SpecLineMismatch(f"line {line} needs g: {needs_g}, h: {needs_h}")
    U = spec.U
    # semilinear maps act faithfully on U, so K is closed as a permutation group
    K = close_group([k.perm_tuple(U) for k in spec.K_gens], identity=perm_identity(U.order), bound=bound)
    Kperms = set(K)

    class _Member:
        def __contains__(self, z: SemilinearMap) -> bool:
            return z.perm_tuple(U) in Kperms

    Kset = _Member()
    checks: list[tuple[str, bool]] = []

    def need(name: str, ok: bool, extra: str = ""):
        checks.append((name, ok))
        if not ok:
            raise GoursatViolation(f"line {line}: {name} fails" + extra)

    if g is not None:
        need("g not in K", g not in Kset)
        need("Kg^3 = K", g**3 in Kset)
    if h is not None:
        need("h not in K", h not in Kset)
        need("Kh^2 = K", h**2 in Kset)
    if g is not None and h is not None:
        ok = (g * h) * (h * g * g).inverse() in Kset
        if not ok:
            flipped = (h * g) * (g * g * h).inverse() in Kset
            hint = (" (it holds under the opposite composition convention)" if flipped
                    else " (under either composition convention)")
            need("Kgh = Khg^2", False, hint)
        checks.append(("Kgh = Khg^2", True))
    for z in [w for w in (g, h) if w is not None]:
        zi = z.inverse()
        need("K normal", all(zi * k * z in Kset for k in spec.K_gens))
    trans = list(spec.K_gens) + ([h] if line in (4, 5) else [])
    ok = is_transitive_on_nonzero(trans, spec.U, bound)
    checks.append(("transitive on U#", ok))
    if not ok:
        who = "<K, h>" if line in (4, 5) else "K"
        raise NotTransitive(f"line {line}: {who} is not transitive on nonzero vectors")
    return K, checks


def build_G0(spec: StabilizerSpec, close: bool = True, bound: int = DEFAULT_BOUND) -> G0Group:
    """Validate ``spec`` and return the generators (and optionally all elements) of G_0."""
    K, checks = check_spec(spec, bound)
    U = spec.U
    x, y = make_x_y(U)
    gens = [Autoparatopism.diagonal(k.perm_tuple(U)) for k in spec.K_gens]
    gens.append(Autoparatopism.diagonal(spec.g.perm_tuple(U)) * x if spec.g is not None else x)
    if spec.line >= 3:
        gens.append(Autoparatopism.diagonal(spec.h.perm_tuple(U)) * y if spec.h is not None else y)
    elements = close_group(gens, bound=bound) if close else None
    return G0Group(spec, gens, K, elements, checks)


@dataclass(frozen=True)
class Projections:
    pi: Perm
    theta: tuple[int, int, int]
    alpha: int | None = None

    @property
    def theta_string(self) -> str:
        return cycle_string(self.theta)


def pi_theta_alpha(z, H=None, U: VectorSpace | None = None):
    """Split a stabilizer element into its Aut(H) part, its <x, y> part and (for U) its alpha part.

    Accepts an :class:`Autoparatopism`, a :class:`SemilinearMap`, or a list of
    either (returning a list).
    """
    if isinstance(z, (list, tuple)) and z and not isinstance(z[0], int):
        return [pi_theta_alpha(w, H, U) for w in z]
    if isinstance(z, SemilinearMap):
        pi = z.perm_tuple(U) if U is not None else ()
        return Projections(pi, (0, 1, 2), z.auto)
    H = H if H is not None else U
    if H is None:
        raise ValueError("need the group H")
    zero = H.identity
    if z.apply((zero, zero, zero)) != (zero, zero, zero):
        raise NotInStabilizer("element moves the base vertex")
    w = sym3_elements(H)[z.gamma]
    rest = z * w.inverse()
    s = rest.sigma[0]
    if rest.gamma != (0, 1, 2) or rest.sigma[1] != s or rest.sigma[2] != s:
        raise NotInStabilizer("element is not in Aut(H) x <x, y>")
    alpha = alpha_of_permutation(s, U) if U is not None else None
    return Projections(s, z.gamma, alpha)


# -- canonical specs -------------------------------------------------------------------


def canonical_spec(p: int, d: int, n: int = 1, line: int = 1, i: int | None = None, j: int | None = None,
                   l: int | None = None, bound: int = DEFAULT_BOUND) -> StabilizerSpec:
    """The standard K, g, h for a line of the stabilizer list.

    Lines 1-3: K = <GL_n(q), tau^l>. Line 2 adds g = tau^i. Lines 4-5 (q odd):
    K = <square-determinant matrices, tau^l>, h = (diag(w, 1, ...), tau^j);
    line 5 adds g = tau^i. Here q = p^(d/n) and exponents are taken mod d/n.
    """
    if d % n:
        raise ValueError(f"n = {n} must divide d = {d}")
    e = d // n
    fld = make_field(p, e, bound=bound)
    U = VectorSpace(fld, n)
    ell = gcd(e, l if l is not None else e)
    if line in (1, 2, 3):
        K = gl_generators(fld, n)
    elif line in (4, 5):
        if p == 2:
            raise SpecLineMismatch("lines 4 and 5 need q odd")
        K = square_det_generators(fld, n)
    else:
        raise SpecLineMismatch(f"line must be 1..5, got {line}")
    if ell % e:
        K.append(SemilinearMap.frobenius(fld, ell, n))
    g = h = None
    if line in (2, 5):
        g = SemilinearMap.frobenius(fld, i if i is not None else 1, n)
    if line in (4, 5):
        h = SemilinearMap(_diag(n, fld.primitive), j if j is not None else e, fld)
    label = f"p={p} d={d} n={n} line={line} l={ell}" + (f" i={g.auto or e}" if g else "") + (f" j={h.auto or e}" if h else "")
    return StabilizerSpec(line, U, K, g, h, label)
