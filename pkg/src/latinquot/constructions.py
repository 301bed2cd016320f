"""The example families: lexicographic and direct products of complete graphs,
a diagonal Cayley graph on GF(q)^2, and the latin square graph presented via <Z, M>."""

from __future__ import annotations

from dataclasses import dataclass, field


from .classify import NOT_QC, QUASIPRIMITIVE, QUOTIENT_COMPLETE, VContext, analyse_subspaces, matrix_from_permutation
from .errors import BoundExceeded, EvenOrSmallQ
from .ffield import make_field, prime_power
from .graphs import DEFAULT_MAX_VERTICES, Graph, VertexSetPartition, cayley, is_complete, quotient
from .groups import SemilinearMap, VectorSpace, close_group, orbit

# the isomorphism witness between the q = 7 diagonal example and the lsg example
F_WITNESS = ((-1, 3), (2, 4))


@dataclass
class ExampleResult:
    outcome: str
    k: int
    quotient_orders: list[int]
    labels: list[str]


@dataclass
class ExampleFamily:
    kind: str  # Lexicographic | DirectProduct | DiagonalCayley | LsgExample
    params: tuple
    graph: Graph
    group_gens: list  # vertex permutations (products) or GF(p) matrices (Cayley families)
    expected_k: int
    named_normal: dict[str, list] = field(default_factory=dict)  # name -> generators of a normal subgroup
    ctx: VContext | None = None
    S: list[int] | None = None

    def evaluate(self) -> ExampleResult:
        if self.ctx is None:
            return self._evaluate_named()
        an = analyse_subspaces(self.ctx, self.group_gens, self.graph)
        if not an.tests:
            return ExampleResult(QUASIPRIMITIVE, 0, [], [])
        good = [t for t in an.tests if t.complete]
        outcome = QUOTIENT_COMPLETE if len(good) == len(an.tests) else NOT_QC
        return ExampleResult(outcome, len(good), [t.order for t in good], [t.W.label for t in good])

    def _evaluate_named(self) -> ExampleResult:
        orders, labels = [], []
        ok = True
        for name, gens in self.named_normal.items():
            part = VertexSetPartition.from_orbits(self.graph.n, gens)
            if len(part) in (1, self.graph.n):
                continue  # trivial or transitive
            q = quotient(self.graph, part)
            if is_complete(q):
                orders.append(q.n)
                labels.append(name)
            else:
                ok = False
        if not orders and ok:
            return ExampleResult(QUASIPRIMITIVE, 0, [], [])
        return ExampleResult(QUOTIENT_COMPLETE if ok else NOT_QC, len(orders), orders, labels)


def _sym_gens(block: list[int], n_total: int) -> list[tuple[int, ...]]:
    """A transposition and a long cycle on ``block``, identity elsewhere."""
    out = []
    if len(block) < 2:
        return out
    t = list(range(n_total))
    t[block[0]], t[block[1]] = block[1], block[0]
    out.append(tuple(t))
    c = list(range(n_total))
    for a, b in zip(block, block[1:] + block[:1]):
        c[a] = b
    out.append(tuple(c))
    return out


def lexicographic(m: int, n: int, bound: int = DEFAULT_MAX_VERTICES) -> ExampleFamily:
    """K_m[complement of K_n]: vertex (a, b) = a + m b, adjacent iff first coordinates differ."""
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    N = m * n
    if N > bound:
        raise BoundExceeded(f"{N} vertices exceeds {bound}")
    edges = [(u, v) for u in range(N) for v in range(u + 1, N) if u % m != v % m]
    g = Graph.from_edges(N, edges, labels=[(v % m, v // m) for v in range(N)])
    base = []  # Sym(n)^m moving the second coordinate inside each block
    for a in range(m):
        base += _sym_gens([a + m * b for b in range(n)], N)
    top = _sym_gens(list(range(m)), m)
    top = [tuple(t[v % m] + m * (v // m) for v in range(N)) for t in top]
    return ExampleFamily("Lexicographic", (m, n), g, base + top, 1 if n > 1 else 0, {"Sym(n)^m": base})


def direct_product(m: int, n: int, bound: int = DEFAULT_MAX_VERTICES) -> ExampleFamily:
    """K_m x K_n: vertex (a, b) = a + m b, adjacent iff both coordinates differ."""
    if m < 3 or n < 3:
        raise ValueError("need m, n >= 3")
    N = m * n
    if N > bound:
        raise BoundExceeded(f"{N} vertices exceeds {bound}")
    edges = [(u, v) for u in range(N) for v in range(u + 1, N) if u % m != v % m and u // m != v // m]
    g = Graph.from_edges(N, edges, labels=[(v % m, v // m) for v in range(N)])
    first = [tuple(t[v % m] + m * (v // m) for v in range(N)) for t in _sym_gens(list(range(m)), m)]
    second = [tuple(v % m + m * t[v // m] for v in range(N)) for t in _sym_gens(list(range(n)), n)]
    return ExampleFamily("DirectProduct", (m, n), g, first + second, 2,
                         {"Sym(m) x 1": first, "1 x Sym(n)": second})


def _field_of(q: int):
    pp = prime_power(q)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(*pp)


def _linear_family(kind: str, q: int, mats: list[SemilinearMap], start: tuple[int, int], expected: int,
                   bound: int) -> ExampleFamily:
    f = _field_of(q)
    if q * q > bound:
        raise BoundExceeded(f"{q * q} vertices exceeds {bound}")
    U2 = VectorSpace(f, 2)
    ctx = VContext(VectorSpace(f, 1))  # V = GF(q) + GF(q) has the same codes as GF(q)^2
    perms = [m.perm_tuple(U2) for m in mats]
    S = sorted(orbit(U2.from_coords(start), perms))
    g = cayley(U2, S, bound)
    gl = [matrix_from_permutation(p, ctx) for p in perms]
    return ExampleFamily(kind, (q,), g, gl, expected, ctx=ctx, S=S)


def diagonal_cayley(q: int, bound: int = DEFAULT_MAX_VERTICES) -> ExampleFamily:
    """Cay(GF(q)^2, S) with S the orbit of (1, 1) under {diag(a, b) : ab a nonzero square}."""
    pp = prime_power(q)
    if pp is None or pp[0] == 2 or q < 5:
        raise EvenOrSmallQ(f"q = {q} must be an odd prime power >= 5")
    f = _field_of(q)
    w = f.primitive
    gens = [SemilinearMap(((f.mul(w, w), 0), (0, 1)), 0, f), SemilinearMap(((w, 0), (0, w)), 0, f)]
    return _linear_family("DiagonalCayley", q, gens, (1, 1), 2, bound)


def lsg_example(q: int, bound: int = DEFAULT_MAX_VERTICES) -> ExampleFamily:
    """Cay(GF(q)^2, S) with S the orbit of (1, 0) under <scalars, M>, M = [[1, -1], [1, 0]]."""
    f = _field_of(q)
    M = SemilinearMap(((1, f.neg(1)), (1, 0)), 0, f)
    Z = SemilinearMap.scalar(f, f.primitive, 2)
    expected = 1 if f.p == 3 else (2 if q % 3 == 1 else 0)
    return _linear_family("LsgExample", q, [Z, M], (1, 0), expected, bound)


def witness_matrix(q: int = 7) -> SemilinearMap:
    f = _field_of(q)
    return SemilinearMap(tuple(tuple(x % f.p for x in row) for row in F_WITNESS), 0, f)


def conjugate_group_order(q: int = 7) -> tuple[int, int, bool]:
    """|G_0| of the diagonal example, |<Z, M>|, and whether f^-1 G_0 f = <Z, M>."""
    f = _field_of(q)
    U2 = VectorSpace(f, 2)
    w = f.primitive
    diag = close_group([SemilinearMap(((f.mul(w, w), 0), (0, 1)), 0, f), SemilinearMap(((w, 0), (0, w)), 0, f)])
    M = SemilinearMap(((1, f.neg(1)), (1, 0)), 0, f)
    ZM = close_group([SemilinearMap.scalar(f, w, 2), M])
    F = witness_matrix(q)
    conj = {F.inverse() * g * F for g in diag}
    return len(diag), len(ZM), conj == set(ZM)


def vertex_map(family: ExampleFamily, F: SemilinearMap) -> list[int]:
    U2 = VectorSpace(F.field, 2)
    return list(F.perm_tuple(U2))
