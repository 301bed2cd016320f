"""Invariant subspaces of V = U + U and the complete normal quotients of lsg(U).

The vertex (a, b, a+b) of lsg(U) is identified with (a, b) in V, whose code
is a + |U| b; GF(p)-coordinates are the digits of a followed by those of b.
A point stabilizer G_0 acts on V by GF(p)-linear maps (row-vector
convention, v -> v M), and the translation subgroup T_W of every
G_0-invariant subspace W is normal in G = T G_0 with the cosets of W as orbits.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .csets import order3_codes
from .errors import BoundExceeded, GoursatViolation, NotLinear, NotTransitive, SpecLineMismatch
from .ffield import frobenius_order, make_field
from .graphs import DEFAULT_MAX_VERTICES, Graph, VertexSetPartition, diameter, is_complete, lsg, quotient
from .groups import (
    Autoparatopism,
    G0Group,
    StabilizerSpec,
    VectorSpace,
    build_G0,
    canonical_spec,
    check_spec,
    close_group,
    compose,
    perm_inverse,
    perm_orbits,
)

QUOTIENT_COMPLETE = "quotient-complete"
QUASIPRIMITIVE = "vertex-quasiprimitive"
NOT_QC = "not-quotient-complete"
MAX_LATTICE = 4096


# -- subspaces of V ---------------------------------------------------------------


@dataclass(frozen=True)
class SubspaceV:
    basis: linalg.Basis
    tag: str = "Other"  # Vinf | Vc | Full | Other
    c: int | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def label(self) -> str:
        if self.tag == "Vc":
            return f"V_{self.c}"
        if self.tag == "Vinf":
            return "V_inf"
        if self.tag == "Full":
            return "V"
        return "W(" + ";".join("".join(map(str, r)) for r in self.basis) + ")"

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


class VContext:
    """Coordinates, named subspaces and vertex codes for V = U + U."""

    def __init__(self, U: VectorSpace):
        self.U = U
        self.p = U.p
        self.dimU = U.dim
        self.dim = 2 * U.dim
        self.order = U.order**2
        self.digits = linalg.digit_matrix(self.p, self.dim)
        f = U.field
        base = U.basis()
        udig = U.digits()
        named: dict[linalg.Basis, tuple[str, int | None]] = {}
        zero = [0] * self.dimU
        named[linalg.rref([zero + list(udig[u]) for u in base], self.p, self.dim)] = ("Vinf", None)
        for c in range(f.order):
            rows = [list(udig[u]) + list(udig[U.scale(c, u)]) for u in base]
            named[linalg.rref(rows, self.p, self.dim)] = ("Vc", c)
        self.named = named
        self.full = linalg.rref(np.eye(self.dim, dtype=np.int64), self.p, self.dim)

    def code(self, a: int, b: int) -> int:
        return a + self.U.order * b

    def subspace(self, basis: linalg.Basis) -> SubspaceV:
        if basis == self.full:
            return SubspaceV(basis, "Full")
        tag, c = self.named.get(basis, ("Other", None))
        return SubspaceV(basis, tag, c)

    def span_of_codes(self, codes: Sequence[int]) -> SubspaceV:
        return self.subspace(linalg.rref_array(self.digits[np.asarray(codes, dtype=np.int64)], self.p))

    def join(self, a: SubspaceV, b: SubspaceV) -> SubspaceV:
        return self.subspace(linalg.join(a.basis, b.basis, self.p, self.dim))

    def image_codes(self, M: np.ndarray) -> np.ndarray:
        return linalg.mat_apply_codes(M, self.p, self.digits)

    def is_invariant(self, W: SubspaceV, mats: Sequence[np.ndarray]) -> bool:
        for M in mats:
            img = (np.array(W.basis, dtype=np.int64).reshape(-1, self.dim) @ M) % self.p
            if not linalg.contains(W.basis, [tuple(r) for r in img], self.p, self.dim):
                return False
        return True


_CONTEXTS: dict[tuple, VContext] = {}


def context_for(U: VectorSpace) -> VContext:
    """Cached :class:`VContext`; keyed by the modulus too, since overrides change the named lines."""
    key = (U.p, U.field.d, U.n, U.field.modulus)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = VContext(U)
    return _CONTEXTS[key]


@lru_cache(maxsize=16)
def _lsg_cached(p: int, dim: int, bound: int) -> Graph:
    # the additive group of U depends only on p and its GF(p)-dimension
    return lsg(VectorSpace(make_field(p, 1), dim), bound)


# -- the action of G_0 on V ------------------------------------------------------------


def induced_linear_action(z: Autoparatopism, U: VectorSpace) -> np.ndarray:
    """Matrix M over GF(p) with (a, b)^z = (a, b) M, read off from basis triples."""
    if z.apply((0, 0, 0)) != (0, 0, 0):
        raise NotLinear("element does not fix the base vertex")
    dig = U.digits()
    base = U.basis()
    vecs = [(u, 0) for u in base] + [(0, u) for u in base]
    rows = []
    images = []
    for a, b in vecs:
        a2, b2, c2 = z.apply((a, b, U.add(a, b)))
        if c2 != U.add(a2, b2):
            raise NotLinear("image is not a triple of the Cayley table")
        images.append((a2, b2))
        rows.append(list(dig[a2]) + list(dig[b2]))
    M = np.array(rows, dtype=np.int64)
    # M must reproduce the action on every vertex, not only on the basis
    img = linalg.mat_apply_codes(M, U.p, linalg.digit_matrix(U.p, 2 * U.dim))
    if not np.array_equal(img, z.vertex_permutation(U)):
        raise NotLinear("action is not GF(p)-linear")
    return M


def matrix_from_permutation(perm: Sequence[int], ctx: VContext) -> np.ndarray:
    """GF(p)-matrix of a linear permutation of V codes (checked on all of V)."""
    base = [ctx.p**t for t in range(ctx.dim)]
    M = ctx.digits[np.asarray([perm[b] for b in base], dtype=np.int64)]
    if not np.array_equal(ctx.image_codes(M), np.asarray(perm, dtype=np.int64)):
        raise NotLinear("permutation is not GF(p)-linear")
    return M


def orbit_span(v: int, mats: Sequence[np.ndarray], ctx: VContext) -> SubspaceV:
    """Span of the orbit of the V-code v under the given matrices."""
    perms = [ctx.image_codes(M) for M in mats]
    seen = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for x in frontier:
            for P in perms:
                y = int(P[x])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return ctx.span_of_codes(sorted(seen))


# -- orbit-type table -----------------------------------------------------------------------------


@dataclass
class Table3Result:
    row: int
    case: str
    members: frozenset[int]
    conditions: list[tuple[str, bool]]


def _trace_zero_powers(f, m: int, sign: int) -> set[int]:
    out = set()
    for b in range(1, f.order):
        if f.add(f.add(b, f.frob(b, m)), f.frob(b, 2 * m)) == 0:
            v = f.mul(f.frob(b, m), f.inv(b))  # b^(p^m - 1)
            out.add(v if sign > 0 else f.inv(v))
    return out


def table3_predicate(spec: StabilizerSpec) -> Table3Result:
    """The set of c in GF(q)# minus {-1} whose line V_c is the span of the orbit of (a, ca).

    Parameters are read with e = [GF(q) : GF(p)] in place of the dimension,
    exponents i, j, l in 1..e, m = gcd(i, l) and |tau^i| = e / gcd(e, i).
    """
    f = spec.U.field
    p, e, l, i, j, m = f.p, f.d, spec.ell, spec.i, spec.j, spec.m
    line = spec.line
    if line in (2, 5) and i is None or line in (4, 5) and j is None:
        raise SpecLineMismatch(f"line {line} needs its g/h exponents")
    domain = {c for c in range(1, f.order) if c != f.neg(1)}
    ord3 = {int(c) for c in order3_codes(f)}
    conds: list[tuple[str, bool]] = []

    def c(name: str, val) -> bool:
        conds.append((name, bool(val)))
        return bool(val)

    p3, p1, p2 = c("p = 3", p == 3), c("p = 1 mod 3", p % 3 == 1), c("p = 2 mod 3", p % 3 == 2)
    e_even = c("2 | e", e % 2 == 0)
    if line == 1:
        l_even = c("2 | l", l % 2 == 0)
        if p3:
            row = ("p = 3", {1})
        elif p1 or (p2 and e_even and l_even):
            row = ("|c| = 3", ord3)
        else:
            row = ("otherwise", set())
    elif line == 2:
        oi = frobenius_order(f, i)
        not3_oi = c("3 !| |tau^i|", oi % 3)
        not3_lm = c("3 !| l/m", (l // m) % 3)
        either = not3_oi or not3_lm
        i_even, l_even = c("2 | i", i % 2 == 0), c("2 | l", l % 2 == 0)
        im = c("i/m = 1 mod 3", (i // m) % 3 == 1)
        if p3 and either:
            row = ("p = 3, one of 3 !| |tau^i|, 3 !| l/m", {1})
        elif p1 and either:
            row = ("p = 1 mod 3, one of 3 !| |tau^i|, 3 !| l/m", ord3)
        elif p2 and e_even and i_even and l_even and either:
            row = ("p = 2 mod 3, 2 | e, i, l, one of 3 !| |tau^i|, 3 !| l/m", ord3)
        elif not either and im:
            row = ("3 | |tau^i|, 3 | l/m, i/m = 1 mod 3: b^(p^m - 1)", _trace_zero_powers(f, m, 1))
        elif not either:
            row = ("3 | |tau^i|, 3 | l/m, i/m = 2 mod 3: b^(1 - p^m)", _trace_zero_powers(f, m, -1))
        else:
            row = ("otherwise", set())
    elif line == 3:
        row = ("p = 3", {1}) if p3 else ("otherwise", set())
    elif line == 4:
        j_odd, l_even = c("2 !| j", j % 2), c("2 | l", l % 2 == 0)
        if p3:
            row = ("p = 3", {1})
        elif p2 and e_even and j_odd and l_even:
            row = ("p = 2 mod 3, 2 | e, 2 !| j, 2 | l", ord3)
        else:
            row = ("otherwise", set())
    elif line == 5:
        oj_even = c("2 | |tau^j|", frobenius_order(f, j) % 2 == 0)
        i_even, j_odd, l_even = c("2 | i", i % 2 == 0), c("2 !| j", j % 2), c("2 | l", l % 2 == 0)
        if p3:
            row = ("p = 3", {1})
        elif p2 and oj_even and i_even and j_odd and l_even:
            row = ("p = 2 mod 3, 2 | |tau^j|, 2 | i, 2 !| j, 2 | l", ord3)
        else:
            row = ("otherwise", set())
    else:
        raise SpecLineMismatch(f"no row for line {line}")
    case, members = row
    return Table3Result(line, case, frozenset(set(members) & domain), conds)


# -- invariant subspace lattice and quotients -----------------------------------------------


@dataclass
class QuotientTest:
    W: SubspaceV
    minimal: bool
    excluded: bool
    complete: bool
    order: int
    diameter: int | None
    v0_transversal: bool


@dataclass
class SubspaceAnalysis:
    orbits: list[list[int]]
    spans: list[SubspaceV]  # aligned with orbits (the zero orbit has span {})
    lattice: list[SubspaceV]  # proper nonzero invariant subspaces
    tests: list[QuotientTest]


def analyse_subspaces(ctx: VContext, mats: Sequence[np.ndarray], graph: Graph,
                      exclude: Iterable[SubspaceV] = (), graph_diameter: int | None = None) -> SubspaceAnalysis:
    """Orbits of the matrix group on V, their spans, all invariant subspaces, and their quotients."""
    perms = [ctx.image_codes(M) for M in mats]
    orbits = perm_orbits(ctx.order, perms)
    spans = [ctx.span_of_codes(o) if o != [0] else SubspaceV((), "Other") for o in orbits]
    gens_set: dict[linalg.Basis, SubspaceV] = {}
    for s in spans:
        if s.basis:
            gens_set.setdefault(s.basis, s)
    lattice: dict[linalg.Basis, SubspaceV] = dict(gens_set)
    frontier = list(lattice.values())
    while frontier:
        nxt = []
        for a in frontier:
            for b in gens_set.values():
                j = ctx.join(a, b)
                if j.basis not in lattice:
                    lattice[j.basis] = j
                    nxt.append(j)
                    if len(lattice) > MAX_LATTICE:
                        raise BoundExceeded(f"more than {MAX_LATTICE} invariant subspaces")
        frontier = nxt
    proper = sorted((w for w in lattice.values() if w.tag != "Full"), key=lambda w: (w.dim, w.basis))
    minimal_spans = {w.basis for w in gens_set.values() if w.tag != "Full"
                     and not any(o.basis != w.basis and linalg.contains(w.basis, o.basis, ctx.p, ctx.dim)
                                 for o in gens_set.values() if o.tag != "Full")}
    excl = {w.basis for w in exclude}
    v0 = np.arange(ctx.U.order, dtype=np.int64)  # vertices (u, 0)
    tests = []
    for w in proper:
        labels = linalg.coset_labels(w.basis, ctx.p, ctx.digits)
        part = VertexSetPartition.from_labels(labels.tolist())
        qg = quotient(graph, part)
        complete = is_complete(qg)
        diam = diameter(qg, vertex_transitive=True)  # T acts transitively on the quotient
        transversal = len(set(labels[v0].tolist())) == len(part) == ctx.U.order
        tests.append(QuotientTest(w, w.basis in minimal_spans, w.basis in excl, complete, qg.n, diam, transversal))
    return SubspaceAnalysis(orbits, spans, proper, tests)


# -- reports ----------------------------------------------------------------------------------


@dataclass
class ClassificationReport:
    p: int
    d: int
    n: int
    spec: StabilizerSpec
    outcome: str
    witnesses: list[SubspaceV]
    quotient_orders: list[int]
    conditions: list[tuple[str, object]]
    orbit_log: dict[str, str]
    excluded_log: list[tuple[str, bool]] = field(default_factory=list)
    table3: Table3Result | None = None
    direct_c: frozenset[int] = frozenset()
    g0_order: int | None = None
    runtime_ms: float | None = None

    @property
    def k(self) -> int:
        return len(self.witnesses)

    @property
    def line(self) -> int:
        return self.spec.line

    @property
    def quotient_complete(self) -> bool:
        return self.outcome == QUOTIENT_COMPLETE

    def condition(self, name: str):
        for key, val in self.conditions:
            if key == name:
                return val
        raise KeyError(name)

    def to_dict(self, timing: bool = False) -> dict:
        dv = self.spec.derived()
        return {
            "p": self.p, "d": self.d, "n": self.n, "line": self.line,
            "i": dv["i"], "j": dv["j"], "l": dv["l"], "m": dv["m"],
            "outcome": self.outcome, "k": self.k,
            "witnesses": [{"label": w.label, "basis": w.rows()} for w in self.witnesses],
            "quotient_orders": self.quotient_orders,
            "conditions": [[k, _plain(v)] for k, v in self.conditions],
            "orbit_log": dict(self.orbit_log),
            "excluded": [[lab, comp] for lab, comp in self.excluded_log],
            "runtime_ms": round(self.runtime_ms, 3) if timing and self.runtime_ms is not None else None,
        }


def _plain(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, (set, frozenset, list, tuple)):
        return sorted(_plain(x) for x in v)
    return str(v)


def complete_quotients(p: int, d: int, n: int, spec: StabilizerSpec | None = None,
                       graph_bound: int = DEFAULT_MAX_VERTICES, group_bound: int = 10**6,
                       close_g0: bool = False) -> ClassificationReport:
    """Classify the complete normal quotients of lsg(U) under G = T G_0.

    Every proper nonzero G_0-invariant subspace W is tested (minimal ones are
    flagged). The lines V_0, V_inf and V_-1 are tested but never counted.
    """
    t0 = time.perf_counter()
    if spec is None:
        spec = canonical_spec(p, d, n, 1)
    U = spec.U
    if (U.p, U.dim, U.n) != (p, d, n):
        raise SpecLineMismatch(f"spec is over GF({U.p}^{U.field.d})^{U.n}, not p={p} d={d} n={n}")
    if U.order**2 > graph_bound:
        raise BoundExceeded(f"lsg has {U.order ** 2} vertices, bound {graph_bound}")
    G0 = build_G0(spec, close=close_g0, bound=group_bound)
    conds: list[tuple[str, object]] = list(G0.checks)
    ctx = context_for(U)
    mats = [induced_linear_action(z, U) for z in G0.generators]
    graph = _lsg_cached(p, d, graph_bound)
    f = U.field
    excluded = [ctx.subspace(b) for b, (tag, c) in ctx.named.items() if tag == "Vinf" or c in (0, f.neg(1))]
    an = analyse_subspaces(ctx, mats, graph, excluded)

    # orbit log: representative (a, b) -> tag of its span
    orbit_log = {}
    for o, s in zip(an.orbits, an.spans):
        if o == [0]:
            continue
        rep = o[0]
        orbit_log[f"({rep % U.order},{rep // U.order})"] = s.label

    # the orbit-type table against the orbits of (a, ca), a the first basis vector
    t3 = table3_predicate(spec)
    orbit_of = {}
    for k, o in enumerate(an.orbits):
        for v in o:
            orbit_of[v] = k
    direct = set()
    for c in range(1, f.order):
        if c == f.neg(1):
            continue
        s = an.spans[orbit_of[ctx.code(1, U.scale(c, 1))]]
        if s.tag == "Vc" and s.c == c:
            direct.add(c)
    conds += [(name, val) for name, val in t3.conditions]
    conds.append(("table3 case", t3.case))
    conds.append(("table3 predicate", sorted(t3.members)))
    conds.append(("table3 direct", sorted(direct)))
    conds.append(("table3 matches orbits", set(t3.members) == direct))

    # span lemmas
    conds.append(("spans invariant", all(ctx.is_invariant(s, mats) for s in an.spans if s.basis)))
    qind = [s for o, s in zip(an.orbits, an.spans) if o != [0] and not _q_dependent(o[0], ctx)]
    if n >= 2:
        conds.append(("q-independent orbits span V", all(s.tag == "Full" for s in qind)))
    K_rule = _distinct_orbit_rule(spec, ctx)
    if K_rule is not None:
        conds.append(("distinct K-orbits span V", K_rule))

    counted = [t for t in an.tests if not t.excluded]
    for t in an.tests:
        if t.excluded:
            conds.append((f"excluded {t.W.label} complete", t.complete))
    witnesses = [t for t in counted if t.complete]
    if not an.tests:
        outcome = QUASIPRIMITIVE
    elif counted and all(t.complete for t in counted):
        outcome = QUOTIENT_COMPLETE
    elif not counted:
        outcome = NOT_QC
    else:
        outcome = NOT_QC
    if outcome != QUOTIENT_COMPLETE:
        witnesses = []
    conds.append(("witnesses minimal", all(t.minimal for t in witnesses)))
    conds.append(("quotient orders = p^d", all(t.order == p**d for t in witnesses)))
    conds.append(("V_0 is a transversal", all(t.v0_transversal for t in witnesses)))
    conds.append(("quotient diameter <= 2", all(t.diameter is not None and t.diameter <= 2 for t in an.tests)))
    rep = ClassificationReport(
        p, d, n, spec, outcome, [t.W for t in witnesses], [t.order for t in witnesses], conds, orbit_log,
        [(t.W.label, t.complete) for t in an.tests if t.excluded], t3, frozenset(direct), G0.order,
        (time.perf_counter() - t0) * 1000.0,
    )
    return rep


def _q_dependent(code: int, ctx: VContext) -> bool:
    """True if (a, b) lies in some V_c or in V_inf."""
    U = ctx.U
    a, b = code % U.order, code // U.order
    if a == 0 or b == 0:
        return True
    ca, cb = U.coords(a), U.coords(b)
    k = next(t for t, x in enumerate(ca) if x)
    f = U.field
    c = f.div(cb[k], ca[k])
    return U.scale(c, a) == b


def _distinct_orbit_rule(spec: StabilizerSpec, ctx: VContext, max_orbits: int = 200) -> bool | None:
    """Pairs of distinct K-orbits on V# span V, when K is transitive on U#."""
    U = spec.U
    from .groups import is_transitive_on_nonzero

    if not spec.K_gens or not is_transitive_on_nonzero(spec.K_gens, U):
        return None
    mats = [induced_linear_action(Autoparatopism.diagonal(k.perm_tuple(U)), U) for k in spec.K_gens]
    orbs = [o for o in perm_orbits(ctx.order, [ctx.image_codes(M) for M in mats]) if o != [0]]
    if len(orbs) > max_orbits:
        return None
    spans = [ctx.span_of_codes(o) for o in orbs]
    return all(ctx.join(spans[s], spans[t]).tag == "Full" for s in range(len(spans)) for t in range(s + 1, len(spans)))


# -- theorem checks -----------------------------------------------------------------------------


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


SCAN_LINES = (1, 2, 4, 5)


def canonical_specs(p: int, d: int, lines: Iterable[int] = SCAN_LINES, include_n: bool = True) -> list[StabilizerSpec]:
    """Every canonical spec for (p, d) that passes the coset and transitivity checks.

    Lines 1 and 2 for every divisor n of d; lines 4 and 5 (square
    determinants, q odd) for n = 1 only. Line 3 is left out of the default
    family but can be requested through ``lines``.
    """
    out = []
    ns = divisors(d) if include_n else [1]
    for n in ns:
        e = d // n
        for line in lines:
            if n > 1 and line > 2:
                continue
            if line in (4, 5) and p == 2:
                continue
            ls = divisors(e)
            is_ = range(1, e + 1) if line in (2, 5) else [None]
            js = range(1, e + 1) if line in (4, 5) else [None]
            for l in ls:
                for i in is_:
                    for j in js:
                        try:
                            s = canonical_spec(p, d, n, line, i=i, j=j, l=l)
                            check_spec(s)
                        except (GoursatViolation, NotTransitive, SpecLineMismatch):
                            continue
                        out.append(s)
    return out


def theorem_1_1_condition(p: int, d: int) -> bool:
    return p % 3 != 2 or d % 2 == 0 or d % 3 == 0


@dataclass
class Thm11Result:
    p: int
    d: int
    exists_qc: bool
    expected: bool
    witness: StabilizerSpec | None
    reports: list[ClassificationReport]
    notes: list[str]

    @property
    def ok(self) -> bool:
        return self.exists_qc == self.expected


def verify_thm_1_1(p: int, d: int, extra_specs: Sequence[StabilizerSpec] = (), full_scan: bool = True,
                   graph_bound: int = DEFAULT_MAX_VERTICES) -> Thm11Result:
    """Look for a quotient-complete arc-transitive G_0 for lsg(C_p^d).

    Tries line 1 with l = d, then line 2 with i = 1 and l = d (or l = 3 when
    l = d breaks the coset condition), then the extra specs, and finally, if
    nothing was found and ``full_scan`` is set, every canonical spec.
    """
    notes = []
    tried = []
    fam = [("line 1, l = d", dict(line=1, l=d))]
    if d % 3 == 0:
        fam.append(("line 2, i = 1, l = d", dict(line=2, i=1, l=d)))
    specs = []
    for name, kw in fam:
        try:
            s = canonical_spec(p, d, 1, **kw)
            check_spec(s)
            specs.append(s)
        except GoursatViolation:
            if kw["line"] == 2:
                s = canonical_spec(p, d, 1, line=2, i=1, l=3)
                check_spec(s)
                specs.append(s)
                notes.append(f"{name} violates the coset conditions; used l = 3")
    specs += list(extra_specs)
    witness = None
    for s in specs:
        r = complete_quotients(p, d, s.U.n, s, graph_bound)
        tried.append(r)
        if r.quotient_complete:
            witness = s
            break
    if witness is None and full_scan:
        for s in canonical_specs(p, d):
            r = complete_quotients(p, d, s.U.n, s, graph_bound)
            tried.append(r)
            if r.quotient_complete:
                witness = s
                notes.append("found only by the full canonical scan")
                break
    return Thm11Result(p, d, witness is not None, theorem_1_1_condition(p, d), witness, tried, notes)


def thm_1_2_ok(p: int, d: int, k: int, orders: Sequence[int]) -> bool:
    kk = (k == 1 or k >= 3) if p == 3 else k >= 2
    return kk and all(o == p**d for o in orders)


def verify_thm_1_2(reports: Iterable[ClassificationReport]) -> bool:
    return all(thm_1_2_ok(r.p, r.d, r.k, r.quotient_orders) for r in reports if r.quotient_complete)


def scan(pmax: int, dmax: int, graph_bound: int = DEFAULT_MAX_VERTICES, workers: int = 1) -> list[ClassificationReport]:
    """Classify every canonical spec with p <= pmax, d <= dmax and p^(2d) within the bound."""
    from .ffield import is_prime

    jobs = []
    for p in range(2, pmax + 1):
        if not is_prime(p):
            continue
        for d in range(1, dmax + 1):
            if p ** (2 * d) > graph_bound:
                break
            for s in canonical_specs(p, d):
                jobs.append((p, d, s.U.n, s.line, s.i, s.j, s.ell))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(_scan_job, jobs, [graph_bound] * len(jobs)))
    return [_scan_job(j, graph_bound) for j in jobs]


def _scan_job(job, graph_bound: int) -> ClassificationReport:
    p, d, n, line, i, j, l = job
    s = canonical_spec(p, d, n, line, i=i, j=j, l=l)
    return complete_quotients(p, d, n, s, graph_bound)


# -- exhaustive normal subgroups (tiny cases) ------------------------------------------------------


@dataclass
class CrossCheck:
    group_order: int
    n_normal: int
    complete_partitions: set
    subspace_partitions: set

    @property
    def agrees(self) -> bool:
        return self.complete_partitions == self.subspace_partitions


def normal_subgroup_crosscheck(spec: StabilizerSpec, bound: int = 1000) -> CrossCheck:
    """Enumerate all normal subgroups of G = T G_0 on lsg(U) and compare complete quotients.

    Normal subgroups are the joins of normal closures of single elements.
    """
    U = spec.U
    G0 = build_G0(spec, close=False)
    graph = lsg(U)
    nv = graph.n
    gens = [tuple(int(v) for v in z.vertex_permutation(U)) for z in G0.generators]
    from .groups import Translation

    for u in U.basis():
        for a, b in ((u, 0), (0, u)):
            gens.append(tuple(int(v) for v in Translation(a, b).autoparatopism(U).vertex_permutation(U)))
    G = close_group(gens, bound=bound)
    ident = tuple(range(nv))

    def ncl(els) -> frozenset:
        conj = set()
        for x in els:
            for g in G:
                conj.add(compose(compose(perm_inverse(g), x), g))
        return frozenset(close_group(sorted(conj), identity=ident, bound=bound))

    closures = {}
    for x in G:
        if x not in closures:
            closures[x] = ncl([x])
    normals = {frozenset([ident])} | set(closures.values())
    frontier = list(normals)
    while frontier:
        nxt = []
        for a in frontier:
            for b in set(closures.values()):
                if b <= a:
                    continue
                j = frozenset(close_group(sorted(a | b), identity=ident, bound=bound))
                if j not in normals:
                    normals.add(j)
                    nxt.append(j)
        frontier = nxt
    found = set()
    for N in normals:
        if len(N) == 1:
            continue
        part = VertexSetPartition.from_orbits(nv, list(N))
        if len(part) > 1 and is_complete(quotient(graph, part)):
            found.add(part.blocks)
    rep = complete_quotients(U.p, U.dim, U.n, spec)
    ctx = context_for(U)
    sub = set()
    for w in rep.witnesses:
        sub.add(VertexSetPartition.from_labels(linalg.coset_labels(w.basis, ctx.p, ctx.digits).tolist()).blocks)
    return CrossCheck(len(G), len(normals), found, sub)


# -- arc-transitivity of lsg(H) ----------------------------------------------------------------


@dataclass
class ArcTransitivity:
    name: str
    order: int
    elementary_abelian: bool
    vertex_transitive: bool
    arc_transitive: bool

    @property
    def matches(self) -> bool:
        return self.arc_transitive == self.elementary_abelian


def lsg_stabilizer_generators(H) -> list[tuple[int, ...]]:
    """Vertex permutations of x, y and diag(Aut(H)); they fix the cell (e, e, e)."""
    from .groups import make_x_y

    x, y = make_x_y(H)
    zs = [x, y] + [Autoparatopism.diagonal(a) for a in H.automorphism_generators()]
    return [tuple(int(v) for v in z.vertex_permutation(H)) for z in zs]


def _multiplication_perms(H) -> list[tuple[int, ...]]:
    """Cells (a, b, ab) -> (ua, bv, uabv) for u, v running over generators of H."""
    n = H.order
    a = np.tile(np.arange(n), n)
    b = np.repeat(np.arange(n), n)
    out = []
    for u in H.generators():
        out.append(tuple(int(v) for v in H.mul_vec(u, a) + n * b))
        out.append(tuple(int(v) for v in a + n * H.mul_vec(b, u)))
    return out


def lsg_arc_transitivity(H, name: str = "", bound: int = DEFAULT_MAX_VERTICES) -> ArcTransitivity:
    from .graphs import is_arc_transitive

    g = lsg(H, bound)
    base = H.identity * (1 + H.order)
    vt = len(perm_orbits(g.n, _multiplication_perms(H))) == 1
    at = vt and is_arc_transitive(g, lsg_stabilizer_generators(H), base)
    return ArcTransitivity(name or H.name, H.order, H.is_elementary_abelian, vt, at)
