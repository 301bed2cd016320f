"""Finite simple graphs on bitset rows, latin square graphs, Cayley graphs and quotients."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import AsymmetricConnectionSet, BoundExceeded, IdentityInS, InvalidPartition, NotAStabilizer
from .groups import perm_orbits

DEFAULT_MAX_VERTICES = 10**4
ISO_MAX_VERTICES = 2500


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _row_from_array(idx: np.ndarray, n: int) -> int:
    row = np.zeros(n, dtype=bool)
    row[idx] = True
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


class Graph:
    """An immutable simple graph; ``rows[v]`` is the neighbourhood of v as an int bitset."""

    def __init__(self, n: int, rows: Sequence[int], labels: Sequence | None = None, check: bool = True):
        self.n = n
        self.rows = tuple(rows)
        self.labels = list(labels) if labels is not None else None
        self._nbrs: list[list[int]] | None = None
        if check:
            for v in range(n):
                r = self.rows[v]
                if r >> v & 1:
                    raise ValueError(f"loop at vertex {v}")
                if r >> n:
                    raise ValueError("neighbour out of range")
            for u, v in self.edges():
                if not self.rows[v] >> u & 1:
                    raise ValueError("adjacency is not symmetric")

    @property
    def n_vertices(self) -> int:
        return self.n

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u != v:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return cls(n, rows, labels)

    @classmethod
    def from_neighbor_array(cls, nbrs: np.ndarray, labels=None, check: bool = True) -> Graph:
        """Rows from an (n, k) array of neighbour indices (duplicates allowed)."""
        n = nbrs.shape[0]
        return cls(n, [_row_from_array(nbrs[v], n) for v in range(n)], labels, check)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)], check=False)

    def neighbors(self, v: int) -> list[int]:
        if self._nbrs is None:
            self._nbrs = [list(_bits(r)) for r in self.rows]
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def n_edges(self) -> int:
        return sum(self.degrees()) // 2

    def relabel(self, perm: Sequence[int]) -> Graph:
        """The graph with vertex v renamed perm[v]."""
        rows = [0] * self.n
        for u, v in self.edges():
            a, b = perm[u], perm[v]
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        labels = None
        if self.labels is not None:
            labels = [None] * self.n
            for v in range(self.n):
                labels[perm[v]] = self.labels[v]
        return Graph(self.n, rows, labels, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.n_edges})"

    # exports
    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges())

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            if self.labels is not None:
                lines.append(f'  {v} [label="{_label_text(self.labels[v])}"];')
            else:
                lines.append(f"  {v};")
        lines += [f"  {u} -- {v};" for u, v in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def labels_json(self) -> str:
        labels = self.labels if self.labels is not None else list(range(self.n))
        return json.dumps({str(v): _jsonable(l) for v, l in enumerate(labels)}, sort_keys=False)


def _jsonable(label):
    if isinstance(label, (tuple, list)):
        return [_jsonable(x) for x in label]
    if isinstance(label, (np.integer,)):
        return int(label)
    return label


def _label_text(label) -> str:
    if isinstance(label, (tuple, list)):
        return "(" + ",".join(_label_text(x) for x in label) + ")"
    return str(label)


# -- constructions ------------------------------------------------------------------


def lsg(H, bound: int = DEFAULT_MAX_VERTICES) -> Graph:
    """Latin square graph of the Cayley table of H.

    Vertex a + |H| b is the triple (a, b, ab); two triples are adjacent when
    they agree in exactly one coordinate.
    """
    n = H.order
    N = n * n
    if N > bound:
        raise BoundExceeded(f"lsg(H) has {N} vertices, bound {bound}")
    a = np.tile(np.arange(n), n)
    b = np.repeat(np.arange(n), n)
    prod = np.asarray(H.mul_vec(a, b))
    same_a = [0] * n
    same_b = [0] * n
    same_ab = [0] * n
    for v in range(N):
        bit = 1 << v
        same_a[a[v]] |= bit
        same_b[b[v]] |= bit
        same_ab[prod[v]] |= bit
    # two coordinates of a triple determine the third, so the three masks meet only at v
    rows = [(same_a[a[v]] | same_b[b[v]] | same_ab[prod[v]]) ^ (1 << v) for v in range(N)]
    labels = [(int(a[v]), int(b[v]), int(prod[v])) for v in range(N)]
    return Graph(N, rows, labels, check=False)


def cayley(V, S: Iterable[int], bound: int = DEFAULT_MAX_VERTICES) -> Graph:
    """Cay(V, S) for an abelian group V on codes: s ~ t iff s - t in S."""
    S = sorted(set(int(s) for s in S))
    if V.order > bound:
        raise BoundExceeded(f"Cayley graph has {V.order} vertices, bound {bound}")
    if V.identity in S:
        raise IdentityInS("0 lies in the connection set")
    Sset = set(S)
    for s in S:
        if V.inv(s) not in Sset:
            raise AsymmetricConnectionSet(f"{s} in S but its inverse is not")
    verts = np.arange(V.order)
    if not S:
        return Graph(V.order, [0] * V.order, list(range(V.order)), check=False)
    nbrs = np.stack([V.mul_vec(verts, np.full_like(verts, s)) for s in S], axis=1)
    return Graph.from_neighbor_array(nbrs, list(range(V.order)), check=False)


# -- partitions and quotients ------------------------------------------------------------


@dataclass(frozen=True)
class VertexSetPartition:
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> VertexSetPartition:
        bl = [tuple(sorted(int(v) for v in b)) for b in blocks]
        bl = [b for b in bl if b]
        seen = [False] * n
        for b in bl:
            for v in b:
                if not 0 <= v < n or seen[v]:
                    raise InvalidPartition(f"vertex {v} repeated or out of range")
                seen[v] = True
        if not all(seen):
            raise InvalidPartition("blocks do not cover every vertex")
        return cls(tuple(sorted(bl)))

    @classmethod
    def from_labels(cls, labels: Sequence) -> VertexSetPartition:
        groups: dict = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab if not isinstance(lab, np.integer) else int(lab), []).append(v)
        return cls.from_blocks(len(labels), groups.values())

    @classmethod
    def from_orbits(cls, n: int, gens: Sequence[Sequence[int]]) -> VertexSetPartition:
        return cls.from_blocks(n, perm_orbits(n, gens))

    @classmethod
    def singletons(cls, n: int) -> VertexSetPartition:
        return cls(tuple((v,) for v in range(n)))

    @property
    def n_vertices(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self) -> list[int]:
        out = [0] * self.n_vertices
        for k, b in enumerate(self.blocks):
            for v in b:
                out[v] = k
        return out


def quotient(g: Graph, part: VertexSetPartition) -> Graph:
    """Blocks adjacent iff some edge joins them; edges inside a block are dropped."""
    if part.n_vertices != g.n:
        raise InvalidPartition(f"partition covers {part.n_vertices} vertices, graph has {g.n}")
    masks = []
    for b in part.blocks:
        m = 0
        for v in b:
            m |= 1 << v
        masks.append(m)
    reach = []
    for b in part.blocks:
        r = 0
        for v in b:
            r |= g.rows[v]
        reach.append(r)
    m = len(part.blocks)
    rows = [0] * m
    for s in range(m):
        for t in range(s + 1, m):
            if reach[s] & masks[t]:
                rows[s] |= 1 << t
                rows[t] |= 1 << s
    return Graph(m, rows, [b[0] for b in part.blocks], check=False)


# -- predicates ----------------------------------------------------------------------


@dataclass(frozen=True)
class GraphPredicates:
    connected: bool
    diameter: int | None
    complete: bool
    srg_params: tuple[int, int, int, int] | None


def eccentricity(g: Graph, s: int) -> int | None:
    """Largest BFS distance from s, or None if some vertex is unreachable."""
    full = (1 << g.n) - 1
    seen = frontier = 1 << s
    depth = 0
    while True:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.rows[v]
        nxt &= ~seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
        depth += 1
    return depth if seen == full else None


def is_complete(g: Graph) -> bool:
    return all(r.bit_count() == g.n - 1 for r in g.rows)


def diameter(g: Graph, vertex_transitive: bool = False) -> int | None:
    if g.n == 0:
        return None
    if vertex_transitive:
        return eccentricity(g, 0)
    best = 0
    for s in range(g.n):
        e = eccentricity(g, s)
        if e is None:
            return None
        best = max(best, e)
    return best


def srg_parameters(g: Graph, vertex_transitive: bool = False) -> tuple[int, int, int, int] | None:
    """(v, k, lambda, mu) if g is strongly regular and neither complete nor edgeless."""
    n = g.n
    if n < 2:
        return None
    k = g.degree(0)
    if any(r.bit_count() != k for r in g.rows) or k in (0, n - 1):
        return None
    lam = mu = None
    sources = range(1) if vertex_transitive else range(n)
    for u in sources:
        ru = g.rows[u]
        for v in range(n):
            if v == u:
                continue
            c = (ru & g.rows[v]).bit_count()
            if ru >> v & 1:
                if lam is None:
                    lam = c
                elif c != lam:
                    return None
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    return None
    return (n, k, lam, mu)


def predicates(g: Graph, vertex_transitive: bool = False) -> GraphPredicates:
    """Connectivity, diameter, completeness and SRG parameters.

    ``vertex_transitive`` lets BFS and the SRG scan start from vertex 0 only.
    """
    diam = diameter(g, vertex_transitive)
    return GraphPredicates(diam is not None, diam, is_complete(g), srg_parameters(g, vertex_transitive))


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(g.n)):
        return False
    return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges())


def is_arc_transitive(g: Graph, stabilizer_gens: Sequence[Sequence[int]], base_vertex: int) -> bool:
    """Orbit of one neighbour of the base vertex under the stabilizer generators equals the neighbourhood."""
    gens = [list(map(int, s)) for s in stabilizer_gens]
    for s in gens:
        if s[base_vertex] != base_vertex:
            raise NotAStabilizer("a generator moves the base vertex")
        if not is_automorphism(g, s):
            raise NotAStabilizer("a generator is not a graph automorphism")
    nb = g.neighbors(base_vertex)
    if not nb:
        return True
    orb = {nb[0]}
    stack = [nb[0]]
    while stack:
        v = stack.pop()
        for s in gens:
            w = s[v]
            if w not in orb:
                orb.add(w)
                stack.append(w)
    return len(orb) == len(nb)


# -- isomorphism ---------------------------------------------------------------------


def _signatures(g: Graph) -> list[tuple]:
    deg = g.degrees()
    return [(deg[v], tuple(sorted(deg[w] for w in g.neighbors(v)))) for v in range(g.n)]


def is_isomorphism(g1: Graph, g2: Graph, f: Sequence[int]) -> bool:
    if g1.n != g2.n or sorted(f) != list(range(g1.n)) or g1.n_edges != g2.n_edges:
        return False
    return all(g2.has_edge(f[u], f[v]) for u, v in g1.edges())


def _refine(rows: Sequence[int], cells: list[int], queue: list[int], half: int) -> list[int] | None:
    """Equitable refinement of the cells of a disjoint union; None if some cell is unbalanced."""
    while queue:
        S = queue.pop()
        out = []
        for C in cells:
            if not C & (C - 1):
                return None  # a lone vertex has no partner in the other graph
            groups: dict[int, int] = {}
            for v in _bits(C):
                k = (rows[v] & S).bit_count()
                groups[k] = groups.get(k, 0) | (1 << v)
            if len(groups) == 1:
                out.append(C)
                continue
            for k in sorted(groups):
                sub = groups[k]
                if (sub & half).bit_count() * 2 != sub.bit_count():
                    return None
                out.append(sub)
                queue.append(sub)
        cells = out
    return cells


def isomorphic(g1: Graph, g2: Graph, bound: int = ISO_MAX_VERTICES) -> list[int] | None:
    """A vertex bijection f with u ~ v iff f(u) ~ f(v), or None.

    Colour refinement runs on the disjoint union of the two graphs, so a
    colour class is a set of candidate images. Vertices are individualized
    in pairs (one from each graph) until every class has one vertex of each;
    the resulting map is then certified edge by edge.
    """
    if max(g1.n, g2.n) > bound:
        raise BoundExceeded(f"isomorphism search limited to {bound} vertices")
    n = g1.n
    if n != g2.n or g1.n_edges != g2.n_edges:
        return None
    if n == 0:
        return []
    s1, s2 = _signatures(g1), _signatures(g2)
    if sorted(s1) != sorted(s2):
        return None
    rows = list(g1.rows) + [r << n for r in g2.rows]
    half = (1 << n) - 1
    by_sig: dict = {}
    for v, s in enumerate(s1 + s2):
        by_sig[s] = by_sig.get(s, 0) | (1 << v)
    cells = [by_sig[s] for s in sorted(by_sig)]
    cells = _refine(rows, cells, list(cells), half)
    if cells is None:
        return None

    def search(cells: list[int]) -> list[int] | None:
        target = None
        for idx, C in enumerate(cells):
            if C.bit_count() > 2 and (target is None or C.bit_count() < cells[target].bit_count()):
                target = idx
        if target is None:
            f = [0] * n
            for C in cells:
                lo = C & half
                f[lo.bit_length() - 1] = (C >> n).bit_length() - 1
            return f if is_isomorphism(g1, g2, f) else None
        C = cells[target]
        v = (C & half & -(C & half)).bit_length() - 1
        for x in _bits(C >> n):
            pair = (1 << v) | (1 << (x + n))
            trial = cells[:target] + [pair, C ^ pair] + cells[target + 1:]
            refined = _refine(rows, trial, [pair], half)
            if refined is not None:
                f = search(refined)
                if f is not None:
                    return f
        return None

    return search(cells)


def to_networkx(g: Graph):
    """Convert for cross-checks; requires networkx."""
    import networkx as nx

    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G
