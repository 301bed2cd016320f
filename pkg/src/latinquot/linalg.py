"""Row-echelon linear algebra over GF(p) for small dimensions.

Vectors are tuples of ints in [0, p). Subspaces are represented by their
reduced row-echelon basis, which is unique, so two subspaces are equal
exactly when their bases are equal tuples.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

Vector = tuple[int, ...]
Basis = tuple[Vector, ...]


def digits(code: int, p: int, n: int) -> Vector:
    out = []
    for _ in range(n):
        code, r = divmod(code, p)
        out.append(r)
    return tuple(out)


def from_digits(vec: Sequence[int], p: int) -> int:
    code, w = 0, 1
    for c in vec:
        code += (c % p) * w
        w *= p
    return code


def digit_matrix(p: int, n: int) -> np.ndarray:
    """(p^n, n) array whose row k is the digit vector of code k."""
    codes = np.arange(p**n, dtype=np.int64)
    return np.stack([(codes // p**t) % p for t in range(n)], axis=1)


class Echelon:
    """Incrementally built echelon basis; ``add`` reports whether the rank grew."""

    def __init__(self, p: int, dim: int):
        self.p = p
        self.dim = dim
        self._rows: dict[int, list[int]] = {}  # pivot column -> row with 1 at pivot

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Iterable[int]) -> list[int]:
        p = self.p
        v = [int(x) % p for x in vec]
        for col in sorted(self._rows):
            c = v[col]
            if c:
                row = self._rows[col]
                v = [(a - c * b) % p for a, b in zip(v, row)]
        return v

    def add(self, vec: Iterable[int]) -> bool:
        v = self.reduce(vec)
        for col, c in enumerate(v):
            if c:
                inv = pow(c, self.p - 2, self.p)
                self._rows[col] = [a * inv % self.p for a in v]
                return True
        return False

    def contains(self, vec: Iterable[int]) -> bool:
        return not any(self.reduce(vec))

    def basis(self) -> Basis:
        """The reduced row-echelon basis (canonical)."""
        p = self.p
        cols = sorted(self._rows)
        rows = {c: list(self._rows[c]) for c in cols}
        for c in reversed(cols):
            for c2 in cols:
                if c2 != c and rows[c2][c]:
                    f = rows[c2][c]
                    rows[c2] = [(a - f * b) % p for a, b in zip(rows[c2], rows[c])]
        return tuple(tuple(rows[c]) for c in cols)


def rref(vectors: Iterable[Sequence[int]], p: int, dim: int) -> Basis:
    e = Echelon(p, dim)
    for v in vectors:
        if e.rank == dim:
            break
        e.add(v)
    return e.basis()


def join(a: Basis, b: Basis, p: int, dim: int) -> Basis:
    return rref(list(a) + list(b), p, dim)


def contains(big: Basis, small: Basis, p: int, dim: int) -> bool:
    """True if the span of ``small`` lies inside the span of ``big``."""
    e = Echelon(p, dim)
    for v in big:
        e.add(v)
    return all(e.contains(v) for v in small)


def coset_labels(basis: Basis, p: int, digits_arr: np.ndarray) -> np.ndarray:
    """Reduce every row of ``digits_arr`` modulo the span; equal rows = same coset.

    Returns the integer code of each reduced vector.
    """
    work = digits_arr.copy()
    for row in basis:
        pivot = next(k for k, x in enumerate(row) if x)
        coef = work[:, pivot].copy()
        work = (work - np.outer(coef, np.array(row, dtype=np.int64))) % p
    weights = p ** np.arange(work.shape[1], dtype=np.int64)
    return work @ weights


def mat_apply_codes(mat: np.ndarray, p: int, digits_arr: np.ndarray) -> np.ndarray:
    """Image codes of every row vector under v -> v @ mat over GF(p)."""
    img = (digits_arr @ mat) % p
    weights = p ** np.arange(img.shape[1], dtype=np.int64)
    return img @ weights


def rref_array(rows: np.ndarray, p: int) -> Basis:
    """Reduced row-echelon basis of the span of the rows of an integer array."""
    M = np.array(rows, dtype=np.int64) % p
    if M.ndim != 2:
        raise ValueError("expected a 2-d array")
    k, dim = M.shape
    r = 0
    for col in range(dim):
        if r == k:
            break
        nz = np.nonzero(M[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = M[r] * pow(int(M[r, col]), p - 2, p) % p
        coef = M[:, col].copy()
        coef[r] = 0
        M = (M - np.outer(coef, M[r])) % p
        r += 1
    return tuple(tuple(int(v) for v in row) for row in M[:r])
