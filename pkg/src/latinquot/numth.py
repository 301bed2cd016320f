"""Closed forms for three gcd identities of the shape (a^r -+ 1, a^(2s) + a^s + 1).

Each closed form has a literal Euclidean oracle (:func:`oracle`) that
evaluates both operands exactly and takes their gcd.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .errors import ArgumentOutOfRange

MAX_BITS = 127


class Part(enum.Enum):
    MinusPlus = "a^r-1, a^s+1"
    MinusTri = "a^r-1, a^2s+a^s+1"
    PlusTri = "a^r+1, a^2s+a^s+1"


@dataclass(frozen=True)
class GcdCase:
    a: int
    r: int
    s: int
    part: Part
    value: int
    branch: str


def _check(a: int, r: int, s: int) -> None:
    if a < 2 or r < 1 or s < 1:
        raise ArgumentOutOfRange(f"need a >= 2, r >= 1, s >= 1; got ({a}, {r}, {s})")


def operands(part: Part, a: int, r: int, s: int) -> tuple[int, int]:
    """The two integers whose gcd the closed form describes."""
    _check(a, r, s)
    left = a**r - 1 if part in (Part.MinusPlus, Part.MinusTri) else a**r + 1
    right = a**s + 1 if part is Part.MinusPlus else a ** (2 * s) + a**s + 1
    if max(left, right).bit_length() > MAX_BITS:
        raise ArgumentOutOfRange(f"operands for ({a}, {r}, {s}) exceed {MAX_BITS} bits")
    return left, right


def oracle(part: Part, a: int, r: int, s: int) -> int:
    """Euclid on the literally evaluated pair."""
    x, y = operands(part, a, r, s)
    while y:
        x, y = y, x % y
    return x


def gcd_minus_plus(a: int, r: int, s: int) -> GcdCase:
    _check(a, r, s)
    g = gcd(r, s)
    if (r // g) % 2 == 0:
        value, branch = a**g + 1, "r/(r,s) even"
    elif a % 2:
        value, branch = 2, "r/(r,s) odd, a odd"
    else:
        value, branch = 1, "r/(r,s) odd, a even"
    return GcdCase(a, r, s, Part.MinusPlus, value, branch)


def gcd_minus_tri(a: int, r: int, s: int) -> GcdCase:
    """(a^r - 1, a^2s + a^s + 1).

    The first case fires whenever 3 | r/(r,s), whatever the parity of
    s/(r,s). When s/(r,s) is odd the branch label says so, since the
    textbook statement of this identity adds a parity condition that the
    Euclidean oracle refutes (e.g. a=2, r=6, s=2 gives 21).
    """
    _check(a, r, s)
    g = gcd(r, s)
    if (r // g) % 3 == 0:
        value = a ** (2 * g) + a**g + 1
        branch = "3 | r/(r,s)"
        if (s // g) % 2:
            branch += "; s/(r,s) odd (stated parity condition not required)"
    elif a % 3 == 1:
        value, branch = 3, "3 !| r/(r,s), a = 1 mod 3"
    elif a % 3 == 2 and r % 2 == 0 and s % 2 == 0:
        value, branch = 3, "3 !| r/(r,s), a = 2 mod 3, r and s even"
    else:
        value, branch = 1, "otherwise"
    return GcdCase(a, r, s, Part.MinusTri, value, branch)


def gcd_minus_tri_as_stated(a: int, r: int, s: int) -> int:
    """Value predicted by the literal statement, parity condition included."""
    _check(a, r, s)
    g = gcd(r, s)
    if (r // g) % 3 == 0 and (s // g) % 2 == 0:
        return a ** (2 * g) + a**g + 1
    if (r // g) % 3 and (a % 3 == 1 or (a % 3 == 2 and r % 2 == 0 and s % 2 == 0)):
        return 3
    return 1


def gcd_plus_tri(a: int, r: int, s: int) -> GcdCase:
    _check(a, r, s)
    g = gcd(r, s)
    s_even = (s // g) % 2 == 0
    if (r // g) % 3 == 0 and s_even:
        value, branch = a ** (2 * g) - a**g + 1, "3 | r/(r,s), s/(r,s) even"
    elif (r // g) % 3 and s_even and r % 2 == 1 and a % 3 == 2:
        value, branch = 3, "3 !| r/(r,s), s/(r,s) even, r odd, a = 2 mod 3"
    else:
        value, branch = 1, "otherwise"
    return GcdCase(a, r, s, Part.PlusTri, value, branch)


CLOSED_FORMS = {
    Part.MinusPlus: gcd_minus_plus,
    Part.MinusTri: gcd_minus_tri,
    Part.PlusTri: gcd_plus_tri,
}


@dataclass
class GridResult:
    checked: int
    failures: list[tuple[Part, int, int, int, int, int]]  # part, a, r, s, closed, oracle
    stated_condition_mismatches: list[tuple[int, int, int, int, int]]  # a, r, s, stated, oracle

    @property
    def ok(self) -> bool:
        return not self.failures


def check_grid(amax: int = 9, rmax: int = 12, smax: int = 12) -> GridResult:
    """Compare every closed form with the oracle on [2, amax] x [1, rmax] x [1, smax]."""
    checked = 0
    failures = []
    stated = []
    for a in range(2, amax + 1):
        for r in range(1, rmax + 1):
            for s in range(1, smax + 1):
                for part, fn in CLOSED_FORMS.items():
                    truth = oracle(part, a, r, s)
                    got = fn(a, r, s).value
                    checked += 1
                    if got != truth:
                        failures.append((part, a, r, s, got, truth))
                    if part is Part.MinusTri:
                        lit = gcd_minus_tri_as_stated(a, r, s)
                        if lit != truth:
                            stated.append((a, r, s, lit, truth))
    return GridResult(checked, failures, stated)
