"""Text format for user-supplied stabilizer generators.

One generator per line; ``#`` starts a comment. A line may begin with a role
``K`` (default), ``g`` or ``h``, followed by either

    matrix p e n a11 a12 ... ann frob i

with entries as GF(p^e) codes, or

    perm u0 u1 ... u_{|U|-1}

giving the image code of every vector of U = GF(p^e)^n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .ffield import make_field
from .groups import SemilinearMap, VectorSpace


class GensFileError(ValueError):
    pass


@dataclass
class Generators:
    K: list[SemilinearMap] = field(default_factory=list)
    g: SemilinearMap | None = None
    h: SemilinearMap | None = None


def parse_gens(text: str, U: VectorSpace) -> Generators:
    out = Generators()
    f = U.field
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        role = "K"
        if toks[0] in ("K", "g", "h"):
            role, toks = toks[0], toks[1:]
        try:
            if toks[0] == "matrix":
                p, e, n = (int(t) for t in toks[1:4])
                if (p, e, n) != (f.p, f.d, U.n):
                    raise GensFileError(f"line {lineno}: matrix over GF({p}^{e})^{n}, expected GF({f.p}^{f.d})^{U.n}")
                body = toks[4:]
                if len(body) != n * n + 2 or body[n * n] != "frob":
                    raise GensFileError(f"line {lineno}: expected {n * n} entries then 'frob i'")
                ents = [int(t) for t in body[: n * n]]
                if any(not 0 <= v < f.order for v in ents):
                    raise GensFileError(f"line {lineno}: entry outside GF({f.order})")
                mat = tuple(tuple(ents[r * n:(r + 1) * n]) for r in range(n))
                z = SemilinearMap(mat, int(body[-1]), make_field(p, e))
            elif toks[0] == "perm":
                imgs = [int(t) for t in toks[1:]]
                if len(imgs) != U.order or sorted(imgs) != list(range(U.order)):
                    raise GensFileError(f"line {lineno}: perm must list a permutation of {U.order} codes")
                z = SemilinearMap.from_permutation(imgs, U)
            else:
                raise GensFileError(f"line {lineno}: unknown generator kind {toks[0]!r}")
        except GensFileError:
            raise
        except (ValueError, IndexError) as exc:
            raise GensFileError(f"line {lineno}: {exc}") from exc
        if role == "K":
            out.K.append(z)
        elif role == "g":
            out.g = z
        else:
            out.h = z
    return out


def load_gens(path: str | Path, U: VectorSpace) -> Generators:
    return parse_gens(Path(path).read_text(), U)


def format_gens(gens: Generators) -> str:
    lines = []
    for role, zs in (("K", gens.K), ("g", [gens.g] if gens.g else []), ("h", [gens.h] if gens.h else [])):
        for z in zs:
            f = z.field
            ents = " ".join(str(v) for row in z.matrix for v in row)
            lines.append(f"{role} matrix {f.p} {f.d} {z.n} {ents} frob {z.auto}")
    return "\n".join(lines) + "\n"
