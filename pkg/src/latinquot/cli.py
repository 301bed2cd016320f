"""Command-line front end.

Exit codes: 0 ok, 1 a check failed, 2 invalid flags or parameters,
3 GoursatViolation, 4 NotTransitive, 5 BoundExceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import classify, constructions, report, verify
from .errors import BoundExceeded, GoursatViolation, NotTransitive
from .ffield import load_modulus_overrides, make_field, prime_power
from .gensfile import load_gens
from .groups import StabilizerSpec, VectorSpace, canonical_spec, check_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GOURSAT, EXIT_TRANSITIVE, EXIT_BOUND = 0, 1, 2, 3, 4, 5

ENV_BOUNDS = {
    "max_field_order": ("LATINQUOT_MAX_FIELD_ORDER", 10**4),
    "max_graph_vertices": ("LATINQUOT_MAX_GRAPH_VERTICES", 10**4),
    "max_group_size": ("LATINQUOT_MAX_GROUP_SIZE", 10**6),
}

DEMO_FAMILIES = {
    "lexicographic": (constructions.lexicographic, 2),
    "direct-product": (constructions.direct_product, 2),
    "diagonal-cayley": (constructions.diagonal_cayley, 1),
    "lsg-example": (constructions.lsg_example, 1),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    bounds: dict[str, int] = field(default_factory=dict)
    fmt: str = "text"
    out: str | None = None
    timing: bool = False


def _bounds(args) -> dict[str, int]:
    out = {}
    for key, (env, default) in ENV_BOUNDS.items():
        val = getattr(args, key, None)
        if val is None:
            raw = os.environ.get(env)
            try:
                val = int(raw) if raw is not None else default
            except ValueError:
                raise UsageError(f"{env}={raw!r} is not an integer") from None
        if val <= 0:
            raise UsageError(f"{key} must be positive, got {val}")
        out[key] = val
    return out


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _export(graph, kind: str | None, path: str | None) -> None:
    if not kind:
        return
    path = path or f"graph.{'dot' if kind == 'dot' else 'edges'}"
    Path(path).write_text(graph.to_dot() if kind == "dot" else graph.to_edge_list())
    Path(path + ".labels.json").write_text(graph.labels_json() + "\n")


# -- commands ------------------------------------------------------------------------------------


def cmd_verify(args, cfg: RunConfig) -> int:
    name = args.suite
    if name == "div-lemma":
        res = verify.div_lemma(args.amax, args.rmax, args.smax)
    elif name == "csets":
        try:
            pset = tuple(int(t) for t in args.pset.split(","))
        except ValueError:
            raise UsageError(f"--pset must be comma-separated integers, got {args.pset!r}") from None
        res = verify.csets_suite(pset, args.dmax, cfg.bounds["max_field_order"])
    elif name == "theorems":
        if args.case is not None and args.case not in verify.THEOREM_CASES:
            raise UsageError(f"--case must be one of {', '.join(verify.THEOREM_CASES)}")
        res = verify.theorems(args.case, workers=args.parallel)
    else:
        res = verify.SUITES[name]()
    if cfg.fmt == "json":
        doc = {"suite": res.name, "ok": res.ok, "passed": res.passed, "failed": res.failed, "lines": res.lines}
        if cfg.timing:
            doc["seconds"] = round(res.seconds, 3)
        _emit(cfg, json.dumps(doc, indent=2) + "\n")
    else:
        text = res.render()
        if cfg.timing:
            text += f"  time: {res.seconds:.2f} s\n"
        _emit(cfg, text)
    return EXIT_OK if res.ok else EXIT_FAIL


def _spec_from_args(args, bounds) -> StabilizerSpec:
    p, d, n = args.p, args.d, args.n
    if n < 1 or d < 1 or d % n:
        raise UsageError(f"need n >= 1 dividing d, got d={d} n={n}")
    if args.gens_file:
        fld = make_field(p, d // n, bound=bounds["max_field_order"])
        U = VectorSpace(fld, n)
        gens = load_gens(args.gens_file, U)
        if not gens.K:
            raise UsageError("gens file defines no K generators")
        return StabilizerSpec(args.line, U, gens.K, gens.g, gens.h, f"p={p} d={d} n={n} line={args.line} (gens file)")
    return canonical_spec(p, d, n, args.line, i=args.i, j=args.j, l=args.l, bound=bounds["max_field_order"])


def cmd_classify(args, cfg: RunConfig) -> int:
    spec = _spec_from_args(args, cfg.bounds)
    check_spec(spec)
    rep = classify.complete_quotients(args.p, args.d, args.n, spec, cfg.bounds["max_graph_vertices"],
                                      cfg.bounds["max_group_size"])
    if cfg.fmt == "json":
        _emit(cfg, report.to_json(rep, cfg.timing))
    elif cfg.fmt == "csv":
        _emit(cfg, report.to_csv([rep], cfg.timing))
    else:
        _emit(cfg, report.to_text(rep, cfg.timing))
    _export(classify._lsg_cached(args.p, args.d, cfg.bounds["max_graph_vertices"]), args.export, args.export_file)
    return EXIT_FAIL if report.failed_checks(rep) else EXIT_OK


def cmd_scan(args, cfg: RunConfig) -> int:
    gb = cfg.bounds["max_graph_vertices"]
    if args.pmax < 2 or args.dmax < 1:
        raise UsageError("need --pmax >= 2 and --dmax >= 1")
    if args.parallel < 1:
        raise UsageError("--parallel must be >= 1")
    reports = classify.scan(args.pmax, args.dmax, gb, args.parallel)
    thm = classify.verify_thm_1_2(reports)
    verdict = "PASS" if thm else "FAIL"
    if cfg.fmt == "json":
        _emit(cfg, report.to_json(reports, cfg.timing, {"k_range_property": verdict}))
    elif cfg.fmt == "text":
        _emit(cfg, "".join(report.to_text(r, cfg.timing) for r in reports) + f"k-range property: {verdict}\n")
    else:
        _emit(cfg, report.to_csv(reports, cfg.timing, verdict))
    bad = any(report.failed_checks(r) for r in reports)
    return EXIT_OK if thm and not bad else EXIT_FAIL


def cmd_demo(args, cfg: RunConfig) -> int:
    builder, arity = DEMO_FAMILIES[args.family]
    if len(args.params) != arity:
        raise UsageError(f"{args.family} takes {arity} integer parameter(s)")
    try:
        params = [int(x) for x in args.params]
    except ValueError:
        raise UsageError("demo parameters must be integers") from None
    fam = builder(*params, bound=cfg.bounds["max_graph_vertices"])
    res = fam.evaluate()
    ok = res.k == fam.expected_k
    if cfg.fmt == "json":
        doc = {"family": fam.kind, "params": list(fam.params), "vertices": fam.graph.n,
               "outcome": res.outcome, "k": res.k, "expected_k": fam.expected_k,
               "quotient_orders": res.quotient_orders, "witnesses": res.labels}
        if fam.S is not None:
            doc["connection_set_size"] = len(fam.S)
        _emit(cfg, json.dumps(doc, indent=2) + "\n")
    else:
        lines = [f"{fam.kind}({', '.join(map(str, fam.params))}): {fam.graph.n} vertices",
                 f"  outcome: {res.outcome}", f"  k = {res.k} (expected {fam.expected_k})"]
        if fam.S is not None:
            lines.append(f"  |S| = {len(fam.S)}")
        lines += [f"  {lab}: quotient K_{o}" for lab, o in zip(res.labels, res.quotient_orders)]
        _emit(cfg, "\n".join(lines) + "\n")
    _export(fam.graph, args.export, args.export_file)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ----------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=None)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock times (output is then not reproducible)")
    common.add_argument("--moduli", help="file of 'p d c0 ... cd' lines overriding the default field moduli")
    common.add_argument("--max-field-order", type=int, dest="max_field_order")
    common.add_argument("--max-graph-vertices", type=int, dest="max_graph_vertices")
    common.add_argument("--max-group-size", type=int, dest="max_group_size")

    export = argparse.ArgumentParser(add_help=False)
    export.add_argument("--export", choices=("dot", "edges"))
    export.add_argument("--export-file", help="graph output path (labels go to PATH.labels.json)")

    ap = argparse.ArgumentParser(prog="latinquot", description="Complete normal quotients of latin square graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(verify.SUITES))
    v.add_argument("--amax", type=int, default=9)
    v.add_argument("--rmax", type=int, default=12)
    v.add_argument("--smax", type=int, default=12)
    v.add_argument("--pset", default="2,3,5,7,11,13")
    v.add_argument("--dmax", type=int, default=6)
    v.add_argument("--case")
    v.add_argument("--parallel", type=int, default=1)

    c = sub.add_parser("classify", parents=[common, export], help="classify one stabilizer")
    c.add_argument("-p", type=int, required=True)
    c.add_argument("-d", type=int, default=1)
    c.add_argument("-n", type=int, default=1)
    c.add_argument("--line", type=int, default=1, choices=range(1, 6))
    c.add_argument("--i", type=int)
    c.add_argument("--j", type=int)
    c.add_argument("--l", type=int)
    c.add_argument("--gens-file")

    s = sub.add_parser("scan", parents=[common], help="classify every canonical spec in a range")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--dmax", type=int, required=True)
    s.add_argument("--parallel", type=int, default=1)

    dm = sub.add_parser("demo", parents=[common, export], help="evaluate an example family")
    dm.add_argument("family", choices=sorted(DEMO_FAMILIES))
    dm.add_argument("params", nargs="+")
    return ap


DEFAULT_FORMATS = {"verify": "text", "classify": "json", "scan": "csv", "demo": "text"}
COMMANDS = {"verify": cmd_verify, "classify": cmd_classify, "scan": cmd_scan, "demo": cmd_demo}


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.moduli:
            load_modulus_overrides(args.moduli)
        cfg = RunConfig(args.command, _bounds(args), args.format or DEFAULT_FORMATS[args.command], args.out, args.timing)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"latinquot: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GoursatViolation as exc:
        print(f"latinquot: Goursat violation: {exc}", file=sys.stderr)
        return EXIT_GOURSAT
    except NotTransitive as exc:
        print(f"latinquot: not transitive: {exc}", file=sys.stderr)
        return EXIT_TRANSITIVE
    except BoundExceeded as exc:
        print(f"latinquot: bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (ValueError, OSError) as exc:
        print(f"latinquot: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
