"""Command-line front end.

Exit status: 0 when every requested verdict passed, 1 on a verification
failure, 2 on a usage or parse error. Every number is printed as an exact
rational string; ``--json`` output is sorted and byte-stable.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import campaigns, repro
from . import examples as ex
from .functions import conjugate, eps_subdifferential
from .instance_file import InstanceParseError, dumps, load
from .monotropic import TSetQuery, build_T, duality_report
from .rational import ExtRational, fmt
from .sets import canonical, region_is_closed
from .verify import DEFAULT_ETAS, GridOracleConfig, random_instance

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- value formatting ---------------------------------------------------------------


def _value(x):
    if isinstance(x, (ExtRational, Fraction)):
        return fmt(x) if isinstance(x, Fraction) else str(x)
    if isinstance(x, tuple) and all(isinstance(v, Fraction) for v in x):
        return [fmt(v) for v in x]
    return x


def _polyhedron(P) -> dict:
    P = canonical(P)
    return {
        "describe": P.describe(),
        "constraints": [
            {"normal": [fmt(a) for a in c.normal], "bound": fmt(c.bound), "relation": c.relation}
            for c in P.constraints
        ],
        "text": [str(c) for c in P.constraints],
    }


def _function(f) -> dict:
    return {
        "dim": f.dim,
        "pieces": [{"slope": [fmt(a) for a in p.slope], "offset": fmt(p.offset)} for p in f.pieces],
        "domain": _polyhedron(f.domain.cells[0].relaxed()),
    }


def _emit(report: dict, as_json: bool, out):
    if as_json:
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return
    for line in _human(report):
        out.write(line + "\n")


def _human(obj, indent: str = ""):
    for key in obj:
        v = obj[key]
        if isinstance(v, dict) and "describe" in v and "text" in v:
            yield f"{indent}{key}: {v['describe']}"
            for t in v["text"]:
                yield f"{indent}  {t}"
        elif isinstance(v, dict):
            yield f"{indent}{key}:"
            yield from _human(v, indent + "  ")
        elif isinstance(v, list) and v and isinstance(v[0], dict) and "expected" in v[0]:
            for c in v:
                mark = "ok  " if c["ok"] else "FAIL"
                tail = "" if c["ok"] else f" (expected {c['expected']})"
                yield f"{indent}  {mark} {c['name']}: {c['actual']}{tail}"
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for item in v:
                yield from _human(item, indent)
        elif isinstance(v, list):
            yield f"{indent}{key}: ({', '.join(str(a) for a in v)})"
        else:
            yield f"{indent}{key}: {v}"


# -- argument helpers -------------------------------------------------------------------


def _rational(text: str) -> Fraction:
    t = text.strip()
    if any(ch in t for ch in ".eE"):
        raise UsageError(f"not an exact rational: {text!r} (write p/q)")
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not an exact rational: {text!r}") from None


def _vector(text: str) -> tuple:
    return tuple(_rational(t) for t in text.split(",") if t.strip())


def _instance(args):
    if args.file and args.example:
        raise UsageError("give either an instance file or --example, not both")
    if args.file:
        return load(args.file)
    if args.example:
        if args.example not in ex.BUILTIN:
            raise UsageError(f"unknown example {args.example!r}; choose from {sorted(ex.BUILTIN)}")
        return ex.BUILTIN[args.example]()
    raise UsageError("an instance file or --example is required")


def _block(I, index: int):
    if not 0 <= index < len(I.blocks):
        raise UsageError(f"block index {index} out of range 0..{len(I.blocks) - 1}")
    return I.blocks[index]


# -- commands ---------------------------------------------------------------------------


def cmd_solve(args):
    I = _instance(args)
    rep = duality_report(I)
    report = {
        "command": "solve",
        "blocks": len(I.blocks),
        "primal_value": _value(rep.primal_value),
        "primal_attained": rep.primal_attained,
        "primal_witness": _value(rep.primal_witness),
        "dual_value": _value(rep.dual_value),
        "dual_attained": rep.dual_attained,
        "dual_witness": _value(rep.dual_witness),
        "gap": _value(rep.gap),
        "weak_duality_ok": rep.weak_duality_ok,
        "bertsekas_closedness_ok": rep.bertsekas_closedness_ok,
        "thm34_regularity_ok": rep.thm34_regularity_ok,
        "regularity_witness": _value(rep.regularity_witness),
        "zero_gap_predicted": rep.zero_gap_predicted,
    }
    return report, rep.weak_duality_ok


def cmd_repro(args):
    names = sorted(repro.SCRIPTS) if args.name == "all" else [args.name]
    report = {"command": "repro", "examples": []}
    ok = True
    for name in names:
        checks = repro.SCRIPTS[name]()
        passed = all(c.ok for c in checks)
        ok &= passed
        entry = {
            "example": name,
            "verdict": "PASS" if passed else "FAIL",
            "checks": [
                {"name": c.name, "expected": c.expected, "actual": c.actual, "ok": c.ok} for c in checks
            ],
        }
        first = next((c for c in checks if not c.ok), None)
        if first is not None:
            entry["first_failure"] = f"{first.name}: expected {first.expected}, got {first.actual}"
        report["examples"].append(entry)
    return report, ok


def cmd_subdiff(args):
    I = _instance(args)
    f = _block(I, args.block)
    x = _vector(args.point)
    if len(x) != f.dim:
        raise UsageError(f"point has {len(x)} entries, block {args.block} has dim {f.dim}")
    res = eps_subdifferential(f, x, _rational(args.eps))
    report = {
        "command": "subdiff",
        "block": args.block,
        "point": _value(x),
        "eps": fmt(res.epsilon),
        "value_at_point": _value(res.base_value),
        "subdifferential": _polyhedron(res.set),
    }
    return report, True


def cmd_conjugate(args):
    I = _instance(args)
    f = _block(I, args.block)
    report = {"command": "conjugate", "block": args.block, "conjugate": _function(conjugate(f))}
    return report, True


def cmd_tset(args):
    I = _instance(args)
    x = _vector(args.point)
    if len(x) != I.total_dim:
        raise UsageError(f"point has {len(x)} entries, instance has dim {I.total_dim}")
    eps = _rational(args.eps)
    if eps <= 0:
        raise UsageError("--eps must be positive")
    T = build_T(I, TSetQuery(x, eps))
    closed = region_is_closed(T)
    report = {"command": "tset", "point": _value(x), "eps": fmt(eps), "T": _polyhedron(T), "closed": closed}
    return report, True


def cmd_verify(args):
    etas = tuple(_vector(args.etas)) if args.etas else DEFAULT_ETAS
    if any(e <= 0 for e in etas):
        raise UsageError("--etas must be positive")
    cfg = None
    if args.box is not None or args.spacing is not None:
        cfg = GridOracleConfig(_rational(args.box or "10"), _rational(args.spacing or "1/4"))
    kinds = ["thm31", "thm34", "calculus", "oracle"] if args.campaign == "all" else [args.campaign]
    report = {"command": "verify", "seed": args.seed, "campaigns": []}
    ok = True
    for kind in kinds:
        trials = args.trials
        if kind == "thm31":
            r = campaigns.thm31_campaign(args.seed, trials or 100, etas=etas)
        elif kind == "thm34":
            r = campaigns.thm34_campaign(args.seed, trials or 100)
        elif kind == "calculus":
            r = campaigns.calculus_campaign(args.seed, trials or 40, cfg)
        else:
            r = campaigns.oracle_campaign(args.seed, trials or 50, cfg)
        ok &= r.ok
        report["campaigns"].append(
            {
                "campaign": r.name,
                "verdict": "PASS" if r.ok else "FAIL",
                "trials": r.trials,
                "counts": dict(sorted(r.counts.items())),
                "failures": r.failures[:20],
            }
        )
    return report, ok


def cmd_generate(args):
    dims = tuple(int(t) for t in args.dims.split(",") if t.strip())
    if not dims or any(d < 1 for d in dims):
        raise UsageError("--dims must list positive block dimensions")
    I = random_instance(args.seed, args.profile, dims)
    return dumps(I), True


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyconvex", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def instance_args(sp):
        sp.add_argument("file", nargs="?", help="instance file (JSON)")
        sp.add_argument("--example", help=f"built-in instance: {', '.join(sorted(ex.BUILTIN))}")

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--timing", action="store_true", help="append elapsed milliseconds (not byte-stable)")

    sp = sub.add_parser("solve", help="primal and dual values, gap and hypothesis verdicts")
    instance_args(sp)
    common(sp)

    sp = sub.add_parser("repro", help="scripted reproduction of a built-in counterexample")
    sp.add_argument("name", choices=sorted(repro.SCRIPTS) + ["all"])
    common(sp)

    sp = sub.add_parser("subdiff", help="eps-subdifferential of one block")
    instance_args(sp)
    sp.add_argument("--block", type=int, default=0)
    sp.add_argument("--point", required=True, help="comma-separated rationals, e.g. 0,3")
    sp.add_argument("--eps", required=True)
    common(sp)

    sp = sub.add_parser("conjugate", help="conjugate of one block")
    instance_args(sp)
    sp.add_argument("--block", type=int, default=0)
    common(sp)

    sp = sub.add_parser("tset", help="the set S-perp + product of block eps-subdifferentials")
    instance_args(sp)
    sp.add_argument("--point", required=True)
    sp.add_argument("--eps", required=True)
    common(sp)

    sp = sub.add_parser("verify", help="seeded property campaigns")
    sp.add_argument("campaign", nargs="?", default="all", choices=["thm31", "thm34", "calculus", "oracle", "all"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--etas", help="comma-separated positive rationals (default 1, 1/2, ..., 2^-20)")
    sp.add_argument("--box", help="grid oracle half-width")
    sp.add_argument("--spacing", help="grid oracle pitch")
    common(sp)

    sp = sub.add_parser("generate", help="write a seeded random instance file to stdout")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--profile", choices=["closed-polyhedral", "partially-open"], default="closed-polyhedral")
    sp.add_argument("--dims", default="1,1")
    return p


COMMANDS = {
    "solve": cmd_solve,
    "repro": cmd_repro,
    "subdiff": cmd_subdiff,
    "conjugate": cmd_conjugate,
    "tset": cmd_tset,
    "verify": cmd_verify,
    "generate": cmd_generate,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    start = time.perf_counter()
    try:
        report, ok = COMMANDS[args.command](args)
    except InstanceParseError as e:
        err.write(f"parse error at {e.where}: {e.message}\n")
        return EXIT_USAGE
    except (UsageError, OSError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        err.write(f"invariant violated: {e}\n")
        return EXIT_USAGE
    if isinstance(report, str):
        out.write(report)
        return EXIT_OK
    if getattr(args, "timing", False):
        report["elapsed_ms"] = int((time.perf_counter() - start) * 1000)
    _emit(report, args.json, out)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
