"""Command-line entry point: ``tauatoms <subcommand> [flags]``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or bad input,
3 capability (no closed-form classifier for the modulus).
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import os
import sys
from pathlib import Path

from . import __version__
from .arith import factor
from .classifier import classify_atom
from .engine import (
    EnumConfig,
    SignConvention,
    enumerate_proper_tau_factorizations,
    find_proper_tau_factorization,
    is_tau_prime_check,
)
from .errors import TauError, UnsupportedModulusError
from .relations import build_class_table, mu_related, tau_related
from .signatures import (
    CACHE_ENV,
    DEFAULT_TABLE_CAP,
    Signature,
    iter_atom_table,
    load_or_generate_table,
    signature_is_atom,
    signature_of,
    table_header,
    write_table_csv,
    write_table_json,
)
from .verify import CHECKS, instantiate_signature, run_theorem_check, sweep_compare

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAPABILITY = 0, 1, 2, 3
CONFIG_KEYS = {"cache_dir", "table_cap", "format"}


class UsageError(Exception):
    pass


def read_config(path: str | None) -> dict[str, str]:
    """Flat ``key = value`` file; blank lines and ``#`` comments ignored."""
    if not path:
        return {}
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: expected one of {sorted(CONFIG_KEYS)} as 'key = value'")
        out[key] = value.strip()
    return out


def _emit(args, text: str | None = None, data=None, rows: list[list] | None = None) -> None:
    fmt = args.format
    if fmt == "json":
        if data is None:
            raise UsageError("this subcommand has no JSON output")
        args.stream.write(json.dumps(data, indent=2) + "\n")
    elif fmt == "csv":
        if rows is None:
            raise UsageError("this subcommand has no CSV output")
        csv.writer(args.stream, lineterminator="\n").writerows(rows)
    else:
        args.stream.write(text + "\n")


def cmd_factor(args) -> int:
    f = factor(args.x)
    data = {"x": args.x, "sign": f.sign, "factors": [[p, e] for p, e in f.factors]}
    _emit(args, f"{args.x} = {f}", data, [["prime", "exponent"], *([p, e] for p, e in f.factors)])
    return EXIT_OK


def cmd_relate(args) -> int:
    relation = "mu" if args.mu else "tau"
    fn = mu_related if args.mu else tau_related
    related = fn(args.x, args.y, args.n)
    data = {"x": args.x, "y": args.y, "n": args.n, "relation": relation, "related": related}
    _emit(args, "true" if related else "false", data)
    return EXIT_OK


def _method_verdict(method: str, x: int, n: int) -> dict:
    if method == "oracle":
        wit = find_proper_tau_factorization(x, n)
        return {"atom": wit is None, "witness": None if wit is None else str(wit)}
    if method == "theorem":
        v = classify_atom(x, n)
        return {"atom": v.is_atom, "rule": v.rule.value, "detail": v.detail.value if v.detail else None}
    sv = signature_is_atom(signature_of(x, build_class_table(n)))
    return {"atom": sv.is_atom, "signature": signature_of(x, build_class_table(n)).label(), "witness": sv.witness_label() or None}


def cmd_atom(args) -> int:
    x = abs(args.x)
    methods = ["oracle", "theorem", "signature"] if args.method == "all" else [args.method]
    results = {}
    for m in methods:
        try:
            results[m] = _method_verdict(m, x, args.n)
        except (UnsupportedModulusError, TauError) as exc:
            if args.method != "all":
                raise
            results[m] = {"atom": None, "skipped": str(exc)}
    decided = {r["atom"] for r in results.values() if r["atom"] is not None}
    agree = len(decided) == 1
    lines = []
    for m, r in results.items():
        if r["atom"] is None:
            lines.append(f"{m}: skipped ({r['skipped']})")
            continue
        line = f"{m}: {'atom' if r['atom'] else 'reducible'}"
        if r.get("rule"):
            line += f" [{r['rule']}]"
        if r.get("witness"):
            line += f"  witness: {r['witness']}"
        lines.append(line)
    if len(methods) > 1:
        lines.append("all paths agree" if agree else "DISAGREEMENT between paths")
    _emit(args, "\n".join(lines), {"x": x, "n": args.n, "results": results, "agree": agree})
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_prime(args) -> int:
    v = is_tau_prime_check(args.x, args.n, args.bound, use_classifier=not args.no_classifier)
    if v.factorization is not None:
        text = f"not a tau_{args.n}-prime: {args.x} | {v.multiple} = {v.factorization}"
    elif v.kind.value == "confirmed_prime":
        text = f"tau_{args.n}-prime"
    else:
        text = f"no counterexample up to {v.bound}"
    _emit(args, text, {"x": args.x, "n": args.n, **v.to_dict()})
    return EXIT_OK


def cmd_enumerate(args) -> int:
    conv = SignConvention.ALL_SIGN_PATTERNS if args.all_signs else SignConvention.CANONICAL
    cfg = EnumConfig(max_parts=args.max_parts, sign_convention=conv)
    fs = enumerate_proper_tau_factorizations(args.x, args.n, cfg)
    rows = [["unit", "parts"]] + [[f.unit, " ".join(map(str, f.parts))] for f in fs]
    text = "\n".join(str(f) for f in fs) + f"\n{len(fs)} factorization(s)"
    _emit(args, text, {"x": args.x, "n": args.n, "count": len(fs), "factorizations": [f.to_dict() for f in fs]}, rows)
    return EXIT_OK


def cmd_classes(args) -> int:
    t = build_class_table(args.n)
    d = t.to_dict()
    lines = [f"n={t.n} base={t.base} q={t.q}", f"zero: {d['classes'][0]}"]
    lines += [f"x{i}: {members}" for i, members in enumerate(d["classes"][1:])]
    _emit(args, "\n".join(lines), d)
    return EXIT_OK


def cmd_table(args) -> int:
    levels = tuple(sorted({int(v) for v in args.x0_levels.split(",")}))
    header = table_header(args.n, args.max_per_class, levels)
    if args.cache_dir:
        table = load_or_generate_table(args.n, args.max_per_class, levels, Path(args.cache_dir))
        rows = iter(table.entries.items())
    else:
        rows = iter_atom_table(args.n, args.max_per_class, levels, args.table_cap)
    if args.format == "csv":
        count = write_table_csv(rows, args.n, args.stream)
    elif args.format == "json":
        count = write_table_json(rows, header, args.stream)
    else:
        count = 0
        for sig, v in rows:
            args.stream.write(f"{sig.label():<28} {v.verdict.value:<9} {v.witness_label()}\n")
            count += 1
    if args.out:
        print(f"wrote {count} entries to {args.out}", file=sys.stderr)
    return EXIT_OK


def _check_overrides(args) -> dict:
    out = {}
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        out[key] = json.loads(value)
    return out


def cmd_verify(args) -> int:
    if args.all == bool(args.check):
        raise UsageError("give exactly one of --all or --check")
    ids = list(CHECKS) if args.all else args.check
    for cid in ids:
        if cid not in CHECKS:
            raise UsageError(f"unknown check {cid!r}; choose from {', '.join(CHECKS)}")
    overrides = _check_overrides(args)
    checks = [run_theorem_check(cid, overrides) for cid in ids]
    lines = []
    for c in checks:
        line = f"{'PASS' if c.passed else 'FAIL'}  {c.id}"
        if c.errata:
            line += f"  ({len(c.errata)} expected erratum entr{'y' if len(c.errata) == 1 else 'ies'}, e.g. {c.errata[0]})"
        if not c.passed and c.witnesses:
            line += f"  witnesses: {c.witnesses[:3]}"
        lines.append(line)
    ok = all(c.passed for c in checks)
    _emit(args, "\n".join(lines), {"passed": ok, "checks": [c.to_dict() for c in checks]})
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_sweep(args) -> int:
    paths = [p.strip() for p in args.paths.split(",") if p.strip()]
    report = sweep_compare(args.n, args.lo, args.hi, paths)
    rows = [["x", *report.paths]] + [
        [x, *(int(report.verdicts[p][x - args.lo]) for p in report.paths)] for x in range(args.lo, args.hi + 1)
    ]
    summary = report.to_dict()
    text = f"n={args.n} [{args.lo}, {args.hi}] atoms={summary['atom_counts']} mismatches={len(report.mismatches)}"
    for m in report.mismatches[:20]:
        text += f"\n  {m.x}: {m.verdicts} rule={m.rule}"
    _emit(args, text, summary, rows)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_instantiate(args) -> int:
    t = build_class_table(args.n)
    sig = Signature.parse(args.signature, t.q)
    x = instantiate_signature(sig, t)
    _emit(args, f"{sig.label()} -> {x} = {factor(x)}", {"n": args.n, "signature": sig.to_dict(), "x": x})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default=None)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--config", help="flat key = value file (cache_dir, table_cap, format)")
    common.add_argument("--cache-dir", default=None)

    parser = argparse.ArgumentParser(prog="tauatoms", description="tau_n factorizations of the integers")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", parents=[common], help="usual prime factorization")
    p.add_argument("--x", type=int, required=True)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("relate", parents=[common], help="test the tau or mu relation")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--tau", action="store_true")
    g.add_argument("--mu", action="store_true")
    p.set_defaults(func=cmd_relate)

    p = sub.add_parser("atom", parents=[common], help="is x a tau_n-atom?")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["oracle", "theorem", "signature", "all"], default="oracle")
    p.set_defaults(func=cmd_atom)

    p = sub.add_parser("prime", parents=[common], help="search for a tau_n-prime counterexample")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--no-classifier", action="store_true", help="always scan multiples")
    p.set_defaults(func=cmd_prime)

    p = sub.add_parser("enumerate", parents=[common], help="list proper tau_n-factorizations")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--max-parts", type=int, default=None)
    p.add_argument("--all-signs", action="store_true", help="every sign pattern, congruence not imposed")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classes", parents=[common], help="mu class table for an odd prime")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("table", parents=[common], help="exhaustive signature atom table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-per-class", type=int, required=True)
    p.add_argument("--x0-levels", default="0", help="comma-separated x0 counts, e.g. 0,1")
    p.add_argument("--table-cap", type=int, default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run named cross-checks")
    p.add_argument("--all", action="store_true")
    p.add_argument("--check", action="append", help=f"one of: {', '.join(CHECKS)}")
    p.add_argument("--param", action="append", help="override a check parameter, e.g. hi=500")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="compare decision paths over a range")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lo", type=int, default=2)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--paths", default="oracle,theorem")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("instantiate", parents=[common], help="smallest-prime integer with a signature")
    p.add_argument("--signature", required=True, help='e.g. "x1*x4^2"')
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_instantiate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = read_config(args.config)
        args.format = args.format or config.get("format", "text")
        if args.format not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {args.format!r}")
        args.cache_dir = args.cache_dir or config.get("cache_dir") or os.environ.get(CACHE_ENV)
        if hasattr(args, "table_cap"):
            args.table_cap = args.table_cap or int(config.get("table_cap", DEFAULT_TABLE_CAP))
        with contextlib.ExitStack() as stack:
            if args.out:
                args.stream = stack.enter_context(open(args.out, "w", newline=""))
            else:
                args.stream = sys.stdout
            return args.func(args)
    except UsageError as exc:
        print(f"tauatoms: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedModulusError as exc:
        print(f"tauatoms: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except (TauError, ValueError) as exc:
        print(f"tauatoms: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
