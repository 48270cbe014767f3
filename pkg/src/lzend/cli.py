"""Command-line entry point: ``lzend <subcommand> ...``.

Exit status: 0 success, 1 domain error or rejected parsing, 2 usage error,
3 resource or solver failure. Errors print one ``error[<kind>]: ...`` line
on standard error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import family, gadget
from .errors import LzEndError, SolverError
from .maxsat import Model, VarMap, decode, default_solver, encode, parse_solver_output, solve, write_wcnf
from .parsing import Parsing, greedy_parse, validate
from .search import DEFAULT_BUDGET, optimal_parse
from .text import read_text, write_tokens

SAMPLE_TEXT = b"aacbbbbaababbabbba"


def _write(path: str, content: str) -> None:
    with open(path, "w") as fh:
        fh.write(content)


def _emit_parsing(parsing: Parsing, out: str | None) -> None:
    if out:
        _write(out, parsing.dumps())
    else:
        sys.stdout.write(parsing.dumps())
    print(f"size {parsing.size}")


def _solver(args) -> str:
    cmd = args.solver or default_solver()
    if not cmd:
        raise SolverError("no solver configured (use --solver or set LZEND_SOLVER)")
    return cmd


def cmd_greedy(args) -> int:
    _emit_parsing(greedy_parse(read_text(args.input, args.format)), args.out)
    return 0


def cmd_optimal(args) -> int:
    text = read_text(args.input, args.format)
    if args.method == "bruteforce":
        parsing = optimal_parse(text, budget=args.budget)
    else:
        parsing = solve(text, _solver(args), timeout=args.timeout)
    _emit_parsing(parsing, args.out)
    return 0


def cmd_validate(args) -> int:
    text = read_text(args.input, args.format)
    with open(args.parsing) as fh:
        parsing = Parsing.loads(fh.read())
    report = validate(text, parsing)
    print(report.describe())
    return 0 if report else 1


def cmd_encode(args) -> int:
    text = read_text(args.input, args.format)
    instance, varmap = encode(text)
    with open(args.out, "w") as fh:
        write_wcnf(instance, fh, legacy=args.legacy_wcnf)
    sidecar = args.varmap or args.out + ".varmap.json"
    _write(sidecar, json.dumps(varmap.to_json()) + "\n")
    print(f"variables {instance.num_vars} hard {len(instance.hard)} soft {len(instance.soft)}")
    return 0


def cmd_decode(args) -> int:
    text = read_text(args.input, args.format)
    with open(args.varmap) as fh:
        varmap = VarMap.from_json(json.load(fh))
    with open(args.model) as fh:
        model: Model = parse_solver_output(fh.read(), varmap.num_vars)
    _emit_parsing(decode(model, varmap, text), args.out)
    return 0


def _parse_cover(value: str) -> list[int]:
    out = []
    for part in value.split(","):
        part = part.strip().lower().removeprefix("v")
        if not part.isdigit():
            raise argparse.ArgumentTypeError(f"bad vertex {part!r} in cover {value!r}")
        out.append(int(part))
    return out


def cmd_gadget(args) -> int:
    with open(args.graph) as fh:
        g = gadget.parse_graph(fh.read())
    gs = gadget.build_gadget(g)
    prefix = args.out_prefix
    write_tokens(gs.text, prefix + ".tokens")
    _write(prefix + ".legend", gs.legend_table())
    _write(prefix + ".segments", gs.segment_table())
    print(f"W_G: {gs.text.n} tokens, alphabet {gs.text.alphabet_size}, written to {prefix}.tokens")
    if args.witness_cover:
        w = gadget.witness_parsing(g, args.witness_cover, gs)
        _write(prefix + ".witness.json", w.dumps())
        print(f"witness size {w.size}")
    if args.verify:
        solver = args.solver or default_solver()
        report = gadget.verify_reduction(g, solver, timeout=args.timeout)
        for line in report.lines():
            print(line)
    return 0


def cmd_family(args) -> int:
    prefix = args.out_prefix
    if args.k is not None:
        inst = family.build_family(args.k)
        write_tokens(inst.text, f"{prefix}{args.k}.tokens")
        print(f"w_{args.k}: n={inst.text.n} K={inst.K}")
        if args.witness:
            w = family.witness_parsing_family(args.k, inst)
            _write(f"{prefix}{args.k}.witness.json", w.dumps())
            print(f"witness size {w.size}")
    if args.table is not None:
        rows = family.ratio_table(args.table, args.measure_limit)
        _write(prefix + "ratios.csv", family.table_csv(rows))
        sys.stdout.write(family.format_table(rows))
    if args.k is None and args.table is None:
        raise argparse.ArgumentTypeError("family needs --k or --table")
    return 0


def cmd_repro(args) -> int:
    from .text import canonicalize

    solver = args.solver or default_solver()
    results: list[tuple[bool, str]] = []

    def check(label, fn):
        try:
            ok = bool(fn())
        except LzEndError as exc:
            ok, label = False, f"{label} ({exc})"
        results.append((ok, label))
        print(f"[{'PASS' if ok else 'FAIL'}] {label}", flush=True)

    sample_text = canonicalize(SAMPLE_TEXT)
    greedy = greedy_parse(sample_text)
    check("sample text: greedy size 12", lambda: greedy.size == 12)
    check("sample text: greedy phrase at position 10 has length 1", lambda: dict(zip(greedy.starts, greedy.lengths)).get(10) == 1)
    check("sample text: optimal size 11 (branch and bound)", lambda: optimal_parse(sample_text).size == 11)
    if solver:
        check("sample text: optimal size 11 (MAX-SAT)", lambda: solve(sample_text, solver).size == 11)
    tri = gadget.TRIANGLE
    check("triangle |W_G| = 168", lambda: gadget.build_gadget(tri).text.n == 168)
    check("triangle greedy size 108", lambda: gadget.greedy_counts(tri).total == 108)
    check("triangle witness for cover {v1, v3} has 107 phrases", lambda: gadget.witness_parsing(tri, [1, 3]).size == 107)
    if solver:
        check("triangle MAX-SAT optimum 107", lambda: gadget.verify_reduction(tri, solver).maxsat_optimum == 107)
    rows = family.ratio_table(args.family_kmax, min(args.family_kmax, family.MEASURE_LIMIT))
    check(f"family greedy 2K+k+5 and witness K+k+6 for k=1..{args.family_kmax}", lambda: all(r.measured for r in rows))
    check("family ratio(10) > 1.99", lambda: family.greedy_size_formula(10) / family.witness_size_formula(10) > 1.99)
    sys.stdout.write(family.format_table(rows))
    failed = sum(not ok for ok, _ in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lzend", description="Greedy and optimal LZ-End parsings.")
    sub = ap.add_subparsers(dest="command", required=True)

    def text_input(p):
        p.add_argument("input")
        p.add_argument("--format", choices=("bytes", "tokens"), default="bytes", help="bytes: one symbol per byte; tokens: whitespace-separated integers")

    p = sub.add_parser("greedy", help="greedy LZ-End parsing")
    text_input(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("optimal", help="optimal LZ-End parsing")
    text_input(p)
    p.add_argument("--method", choices=("bruteforce", "maxsat"), default="bruteforce")
    p.add_argument("--solver", help="MaxSAT solver command; the WCNF path is appended")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.add_argument("--timeout", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("validate", help="check a parsing record against a text")
    text_input(p)
    p.add_argument("--parsing", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("encode", help="write the MAX-SAT instance as WCNF")
    text_input(p)
    p.add_argument("--out", required=True)
    p.add_argument("--varmap", help="variable map path (default: OUT.varmap.json)")
    p.add_argument("--legacy-wcnf", action="store_true")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="turn a solver model into a parsing")
    text_input(p)
    p.add_argument("--model", required=True)
    p.add_argument("--varmap", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("gadget", help="vertex-cover reduction string")
    p.add_argument("--graph", required=True)
    p.add_argument("--out-prefix", default="gadget")
    p.add_argument("--witness-cover", type=_parse_cover)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--solver")
    p.add_argument("--timeout", type=float)
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("family", help="greedy/optimal lower-bound family")
    p.add_argument("--k", type=_positive)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--table", type=_positive, metavar="KMAX")
    p.add_argument("--measure-limit", type=int, default=family.MEASURE_LIMIT)
    p.add_argument("--out-prefix", default="family")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("repro", help="run the reproduction checklist")
    p.add_argument("--solver")
    p.add_argument("--family-kmax", type=_positive, default=6)
    p.set_defaults(func=cmd_repro)
    return ap


def _positive(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{value} is not positive")
    return v


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except LzEndError as exc:
        print(f"error[{exc.kind}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
