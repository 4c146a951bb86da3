"""Command-line front end.

Subcommands:

``run``    monitor a CSV trace (``time,signal,value``) and stream verdict
           rows (``time,kind,lo_or_value,hi,final``);
``check``  parse and validate a formula, optionally as JSON;
``bench``  run the standard benchmark suite and write a JSON report.

Exit codes: 0 on success, 2 on any input error (bad formula, malformed CSV,
non-monotonic timestamps), with a diagnostic naming the offending line.

In ``run --ack`` mode (used by the scripting bindings) the monitor runs as
an interactive session: after each input row the process emits ``#<n>``
once row n's verdicts have been written, reports row-level errors as
``#error:<n>:<message>`` lines instead of aborting, and skips the global
non-decreasing-time check (per-signal monotonicity still applies).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .domains import NEG_INF, ThreeValued, VerdictKind, format_number
from .engine import Monitor, Semantics, Step, VerdictEvent
from .errors import StlError
from .formula import format_formula, free_variables, parse_formula, temporal_depth

INPUT_HEADER = ["time", "signal", "value"]
OUTPUT_HEADER = ["time", "kind", "lo_or_value", "hi", "final"]


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _parse_vars(pairs: list[str]) -> dict[str, float]:
    out = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name:
            raise ValueError(f"--var expects NAME=VALUE, got {pair!r}")
        out[name] = float(value)
    return out


def _load_formula(args) -> str:
    if args.formula is not None:
        return args.formula
    with open(args.formula_file, "r", encoding="utf-8") as fh:
        return fh.read()


def _verdict_csv_fields(event: VerdictEvent) -> list[str]:
    v = event.verdict
    final = "true" if event.final else "false"
    if v.kind is VerdictKind.ROSI:
        return [
            format_number(event.time),
            "rosi",
            format_number(v.value.lo),
            format_number(v.value.hi),
            final,
        ]
    if v.kind is VerdictKind.ROBUSTNESS:
        return [format_number(event.time), "robustness", format_number(v.value), "", final]
    if v.kind is VerdictKind.BOOLEAN:
        return [
            format_number(event.time),
            "boolean",
            "true" if v.value else "false",
            "",
            final,
        ]
    word = {ThreeValued.TRUE: "true", ThreeValued.FALSE: "false", ThreeValued.UNKNOWN: "unknown"}
    return [format_number(event.time), "three-valued", word[v.value], "", final]


def _cmd_run(args) -> int:
    try:
        variables = _parse_vars(args.var)
        formula = parse_formula(_load_formula(args))
        monitor = Monitor(
            formula,
            semantics=args.semantics,
            algorithm=args.algorithm,
            variables=variables,
        )
    except (StlError, ValueError, OSError) as exc:
        return _fail(str(exc))

    close_in = close_out = None
    if args.input == "-":
        src = sys.stdin
    else:
        try:
            src = open(args.input, "r", encoding="utf-8", newline="")
        except OSError as exc:
            return _fail(str(exc))
        close_in = src
    if args.output == "-":
        dst = sys.stdout
    else:
        dst = open(args.output, "w", encoding="utf-8", newline="")
        close_out = dst

    writer = csv.writer(dst, lineterminator="\n")
    writer.writerow(OUTPUT_HEADER)
    if args.ack:
        dst.flush()
    status = 0
    try:
        reader = csv.reader(src)
        last_time = NEG_INF
        for lineno, row in enumerate(reader, start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if lineno == 1:
                if [c.strip().lower() for c in row] != INPUT_HEADER:
                    return _fail(f"line 1: expected header {','.join(INPUT_HEADER)!r}")
                continue
            try:
                if len(row) != 3:
                    raise ValueError(f"expected 3 fields, got {len(row)}")
                t = float(row[0])
                signal = row[1].strip()
                value = float(row[2])
                if not args.ack and t < last_time:
                    raise ValueError(f"time {t} decreases from {last_time}")
                last_time = max(last_time, t)
                output = monitor.update(Step(signal, value, t))
            except (StlError, ValueError) as exc:
                if args.ack:
                    dst.write(f"#error:{lineno}:{exc}\n")
                    dst.flush()
                    continue
                return _fail(f"line {lineno}: {exc}")
            for event in output:
                writer.writerow(_verdict_csv_fields(event))
            if args.ack:
                dst.write(f"#{lineno}\n")
                dst.flush()
    finally:
        if close_in:
            close_in.close()
        if close_out:
            close_out.close()
    return status


def _cmd_check(args) -> int:
    text = _load_formula(args)
    try:
        formula = parse_formula(text)
    except StlError as exc:
        if args.json:
            payload = {"error": {"message": str(exc)}}
            for attr in ("line", "column", "expected"):
                if getattr(exc, attr, None) is not None:
                    payload["error"][attr] = getattr(exc, attr)
            print(json.dumps(payload))
            return 2
        return _fail(str(exc))
    info = {
        "canonical": format_formula(formula),
        "temporal_depth": temporal_depth(formula),
        "free_variables": sorted(free_variables(formula)),
    }
    if args.json:
        print(json.dumps(info))
    else:
        print(f"formula:        {info['canonical']}")
        print(f"temporal depth: {format_number(info['temporal_depth'])} s")
        print(f"variables:      {', '.join('$' + v for v in info['free_variables']) or '(none)'}")
    return 0


def _cmd_bench(args) -> int:
    from .bench import format_table, report_to_dict, run_suite

    if args.suite != "paper":
        return _fail(f"unknown suite {args.suite!r}")

    def progress(formula, sem):
        print(f"running: {formula}  [{sem.value}]", file=sys.stderr)

    try:
        results = run_suite(
            samples=args.samples,
            runs=args.runs,
            semantics_filter=args.semantics,
            algorithm=args.algorithm,
            filter_substring=args.filter,
            progress=progress if args.verbose else None,
        )
    except (StlError, ValueError) as exc:
        return _fail(str(exc))
    print(format_table(results))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report_to_dict(results), fh, indent=2)
        print(f"report written to {args.out}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stlmon", description="Online monitoring of Signal Temporal Logic"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="monitor a CSV trace")
    group = run_p.add_mutually_exclusive_group(required=True)
    group.add_argument("--formula", help="formula text in the DSL")
    group.add_argument("--formula-file", help="path to a file holding the formula")
    run_p.add_argument("--input", required=True, help="input CSV path, or - for stdin")
    run_p.add_argument(
        "--semantics",
        default="delayed-quantitative",
        choices=[s.value for s in Semantics],
    )
    run_p.add_argument("--algorithm", default="incremental", choices=["incremental", "naive"])
    run_p.add_argument(
        "--var",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="bind a $-variable (repeatable)",
    )
    run_p.add_argument("--output", default="-", help="output CSV path, or - for stdout")
    run_p.add_argument(
        "--ack",
        action="store_true",
        help="interactive session framing: emit #<row> after each input row",
    )
    run_p.set_defaults(func=_cmd_run)

    check_p = sub.add_parser("check", help="parse and validate a formula")
    group = check_p.add_mutually_exclusive_group(required=True)
    group.add_argument("--formula")
    group.add_argument("--formula-file")
    check_p.add_argument("--json", action="store_true", help="machine-readable output")
    check_p.set_defaults(func=_cmd_check)

    bench_p = sub.add_parser("bench", help="run the benchmark suite")
    bench_p.add_argument("--suite", default="paper")
    bench_p.add_argument("--samples", type=int, default=20000)
    bench_p.add_argument("--runs", type=int, default=50)
    bench_p.add_argument(
        "--semantics", default="all", help="all or one of the semantics tags"
    )
    bench_p.add_argument("--algorithm", default="incremental", choices=["incremental", "naive"])
    bench_p.add_argument("--filter", default=None, help="only cells whose formula contains this")
    bench_p.add_argument("--out", default=None, help="write the JSON report here")
    bench_p.add_argument("--verbose", action="store_true")
    bench_p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
