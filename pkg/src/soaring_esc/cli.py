"""Command-line front end: ``soaring-esc run | validate | list``.

Exit codes: 0 success, 1 configuration or validation failure, 2 run aborted
(SingularState / NonFinite).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .config import ConfigError, load_config
from .esc_augmented import validate_design
from .sim.controllers import Esc2
from .sim.io import write_record
from .sim.scenarios import builtin_scenarios, estimate_curvature, get_scenario, run, with_overrides

EXIT_OK, EXIT_CONFIG, EXIT_ABORT = 0, 1, 2


def _fmt(v) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def _resolve(args, case):
    sc = load_config(args.config) if case is None else get_scenario(case)
    return with_overrides(sc, dt=args.dt, duration=args.duration, seed=args.seed)


def _run_one(sc, out, fmt):
    rec = run(sc)
    write_record(rec, out, fmt)
    return sc.name, out, rec.status, rec.error, rec.summary


def _print_summary(name, out, status, error, summary) -> None:
    print(f"scenario: {name}")
    print(f"output: {out}")
    for key, val in summary.items():
        print(f"{key}: {_fmt(val)}")
    if error:
        print(f"{name}: {error}", file=sys.stderr)


def cmd_run(args) -> int:
    cases = args.case or [None]
    if args.config is None and not args.case:
        print("error: run needs --case or --config", file=sys.stderr)
        return EXIT_CONFIG
    if args.config is not None and args.case:
        print("error: --case and --config are mutually exclusive", file=sys.stderr)
        return EXIT_CONFIG
    try:
        scenarios = [_resolve(args, c) for c in cases]
    except (KeyError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    fmt = args.format
    if fmt is None:
        fmt = "json" if args.out and args.out.endswith(".json") and len(scenarios) == 1 else "csv"
    if len(scenarios) == 1:
        outs = [args.out or f"{scenarios[0].name}.{fmt}"]
    else:
        folder = args.out or "."
        os.makedirs(folder, exist_ok=True)
        outs = [os.path.join(folder, f"{sc.name}.{fmt}") for sc in scenarios]

    jobs = [(sc, out, fmt) for sc, out in zip(scenarios, outs)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, *zip(*jobs)))
    else:
        results = [_run_one(*j) for j in jobs]

    code = EXIT_OK
    for i, res in enumerate(results):
        if i:
            print()
        _print_summary(*res)
        if res[2] != "ok":
            code = EXIT_ABORT
    return code


def cmd_validate(args) -> int:
    try:
        if (args.case is None) == (args.config is None):
            raise ConfigError("validate needs exactly one of --case or --config")
        sc = load_config(args.config) if args.config else get_scenario(args.case)
    except (KeyError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not isinstance(sc.controller, Esc2):
        print(f"error: {sc.name} is not an ESC2 scenario; only augmented designs can be validated",
              file=sys.stderr)
        return EXIT_CONFIG

    fpp = None
    if args.fpp == "estimate":
        fpp = estimate_curvature(sc)
    elif args.fpp is not None:
        try:
            fpp = float(args.fpp)
        except ValueError:
            print(f"error: --fpp expects a number or 'estimate', got {args.fpp!r}", file=sys.stderr)
            return EXIT_CONFIG

    report = validate_design(sc.controller.design, fpp)
    if args.format == "json":
        print(json.dumps({"scenario": sc.name, **report.to_dict()}, indent=2))
    else:
        print(f"design: {sc.name}")
        for line in report.lines():
            print(line)
    return EXIT_OK if report.overall else EXIT_CONFIG


def cmd_list(args) -> int:
    items = [{"name": sc.name, "description": sc.description} for sc in builtin_scenarios()]
    if args.format == "json":
        print(json.dumps(items, indent=2))
    else:
        width = max(len(i["name"]) for i in items)
        for i in items:
            print(f"{i['name']:<{width}}  {i['description']}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # Usage errors are configuration errors; exit code 2 is reserved for aborted runs.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="soaring-esc", description="Extremum-seeking dynamic soaring simulations.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="simulate a scenario and write its record")
    r.add_argument("--case", action="append", help="built-in scenario name (repeatable)")
    r.add_argument("--config", help="JSON run configuration")
    r.add_argument("--dt", type=float)
    r.add_argument("--duration", type=float)
    r.add_argument("--seed", type=int)
    r.add_argument("--out", help="output file, or directory when several cases are given")
    r.add_argument("--format", choices=("csv", "json"))
    r.add_argument("--jobs", type=int, default=1, help="worker processes for several cases")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("validate", help="check an ESC2 design against C1-C5")
    v.add_argument("--case")
    v.add_argument("--config")
    v.add_argument("--fpp", help="objective curvature f'' for the C5 loop check, or 'estimate'")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_validate)

    ls = sub.add_parser("list", help="list built-in scenarios")
    ls.add_argument("--format", choices=("text", "json"), default="text")
    ls.set_defaults(func=cmd_list)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
