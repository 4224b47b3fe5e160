"""Command-line entry point: analyze <file.trs> [options]."""

from __future__ import annotations

import argparse
import shlex
import sys

from .analysis import EXIT_INPUT_ERROR, AnalysisReport, RunConfig, analyse_file, write_report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="analyze",
        description="Derive a polynomial bound on the innermost runtime complexity of a TRS "
        "by amortised resource analysis, and certify it with an SMT solver.",
    )
    parser.add_argument("input", metavar="file.trs", help="TPDB-style input file")
    parser.add_argument("--max-degree", type=int, default=3, metavar="N", help="largest degree to try (default 3)")
    parser.add_argument(
        "--heuristic",
        choices=["none", "shift", "interleave"],
        default="none",
        help="constructor annotation shape; keeps the constraint problem linear (default none)",
    )
    parser.add_argument(
        "--costfree",
        action="store_true",
        default=None,
        help="enable cost-free derivations at every degree (default: only at degree >= 2)",
    )
    parser.add_argument(
        "--relative",
        action="store_true",
        help="require only some strict rule to be counted (solver picks which)",
    )
    parser.add_argument("--solver", metavar="PATH", help="SMT solver executable (default: $AMORTRS_SOLVER, z3, bundled WASM z3)")
    parser.add_argument("--solver-args", default="", metavar="ARGS", help="extra solver arguments (shell-quoted)")
    parser.add_argument("--timeout", type=float, default=60.0, metavar="SECS", help="per-degree solver wall-clock limit")
    parser.add_argument("--verify", type=int, default=0, metavar="SIZE", help="empirically verify the bound on basic terms up to SIZE (0 = skip)")
    parser.add_argument("--json", metavar="PATH", help="write the machine-readable report here")
    parser.add_argument("--explain", action="store_true", help="print the derivation trees")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    solver_command = None
    if args.solver:
        solver_command = [args.solver] + shlex.split(args.solver_args)
    config = RunConfig(
        input_path=args.input,
        max_degree=args.max_degree,
        heuristic=args.heuristic,
        costfree=args.costfree,
        relative=args.relative,
        solver_command=solver_command,
        time_limit=args.timeout,
        verify_size=args.verify,
        json_out=args.json,
        explain=args.explain,
    )
    report = analyse_file(config)
    return finish(report, config)


def finish(report: AnalysisReport, config: RunConfig) -> int:
    if report.explain_text:
        print(report.explain_text)
    if report.status in ("INPUT_ERROR", "SOLVER_ERROR"):
        print(report.summary(), file=sys.stderr)
    else:
        print(report.summary())
        for attempt in report.attempts:
            flags = [attempt.heuristic] if attempt.heuristic != "none" else []
            if attempt.costfree:
                flags.append("costfree")
            extra = f" ({', '.join(flags)})" if flags else ""
            print(
                f"  degree {attempt.degree}: {attempt.status} in {attempt.wall_time:.2f}s, "
                f"{attempt.variables} vars, {attempt.atoms} atoms{extra}"
            )
        if report.verification is not None:
            v = report.verification
            state = "passed" if v.passed else f"FAILED ({len(v.violations)} violations)"
            print(f"  verification: {state} on {v.terms_checked} basic terms")
    if config.json_out:
        try:
            write_report(report, config.json_out)
        except OSError as exc:
            print(f"cannot write report: {exc}", file=sys.stderr)
            return EXIT_INPUT_ERROR
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
