"""Degree search orchestration and machine-readable reporting."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .annotations import Annotation, SignatureTable
from .inference import AnalysisOptions, UnsupportedPatternError, analyse
from .parser import TrsInputError, parse_trs
from .rewriting import RewriteEngine
from .smt import SolveOutcome, solve
from .symbolic import AmbiguousSortsError
from .trs import RelativeTRS
from .validator import VerificationReport, fit_empirical_degree, verify_potential_bound, verify_soundness

EXIT_BOUNDED = 0
EXIT_MAYBE = 1
EXIT_INPUT_ERROR = 2
EXIT_SOLVER_ERROR = 3


@dataclass
class RunConfig:
    input_path: str = ""
    max_degree: int = 3
    heuristic: str = "none"  # none | shift | interleave
    costfree: bool | None = None  # None: off at degree 1, on at degree >= 2
    relative: bool = False
    solver_command: list[str] | None = None  # None: env var, then z3, then bundled
    time_limit: float = 60.0
    verify_size: int = 0  # 0 skips empirical verification
    json_out: str | None = None
    explain: bool = False

    def __post_init__(self):
        assert self.max_degree >= 1
        assert self.time_limit > 0


@dataclass
class DegreeAttempt:
    degree: int
    status: str  # sat | unsat | unknown
    wall_time: float
    variables: int
    atoms: int
    linear_only: bool
    costfree: bool
    heuristic: str
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "status": self.status,
            "wall_time_s": round(self.wall_time, 3),
            "variables": self.variables,
            "atoms": self.atoms,
            "linear_only": self.linear_only,
            "costfree": self.costfree,
            "heuristic": self.heuristic,
            "detail": self.detail,
        }


@dataclass
class AnalysisReport:
    status: str  # BOUNDED | MAYBE | INPUT_ERROR | SOLVER_ERROR
    degree: int | None = None
    signatures: dict | None = None
    attempts: list[DegreeAttempt] = field(default_factory=list)
    verification: VerificationReport | None = None
    empirical: list[dict] | None = None
    error: str | None = None
    explain_text: str | None = None

    @property
    def exit_code(self) -> int:
        return {
            "BOUNDED": EXIT_BOUNDED,
            "MAYBE": EXIT_MAYBE,
            "INPUT_ERROR": EXIT_INPUT_ERROR,
            "SOLVER_ERROR": EXIT_SOLVER_ERROR,
        }[self.status]

    def summary(self) -> str:
        if self.status == "BOUNDED":
            return f"O(n^{self.degree}) innermost runtime (amortised certificate)"
        if self.status == "MAYBE":
            return "MAYBE: no polynomial certificate found at the attempted degrees"
        return f"{self.status}: {self.error}"

    def to_json(self) -> dict:
        verification = self.verification.to_json() if self.verification is not None else None
        if verification is not None and self.empirical is not None:
            verification["empirical"] = self.empirical
        return {
            "status": self.status,
            "degree": self.degree,
            "signatures": self.signatures,
            "attempts": [a.to_json() for a in self.attempts],
            "verification": verification,
            "error": self.error,
            "summary": self.summary(),
        }


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _ann_json(a: Annotation) -> list[str]:
    return [_rat(e) for e in a.entries]


def signatures_json(table: SignatureTable) -> dict:
    out: dict = {}
    for symbol, decl in table.main.items():
        entry = {
            "args": [_ann_json(a) for a in decl.args],
            "result": _ann_json(decl.result),
            "cost": _rat(decl.cost),
        }
        cf = table.costfree.get(symbol)
        if cf is not None:
            entry["costfree"] = {
                "args": [_ann_json(a) for a in cf.args],
                "result": _ann_json(cf.result),
                "cost": _rat(cf.cost),
            }
        out[symbol] = entry
    for symbol, bases in table.bases.items():
        out[symbol] = {
            "bases": [
                {"args": [_ann_json(a) for a in d.args], "result": _ann_json(d.result), "cost": _rat(d.cost)}
                for d in bases
            ]
        }
    return out


def _zero_degree_report(trs: RelativeTRS, config: RunConfig) -> AnalysisReport:
    """No strict rules: no step is ever counted, so rc(n) = 0 in O(n^0)."""
    table = SignatureTable(trs, 0)
    from .annotations import SignatureDecl

    for symbol, info in trs.symbols.items():
        if info.carries_potential:
            table.set_bases(symbol, [])
        else:
            table.set_main(
                symbol, SignatureDecl(tuple(Annotation() for _ in range(info.arity)), Annotation(), Fraction(0))
            )
    report = AnalysisReport("BOUNDED", degree=0, signatures=signatures_json(table))
    if config.verify_size:
        engine = RewriteEngine(trs)
        report.verification = verify_soundness(trs, table, config.verify_size, engine=engine)
        report.empirical = fit_empirical_degree(trs, config.verify_size, engine=engine)
    return report


def analyse_trs(trs: RelativeTRS, config: RunConfig) -> AnalysisReport:
    if not trs.strict_rules:
        return _zero_degree_report(trs, config)

    report = AnalysisReport("MAYBE")
    for degree in range(1, config.max_degree + 1):
        costfree = config.costfree if config.costfree is not None else degree >= 2
        options = AnalysisOptions(degree=degree, costfree=costfree, heuristic=config.heuristic, relative=config.relative)
        explain: list[str] | None = [] if config.explain else None
        try:
            problem, tables = analyse(trs, options, explain)
        except AmbiguousSortsError as exc:
            # heuristic shapes need sort structure; retry with base vectors
            print(f"note: {exc}; falling back to base-vector annotations", file=sys.stderr)
            options.heuristic = "none"
            problem, tables = analyse(trs, options, explain)
        except UnsupportedPatternError as exc:
            report.status = "INPUT_ERROR"
            report.error = str(exc)
            return report
        outcome: SolveOutcome = solve(problem, config.solver_command, config.time_limit)
        stats = problem.stats()
        report.attempts.append(
            DegreeAttempt(
                degree=degree,
                status=outcome.status,
                wall_time=outcome.wall_time,
                variables=stats["variables"],
                atoms=stats["atoms"],
                linear_only=stats["linear_only"],
                costfree=costfree,
                heuristic=options.heuristic,
                detail=outcome.detail,
            )
        )
        if explain is not None:
            report.explain_text = (report.explain_text or "") + f"=== degree {degree} ===\n" + "\n".join(explain) + "\n"
        if outcome.status == "unknown" and outcome.detail.startswith("spawn-failure"):
            report.status = "SOLVER_ERROR"
            report.error = outcome.detail
            return report
        if not outcome.is_sat:
            continue

        assert outcome.assignment is not None
        ok, failing = problem.check_assignment(outcome.assignment)
        assert ok, f"solver model failed exact re-verification: {failing}"
        table = tables.concretise(outcome.assignment)
        report.status = "BOUNDED"
        report.degree = degree
        report.signatures = signatures_json(table)
        if config.verify_size:
            engine = RewriteEngine(trs)
            report.verification = verify_soundness(trs, table, config.verify_size, engine=engine)
            report.empirical = fit_empirical_degree(trs, config.verify_size, engine=engine)
        return report
    return report


def analyse_file(config: RunConfig) -> AnalysisReport:
    try:
        with open(config.input_path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        return AnalysisReport("INPUT_ERROR", error=str(exc))
    try:
        trs = parse_trs(text)
    except TrsInputError as exc:
        return AnalysisReport("INPUT_ERROR", error=str(exc))
    return analyse_trs(trs, config)


def write_report(report: AnalysisReport, path: str) -> None:
    """Deterministic JSON: sorted keys, rationals as num/den strings."""
    text = json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
