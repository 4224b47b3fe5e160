"""SMT-LIB2 emission, external solver subprocess and model parsing.

The problem text goes to the solver's stdin; the solver answers
sat/unsat/unknown plus a model on stdout.  Models are parsed into exact
rationals (decimal literals included) and re-verified against every atom
before a SAT outcome is returned.
"""

from __future__ import annotations

import os
import shlex
import shutil
import subprocess
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .expressions import Atom, ConstraintProblem, Poly

SOLVER_ENV_VAR = "AMORTRS_SOLVER"


def emit_smtlib(problem: ConstraintProblem) -> str:
    """Byte-deterministic SMT-LIB2 text for a constraint problem.

    QF_LRA when the problem is linear, QF_NRA otherwise; one real
    constant per variable with a non-negativity assertion, one assertion
    per atom.
    """
    lines = [f"(set-logic {'QF_LRA' if problem.linear_only else 'QF_NRA'})"]
    for name in problem.variables:
        lines.append(f"(declare-const {name} Real)")
    for name in problem.variables:
        lines.append(f"(assert (>= {name} 0))")
    for atom in problem.atoms:
        op = "=" if atom.op == "=" else atom.op
        comment = f" ; {atom.origin}" if atom.origin else ""
        lines.append(f"(assert ({op} {_poly_sexp(atom.lhs)} {_poly_sexp(atom.rhs)})){comment}")
    lines.append("(check-sat)")
    lines.append("(get-model)")
    return "\n".join(lines) + "\n"


def _rat_sexp(value: Fraction) -> str:
    if value < 0:
        return f"(- {_rat_sexp(-value)})"
    if value.denominator == 1:
        return str(value.numerator)
    return f"(/ {value.numerator} {value.denominator})"


def _poly_sexp(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for mono, coeff in p.terms:
        factors = list(mono)
        if coeff != 1 or not factors:
            factors = [_rat_sexp(coeff)] + factors
        parts.append(factors[0] if len(factors) == 1 else f"(* {' '.join(factors)})")
    if len(parts) == 1:
        return parts[0]
    return f"(+ {' '.join(parts)})"


# -- outcome ---------------------------------------------------------------


@dataclass
class SolveOutcome:
    status: str  # 'sat' | 'unsat' | 'unknown'
    assignment: dict[str, Fraction] | None = None
    detail: str = ""
    wall_time: float = 0.0

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"


class SolverNotFoundError(Exception):
    pass


# -- model parsing -----------------------------------------------------------


class ModelParseError(Exception):
    pass


def _sexps(text: str):
    """Tokenise and parse all top-level s-expressions, skipping junk lines."""
    tokens: list[str] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in "()":
            tokens.append(c)
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c == '"':
            j = i + 1
            while j < n and text[j] != '"':
                j += 1
            tokens.append(text[i : j + 1])
            i = j + 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            tokens.append(text[i:j])
            i = j
    pos = 0

    def parse():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            items = []
            while pos < len(tokens) and tokens[pos] != ")":
                items.append(parse())
            pos += 1  # closing paren
            return items
        return tok

    out = []
    while pos < len(tokens):
        if tokens[pos] == ")":
            pos += 1
            continue
        out.append(parse())
    return out


def _parse_value(sexp) -> Fraction:
    if isinstance(sexp, str):
        try:
            return Fraction(sexp)  # handles integers and decimals exactly
        except ValueError as exc:
            raise ModelParseError(f"unparseable numeral {sexp!r}") from exc
    if not sexp:
        raise ModelParseError("empty value expression")
    head = sexp[0]
    if head == "-" and len(sexp) == 2:
        return -_parse_value(sexp[1])
    if head == "/" and len(sexp) == 3:
        return _parse_value(sexp[1]) / _parse_value(sexp[2])
    if head == "*":
        out = Fraction(1)
        for item in sexp[1:]:
            out *= _parse_value(item)
        return out
    if head == "+":
        return sum((_parse_value(item) for item in sexp[1:]), Fraction(0))
    raise ModelParseError(f"unsupported model value {sexp!r}")


def parse_model(text: str, variables: list[str]) -> dict[str, Fraction]:
    """Extract variable values from solver output after a 'sat' line.

    Variables missing from the model default to 0 (the caller re-verifies
    the assignment anyway).  Irrational values raise ModelParseError.
    """
    assignment = {name: Fraction(0) for name in variables}
    known = set(variables)
    for sexp in _sexps(text):
        if not isinstance(sexp, list):
            continue
        entries = sexp[1:] if sexp and sexp[0] == "model" else sexp
        for entry in entries:
            if (
                isinstance(entry, list)
                and len(entry) == 5
                and entry[0] == "define-fun"
                and entry[1] in known
                and entry[2] == []
            ):
                assignment[entry[1]] = _parse_value(entry[4])
    return assignment


# -- solver discovery and invocation ----------------------------------------


def bundled_wrapper_path() -> str:
    return str(resources.files("amortrs").joinpath("solverbin", "z3wasm.cjs"))


def default_solver_command() -> list[str]:
    """Pick the external solver: env var, then z3 on PATH, then bundled WASM z3.

    The environment variable holds a full command (shell-split); the
    bundled fallback needs node plus the z3-solver npm package (local or
    global).
    """
    env = os.environ.get(SOLVER_ENV_VAR)
    if env:
        return shlex.split(env)
    z3 = shutil.which("z3")
    if z3:
        return [z3, "-in"]
    node = shutil.which("node")
    if node:
        return [node, bundled_wrapper_path()]
    raise SolverNotFoundError(
        f"no SMT solver found: set {SOLVER_ENV_VAR}, install z3, or install node with 'npm i -g z3-solver'"
    )


def solve(
    problem: ConstraintProblem,
    solver_command: list[str] | None = None,
    time_limit: float = 60.0,
) -> SolveOutcome:
    """Run the external solver on the emitted problem.

    SAT assignments are re-verified against every atom in exact
    arithmetic; a model that fails re-verification is reported as
    unknown, never as sat.
    """
    text = emit_smtlib(problem)
    if solver_command is None:
        try:
            solver_command = default_solver_command()
        except SolverNotFoundError as exc:
            return SolveOutcome("unknown", detail=f"spawn-failure: {exc}")
    started = time.monotonic()
    try:
        proc = subprocess.run(
            solver_command,
            input=text,
            capture_output=True,
            text=True,
            timeout=time_limit,
        )
    except subprocess.TimeoutExpired:
        return SolveOutcome("unknown", detail=f"timeout after {time_limit}s", wall_time=time.monotonic() - started)
    except OSError as exc:
        return SolveOutcome("unknown", detail=f"spawn-failure: {exc}", wall_time=time.monotonic() - started)
    wall = time.monotonic() - started

    stdout = proc.stdout
    status = None
    for line in stdout.splitlines():
        word = line.strip()
        if word in ("sat", "unsat", "unknown"):
            status = word
            break
    if status is None:
        detail = (proc.stderr or stdout or "no solver output").strip()
        return SolveOutcome("unknown", detail=f"solver-error: {detail[:500]}", wall_time=wall)
    if status == "unsat":
        return SolveOutcome("unsat", wall_time=wall)
    if status == "unknown":
        return SolveOutcome("unknown", detail="solver answered unknown", wall_time=wall)

    try:
        assignment = parse_model(stdout, problem.variables)
    except ModelParseError as exc:
        return SolveOutcome("unknown", detail=f"model-parse-failure: {exc}", wall_time=wall)
    ok, failing = problem.check_assignment(assignment)
    if not ok:
        return SolveOutcome(
            "unknown",
            detail=f"model failed exact re-verification at: {failing}",
            wall_time=wall,
        )
    return SolveOutcome("sat", assignment=assignment, wall_time=wall)


def check_assignment(problem: ConstraintProblem, assignment: dict[str, Fraction]) -> tuple[bool, Atom | None]:
    """Exact evaluation of every atom; returns (ok, first failing atom)."""
    return problem.check_assignment(assignment)
