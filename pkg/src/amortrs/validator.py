"""Empirical validation of solved analyses by exhaustive small-scale search.

Soundness: for every basic term, the measured maximum number of strict
steps over all innermost derivations must stay within the potential of
the arguments plus the declared cost.  The polynomial-potential bound is
likewise confirmed by brute force.  All comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .annotations import Annotation, SignatureTable, potential
from .rewriting import RewriteEngine, constructor_terms, enumerate_basic_terms
from .terms import App, Term
from .trs import RelativeTRS


@dataclass
class Violation:
    term: Term
    strict_steps: int
    budget: Fraction


@dataclass
class VerificationReport:
    terms_checked: int = 0
    max_slack: Fraction | None = None  # min over terms of budget - strict steps
    violations: list[Violation] = field(default_factory=list)
    budget_exhausted: list[Term] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "terms_checked": self.terms_checked,
            "max_slack": _rat(self.max_slack) if self.max_slack is not None else None,
            "violations": [
                {"term": str(v.term), "strict_steps": v.strict_steps, "budget": _rat(v.budget)}
                for v in self.violations
            ],
            "budget_exhausted": [str(t) for t in self.budget_exhausted],
            "passed": self.passed,
        }


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def verify_soundness(
    trs: RelativeTRS,
    table: SignatureTable,
    max_size: int = 8,
    budget: int = 10_000,
    engine: RewriteEngine | None = None,
) -> VerificationReport:
    """Check the soundness inequality on every basic term up to max_size.

    For f(v_1,..,v_n) with main declaration p_1 x .. x p_n -> q | k the
    budget is sum_i Phi(v_i : p_i) + k; a violation is recorded whenever
    some innermost derivation performs more strict steps than that.
    Exploration cut off by the step budget is reported separately, not
    failed (weak rules may loop; termination is assumed, not checked).
    """
    engine = engine or RewriteEngine(trs)
    report = VerificationReport()
    for t in enumerate_basic_terms(trs, max_size):
        assert isinstance(t, App)
        decl = table.main.get(t.fun)
        if decl is None:
            # constructor-like roots: the zero instance gives budget k = 0
            decl = table.instance(t.fun, Annotation())
        bound = decl.cost
        for arg, p in zip(t.args, decl.args):
            bound += potential(arg, p, table)
        result = engine.explore(t, budget)
        if result.exhausted:
            report.budget_exhausted.append(t)
            continue
        report.terms_checked += 1
        slack = bound - result.max_strict_steps
        if slack < 0:
            report.violations.append(Violation(t, result.max_strict_steps, bound))
        if report.max_slack is None or slack < report.max_slack:
            report.max_slack = slack
    return report


def verify_potential_bound(
    trs: RelativeTRS,
    table: SignatureTable,
    max_size: int = 10,
) -> tuple[bool, list[tuple[Term, Annotation, Fraction, Fraction]]]:
    """Brute-force the polynomial potential bound.

    For every ground term v over the potential carriers with size(v) <=
    max_size and every argument annotation q of a defined symbol's main
    declaration:  Phi(v : q) <= (max q) * size(v)^(len q), exactly.
    Returns (ok, failures) with the offending (v, q, Phi, bound) tuples.
    """
    annotations: list[Annotation] = []
    seen = set()
    for decl in table.main.values():
        for q in decl.args:
            if q not in seen:
                seen.add(q)
                annotations.append(q)
    failures: list[tuple[Term, Annotation, Fraction, Fraction]] = []
    by_size = constructor_terms(trs, max_size, include_constructor_like=True)
    from .annotations import _phi

    for q in annotations:
        table._phi.clear()  # bound the memo per annotation
        max_q, degree = q.max_entry(), q.degree()
        for size in range(1, max_size + 1):
            limit = max_q * Fraction(size) ** degree
            for v in by_size[size]:
                phi = _phi(v, q, table)
                if phi > limit:
                    failures.append((v, q, phi, limit))
    table._phi.clear()
    return not failures, failures


def fit_empirical_degree(
    trs: RelativeTRS,
    max_size: int = 8,
    budget: int = 10_000,
    engine: RewriteEngine | None = None,
) -> list[dict]:
    """Observed growth: per input size, the max strict steps over basic terms.

    Purely descriptive; no fitting decision is made.
    """
    engine = engine or RewriteEngine(trs)
    buckets: dict[int, dict] = {}
    for t in enumerate_basic_terms(trs, max_size):
        size = t.size()
        row = buckets.setdefault(size, {"size": size, "max_strict_steps": 0, "terms": 0, "exhausted": 0})
        row["terms"] += 1
        result = engine.explore(t, budget)
        if result.exhausted:
            row["exhausted"] += 1
            continue
        row["max_strict_steps"] = max(row["max_strict_steps"], result.max_strict_steps)
    return [buckets[size] for size in sorted(buckets)]
