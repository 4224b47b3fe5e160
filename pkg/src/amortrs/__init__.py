"""Amortised resource analysis for term rewrite systems.

Derives polynomial bounds on the innermost runtime complexity of
(relative) TRSs: annotation constraints are generated from an inference
system over annotated signatures, discharged by an external SMT solver,
and every derived bound is validated empirically by exhaustive
small-scale rewriting.
"""

from .analysis import AnalysisReport, RunConfig, analyse_file, analyse_trs, write_report
from .annotations import Annotation, SignatureDecl, SignatureTable, ann, ann_add, ann_leq, ann_scale, potential, share_split, unit
from .bounds import interleave, shift
from .inference import AnalysisOptions, analyse, derive, footprint, rule_constraints, select_app_rule
from .parser import TrsInputError, parse_trs, pretty_trs
from .rewriting import ExplorationResult, RewriteEngine, enumerate_basic_terms, is_basic
from .smt import SolveOutcome, check_assignment, emit_smtlib, solve
from .terms import App, Term, Var, app, linearise
from .trs import RelativeTRS, Rule, SymbolClass, call_graph_sccs, classify_symbols
from .validator import VerificationReport, fit_empirical_degree, verify_potential_bound, verify_soundness

__version__ = "0.1.0"

__all__ = [
    "AnalysisOptions",
    "AnalysisReport",
    "Annotation",
    "App",
    "ExplorationResult",
    "RelativeTRS",
    "RewriteEngine",
    "Rule",
    "RunConfig",
    "SignatureDecl",
    "SignatureTable",
    "SolveOutcome",
    "SymbolClass",
    "Term",
    "TrsInputError",
    "Var",
    "VerificationReport",
    "analyse",
    "analyse_file",
    "analyse_trs",
    "ann",
    "ann_add",
    "ann_leq",
    "ann_scale",
    "app",
    "call_graph_sccs",
    "check_assignment",
    "classify_symbols",
    "derive",
    "emit_smtlib",
    "enumerate_basic_terms",
    "fit_empirical_degree",
    "footprint",
    "interleave",
    "is_basic",
    "linearise",
    "parse_trs",
    "potential",
    "pretty_trs",
    "rule_constraints",
    "select_app_rule",
    "share_split",
    "shift",
    "solve",
    "unit",
    "verify_potential_bound",
    "verify_soundness",
    "write_report",
]
