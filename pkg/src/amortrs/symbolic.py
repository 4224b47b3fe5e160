"""Symbolic annotated signatures: annotation entries as constraint unknowns.

The inference engine derives judgements over these tables; solving the
collected constraints and substituting the model back through
``concretise`` yields the concrete signature table the validator checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import bounds
from .annotations import Annotation, SignatureDecl, SignatureTable, unit
from .expressions import ConstraintProblem, Poly, ZERO
from .trs import RelativeTRS

SymAnn = tuple[Poly, ...]


def sym_const(a: Annotation, length: int | None = None) -> SymAnn:
    entries = a.padded(length) if length is not None else a.entries
    return tuple(Poly.const(e) for e in entries)


def sym_add(p: SymAnn, q: SymAnn) -> SymAnn:
    n = max(len(p), len(q))
    p = p + (ZERO,) * (n - len(p))
    q = q + (ZERO,) * (n - len(q))
    return tuple(a + b for a, b in zip(p, q))


def sym_scale(factor: Poly | Fraction | int, p: SymAnn) -> SymAnn:
    return tuple(e * factor if isinstance(factor, (int, Fraction)) else factor * e for e in p)


def sym_eval(p: SymAnn, assignment: Mapping[str, Fraction]) -> Annotation:
    return Annotation(e.evaluate(assignment) for e in p)


@dataclass(frozen=True)
class SymDecl:
    args: tuple[SymAnn, ...]
    result: SymAnn
    cost: Poly

    def evaluate(self, assignment: Mapping[str, Fraction]) -> SignatureDecl:
        return SignatureDecl(
            tuple(sym_eval(a, assignment) for a in self.args),
            sym_eval(self.result, assignment),
            self.cost.evaluate(assignment),
        )


class SymbolicTables:
    """Per-symbol symbolic declarations at a fixed analysis degree.

    Defined symbols get one main declaration (and one cost-free
    declaration when enabled).  Potential carriers (constructors and
    constructor-like symbols) get ``degree`` base declarations with unit
    results in base-vector mode, or formula-shaped families under the
    shift / interleave heuristics; instances for any requested result
    annotation are forced linear combinations either way, so uniqueness
    and superposition hold by construction.
    """

    def __init__(self, trs: RelativeTRS, degree: int, heuristic: str = "none"):
        self.trs = trs
        self.degree = degree
        self.heuristic = heuristic
        self.main: dict[str, SymDecl] = {}
        self.costfree: dict[str, SymDecl] = {}
        self.bases: dict[str, list[SymDecl]] = {}
        self.recursive_positions: dict[str, list[bool]] = {}

    def bases_for(self, symbol: str) -> list[SymDecl]:
        """Base declarations (results e_1 .. e_d), synthesised under heuristics."""
        if self.heuristic == "none":
            return self.bases[symbol]
        return [self.instance(symbol, sym_const(unit(j), self.degree)) for j in range(1, self.degree + 1)]

    def instance(self, symbol: str, result: SymAnn) -> SymDecl:
        """The unique instance declaration with the given symbolic result."""
        arity = self.trs.symbols[symbol].arity
        if self.heuristic == "none":
            bases = self.bases[symbol]
            args = [tuple(ZERO for _ in range(self.degree)) for _ in range(arity)]
            cost = ZERO
            for j, base in enumerate(bases):
                coeff = result[j] if j < len(result) else ZERO
                if coeff == ZERO:
                    continue
                args = [sym_add(a, sym_scale(coeff, b)) for a, b in zip(args, base.args)]
                cost = cost + coeff * base.cost
            return SymDecl(tuple(args), result, cost)
        return self._heuristic_instance(symbol, result)

    def _heuristic_instance(self, symbol: str, result: SymAnn) -> SymDecl:
        flags = self.recursive_positions[symbol]
        zero = tuple(ZERO for _ in range(self.degree))
        if not flags:
            return SymDecl((), result, ZERO)  # nullary: () -> q with cost 0
        args: list[SymAnn] = []
        streams = sum(flags)
        stream_index = 0
        for recursive in flags:
            if not recursive:
                args.append(zero)
                continue
            if self.heuristic == "shift":
                args.append(bounds.shift(result))
            else:  # interleave: round-robin split of the result across streams
                part = bounds.deinterleave(result, streams, stream_index)
                args.append(part + (ZERO,) * (self.degree - len(part)))
            stream_index += 1
        cost = result[0] if result else ZERO
        return SymDecl(tuple(args), result, cost)

    def concretise(self, assignment: Mapping[str, Fraction]) -> SignatureTable:
        """Substitute a model, yielding the concrete signature table."""
        table = SignatureTable(self.trs, self.degree)
        for symbol, d in self.main.items():
            table.set_main(symbol, d.evaluate(assignment))
        for symbol, d in self.costfree.items():
            table.set_costfree(symbol, d.evaluate(assignment))
        for symbol in self.trs.potential_carriers():
            if self.heuristic == "none":
                table.set_bases(symbol, [d.evaluate(assignment) for d in self.bases[symbol]])
            else:
                # heuristic families are linear in the result, so the
                # instances at unit results are a base-vector presentation
                units = [
                    self.instance(symbol, sym_const(unit(j), self.degree)).evaluate(assignment)
                    for j in range(1, self.degree + 1)
                ]
                table.set_bases(symbol, units)
        return table


def fresh_annotation(problem: ConstraintProblem, prefix: str, length: int) -> SymAnn:
    return tuple(problem.fresh(f"{prefix}.{j}") for j in range(1, length + 1))


def build_tables(trs: RelativeTRS, degree: int, problem: ConstraintProblem, heuristic: str = "none", costfree: bool = False) -> SymbolicTables:
    """Create the symbolic declarations and register their variables.

    In base-vector mode every carrier gets ``degree`` base declarations
    with fresh argument entries and costs (results are the unit vectors);
    under a heuristic the carrier families are closed formulas and
    contribute no variables at all, which keeps the problem linear.
    """
    tables = SymbolicTables(trs, degree, heuristic)
    if heuristic != "none":
        sorts = bounds.SortInference(trs)
        if sorts.is_degenerate():
            raise AmbiguousSortsError(
                "sort inference collapsed to a single sort; heuristic shapes need type structure"
            )
        for symbol in trs.potential_carriers():
            flags = sorts.recursive_positions(symbol)
            tables.recursive_positions[symbol] = flags
            problem.symbol_vars[symbol] = {"kind": "constructor", "heuristic": heuristic, "recursive": flags}
    else:
        for symbol in trs.potential_carriers():
            arity = trs.symbols[symbol].arity
            decls = []
            for j in range(1, degree + 1):
                args = tuple(fresh_annotation(problem, f"b.{symbol}.{j}.a{i}", degree) for i in range(1, arity + 1))
                cost = problem.fresh(f"ck.{symbol}.{j}")
                decls.append(SymDecl(args, sym_const(unit(j), degree), cost))
            tables.bases[symbol] = decls
            _register_ctor_vars(problem, symbol, decls)

    for symbol in trs.symbols:
        info = trs.symbols[symbol]
        if not info.is_defined or info.carries_potential:
            continue
        tables.main[symbol] = _fresh_decl(problem, symbol, info.arity, degree, "")
        _register_defined_vars(problem, symbol, tables.main[symbol], "main")
        if costfree:
            tables.costfree[symbol] = _fresh_decl(problem, symbol, info.arity, degree, "cf.")
            _register_defined_vars(problem, symbol, tables.costfree[symbol], "costfree")
    return tables


class AmbiguousSortsError(Exception):
    pass


def _fresh_decl(problem: ConstraintProblem, symbol: str, arity: int, degree: int, tag: str) -> SymDecl:
    args = tuple(fresh_annotation(problem, f"{tag}p.{symbol}.a{i}", degree) for i in range(1, arity + 1))
    result = fresh_annotation(problem, f"{tag}q.{symbol}", degree)
    cost = problem.fresh(f"{tag}k.{symbol}")
    return SymDecl(args, result, cost)


def _var_names(ann: SymAnn) -> list[str]:
    names = []
    for poly in ann:
        (mono, coeff), = poly.terms
        assert coeff == 1 and len(mono) == 1
        names.append(mono[0])
    return names


def _register_defined_vars(problem: ConstraintProblem, symbol: str, d: SymDecl, kind: str) -> None:
    entry = problem.symbol_vars.setdefault(symbol, {"kind": "defined"})
    entry[kind] = {
        "args": [_var_names(a) for a in d.args],
        "result": _var_names(d.result),
        "cost": _poly_name(d.cost),
    }


def _register_ctor_vars(problem: ConstraintProblem, symbol: str, decls: list[SymDecl]) -> None:
    problem.symbol_vars[symbol] = {
        "kind": "constructor",
        "bases": [
            {"args": [_var_names(a) for a in d.args], "cost": _poly_name(d.cost)}
            for d in decls
        ],
    }


def _poly_name(p: Poly) -> str:
    (mono, coeff), = p.terms
    assert coeff == 1 and len(mono) == 1
    return mono[0]
