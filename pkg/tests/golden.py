"""The hand-checked queue model: the published operator annotations
completed with consistent values for checkF and the constructors.

enq 15->7|12, rev 1->0|4, rev' 1x0->0|2, snoc 7x0->7|14, head 11->0|9,
tail 11->1|3; nil ()->k|0 and cons 0xk->k|k; completed with
checkF 7->7|5, queue 0x1->e1|1, S 1->e1|1, 0/errorHead/errorTail zero.
"""

from __future__ import annotations

from fractions import Fraction

from amortrs.annotations import Annotation, SignatureDecl, SignatureTable, ann, decl, unit
from amortrs.expressions import ConstraintProblem
from amortrs.trs import RelativeTRS

GOLDEN_DEFINED: dict[str, tuple[list[list[int]], list[int], int]] = {
    "enq": ([[15]], [7], 12),
    "rev": ([[1]], [0], 4),
    "rev'": ([[1], [0]], [0], 2),
    "snoc": ([[7], [0]], [7], 14),
    "head": ([[11]], [0], 9),
    "tail": ([[11]], [1], 3),
    "checkF": ([[7]], [7], 5),
}

GOLDEN_CONSTRUCTORS: dict[str, list[tuple[list[list[int]], int]]] = {
    "nil": [([], 0)],
    "cons": [([[0], [1]], 1)],
    "queue": [([[0], [1]], 1)],
    "0": [([], 0)],
    "S": [([[1]], 1)],
    "errorHead": [([], 0)],
    "errorTail": [([], 0)],
}


def golden_assignment(problem: ConstraintProblem) -> dict[str, Fraction]:
    """Total assignment for the degree-1 queue problem (decl variables only)."""
    assignment: dict[str, Fraction] = {}
    for sym, (args, res, cost) in GOLDEN_DEFINED.items():
        index = problem.symbol_vars[sym]["main"]
        for names, values in zip(index["args"], args):
            for name, value in zip(names, values):
                assignment[name] = Fraction(value)
        for name, value in zip(index["result"], res):
            assignment[name] = Fraction(value)
        assignment[index["cost"]] = Fraction(cost)
    for sym, bases in GOLDEN_CONSTRUCTORS.items():
        for base_index, (args, cost) in zip(problem.symbol_vars[sym]["bases"], bases):
            for names, values in zip(base_index["args"], args):
                for name, value in zip(names, values):
                    assignment[name] = Fraction(value)
            assignment[base_index["cost"]] = Fraction(cost)
    return assignment


def golden_table(trs: RelativeTRS) -> SignatureTable:
    table = SignatureTable(trs, 1)
    for sym, bases in GOLDEN_CONSTRUCTORS.items():
        table.set_bases(sym, [decl([Annotation(a) for a in args], unit(1), cost) for args, cost in bases])
    for sym, (args, res, cost) in GOLDEN_DEFINED.items():
        table.set_main(sym, SignatureDecl(tuple(Annotation(a) for a in args), Annotation(res), Fraction(cost)))
    return table
