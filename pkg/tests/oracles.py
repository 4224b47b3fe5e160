"""Independent brute-force oracles the engine implementations are checked against.

Deliberately naive: plain recursion, no memoisation, no shared state, so
they stay independent of the code paths they certify.
"""

from __future__ import annotations

from fractions import Fraction

from amortrs.annotations import Annotation, SignatureTable
from amortrs.terms import App, Term, Var, match, substitute
from amortrs.trs import RelativeTRS


def naive_is_nf(t: Term, trs: RelativeTRS) -> bool:
    if isinstance(t, Var):
        return True
    assert isinstance(t, App)
    for rule in trs.rules:
        if match(rule.lhs, t) is not None:
            return False
    return all(naive_is_nf(a, trs) for a in t.args)


def naive_successors(t: Term, trs: RelativeTRS) -> set[tuple[Term, int]]:
    """Direct matching over all rules and positions."""
    out: set[tuple[Term, int]] = set()
    if not isinstance(t, App):
        return out
    for rule in trs.rules:
        binding = match(rule.lhs, t)
        if binding is not None and all(naive_is_nf(a, trs) for a in t.args):
            out.add((substitute(rule.rhs, binding), 1 if rule.strict else 0))
    for i, arg in enumerate(t.args):
        for reduct, flag in naive_successors(arg, trs):
            out.add((App(t.fun, t.args[:i] + (reduct,) + t.args[i + 1 :]), flag))
    return out


def naive_max_strict(t: Term, trs: RelativeTRS, budget: int) -> tuple[int, bool]:
    """(max strict steps over all innermost derivations, budget exhausted)."""
    if budget < 0:
        return 0, True
    succs = naive_successors(t, trs)
    if not succs:
        return 0, False
    best, exhausted = 0, budget == 0
    if budget > 0:
        for reduct, flag in succs:
            sub, sub_exhausted = naive_max_strict(reduct, trs, budget - 1)
            best = max(best, sub + flag)
            exhausted = exhausted or sub_exhausted
    return best, exhausted


def naive_potential(v: Term, q: Annotation, table: SignatureTable) -> Fraction:
    """Recursive evaluation of the potential definition, no caching."""
    assert isinstance(v, App)
    info = table.trs.symbols.get(v.fun)
    if info is None or _has_plain_defined(v, table.trs):
        return Fraction(0)
    inst = table.instance(v.fun, q)
    total = inst.cost
    for arg, p in zip(v.args, inst.args):
        total += naive_potential(arg, p, table)
    return total


def _has_plain_defined(v: Term, trs: RelativeTRS) -> bool:
    if not isinstance(v, App):
        return True
    info = trs.symbols.get(v.fun)
    if info is None or not info.carries_potential:
        return True
    return any(_has_plain_defined(a, trs) for a in v.args)
