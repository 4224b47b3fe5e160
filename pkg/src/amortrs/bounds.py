"""Polynomial-bound constraints and heuristic annotation shapes.

thm2-style side conditions on constructor declarations guarantee that the
potential of a value of size n under a length-k annotation stays within
(max q) * n^k, which turns resource boundedness into a polynomial runtime
bound.  The additive-shift and interleaving shapes fix the constructor
annotation families syntactically so the generated problem stays linear.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .annotations import Annotation
from .expressions import ConstraintProblem, Poly, ZERO
from .terms import App, Var, subterms
from .trs import RelativeTRS

Vector = Sequence  # entries are Poly or Fraction; operations preserve the kind


def shift(p):
    """Additive shift: (p1+p2, p2+p3, ..., p_{k-1}+p_k, p_k)."""
    entries = list(p)
    if not entries:
        return Annotation() if isinstance(p, Annotation) else ()
    out = [entries[i] + entries[i + 1] for i in range(len(entries) - 1)]
    out.append(entries[-1])
    return Annotation(out) if isinstance(p, Annotation) else tuple(out)


def interleave(p, q):
    """Interleaving (p1,q1,p2,q2,...); the shorter side is zero-padded."""
    ps, qs = list(p), list(q)
    n = max(len(ps), len(qs))
    if n == 0:
        return Annotation() if isinstance(p, Annotation) else ()
    if isinstance(p, Annotation) or isinstance(q, Annotation):
        zero = Fraction(0)
    else:
        zero = ZERO
    ps += [zero] * (n - len(ps))
    qs += [zero] * (n - len(qs))
    out = []
    for a, b in zip(ps, qs):
        out.append(a)
        out.append(b)
    if isinstance(p, Annotation) or isinstance(q, Annotation):
        return Annotation(out)
    return tuple(out)


def deinterleave(q: Sequence[Poly], streams: int, index: int) -> tuple[Poly, ...]:
    """Stream ``index`` (0-based) of the round-robin split of q."""
    return tuple(q[c] for c in range(index, len(q), streams))


def thm2_constraints(
    problem: ConstraintProblem,
    args: Sequence[Sequence[Poly]],
    result: Sequence[Poly],
    cost: Poly,
    result_length: int,
    origin: str,
) -> None:
    """Side conditions bounding one constructor declaration.

    For a declaration p_1 x .. x p_n -> q with cost k' and len(q) = k,
    existential vectors r_i of length k-1 are introduced with

        p_i <= q + r_i   componentwise,
        max r_i <= max q,  k' <= max q.

    ``result_length`` is the semantic length k of the result (trailing
    zeros of the stored, degree-padded vector do not count).  The max of
    the result must be syntactically available: any constant vector, or a
    symbolic vector of length one.
    """
    k = result_length
    max_q = _max_entry(result, k)
    for i, p in enumerate(args, start=1):
        r = [problem.fresh(f"{origin}.r{i}") for _ in range(k - 1)]
        for idx, entry in enumerate(r):
            problem.add("<=", entry, max_q, f"{origin} arg {i} excess bound")
        for c in range(len(p)):
            q_c = result[c] if c < len(result) else ZERO
            r_c = r[c] if c < k - 1 else ZERO
            problem.add("<=", p[c], q_c + r_c, f"{origin} arg {i} component {c + 1}")
    problem.add("<=", cost, max_q, f"{origin} cost bound")


def _max_entry(result: Sequence[Poly], k: int):
    entries = [result[c] for c in range(min(k, len(result)))]
    if not entries:
        return ZERO
    if all(e.is_constant() for e in entries):
        return Poly.const(max(e.constant_value() for e in entries))
    if len(entries) == 1:
        return entries[0]
    raise ValueError("max of a symbolic result vector of length >= 2 is not encodable here")


def superposition_closure_constraints(
    problem: ConstraintProblem,
    base_args: list[list[Sequence[Poly]]],
    base_costs: list[Poly],
    origin: str,
) -> None:
    """Strengthening that makes the thm2 conditions instance-closed.

    The base declarations alone do not force every superposition instance
    to satisfy the thm2 side conditions (costs and cross-degree entries
    can accumulate across bases).  Requiring

        sum_{j > c} b_{j,i,c} <= 1      per argument i and component c,
        sum_j  cost_j        <= 1

    does: any instance at result q then obeys p_i <= q + r_i with
    max r_i <= max q and cost <= max q.  No-ops at degree 1.
    """
    d = len(base_costs)
    if d <= 1:
        return
    arity = len(base_args[0]) if base_args else 0
    for i in range(arity):
        for c in range(d):
            above = [base_args[j][i][c] for j in range(c + 1, d)]
            if above:
                total = above[0]
                for e in above[1:]:
                    total = total + e
                problem.add("<=", total, Poly.const(1), f"{origin} arg {i + 1} component {c + 1} closure")
    total_cost = base_costs[0]
    for e in base_costs[1:]:
        total_cost = total_cost + e
    problem.add("<=", total_cost, Poly.const(1), f"{origin} cost closure")


class SortInference:
    """Fixed-point sort propagation over an unsorted TRS.

    Slots (symbol, 0) stand for result sorts and (symbol, i) for argument
    positions; occurrences and rules unify slots.  An argument position of
    a constructor is recursive iff it ends up in the sort class of the
    constructor's own result.
    """

    def __init__(self, trs: RelativeTRS):
        self.trs = trs
        self.parent: dict = {}
        for name, info in trs.symbols.items():
            for i in range(info.arity + 1):
                self.parent[(name, i)] = (name, i)
        for ridx, rule in enumerate(trs.rules):
            var_slots: dict[str, tuple] = {}
            self._walk(rule.lhs, ridx, var_slots)
            self._walk(rule.rhs, ridx, var_slots)
            self._union(self._sort_of(rule.lhs, ridx, var_slots), self._sort_of(rule.rhs, ridx, var_slots))

    def _find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def _union(self, a, b):
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self.parent[rb] = ra

    def _sort_of(self, t, ridx, var_slots):
        if isinstance(t, Var):
            slot = ("$var", ridx, t.name)
            if slot not in self.parent:
                self.parent[slot] = slot
            var_slots[t.name] = slot
            return slot
        return (t.fun, 0)

    def _walk(self, t, ridx, var_slots):
        if isinstance(t, Var):
            self._sort_of(t, ridx, var_slots)
            return
        assert isinstance(t, App)
        for i, arg in enumerate(t.args, start=1):
            self._union((t.fun, i), self._sort_of(arg, ridx, var_slots))
            self._walk(arg, ridx, var_slots)

    def recursive_positions(self, symbol: str) -> list[bool]:
        info = self.trs.symbols[symbol]
        res = self._find((symbol, 0))
        return [self._find((symbol, i)) == res for i in range(1, info.arity + 1)]

    def is_degenerate(self) -> bool:
        """All symbol sorts collapsed into one class (no usable structure)."""
        classes = {self._find((name, 0)) for name in self.trs.symbols}
        return len(classes) <= 1 and len(self.trs.symbols) > 1
