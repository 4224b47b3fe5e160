"""Innermost rewriting: successors, exhaustive exploration, basic terms.

The engine treats the relative TRS R/S as the single TRS Q = R u S and
performs Q-restricted steps (all arguments of the redex in Q-normal form),
tagging each step with 1 if the applied rule is strict and 0 if weak.
Counting the strict tags along derivations yields the derivation height
with respect to the relative innermost relation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .terms import App, Term, match, substitute, subterms
from .trs import RelativeTRS, Rule, SymbolClass


@dataclass
class ExplorationResult:
    max_strict_steps: int
    exhausted: bool
    normal_forms: set[Term] = field(default_factory=set)


class RewriteEngine:
    """Shared rewriting machinery for one TRS.

    Normal-form status, one-step successors and exploration results are
    memoised; caches are only ever extended, so one engine can serve many
    start terms.  The TRS itself is immutable and freely shareable;
    independent engines can run concurrently.
    """

    def __init__(self, trs: RelativeTRS):
        self.trs = trs
        self._by_root: dict[str, list[Rule]] = {}
        for rule in trs.rules:
            self._by_root.setdefault(rule.root, []).append(rule)
        self._nf: dict[Term, bool] = {}
        self._succ: dict[Term, tuple[tuple[Term, int], ...]] = {}
        # term -> (max strict steps, max total steps, reachable normal forms);
        # only completely explored terms are stored, so entries are exact and
        # budget-independent.
        self._explored: dict[Term, tuple[int, int, frozenset[Term]]] = {}

    # -- normal forms ---------------------------------------------------

    def root_reducible(self, t: Term) -> bool:
        """Does some rule lhs match t at the root (ignoring argument NF)?"""
        if not isinstance(t, App):
            return False
        return any(match(rule.lhs, t) is not None for rule in self._by_root.get(t.fun, ()))

    def is_normal_form(self, t: Term) -> bool:
        """No rule of R u S matches any subterm (plain rewriting)."""
        cached = self._nf.get(t)
        if cached is not None:
            return cached
        result = True
        if isinstance(t, App):
            for a in t.args:
                if not self.is_normal_form(a):
                    result = False
                    break
            if result and self.root_reducible(t):
                result = False
        self._nf[t] = result
        return result

    # -- one step ---------------------------------------------------------

    def innermost_successors(self, t: Term) -> set[tuple[Term, int]]:
        """All one-step Q-restricted reducts of a ground term.

        Each reduct is tagged 1 if the applied rule is strict, 0 if weak.
        Empty iff t is a normal form of R u S.
        """
        return set(self._successors(t))

    def _successors(self, t: Term) -> tuple[tuple[Term, int], ...]:
        cached = self._succ.get(t)
        if cached is not None:
            return cached
        out: list[tuple[Term, int]] = []
        if isinstance(t, App):
            args_normal = True
            for i, arg in enumerate(t.args):
                if self._successors(arg):
                    args_normal = False
                    for reduct, flag in self._succ[arg]:
                        new_args = t.args[:i] + (reduct,) + t.args[i + 1 :]
                        out.append((App(t.fun, new_args), flag))
            if args_normal:
                for rule in self._by_root.get(t.fun, ()):
                    binding = match(rule.lhs, t)
                    if binding is not None:
                        out.append((substitute(rule.rhs, binding), 1 if rule.strict else 0))
        result = tuple(dict.fromkeys(out))
        self._succ[t] = result
        return result

    # -- exhaustive exploration --------------------------------------------

    def explore(self, t: Term, budget: int = 10_000) -> ExplorationResult:
        """Explore all innermost derivations from a ground term.

        max_strict_steps is the maximum number of strict-rule applications
        over the explored derivations.  The budget bounds the total number
        of rewrite steps (strict + weak) per derivation; hitting it, or
        detecting a cycle, sets exhausted instead of raising (weak rules
        may loop without strict cost).  Increasing the budget never
        decreases max_strict_steps.
        """
        known = self._explored.get(t)
        if known is not None:
            strict, total, nfs = known
            return ExplorationResult(strict, total > budget, set(nfs))

        exhausted = False
        on_path: set[Term] = {t}
        # Frames: [term, remaining, next successor index, best strict,
        # best total, complete, nf accumulator, successor list].  An
        # explicit stack is used because derivations may be as long as the
        # budget, far beyond the recursion limit.
        stack: list[list] = [[t, budget, 0, 0, 0, True, set(), None]]
        ret: tuple[int, int, bool, frozenset[Term]] | None = None
        while stack:
            frame = stack[-1]
            term, remaining, idx = frame[0], frame[1], frame[2]
            succs = frame[7]
            if succs is None:
                succs = frame[7] = self._successors(term)
                if not succs:
                    nf = frozenset([term])
                    self._explored[term] = (0, 0, nf)
                    ret = (0, 0, True, nf)
                    on_path.discard(term)
                    stack.pop()
                    continue
            if ret is not None:
                child_s, child_t, child_complete, child_nfs = ret
                flag = succs[idx - 1][1]
                frame[3] = max(frame[3], child_s + flag)
                frame[4] = max(frame[4], child_t + 1)
                frame[5] = frame[5] and child_complete
                frame[6] |= child_nfs
                ret = None
            if idx < len(succs):
                frame[2] += 1
                child = succs[idx][0]
                known = self._explored.get(child)
                if known is not None:
                    s, tot, child_nfs = known
                    if tot + 1 > remaining:
                        exhausted = True  # this branch would exceed the budget
                    ret = (s, tot, True, child_nfs)
                    continue
                if child in on_path:
                    # cycle: an infinite derivation; treated as budget exhaustion
                    exhausted = True
                    ret = (0, 0, False, frozenset())
                    continue
                if remaining == 0:
                    exhausted = True
                    ret = (0, 0, False, frozenset())
                    continue
                on_path.add(child)
                stack.append([child, remaining - 1, 0, 0, 0, True, set(), None])
                continue
            nfs = frozenset(frame[6])
            if frame[5]:
                self._explored[term] = (frame[3], frame[4], nfs)
            ret = (frame[3], frame[4], frame[5], nfs)
            on_path.discard(term)
            stack.pop()
        assert ret is not None
        strict, _total, complete, nfs = ret
        return ExplorationResult(strict, exhausted or not complete, set(nfs))


def constructor_terms(trs: RelativeTRS, max_size: int, include_constructor_like: bool = False) -> list[list[Term]]:
    """Ground terms over constructors, grouped by exact size.

    Index s of the result holds the terms of size s (index 0 is empty).
    With include_constructor_like, constructor-like symbols participate as
    well (they carry potential).  Order is deterministic: size, then the
    symbol-table order, then componentwise.
    """
    names = trs.potential_carriers() if include_constructor_like else trs.constructors()
    infos = [trs.symbols[name] for name in names]
    by_size: list[list[Term]] = [[] for _ in range(max_size + 1)]
    for size in range(1, max_size + 1):
        bucket = by_size[size]
        for info in infos:
            if info.arity == 0:
                if size == 1:
                    bucket.append(App(info.name))
                continue
            if size - 1 < info.arity:
                continue
            for split in _compositions(size - 1, info.arity):
                for combo in itertools.product(*(by_size[part] for part in split)):
                    bucket.append(App(info.name, combo))
    return by_size


def _compositions(total: int, parts: int):
    """All ways of writing total as an ordered sum of ``parts`` positives."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_basic_terms(trs: RelativeTRS, max_size: int) -> list[Term]:
    """All ground basic terms of size <= max_size, deterministically ordered.

    A basic term is a defined symbol applied to constructor-only ground
    arguments.
    """
    assert max_size >= 1
    args_by_size = constructor_terms(trs, max_size - 1)
    out: list[Term] = []
    for name, info in trs.symbols.items():
        if not trs.is_defined(name):
            continue
        if info.arity == 0:
            out.append(App(name))
            continue
        for total in range(info.arity, max_size):
            for split in _compositions(total, info.arity):
                for combo in itertools.product(*(args_by_size[part] for part in split)):
                    out.append(App(name, combo))
    return out


def is_basic(trs: RelativeTRS, t: Term) -> bool:
    """Root defined, all arguments ground constructor terms."""
    if not isinstance(t, App) or not trs.is_defined(t.fun):
        return False
    for arg in t.args:
        for sub in subterms(arg):
            if not isinstance(sub, App):
                return False  # not ground
            info = trs.symbols.get(sub.fun)
            if info is None or info.cls is not SymbolClass.CONSTRUCTOR:
                return False
    return True
