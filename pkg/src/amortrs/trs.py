"""Rules, relative TRSs, symbol classification and the call graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .terms import App, Term, Var, subterms


class SymbolClass(Enum):
    DEFINED = "defined"
    CONSTRUCTOR = "constructor"
    CONSTRUCTOR_LIKE = "constructor-like"  # defined, but occurs below the root of an lhs argument


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term
    strict: bool = True  # strict rules are counted, weak rules are free

    def __post_init__(self):
        assert isinstance(self.lhs, App), "left-hand side must not be a variable"
        assert self.rhs.variables() <= self.lhs.variables(), "rhs introduces variables"

    @property
    def root(self) -> str:
        assert isinstance(self.lhs, App)
        return self.lhs.fun

    def __str__(self) -> str:
        return f"{self.lhs} {'->' if self.strict else '->='} {self.rhs}"


@dataclass(frozen=True)
class SymbolInfo:
    name: str
    arity: int
    cls: SymbolClass

    @property
    def is_defined(self) -> bool:
        return self.cls is not SymbolClass.CONSTRUCTOR

    @property
    def carries_potential(self) -> bool:
        """Constructors and constructor-like symbols carry potential."""
        return self.cls is not SymbolClass.DEFINED


@dataclass(frozen=True)
class RelativeTRS:
    """A relative TRS: ordered rules plus the classified symbol table.

    Immutable after construction; safe to share across threads.
    """

    rules: tuple[Rule, ...]
    symbols: dict[str, SymbolInfo] = field(compare=False)

    @staticmethod
    def build(rules: list[Rule] | tuple[Rule, ...], arity: dict[str, int] | None = None) -> RelativeTRS:
        rules = tuple(rules)
        if arity is None:
            arity = {}
            for rule in rules:
                for t in list(subterms(rule.lhs)) + list(subterms(rule.rhs)):
                    if isinstance(t, App):
                        seen = arity.setdefault(t.fun, len(t.args))
                        assert seen == len(t.args), f"arity clash for {t.fun}"
        symbols = dict(classify_symbols(rules, arity))
        return RelativeTRS(rules, symbols)

    @property
    def strict_rules(self) -> list[Rule]:
        return [r for r in self.rules if r.strict]

    @property
    def weak_rules(self) -> list[Rule]:
        return [r for r in self.rules if not r.strict]

    def defined_symbols(self) -> list[str]:
        return [s.name for s in self.symbols.values() if s.is_defined]

    def constructors(self) -> list[str]:
        return [s.name for s in self.symbols.values() if s.cls is SymbolClass.CONSTRUCTOR]

    def potential_carriers(self) -> list[str]:
        return [s.name for s in self.symbols.values() if s.carries_potential]

    def rules_defining(self, symbol: str) -> list[Rule]:
        return [r for r in self.rules if r.root == symbol]

    def variables(self) -> set[str]:
        out: set[str] = set()
        for rule in self.rules:
            out |= rule.lhs.variables()
        return out

    def is_defined(self, fun: str) -> bool:
        info = self.symbols.get(fun)
        return info is not None and info.is_defined


def classify_symbols(rules: tuple[Rule, ...] | list[Rule], arity: dict[str, int]) -> dict[str, SymbolInfo]:
    """Partition the signature into defined / constructor / constructor-like.

    Defined symbols are the lhs roots; constructor-like symbols are defined
    symbols occurring strictly below the root inside some lhs argument; all
    remaining symbols are constructors.  The returned dict preserves the
    first-occurrence order of ``arity``.
    """
    defined = {r.root for r in rules}
    ctor_like: set[str] = set()
    for rule in rules:
        assert isinstance(rule.lhs, App)
        for arg in rule.lhs.args:
            for t in subterms(arg):
                if isinstance(t, App) and t.fun in defined:
                    ctor_like.add(t.fun)
    table: dict[str, SymbolInfo] = {}
    for name, ar in arity.items():
        if name in ctor_like:
            cls = SymbolClass.CONSTRUCTOR_LIKE
        elif name in defined:
            cls = SymbolClass.DEFINED
        else:
            cls = SymbolClass.CONSTRUCTOR
        table[name] = SymbolInfo(name, ar, cls)
    return table


def call_graph_sccs(trs: RelativeTRS) -> dict[str, int]:
    """Map each defined symbol to the id of its call-graph SCC.

    There is an edge f -> g whenever g occurs in the right-hand side of a
    rule defining f.  Ids number the condensation in topological order
    (callers before callees); the numbering is deterministic.
    """
    defined = [s for s in trs.symbols if trs.is_defined(s)]
    edges: dict[str, list[str]] = {f: [] for f in defined}
    for rule in trs.rules:
        for t in subterms(rule.rhs):
            if isinstance(t, App) and t.fun in edges and t.fun not in edges[rule.root]:
                edges[rule.root].append(t.fun)

    # Tarjan, iterative; components pop callees-first, so reverse for
    # topological numbering of the condensation.
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[list[str]] = []
    counter = 0

    for root in defined:
        if root in index:
            continue
        work: list[tuple[str, int]] = [(root, 0)]
        while work:
            node, ei = work.pop()
            if ei == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            for j in range(ei, len(edges[node])):
                succ = edges[node][j]
                if succ not in index:
                    work.append((node, j + 1))
                    work.append((succ, 0))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                components.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])

    components.reverse()
    return {name: i for i, comp in enumerate(components) for name in comp}
