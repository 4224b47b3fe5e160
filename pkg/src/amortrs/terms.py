"""First-order terms: variables and applications over a string signature.

Terms are immutable and hashable (the hash is precomputed because the
rewriting engine keeps large memo tables keyed by terms).
"""

from __future__ import annotations

from typing import Iterator


class Term:
    """Base class for :class:`Var` and :class:`App`."""

    __slots__ = ()

    def size(self) -> int:
        """Number of symbol and variable occurrences (>= 1)."""
        raise NotImplementedError

    def variables(self) -> set[str]:
        raise NotImplementedError

    def is_ground(self) -> bool:
        return not self.variables()


class Var(Term):
    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("var", name))

    def size(self) -> int:
        return 1

    def variables(self) -> set[str]:
        return {self.name}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Var({self.name!r})"

    def __str__(self) -> str:
        return self.name


class App(Term):
    __slots__ = ("fun", "args", "_hash", "_size")

    def __init__(self, fun: str, args: tuple[Term, ...] = ()):
        self.fun = fun
        self.args = args
        self._hash = hash(("app", fun, args))
        self._size = 1 + sum(a.size() for a in args)

    def size(self) -> int:
        return self._size

    def variables(self) -> set[str]:
        out: set[str] = set()
        for a in self.args:
            out |= a.variables()
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, App)
            and other._hash == self._hash
            and other.fun == self.fun
            and other.args == self.args
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"App({self.fun!r}, {self.args!r})"

    def __str__(self) -> str:
        if not self.args:
            return self.fun
        return f"{self.fun}({','.join(str(a) for a in self.args)})"


def app(fun: str, *args: Term) -> App:
    return App(fun, tuple(args))


def subterms(t: Term) -> Iterator[Term]:
    """All subterms of t, outermost first."""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, App):
            stack.extend(reversed(s.args))


def substitute(t: Term, binding: dict[str, Term]) -> Term:
    if isinstance(t, Var):
        return binding.get(t.name, t)
    if not t.args:
        return t
    return App(t.fun, tuple(substitute(a, binding) for a in t.args))


def match(pattern: Term, subject: Term, binding: dict[str, Term] | None = None) -> dict[str, Term] | None:
    """Match pattern against subject; returns the substitution or None.

    Non-linear patterns require equal bindings for repeated variables.
    """
    if binding is None:
        binding = {}
    stack = [(pattern, subject)]
    while stack:
        p, s = stack.pop()
        if isinstance(p, Var):
            bound = binding.get(p.name)
            if bound is None:
                binding[p.name] = s
            elif bound != s:
                return None
        else:
            if not isinstance(s, App) or s.fun != p.fun or len(s.args) != len(p.args):
                return None
            stack.extend(zip(p.args, s.args))
    return binding


def linearise(terms: list[Term] | tuple[Term, ...]) -> tuple[list[Term], dict[str, str]]:
    """Rename variables apart across a sequence of terms.

    Variables occurring once keep their name; a variable occurring n >= 2
    times becomes name_1 .. name_n, numbered left to right.  Returns the
    renamed sequence and a total map from new names to original names.
    Fresh names avoid collision with variables already present.
    """
    counts: dict[str, int] = {}
    order: list[str] = []
    for t in terms:
        for s in subterms(t):
            if isinstance(s, Var):
                if s.name not in counts:
                    order.append(s.name)
                counts[s.name] = counts.get(s.name, 0) + 1
    used = set(counts)
    grouping: dict[str, str] = {}
    next_index: dict[str, int] = {}

    def fresh(orig: str) -> str:
        i = next_index.get(orig, 0) + 1
        cand = f"{orig}_{i}"
        while cand in used:
            i += 1
            cand = f"{orig}_{i}"
        next_index[orig] = i
        used.add(cand)
        return cand

    def walk(t: Term) -> Term:
        if isinstance(t, Var):
            if counts[t.name] == 1:
                grouping[t.name] = t.name
                return t
            new = fresh(t.name)
            grouping[new] = t.name
            return Var(new)
        if not t.args:
            return t
        return App(t.fun, tuple(walk(a) for a in t.args))

    renamed = [walk(t) for t in terms]
    # variables occurring once map to themselves
    for name in order:
        if counts[name] == 1:
            grouping.setdefault(name, name)
    return renamed, grouping
