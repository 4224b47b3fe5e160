"""Exact polynomial expressions over named non-negative rational unknowns.

Everything here is canonical and immutable so that identical inputs
produce byte-identical constraint problems (a determinism guarantee the
reports and golden tests rely on).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

Monomial = tuple[str, ...]  # sorted variable names, () is the constant monomial
Scalar = Union[int, Fraction]


def _mono_key(m: Monomial) -> tuple[int, Monomial]:
    return (len(m), m)


class Poly:
    """A polynomial with Fraction coefficients in canonical form."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | Iterable[tuple[Monomial, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            if coeff:
                acc[mono] = acc.get(mono, Fraction(0)) + coeff
        self.terms: tuple[tuple[Monomial, Fraction], ...] = tuple(
            (m, c) for m, c in sorted(acc.items(), key=lambda kv: _mono_key(kv[0])) if c
        )
        self._hash = hash(self.terms)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(value: Scalar) -> Poly:
        value = Fraction(value)
        return Poly({(): value} if value else {})

    @staticmethod
    def var(name: str) -> Poly:
        return Poly({(name,): Fraction(1)})

    # -- algebra ----------------------------------------------------------

    def __add__(self, other: Poly | Scalar) -> Poly:
        other = _coerce(other)
        acc = dict(self.terms)
        for mono, coeff in other.terms:
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
        return Poly(acc)

    __radd__ = __add__

    def __sub__(self, other: Poly | Scalar) -> Poly:
        return self + (_coerce(other) * Fraction(-1))

    def __rsub__(self, other: Poly | Scalar) -> Poly:
        return _coerce(other) - self

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly({m: c * Fraction(other) for m, c in self.terms})
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                mono = tuple(sorted(m1 + m2))
                acc[mono] = acc.get(mono, Fraction(0)) + c1 * c2
        return Poly(acc)

    __rmul__ = __mul__

    # -- queries ----------------------------------------------------------

    def is_constant(self) -> bool:
        return all(m == () for m, _ in self.terms)

    def constant_value(self) -> Fraction:
        assert self.is_constant()
        return self.terms[0][1] if self.terms else Fraction(0)

    def total_degree(self) -> int:
        return max((len(m) for m, _ in self.terms), default=0)

    def variables(self) -> set[str]:
        out: set[str] = set()
        for m, _ in self.terms:
            out.update(m)
        return out

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for mono, coeff in self.terms:
            value = coeff
            for name in mono:
                value *= assignment[name]
            total += value
        return total

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and other.terms == self.terms

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.terms:
            factors = [str(coeff)] if coeff != 1 or not mono else []
            factors.extend(mono)
            parts.append("*".join(factors) or str(coeff))
        return " + ".join(parts)


ZERO = Poly()
ONE = Poly.const(1)


def _coerce(x: Poly | Scalar) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


@dataclass(frozen=True)
class Atom:
    """One polynomial (in)equality lhs OP rhs with a provenance label."""

    op: str  # '<=', '>=' or '='
    lhs: Poly
    rhs: Poly
    origin: str = ""

    def holds(self, assignment: Mapping[str, Fraction]) -> bool:
        l, r = self.lhs.evaluate(assignment), self.rhs.evaluate(assignment)
        if self.op == "<=":
            return l <= r
        if self.op == ">=":
            return l >= r
        return l == r

    def is_linear(self) -> bool:
        return self.lhs.total_degree() <= 1 and self.rhs.total_degree() <= 1

    def __str__(self) -> str:
        tag = f"  [{self.origin}]" if self.origin else ""
        return f"{self.lhs!r} {self.op} {self.rhs!r}{tag}"


class ConstraintProblem:
    """A conjunction of polynomial (in)equalities over non-negative unknowns.

    Variables are implicitly constrained >= 0 (the emitter adds those
    assertions).  Fresh names are drawn from per-prefix counters, so equal
    build sequences yield identical problems, variable names included.
    """

    def __init__(self, degree: int = 1, mode: str = "standalone"):
        self.degree = degree
        self.mode = mode
        self.variables: list[str] = []
        self._varset: set[str] = set()
        self._counters: dict[str, int] = {}
        self.atoms: list[Atom] = []
        # per-symbol variable index for reporting and golden assignments
        self.symbol_vars: dict[str, dict] = {}

    def fresh(self, prefix: str) -> Poly:
        name = self.fresh_name(prefix)
        return Poly.var(name)

    def fresh_name(self, prefix: str) -> str:
        prefix = sanitise(prefix)
        if prefix not in self._counters and prefix not in self._varset:
            name = prefix
        else:
            while True:
                self._counters[prefix] = self._counters.get(prefix, 0) + 1
                name = f"{prefix}.{self._counters[prefix]}"
                if name not in self._varset:
                    break
        self.variables.append(name)
        self._varset.add(name)
        return name

    def add(self, op: str, lhs: Poly | Scalar, rhs: Poly | Scalar, origin: str = "") -> None:
        assert op in ("<=", ">=", "=")
        self.atoms.append(Atom(op, _coerce(lhs), _coerce(rhs), origin))

    def add_leq_vec(self, lhs: Iterable[Poly], rhs: Iterable[Poly], origin: str = "") -> None:
        for i, (l, r) in enumerate(zip(lhs, rhs)):
            if l == r:
                continue
            self.add("<=", l, r, f"{origin}[{i + 1}]" if origin else "")

    @property
    def linear_only(self) -> bool:
        return all(a.is_linear() for a in self.atoms)

    def check_assignment(self, assignment: Mapping[str, Fraction]) -> tuple[bool, Atom | None]:
        """Exact evaluation of every atom; returns (ok, first failing atom)."""
        for name in self.variables:
            if assignment[name] < 0:
                return False, Atom(">=", Poly.var(name), ZERO, "variable non-negativity")
        for atom in self.atoms:
            if not atom.holds(assignment):
                return False, atom
        return True, None

    def stats(self) -> dict:
        return {
            "variables": len(self.variables),
            "atoms": len(self.atoms),
            "linear_only": self.linear_only,
        }


def sanitise(name: str) -> str:
    """Restrict to SMT-LIB-simple-symbol-safe characters."""
    safe = []
    for c in name:
        if c.isalnum() or c in "._-":
            safe.append(c)
        else:
            safe.append(f"_{ord(c):x}_")
    out = "".join(safe)
    if not out or out[0].isdigit():
        out = "s" + out
    return out
