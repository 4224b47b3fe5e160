"""Resource annotations, annotated signatures and the potential function.

An annotation is a finite vector of non-negative rationals; trailing
zeros do not change its meaning, so () == (0) == (0,0).  All arithmetic
is exact (fractions.Fraction): the soundness inequalities checked by the
validator are exact rational statements and float drift would break them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .terms import App, Term
from .trs import RelativeTRS

Rational = Union[int, Fraction, str]


def _frac(x: Rational) -> Fraction:
    f = Fraction(x)
    if f < 0:
        raise ValueError(f"negative entry {f} in annotation")
    return f


class Annotation:
    """Immutable vector of non-negative rationals.

    Equality and hashing ignore trailing zeros; ``entries`` keeps the
    length it was built with.
    """

    __slots__ = ("entries", "_stripped", "_hash")

    def __init__(self, entries: Iterable[Rational] = ()):
        self.entries: tuple[Fraction, ...] = tuple(_frac(e) for e in entries)
        stripped = self.entries
        while stripped and stripped[-1] == 0:
            stripped = stripped[:-1]
        self._stripped = stripped
        self._hash = hash(stripped)

    def stripped(self) -> tuple[Fraction, ...]:
        return self._stripped

    def degree(self) -> int:
        """Length after stripping trailing zeros (the polynomial degree)."""
        return len(self._stripped)

    def max_entry(self) -> Fraction:
        return max(self._stripped, default=Fraction(0))

    def entry(self, i: int) -> Fraction:
        return self.entries[i] if i < len(self.entries) else Fraction(0)

    def padded(self, length: int) -> tuple[Fraction, ...]:
        if len(self.entries) >= length:
            return self.entries
        return self.entries + (Fraction(0),) * (length - len(self.entries))

    def is_zero(self) -> bool:
        return not self._stripped

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Annotation):
            return self._stripped == other._stripped
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return f"({','.join(str(e) for e in self.entries)})"


def ann(*entries: Rational) -> Annotation:
    return Annotation(entries)


def ann_add(p: Annotation, q: Annotation) -> Annotation:
    """Componentwise sum, filling up with zeros."""
    n = max(len(p), len(q))
    return Annotation(a + b for a, b in zip(p.padded(n), q.padded(n)))


def ann_scale(lam: Rational, p: Annotation) -> Annotation:
    """Scale by a non-negative rational; rejects negative factors."""
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError(f"negative scale factor {lam}")
    return Annotation(lam * e for e in p.entries)


def ann_leq(p: Annotation, q: Annotation) -> bool:
    """Componentwise <= after zero padding."""
    n = max(len(p), len(q))
    return all(a <= b for a, b in zip(p.padded(n), q.padded(n)))


def share_split(p: Annotation):
    """The sharing relation: the returned predicate holds iff p1 + p2 = p."""

    def holds(p1: Annotation, p2: Annotation) -> bool:
        return ann_add(p1, p2) == p

    return holds


def unit(j: int, length: int | None = None) -> Annotation:
    """The unit vector e_j (1-based); optionally padded to ``length``."""
    entries = [Fraction(0)] * (length if length is not None else j)
    entries[j - 1] = Fraction(1)
    return Annotation(entries)


@dataclass(frozen=True)
class SignatureDecl:
    """One annotated declaration p_1 x ... x p_n -> q with cost k."""

    args: tuple[Annotation, ...]
    result: Annotation
    cost: Fraction

    def __post_init__(self):
        if self.cost < 0:
            raise ValueError("negative declaration cost")

    def __str__(self) -> str:
        args = " x ".join(str(a) for a in self.args) or "()"
        return f"{args} -> {self.result} | {self.cost}"


def decl(args: Iterable[Annotation], result: Annotation, cost: Rational) -> SignatureDecl:
    return SignatureDecl(tuple(args), result, Fraction(cost))


class SignatureTable:
    """Concrete annotated signatures for one TRS at a fixed degree.

    Defined symbols carry exactly one main declaration (and optionally one
    cost-free declaration).  Constructors and constructor-like symbols
    carry ``degree`` base declarations whose results are the unit vectors
    e_1 .. e_d; every other instance is the forced non-negative linear
    combination of the bases, which realises the superposition and
    uniqueness principles by construction.
    """

    def __init__(self, trs: RelativeTRS, degree: int):
        assert degree >= 0
        self.trs = trs
        self.degree = degree
        self.main: dict[str, SignatureDecl] = {}
        self.costfree: dict[str, SignatureDecl] = {}
        self.bases: dict[str, list[SignatureDecl]] = {}
        self._instances: dict[tuple[str, Annotation], SignatureDecl] = {}
        self._phi: dict[tuple[Term, Annotation], Fraction] = {}

    def set_main(self, symbol: str, d: SignatureDecl) -> None:
        self.main[symbol] = d

    def set_costfree(self, symbol: str, d: SignatureDecl) -> None:
        self.costfree[symbol] = d

    def set_bases(self, symbol: str, decls: list[SignatureDecl]) -> None:
        for j, d in enumerate(decls, start=1):
            if d.result != unit(j):
                raise ValueError(f"base {j} of {symbol} must have result e_{j}, got {d.result}")
        self.bases[symbol] = list(decls)

    def instance(self, symbol: str, result: Annotation) -> SignatureDecl:
        """The unique instance declaration with the given result annotation.

        The linear combination sum_j q_j * base_j; its coefficients are
        exactly the entries of the requested result.
        """
        key = (symbol, result)
        cached = self._instances.get(key)
        if cached is not None:
            return cached
        bases = self.bases.get(symbol)
        if bases is None:
            raise KeyError(f"symbol {symbol!r} has no base declarations")
        if result.degree() > len(bases):
            raise ValueError(f"result {result} exceeds the table degree {len(bases)}")
        arity = self.trs.symbols[symbol].arity
        args = [Annotation() for _ in range(arity)]
        cost = Fraction(0)
        for j, base in enumerate(bases, start=1):
            coeff = result.entry(j - 1)
            if coeff == 0:
                continue
            args = [ann_add(a, ann_scale(coeff, b)) for a, b in zip(args, base.args)]
            cost += coeff * base.cost
        inst = SignatureDecl(tuple(args), result, cost)
        self._instances[key] = inst
        return inst


def potential(v: Term, q: Annotation, table: SignatureTable) -> Fraction:
    """Potential of a ground normal form v under annotation q (Phi).

    Defined recursively over the unique instance declarations when v
    consists only of potential carriers (constructors and
    constructor-like symbols); any other term has potential 0.  Symbols
    absent from the table raise KeyError.
    """
    if not _carriers_only(v, table):
        return Fraction(0)
    return _phi(v, q, table)


def _phi(v: Term, q: Annotation, table: SignatureTable) -> Fraction:
    assert isinstance(v, App)
    if v.fun not in table.bases:
        raise KeyError(f"symbol {v.fun!r} missing from the signature table")
    if q.is_zero():
        return Fraction(0)
    key = (v, q)
    cached = table._phi.get(key)
    if cached is not None:
        return cached
    inst = table.instance(v.fun, q)
    total = inst.cost
    for arg, p in zip(v.args, inst.args):
        total += _phi(arg, p, table)
    table._phi[key] = total
    return total


def _carriers_only(v: Term, table: SignatureTable) -> bool:
    if not isinstance(v, App):
        return False  # variables are not normal-form values here
    info = table.trs.symbols.get(v.fun)
    if info is None:
        raise KeyError(f"symbol {v.fun!r} missing from the signature table")
    if not info.carries_potential:
        return False
    return all(_carriers_only(a, table) for a in v.args)
