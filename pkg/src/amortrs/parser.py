"""TPDB-compatible concrete syntax for (relative) term rewrite systems.

Grammar::

    spec  := block+
    block := "(VAR" ident* ")" | "(RULES" rule* ")" | "(COMMENT" any* ")"
    rule  := term "->" term | term "->=" term        ("->=" marks a weak rule)
    term  := ident | ident "(" term ("," term)* ")"

An ident is any run of characters excluding whitespace, parentheses and
commas; "->" and "->=" are reserved.  Variables are exactly the idents
declared in VAR blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import App, Term, Var
from .trs import RelativeTRS, Rule


class TrsInputError(Exception):
    """Base class for all input diagnostics; carries a source position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}" if line else message)


class TrsSyntaxError(TrsInputError):
    pass


class VariableLhsError(TrsInputError):
    pass


class ExtraVariableError(TrsInputError):
    pass


class ArityClashError(TrsInputError):
    pass


@dataclass(frozen=True)
class _Token:
    kind: str  # 'lpar', 'rpar', 'comma', 'arrow', 'warrow', 'ident'
    text: str
    line: int
    col: int


_SPECIAL = {"(": "lpar", ")": "rpar", ",": "comma"}


def _tokenise(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            col += 1
            i += 1
            continue
        if c in _SPECIAL:
            tokens.append(_Token(_SPECIAL[c], c, line, col))
            col += 1
            i += 1
            continue
        if c == "-" and text.startswith("->", i):
            if text.startswith("->=", i):
                tokens.append(_Token("warrow", "->=", line, col))
                i += 3
                col += 3
            else:
                tokens.append(_Token("arrow", "->", line, col))
                i += 2
                col += 2
            continue
        start, start_col = i, col
        while i < n:
            c = text[i]
            if c.isspace() or c in _SPECIAL or (c == "-" and text.startswith("->", i)):
                break
            i += 1
            col += 1
        tokens.append(_Token("ident", text[start:i], line, start_col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token("ident", "", 1, 1)
            raise TrsSyntaxError("unexpected end of input", last.line, last.col)
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise TrsSyntaxError(f"expected {what}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def skip_comment(self) -> None:
        depth = 1
        while depth:
            tok = self.next()
            if tok.kind == "lpar":
                depth += 1
            elif tok.kind == "rpar":
                depth -= 1

    def term(self, variables: set[str]) -> Term:
        tok = self.expect("ident", "a term")
        nxt = self.peek()
        if nxt is not None and nxt.kind == "lpar":
            self.next()
            args = [self.term(variables)]
            while True:
                sep = self.next()
                if sep.kind == "rpar":
                    break
                if sep.kind != "comma":
                    raise TrsSyntaxError(f"expected ',' or ')', found {sep.text!r}", sep.line, sep.col)
                args.append(self.term(variables))
            if tok.text in variables:
                raise TrsSyntaxError(f"variable {tok.text!r} used with arguments", tok.line, tok.col)
            return App(tok.text, tuple(args))
        if tok.text in variables:
            return Var(tok.text)
        return App(tok.text)


def parse_trs(text: str) -> RelativeTRS:
    """Parse TPDB-style input into a :class:`RelativeTRS`.

    Symbol classes (defined / constructor / constructor-like) are computed
    and arities are checked to be globally consistent.
    """
    parser = _Parser(_tokenise(text))
    variables: set[str] = set()
    raw_rules: list[tuple[Term, Term, bool, _Token]] = []
    saw_block = False
    while parser.peek() is not None:
        open_tok = parser.expect("lpar", "'('")
        head = parser.expect("ident", "a block name (VAR, RULES or COMMENT)")
        saw_block = True
        if head.text == "VAR":
            while True:
                tok = parser.next()
                if tok.kind == "rpar":
                    break
                if tok.kind != "ident":
                    raise TrsSyntaxError(f"expected a variable name, found {tok.text!r}", tok.line, tok.col)
                variables.add(tok.text)
        elif head.text == "RULES":
            while True:
                tok = parser.peek()
                if tok is None:
                    raise TrsSyntaxError("unterminated RULES block", open_tok.line, open_tok.col)
                if tok.kind == "rpar":
                    parser.next()
                    break
                where = tok
                lhs = parser.term(variables)
                arrow = parser.next()
                if arrow.kind not in ("arrow", "warrow"):
                    raise TrsSyntaxError(f"expected '->' or '->=', found {arrow.text!r}", arrow.line, arrow.col)
                rhs = parser.term(variables)
                raw_rules.append((lhs, rhs, arrow.kind == "arrow", where))
        elif head.text == "COMMENT":
            parser.skip_comment()
        else:
            raise TrsSyntaxError(f"unknown block {head.text!r}", head.line, head.col)
    if not saw_block:
        raise TrsSyntaxError("empty input", 1, 1)

    arity: dict[str, int] = {}
    arity_where: dict[str, _Token] = {}

    def check_arities(t: Term, where: _Token) -> None:
        if isinstance(t, Var):
            return
        seen = arity.get(t.fun)
        if seen is None:
            arity[t.fun] = len(t.args)
            arity_where[t.fun] = where
        elif seen != len(t.args):
            raise ArityClashError(
                f"symbol {t.fun!r} used with arity {len(t.args)} but previously with {seen}",
                where.line,
                where.col,
            )
        for a in t.args:
            check_arities(a, where)

    rules: list[Rule] = []
    for lhs, rhs, strict, where in raw_rules:
        if isinstance(lhs, Var):
            raise VariableLhsError("variable left-hand side", where.line, where.col)
        extra = rhs.variables() - lhs.variables()
        if extra:
            raise ExtraVariableError(
                f"right-hand side introduces variables: {', '.join(sorted(extra))}",
                where.line,
                where.col,
            )
        check_arities(lhs, where)
        check_arities(rhs, where)
        rules.append(Rule(lhs, rhs, strict))
    return RelativeTRS.build(rules, arity)


def pretty_trs(trs: RelativeTRS) -> str:
    """Render back to the input syntax (parse . pretty . parse round-trips)."""
    out = []
    variables = sorted(trs.variables())
    if variables:
        out.append(f"(VAR {' '.join(variables)})")
    lines = ["(RULES"]
    for rule in trs.rules:
        arrow = "->" if rule.strict else "->="
        lines.append(f"  {rule.lhs} {arrow} {rule.rhs}")
    lines.append(")")
    out.append("\n".join(lines))
    return "\n".join(out) + "\n"
