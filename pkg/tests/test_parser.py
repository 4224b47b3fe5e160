from __future__ import annotations

import pytest

from amortrs.parser import (
    ArityClashError,
    ExtraVariableError,
    TrsSyntaxError,
    VariableLhsError,
    parse_trs,
    pretty_trs,
)
from amortrs.trs import SymbolClass


def test_minimal_wellformed():
    trs = parse_trs("(VAR x)(RULES f(x) -> x)")
    assert trs.defined_symbols() == ["f"]
    assert trs.constructors() == []
    assert len(trs.strict_rules) == 1 and not trs.weak_rules


def test_queue_symbols(queue_trs):
    assert set(queue_trs.defined_symbols()) == {"checkF", "tail", "snoc", "rev", "rev'", "enq", "head"}
    assert set(queue_trs.constructors()) == {"nil", "cons", "queue", "0", "S", "errorHead", "errorTail"}
    assert len(queue_trs.rules) == 12
    assert all(r.strict for r in queue_trs.rules)


def test_variable_lhs_rejected():
    with pytest.raises(VariableLhsError):
        parse_trs("(VAR x)(RULES x -> f(x))")


def test_extra_rhs_variable_rejected():
    with pytest.raises(ExtraVariableError):
        parse_trs("(VAR x y)(RULES f(x) -> g(y))")


def test_arity_clash_rejected():
    with pytest.raises(ArityClashError):
        parse_trs("(VAR x)(RULES f(x) -> a f(x, x) -> a)")


def test_syntax_error_reports_position():
    with pytest.raises(TrsSyntaxError) as err:
        parse_trs("(VAR x)\n(RULES f(x -> x)")
    assert err.value.line == 2
    assert err.value.col > 0


def test_unknown_block_rejected():
    with pytest.raises(TrsSyntaxError):
        parse_trs("(STRATEGY INNERMOST)(RULES a -> b)")


def test_weak_rules_parsed():
    trs = parse_trs("(VAR x)(RULES f(x) -> x g(x) ->= f(x))")
    assert [r.strict for r in trs.rules] == [True, False]


def test_comment_block_skipped():
    trs = parse_trs("(COMMENT anything (nested (parens)) -> ->= ,)(RULES a -> b)")
    assert len(trs.rules) == 1


def test_variable_with_arguments_rejected():
    with pytest.raises(TrsSyntaxError):
        parse_trs("(VAR x)(RULES f(x(a)) -> a)")


def test_apostrophes_and_digits_in_idents():
    trs = parse_trs("(VAR xs)(RULES rev'(xs) -> 0)")
    assert set(trs.symbols) == {"rev'", "0"}


def test_roundtrip_queue(queue_trs):
    text = pretty_trs(queue_trs)
    reparsed = parse_trs(text)
    assert reparsed.rules == queue_trs.rules
    assert reparsed.symbols == queue_trs.symbols
    assert pretty_trs(reparsed) == text


def test_roundtrip_weak(append_trs):
    weak = parse_trs("(VAR x)(RULES f(x) -> x g(x) ->= f(x))")
    assert parse_trs(pretty_trs(weak)).rules == weak.rules


def test_classification_constructor_like():
    trs = parse_trs("(VAR x)(RULES f(g(x)) -> x g(x) -> x)")
    assert trs.symbols["g"].cls is SymbolClass.CONSTRUCTOR_LIKE
    assert trs.symbols["f"].cls is SymbolClass.DEFINED


def test_classification_no_rules():
    from amortrs.trs import RelativeTRS

    trs = RelativeTRS.build([], {"a": 0})
    assert trs.symbols["a"].cls is SymbolClass.CONSTRUCTOR


def test_queue_not_constructor_like(queue_trs):
    assert all(s.cls is not SymbolClass.CONSTRUCTOR_LIKE for s in queue_trs.symbols.values())
