from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from amortrs.annotations import (
    Annotation,
    SignatureDecl,
    SignatureTable,
    ann,
    ann_add,
    ann_leq,
    ann_scale,
    decl,
    potential,
    share_split,
    unit,
)
from amortrs.terms import app
from amortrs.trs import RelativeTRS

from .oracles import naive_potential

rationals = st.fractions(min_value=0, max_value=100, max_denominator=12)
annotations = st.lists(rationals, max_size=4).map(Annotation)


def test_add_matches_worked_example():
    assert ann_add(ann(1, 2), ann(3, 4, 5)) == ann(4, 6, 5)


def test_add_identity():
    p = ann(3, Fraction(1, 2))
    assert ann_add(p, ann()) == p


def test_add_rational():
    assert ann_add(ann(Fraction(1, 2)), ann(Fraction(1, 2))) == ann(1)


def test_scale():
    assert ann_scale(2, ann(6)) == ann(12)
    assert ann_scale(0, ann(5, 7)) == ann()
    p = ann(2, 3)
    assert ann_scale(1, p) == p


def test_scale_rejects_negative():
    with pytest.raises(ValueError):
        ann_scale(-1, ann(1))


def test_negative_entry_rejected():
    with pytest.raises(ValueError):
        ann(-1)


def test_leq():
    assert ann_leq(ann(1, 2), ann(1, 2, 3))
    assert not ann_leq(ann(2), ann(1))
    p = ann(4, 0, 1)
    assert ann_leq(p, p)


def test_trailing_zeros_equal():
    assert ann() == ann(0) == ann(0, 0)
    assert ann(1) == ann(1, 0)
    assert hash(ann(1)) == hash(ann(1, 0))


def test_share_split():
    holds = share_split(ann(4))
    assert holds(ann(1), ann(3))
    assert not holds(ann(1), ann(2))
    assert share_split(ann(2, 2))(ann(2, 0), ann(0, 2))


@given(annotations, annotations, annotations)
def test_add_monoid(p, q, r):
    assert ann_add(p, q) == ann_add(q, p)
    assert ann_add(ann_add(p, q), r) == ann_add(p, ann_add(q, r))
    assert ann_add(p, ann()) == p


@given(annotations, annotations, annotations)
def test_leq_partial_order_compatible(p, q, r):
    assert ann_leq(p, p)
    if ann_leq(p, q) and ann_leq(q, p):
        assert p == q
    if ann_leq(p, q):
        assert ann_leq(ann_add(p, r), ann_add(q, r))


# -- signature tables and potentials ---------------------------------------


def list_table(cost: int = 1, degree: int = 1) -> SignatureTable:
    trs = RelativeTRS.build([], {"nil": 0, "cons": 2, "0": 0, "S": 1})
    table = SignatureTable(trs, degree)
    table.set_bases("nil", [decl([], unit(1), 0)])
    table.set_bases("cons", [decl([ann(0), ann(1)], unit(1), cost)])
    table.set_bases("0", [decl([], unit(1), 0)])
    table.set_bases("S", [decl([ann(1)], unit(1), 0)])
    return table


def nat_list(n: int):
    t = app("nil")
    for i in range(n):
        t = app("cons", app("0") if i % 2 == 0 else app("S", app("0")), t)
    return t


def test_potential_list_example():
    table = list_table(cost=1)
    v = app("cons", app("0"), app("cons", app("S", app("0")), app("nil")))
    assert potential(v, ann(2), table) == 4
    assert potential(v, ann(2), table) == naive_potential(v, ann(2), table)


def test_potential_zero_annotation():
    table = list_table(cost=1)
    assert potential(nat_list(3), ann(), table) == 0
    assert potential(nat_list(3), ann(0), table) == 0


def test_potential_exponential_shape():
    # 0 : () -> p | 0 and S : 2p -> p | p_1 give Phi(S^n(0) : 1) = 2^n - 1
    trs = RelativeTRS.build([], {"0": 0, "S": 1})
    table = SignatureTable(trs, 1)
    table.set_bases("0", [decl([], unit(1), 0)])
    table.set_bases("S", [decl([ann(2)], unit(1), 1)])
    t = app("S", app("S", app("0")))
    assert potential(t, ann(1), table) == 3
    for n in range(11):
        t = app("0")
        for _ in range(n):
            t = app("S", t)
        assert potential(t, ann(1), table) == 2**n - 1


def test_potential_defined_symbol_is_zero(queue_trs):
    table = SignatureTable(queue_trs, 1)
    for name in queue_trs.constructors():
        arity = queue_trs.symbols[name].arity
        table.set_bases(name, [decl([ann(1)] * arity, unit(1), 0)])
    v = app("rev", app("nil"))
    assert potential(v, ann(5), table) == 0


def test_potential_missing_symbol_errors():
    table = list_table()
    with pytest.raises(KeyError):
        potential(app("tree", app("nil")), ann(1), table)


def test_instance_decl_worked_example():
    # bases cons1: (0,0)x(1,0)->(1,0)|1 and cons2: (0,0)x(2,1)->(0,1)|1
    trs = RelativeTRS.build([], {"cons": 2, "nil": 0})
    table = SignatureTable(trs, 2)
    table.set_bases(
        "cons",
        [decl([ann(0, 0), ann(1, 0)], unit(1, 2), 1), decl([ann(0, 0), ann(2, 1)], unit(2, 2), 1)],
    )
    inst = table.instance("cons", ann(1, 1))
    assert inst.args == (ann(0, 0), ann(3, 1))
    assert inst.result == ann(1, 1)
    assert inst.cost == 2


def test_instance_decl_unit_is_base():
    table = list_table(cost=1)
    base = table.bases["cons"][0]
    inst = table.instance("cons", unit(1))
    assert inst.args == base.args and inst.cost == base.cost


def test_instance_decl_zero():
    table = list_table(cost=1)
    inst = table.instance("cons", ann())
    assert inst.cost == 0
    assert all(a == ann() for a in inst.args)


@given(st.integers(0, 6), st.fractions(min_value=0, max_value=8, max_denominator=6), st.fractions(min_value=0, max_value=8, max_denominator=6))
def test_lemma1_additivity_and_homogeneity(n, a, b):
    table = list_table(cost=1)
    v = nat_list(n)
    p1, p2 = ann(a), ann(b)
    total = potential(v, ann_add(p1, p2), table)
    assert total == potential(v, p1, table) + potential(v, p2, table)
    assert potential(v, ann_scale(2, p1), table) == 2 * potential(v, p1, table)
    if ann_leq(p1, p2):
        assert potential(v, p1, table) <= potential(v, p2, table)


def test_base_result_shape_enforced():
    trs = RelativeTRS.build([], {"nil": 0})
    table = SignatureTable(trs, 1)
    with pytest.raises(ValueError):
        table.set_bases("nil", [decl([], ann(2), 0)])
