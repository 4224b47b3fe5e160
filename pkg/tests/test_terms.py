from __future__ import annotations

from amortrs.terms import App, Var, app, linearise, match, substitute, subterms


def test_size_and_str():
    t = app("f", Var("x"), app("g", app("a")))
    assert t.size() == 4
    assert str(t) == "f(x,g(a))"
    assert t.variables() == {"x"}
    assert not t.is_ground()
    assert app("a").is_ground()


def test_equality_and_hash():
    t1 = app("f", Var("x"))
    t2 = app("f", Var("x"))
    assert t1 == t2 and hash(t1) == hash(t2)
    assert t1 != app("f", Var("y"))
    assert Var("x") != app("x")


def test_match_linear():
    pattern = app("f", Var("x"), Var("y"))
    subject = app("f", app("a"), app("g", app("b")))
    binding = match(pattern, subject)
    assert binding == {"x": app("a"), "y": app("g", app("b"))}
    assert substitute(pattern, binding) == subject


def test_match_nonlinear():
    pattern = app("f", Var("x"), Var("x"))
    assert match(pattern, app("f", app("a"), app("a"))) is not None
    assert match(pattern, app("f", app("a"), app("b"))) is None


def test_match_mismatch():
    assert match(app("f", Var("x")), app("g", app("a"))) is None
    assert match(app("f", Var("x")), app("f")) is None


def test_subterms_order():
    t = app("f", Var("x"), app("g", app("a")))
    listed = [str(s) for s in subterms(t)]
    assert listed == ["f(x,g(a))", "x", "g(a)", "a"]


def test_linearise_single_duplicate():
    renamed, grouping = linearise([app("f", Var("x"), Var("x"))])
    assert [str(t) for t in renamed] == ["f(x_1,x_2)"]
    assert grouping == {"x_1": "x", "x_2": "x"}


def test_linearise_already_linear():
    renamed, grouping = linearise([Var("x"), Var("y")])
    assert [str(t) for t in renamed] == ["x", "y"]
    assert grouping == {"x": "x", "y": "y"}


def test_linearise_across_sequence():
    renamed, grouping = linearise([app("cons", Var("x"), Var("xs")), Var("x")])
    assert [str(t) for t in renamed] == ["cons(x_1,xs)", "x_2"]
    assert grouping == {"x_1": "x", "x_2": "x", "xs": "xs"}


def test_linearise_restores_input():
    original = app("f", Var("x"), app("g", Var("x"), Var("y")))
    renamed, grouping = linearise([original])
    restored = substitute(renamed[0], {new: Var(old) for new, old in grouping.items()})
    assert restored == original


def test_linearise_avoids_collisions():
    renamed, grouping = linearise([app("f", Var("x"), Var("x"), Var("x_1"))])
    names = renamed[0].variables()
    assert len(names) == 3
    assert grouping[sorted(names - {"x_1"})[0]] == "x"
