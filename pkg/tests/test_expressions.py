from __future__ import annotations

from fractions import Fraction

from amortrs.expressions import Atom, ConstraintProblem, Poly, sanitise


def test_poly_canonical_form():
    x, y = Poly.var("x"), Poly.var("y")
    assert x + y == y + x
    assert (x + 1) - 1 == x
    assert x * 0 == Poly()
    assert (x + y) * (x + y) == x * x + 2 * (x * y) + y * y


def test_poly_evaluate():
    x, y = Poly.var("x"), Poly.var("y")
    p = x * y + 2 * x + Fraction(1, 2)
    value = p.evaluate({"x": Fraction(3), "y": Fraction(1, 3)})
    assert value == 1 + 6 + Fraction(1, 2)


def test_poly_degree_and_linearity():
    x = Poly.var("x")
    assert Poly.const(5).total_degree() == 0
    assert (x + 1).total_degree() == 1
    assert (x * x).total_degree() == 2
    assert Atom("<=", x, Poly.const(1)).is_linear()
    assert not Atom("=", x * x, x).is_linear()


def test_atom_holds():
    x = Poly.var("x")
    assert Atom("<=", x, Poly.const(1)).holds({"x": Fraction(1)})
    assert Atom(">=", x, Poly.const(1)).holds({"x": Fraction(2)})
    assert not Atom("=", x, Poly.const(1)).holds({"x": Fraction(2)})


def test_fresh_names_deterministic():
    p1, p2 = ConstraintProblem(), ConstraintProblem()
    for problem in (p1, p2):
        problem.fresh("k.f")
        problem.fresh("k.f")
        problem.fresh("q.g")
    assert p1.variables == p2.variables
    assert len(set(p1.variables)) == 3


def test_check_assignment_reports_first_failure():
    problem = ConstraintProblem()
    x = problem.fresh("x")
    problem.add(">=", x, Poly.const(1), "lower")
    problem.add("<=", x, Poly.const(0), "upper")
    ok, failing = problem.check_assignment({"x": Fraction(1)})
    assert not ok and failing.origin == "upper"
    ok, failing = problem.check_assignment({"x": Fraction(2)})
    assert not ok and failing.origin == "upper"


def test_check_assignment_rejects_negative():
    problem = ConstraintProblem()
    problem.fresh("x")
    ok, failing = problem.check_assignment({"x": Fraction(-1)})
    assert not ok and "non-negativity" in failing.origin


def test_linear_only_scan():
    problem = ConstraintProblem()
    x = problem.fresh("x")
    problem.add("<=", x, Poly.const(1))
    assert problem.linear_only
    problem.add("=", x * x, x)
    assert not problem.linear_only


def test_sanitise():
    assert sanitise("rev'") != "rev'"
    assert "(" not in sanitise("f(x)")
    assert not sanitise("0").startswith("0")
    assert sanitise("plain_name-1.2") == "plain_name-1.2"
