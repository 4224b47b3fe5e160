"""Symbolic derivation of resource-boundedness constraints.

For every rule the left-hand side is deconstructed by the weakening-free
footprint fragment (releasing potential and cost exactly), the right-hand
side is derived against the declared result annotation, and a budget
atom  cost(rhs) <= k + freed - rulecost  is emitted.  The deterministic
rule priority is share, then app, then var, then comp; the weakening
rules are folded in as slack inequalities: cost slack lands in the budget
atom, result slack at defined-symbol applications, and context slack at
the rule boundary (unused freed variables are simply dropped).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bounds
from .expressions import ConstraintProblem, Poly, ZERO
from .symbolic import SymAnn, SymbolicTables, SymDecl, build_tables, sym_add, sym_scale
from .terms import App, Term, Var, linearise
from .trs import RelativeTRS, Rule, call_graph_sccs


class UnsupportedPatternError(Exception):
    """A defined, non-constructor-like symbol inside an lhs argument."""


@dataclass
class AnalysisOptions:
    degree: int = 1
    costfree: bool = False
    heuristic: str = "none"  # none | shift | interleave
    relative: bool = False

    def mode_string(self) -> str:
        parts = ["relative" if self.relative else "standalone"]
        if self.costfree:
            parts.append("costfree")
        if self.heuristic != "none":
            parts.append(self.heuristic)
        return "+".join(parts)


@dataclass
class FreedPotential:
    """Context and cost released by footprinting a rule's lhs arguments."""

    context: dict[str, SymAnn]
    cost: Poly


@dataclass
class Judgement:
    context: dict[str, SymAnn]
    cost: Poly
    subject: Term
    result: SymAnn
    mode: str


@dataclass
class DeriveEnv:
    trs: RelativeTRS
    tables: SymbolicTables
    problem: ConstraintProblem
    sccs: dict[str, int]
    options: AnalysisOptions
    mode: str = "standard"  # standard | costfree | footprint
    analysed: str = ""  # lhs root of the rule being checked
    tag: str = ""  # origin prefix for emitted atoms
    explain: list[str] | None = None

    def note(self, depth: int, text: str) -> None:
        if self.explain is not None:
            self.explain.append("  " * depth + text)


def select_app_rule(caller: str, callee: str, sccs: dict[str, int], env: DeriveEnv) -> str:
    """Choose between the standard and the cost-free application rule.

    Cost-free applies only when the analysis runs with cost-free
    derivations, the callee is an operator (not constructor-like) in the
    SCC of the symbol under analysis, and the current derivation is not
    itself the cost-free analysis of that symbol.
    """
    if not env.options.costfree or env.mode != "standard":
        return "standard"
    info = env.trs.symbols[callee]
    if info.carries_potential:
        return "standard"
    if sccs.get(callee) == sccs.get(caller):
        return "cost-free"
    return "standard"


def derive(subject: Term, result: SymAnn, env: DeriveEnv, depth: int = 0) -> Judgement:
    """Derive a judgement for ``subject`` at the required result annotation.

    Returns the judgement; all side constraints are appended to the
    problem.  Sharing is handled by renaming the subject apart and adding
    the per-copy context annotations, so every sharing application
    satisfies p = p1 + p2 exactly.
    """
    renamed, grouping = linearise([subject])
    if any(new != orig for new, orig in grouping.items()):
        env.note(depth, f"(share) {subject}")
    ctx, cost = _derive_linear(renamed[0], result, env, depth)
    merged: dict[str, SymAnn] = {}
    for var_name, ann in ctx.items():
        orig = grouping.get(var_name, var_name)
        merged[orig] = sym_add(merged[orig], ann) if orig in merged else ann
    return Judgement(merged, cost, subject, result, env.mode)


def _derive_linear(t: Term, q: SymAnn, env: DeriveEnv, depth: int) -> tuple[dict[str, SymAnn], Poly]:
    if isinstance(t, Var):
        env.note(depth, f"(var) {t} : {_ann_str(q)}")
        return {t.name: q}, ZERO

    assert isinstance(t, App)
    info = env.trs.symbols.get(t.fun)
    if info is None:
        raise KeyError(f"symbol {t.fun!r} missing from the signature")

    if info.carries_potential:
        decl = env.tables.instance(t.fun, q)
    else:
        if env.mode == "footprint":
            raise UnsupportedPatternError(
                f"defined symbol {t.fun!r} inside a left-hand-side argument is not analysable"
            )
        decl = _operator_decl(t.fun, env)
        # result weakening: the declared result must cover what is needed
        env.problem.add_leq_vec(q, decl.result, f"{env.tag} result of {t.fun}")

    flat = all(isinstance(a, Var) for a in t.args)
    env.note(depth, f"({'app' if flat else 'comp'}) {t} : {_ann_str(q)}")
    ctx: dict[str, SymAnn] = {}
    cost = decl.cost
    for arg, p in zip(t.args, decl.args):
        sub_ctx, sub_cost = _derive_linear(arg, p, env, depth + 1)
        ctx.update(sub_ctx)  # disjoint: the subject was renamed apart
        cost = cost + sub_cost
    return ctx, cost


def _operator_decl(symbol: str, env: DeriveEnv) -> SymDecl:
    if env.mode == "costfree":
        return env.tables.costfree[symbol]
    choice = select_app_rule(env.analysed, symbol, env.sccs, env)
    main = env.tables.main[symbol]
    if choice == "standard":
        return main
    cf = env.tables.costfree[symbol]
    # one scaling factor per application site; fixed to 1 under the linear
    # heuristics (a free factor would make the problem nonlinear again)
    if env.options.heuristic == "none":
        lam = env.problem.fresh(f"lam.{symbol}")
    else:
        lam = Poly.const(1)
    args = tuple(sym_add(m, sym_scale(lam, c)) for m, c in zip(main.args, cf.args))
    result = sym_add(main.result, sym_scale(lam, cf.result))
    return SymDecl(args, result, main.cost + lam * cf.cost)


def footprint(lhs_args: tuple[Term, ...], arg_anns: tuple[SymAnn, ...], env: DeriveEnv) -> FreedPotential:
    """Potential freed by deconstructing the lhs arguments (exact).

    The arguments are linearised; each renamed argument is derived in the
    weakening-free footprint fragment against the declared argument
    annotation; annotations of renamed copies of one variable are added.
    """
    renamed, grouping = linearise(list(lhs_args))
    fp_env = _with_mode(env, "footprint")
    context: dict[str, SymAnn] = {}
    total = ZERO
    for arg, p in zip(renamed, arg_anns):
        ctx, cost = _derive_linear(arg, p, fp_env, 0)
        total = total + cost
        for var_name, ann in ctx.items():
            orig = grouping.get(var_name, var_name)
            context[orig] = sym_add(context[orig], ann) if orig in context else ann
    return FreedPotential(context, total)


def _with_mode(env: DeriveEnv, mode: str) -> DeriveEnv:
    return DeriveEnv(
        trs=env.trs,
        tables=env.tables,
        problem=env.problem,
        sccs=env.sccs,
        options=env.options,
        mode=mode,
        analysed=env.analysed,
        tag=env.tag,
        explain=None,
    )


def rule_constraints(rule: Rule, index: int, decl: SymDecl, cost_flag: Poly, env: DeriveEnv) -> None:
    """Emit the resource-boundedness constraints for one rule.

    Budget: cost(rhs derivation) <= k + freed - cost_flag, plus
    non-negativity of the budget itself.  Freed context annotations must
    cover the context the rhs derivation needs (variables freed but not
    used are dropped with their potential).
    """
    assert isinstance(rule.lhs, App)
    if rule.lhs.args:
        freed = footprint(rule.lhs.args, decl.args, env)
    else:
        freed = FreedPotential({}, ZERO)

    rhs_env = _with_mode(env, "costfree" if env.mode == "costfree" else "standard")
    rhs_env.explain = env.explain
    judgement = derive(rule.rhs, decl.result, rhs_env)

    for var_name, needed in judgement.context.items():
        released = freed.context.get(var_name)
        assert released is not None, f"rhs variable {var_name} not bound by the lhs"
        env.problem.add_leq_vec(needed, released, f"rule {index} context {var_name}")

    budget = decl.cost + freed.cost - cost_flag
    env.problem.add("<=", judgement.cost, budget, f"rule {index} budget")
    env.problem.add(">=", budget, ZERO, f"rule {index} budget nonneg")


def analyse(
    trs: RelativeTRS, options: AnalysisOptions, explain: list[str] | None = None
) -> tuple[ConstraintProblem, SymbolicTables]:
    """Build the full constraint problem for one degree attempt.

    Emits the polynomial-bound side conditions for every base
    declaration, boundedness constraints for every rule (strict rules
    cost 1, weak rules 0), cost-free obligations when enabled, and in
    relative mode 0/1 selector variables choosing which strict rules are
    actually counted (at least one must be).
    """
    assert options.degree >= 1
    problem = ConstraintProblem(options.degree, options.mode_string())
    tables = build_tables(trs, options.degree, problem, options.heuristic, options.costfree)
    sccs = call_graph_sccs(trs)

    if options.heuristic == "none":
        for symbol in trs.potential_carriers():
            decls = tables.bases[symbol]
            for j, base in enumerate(decls, start=1):
                bounds.thm2_constraints(
                    problem,
                    base.args,
                    base.result,
                    base.cost,
                    result_length=j,
                    origin=f"bound {symbol} base {j}",
                )
            bounds.superposition_closure_constraints(
                problem,
                [list(d.args) for d in decls],
                [d.cost for d in decls],
                origin=f"bound {symbol}",
            )
    # heuristic shapes satisfy the polynomial-bound conditions structurally:
    # shift and round-robin splits never exceed q + r with max r <= max q,
    # and their costs are the first result component.

    selectors: dict[int, Poly] = {}
    if options.relative:
        sel_vars = []
        for index, rule in enumerate(trs.rules, start=1):
            if not rule.strict:
                continue
            sel = problem.fresh(f"sel.{index}")
            problem.add("=", sel * sel, sel, f"rule {index} selector is 0/1")
            selectors[index] = sel
            sel_vars.append(sel)
        if sel_vars:
            total = sel_vars[0]
            for s in sel_vars[1:]:
                total = total + s
            problem.add(">=", total, Poly.const(1), "at least one strict rule counted")

    env = DeriveEnv(trs=trs, tables=tables, problem=problem, sccs=sccs, options=options, explain=explain)
    for index, rule in enumerate(trs.rules, start=1):
        root_info = trs.symbols[rule.root]
        if rule.strict:
            cost_flag = selectors[index] if options.relative else Poly.const(1)
        else:
            cost_flag = ZERO
        env.analysed = rule.root
        env.tag = f"rule {index}"
        if explain is not None:
            explain.append(f"rule {index}: {rule}")
        if root_info.carries_potential:
            # constructor-like roots: every base declaration instance must
            # be bounded; superposition reduces that to the bases
            for j, base in enumerate(tables.bases_for(rule.root), start=1):
                env.tag = f"rule {index} base {j}"
                rule_constraints(rule, index, base, cost_flag, env)
        else:
            rule_constraints(rule, index, tables.main[rule.root], cost_flag, env)

    if options.costfree:
        cf_env = _with_mode(env, "costfree")
        for index, rule in enumerate(trs.rules, start=1):
            root_info = trs.symbols[rule.root]
            cf_env.analysed = rule.root
            cf_env.tag = f"cf rule {index}"
            if root_info.carries_potential:
                for j, base in enumerate(tables.bases_for(rule.root), start=1):
                    cf_env.tag = f"cf rule {index} base {j}"
                    rule_constraints(rule, index, base, ZERO, cf_env)
            else:
                rule_constraints(rule, index, tables.costfree[rule.root], ZERO, cf_env)

    return problem, tables


def _ann_str(q: SymAnn) -> str:
    return "(" + ",".join(repr(e) for e in q) + ")"
