"""Bounded backward proof search, cut-free.

Depth-first search from the goal sequent. The bound counts logical rule
applications along a branch (exchange is free); contraction is limited
per formula per branch and repeated sequents on a branch are pruned, so
the search space is finite and exhaustion is meaningful.

Every candidate step is proposed positionally (the principal may sit
anywhere; exchange chains are emitted to move it) and then validated by
running the calculus' own forward rule, so the search can never build a
step the checker would refuse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from seqcalc.calculi.check import CALCULI, CalculusDef, check_proof
from seqcalc.calculi.permute import move_in_left, move_in_right, permute_left, permute_right
from seqcalc.calculi.proof import Proof
from seqcalc.calculi.rules import RuleError, is_bang, is_why
from seqcalc.calculi.sequent import Sequent
from seqcalc.syntax import Binary, Const, Formula, Unary, linear_dual

Builder = Callable[[list[Proof]], Proof]


@dataclass(frozen=True)
class SearchResult:
    found: bool
    proof: Proof | None
    exhausted: bool
    nodes_expanded: int
    bound: int


# rules never applied backwards: cuts are excluded by construction
_CUTS = frozenset({"cut", "cut-why", "cut-bang"})

# leaves first, then logical rules, derelictions and promotions, duals,
# unit insertions, weakening, contraction last
_PRIORITY = [
    "id", "dist", "tt-r", "top-r", "ff-l", "bot-l", "one-r", "zero-l",
    "tensor-l", "par-r", "c-imp-r", "i-imp-r-why", "u-imp-r", "cl-imp-r-bang",
    "neg-l", "neg-r",
    "and-r", "with-r", "with-r-why", "or-l", "plus-l", "plus-l-bang", "c-imp-l",
    "and-l", "with-l", "and-l-bang", "or-r", "plus-r", "or-r-why",
    "tensor-r", "par-l", "i-imp-l-why", "u-imp-l", "cl-imp-l-bang",
    "bang-r-why", "bang-r-bang", "why-l-bang", "bang-why-l", "why-bang-r",
    "bang-d", "why-d", "why-l-why",
    "l-dual-l", "l-dual-r",
    "tt-l", "tt-l-bang", "ff-r", "ff-r-why", "top-l", "bot-r",
    "wl", "wr", "bang-w", "why-w",
    "cl", "cr", "bang-c", "why-c",
]

_CONTRACTIONS = frozenset({"cl", "cr", "bang-c", "why-c"})


def _drop(t: tuple, j: int) -> tuple:
    return t[:j] + t[j + 1 :]


def _splits(items: tuple[int, ...]) -> Iterator[tuple[list[int], list[int]]]:
    n = len(items)
    for mask in range(1 << n):
        first = [items[k] for k in range(n) if mask >> k & 1]
        second = [items[k] for k in range(n) if not mask >> k & 1]
        yield first, second


def _restore_l(order: list[int]) -> Callable[[Proof], Proof]:
    perm = [order.index(j) for j in range(len(order))]
    return lambda p: permute_left(p, perm)


def _restore_r(order: list[int]) -> Callable[[Proof], Proof]:
    perm = [order.index(j) for j in range(len(order))]
    return lambda p: permute_right(p, perm)


def _candidates(rule: str, s: Sequent, cal: CalculusDef) -> Iterator[tuple[list[Sequent], Builder]]:
    """Backward readings of one rule against goal s.

    Yields premise goals with a builder assembling the rule node plus the
    exchange chain that puts the principal back at its position in s.
    """
    ante, succ = s.ante, s.succ
    nl, nr = len(ante), len(succ)

    match rule:
        case "id":
            if nl == 1 and nr == 1 and ante[0] == succ[0]:
                f = ante[0]
                yield [], lambda ps: Proof("id", formula=f)
        case "dist":
            if (
                nl == 1 and nr == 1
                and ante[0] == Unary("!", Unary("?", _inner2(ante[0])))
                and succ[0] == Unary("?", Unary("!", _inner2(ante[0])))
            ):
                f = _inner2(ante[0])
                yield [], lambda ps: Proof("dist", formula=f)
        case "tt-r":
            if nl == 0 and succ == (Const("tt"),):
                yield [], lambda ps: Proof("tt-r")
        case "top-r":
            if nl == 0 and succ == (Const("top"),):
                yield [], lambda ps: Proof("top-r")
        case "ff-l":
            if nr == 0 and ante == (Const("ff"),):
                yield [], lambda ps: Proof("ff-l")
        case "bot-l":
            if nr == 0 and ante == (Const("bot"),):
                yield [], lambda ps: Proof("bot-l")
        case "one-r":
            for j in range(nr):
                if succ[j] == Const("1"):
                    ctx = (ante, _drop(succ, j))
                    yield [], (lambda ps, c=ctx, j=j: move_in_right(Proof("one-r", contexts=c), 0, j))
        case "zero-l":
            for j in range(nl):
                if ante[j] == Const("0"):
                    ctx = (_drop(ante, j), succ)
                    yield [], (lambda ps, c=ctx, j=j: move_in_left(Proof("zero-l", contexts=c), nl - 1, j))

        # unary left rules, principal rebuilt at the antecedent end
        case "tensor-l":
            for j in range(nl):
                f = ante[j]
                if isinstance(f, Binary) and f.op == "tensor":
                    goal = Sequent(_drop(ante, j) + (f.left, f.right), succ)
                    yield [goal], (lambda ps, j=j: move_in_left(Proof("tensor-l", tuple(ps)), nl - 1, j))
        case "and-l" | "with-l" | "and-l-bang":
            op = "and" if rule != "with-l" else "with"
            for j in range(nl):
                f = ante[j]
                if isinstance(f, Binary) and f.op == op:
                    for i, comp in ((1, f.left), (2, f.right)):
                        goal = Sequent(_drop(ante, j) + (comp,), succ)
                        yield [goal], (
                            lambda ps, j=j, i=i, f=f: move_in_left(
                                Proof(rule, tuple(ps), i=i, intro=f), nl - 1, j
                            )
                        )
        case "bang-d":
            for j in range(nl):
                f = ante[j]
                if is_bang(f):
                    goal = Sequent(_drop(ante, j) + (f.sub,), succ)
                    yield [goal], (lambda ps, j=j: move_in_left(Proof("bang-d", tuple(ps)), nl - 1, j))
        case "why-l-bang" | "why-l-why":
            for j in range(nl):
                f = ante[j]
                if is_why(f):
                    goal = Sequent(_drop(ante, j) + (f.sub,), succ)
                    yield [goal], (lambda ps, j=j: move_in_left(Proof(rule, tuple(ps)), nl - 1, j))
        case "bang-why-l":
            for j in range(nl):
                f = ante[j]
                if is_bang(f) and is_why(f.sub):
                    goal = Sequent(_drop(ante, j) + (Unary("!", f.sub.sub),), succ)
                    yield [goal], (lambda ps, j=j: move_in_left(Proof("bang-why-l", tuple(ps)), nl - 1, j))
        case "neg-l":
            for j in range(nl):
                f = ante[j]
                if isinstance(f, Unary) and f.op == "neg":
                    goal = Sequent(_drop(ante, j), (f.sub,) + succ)
                    yield [goal], (lambda ps, j=j: move_in_left(Proof("neg-l", tuple(ps)), nl - 1, j))
        case "l-dual-l":
            for j in range(nl):
                f = ante[j]
                try:
                    d = linear_dual(f)
                except Exception:
                    continue
                goal = Sequent(_drop(ante, j), (d,) + succ)
                yield [goal], (lambda ps, j=j: move_in_left(Proof("l-dual-l", tuple(ps)), nl - 1, j))
        case "tt-l" | "tt-l-bang":
            for j in range(nl):
                if ante[j] == Const("tt"):
                    goal = Sequent(_drop(ante, j), succ)
                    yield [goal], (lambda ps, j=j: move_in_left(Proof(rule, tuple(ps)), nl - 1, j))
        case "top-l":
            for j in range(nl):
                if ante[j] == Const("top"):
                    goal = Sequent(_drop(ante, j), succ)
                    yield [goal], (lambda ps, j=j: move_in_left(Proof("top-l", tuple(ps)), nl - 1, j))
        case "wl" | "bang-w":
            for j in range(nl):
                if rule == "bang-w" and not is_bang(ante[j]):
                    continue
                goal = Sequent(_drop(ante, j), succ)
                yield [goal], (
                    lambda ps, j=j, f=ante[j]: move_in_left(Proof(rule, tuple(ps), intro=f), nl - 1, j)
                )
        case "cl" | "bang-c":
            for j in range(nl):
                if rule == "bang-c" and not is_bang(ante[j]):
                    continue
                goal = Sequent(_drop(ante, j) + (ante[j], ante[j]), succ)
                yield [goal], (lambda ps, j=j: move_in_left(Proof(rule, tuple(ps)), nl - 1, j))

        # unary right rules, principal rebuilt at the succedent head
        case "par-r":
            for j in range(nr):
                f = succ[j]
                if isinstance(f, Binary) and f.op == "par":
                    goal = Sequent(ante, (f.left, f.right) + _drop(succ, j))
                    yield [goal], (lambda ps, j=j: move_in_right(Proof("par-r", tuple(ps)), 0, j))
        case "or-r" | "plus-r" | "or-r-why":
            op = "plus" if rule == "plus-r" else "or"
            for j in range(nr):
                f = succ[j]
                if isinstance(f, Binary) and f.op == op:
                    for i, comp in ((1, f.left), (2, f.right)):
                        goal = Sequent(ante, (comp,) + _drop(succ, j))
                        yield [goal], (
                            lambda ps, j=j, i=i, f=f: move_in_right(
                                Proof(rule, tuple(ps), i=i, intro=f), 0, j
                            )
                        )
        case "why-d":
            for j in range(nr):
                f = succ[j]
                if is_why(f):
                    goal = Sequent(ante, (f.sub,) + _drop(succ, j))
                    yield [goal], (lambda ps, j=j: move_in_right(Proof("why-d", tuple(ps)), 0, j))
        case "bang-r-why" | "bang-r-bang":
            for j in range(nr):
                f = succ[j]
                if is_bang(f):
                    goal = Sequent(ante, (f.sub,) + _drop(succ, j))
                    yield [goal], (lambda ps, j=j: move_in_right(Proof(rule, tuple(ps)), 0, j))
        case "why-bang-r":
            for j in range(nr):
                f = succ[j]
                if is_why(f) and is_bang(f.sub):
                    goal = Sequent(ante, (Unary("?", f.sub.sub),) + _drop(succ, j))
                    yield [goal], (lambda ps, j=j: move_in_right(Proof("why-bang-r", tuple(ps)), 0, j))
        case "neg-r":
            for j in range(nr):
                f = succ[j]
                if isinstance(f, Unary) and f.op == "neg":
                    goal = Sequent(ante + (f.sub,), _drop(succ, j))
                    yield [goal], (lambda ps, j=j: move_in_right(Proof("neg-r", tuple(ps)), 0, j))
        case "l-dual-r":
            for j in range(nr):
                f = succ[j]
                try:
                    d = linear_dual(f)
                except Exception:
                    continue
                goal = Sequent(ante + (d,), _drop(succ, j))
                yield [goal], (lambda ps, j=j: move_in_right(Proof("l-dual-r", tuple(ps)), 0, j))
        case "c-imp-r" | "i-imp-r-why" | "cl-imp-r-bang":
            op = {"c-imp-r": "==>", "i-imp-r-why": "=>", "cl-imp-r-bang": "->>"}[rule]
            for j in range(nr):
                f = succ[j]
                if isinstance(f, Binary) and f.op == op:
                    goal = Sequent(ante + (f.left,), (f.right,) + _drop(succ, j))
                    yield [goal], (lambda ps, j=j: move_in_right(Proof(rule, tuple(ps)), 0, j))
        case "u-imp-r":
            for j in range(nr):
                f = succ[j]
                if isinstance(f, Binary) and f.op == "-o" and nr == 1:
                    goal = Sequent(ante + (f.left,), (f.right,))
                    yield [goal], (lambda ps: Proof("u-imp-r", tuple(ps)))
        case "ff-r" | "ff-r-why":
            for j in range(nr):
                if succ[j] == Const("ff"):
                    goal = Sequent(ante, _drop(succ, j))
                    yield [goal], (lambda ps, j=j: move_in_right(Proof(rule, tuple(ps)), 0, j))
        case "bot-r":
            for j in range(nr):
                if succ[j] == Const("bot"):
                    goal = Sequent(ante, _drop(succ, j))
                    yield [goal], (lambda ps, j=j: move_in_right(Proof("bot-r", tuple(ps)), 0, j))
        case "wr" | "why-w":
            for j in range(nr):
                if rule == "why-w" and not is_why(succ[j]):
                    continue
                goal = Sequent(ante, _drop(succ, j))
                yield [goal], (
                    lambda ps, j=j, f=succ[j]: move_in_right(Proof(rule, tuple(ps), intro=f), 0, j)
                )
        case "cr" | "why-c":
            for j in range(nr):
                if rule == "why-c" and not is_why(succ[j]):
                    continue
                goal = Sequent(ante, (succ[j], succ[j]) + _drop(succ, j))
                yield [goal], (lambda ps, j=j: move_in_right(Proof(rule, tuple(ps)), 0, j))

        # shared-context binary rules
        case "and-r" | "with-r" | "with-r-why":
            op = "and" if rule == "and-r" else "with"
            for j in range(nr):
                f = succ[j]
                if isinstance(f, Binary) and f.op == op:
                    rest = _drop(succ, j)
                    g1 = Sequent(ante, (f.left,) + rest)
                    g2 = Sequent(ante, (f.right,) + rest)
                    yield [g1, g2], (lambda ps, j=j: move_in_right(Proof(rule, tuple(ps)), 0, j))
        case "or-l" | "plus-l" | "plus-l-bang":
            op = "or" if rule == "or-l" else "plus"
            for j in range(nl):
                f = ante[j]
                if isinstance(f, Binary) and f.op == op:
                    rest = _drop(ante, j)
                    g1 = Sequent(rest + (f.left,), succ)
                    g2 = Sequent(rest + (f.right,), succ)
                    yield [g1, g2], (lambda ps, j=j: move_in_left(Proof(rule, tuple(ps)), nl - 1, j))
        case "c-imp-l":
            for j in range(nl):
                f = ante[j]
                if isinstance(f, Binary) and f.op == "==>":
                    rest = _drop(ante, j)
                    g1 = Sequent(rest, (f.left,) + succ)
                    g2 = Sequent(rest + (f.right,), succ)
                    yield [g1, g2], (lambda ps, j=j: move_in_left(Proof("c-imp-l", tuple(ps)), nl - 1, j))

        # multiplicative binary rules: enumerate context splits
        case "tensor-r":
            for j in range(nr):
                f = succ[j]
                if not (isinstance(f, Binary) and f.op == "tensor"):
                    continue
                rest_r = [k for k in range(nr) if k != j]
                for la, ra in _splits(tuple(range(nl))):
                    for ls, rs in _splits(tuple(rest_r)):
                        g1 = Sequent(tuple(ante[k] for k in la), (f.left,) + tuple(succ[k] for k in ls))
                        g2 = Sequent(tuple(ante[k] for k in ra), (f.right,) + tuple(succ[k] for k in rs))
                        l_order = la + ra
                        r_order = [j] + ls + rs
                        yield [g1, g2], (
                            lambda ps, lo=l_order, ro=r_order: _restore_l(lo)(
                                _restore_r(ro)(Proof("tensor-r", tuple(ps)))
                            )
                        )
        case "par-l":
            for j in range(nl):
                f = ante[j]
                if not (isinstance(f, Binary) and f.op == "par"):
                    continue
                rest_l = [k for k in range(nl) if k != j]
                for la, ra in _splits(tuple(rest_l)):
                    for ls, rs in _splits(tuple(range(nr))):
                        g1 = Sequent(tuple(ante[k] for k in la) + (f.left,), tuple(succ[k] for k in ls))
                        g2 = Sequent(tuple(ante[k] for k in ra) + (f.right,), tuple(succ[k] for k in rs))
                        l_order = la + ra + [j]
                        r_order = ls + rs
                        yield [g1, g2], (
                            lambda ps, lo=l_order, ro=r_order: _restore_l(lo)(
                                _restore_r(ro)(Proof("par-l", tuple(ps)))
                            )
                        )
        case "i-imp-l-why":
            for j in range(nl):
                f = ante[j]
                if not (isinstance(f, Binary) and f.op == "=>"):
                    continue
                rest_l = [k for k in range(nl) if k != j]
                for la, ra in _splits(tuple(rest_l)):
                    for ls, rs in _splits(tuple(range(nr))):
                        g1 = Sequent(tuple(ante[k] for k in la) + (f.right,), tuple(succ[k] for k in ls))
                        g2 = Sequent(tuple(ante[k] for k in ra), (f.left,) + tuple(succ[k] for k in rs))
                        l_order = la + ra + [j]
                        r_order = ls + rs
                        yield [g1, g2], (
                            lambda ps, lo=l_order, ro=r_order: _restore_l(lo)(
                                _restore_r(ro)(Proof("i-imp-l-why", tuple(ps)))
                            )
                        )
        case "u-imp-l":
            for j in range(nl):
                f = ante[j]
                if not (isinstance(f, Binary) and f.op == "-o"):
                    continue
                rest_l = [k for k in range(nl) if k != j]
                for la, ra in _splits(tuple(rest_l)):
                    g1 = Sequent(tuple(ante[k] for k in la), (f.left,))
                    g2 = Sequent(tuple(ante[k] for k in ra) + (f.right,), succ)
                    l_order = la + ra + [j]
                    yield [g1, g2], (
                        lambda ps, lo=l_order: _restore_l(lo)(Proof("u-imp-l", tuple(ps)))
                    )
        case "cl-imp-l-bang":
            for j in range(nl):
                f = ante[j]
                if not (is_bang(f) and isinstance(f.sub, Binary) and f.sub.op == "->>"):
                    continue
                inner = f.sub
                rest_l = [k for k in range(nl) if k != j]
                for la, ra in _splits(tuple(rest_l)):
                    if not all(is_bang(ante[k]) for k in la):
                        continue
                    for ls, rs in _splits(tuple(range(nr))):
                        g1 = Sequent(tuple(ante[k] for k in la) + (inner.right,), tuple(succ[k] for k in ls))
                        g2 = Sequent(tuple(ante[k] for k in ra), (inner.left,) + tuple(succ[k] for k in rs))
                        l_order = la + ra + [j]
                        r_order = ls + rs
                        yield [g1, g2], (
                            lambda ps, lo=l_order, ro=r_order: _restore_l(lo)(
                                _restore_r(ro)(Proof("cl-imp-l-bang", tuple(ps)))
                            )
                        )


def _inner2(f: Formula) -> Formula | None:
    # the body under two unary marks, if the shape allows
    if isinstance(f, Unary) and isinstance(f.sub, Unary):
        return f.sub.sub
    return None


def _canon(s: Sequent) -> tuple:
    # provability is exchange-invariant, so visited states and the
    # failure cache work on sorted sides
    return (
        tuple(sorted(s.ante, key=repr)),
        tuple(sorted(s.succ, key=repr)),
    )


_BIG = 1 << 30


def search_cutfree(
    goal: Sequent,
    calculus: str,
    depth_bound: int,
    contraction_budget: int = 2,
) -> SearchResult:
    """Look for a cut-free proof of goal within the logical-depth bound.

    The bound counts non-exchange rule applications along each branch,
    a leaf costing one. Exhaustion is complete relative to the bound and
    the per-formula contraction budget.
    """
    cal = CALCULI[calculus]
    rules = [r for r in _PRIORITY if r in cal.rules and r not in _CUTS]
    if calculus == "ilc-rho":
        # tractability clause 1 bans the ?-over-! promotion outright
        rules = [r for r in rules if r != "why-bang-r"]
    expanded = 0
    # failed[key] = highest budget at which key is known unprovable,
    # recorded only when the failure did not lean on an ancestor above
    # the node (classic dependency-tracked caching)
    failed: dict[tuple, int] = {}
    path: dict[tuple, int] = {}

    def solve(s: Sequent, budget: int, contr: dict[Formula, int]) -> tuple[Proof | None, int]:
        nonlocal expanded
        key = (_canon(s), frozenset(contr.items()))
        if key in path:
            return None, path[key]
        if budget <= 0:
            return None, _BIG
        if budget <= failed.get(key, -1):
            return None, _BIG
        expanded += 1
        depth = len(path)
        path[key] = depth
        mindep = _BIG
        won = False
        try:
            for rule in rules:
                tried: set[tuple] = set()
                for goals, build in _candidates(rule, s, cal):
                    sig = (rule, tuple(goals))
                    if sig in tried:
                        continue
                    tried.add(sig)
                    if cal.intuitionistic and any(len(g.succ) > 1 for g in goals):
                        continue
                    if not _forward_ok(rule, goals, s, cal, build):
                        continue
                    contr2 = contr
                    if rule in _CONTRACTIONS:
                        f = goals[0].ante[-1] if rule in ("cl", "bang-c") else goals[0].succ[0]
                        used = contr.get(f, 0)
                        if used >= contraction_budget:
                            continue
                        contr2 = dict(contr)
                        contr2[f] = used + 1
                    subproofs: list[Proof] = []
                    for g in goals:
                        sub, dep = solve(g, budget - 1, contr2)
                        if sub is None:
                            mindep = min(mindep, dep)
                            break
                        subproofs.append(sub)
                    if len(subproofs) == len(goals):
                        won = True
                        return build(subproofs), 0
            return None, mindep
        finally:
            del path[key]
            if not won and mindep >= depth:
                prev = failed.get(key, -1)
                if budget > prev:
                    failed[key] = budget

    proof, _ = solve(goal, depth_bound, {})
    if proof is not None:
        report = check_proof(proof, calculus)
        if not report.ok or report.end_sequent != goal:
            raise AssertionError(
                f"search built a bad proof for {goal}: "
                f"{report.violation.message if report.violation else report.end_sequent}"
            )
        return SearchResult(True, proof, False, expanded, depth_bound)
    return SearchResult(False, None, True, expanded, depth_bound)


def _forward_ok(rule: str, goals: list[Sequent], s: Sequent, cal: CalculusDef, build: Builder) -> bool:
    # validate the rule instance by running the forward schema; the
    # exchange chain around it cannot fail
    try:
        dummy = build([_SEQ_HOLDER] * len(goals))
    except Exception:
        return False
    node = dummy
    while node.rule in ("xl", "xr"):
        node = node.premises[0]
    try:
        cal.rules[rule](node, tuple(goals))
    except RuleError:
        return False
    return True


_SEQ_HOLDER = Proof("id", formula=Const("tt"))
