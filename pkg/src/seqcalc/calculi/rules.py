"""Rule schemas: conclusion computation plus occurrence ancestry.

Checking runs bottom-up: given the already-computed end sequents of the
premises, each rule function validates its side conditions and returns
the unique conclusion together with a flow map. The flow records, for
every formula occurrence in the conclusion, which premise occurrences it
descends from; weakened and leaf occurrences have no origins and cut
formulas appear in no origin set. Purity analysis and rule permutation
both consume this map.

Side conditions that vary between calculi (all-? succedent tails, all-!
antecedent contexts) are constructor arguments, so one schema serves
several calculi.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Callable, Iterator

from seqcalc.calculi.proof import Proof
from seqcalc.calculi.sequent import Sequent
from seqcalc.syntax import Binary, Const, Formula, Unary, linear_dual

Origin = tuple[int, str, int]
Flow = dict[tuple[str, int], tuple[Origin, ...]]
RuleFn = Callable[[Proof, tuple[Sequent, ...]], tuple[Sequent, Flow]]

# Strict mode enforces the !-context and ?-tail side conditions. The cut
# eliminator evaluates intermediate trees leniently (generalized cuts mix
# marked and unmarked contexts mid-rewrite); final outputs are re-checked
# strictly.
_STRICT = True


@contextmanager
def lenient() -> Iterator[None]:
    global _STRICT
    old = _STRICT
    _STRICT = False
    try:
        yield
    finally:
        _STRICT = old


class RuleError(Exception):
    def __init__(self, kind: str, message: str) -> None:
        super().__init__(message)
        self.kind = kind
        self.message = message


def _need(cond: bool, kind: str, message: str) -> None:
    if not cond:
        raise RuleError(kind, message)


def _arity(prem: tuple[Sequent, ...], n: int, rule: str) -> None:
    _need(len(prem) == n, "arity", f"{rule} takes {n} premise(s), found {len(prem)}")


def is_why(f: Formula) -> bool:
    return isinstance(f, Unary) and f.op == "?"


def is_bang(f: Formula) -> bool:
    return isinstance(f, Unary) and f.op == "!"


def _all_why(fs: tuple[Formula, ...], rule: str, what: str) -> None:
    if not _STRICT:
        return
    _need(all(is_why(f) for f in fs), "side-condition", f"{rule}: {what} must consist of ?-formulas")


def _all_bang(fs: tuple[Formula, ...], rule: str, what: str) -> None:
    if not _STRICT:
        return
    _need(all(is_bang(f) for f in fs), "side-condition", f"{rule}: {what} must consist of !-formulas")


# a side under construction: formulas paired with their origin sets
Piece = list[tuple[Formula, tuple[Origin, ...]]]


def _ctx(k: int, side: str, formulas: tuple[Formula, ...], start: int = 0, stop: int | None = None) -> Piece:
    stop = len(formulas) if stop is None else stop
    return [(formulas[j], ((k, side, j),)) for j in range(start, stop)]


def _new(f: Formula, *origins: Origin) -> Piece:
    return [(f, tuple(origins))]


def _close(ante: Piece, succ: Piece) -> tuple[Sequent, Flow]:
    flow: Flow = {}
    for idx, (_, origins) in enumerate(ante):
        if origins:
            flow[("L", idx)] = origins
    for idx, (_, origins) in enumerate(succ):
        if origins:
            flow[("R", idx)] = origins
    return Sequent(tuple(f for f, _ in ante), tuple(f for f, _ in succ)), flow


def _merge(a: Piece, b: Piece, rule: str, what: str) -> Piece:
    # shared context: both premises present the same formulas; the
    # conclusion occurrence descends from both copies
    _need(
        [f for f, _ in a] == [f for f, _ in b],
        "premise-shape",
        f"{rule}: premises must share {what}",
    )
    return [(f, oa + ob) for (f, oa), (_, ob) in zip(a, b)]


# ---------------------------------------------------------------------------
# parameter access

def _get_at(node: Proof, bound: int) -> int:
    _need(node.at is not None, "params", f"{node.rule} needs :at")
    _need(0 <= node.at <= bound - 2, "params", f"{node.rule}: :at {node.at} out of range for {bound} formulas")
    return node.at


def _get_branch(node: Proof, op: str) -> tuple[int, Formula, Formula, Formula]:
    _need(node.i in (1, 2), "params", f"{node.rule} needs :i 1 or :i 2")
    _need(node.intro is not None, "params", f"{node.rule} needs :intro")
    intro = node.intro
    _need(
        isinstance(intro, Binary) and intro.op == op,
        "params",
        f"{node.rule}: :intro must be a {op} formula",
    )
    assert isinstance(intro, Binary)
    picked = intro.left if node.i == 1 else intro.right
    return node.i, intro, picked, intro


def _get_intro(node: Proof) -> Formula:
    _need(node.intro is not None, "params", f"{node.rule} needs :intro")
    assert node.intro is not None
    return node.intro


# ---------------------------------------------------------------------------
# structural rules

def rule_xl(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "xl")
    (s,) = prem
    k = _get_at(node, len(s.ante))
    ante = _ctx(0, "L", s.ante)
    ante[k], ante[k + 1] = ante[k + 1], ante[k]
    return _close(ante, _ctx(0, "R", s.succ))


def rule_xr(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "xr")
    (s,) = prem
    k = _get_at(node, len(s.succ))
    succ = _ctx(0, "R", s.succ)
    succ[k], succ[k + 1] = succ[k + 1], succ[k]
    return _close(_ctx(0, "L", s.ante), succ)


def rule_wl(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "wl")
    (s,) = prem
    return _close(_ctx(0, "L", s.ante) + _new(_get_intro(node)), _ctx(0, "R", s.succ))


def rule_wr(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "wr")
    (s,) = prem
    return _close(_ctx(0, "L", s.ante), _new(_get_intro(node)) + _ctx(0, "R", s.succ))


def rule_cl(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "cl")
    (s,) = prem
    _need(len(s.ante) >= 2, "premise-shape", "cl: premise antecedent needs two formulas")
    _need(s.ante[-2] == s.ante[-1], "premise-shape", "cl: last two antecedent formulas must be equal")
    n = len(s.ante)
    ante = _ctx(0, "L", s.ante, 0, n - 2) + _new(s.ante[-1], (0, "L", n - 2), (0, "L", n - 1))
    return _close(ante, _ctx(0, "R", s.succ))


def rule_cr(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "cr")
    (s,) = prem
    _need(len(s.succ) >= 2, "premise-shape", "cr: premise succedent needs two formulas")
    _need(s.succ[0] == s.succ[1], "premise-shape", "cr: first two succedent formulas must be equal")
    succ = _new(s.succ[0], (0, "R", 0), (0, "R", 1)) + _ctx(0, "R", s.succ, 2)
    return _close(_ctx(0, "L", s.ante), succ)


def rule_bang_w(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "bang-w")
    (s,) = prem
    intro = _get_intro(node)
    _need(is_bang(intro), "params", "bang-w: :intro must be a !-formula")
    return _close(_ctx(0, "L", s.ante) + _new(intro), _ctx(0, "R", s.succ))


def make_why_w(tail_why: bool) -> RuleFn:
    def rule_why_w(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
        _arity(prem, 1, "why-w")
        (s,) = prem
        intro = _get_intro(node)
        _need(is_why(intro), "params", "why-w: :intro must be a ?-formula")
        if tail_why:
            _all_why(s.succ, "why-w", "the succedent context")
        return _close(_ctx(0, "L", s.ante), _new(intro) + _ctx(0, "R", s.succ))

    return rule_why_w


def rule_bang_c(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "bang-c")
    (s,) = prem
    _need(len(s.ante) >= 2, "premise-shape", "bang-c: premise antecedent needs two formulas")
    _need(s.ante[-2] == s.ante[-1], "premise-shape", "bang-c: last two antecedent formulas must be equal")
    _need(is_bang(s.ante[-1]), "premise-shape", "bang-c: contracted formula must be a !-formula")
    n = len(s.ante)
    ante = _ctx(0, "L", s.ante, 0, n - 2) + _new(s.ante[-1], (0, "L", n - 2), (0, "L", n - 1))
    return _close(ante, _ctx(0, "R", s.succ))


def make_why_c(tail_why: bool) -> RuleFn:
    def rule_why_c(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
        _arity(prem, 1, "why-c")
        (s,) = prem
        _need(len(s.succ) >= 2, "premise-shape", "why-c: premise succedent needs two formulas")
        _need(s.succ[0] == s.succ[1], "premise-shape", "why-c: first two succedent formulas must be equal")
        _need(is_why(s.succ[0]), "premise-shape", "why-c: contracted formula must be a ?-formula")
        if tail_why:
            _all_why(s.succ[2:], "why-c", "the succedent context")
        succ = _new(s.succ[0], (0, "R", 0), (0, "R", 1)) + _ctx(0, "R", s.succ, 2)
        return _close(_ctx(0, "L", s.ante), succ)

    return rule_why_c


def make_bang_d(ctx_bang: bool) -> RuleFn:
    def rule_bang_d(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
        _arity(prem, 1, "bang-d")
        (s,) = prem
        _need(len(s.ante) >= 1, "premise-shape", "bang-d: premise antecedent must be nonempty")
        if ctx_bang:
            _all_bang(s.ante[:-1], "bang-d", "the antecedent context")
        n = len(s.ante)
        ante = _ctx(0, "L", s.ante, 0, n - 1) + _new(Unary("!", s.ante[-1]), (0, "L", n - 1))
        return _close(ante, _ctx(0, "R", s.succ))

    return rule_bang_d


def make_why_d(tail_why: bool) -> RuleFn:
    def rule_why_d(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
        _arity(prem, 1, "why-d")
        (s,) = prem
        _need(len(s.succ) >= 1, "premise-shape", "why-d: premise succedent must be nonempty")
        if tail_why:
            _all_why(s.succ[1:], "why-d", "the succedent context")
        succ = _new(Unary("?", s.succ[0]), (0, "R", 0)) + _ctx(0, "R", s.succ, 1)
        return _close(_ctx(0, "L", s.ante), succ)

    return rule_why_d


def rule_why_l_bang(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "why-l-bang")
    (s,) = prem
    _need(len(s.ante) >= 1, "premise-shape", "why-l-bang: premise antecedent must be nonempty")
    _all_bang(s.ante[:-1], "why-l-bang", "the antecedent context")
    _all_why(s.succ, "why-l-bang", "the succedent")
    n = len(s.ante)
    ante = _ctx(0, "L", s.ante, 0, n - 1) + _new(Unary("?", s.ante[-1]), (0, "L", n - 1))
    return _close(ante, _ctx(0, "R", s.succ))


def rule_bang_r_why(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "bang-r-why")
    (s,) = prem
    _need(len(s.succ) >= 1, "premise-shape", "bang-r-why: premise succedent must be nonempty")
    _all_bang(s.ante, "bang-r-why", "the antecedent")
    _all_why(s.succ[1:], "bang-r-why", "the succedent context")
    succ = _new(Unary("!", s.succ[0]), (0, "R", 0)) + _ctx(0, "R", s.succ, 1)
    return _close(_ctx(0, "L", s.ante), succ)


def rule_bang_why_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "bang-why-l")
    (s,) = prem
    _need(len(s.ante) >= 1, "premise-shape", "bang-why-l: premise antecedent must be nonempty")
    _need(is_bang(s.ante[-1]), "premise-shape", "bang-why-l: last antecedent formula must be a !-formula")
    _all_bang(s.ante[:-1], "bang-why-l", "the antecedent context")
    _all_why(s.succ, "bang-why-l", "the succedent")
    inner = s.ante[-1].sub  # type: ignore[union-attr]
    n = len(s.ante)
    ante = _ctx(0, "L", s.ante, 0, n - 1) + _new(Unary("!", Unary("?", inner)), (0, "L", n - 1))
    return _close(ante, _ctx(0, "R", s.succ))


def rule_why_bang_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "why-bang-r")
    (s,) = prem
    _need(len(s.succ) >= 1, "premise-shape", "why-bang-r: premise succedent must be nonempty")
    _need(is_why(s.succ[0]), "premise-shape", "why-bang-r: first succedent formula must be a ?-formula")
    _all_bang(s.ante, "why-bang-r", "the antecedent")
    _all_why(s.succ[1:], "why-bang-r", "the succedent context")
    inner = s.succ[0].sub  # type: ignore[union-attr]
    succ = _new(Unary("?", Unary("!", inner)), (0, "R", 0)) + _ctx(0, "R", s.succ, 1)
    return _close(_ctx(0, "L", s.ante), succ)


def make_why_l_why() -> RuleFn:
    def rule_why_l_why(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
        _arity(prem, 1, "why-l-why")
        (s,) = prem
        _need(len(s.ante) >= 1, "premise-shape", "why-l-why: premise antecedent must be nonempty")
        _all_why(s.succ, "why-l-why", "the succedent")
        n = len(s.ante)
        ante = _ctx(0, "L", s.ante, 0, n - 1) + _new(Unary("?", s.ante[-1]), (0, "L", n - 1))
        return _close(ante, _ctx(0, "R", s.succ))

    return rule_why_l_why


def rule_bang_r_bang(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "bang-r-bang")
    (s,) = prem
    _need(len(s.succ) >= 1, "premise-shape", "bang-r-bang: premise succedent must be nonempty")
    _all_bang(s.ante, "bang-r-bang", "the antecedent")
    succ = _new(Unary("!", s.succ[0]), (0, "R", 0)) + _ctx(0, "R", s.succ, 1)
    return _close(_ctx(0, "L", s.ante), succ)


# ---------------------------------------------------------------------------
# axioms and cuts

def rule_id(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 0, "id")
    _need(node.formula is not None, "params", "id needs its formula")
    f = node.formula
    assert f is not None
    return Sequent((f,), (f,)), {}


def rule_dist(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 0, "dist")
    _need(node.formula is not None, "params", "dist needs its formula")
    f = node.formula
    assert f is not None
    return Sequent((Unary("!", Unary("?", f)),), (Unary("?", Unary("!", f)),)), {}


def _cut_shape(prem: tuple[Sequent, ...], rule: str) -> tuple[Sequent, Sequent]:
    _arity(prem, 2, rule)
    s1, s2 = prem
    _need(len(s1.succ) >= 1, "premise-shape", f"{rule}: left premise succedent must be nonempty")
    _need(len(s2.ante) >= 1, "premise-shape", f"{rule}: right premise antecedent must be nonempty")
    return s1, s2


def _cut_close(s1: Sequent, s2: Sequent) -> tuple[Sequent, Flow]:
    ante = _ctx(0, "L", s1.ante) + _ctx(1, "L", s2.ante, 0, len(s2.ante) - 1)
    succ = _ctx(0, "R", s1.succ, 1) + _ctx(1, "R", s2.succ)
    return _close(ante, succ)


def rule_cut(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    s1, s2 = _cut_shape(prem, "cut")
    _need(s1.succ[0] == s2.ante[-1], "premise-shape", "cut: cut formulas do not match")
    return _cut_close(s1, s2)


def rule_cut_why(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    s1, s2 = _cut_shape(prem, "cut-why")
    _need(is_why(s1.succ[0]), "premise-shape", "cut-why: left cut formula must be a ?-formula")
    _need(
        s1.succ[0] == Unary("?", s2.ante[-1]),
        "premise-shape",
        "cut-why: cut formulas do not match",
    )
    _all_why(s1.succ[1:], "cut-why", "the left succedent context")
    _all_why(s2.succ, "cut-why", "the right succedent")
    return _cut_close(s1, s2)


def rule_cut_bang(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    s1, s2 = _cut_shape(prem, "cut-bang")
    _need(is_bang(s2.ante[-1]), "premise-shape", "cut-bang: right cut formula must be a !-formula")
    _need(
        s2.ante[-1] == Unary("!", s1.succ[0]),
        "premise-shape",
        "cut-bang: cut formulas do not match",
    )
    _all_bang(s1.ante, "cut-bang", "the left antecedent")
    _all_bang(s2.ante[:-1], "cut-bang", "the right antecedent context")
    return _cut_close(s1, s2)


# ---------------------------------------------------------------------------
# constants

def rule_tt_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 0, "tt-r")
    return Sequent((), (Const("tt"),)), {}


def rule_ff_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 0, "ff-l")
    return Sequent((Const("ff"),), ()), {}


def rule_top_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 0, "top-r")
    return Sequent((), (Const("top"),)), {}


def rule_bot_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 0, "bot-l")
    return Sequent((Const("bot"),), ()), {}


def rule_one_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 0, "one-r")
    _need(node.contexts is not None, "params", "one-r needs its two context lists")
    ante, succ = node.contexts  # type: ignore[misc]
    return Sequent(ante, (Const("1"),) + succ), {}


def rule_zero_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 0, "zero-l")
    _need(node.contexts is not None, "params", "zero-l needs its two context lists")
    ante, succ = node.contexts  # type: ignore[misc]
    return Sequent(ante + (Const("0"),), succ), {}


def rule_tt_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "tt-l")
    (s,) = prem
    return _close(_ctx(0, "L", s.ante) + _new(Const("tt")), _ctx(0, "R", s.succ))


def rule_tt_l_bang(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "tt-l-bang")
    (s,) = prem
    _all_bang(s.ante, "tt-l-bang", "the antecedent")
    return _close(_ctx(0, "L", s.ante) + _new(Const("tt")), _ctx(0, "R", s.succ))


def rule_ff_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "ff-r")
    (s,) = prem
    return _close(_ctx(0, "L", s.ante), _new(Const("ff")) + _ctx(0, "R", s.succ))


def make_ff_r_why(tail_why: bool) -> RuleFn:
    def rule_ff_r_why(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
        _arity(prem, 1, "ff-r-why")
        (s,) = prem
        if tail_why:
            _all_why(s.succ, "ff-r-why", "the succedent context")
        return _close(_ctx(0, "L", s.ante), _new(Const("ff")) + _ctx(0, "R", s.succ))

    return rule_ff_r_why


def rule_top_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "top-l")
    (s,) = prem
    return _close(_ctx(0, "L", s.ante) + _new(Const("top")), _ctx(0, "R", s.succ))


def rule_bot_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "bot-r")
    (s,) = prem
    return _close(_ctx(0, "L", s.ante), _new(Const("bot")) + _ctx(0, "R", s.succ))


# ---------------------------------------------------------------------------
# branch-selecting and shared-context logical rules

def _left_pick(node: Proof, prem: tuple[Sequent, ...], op: str, rule: str, ctx_bang: bool = False) -> tuple[Sequent, Flow]:
    _arity(prem, 1, rule)
    (s,) = prem
    _need(len(s.ante) >= 1, "premise-shape", f"{rule}: premise antecedent must be nonempty")
    _, intro, picked, _ = _get_branch(node, op)
    _need(
        s.ante[-1] == picked,
        "premise-shape",
        f"{rule}: last antecedent formula must be component {node.i} of :intro",
    )
    if ctx_bang:
        _all_bang(s.ante[:-1], rule, "the antecedent context")
    n = len(s.ante)
    ante = _ctx(0, "L", s.ante, 0, n - 1) + _new(intro, (0, "L", n - 1))
    return _close(ante, _ctx(0, "R", s.succ))


def _right_pick(node: Proof, prem: tuple[Sequent, ...], op: str, rule: str, tail_why: bool = False) -> tuple[Sequent, Flow]:
    _arity(prem, 1, rule)
    (s,) = prem
    _need(len(s.succ) >= 1, "premise-shape", f"{rule}: premise succedent must be nonempty")
    _, intro, picked, _ = _get_branch(node, op)
    _need(
        s.succ[0] == picked,
        "premise-shape",
        f"{rule}: first succedent formula must be component {node.i} of :intro",
    )
    if tail_why:
        _all_why(s.succ[1:], rule, "the succedent context")
    succ = _new(intro, (0, "R", 0)) + _ctx(0, "R", s.succ, 1)
    return _close(_ctx(0, "L", s.ante), succ)


def rule_and_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _left_pick(node, prem, "and", "and-l")


def rule_and_l_bang(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _left_pick(node, prem, "and", "and-l-bang", ctx_bang=True)


def rule_with_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _left_pick(node, prem, "with", "with-l")


def rule_or_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _right_pick(node, prem, "or", "or-r")


def make_or_r_why(tail_why: bool) -> RuleFn:
    def rule_or_r_why(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
        return _right_pick(node, prem, "or", "or-r-why", tail_why=tail_why)

    return rule_or_r_why


def rule_plus_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _right_pick(node, prem, "plus", "plus-r")


def _right_shared(node: Proof, prem: tuple[Sequent, ...], op: str, rule: str, tail_why: bool = False) -> tuple[Sequent, Flow]:
    _arity(prem, 2, rule)
    s1, s2 = prem
    _need(len(s1.succ) >= 1 and len(s2.succ) >= 1, "premise-shape", f"{rule}: premise succedents must be nonempty")
    if tail_why:
        _all_why(s1.succ[1:], rule, "the succedent context")
    ante = _merge(_ctx(0, "L", s1.ante), _ctx(1, "L", s2.ante), rule, "their antecedents")
    tail = _merge(_ctx(0, "R", s1.succ, 1), _ctx(1, "R", s2.succ, 1), rule, "their succedent contexts")
    principal = _new(Binary(op, s1.succ[0], s2.succ[0]), (0, "R", 0), (1, "R", 0))
    return _close(ante, principal + tail)


def _left_shared(node: Proof, prem: tuple[Sequent, ...], op: str, rule: str, ctx_bang: bool = False) -> tuple[Sequent, Flow]:
    _arity(prem, 2, rule)
    s1, s2 = prem
    _need(len(s1.ante) >= 1 and len(s2.ante) >= 1, "premise-shape", f"{rule}: premise antecedents must be nonempty")
    if ctx_bang:
        _all_bang(s1.ante[:-1], rule, "the antecedent context")
    n1, n2 = len(s1.ante), len(s2.ante)
    ctx = _merge(_ctx(0, "L", s1.ante, 0, n1 - 1), _ctx(1, "L", s2.ante, 0, n2 - 1), rule, "their antecedent contexts")
    succ = _merge(_ctx(0, "R", s1.succ), _ctx(1, "R", s2.succ), rule, "their succedents")
    principal = _new(Binary(op, s1.ante[-1], s2.ante[-1]), (0, "L", n1 - 1), (1, "L", n2 - 1))
    return _close(ctx + principal, succ)


def rule_and_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _right_shared(node, prem, "and", "and-r")


def rule_with_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _right_shared(node, prem, "with", "with-r")


def make_with_r_why(tail_why: bool) -> RuleFn:
    def rule_with_r_why(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
        return _right_shared(node, prem, "with", "with-r-why", tail_why=tail_why)

    return rule_with_r_why


def rule_or_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _left_shared(node, prem, "or", "or-l")


def rule_plus_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _left_shared(node, prem, "plus", "plus-l")


def rule_plus_l_bang(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _left_shared(node, prem, "plus", "plus-l-bang", ctx_bang=True)


# ---------------------------------------------------------------------------
# multiplicative logical rules

def rule_tensor_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "tensor-l")
    (s,) = prem
    _need(len(s.ante) >= 2, "premise-shape", "tensor-l: premise antecedent needs two formulas")
    n = len(s.ante)
    principal = _new(Binary("tensor", s.ante[-2], s.ante[-1]), (0, "L", n - 2), (0, "L", n - 1))
    return _close(_ctx(0, "L", s.ante, 0, n - 2) + principal, _ctx(0, "R", s.succ))


def rule_tensor_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 2, "tensor-r")
    s1, s2 = prem
    _need(len(s1.succ) >= 1 and len(s2.succ) >= 1, "premise-shape", "tensor-r: premise succedents must be nonempty")
    principal = _new(Binary("tensor", s1.succ[0], s2.succ[0]), (0, "R", 0), (1, "R", 0))
    ante = _ctx(0, "L", s1.ante) + _ctx(1, "L", s2.ante)
    succ = principal + _ctx(0, "R", s1.succ, 1) + _ctx(1, "R", s2.succ, 1)
    return _close(ante, succ)


def rule_par_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 2, "par-l")
    s1, s2 = prem
    _need(len(s1.ante) >= 1 and len(s2.ante) >= 1, "premise-shape", "par-l: premise antecedents must be nonempty")
    n1, n2 = len(s1.ante), len(s2.ante)
    principal = _new(Binary("par", s1.ante[-1], s2.ante[-1]), (0, "L", n1 - 1), (1, "L", n2 - 1))
    ante = _ctx(0, "L", s1.ante, 0, n1 - 1) + _ctx(1, "L", s2.ante, 0, n2 - 1) + principal
    succ = _ctx(0, "R", s1.succ) + _ctx(1, "R", s2.succ)
    return _close(ante, succ)


def rule_par_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "par-r")
    (s,) = prem
    _need(len(s.succ) >= 2, "premise-shape", "par-r: premise succedent needs two formulas")
    principal = _new(Binary("par", s.succ[0], s.succ[1]), (0, "R", 0), (0, "R", 1))
    return _close(_ctx(0, "L", s.ante), principal + _ctx(0, "R", s.succ, 2))


# ---------------------------------------------------------------------------
# negations and duals

def rule_neg_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "neg-l")
    (s,) = prem
    _need(len(s.succ) >= 1, "premise-shape", "neg-l: premise succedent must be nonempty")
    principal = _new(Unary("neg", s.succ[0]), (0, "R", 0))
    return _close(_ctx(0, "L", s.ante) + principal, _ctx(0, "R", s.succ, 1))


def rule_neg_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "neg-r")
    (s,) = prem
    _need(len(s.ante) >= 1, "premise-shape", "neg-r: premise antecedent must be nonempty")
    n = len(s.ante)
    principal = _new(Unary("neg", s.ante[-1]), (0, "L", n - 1))
    return _close(_ctx(0, "L", s.ante, 0, n - 1), principal + _ctx(0, "R", s.succ))


def rule_l_dual_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "l-dual-l")
    (s,) = prem
    _need(len(s.succ) >= 1, "premise-shape", "l-dual-l: premise succedent must be nonempty")
    principal = _new(linear_dual(s.succ[0]), (0, "R", 0))
    return _close(_ctx(0, "L", s.ante) + principal, _ctx(0, "R", s.succ, 1))


def rule_l_dual_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "l-dual-r")
    (s,) = prem
    _need(len(s.ante) >= 1, "premise-shape", "l-dual-r: premise antecedent must be nonempty")
    n = len(s.ante)
    principal = _new(linear_dual(s.ante[-1]), (0, "L", n - 1))
    return _close(_ctx(0, "L", s.ante, 0, n - 1), principal + _ctx(0, "R", s.succ))


# ---------------------------------------------------------------------------
# implications

def rule_c_imp_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    # premises share both contexts: D |- A, G and D, B |- G
    _arity(prem, 2, "c-imp-l")
    s1, s2 = prem
    _need(len(s1.succ) >= 1, "premise-shape", "c-imp-l: left premise succedent must be nonempty")
    _need(len(s2.ante) >= 1, "premise-shape", "c-imp-l: right premise antecedent must be nonempty")
    n2 = len(s2.ante)
    ctx = _merge(_ctx(0, "L", s1.ante), _ctx(1, "L", s2.ante, 0, n2 - 1), "c-imp-l", "their antecedent contexts")
    succ = _merge(_ctx(0, "R", s1.succ, 1), _ctx(1, "R", s2.succ), "c-imp-l", "their succedent contexts")
    principal = _new(Binary("==>", s1.succ[0], s2.ante[-1]), (0, "R", 0), (1, "L", n2 - 1))
    return _close(ctx + principal, succ)


def rule_c_imp_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "c-imp-r")
    (s,) = prem
    _need(len(s.ante) >= 1, "premise-shape", "c-imp-r: premise antecedent must be nonempty")
    _need(len(s.succ) >= 1, "premise-shape", "c-imp-r: premise succedent must be nonempty")
    n = len(s.ante)
    principal = _new(Binary("==>", s.ante[-1], s.succ[0]), (0, "L", n - 1), (0, "R", 0))
    return _close(_ctx(0, "L", s.ante, 0, n - 1), principal + _ctx(0, "R", s.succ, 1))


def rule_u_imp_l(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    # D |- A and G, B |- C give D, G, A -o B |- C
    _arity(prem, 2, "u-imp-l")
    s1, s2 = prem
    _need(len(s1.succ) == 1, "premise-shape", "u-imp-l: left premise succedent must be a single formula")
    _need(len(s2.ante) >= 1, "premise-shape", "u-imp-l: right premise antecedent must be nonempty")
    n2 = len(s2.ante)
    principal = _new(Binary("-o", s1.succ[0], s2.ante[-1]), (0, "R", 0), (1, "L", n2 - 1))
    ante = _ctx(0, "L", s1.ante) + _ctx(1, "L", s2.ante, 0, n2 - 1) + principal
    return _close(ante, _ctx(1, "R", s2.succ))


def rule_u_imp_r(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "u-imp-r")
    (s,) = prem
    _need(len(s.ante) >= 1, "premise-shape", "u-imp-r: premise antecedent must be nonempty")
    _need(len(s.succ) == 1, "premise-shape", "u-imp-r: premise succedent must be a single formula")
    n = len(s.ante)
    principal = _new(Binary("-o", s.ante[-1], s.succ[0]), (0, "L", n - 1), (0, "R", 0))
    return _close(_ctx(0, "L", s.ante, 0, n - 1), principal)


def make_i_imp_l_why(tail_why: bool) -> RuleFn:
    def rule_i_imp_l_why(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
        # D, B |- G and T |- A, ?X give D, T, A => B |- G, ?X
        _arity(prem, 2, "i-imp-l-why")
        s1, s2 = prem
        _need(len(s1.ante) >= 1, "premise-shape", "i-imp-l-why: left premise antecedent must be nonempty")
        _need(len(s2.succ) >= 1, "premise-shape", "i-imp-l-why: right premise succedent must be nonempty")
        if tail_why:
            _all_why(s2.succ[1:], "i-imp-l-why", "the right succedent context")
        n1 = len(s1.ante)
        principal = _new(Binary("=>", s2.succ[0], s1.ante[-1]), (1, "R", 0), (0, "L", n1 - 1))
        ante = _ctx(0, "L", s1.ante, 0, n1 - 1) + _ctx(1, "L", s2.ante) + principal
        succ = _ctx(0, "R", s1.succ) + _ctx(1, "R", s2.succ, 1)
        return _close(ante, succ)

    return rule_i_imp_l_why


def make_i_imp_r_why(tail_why: bool) -> RuleFn:
    def rule_i_imp_r_why(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
        _arity(prem, 1, "i-imp-r-why")
        (s,) = prem
        _need(len(s.ante) >= 1, "premise-shape", "i-imp-r-why: premise antecedent must be nonempty")
        _need(len(s.succ) >= 1, "premise-shape", "i-imp-r-why: premise succedent must be nonempty")
        if tail_why:
            _all_why(s.succ[1:], "i-imp-r-why", "the succedent context")
        n = len(s.ante)
        principal = _new(Binary("=>", s.ante[-1], s.succ[0]), (0, "L", n - 1), (0, "R", 0))
        return _close(_ctx(0, "L", s.ante, 0, n - 1), principal + _ctx(0, "R", s.succ, 1))

    return rule_i_imp_r_why


def rule_cl_imp_l_bang(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    # !D, B |- G and T |- A, X give !D, T, !(A ->> B) |- G, X
    _arity(prem, 2, "cl-imp-l-bang")
    s1, s2 = prem
    _need(len(s1.ante) >= 1, "premise-shape", "cl-imp-l-bang: left premise antecedent must be nonempty")
    _need(len(s2.succ) >= 1, "premise-shape", "cl-imp-l-bang: right premise succedent must be nonempty")
    _all_bang(s1.ante[:-1], "cl-imp-l-bang", "the left antecedent context")
    n1 = len(s1.ante)
    principal = _new(
        Unary("!", Binary("->>", s2.succ[0], s1.ante[-1])), (1, "R", 0), (0, "L", n1 - 1)
    )
    ante = _ctx(0, "L", s1.ante, 0, n1 - 1) + _ctx(1, "L", s2.ante) + principal
    succ = _ctx(0, "R", s1.succ) + _ctx(1, "R", s2.succ, 1)
    return _close(ante, succ)


def rule_cl_imp_r_bang(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 1, "cl-imp-r-bang")
    (s,) = prem
    _need(len(s.ante) >= 1, "premise-shape", "cl-imp-r-bang: premise antecedent must be nonempty")
    _need(len(s.succ) >= 1, "premise-shape", "cl-imp-r-bang: premise succedent must be nonempty")
    _all_bang(s.ante[:-1], "cl-imp-r-bang", "the antecedent context")
    n = len(s.ante)
    principal = _new(Binary("->>", s.ante[-1], s.succ[0]), (0, "L", n - 1), (0, "R", 0))
    return _close(_ctx(0, "L", s.ante, 0, n - 1), principal + _ctx(0, "R", s.succ, 1))


# ---------------------------------------------------------------------------
# generalized cuts (internal to cut elimination; no calculus admits them)

def _get_n(node: Proof) -> int:
    _need(node.n is not None and node.n >= 0, "params", f"{node.rule} needs :n >= 0")
    assert node.n is not None
    return node.n


def _multicut_left(node: Proof, prem: tuple[Sequent, ...], rule: str, left_cut: Formula | None = None) -> tuple[Sequent, Flow]:
    # s1 |- A, G and s2 with A copied n times at the antecedent end;
    # the conclusion replicates s1's contexts first
    _arity(prem, 2, rule)
    s1, s2 = prem
    n = _get_n(node)
    _need(len(s1.succ) >= 1, "premise-shape", f"{rule}: left premise succedent must be nonempty")
    cut_right = left_cut if left_cut is not None else s1.succ[0]
    _need(len(s2.ante) >= n, "premise-shape", f"{rule}: right premise lacks {n} cut copies")
    for j in range(len(s2.ante) - n, len(s2.ante)):
        _need(s2.ante[j] == cut_right, "premise-shape", f"{rule}: cut copies do not match")
    ante: Piece = []
    succ: Piece = []
    for _copy in range(n):
        ante += _ctx(0, "L", s1.ante)
        succ += _ctx(0, "R", s1.succ, 1)
    ante += _ctx(1, "L", s2.ante, 0, len(s2.ante) - n)
    succ += _ctx(1, "R", s2.succ)
    return _close(ante, succ)


def _multicut_right(node: Proof, prem: tuple[Sequent, ...], rule: str, left_cut: Formula | None = None) -> tuple[Sequent, Flow]:
    # s1 with the cut formula copied n times at the succedent head and
    # s2 = D, A |- G; the conclusion replicates s2's contexts second
    _arity(prem, 2, rule)
    s1, s2 = prem
    n = _get_n(node)
    _need(len(s2.ante) >= 1, "premise-shape", f"{rule}: right premise antecedent must be nonempty")
    cut_left = left_cut if left_cut is not None else s2.ante[-1]
    _need(len(s1.succ) >= n, "premise-shape", f"{rule}: left premise lacks {n} cut copies")
    for j in range(n):
        _need(s1.succ[j] == cut_left, "premise-shape", f"{rule}: cut copies do not match")
    ante: Piece = []
    succ: Piece = []
    ante += _ctx(0, "L", s1.ante)
    succ += _ctx(0, "R", s1.succ, n)
    for _copy in range(n):
        ante += _ctx(1, "L", s2.ante, 0, len(s2.ante) - 1)
        succ += _ctx(1, "R", s2.succ)
    return _close(ante, succ)


def rule_cut_l_n(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _multicut_left(node, prem, "cut-l-n")


def rule_cut_r_n(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    return _multicut_right(node, prem, "cut-r-n")


def rule_cut_wb(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    # ?B on the left premise against !B on the right premise
    s1, s2 = _cut_shape(prem, "cut-wb")
    _need(is_why(s1.succ[0]), "premise-shape", "cut-wb: left cut formula must be a ?-formula")
    _need(
        s2.ante[-1] == Unary("!", s1.succ[0].sub),  # type: ignore[union-attr]
        "premise-shape",
        "cut-wb: cut formulas do not match",
    )
    return _cut_close(s1, s2)


def rule_cut_l_n_wb(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 2, "cut-l-n-wb")
    s1, _ = prem
    _need(len(s1.succ) >= 1, "premise-shape", "cut-l-n-wb: left premise succedent must be nonempty")
    _need(is_why(s1.succ[0]), "premise-shape", "cut-l-n-wb: left cut formula must be a ?-formula")
    banged = Unary("!", s1.succ[0].sub)  # type: ignore[union-attr]
    return _multicut_left(node, prem, "cut-l-n-wb", left_cut=banged)


def rule_cut_r_n_wb(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    _arity(prem, 2, "cut-r-n-wb")
    _, s2 = prem
    _need(len(s2.ante) >= 1, "premise-shape", "cut-r-n-wb: right premise antecedent must be nonempty")
    _need(is_bang(s2.ante[-1]), "premise-shape", "cut-r-n-wb: right cut formula must be a !-formula")
    whyed = Unary("?", s2.ante[-1].sub)  # type: ignore[union-attr]
    return _multicut_right(node, prem, "cut-r-n-wb", left_cut=whyed)


def rule_cut_l_n_why(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    # ?B on the left premise against bare copies of B on the right
    _arity(prem, 2, "cut-l-n-why")
    s1, s2 = prem
    _need(len(s1.succ) >= 1, "premise-shape", "cut-l-n-why: left premise succedent must be nonempty")
    _need(is_why(s1.succ[0]), "premise-shape", "cut-l-n-why: left cut formula must be a ?-formula")
    _all_why(s1.succ[1:], "cut-l-n-why", "the left succedent context")
    _all_why(s2.succ, "cut-l-n-why", "the right succedent")
    bare = s1.succ[0].sub  # type: ignore[union-attr]
    return _multicut_left(node, prem, "cut-l-n-why", left_cut=bare)


def rule_cut_r_n_why(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    # copies of ?B at the left succedent head against one bare B on the right
    _arity(prem, 2, "cut-r-n-why")
    s1, s2 = prem
    _need(len(s2.ante) >= 1, "premise-shape", "cut-r-n-why: right premise antecedent must be nonempty")
    n = node.n or 0
    _all_why(s1.succ[n:], "cut-r-n-why", "the left succedent context")
    _all_why(s2.succ, "cut-r-n-why", "the right succedent")
    whyed = Unary("?", s2.ante[-1])
    return _multicut_right(node, prem, "cut-r-n-why", left_cut=whyed)


def rule_cut_l_n_bang(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    # bare B on the left premise against copies of !B on the right
    _arity(prem, 2, "cut-l-n-bang")
    s1, s2 = prem
    _need(len(s1.succ) >= 1, "premise-shape", "cut-l-n-bang: left premise succedent must be nonempty")
    n = node.n or 0
    _all_bang(s1.ante, "cut-l-n-bang", "the left antecedent")
    _all_bang(s2.ante[: len(s2.ante) - n], "cut-l-n-bang", "the right antecedent context")
    banged = Unary("!", s1.succ[0])
    return _multicut_left(node, prem, "cut-l-n-bang", left_cut=banged)


def rule_cut_r_n_bang(node: Proof, prem: tuple[Sequent, ...]) -> tuple[Sequent, Flow]:
    # copies of bare B at the left succedent head against one !B on the right
    _arity(prem, 2, "cut-r-n-bang")
    s1, s2 = prem
    _need(len(s2.ante) >= 1, "premise-shape", "cut-r-n-bang: right premise antecedent must be nonempty")
    _need(is_bang(s2.ante[-1]), "premise-shape", "cut-r-n-bang: right cut formula must be a !-formula")
    _all_bang(s1.ante, "cut-r-n-bang", "the left antecedent")
    _all_bang(s2.ante[:-1], "cut-r-n-bang", "the right antecedent context")
    bare = s2.ante[-1].sub  # type: ignore[union-attr]
    return _multicut_right(node, prem, "cut-r-n-bang", left_cut=bare)


MULTICUT_FNS: dict[str, RuleFn] = {
    "cut-l-n": rule_cut_l_n,
    "cut-r-n": rule_cut_r_n,
    "cut-wb": rule_cut_wb,
    "cut-l-n-wb": rule_cut_l_n_wb,
    "cut-r-n-wb": rule_cut_r_n_wb,
    "cut-l-n-why": rule_cut_l_n_why,
    "cut-r-n-why": rule_cut_r_n_why,
    "cut-l-n-bang": rule_cut_l_n_bang,
    "cut-r-n-bang": rule_cut_r_n_bang,
}
