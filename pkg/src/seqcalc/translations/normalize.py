"""Permutation normal forms for translated proofs.

The two composite routes into the full linear calculus (through the
intuitionistic linearized calculus and through the classical one)
reach the same end sequent but not the same tree: exchange chains
arrive in different orders, the routes put the dereliction/promotion
bookkeeping around axioms and cuts on opposite sides, and the
classical implication left rule is simulated by two genuinely
different cut blocks. permutation_normalize rewrites a proof to a
canonical representative of its permutation class so that
commute_check can compare the two route images by plain equality.

Rewriting layers, applied bottom-up to a fixpoint:

  * maximal runs of exchange rules collapse to the selection-sort
    chain of their net permutation (xl innermost, xr outermost;
    identity permutations vanish),
  * a dereliction under a matching promotion over an axiom contracts
    to the axiom of the marked formula,
  * a cut whose premises mark the cut formula bang-first re-marks it
    why-first, the marking the intuitionistic route produces,
  * cutting against an axiom drops the cut for an exchange chain,
  * of two adjacent mark rules working on opposite sequent sides, the
    right-hand one bubbles outward when both orders are legal,
  * the implication block produced by the classical linear route is
    re-rendered as the block the intuitionistic route produces, with
    the premise images carried across.

The block rewrite runs first, on raw translator output, so its
recognizer can match the builders in edges verbatim. Every rewrite
preserves the end sequent; permutation_normalize re-checks the result
and refuses to return a broken proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from seqcalc.calculi import rules as R
from seqcalc.calculi.check import CALCULI, check_proof, end_sequent
from seqcalc.calculi.permute import move_in_left, move_in_right, permute_left, permute_right
from seqcalc.calculi.proof import Proof, proof_size
from seqcalc.calculi.sequent import Sequent
from seqcalc.syntax import Binary, Const, Formula, Unary, Var, print_formula
from seqcalc.translations.edges import (
    _translate_tree,
    cimpl_clc_block,
    cimpl_inc_block,
    translate_proof,
)

_MAX_PASSES = 80

_LEFT_MARKS = frozenset({"bang-d", "bang-w", "why-l-bang", "bang-why-l"})
_RIGHT_MARKS = frozenset({"why-d", "why-w", "bang-r-why", "why-bang-r"})


class NormalizeError(Exception):
    """Normalization broke an invariant or ran out of fuel."""


# ---------------------------------------------------------------------------
# sequent annotation


class _Annot:
    """Lazy end-sequent cache over immutable proof nodes.

    Rule functions run leniently: subjects are already checked proofs
    and rewrite candidates are validated separately in strict mode.
    """

    def __init__(self, calculus: str) -> None:
        self._table = CALCULI[calculus].rules
        self._memo: dict[int, tuple[Proof, Sequent]] = {}

    def seq(self, p: Proof) -> Sequent:
        memo = self._memo
        stack = [p]
        while stack:
            node = stack[-1]
            if id(node) in memo:
                stack.pop()
                continue
            todo = [q for q in node.premises if id(q) not in memo]
            if todo:
                stack.extend(todo)
                continue
            prem = tuple(memo[id(q)][1] for q in node.premises)
            with R.lenient():
                got, _ = self._table[node.rule](node, prem)
            memo[id(node)] = (node, got)
            stack.pop()
        return memo[id(p)][1]


def _seq_holes(p: Proof, calculus: str) -> Sequent:
    """end_sequent variant that reads hole leaves off their contexts."""
    table = CALCULI[calculus].rules

    def walk(node: Proof) -> Sequent:
        if node.rule == "hole":
            ante, succ = node.contexts
            return Sequent(ante, succ)
        prem = tuple(walk(q) for q in node.premises)
        with R.lenient():
            seq, _ = table[node.rule](node, prem)
        return seq

    return walk(p)


# ---------------------------------------------------------------------------
# local rewrites


def _id_eta(node: Proof) -> Proof | None:
    if node.rule == "bang-r-why":
        q = node.premises[0]
        if q.rule == "bang-d" and q.premises[0].rule == "id":
            return Proof("id", formula=Unary("!", q.premises[0].formula))
    if node.rule == "why-l-bang":
        q = node.premises[0]
        if q.rule == "why-d" and q.premises[0].rule == "id":
            return Proof("id", formula=Unary("?", q.premises[0].formula))
    return None


def _id_cut(node: Proof, ann: _Annot) -> Proof | None:
    if node.rule != "cut":
        return None
    left, right = node.premises
    if left.rule == "id":
        return move_in_left(right, len(ann.seq(right).ante) - 1, 0)
    if right.rule == "id":
        return move_in_right(left, 0, len(ann.seq(left).succ) - 1)
    return None


def _remark_cut(node: Proof, ann: _Annot, table) -> Proof | None:
    if node.rule != "cut" or "why-bang-r" not in table:
        return None
    left, right = node.premises
    if left.rule != "bang-r-why" or right.rule != "bang-why-l":
        return None
    x, w = left.premises[0], right.premises[0]
    new_left = Proof("why-bang-r", premises=(x,))
    new_right = Proof("why-l-bang", premises=(w,))
    out = Proof("cut", premises=(new_left, new_right))
    try:
        sl, _ = table["why-bang-r"](new_left, (ann.seq(x),))
        sr, _ = table["why-l-bang"](new_right, (ann.seq(w),))
        sc, _ = table["cut"](out, (sl, sr))
    except R.RuleError:
        return None
    if sc != ann.seq(node):
        return None
    return out


def _bubble(node: Proof, ann: _Annot, table) -> Proof | None:
    if node.rule not in _LEFT_MARKS or not node.premises:
        return None
    child = node.premises[0]
    if child.rule not in _RIGHT_MARKS or not child.premises:
        return None
    x = child.premises[0]
    lower = Proof(node.rule, premises=(x,), intro=node.intro)
    upper = Proof(child.rule, premises=(lower,), intro=child.intro)
    try:
        s1, _ = table[node.rule](lower, (ann.seq(x),))
        s2, _ = table[child.rule](upper, (s1,))
    except R.RuleError:
        return None
    if s2 != ann.seq(node):
        return None
    return upper


def _canon_run(node: Proof) -> Proof | None:
    if node.rule not in ("xl", "xr"):
        return None
    chain: list[Proof] = []
    core = node
    while core.rule in ("xl", "xr"):
        chain.append(core)
        core = core.premises[0]
    ml = 2 + max((c.at for c in chain if c.rule == "xl"), default=-2)
    mr = 2 + max((c.at for c in chain if c.rule == "xr"), default=-2)
    pl = list(range(ml))
    pr = list(range(mr))
    for c in reversed(chain):  # innermost applies first
        side = pl if c.rule == "xl" else pr
        a = c.at
        side[a], side[a + 1] = side[a + 1], side[a]
    while pl and pl[-1] == len(pl) - 1:
        pl.pop()
    while pr and pr[-1] == len(pr) - 1:
        pr.pop()
    rebuilt = permute_right(permute_left(core, pl), pr)
    return None if rebuilt == node else rebuilt


def _rewrite_pass(p: Proof, ann: _Annot, table, budget: list[int]) -> Proof:
    def walk(node: Proof) -> Proof:
        prem = tuple(walk(q) for q in node.premises)
        if prem != node.premises:
            node = node.with_premises(*prem)
        while True:
            out = (
                _id_eta(node)
                or _id_cut(node, ann)
                or _remark_cut(node, ann, table)
                or _bubble(node, ann, table)
                or _canon_run(node)
            )
            if out is None:
                return node
            budget[0] -= 1
            if budget[0] < 0:
                raise NormalizeError("rewrite fuel exhausted; this is a bug")
            node = out

    return walk(p)


# ---------------------------------------------------------------------------
# implication block exchange
#
# The classical linear route simulates the classical implication left
# rule with a cut block whose cut formula is !?((neg !u) par ?!v); the
# intuitionistic route marks it !?((neg !?u) par ?v). No sequence of
# mark moves turns one formula into the other, so this layer replaces
# the whole block: it re-renders both route images from the shared
# builders with hole leaves at the premise positions, matches the
# classical-route rendering against the subject verbatim, and emits
# the intuitionistic-route rendering around the captured premises.


def _v_signature(f: Formula) -> tuple[Formula, Formula] | None:
    match f:
        case Unary("!", Unary("?", Binary("par", Unary("neg", Unary("!", u)), Unary("?", Unary("!", v))))):
            return u, v
    return None


def _unmap_clc(f: Formula) -> Formula:
    """Invert the classical-linear-route formula map on its image."""
    match f:
        case Var(_):
            return f
        case Unary("?", Const("top")):
            return Const("tt")
        case Const("bot"):
            return f
        case Binary("with", Unary("?", a), Unary("?", b)):
            return Binary("and", _unmap_clc(a), _unmap_clc(b))
        case Binary("plus", a, b):
            return Binary("plus", _unmap_clc(a), _unmap_clc(b))
        case Binary("par", Unary("neg", a), Unary("?", b)):
            return Binary("->>", _unmap_clc(a), _unmap_clc(b))
        case Unary("!", a):
            return Unary("!", _unmap_clc(a))
    raise NormalizeError(f"{print_formula(f)} is not an image of the classical linear route")


def _unmap_inc(f: Formula) -> Formula:
    """Invert the intuitionistic-route formula map on its image."""
    match f:
        case Var(_):
            return f
        case Const("top"):
            return f
        case Unary("!", Const("bot")):
            return Const("ff")
        case Binary("with", a, b):
            return Binary("with", _unmap_inc(a), _unmap_inc(b))
        case Binary("plus", Unary("!", a), Unary("!", b)):
            return Binary("or", _unmap_inc(a), _unmap_inc(b))
        case Binary("par", Unary("neg", Unary("!", a)), b):
            return Binary("=>", _unmap_inc(a), _unmap_inc(b))
        case Unary("?", a):
            return Unary("?", _unmap_inc(a))
    raise NormalizeError(f"{print_formula(f)} is not an image of the intuitionistic route")


@lru_cache(maxsize=512)
def _render_block(u: Formula, v: Formula, d: int, g: int, route: str) -> Proof:
    """Render one route's implication block with holes for the premises.

    u and v are the translated implication components as they appear in
    the block's cut formula; d and g are the context widths around the
    principal formula in the block conclusion.
    """
    if route == "v":
        a, b = _unmap_clc(u), _unmap_clc(v)
        ctx = tuple(Unary("!", Var(f"_c{i}")) for i in range(d))
        tail = tuple(Var(f"_s{j}") for j in range(g))
        h1 = Proof("hole", n=1, contexts=(ctx, (a,) + tail))
        h2 = Proof("hole", n=2, contexts=(ctx + (Unary("!", b),), tail))
        core = cimpl_clc_block(a, b, d, g, h1, h2)
        return _translate_tree(core, "clc-ilc", "clc", seq_fn=_seq_holes)
    a, b = _unmap_inc(u), _unmap_inc(v)
    ctx = tuple(Var(f"_c{i}") for i in range(d))
    tail = tuple(Unary("?", Var(f"_s{j}")) for j in range(g))
    h1 = Proof("hole", n=1, contexts=(ctx, (Unary("?", a),) + tail))
    h2 = Proof("hole", n=2, contexts=(ctx + (b,), tail))
    core = cimpl_inc_block(a, Unary("?", b), d, g, h1, h2)
    return _translate_tree(core, "inc-ilc", "inc", seq_fn=_seq_holes)


def _match(tmpl: Proof, subj: Proof, binds: dict[int, Proof]) -> bool:
    if tmpl.rule == "hole":
        if tmpl.n in binds:
            return binds[tmpl.n] == subj
        binds[tmpl.n] = subj
        return True
    if (tmpl.rule, tmpl.i, tmpl.at, tmpl.n, tmpl.intro, tmpl.formula, tmpl.contexts) != (
        subj.rule, subj.i, subj.at, subj.n, subj.intro, subj.formula, subj.contexts,
    ):
        return False
    if len(tmpl.premises) != len(subj.premises):
        return False
    return all(_match(t, s, binds) for t, s in zip(tmpl.premises, subj.premises))


def _subst(tmpl: Proof, binds: dict[int, Proof]) -> Proof:
    if tmpl.rule == "hole":
        return binds[tmpl.n]
    if not tmpl.premises:
        return tmpl
    return tmpl.with_premises(*(_subst(q, binds) for q in tmpl.premises))


def _swap_block(node: Proof, ann: _Annot) -> Proof | None:
    if node.rule != "cut":
        return None
    left, right = node.premises
    if left.rule != "bang-r-why" or right.rule != "bang-why-l":
        return None
    sig = _v_signature(ann.seq(left).succ[0])
    if sig is None:
        return None
    u, v = sig
    concl = ann.seq(node)
    d, g = len(concl.ante) - 1, len(concl.succ)
    try:
        tmpl = _render_block(u, v, d, g, "v")
    except NormalizeError:
        return None
    binds: dict[int, Proof] = {}
    if not _match(tmpl, node, binds) or set(binds) != {1, 2}:
        return None
    h1, h2 = binds[1], binds[2]
    if ann.seq(h1) != Sequent(concl.ante[1:], (Unary("?", u),) + concl.succ):
        return None
    if ann.seq(h2) != Sequent(concl.ante[1:] + (Unary("!", v),), concl.succ):
        return None
    return _subst(_render_block(u, v, d, g, "n"), binds)


def _phase_block(p: Proof, ann: _Annot) -> Proof:
    def walk(node: Proof) -> Proof:
        prem = tuple(walk(q) for q in node.premises)
        if prem != node.premises:
            node = node.with_premises(*prem)
        return _swap_block(node, ann) or node

    return walk(p)


# ---------------------------------------------------------------------------
# driver


def permutation_normalize(p: Proof, calculus: str = "ilc-iota") -> Proof:
    """Rewrite p to the canonical representative of its permutation class.

    The result checks in the same calculus and has the same end
    sequent; NormalizeError means an internal invariant failed.
    """
    before = end_sequent(p, calculus)
    out = p
    if calculus == "ilc-iota":
        out = _phase_block(out, _Annot(calculus))
    table = CALCULI[calculus].rules
    budget = [200 * proof_size(out) + 2000]
    for _ in range(_MAX_PASSES):
        ann = _Annot(calculus)
        nxt = _rewrite_pass(out, ann, table, budget)
        if nxt == out:
            break
        out = nxt
    else:
        raise NormalizeError("no fixpoint within the pass limit; this is a bug")
    report = check_proof(out, calculus)
    if not report.ok or report.end_sequent != before:
        raise NormalizeError("normalization broke the proof; this is a bug")
    return out


@dataclass(frozen=True)
class CommuteReport:
    """Outcome of comparing the two composite route images."""

    ok: bool
    path: tuple[int, ...] | None
    left: Proof
    right: Proof


def _first_diff(a: Proof, b: Proof) -> tuple[int, ...]:
    if (a.rule, a.i, a.at, a.n, a.intro, a.formula, a.contexts) != (
        b.rule, b.i, b.at, b.n, b.intro, b.formula, b.contexts,
    ) or len(a.premises) != len(b.premises):
        return ()
    for k, (x, y) in enumerate(zip(a.premises, b.premises)):
        if x != y:
            return (k,) + _first_diff(x, y)
    return ()


def commute_check(p: Proof) -> CommuteReport:
    """Translate p along both composite routes and compare normal forms.

    p must check in the classical sequent calculus. ok means the two
    normalized images are identical trees; otherwise path points at
    the first node where they differ.
    """
    left = permutation_normalize(translate_proof(p, "lk-ilc-n", checked=True))
    right = permutation_normalize(translate_proof(p, "lk-ilc-v"))
    if left == right:
        return CommuteReport(True, None, left, right)
    return CommuteReport(False, _first_diff(left, right), left, right)
