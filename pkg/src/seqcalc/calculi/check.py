"""Calculus tables and the bottom-up proof checker.

A calculus is a rule table plus a formula language, optionally the
intuitionistic restriction (every sequent's right side holds at most one
formula) and the tractability predicate that defines the rho calculi.
Checking recomputes every sequent from the leaves down and reports the
first violation in leaves-first (post-order) traversal.
"""

from __future__ import annotations

from dataclasses import dataclass

from seqcalc.calculi import rules as R
from seqcalc.calculi.proof import MULTICUT_RULES, Proof
from seqcalc.calculi.sequent import Sequent, print_sequent
from seqcalc.syntax import in_language


@dataclass(frozen=True)
class Violation:
    path: tuple[int, ...]
    rule: str
    kind: str
    message: str
    schema: str | None = None


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    end_sequent: Sequent | None
    violation: Violation | None = None


class ProofStructureError(Exception):
    """Raised by end_sequent when the tree cannot be evaluated."""

    def __init__(self, path: tuple[int, ...], kind: str, message: str) -> None:
        super().__init__(f"{message} (at path {'.'.join(map(str, path)) or 'root'})")
        self.path = path
        self.kind = kind
        self.message = message


@dataclass(frozen=True)
class CalculusDef:
    name: str
    logic: str
    rules: dict[str, R.RuleFn]
    intuitionistic: bool = False
    tractable: bool = False


def _table(**entries: R.RuleFn) -> dict[str, R.RuleFn]:
    return {name.replace("_", "-"): fn for name, fn in entries.items()}


_LK_RULES = _table(
    xl=R.rule_xl, xr=R.rule_xr, wl=R.rule_wl, wr=R.rule_wr, cl=R.rule_cl, cr=R.rule_cr,
    id=R.rule_id, cut=R.rule_cut,
    tt_l=R.rule_tt_l, tt_r=R.rule_tt_r, ff_l=R.rule_ff_l, ff_r=R.rule_ff_r,
    and_l=R.rule_and_l, and_r=R.rule_and_r, or_l=R.rule_or_l, or_r=R.rule_or_r,
    c_imp_l=R.rule_c_imp_l, c_imp_r=R.rule_c_imp_r,
)

_LJ_RULES = _table(
    xl=R.rule_xl, xr=R.rule_xr, wl=R.rule_wl, cl=R.rule_cl,
    id=R.rule_id, cut=R.rule_cut,
    top_l=R.rule_top_l, top_r=R.rule_top_r, ff_l=R.rule_ff_l,
    ff_r_why=R.make_ff_r_why(False),
    with_l=R.rule_with_l, with_r_why=R.make_with_r_why(False),
    or_l=R.rule_or_l, or_r_why=R.make_or_r_why(False),
    i_imp_l_why=R.make_i_imp_l_why(False), i_imp_r_why=R.make_i_imp_r_why(False),
)

_LLK_RULES = _table(
    xl=R.rule_xl, xr=R.rule_xr,
    bang_w=R.rule_bang_w, why_w=R.make_why_w(False),
    bang_c=R.rule_bang_c, why_c=R.make_why_c(False),
    bang_d=R.make_bang_d(False), why_d=R.make_why_d(False),
    why_l_bang=R.rule_why_l_bang, bang_r_why=R.rule_bang_r_why,
    id=R.rule_id, cut=R.rule_cut,
    one_r=R.rule_one_r, zero_l=R.rule_zero_l,
    top_l=R.rule_top_l, top_r=R.rule_top_r, bot_l=R.rule_bot_l, bot_r=R.rule_bot_r,
    tensor_l=R.rule_tensor_l, tensor_r=R.rule_tensor_r,
    par_l=R.rule_par_l, par_r=R.rule_par_r,
    with_l=R.rule_with_l, with_r=R.rule_with_r,
    plus_l=R.rule_plus_l, plus_r=R.rule_plus_r,
    l_dual_l=R.rule_l_dual_l, l_dual_r=R.rule_l_dual_r,
)

_LLJ_RULES = _table(
    xl=R.rule_xl, xr=R.rule_xr,
    bang_w=R.rule_bang_w, bang_c=R.rule_bang_c, bang_d=R.make_bang_d(False),
    bang_r_why=R.rule_bang_r_why,
    id=R.rule_id, cut=R.rule_cut,
    top_l=R.rule_top_l, top_r=R.rule_top_r,
    tensor_l=R.rule_tensor_l, tensor_r=R.rule_tensor_r,
    with_l=R.rule_with_l, with_r=R.rule_with_r,
    plus_l=R.rule_plus_l, plus_r=R.rule_plus_r,
    u_imp_l=R.rule_u_imp_l, u_imp_r=R.rule_u_imp_r,
)

_ILC_RULES = _table(
    xl=R.rule_xl, xr=R.rule_xr,
    bang_w=R.rule_bang_w, why_w=R.make_why_w(False),
    bang_c=R.rule_bang_c, why_c=R.make_why_c(False),
    bang_d=R.make_bang_d(False), why_d=R.make_why_d(False),
    why_l_bang=R.rule_why_l_bang, bang_r_why=R.rule_bang_r_why,
    id=R.rule_id, cut=R.rule_cut,
    one_r=R.rule_one_r, zero_l=R.rule_zero_l,
    top_l=R.rule_top_l, top_r=R.rule_top_r, bot_l=R.rule_bot_l, bot_r=R.rule_bot_r,
    tensor_l=R.rule_tensor_l, tensor_r=R.rule_tensor_r,
    par_l=R.rule_par_l, par_r=R.rule_par_r,
    with_l=R.rule_with_l, with_r=R.rule_with_r,
    plus_l=R.rule_plus_l, plus_r=R.rule_plus_r,
    neg_l=R.rule_neg_l, neg_r=R.rule_neg_r,
)

_ILC_IOTA_RULES = dict(_ILC_RULES)
_ILC_IOTA_RULES["bang-why-l"] = R.rule_bang_why_l
_ILC_IOTA_RULES["why-bang-r"] = R.rule_why_bang_r

_ILC_DELTA_RULES = dict(_ILC_RULES)
_ILC_DELTA_RULES["dist"] = R.rule_dist

_INC_RULES = _table(
    xl=R.rule_xl, xr=R.rule_xr,
    wl=R.rule_wl, why_w=R.make_why_w(True),
    cl=R.rule_cl, why_c=R.make_why_c(True),
    why_d=R.make_why_d(True), why_l_why=R.make_why_l_why(),
    id=R.rule_id, cut_why=R.rule_cut_why,
    top_l=R.rule_top_l, top_r=R.rule_top_r, ff_l=R.rule_ff_l,
    ff_r_why=R.make_ff_r_why(True),
    with_l=R.rule_with_l, with_r_why=R.make_with_r_why(True),
    or_l=R.rule_or_l, or_r_why=R.make_or_r_why(True),
    i_imp_l_why=R.make_i_imp_l_why(True), i_imp_r_why=R.make_i_imp_r_why(True),
)

_CLC_RULES = _table(
    xl=R.rule_xl, xr=R.rule_xr,
    bang_w=R.rule_bang_w, wr=R.rule_wr,
    bang_c=R.rule_bang_c, cr=R.rule_cr,
    bang_d=R.make_bang_d(True), bang_r_bang=R.rule_bang_r_bang,
    id=R.rule_id, cut_bang=R.rule_cut_bang,
    tt_l_bang=R.rule_tt_l_bang, tt_r=R.rule_tt_r,
    bot_l=R.rule_bot_l, bot_r=R.rule_bot_r,
    and_l_bang=R.rule_and_l_bang, and_r=R.rule_and_r,
    plus_l_bang=R.rule_plus_l_bang, plus_r=R.rule_plus_r,
    cl_imp_l_bang=R.rule_cl_imp_l_bang, cl_imp_r_bang=R.rule_cl_imp_r_bang,
)

CALCULI: dict[str, CalculusDef] = {
    "lk": CalculusDef("lk", "cl", _LK_RULES),
    "lj": CalculusDef("lj", "il", _LJ_RULES, intuitionistic=True),
    "llk": CalculusDef("llk", "cll", _LLK_RULES),
    "llj": CalculusDef("llj", "ill", _LLJ_RULES, intuitionistic=True),
    "ilc": CalculusDef("ilc", "ill-e", _ILC_RULES),
    "ilc-iota": CalculusDef("ilc-iota", "ill-e", _ILC_IOTA_RULES),
    "ilc-delta": CalculusDef("ilc-delta", "ill-e", _ILC_DELTA_RULES),
    "ilc-rho": CalculusDef("ilc-rho", "ill-e", _ILC_IOTA_RULES, tractable=True),
    "inc": CalculusDef("inc", "il-e", _INC_RULES),
    "inc-rho": CalculusDef("inc-rho", "il-e", _INC_RULES, tractable=True),
    "clc": CalculusDef("clc", "cll-neg", _CLC_RULES),
    "clc-rho": CalculusDef("clc-rho", "cll-neg", _CLC_RULES, tractable=True),
    "lk-rho": CalculusDef("lk-rho", "cl", _LK_RULES, tractable=True),
}


def calculus_logic(calculus: str) -> str:
    return CALCULI[calculus].logic


class _Fail(Exception):
    def __init__(self, violation: Violation) -> None:
        super().__init__(violation.message)
        self.violation = violation


def _schema(node: Proof, prem: tuple[Sequent, ...]) -> str:
    shown = " ; ".join(print_sequent(s) for s in prem) if prem else "(no premises)"
    return f"{node.rule}: {shown} => ?"


def _check_node(node: Proof, cal: CalculusDef, path: tuple[int, ...]) -> Sequent:
    prem = tuple(
        _check_node(q, cal, path + (k,)) for k, q in enumerate(node.premises)
    )
    if node.rule not in cal.rules:
        if node.rule in MULTICUT_RULES or node.rule in ("cut-wb",):
            msg = f"{node.rule} is internal to cut elimination; no calculus admits it"
        else:
            msg = f"rule {node.rule} is not part of {cal.name}"
        raise _Fail(Violation(path, node.rule, "rule-not-in-calculus", msg))
    try:
        seq, _ = cal.rules[node.rule](node, prem)
    except R.RuleError as err:
        raise _Fail(Violation(path, node.rule, err.kind, err.message, _schema(node, prem)))
    for f in seq.ante + seq.succ:
        if not in_language(f, cal.logic):
            raise _Fail(Violation(
                path, node.rule, "language",
                f"formula outside the {cal.logic} language in {print_sequent(seq)}",
            ))
    if cal.intuitionistic and len(seq.succ) > 1:
        raise _Fail(Violation(
            path, node.rule, "calculus-invariant",
            f"sequent {print_sequent(seq)} has {len(seq.succ)} right formulas; "
            "the intuitionistic restriction allows at most one",
        ))
    return seq


def check_proof(p: Proof, calculus: str) -> CheckReport:
    """Check p in the named calculus, reporting the first violation."""
    cal = CALCULI[calculus]
    try:
        seq = _check_node(p, cal, ())
    except _Fail as fail:
        return CheckReport(False, None, fail.violation)
    if cal.tractable:
        from seqcalc.purity import is_tractable

        report = is_tractable(p, calculus)
        if not report.ok:
            return CheckReport(False, seq, Violation(
                report.path or (), _rule_at(p, report.path or ()), "tractability", report.message,
            ))
    return CheckReport(True, seq, None)


def _rule_at(p: Proof, path: tuple[int, ...]) -> str:
    node = p
    for k in path:
        node = node.premises[k]
    return node.rule


def end_sequent(p: Proof, calculus: str) -> Sequent:
    """Compute the root sequent bottom-up.

    Enforces rule membership, parameters and premise shapes but not the
    marked-context side conditions, the language or global predicates;
    check_proof is the full judge.
    """
    cal = CALCULI[calculus]

    def walk(node: Proof, path: tuple[int, ...]) -> Sequent:
        prem = tuple(walk(q, path + (k,)) for k, q in enumerate(node.premises))
        if node.rule not in cal.rules:
            raise ProofStructureError(path, "rule-not-in-calculus", f"rule {node.rule} is not part of {cal.name}")
        try:
            with R.lenient():
                seq, _ = cal.rules[node.rule](node, prem)
        except R.RuleError as err:
            raise ProofStructureError(path, err.kind, err.message)
        return seq

    return walk(p, ())


def proof_depth(p: Proof) -> int:
    """Longest chain of rule applications above the root; leaves are 0."""
    if not p.premises:
        return 0
    return 1 + max(proof_depth(q) for q in p.premises)


def in_subcalculus(p: Proof, calculus: str, marker: str) -> bool:
    """Whether the checked root sequent has marked context shape.

    marker '!' asks for !D |- G, '?' for D |- ?G, '!?' for both.
    """
    if marker not in ("!", "?", "!?"):
        raise ValueError(f"marker must be '!', '?' or '!?', not {marker!r}")
    report = check_proof(p, calculus)
    if not report.ok or report.end_sequent is None:
        raise ValueError(f"proof does not check in {calculus}: {report.violation.message if report.violation else 'unknown'}")
    root = report.end_sequent
    ok = True
    if "!" in marker:
        ok = ok and all(R.is_bang(f) for f in root.ante)
    if "?" in marker:
        ok = ok and all(R.is_why(f) for f in root.succ)
    return ok
