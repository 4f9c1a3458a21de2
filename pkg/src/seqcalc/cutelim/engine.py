"""Cut elimination by stepwise rewriting.

``eliminate_cuts`` repeatedly selects a cut of maximal rank, applies
one local rewrite to it, and checks that the rewrite preserved the
node's conclusion exactly.  The rewrites live in
:mod:`seqcalc.cutelim.cases`; this module adds the generic commutation
past a non-principal rule and the surrounding loop.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from seqcalc.calculi import rules as R
from seqcalc.calculi.check import check_proof
from seqcalc.calculi.proof import Proof
from seqcalc.cutelim.cases import (
    StepState,
    build_state,
    copies_side,
    corners,
    leaf_context,
    left_principal,
    principal_step,
    right_principal,
    schedule,
)
from seqcalc.cutelim.multicut import (
    Ctx,
    NoCase,
    count_cuts,
    gather_ante_end,
    gather_succ_head,
    is_cut,
    mk_cut,
    move_in_left,
    move_in_right,
    operand_geometry,
    repair_to,
    replace_at,
    select_cut,
    subtree_at,
)

SUPPORTED_CALCULI = frozenset(
    {"ilc", "ilc-delta", "ilc-rho", "inc", "inc-rho", "clc", "clc-rho"}
)


class CutElimError(Exception):
    """Cut elimination failed; the message says where and why."""


@dataclass(frozen=True)
class Step:
    path: tuple[int, ...]
    label: str


@dataclass(frozen=True)
class CutElimResult:
    proof: Proof
    steps: tuple[Step, ...]
    calculus: str


def push_minor(st: StepState, side: int) -> tuple[Proof, str]:
    """Commute the cut above one premise's root rule.  Every traced
    copy must come out of that rule's premises unchanged."""
    info = st.info
    if info.n > 1 and side != copies_side(st):
        raise NoCase("commute-replicated",
                     "cannot commute the single side of a replicated cut")
    peeled = st.left if side == 0 else st.right
    core = peeled.core
    if not core.premises:
        raise NoCase("commute-leaf", f"{core.rule} has no premises to commute into")
    sch = "R" if side == 0 else "L"
    J = st.J0 if side == 0 else st.J1
    _, flow = st.ctx.eval_flow(core)
    per_k: dict[int, list[int]] = {}
    for j in J:
        origins = flow.get((sch, j), ())
        mine = [(kk, idx) for (kk, ss, idx) in origins if ss == sch]
        if not mine or len(mine) != len(origins):
            raise NoCase("commute-principal", f"{core.rule} owns a cut occurrence")
        for kk, idx in mine:
            per_k.setdefault(kk, []).append(idx)
    label = f"commute-{'left' if side == 0 else 'right'}:{core.rule}"
    new_prems = list(core.premises)
    for k, positions in sorted(per_k.items()):
        q = core.premises[k]
        qseq = st.ctx.eval(q)
        nk = len(positions)
        a, b = operand_geometry(core, k)
        if side == 1:
            nu = mk_cut(info.kind, "L", nk, st.node.premises[0],
                        gather_ante_end(q, qseq, sorted(positions)))
            # marked cuts only commute when the raised cut still meets
            # its context-marking conditions
            st.ctx.strict_root(nu, label)
            off = nk * (len(st.ls.succ) - 1)
            for w in range(b):
                nu = move_in_right(nu, off + w, w)
        else:
            nu = mk_cut(info.kind, "R", nk,
                        gather_succ_head(q, qseq, sorted(positions)),
                        st.node.premises[1])
            st.ctx.strict_root(nu, label)
            if a:
                base = len(qseq.ante) - a
                for _ in range(a):
                    cur = st.ctx.eval(nu)
                    nu = move_in_left(nu, base, len(cur.ante) - 1)
        new_prems[k] = nu
    rebuilt = replace(core, premises=tuple(new_prems))
    if not is_cut(core.rule):
        st.ctx.strict_root(rebuilt, label)
    return repair_to(st.ctx, rebuilt, st.target, label), label


def cut_step(ctx: Ctx, node: Proof) -> tuple[Proof, str]:
    """Rewrite one cut node, returning the replacement subtree and a
    label describing which case fired."""
    st = build_state(ctx, node)
    if st.info.n == 0:
        keep = st.node.premises[1] if st.info.orient == "L" else st.node.premises[0]
        return repair_to(ctx, keep, st.target, "vacuous-cut"), "vacuous-cut"
    res = corners(st)
    if res is not None:
        return res
    res = leaf_context(st)
    if res is not None:
        return res
    res = principal_step(st)
    if res is not None:
        return res
    failures: list[str] = []
    for side in schedule(st):
        if (side == 0 and left_principal(st)) or (side == 1 and right_principal(st)):
            continue
        try:
            return push_minor(st, side)
        except (NoCase, R.RuleError) as e:
            failures.append(str(e))
    detail = "; ".join(failures) if failures else "both premises are principal"
    raise NoCase("stuck",
                 f"{st.info.kind} cut between {st.left.core.rule} and "
                 f"{st.right.core.rule}: {detail}")


def eliminate_cuts(p: Proof, calculus: str, fuel: int = 1_000_000,
                   on_step=None) -> CutElimResult:
    """Rewrite ``p`` into a cut-free proof of the same end sequent.

    The input must check in ``calculus``; the output does too, and every
    intermediate step preserves the rewritten node's conclusion on the
    nose.  ``on_step`` is called with (path, label) after each rewrite.
    """
    if calculus not in SUPPORTED_CALCULI:
        raise CutElimError(
            f"cut elimination covers {', '.join(sorted(SUPPORTED_CALCULI))}; "
            f"got {calculus!r}")
    rep = check_proof(p, calculus)
    if not rep.ok:
        why = rep.violation.message if rep.violation else "unknown violation"
        raise CutElimError(f"input does not check in {calculus}: {why}")
    ctx = Ctx(calculus)
    steps: list[Step] = []
    cur = p
    while True:
        ctx.reset()
        path = select_cut(ctx, cur)
        if path is None:
            break
        if fuel <= 0:
            raise CutElimError(
                f"step budget exhausted after {len(steps)} rewrites with "
                f"{count_cuts(cur)} cuts left")
        fuel -= 1
        node = subtree_at(cur, path)
        before = ctx.eval(node)
        try:
            new, label = cut_step(ctx, node)
        except NoCase as e:
            raise CutElimError(f"no case applies at {list(path)}: {e}") from e
        except R.RuleError as e:
            raise CutElimError(f"rewrite at {list(path)} built an illegal tree: {e}") from e
        after = ctx.eval(new)
        if after != before:
            raise CutElimError(
                f"step {label!r} at {list(path)} changed the conclusion")
        steps.append(Step(path, label))
        if on_step is not None:
            on_step(path, label)
        cur = replace_at(cur, path, new)
    final = check_proof(cur, calculus)
    if not final.ok:
        why = final.violation.message if final.violation else "unknown violation"
        raise CutElimError(f"result fails to check in {calculus}: {why}")
    return CutElimResult(cur, tuple(steps), calculus)
