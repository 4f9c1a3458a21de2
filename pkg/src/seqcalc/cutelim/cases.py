"""Case analysis for one cut elimination step.

Each selected cut is classified by looking at the root rule of each
premise after stripping exchanges.  The rewrites below cover axiom
corners, dereliction unwraps, storage conversions, weakened and
contracted principals, and the logical principal pairs.  Anything that
falls through is handed to the generic commutation in the engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from seqcalc.calculi.proof import Proof
from seqcalc.calculi.rules import is_bang, is_why
from seqcalc.calculi.sequent import Sequent
from seqcalc.cutelim.multicut import (
    Ctx,
    CutInfo,
    NoCase,
    PRINCIPAL_SLOT,
    Peeled,
    contract_ante_blocks,
    contract_succ_blocks,
    cut_info,
    gather_ante_end,
    gather_succ_head,
    mk_cut,
    move_in_left,
    move_in_right,
    peel,
    permute_left,
    permute_right,
    repair_to,
    traced_positions,
    weaken_into,
)
from seqcalc.purity import Occurrence, is_pure


@dataclass
class StepState:
    ctx: Ctx
    node: Proof
    info: CutInfo
    target: Sequent      # conclusion the rewrite must reproduce
    left: Peeled
    right: Peeled
    s0: Sequent          # left core conclusion
    s1: Sequent          # right core conclusion
    ls: Sequent          # left premise conclusion (below the exchanges)
    rs: Sequent          # right premise conclusion
    J0: list[int]        # traced succedent positions in the left core
    J1: list[int]        # traced antecedent positions in the right core


def build_state(ctx: Ctx, node: Proof) -> StepState:
    info = cut_info(ctx, node)
    target = ctx.eval(node)
    left = peel(ctx, node.premises[0])
    right = peel(ctx, node.premises[1])
    s0 = ctx.eval(left.core)
    s1 = ctx.eval(right.core)
    ls = ctx.eval(node.premises[0])
    rs = ctx.eval(node.premises[1])
    nl = info.n if info.orient == "R" else 1
    nr = info.n if info.orient == "L" else 1
    root0 = set(range(nl))
    root1 = set(range(len(rs.ante) - nr, len(rs.ante)))
    J0 = traced_positions(left, "R", root0)
    J1 = traced_positions(right, "L", root1)
    return StepState(ctx, node, info, target, left, right, s0, s1, ls, rs, J0, J1)


def left_principal(st: StepState) -> bool:
    slot = PRINCIPAL_SLOT.get(st.left.core.rule, "")
    return slot in ("R", "both") and 0 in st.J0


def right_principal(st: StepState) -> bool:
    slot = PRINCIPAL_SLOT.get(st.right.core.rule, "")
    return slot in ("L", "both") and (len(st.s1.ante) - 1) in st.J1


def copies_side(st: StepState) -> int:
    return 1 if st.info.orient == "L" else 0


def schedule(st: StepState) -> list[int]:
    """Preferred commutation order: climb toward the promotion side."""
    if st.info.kind == "bang":
        return [0, 1]
    if st.info.kind == "plain" and is_bang(st.info.f_left):
        return [0, 1]
    return [1, 0]


# ---------------------------------------------------------------------------
# position bookkeeping

def _premise_positions(ctx: Ctx, core: Proof, side: str, positions: list[int], k: int) -> list[int]:
    """Map conclusion context positions into premise ``k`` via the flow."""
    _, flow = ctx.eval_flow(core)
    out = []
    for j in positions:
        hits = [idx for (kk, ss, idx) in flow.get((side, j), ()) if kk == k and ss == side]
        if len(hits) != 1:
            raise NoCase("trace-map", f"{core.rule} does not pass position {j} to premise {k}")
        out.append(hits[0])
    return sorted(out)


def _split_positions(ctx: Ctx, core: Proof, side: str, positions: list[int]) -> dict[int, list[int]]:
    """Split conclusion positions across the premises of a
    context-splitting rule (each position has a single origin)."""
    _, flow = ctx.eval_flow(core)
    out: dict[int, list[int]] = {}
    for j in positions:
        origins = [(kk, idx) for (kk, ss, idx) in flow.get((side, j), ()) if ss == side]
        if len(origins) != 1:
            raise NoCase("trace-map", f"{core.rule}: position {j} is not split cleanly")
        k, idx = origins[0]
        out.setdefault(k, []).append(idx)
    return {k: sorted(v) for k, v in out.items()}


def _rest_left(st: StepState) -> list[int]:
    return [j for j in st.J0 if j != 0]


def _rest_right(st: StepState) -> list[int]:
    last = len(st.s1.ante) - 1
    return [j for j in st.J1 if j != last]


def _absorbed_right(st: StepState, prem: Proof, positions: list[int], b_head: int = 0) -> Proof:
    """Cut the stray copies inside a right-core premise against the
    whole left premise.  Antecedent-end operands survive in place;
    ``b_head`` succedent operands are brought back to the head."""
    k = len(positions)
    if not k:
        return prem
    pseq = st.ctx.eval(prem)
    tree = mk_cut(st.info.kind, "L", k, st.node.premises[0], gather_ante_end(prem, pseq, positions))
    off = k * (len(st.ls.succ) - 1)
    for w in range(b_head):
        tree = move_in_right(tree, off + w, w)
    return tree


def _absorbed_left(st: StepState, prem: Proof, positions: list[int], a_end: int = 0) -> Proof:
    """Mirror image of :func:`_absorbed_right` for a left-core premise."""
    k = len(positions)
    if not k:
        return prem
    pseq = st.ctx.eval(prem)
    tree = mk_cut(st.info.kind, "R", k, gather_succ_head(prem, pseq, positions), st.node.premises[1])
    if a_end:
        base = len(pseq.ante) - a_end
        for _ in range(a_end):
            cur = st.ctx.eval(tree)
            tree = move_in_left(tree, base, len(cur.ante) - 1)
    return tree


def _finish(st: StepState, built: Proof, label: str) -> tuple[Proof, str]:
    return repair_to(st.ctx, built, st.target, label), label


# ---------------------------------------------------------------------------
# axiom corners

def corners(st: StepState) -> tuple[Proof, str] | None:
    kind = st.info.kind
    lid = st.left.core.rule == "id"
    rid = st.right.core.rule == "id"
    if kind == "plain":
        if rid:
            return _finish(st, st.node.premises[0], "id-right")
        if lid:
            return _finish(st, st.node.premises[1], "id-left")
        return None
    fam = st.ctx.fam
    if kind == "why" and lid:
        # the identity on ?B versus bare copies of B: store each copy
        if fam.promo_why_l is None:
            raise NoCase("id-why-left", f"{st.ctx.calculus} has no storage rule for ?-formulas")
        tree = st.node.premises[1]
        for _ in range(st.info.n):
            tree = Proof(fam.promo_why_l, (tree,))
            st.ctx.strict_root(tree, "id-why-left")
            # rotate the stored copy away so the next bare one is last
            width = len(st.ctx.eval(tree).ante)
            if width > 1:
                tree = move_in_left(tree, width - 1, 0)
        return _finish(st, tree, "id-why-left")
    if kind == "why" and rid and is_why(st.info.f_right):
        # bare cut formula already ?-marked: expose it with a storage
        # wrapper and fall back to a plain cut
        if fam.promo_why_l is None:
            raise NoCase("id-why-right", f"{st.ctx.calculus} has no storage rule for ?-formulas")
        wrapped = Proof(fam.promo_why_l, (st.right.core,))
        st.ctx.strict_root(wrapped, "id-why-right")
        nu = mk_cut("plain", "L", 1, st.node.premises[0], wrapped)
        return _finish(st, nu, "id-why-right")
    if kind == "bang" and rid:
        # identity on !B: eta-expand through promotion and dereliction
        if fam.promo_bang_r is None:
            raise NoCase("id-bang-right", f"{st.ctx.calculus} has no promotion rule for !-formulas")
        inner = Proof("id", formula=st.info.f_left)
        eta = Proof("bang-d", (Proof(fam.promo_bang_r, (inner,)),))
        nu = Proof(st.node.rule, (st.node.premises[0], eta), n=st.node.n)
        return nu, "id-bang-right"
    if kind == "wb" and lid:
        bare = st.info.f_left.sub  # type: ignore[union-attr]
        eta = Proof("why-l-bang", (Proof("why-d", (Proof("id", formula=bare),)),))
        st.ctx.strict_root(eta, "id-wb-left")
        nu = Proof(st.node.rule, (eta, st.node.premises[1]), n=st.node.n)
        return nu, "id-wb-left"
    if kind == "wb" and rid:
        bare = st.info.f_left.sub  # type: ignore[union-attr]
        eta = Proof("bang-r-why", (Proof("bang-d", (Proof("id", formula=bare),)),))
        st.ctx.strict_root(eta, "id-wb-right")
        nu = Proof(st.node.rule, (st.node.premises[0], eta), n=st.node.n)
        return nu, "id-wb-right"
    # bare-side identities of marked cuts resolve after the other side
    # climbs to its dereliction
    return None


# ---------------------------------------------------------------------------
# leaf context rebuilds (units with stored contexts)

def _minus_one(fs, f):
    out = list(fs)
    try:
        out.remove(f)
    except ValueError:
        raise NoCase("context-leaf", "unit leaf lost its own formula") from None
    return tuple(out)


def leaf_context(st: StepState) -> tuple[Proof, str] | None:
    """A unit leaf whose cut occurrences all live in its stored context
    can simply restate the whole conclusion."""
    rcore, lcore = st.right.core, st.left.core
    if rcore.rule in ("one-r", "zero-l") and not right_principal(st):
        if rcore.rule == "one-r":
            ctxs = (tuple(st.target.ante), _minus_one(st.target.succ, st.s1.succ[0]))
        else:
            ctxs = (_minus_one(st.target.ante, st.s1.ante[-1]), tuple(st.target.succ))
        nu = Proof(rcore.rule, (), contexts=ctxs)
        return _finish(st, nu, f"context-leaf:{rcore.rule}")
    if lcore.rule in ("one-r", "zero-l") and not left_principal(st):
        if lcore.rule == "one-r":
            ctxs = (tuple(st.target.ante), _minus_one(st.target.succ, st.s0.succ[0]))
        else:
            ctxs = (_minus_one(st.target.ante, st.s0.ante[-1]), tuple(st.target.succ))
        nu = Proof(lcore.rule, (), contexts=ctxs)
        return _finish(st, nu, f"context-leaf:{lcore.rule}")
    return None


# ---------------------------------------------------------------------------
# dereliction unwraps and storage conversions

def unwraps(st: StepState) -> tuple[Proof, str] | None:
    kind, orient, n = st.info.kind, st.info.orient, st.info.n
    fam = st.ctx.fam
    lcore, rcore = st.left.core, st.right.core
    lp, rp = left_principal(st), right_principal(st)

    if kind == "why" and lp and lcore.rule == "why-d":
        u = lcore.premises[0]
        if orient == "L":
            nu = mk_cut("plain", "L", n, u, st.node.premises[1])
        else:
            nu = _split_left_derelict(st, u, "plain")
        return _finish(st, nu, "why-dereliction")

    if kind == "bang" and rp and rcore.rule == "bang-d":
        r = rcore.premises[0]
        if orient == "R":
            nu = mk_cut("plain", "R", n, st.node.premises[0], r)
        else:
            nu = _split_right_derelict(st, r, "plain")
        return _finish(st, nu, "bang-dereliction")

    if kind == "wb" and rp and rcore.rule == "bang-d":
        r = rcore.premises[0]
        if orient == "R":
            nu = mk_cut("why", "R", n, st.node.premises[0], r)
        else:
            nu = _split_right_derelict(st, r, "why")
        return _finish(st, nu, "wb-right-dereliction")

    if kind == "wb" and lp and lcore.rule == "why-d":
        u = lcore.premises[0]
        if orient == "L":
            nu = mk_cut("bang", "L", n, u, st.node.premises[1])
        else:
            nu = _split_left_derelict(st, u, "bang")
        return _finish(st, nu, "wb-left-dereliction")

    if (kind == "plain" and lp and fam.promo_bang_r is not None
            and lcore.rule == fam.promo_bang_r and (orient == "L" or n == 1)):
        # a promoted !-formula never replicates on its own side, so the
        # single-copy restriction loses nothing here
        p = lcore.premises[0]
        if orient == "L":
            nu = mk_cut("bang", "L", n, p, st.node.premises[1])
        else:
            nu = mk_cut("bang", "R", 1, p, st.node.premises[1])
        return _finish(st, nu, "promotion-conversion-left")

    if kind == "plain" and rp and fam.promo_why_l is not None and rcore.rule == fam.promo_why_l:
        pp = rcore.premises[0]
        if orient == "R":
            nu = mk_cut("why", "R", n, st.node.premises[0], pp)
        elif n == 1:
            nu = mk_cut("why", "L", 1, st.node.premises[0], pp)
        else:
            nu = _split_right_derelict(st, pp, "why")
        return _finish(st, nu, "storage-conversion-right")

    if kind == "bang" and rp and rcore.rule == "bang-why-l":
        return _rho_case(st)

    if kind == "wb" and rp and rcore.rule == "bang-why-l":
        raise NoCase("wb-nested-promotion",
                     "a storage cut ran into a nested promotion principal")
    return None


def _split_left_derelict(st: StepState, u: Proof, out_kind: str) -> Proof:
    """The left core derelicted the head copy of a copy-carrying side;
    cut the remaining marked copies first, then the bare one."""
    n = st.info.n
    if n == 1:
        arm = u
    else:
        useq = st.ctx.eval(u)
        rest = _premise_positions(st.ctx, st.left.core, "R", _rest_left(st), 0)
        arm = mk_cut(st.info.kind, "R", n - 1, gather_succ_head(u, useq, rest), st.node.premises[1])
    return mk_cut(out_kind, "R", 1, arm, st.node.premises[1])


def _split_right_derelict(st: StepState, r: Proof, out_kind: str) -> Proof:
    n = st.info.n
    if n == 1:
        arm = r
    else:
        rseq = st.ctx.eval(r)
        rest = _premise_positions(st.ctx, st.right.core, "L", _rest_right(st), 0)
        arm = mk_cut(st.info.kind, "L", n - 1, st.node.premises[0], gather_ante_end(r, rseq, rest))
    return mk_cut(out_kind, "L", 1, st.node.premises[0], arm)


def _rho_case(st: StepState) -> tuple[Proof, str]:
    """A !-cut meeting the interleaved storage rule.  The reduct swaps
    the cut to its mixed form; with several copies this is only sound
    when the left cut occurrence is pure."""
    n = st.info.n
    pp = st.right.core.premises[0]
    if n > 1:
        occ = Occurrence((0,), "R", 0)
        if not is_pure(st.node, st.ctx.calculus, occ):
            raise NoCase("rho-multicut-impure",
                         "replicated mixed cut with an impure left occurrence")
        ppseq = st.ctx.eval(pp)
        rest = _premise_positions(st.ctx, st.right.core, "L", _rest_right(st), 0)
        pp = mk_cut("bang", "L", n - 1, st.node.premises[0], gather_ante_end(pp, ppseq, rest))
    nu = mk_cut("wb", "L", 1, st.node.premises[0], pp)
    return _finish(st, nu, "mixed-promotion")


# ---------------------------------------------------------------------------
# weakened and contracted principals

def structural(st: StepState) -> tuple[Proof, str] | None:
    fam = st.ctx.fam
    for attempt in (_drop_right_w, _drop_left_w, _grow_right_c, _grow_left_c):
        try:
            res = attempt(st, fam)
        except NoCase:
            res = None
        if res is not None:
            return res
    return None


def _drop_right_w(st: StepState, fam) -> tuple[Proof, str] | None:
    if st.right.core.rule != fam.ante_w or not right_principal(st):
        return None
    label = f"weakening-drop:{fam.ante_w}"
    w = st.right.core.premises[0]
    n = st.info.n
    if st.info.orient == "L":
        # one copy came from weakening: shrink the cut and weaken one
        # replica of the left contexts back in
        rest = _premise_positions(st.ctx, st.right.core, "L", _rest_right(st), 0)
        wseq = st.ctx.eval(w)
        arm = gather_ante_end(w, wseq, rest)
        base = arm if n == 1 else mk_cut(st.info.kind, "L", n - 1, st.node.premises[0], arm)
        built = weaken_into(st.ctx, base, list(st.ls.ante), list(st.ls.succ[1:]), label)
    else:
        # the single cut occurrence vanishes; the left premise is
        # discarded and every replica it fed is weakened back
        wseq = st.ctx.eval(w)
        ante_fs = list(st.ls.ante) + list(wseq.ante) * (n - 1)
        succ_fs = list(st.ls.succ[n:]) + list(wseq.succ) * (n - 1)
        built = weaken_into(st.ctx, w, ante_fs, succ_fs, label)
    return _finish(st, built, label)


def _drop_left_w(st: StepState, fam) -> tuple[Proof, str] | None:
    if st.left.core.rule != fam.succ_w or not left_principal(st):
        return None
    label = f"weakening-drop:{fam.succ_w}"
    u = st.left.core.premises[0]
    n = st.info.n
    useq = st.ctx.eval(u)
    if st.info.orient == "R":
        rest = _premise_positions(st.ctx, st.left.core, "R", _rest_left(st), 0)
        arm = gather_succ_head(u, useq, rest)
        base = arm if n == 1 else mk_cut(st.info.kind, "R", n - 1, arm, st.node.premises[1])
        built = weaken_into(st.ctx, base, list(st.rs.ante[:-1]), list(st.rs.succ), label)
    else:
        ante_fs = list(useq.ante) * (n - 1) + list(st.rs.ante[: len(st.rs.ante) - n])
        succ_fs = list(useq.succ) * (n - 1) + list(st.rs.succ)
        built = weaken_into(st.ctx, u, ante_fs, succ_fs, label)
    return _finish(st, built, label)


def _grow_right_c(st: StepState, fam) -> tuple[Proof, str] | None:
    if st.right.core.rule != fam.ante_c or not right_principal(st):
        return None
    if st.info.orient == "R" and st.info.n > 1:
        raise NoCase("contraction-vs-replicas",
                     "contracted principal facing a replicated hypothesis")
    label = f"contraction-grow:{fam.ante_c}"
    rr = st.right.core.premises[0]
    rrseq = st.ctx.eval(rr)
    rest = _premise_positions(st.ctx, st.right.core, "L", _rest_right(st), 0)
    lp = len(rrseq.ante)
    nr = st.info.n if st.info.orient == "L" else 1
    gathered = gather_ante_end(rr, rrseq, sorted(rest + [lp - 2, lp - 1]))
    nu = mk_cut(st.info.kind, "L", nr + 1, st.node.premises[0], gathered)
    nu = contract_ante_blocks(st.ctx, nu, len(st.ls.ante), label)
    nu = contract_succ_blocks(st.ctx, nu, len(st.ls.succ) - 1, label)
    return _finish(st, nu, label)


def _grow_left_c(st: StepState, fam) -> tuple[Proof, str] | None:
    if st.left.core.rule != fam.succ_c or not left_principal(st):
        return None
    if st.info.orient == "L" and st.info.n > 1:
        raise NoCase("contraction-vs-replicas",
                     "contracted principal facing a replicated hypothesis")
    label = f"contraction-grow:{fam.succ_c}"
    uu = st.left.core.premises[0]
    uuseq = st.ctx.eval(uu)
    rest = _premise_positions(st.ctx, st.left.core, "R", _rest_left(st), 0)
    nl = st.info.n if st.info.orient == "R" else 1
    gathered = gather_succ_head(uu, uuseq, [0, 1] + [j for j in rest if j > 1])
    nu = mk_cut(st.info.kind, "R", nl + 1, gathered, st.node.premises[1])
    # the replica blocks sit at the back; bring one pair forward
    m_a = len(st.rs.ante) - 1
    m_s = len(st.rs.succ)
    nu = _flip_ante_end(st.ctx, nu, 2 * m_a)
    nu = _flip_succ_end(st.ctx, nu, 2 * m_s)
    nu = contract_ante_blocks(st.ctx, nu, m_a, label)
    nu = contract_succ_blocks(st.ctx, nu, m_s, label)
    return _finish(st, nu, label)


def _flip_ante_end(ctx: Ctx, tree: Proof, m: int) -> Proof:
    seq = ctx.eval(tree)
    total = len(seq.ante)
    if not m or m >= total:
        return tree
    perm = list(range(total - m, total)) + list(range(total - m))
    return permute_left(tree, perm)


def _flip_succ_end(ctx: Ctx, tree: Proof, m: int) -> Proof:
    seq = ctx.eval(tree)
    total = len(seq.succ)
    if not m or m >= total:
        return tree
    perm = list(range(total - m, total)) + list(range(total - m))
    return permute_right(tree, perm)


# ---------------------------------------------------------------------------
# logical principal pairs

def _pair_right_unary(st: StepState) -> Proof:
    r = st.right.core.premises[0]
    rest = _premise_positions(st.ctx, st.right.core, "L", _rest_right(st), 0)
    return _absorbed_right(st, r, rest)


def _pair_left_unary(st: StepState) -> Proof:
    u = st.left.core.premises[0]
    rest = _premise_positions(st.ctx, st.left.core, "R", _rest_left(st), 0)
    return _absorbed_left(st, u, rest)


def _pair_pick_right(st: StepState) -> Proof:
    # conjunction-style: the right core picked branch i of a shared pair
    i = st.right.core.i
    if i not in (1, 2):
        raise NoCase("principal-pair", f"{st.right.core.rule} lacks its branch index")
    u_i = st.left.core.premises[i - 1]
    ju = _premise_positions(st.ctx, st.left.core, "R", _rest_left(st), i - 1)
    ul = _absorbed_left(st, u_i, ju)
    r = st.right.core.premises[0]
    jr = _premise_positions(st.ctx, st.right.core, "L", _rest_right(st), 0)
    rr = _absorbed_right(st, r, jr)
    return mk_cut("plain", "L", 1, ul, rr)


def _pair_pick_left(st: StepState) -> Proof:
    # disjunction-style: the left core picked branch i
    i = st.left.core.i
    if i not in (1, 2):
        raise NoCase("principal-pair", f"{st.left.core.rule} lacks its branch index")
    ul = _absorbed_left(st, st.left.core.premises[0],
                        _premise_positions(st.ctx, st.left.core, "R", _rest_left(st), 0))
    q_i = st.right.core.premises[i - 1]
    jr = _premise_positions(st.ctx, st.right.core, "L", _rest_right(st), i - 1)
    rr = _absorbed_right(st, q_i, jr)
    return mk_cut("plain", "L", 1, ul, rr)


def _pair_neg(st: StepState) -> Proof:
    p1 = st.left.core.premises[0]
    ju = _split_positions(st.ctx, st.left.core, "R", _rest_left(st)).get(0, [])
    ul = _absorbed_left(st, p1, ju, a_end=1)
    p2 = st.right.core.premises[0]
    jr = _split_positions(st.ctx, st.right.core, "L", _rest_right(st)).get(0, [])
    rr = _absorbed_right(st, p2, jr, b_head=1)
    return mk_cut("plain", "L", 1, rr, ul)


def _pair_tensor(st: StepState) -> Proof:
    split = _split_positions(st.ctx, st.left.core, "R", _rest_left(st))
    p1 = _absorbed_left(st, st.left.core.premises[0], split.get(0, []))
    p2 = _absorbed_left(st, st.left.core.premises[1], split.get(1, []))
    jr = _premise_positions(st.ctx, st.right.core, "L", _rest_right(st), 0)
    p3 = _absorbed_right(st, st.right.core.premises[0], jr)
    inner = mk_cut("plain", "L", 1, p2, p3)
    return mk_cut("plain", "L", 1, p1, inner)


def _pair_par(st: StepState) -> Proof:
    ju = _premise_positions(st.ctx, st.left.core, "R", _rest_left(st), 0)
    ul = _absorbed_left(st, st.left.core.premises[0], ju)
    split = _split_positions(st.ctx, st.right.core, "L", _rest_right(st))
    q1 = _absorbed_right(st, st.right.core.premises[0], split.get(0, []))
    q2 = _absorbed_right(st, st.right.core.premises[1], split.get(1, []))
    inner = mk_cut("plain", "L", 1, ul, q1)
    return mk_cut("plain", "L", 1, inner, q2)


def _pair_imp(st: StepState) -> Proof:
    # arrow against arrow: cut the argument first, then the result
    ju = _premise_positions(st.ctx, st.left.core, "R", _rest_left(st), 0)
    ul = _absorbed_left(st, st.left.core.premises[0], ju, a_end=1)
    split = _split_positions(st.ctx, st.right.core, "L", _rest_right(st))
    r1 = _absorbed_right(st, st.right.core.premises[0], split.get(0, []))
    r2 = _absorbed_right(st, st.right.core.premises[1], split.get(1, []), b_head=1)
    mid = mk_cut("plain", "L", 1, r2, ul)
    off = len(st.ctx.eval(r2).succ) - 1
    if off > 0:
        mid = move_in_right(mid, off, 0)
    return mk_cut("plain", "L", 1, mid, r1)


_PAIR_TABLES: dict[tuple[str, str], dict[tuple[str, str], object]] = {
    ("ilc", "plain"): {
        ("top-r", "top-l"): _pair_right_unary,
        ("bot-r", "bot-l"): _pair_left_unary,
        ("neg-r", "neg-l"): _pair_neg,
        ("tensor-r", "tensor-l"): _pair_tensor,
        ("par-r", "par-l"): _pair_par,
        ("with-r", "with-l"): _pair_pick_right,
        ("plus-r", "plus-l"): _pair_pick_left,
    },
    ("inc", "plain"): {
        ("top-r", "top-l"): _pair_right_unary,
        ("ff-r-why", "ff-l"): _pair_left_unary,
        ("with-r-why", "with-l"): _pair_pick_right,
        ("or-r-why", "or-l"): _pair_pick_left,
        ("i-imp-r-why", "i-imp-l-why"): _pair_imp,
    },
    ("clc", "plain"): {
        ("tt-r", "tt-l-bang"): _pair_right_unary,
        ("bot-r", "bot-l"): _pair_left_unary,
        ("and-r", "and-l-bang"): _pair_pick_right,
        ("plus-r", "plus-l-bang"): _pair_pick_left,
    },
    ("clc", "bang"): {
        ("cl-imp-r-bang", "cl-imp-l-bang"): _pair_imp,
    },
}


def pairs(st: StepState) -> tuple[Proof, str] | None:
    if not (left_principal(st) and right_principal(st)):
        return None
    key = (st.left.core.rule, st.right.core.rule)
    if "dist" in key:
        raise NoCase("dist-principal",
                     "the interleaving axiom admits no principal reduction")
    table = _PAIR_TABLES.get((st.ctx.fam.name, st.info.kind), {})
    template = table.get(key)
    if template is None:
        return None
    built = template(st)  # type: ignore[operator]
    return _finish(st, built, f"pair:{key[0]}+{key[1]}")


def principal_step(st: StepState) -> tuple[Proof, str] | None:
    for stage in (unwraps, structural, pairs):
        res = stage(st)
        if res is not None:
            return res
    return None
