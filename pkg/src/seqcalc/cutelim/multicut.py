"""Plumbing for the cut elimination engine.

A step rewrites one generalized cut.  This module supplies what every
rewrite needs: an evaluator that tolerates mid-flight trees, flavor
accounting for the twelve cut forms, exchange peeling with position
maps, gathering permutations, conclusion repair, and the weakening and
contraction telescopes the reducts emit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from seqcalc.calculi import rules as R
from seqcalc.calculi.check import CALCULI
from seqcalc.calculi.permute import (
    move_in_left,
    move_in_right,
    permute_left,
    permute_right,
)
from seqcalc.calculi.proof import Proof
from seqcalc.calculi.rules import is_bang, is_why
from seqcalc.calculi.sequent import Sequent
from seqcalc.cutelim.families import Family, family_of
from seqcalc.syntax import Formula, Unary, print_formula, rank


class NoCase(Exception):
    """No rewrite applies to the selected cut; the step is stuck."""

    def __init__(self, label: str, message: str):
        super().__init__(f"{label}: {message}")
        self.label = label
        self.message = message


# rule name -> (flavor, side that carries the copies)
CUT_KINDS: dict[str, tuple[str, str]] = {
    "cut": ("plain", "L"),
    "cut-l-n": ("plain", "L"),
    "cut-r-n": ("plain", "R"),
    "cut-wb": ("wb", "L"),
    "cut-l-n-wb": ("wb", "L"),
    "cut-r-n-wb": ("wb", "R"),
    "cut-why": ("why", "L"),
    "cut-l-n-why": ("why", "L"),
    "cut-r-n-why": ("why", "R"),
    "cut-bang": ("bang", "L"),
    "cut-l-n-bang": ("bang", "L"),
    "cut-r-n-bang": ("bang", "R"),
}

_BASE_NAMES = {"cut", "cut-why", "cut-bang", "cut-wb"}


def is_cut(rule: str) -> bool:
    return rule in CUT_KINDS


def cut_n(node: Proof) -> int:
    return node.n if node.n is not None else 1


def multicut_name(kind: str, orient: str) -> str:
    base = "cut-l-n" if orient == "L" else "cut-r-n"
    return base if kind == "plain" else f"{base}-{kind}"


def mk_cut(kind: str, orient: str, n: int, left: Proof, right: Proof) -> Proof:
    return Proof(multicut_name(kind, orient), (left, right), n=n)


class Ctx:
    """Evaluation context: rule table of one calculus plus the
    generalized cuts, with identity-keyed memoization."""

    def __init__(self, calculus: str):
        if calculus not in CALCULI:
            raise ValueError(f"unknown calculus {calculus!r}")
        self.calculus = calculus
        self.cal = CALCULI[calculus]
        self.fam: Family = family_of(calculus)
        self.table: dict[str, R.RuleFn] = dict(self.cal.rules)
        self.table.update(R.MULTICUT_FNS)
        self._memo: dict[int, tuple[Proof, Sequent, R.Flow]] = {}

    def reset(self) -> None:
        self._memo.clear()

    def eval_flow(self, node: Proof) -> tuple[Sequent, R.Flow]:
        hit = self._memo.get(id(node))
        if hit is not None and hit[0] is node:
            return hit[1], hit[2]
        prem = tuple(self.eval(q) for q in node.premises)
        fn = self.table.get(node.rule)
        if fn is None:
            raise NoCase("unknown-rule", f"{node.rule} is not evaluable in {self.calculus}")
        with R.lenient():
            seq, flow = fn(node, prem)
        self._memo[id(node)] = (node, seq, flow)
        return seq, flow

    def eval(self, node: Proof) -> Sequent:
        return self.eval_flow(node)[0]

    def strict_root(self, node: Proof, label: str) -> None:
        """Re-run the root rule with its full side conditions."""
        prem = tuple(self.eval(q) for q in node.premises)
        fn = self.table.get(node.rule)
        if fn is None:
            raise NoCase(label, f"{node.rule} is not evaluable in {self.calculus}")
        try:
            fn(node, prem)
        except R.RuleError as e:
            raise NoCase(label, f"{node.rule} rejects the commuted premises: {e}") from e


# ---------------------------------------------------------------------------
# flavor accounting

@dataclass(frozen=True)
class CutInfo:
    kind: str        # plain | wb | why | bang
    orient: str      # side carrying the copies
    n: int
    f_left: Formula  # shape of each left-premise cut occurrence
    f_right: Formula
    rank: int


def cut_info(ctx: Ctx, node: Proof) -> CutInfo:
    kind, orient = CUT_KINDS[node.rule]
    n = cut_n(node)
    s1 = ctx.eval(node.premises[0])
    s2 = ctx.eval(node.premises[1])
    if orient == "L":
        if not s1.succ:
            raise NoCase("malformed-cut", "left premise succedent is empty")
        fl = s1.succ[0]
        if kind == "plain":
            fr = fl
        elif kind == "wb" or kind == "why":
            if not is_why(fl):
                raise NoCase("malformed-cut", f"{node.rule} needs a ?-formula on the left")
            assert isinstance(fl, Unary)
            fr = Unary("!", fl.sub) if kind == "wb" else fl.sub
        else:
            fr = Unary("!", fl)
    else:
        if not s2.ante:
            raise NoCase("malformed-cut", "right premise antecedent is empty")
        fr = s2.ante[-1]
        if kind == "plain":
            fl = fr
        elif kind == "wb" or kind == "bang":
            if not is_bang(fr):
                raise NoCase("malformed-cut", f"{node.rule} needs a !-formula on the right")
            assert isinstance(fr, Unary)
            fl = Unary("?", fr.sub) if kind == "wb" else fr.sub
        else:
            fl = Unary("?", fr)
    rk = rank(fr) if kind == "bang" else rank(fl)
    return CutInfo(kind, orient, n, fl, fr, rk)


# ---------------------------------------------------------------------------
# cut selection

def subtree_at(root: Proof, path: tuple[int, ...]) -> Proof:
    node = root
    for k in path:
        node = node.premises[k]
    return node


def replace_at(root: Proof, path: tuple[int, ...], new: Proof) -> Proof:
    if not path:
        return new
    prems = list(root.premises)
    prems[path[0]] = replace_at(prems[path[0]], path[1:], new)
    return replace(root, premises=tuple(prems))


def select_cut(ctx: Ctx, root: Proof) -> tuple[int, ...] | None:
    """Pick the topmost cut among those of maximal rank."""
    best: tuple[int, int, tuple[int, ...]] | None = None

    def walk(node: Proof, path: tuple[int, ...]) -> None:
        nonlocal best
        for k, q in enumerate(node.premises):
            walk(q, path + (k,))
        if is_cut(node.rule):
            info = cut_info(ctx, node)
            key = (info.rank, len(path))
            if best is None or key > (best[0], best[1]):
                best = (info.rank, len(path), path)

    walk(root, ())
    return best[2] if best is not None else None


def count_cuts(root: Proof) -> int:
    total = 1 if is_cut(root.rule) else 0
    return total + sum(count_cuts(q) for q in root.premises)


# ---------------------------------------------------------------------------
# exchange peeling

@dataclass(frozen=True)
class Peeled:
    core: Proof
    ante_map: tuple[int, ...]  # core position -> position below the chain
    succ_map: tuple[int, ...]


def peel(ctx: Ctx, node: Proof) -> Peeled:
    chain: list[Proof] = []
    core = node
    while core.rule in ("xl", "xr"):
        chain.append(core)
        core = core.premises[0]
    seq = ctx.eval(core)
    amap = list(range(len(seq.ante)))
    smap = list(range(len(seq.succ)))
    for ex in reversed(chain):
        at = ex.at
        assert at is not None
        m = amap if ex.rule == "xl" else smap
        for i, v in enumerate(m):
            if v == at:
                m[i] = at + 1
            elif v == at + 1:
                m[i] = at
    return Peeled(core, tuple(amap), tuple(smap))


def traced_positions(peeled: Peeled, side: str, root_set: set[int]) -> list[int]:
    m = peeled.ante_map if side == "L" else peeled.succ_map
    return sorted(j for j, v in enumerate(m) if v in root_set)


# ---------------------------------------------------------------------------
# gathering and repair

def gather_succ_head(tree: Proof, seq: Sequent, positions: list[int]) -> Proof:
    """Permute the succedent so the given positions become the head block."""
    keep = set(positions)
    perm = list(positions) + [j for j in range(len(seq.succ)) if j not in keep]
    if perm == list(range(len(perm))):
        return tree
    return permute_right(tree, perm)


def gather_ante_end(tree: Proof, seq: Sequent, positions: list[int]) -> Proof:
    """Permute the antecedent so the given positions become the end block."""
    keep = set(positions)
    perm = [j for j in range(len(seq.ante)) if j not in keep] + list(positions)
    if perm == list(range(len(perm))):
        return tree
    return permute_left(tree, perm)


def first_fit_perm(source: tuple[Formula, ...], target: tuple[Formula, ...]) -> list[int] | None:
    if len(source) != len(target):
        return None
    used = [False] * len(source)
    perm: list[int] = []
    for f in target:
        for i, g in enumerate(source):
            if not used[i] and g == f:
                used[i] = True
                perm.append(i)
                break
        else:
            return None
    return perm


def _show(seq: Sequent) -> str:
    left = ", ".join(print_formula(f) for f in seq.ante)
    right = ", ".join(print_formula(f) for f in seq.succ)
    return f"{left} |- {right}"


def repair_to(ctx: Ctx, built: Proof, target: Sequent, label: str) -> Proof:
    """Exchange the built tree's conclusion into exactly ``target``."""
    s = ctx.eval(built)
    pl = first_fit_perm(s.ante, target.ante)
    pr = first_fit_perm(s.succ, target.succ)
    if pl is None or pr is None:
        raise NoCase(label, f"rewrite changed the conclusion: built {_show(s)}, wanted {_show(target)}")
    if pl != list(range(len(pl))):
        built = permute_left(built, pl)
    if pr != list(range(len(pr))):
        built = permute_right(built, pr)
    return built


# ---------------------------------------------------------------------------
# telescopes

def weaken_into(ctx: Ctx, tree: Proof, ante_fs: list[Formula], succ_fs: list[Formula], label: str) -> Proof:
    """Weaken the given formulas in, antecedent end and succedent head."""
    fam = ctx.fam
    for f in ante_fs:
        if not fam.ante_w_any and not is_bang(f):
            raise NoCase(label, f"{fam.ante_w} cannot weaken {print_formula(f)} in")
        tree = Proof(fam.ante_w, (tree,), intro=f)
        ctx.strict_root(tree, label)
    for f in succ_fs:
        if not fam.succ_w_any and not is_why(f):
            raise NoCase(label, f"{fam.succ_w} cannot weaken {print_formula(f)} in")
        tree = Proof(fam.succ_w, (tree,), intro=f)
        ctx.strict_root(tree, label)
    return tree


def contract_ante_blocks(ctx: Ctx, tree: Proof, m: int, label: str) -> Proof:
    """Contract two identical m-blocks at the antecedent front into one.

    The merged formulas end up at the antecedent end, in block order;
    callers repair afterwards.
    """
    fam = ctx.fam
    for i in range(m):
        seq = ctx.eval(tree)
        total = len(seq.ante)
        f = seq.ante[0]
        if not fam.ante_c_any and not is_bang(f):
            raise NoCase(label, f"{fam.ante_c} cannot contract {print_formula(f)}")
        tree = move_in_left(tree, 0, total - 1)
        tree = move_in_left(tree, m - i - 1, total - 1)
        tree = Proof(fam.ante_c, (tree,))
        ctx.strict_root(tree, label)
    return tree


def contract_succ_blocks(ctx: Ctx, tree: Proof, m: int, label: str) -> Proof:
    """Contract two identical m-blocks at the succedent head into one."""
    fam = ctx.fam
    for i in range(m):
        seq = ctx.eval(tree)
        f = seq.succ[i]
        if not fam.succ_c_any and not is_why(f):
            raise NoCase(label, f"{fam.succ_c} cannot contract {print_formula(f)}")
        tree = move_in_right(tree, i, 0)
        tree = move_in_right(tree, m, 1)
        tree = Proof(fam.succ_c, (tree,))
        ctx.strict_root(tree, label)
    return tree


# ---------------------------------------------------------------------------
# rule shape tables

# principal position of each rule: "L" antecedent end, "R" succedent
# head, "both" for axiom leaves with the principal on both sides
PRINCIPAL_SLOT: dict[str, str] = {
    "wl": "L", "cl": "L", "bang-w": "L", "bang-c": "L", "bang-d": "L",
    "tt-l": "L", "top-l": "L", "tt-l-bang": "L",
    "and-l": "L", "with-l": "L", "and-l-bang": "L",
    "or-l": "L", "plus-l": "L", "plus-l-bang": "L",
    "tensor-l": "L", "par-l": "L", "neg-l": "L",
    "c-imp-l": "L", "i-imp-l-why": "L", "cl-imp-l-bang": "L", "u-imp-l": "L",
    "why-l-bang": "L", "bang-why-l": "L", "why-l-why": "L",
    "zero-l": "L", "ff-l": "L", "bot-l": "L",
    "wr": "R", "cr": "R", "why-w": "R", "why-c": "R", "why-d": "R",
    "ff-r": "R", "ff-r-why": "R", "bot-r": "R",
    "or-r": "R", "plus-r": "R", "or-r-why": "R",
    "and-r": "R", "with-r": "R", "with-r-why": "R",
    "tensor-r": "R", "par-r": "R", "neg-r": "R",
    "c-imp-r": "R", "i-imp-r-why": "R", "cl-imp-r-bang": "R", "u-imp-r": "R",
    "bang-r-why": "R", "why-bang-r": "R", "bang-r-bang": "R",
    "one-r": "R", "tt-r": "R", "top-r": "R",
    "id": "both", "dist": "both",
}

# per-premise operand geometry: (antecedent-end block, succedent-head block)
_OPERANDS: dict[str, tuple[tuple[int, int], ...]] = {
    "wl": ((0, 0),), "wr": ((0, 0),), "bang-w": ((0, 0),), "why-w": ((0, 0),),
    "cl": ((2, 0),), "bang-c": ((2, 0),), "cr": ((0, 2),), "why-c": ((0, 2),),
    "bang-d": ((1, 0),), "why-d": ((0, 1),),
    "why-l-bang": ((1, 0),), "bang-why-l": ((1, 0),), "why-l-why": ((1, 0),),
    "bang-r-why": ((0, 1),), "why-bang-r": ((0, 1),), "bang-r-bang": ((0, 1),),
    "tt-l": ((0, 0),), "top-l": ((0, 0),), "tt-l-bang": ((0, 0),),
    "ff-r": ((0, 0),), "ff-r-why": ((0, 0),), "bot-r": ((0, 0),),
    "and-l": ((1, 0),), "with-l": ((1, 0),), "and-l-bang": ((1, 0),),
    "or-r": ((0, 1),), "plus-r": ((0, 1),), "or-r-why": ((0, 1),),
    "and-r": ((0, 1), (0, 1)), "with-r": ((0, 1), (0, 1)), "with-r-why": ((0, 1), (0, 1)),
    "or-l": ((1, 0), (1, 0)), "plus-l": ((1, 0), (1, 0)), "plus-l-bang": ((1, 0), (1, 0)),
    "tensor-l": ((2, 0),), "par-r": ((0, 2),),
    "tensor-r": ((0, 1), (0, 1)), "par-l": ((1, 0), (1, 0)),
    "neg-l": ((0, 1),), "neg-r": ((1, 0),),
    "c-imp-l": ((0, 1), (1, 0)), "c-imp-r": ((1, 1),),
    "i-imp-l-why": ((1, 0), (0, 1)), "i-imp-r-why": ((1, 1),),
    "cl-imp-l-bang": ((1, 0), (0, 1)), "cl-imp-r-bang": ((1, 1),),
    "u-imp-l": ((0, 1), (1, 0)), "u-imp-r": ((1, 1),),
}


def operand_geometry(core: Proof, k: int) -> tuple[int, int]:
    r = core.rule
    if r in CUT_KINDS:
        _, orient = CUT_KINDS[core.rule]
        n = cut_n(core)
        if orient == "L":
            return (0, 1) if k == 0 else (n, 0)
        return (0, n) if k == 0 else (1, 0)
    geo = _OPERANDS.get(r)
    if geo is None or k >= len(geo):
        raise NoCase("operand-geometry", f"no operand geometry for {r} premise {k}")
    return geo[k]
