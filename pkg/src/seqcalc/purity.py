"""Occurrence ancestry, pure occurrences and tractable proofs.

An occurrence is a formula position in a node's computed sequent. Its
constituents are the occurrences above it that flow into it: context
formulas positionally, principal formulas from their components, both
contracted copies, and (at axiom leaves) the twin occurrence on the
other side. Purity of an occurrence demands that no weakening or
contraction of the calculus family acts on its constituents and that no
subformula of it appears twice on one side of any sequent in its
subtree. Tractability restricts every cut so that at least one of the
two cut occurrences is pure; the rho calculi admit exactly the
tractable proofs.
"""

from __future__ import annotations

from dataclasses import dataclass

from seqcalc.calculi import rules as R
from seqcalc.calculi.check import CALCULI
from seqcalc.calculi.proof import Proof
from seqcalc.calculi.sequent import Sequent
from seqcalc.syntax import Formula, subformulas


@dataclass(frozen=True)
class Occurrence:
    path: tuple[int, ...]
    side: str  # "L" or "R"
    index: int


@dataclass(frozen=True)
class TractabilityReport:
    ok: bool
    path: tuple[int, ...] | None = None
    clause: int | None = None
    message: str = ""


# weakening/contraction rules whose action breaks purity, per family
_SWAP_SETS = {
    "ilc": frozenset({"bang-w", "bang-c", "why-w", "why-c"}),
    "inc": frozenset({"wl", "cl", "why-w", "why-c"}),
    "clc": frozenset({"bang-w", "bang-c", "wr", "cr"}),
    "lk": frozenset({"wl", "cl", "wr", "cr"}),
}

_FAMILY = {
    "ilc": "ilc", "ilc-iota": "ilc", "ilc-rho": "ilc",
    "inc": "inc", "inc-rho": "inc",
    "clc": "clc", "clc-rho": "clc",
    "lk": "lk", "lk-rho": "lk",
}

_CUT_RULE = {"ilc": "cut", "inc": "cut-why", "clc": "cut-bang", "lk": "cut"}


def _family(calculus: str) -> str:
    if calculus not in _FAMILY:
        raise ValueError(f"no purity definition for calculus {calculus!r}")
    return _FAMILY[calculus]


@dataclass
class _Annot:
    rule: str
    seq: Sequent
    flow: R.Flow
    children: list["_Annot"]


def _annotate(p: Proof, calculus: str) -> _Annot:
    # generalized cuts appear in mid-elimination trees, so the evaluator
    # accepts them and relaxes marked-context side conditions
    table = dict(CALCULI[calculus].rules)
    table.update(R.MULTICUT_FNS)

    def walk(node: Proof) -> _Annot:
        children = [walk(q) for q in node.premises]
        if node.rule not in table:
            raise ValueError(f"rule {node.rule} is not evaluable in {calculus}")
        with R.lenient():
            seq, flow = table[node.rule](node, tuple(c.seq for c in children))
        return _Annot(node.rule, seq, flow, children)

    return walk(p)


def _node_at(root: _Annot, path: tuple[int, ...]) -> _Annot:
    node = root
    for k in path:
        node = node.children[k]
    return node


def _constituents(root: _Annot, o: Occurrence) -> set[Occurrence]:
    seen: set[Occurrence] = set()
    queue = [o]
    while queue:
        cur = queue.pop()
        if cur in seen:
            continue
        seen.add(cur)
        node = _node_at(root, cur.path)
        if cur.index >= len(node.seq.ante if cur.side == "L" else node.seq.succ):
            raise ValueError(f"occurrence {cur} out of range")
        for prem_idx, side, idx in node.flow.get((cur.side, cur.index), ()):
            queue.append(Occurrence(cur.path + (prem_idx,), side, idx))
        if node.rule in ("id", "dist") and not node.children:
            twin_side = "R" if cur.side == "L" else "L"
            queue.append(Occurrence(cur.path, twin_side, cur.index))
    return seen


def constituents(p: Proof, calculus: str, o: Occurrence) -> set[Occurrence]:
    """All occurrences in the subtree of o.path that flow into o."""
    return _constituents(_annotate(p, calculus), o)


def _walk_paths(node: _Annot, path: tuple[int, ...]):
    yield path, node
    for k, child in enumerate(node.children):
        yield from _walk_paths(child, path + (k,))


def _principal_of_structural(node: _Annot) -> tuple[str, int]:
    # weakening and contraction act at the antecedent end or succedent head
    if node.rule in ("wl", "bang-w", "cl", "bang-c"):
        return ("L", len(node.seq.ante) - 1)
    return ("R", 0)


def _is_pure(root: _Annot, o: Occurrence, swap_set: frozenset[str]) -> bool:
    node = _node_at(root, o.path)
    side_list = node.seq.ante if o.side == "L" else node.seq.succ
    if o.index >= len(side_list):
        raise ValueError(f"occurrence {o} out of range")
    a = side_list[o.index]
    subs = set(subformulas(a))

    # clause 2: no subformula of a occurs twice on one side of any
    # sequent in the subtree (counting every element, related or not)
    for _, m in _walk_paths(node, o.path):
        for side_formulas in (m.seq.ante, m.seq.succ):
            counted: dict[Formula, int] = {}
            for f in side_formulas:
                if f in subs:
                    counted[f] = counted.get(f, 0) + 1
                    if counted[f] > 1:
                        return False

    # clause 1: no swap-set rule acts on a constituent of o
    consts = _constituents(root, o)
    for path, m in _walk_paths(node, o.path):
        if m.rule in swap_set:
            pside, pidx = _principal_of_structural(m)
            if Occurrence(path, pside, pidx) in consts:
                return False
    return True


def is_pure(p: Proof, calculus: str, o: Occurrence) -> bool:
    """Purity of one occurrence per the calculus family's definition."""
    fam = _family(calculus)
    return _is_pure(_annotate(p, calculus), o, _SWAP_SETS[fam])


def is_tractable(p: Proof, calculus: str) -> TractabilityReport:
    """Tractability: clause 1 (no ?-over-! right promotion, linear family
    only) and clause 2 (each cut has a pure occurrence on some side)."""
    fam = _family(calculus)
    root = _annotate(p, calculus)
    swap_set = _SWAP_SETS[fam]
    cut_rule = _CUT_RULE[fam]

    for path, node in _walk_paths(root, ()):
        if fam == "ilc" and node.rule == "why-bang-r":
            return TractabilityReport(
                False, path, 1,
                "clause 1: the rule why-bang-r must not occur in a tractable proof",
            )

    for path, node in _walk_paths(root, ()):
        if node.rule != cut_rule:
            continue
        left_occ = Occurrence(path + (0,), "R", 0)
        right_occ = Occurrence(path + (1,), "L", len(node.children[1].seq.ante) - 1)
        if _is_pure(root, left_occ, swap_set) or _is_pure(root, right_occ, swap_set):
            continue
        return TractabilityReport(
            False, path, 2,
            f"clause 2: neither cut occurrence of this {cut_rule} is pure "
            "(weakening or contraction acts on constituents of both sides, "
            "or a subformula repeats on one side)",
        )
    return TractabilityReport(True)


def subformula_check(p: Proof, calculus: str) -> bool:
    """Every formula in every node is a subformula of the end sequent."""
    root = _annotate(p, calculus)
    closure: set[Formula] = set()
    for f in root.seq.ante + root.seq.succ:
        closure.update(subformulas(f))
    for _, node in _walk_paths(root, ()):
        for f in node.seq.ante + node.seq.succ:
            if f not in closure:
                return False
    return True
