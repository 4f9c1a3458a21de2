"""Forward random proof generators shared by the fuzz suites.

Proofs are grown leaf-up: start from axioms, repeatedly pick a rule and
premises from a pool, and keep the candidate only when the calculus rule
function accepts it. Every emitted proof therefore checks by
construction. `splice_cut` then joins pool entries with a cut of the
calculus' admissible shape, falling back to weakening- or unit-backed
premises when no natural match exists.
"""

from __future__ import annotations

import random
from typing import Callable

from seqcalc.calculi import rules as R
from seqcalc.calculi.check import CALCULI, check_proof, end_sequent, proof_depth
from seqcalc.calculi.permute import move_in_left, move_in_right
from seqcalc.calculi.proof import Proof
from seqcalc.calculi.sequent import Sequent
from seqcalc.calculi.rules import is_bang, is_why
from seqcalc.syntax import Binary, Const, Formula, Unary, Var

Entry = tuple[Proof, Sequent, int]


def try_rule(calculus: str, node: Proof, prem: tuple[Sequent, ...]) -> Sequent | None:
    fn = CALCULI[calculus].rules.get(node.rule)
    if fn is None:
        return None
    try:
        concl, _flow = fn(node, prem)
    except R.RuleError:
        return None
    return concl


# ---------------------------------------------------------------------------
# classical generator (criteria on translation edges and permutation search)

_CL_ATOMS = (Var("X"), Var("Y"), Const("tt"), Const("ff"))


def rand_cl_formula(rng: random.Random, depth: int = 2) -> Formula:
    if depth == 0 or rng.random() < 0.4:
        return rng.choice(_CL_ATOMS)
    op = rng.choice(("and", "or", "==>"))
    return Binary(op, rand_cl_formula(rng, depth - 1), rand_cl_formula(rng, depth - 1))


def _wr(f: Formula, p: Proof) -> Proof:
    return Proof("wr", premises=(p,), intro=f)


def _wl(f: Formula, p: Proof) -> Proof:
    return Proof("wl", premises=(p,), intro=f)


def _grow_lk(rng: random.Random, p: Proof, s: Sequent) -> Proof | None:
    k = rng.randrange(12)
    f = rand_cl_formula(rng)
    if k == 0:
        return _wl(f, p)
    if k == 1:
        return _wr(f, p)
    if k == 2 and len(s.ante) >= 2:
        return Proof("xl", premises=(p,), at=rng.randrange(len(s.ante) - 1))
    if k == 3 and len(s.succ) >= 2:
        return Proof("xr", premises=(p,), at=rng.randrange(len(s.succ) - 1))
    if k == 4 and len(s.ante) >= 2 and s.ante[-1] == s.ante[-2]:
        return Proof("cl", premises=(p,))
    if k == 5 and len(s.succ) >= 2 and s.succ[0] == s.succ[1]:
        return Proof("cr", premises=(p,))
    if k == 6:
        return Proof("tt-l", premises=(p,))
    if k == 7:
        return Proof("ff-r", premises=(p,))
    if k == 8 and s.ante:
        a = s.ante[-1]
        i = rng.choice((1, 2))
        intro = Binary("and", a, f) if i == 1 else Binary("and", f, a)
        return Proof("and-l", premises=(p,), i=i, intro=intro)
    if k == 9 and s.succ:
        a = s.succ[0]
        i = rng.choice((1, 2))
        intro = Binary("or", a, f) if i == 1 else Binary("or", f, a)
        return Proof("or-r", premises=(p,), i=i, intro=intro)
    if k == 10 and s.ante and s.succ:
        return Proof("c-imp-r", premises=(p,))
    if k == 11:
        # two-premise rules over a shared subproof, contexts split by weakening
        g = rand_cl_formula(rng)
        which = rng.choice(("and-r", "or-l", "c-imp-l"))
        if which == "and-r":
            return Proof("and-r", premises=(_wr(f, p), _wr(g, p)))
        if which == "or-l":
            return Proof("or-l", premises=(_wl(f, p), _wl(g, p)))
        return Proof("c-imp-l", premises=(_wr(f, p), _wl(g, p)))
    return None


def rand_lk_proof(rng: random.Random, max_depth: int = 8) -> Proof:
    f = rng.choice(_CL_ATOMS)
    p: Proof = rng.choice((Proof("id", formula=f), Proof("tt-r"), Proof("ff-l")))
    for _ in range(rng.randrange(2, 12)):
        if proof_depth(p) >= max_depth - 1:
            break
        s = end_sequent(p, "lk")
        q = _grow_lk(rng, p, s)
        if q is None or proof_depth(q) > max_depth:
            continue
        p = q
    return p


def lk_cut_compose(rng: random.Random, a: Proof, b: Proof) -> Proof:
    f = rand_cl_formula(rng)
    return Proof("cut", premises=(_wr(f, a), _wl(f, b)))


# ---------------------------------------------------------------------------
# linear-family generators

class Gen:
    """Pool-based forward generator for one calculus."""

    calculus: str
    atoms: tuple[Formula, ...]
    binops: tuple[str, ...]
    marks: tuple[str, ...]

    def __init__(self, rng: random.Random) -> None:
        self.rng = rng

    def formula(self, depth: int = 2) -> Formula:
        rng = self.rng
        if depth == 0 or rng.random() < 0.45:
            f: Formula = rng.choice(self.atoms)
        else:
            r = rng.random()
            if r < 0.25 and self.marks:
                return Unary(rng.choice(self.marks), self.formula(depth - 1))
            op = rng.choice(self.binops)
            return Binary(op, self.formula(depth - 1), self.formula(depth - 1))
        if rng.random() < 0.2 and self.marks:
            f = Unary(rng.choice(self.marks), f)
        return f

    def leaves(self) -> list[Proof]:
        raise NotImplementedError

    def propose(self, pool: list[Entry]) -> tuple[Proof, tuple[Sequent, ...], int] | None:
        raise NotImplementedError

    def seed_pool(self, n: int = 4) -> list[Entry]:
        pool: list[Entry] = []
        while len(pool) < n:
            node = self.rng.choice(self.leaves())
            s = try_rule(self.calculus, node, ())
            if s is not None:
                pool.append((node, s, 1))
        return pool

    def grow(self, pool: list[Entry], steps: int, max_depth: int = 9) -> list[Entry]:
        for _ in range(steps):
            cand = self.propose(pool)
            if cand is None:
                continue
            node, pseqs, d = cand
            if d > max_depth:
                continue
            s = try_rule(self.calculus, node, pseqs)
            if s is None:
                continue
            pool.append((node, s, d))
        return pool

    def pick(self, pool: list[Entry]) -> Entry:
        return self.rng.choice(pool)

    def proof(self, steps: int = 24, max_depth: int = 9) -> tuple[Proof, Sequent]:
        pool = self.grow(self.seed_pool(), steps, max_depth)
        node, s, _ = pool[-1]
        return node, s


class IlcGen(Gen):
    calculus = "ilc"
    atoms = (Var("X"), Var("Y"), Const("top"), Const("bot"), Const("1"), Const("0"))
    binops = ("tensor", "par", "with", "plus")
    marks = ("!", "?", "neg")

    def leaves(self) -> list[Proof]:
        f = self.formula(1)
        ctx = tuple(self.formula(1) for _ in range(self.rng.randrange(2)))
        return [
            Proof("id", formula=f),
            Proof("top-r"),
            Proof("bot-l"),
            Proof("one-r", contexts=(ctx, ())),
            Proof("zero-l", contexts=(ctx, ())),
        ]

    def propose(self, pool: list[Entry]) -> tuple[Proof, tuple[Sequent, ...], int] | None:
        rng = self.rng
        p, s, d = self.pick(pool)
        k = rng.randrange(20)
        f = self.formula()
        if k == 0 and len(s.ante) >= 2:
            node = Proof("xl", premises=(p,), at=rng.randrange(len(s.ante) - 1))
        elif k == 1 and len(s.succ) >= 2:
            node = Proof("xr", premises=(p,), at=rng.randrange(len(s.succ) - 1))
        elif k == 2:
            node = Proof("bang-w", premises=(p,), intro=Unary("!", f))
        elif k == 3:
            node = Proof("why-w", premises=(p,), intro=Unary("?", f))
        elif k == 4 and len(s.ante) >= 2 and s.ante[-1] == s.ante[-2]:
            node = Proof("bang-c", premises=(p,))
        elif k == 5 and len(s.succ) >= 2 and s.succ[0] == s.succ[1]:
            node = Proof("why-c", premises=(p,))
        elif k == 6 and s.ante:
            node = Proof("bang-d", premises=(p,))
        elif k == 7 and s.succ:
            node = Proof("why-d", premises=(p,))
        elif k == 8 and s.ante:
            node = Proof("why-l-bang", premises=(p,))
        elif k == 9 and s.succ:
            node = Proof("bang-r-why", premises=(p,))
        elif k == 10:
            node = Proof(rng.choice(("top-l", "bot-r")), premises=(p,))
        elif k == 11 and len(s.ante) >= 2:
            node = Proof("tensor-l", premises=(p,))
        elif k == 12 and len(s.succ) >= 2:
            node = Proof("par-r", premises=(p,))
        elif k == 13 and s.succ:
            node = Proof("neg-l", premises=(p,))
        elif k == 14 and s.ante:
            node = Proof("neg-r", premises=(p,))
        elif k == 15 and s.ante:
            a = s.ante[-1]
            i = rng.choice((1, 2))
            intro = Binary("with", a, f) if i == 1 else Binary("with", f, a)
            node = Proof("with-l", premises=(p,), i=i, intro=intro)
        elif k == 16 and s.succ:
            a = s.succ[0]
            i = rng.choice((1, 2))
            intro = Binary("plus", a, f) if i == 1 else Binary("plus", f, a)
            node = Proof("plus-r", premises=(p,), i=i, intro=intro)
        elif k == 17:
            q, t, dq = self.pick(pool)
            if not (s.succ and t.succ):
                return None
            node = Proof("tensor-r", premises=(p, q))
            return node, (s, t), 1 + max(d, dq)
        elif k == 18:
            q, t, dq = self.pick(pool)
            if not (s.ante and t.ante):
                return None
            node = Proof("par-l", premises=(p, q))
            return node, (s, t), 1 + max(d, dq)
        elif k == 19:
            if not s.succ if rng.random() < 0.5 else not s.ante:
                return None
            rule = "with-r" if rng.random() < 0.5 else "plus-l"
            node = Proof(rule, premises=(p, p))
            return node, (s, s), 1 + d
        else:
            return None
        return node, (s,), 1 + d


class IlcRhoGen(IlcGen):
    calculus = "ilc-rho"

    def propose(self, pool: list[Entry]) -> tuple[Proof, tuple[Sequent, ...], int] | None:
        rng = self.rng
        if rng.random() < 0.15:
            p, s, d = self.pick(pool)
            rule = rng.choice(("bang-why-l", "why-bang-r"))
            if rule == "bang-why-l" and not s.ante:
                return None
            if rule == "why-bang-r" and not s.succ:
                return None
            return Proof(rule, premises=(p,)), (s,), 1 + d
        return super().propose(pool)


class IncGen(Gen):
    calculus = "inc"
    atoms = (Var("X"), Var("Y"), Const("top"), Const("ff"))
    binops = ("with", "or", "=>")
    marks = ("?",)

    def leaves(self) -> list[Proof]:
        return [Proof("id", formula=self.formula(1)), Proof("top-r"), Proof("ff-l")]

    def propose(self, pool: list[Entry]) -> tuple[Proof, tuple[Sequent, ...], int] | None:
        rng = self.rng
        p, s, d = self.pick(pool)
        k = rng.randrange(16)
        f = self.formula()
        if k == 0 and len(s.ante) >= 2:
            node = Proof("xl", premises=(p,), at=rng.randrange(len(s.ante) - 1))
        elif k == 1 and len(s.succ) >= 2:
            node = Proof("xr", premises=(p,), at=rng.randrange(len(s.succ) - 1))
        elif k == 2:
            node = Proof("wl", premises=(p,), intro=f)
        elif k == 3:
            node = Proof("why-w", premises=(p,), intro=Unary("?", f))
        elif k == 4 and len(s.ante) >= 2 and s.ante[-1] == s.ante[-2]:
            node = Proof("cl", premises=(p,))
        elif k == 5 and len(s.succ) >= 2 and s.succ[0] == s.succ[1]:
            node = Proof("why-c", premises=(p,))
        elif k == 6 and s.succ:
            node = Proof("why-d", premises=(p,))
        elif k == 7 and s.ante:
            node = Proof("why-l-why", premises=(p,))
        elif k == 8:
            node = Proof("top-l", premises=(p,))
        elif k == 9:
            node = Proof("ff-r-why", premises=(p,))
        elif k == 10 and s.ante:
            a = s.ante[-1]
            i = rng.choice((1, 2))
            intro = Binary("with", a, f) if i == 1 else Binary("with", f, a)
            node = Proof("with-l", premises=(p,), i=i, intro=intro)
        elif k == 11 and s.succ:
            a = s.succ[0]
            i = rng.choice((1, 2))
            intro = Binary("or", a, f) if i == 1 else Binary("or", f, a)
            node = Proof("or-r-why", premises=(p,), i=i, intro=intro)
        elif k == 12 and s.ante and s.succ:
            node = Proof("i-imp-r-why", premises=(p,))
        elif k == 13 and s.ante:
            node = Proof("or-l", premises=(p, p))
            return node, (s, s), 1 + d
        elif k == 14 and s.succ:
            node = Proof("with-r-why", premises=(p, p))
            return node, (s, s), 1 + d
        elif k == 15:
            q, t, dq = self.pick(pool)
            if not (s.succ and t.ante):
                return None
            node = Proof("i-imp-l-why", premises=(p, q))
            return node, (s, t), 1 + max(d, dq)
        else:
            return None
        return node, (s,), 1 + d


class IncRhoGen(IncGen):
    calculus = "inc-rho"


class ClcGen(Gen):
    calculus = "clc"
    atoms = (Var("X"), Var("Y"), Const("tt"), Const("bot"))
    binops = ("and", "plus", "->>")
    marks = ("!",)

    def leaves(self) -> list[Proof]:
        return [Proof("id", formula=self.formula(1)), Proof("tt-r"), Proof("bot-l")]

    def propose(self, pool: list[Entry]) -> tuple[Proof, tuple[Sequent, ...], int] | None:
        rng = self.rng
        p, s, d = self.pick(pool)
        k = rng.randrange(16)
        f = self.formula()
        if k == 0 and len(s.ante) >= 2:
            node = Proof("xl", premises=(p,), at=rng.randrange(len(s.ante) - 1))
        elif k == 1 and len(s.succ) >= 2:
            node = Proof("xr", premises=(p,), at=rng.randrange(len(s.succ) - 1))
        elif k == 2:
            node = Proof("wr", premises=(p,), intro=f)
        elif k == 3:
            node = Proof("bang-w", premises=(p,), intro=Unary("!", f))
        elif k == 4 and len(s.ante) >= 2 and s.ante[-1] == s.ante[-2]:
            node = Proof("bang-c", premises=(p,))
        elif k == 5 and len(s.succ) >= 2 and s.succ[0] == s.succ[1]:
            node = Proof("cr", premises=(p,))
        elif k == 6 and s.ante:
            node = Proof("bang-d", premises=(p,))
        elif k == 7 and s.succ:
            node = Proof("bang-r-bang", premises=(p,))
        elif k == 8:
            node = Proof("tt-l-bang", premises=(p,))
        elif k == 9:
            node = Proof("bot-r", premises=(p,))
        elif k == 10 and s.ante:
            a = s.ante[-1]
            i = rng.choice((1, 2))
            intro = Binary("and", a, f) if i == 1 else Binary("and", f, a)
            node = Proof("and-l-bang", premises=(p,), i=i, intro=intro)
        elif k == 11 and s.succ:
            a = s.succ[0]
            i = rng.choice((1, 2))
            intro = Binary("plus", a, f) if i == 1 else Binary("plus", f, a)
            node = Proof("plus-r", premises=(p,), i=i, intro=intro)
        elif k == 12 and s.ante and s.succ:
            node = Proof("cl-imp-r-bang", premises=(p,))
        elif k == 13 and s.succ:
            node = Proof("and-r", premises=(p, p))
            return node, (s, s), 1 + d
        elif k == 14 and s.ante:
            node = Proof("plus-l-bang", premises=(p, p))
            return node, (s, s), 1 + d
        elif k == 15:
            q, t, dq = self.pick(pool)
            if not (s.succ and t.ante):
                return None
            node = Proof("cl-imp-l-bang", premises=(p, q))
            return node, (s, t), 1 + max(d, dq)
        else:
            return None
        return node, (s,), 1 + d


class ClcRhoGen(ClcGen):
    calculus = "clc-rho"


GENS: dict[str, type[Gen]] = {
    "ilc": IlcGen,
    "ilc-rho": IlcRhoGen,
    "inc": IncGen,
    "inc-rho": IncRhoGen,
    "clc": ClcGen,
    "clc-rho": ClcRhoGen,
}


# ---------------------------------------------------------------------------
# cut splicing

def _matches_plain(pool: list[Entry]) -> list[tuple[Entry, int, Entry, int]]:
    out = []
    for ea in pool:
        for j, f in enumerate(ea[1].succ):
            for eb in pool:
                for i, g in enumerate(eb[1].ante):
                    if f == g:
                        out.append((ea, j, eb, i))
    return out


def _matches_why(pool: list[Entry]) -> list[tuple[Entry, int, Entry, int]]:
    out = []
    lefts = [e for e in pool if e[1].succ and all(is_why(x) for x in e[1].succ)]
    rights = [e for e in pool if all(is_why(x) for x in e[1].succ) and e[1].ante]
    for ea in lefts:
        for j, f in enumerate(ea[1].succ):
            for eb in rights:
                for i, g in enumerate(eb[1].ante):
                    if f == Unary("?", g):
                        out.append((ea, j, eb, i))
    return out


def _matches_bang(pool: list[Entry]) -> list[tuple[Entry, int, Entry, int]]:
    out = []
    lefts = [e for e in pool if e[1].succ and all(is_bang(x) for x in e[1].ante)]
    rights = [e for e in pool if e[1].ante and all(is_bang(x) for x in e[1].ante)]
    for ea in lefts:
        for j, f in enumerate(ea[1].succ):
            for eb in rights:
                for i, g in enumerate(eb[1].ante):
                    if g == Unary("!", f):
                        out.append((ea, j, eb, i))
    return out


_CUT_RULE = {"ilc": "cut", "ilc-rho": "cut", "ilc-delta": "cut",
             "inc": "cut-why", "inc-rho": "cut-why",
             "clc": "cut-bang", "clc-rho": "cut-bang"}
_MATCHER: dict[str, Callable[[list[Entry]], list]] = {
    "cut": _matches_plain, "cut-why": _matches_why, "cut-bang": _matches_bang,
}


def _fallback_pair(gen: Gen) -> tuple[Entry, int, Entry, int] | None:
    """Manufacture a guaranteed cut match from fresh leaves."""
    rule = _CUT_RULE[gen.calculus]
    cal = gen.calculus
    b = gen.formula(1)
    if rule == "cut":
        left = Proof("zero-l", contexts=((), (b,)))
        right = Proof("one-r", contexts=((b,), ()))
        sl = try_rule(cal, left, ())
        sr = try_rule(cal, right, ())
        if sl is None or sr is None:
            return None
        return (left, sl, 1), 0, (right, sr, 1), 0
    if rule == "cut-why":
        base = Proof("ff-l")
        sb = try_rule(cal, base, ())
        left = Proof("why-w", premises=(base,), intro=Unary("?", b))
        right = Proof("wl", premises=(base,), intro=b)
        sl = try_rule(cal, left, (sb,))
        sr = try_rule(cal, right, (sb,))
        if sl is None or sr is None:
            return None
        return (left, sl, 2), 0, (right, sr, 2), len(sr.ante) - 1
    base = Proof("tt-r")
    sb = try_rule(cal, base, ())
    left = Proof("wr", premises=(base,), intro=b)
    right = Proof("bang-w", premises=(base,), intro=Unary("!", b))
    sl = try_rule(cal, left, (sb,))
    sr = try_rule(cal, right, (sb,))
    if sl is None or sr is None:
        return None
    return (left, sl, 2), 0, (right, sr, 2), len(sr.ante) - 1


def splice_cut(gen: Gen, pool: list[Entry]) -> Entry | None:
    """Join two pool entries (or a manufactured pair) with a cut."""
    rule = _CUT_RULE[gen.calculus]
    matches = _MATCHER[rule](pool)
    picked = gen.rng.choice(matches) if matches else _fallback_pair(gen)
    if picked is None:
        return None
    (a, sa, da), j, (b, sb, db), i = picked
    left = move_in_right(a, j, 0)
    right = move_in_left(b, i, len(sb.ante) - 1)
    node = Proof(rule, premises=(left, right))
    rep = check_proof(node, gen.calculus)
    if not rep.ok:
        return None
    return node, rep.end_sequent, 2 + max(da, db)


def rand_cut_proof(calculus: str, rng: random.Random,
                   steps: int = 22, cuts: int = 2,
                   max_depth: int = 9) -> tuple[Proof, Sequent] | None:
    """A checked proof of the calculus containing at least one cut."""
    gen = GENS[calculus](rng)
    pool = gen.grow(gen.seed_pool(), steps, max_depth)
    entry = None
    for _ in range(cuts):
        got = splice_cut(gen, pool)
        if got is None:
            continue
        entry = got
        pool.append(got)
        # grow a little on top so cuts sit under other rules too
        pool = gen.grow(pool, 4, max_depth + 4)
    if entry is None:
        return None
    # prefer the most recent descendant of the cut if growth kept going
    node, s, _ = pool[-1]
    from seqcalc.cutelim.multicut import count_cuts
    if count_cuts(node) == 0:
        node, s, _ = entry
    return node, s
