"""Randomized forward LK proof generator hammering all four LK edges."""
import random

from seqcalc.calculi.check import check_proof
from seqcalc.calculi.proof import Proof, print_proof
from seqcalc.calculi.check import proof_depth
from seqcalc.calculi.sequent import Sequent, print_sequent
from seqcalc.syntax import Binary, Const, Formula, Var
from seqcalc.translations.edges import EDGES, translate_formula, translate_proof
from seqcalc.calculi.check import end_sequent

rng = random.Random(20260816)

ATOMS = [Var("X"), Var("Y"), Const("tt"), Const("ff")]


def rand_formula(depth: int = 2) -> Formula:
    if depth == 0 or rng.random() < 0.4:
        return rng.choice(ATOMS)
    op = rng.choice(["and", "or", "==>"])
    return Binary(op, rand_formula(depth - 1), rand_formula(depth - 1))


def wr(f: Formula, p: Proof) -> Proof:
    return Proof("wr", premises=(p,), intro=f)


def wl(f: Formula, p: Proof) -> Proof:
    return Proof("wl", premises=(p,), intro=f)


def grow(p: Proof, s: Sequent) -> Proof | None:
    k = rng.randrange(14)
    f = rand_formula()
    if k == 0:
        return wl(f, p)
    if k == 1:
        return wr(f, p)
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
        i = rng.choice([1, 2])
        intro = Binary("and", a, f) if i == 1 else Binary("and", f, a)
        return Proof("and-l", premises=(p,), i=i, intro=intro)
    if k == 9 and s.succ:
        a = s.succ[0]
        i = rng.choice([1, 2])
        intro = Binary("or", a, f) if i == 1 else Binary("or", f, a)
        return Proof("or-r", premises=(p,), i=i, intro=intro)
    if k == 10 and s.ante and s.succ:
        return Proof("c-imp-r", premises=(p,))
    if k == 11:  # weakening-backed and-r / or-l / c-imp-l
        g = rand_formula()
        which = rng.choice(["and-r", "or-l", "c-imp-l"])
        if which == "and-r":
            return Proof("and-r", premises=(wr(f, p), wr(g, p)))
        if which == "or-l":
            return Proof("or-l", premises=(wl(f, p), wl(g, p)))
        return Proof("c-imp-l", premises=(wr(f, p), wl(g, p)))
    if k == 12 and s.succ and s.ante and s.succ[0] == s.ante[-1]:
        pass  # genuine shared pairs arise rarely; covered by k == 11
    return None


def rand_proof(max_depth: int = 8) -> Proof:
    f = rng.choice(ATOMS)
    p: Proof = rng.choice(
        [Proof("id", formula=f), Proof("tt-r"), Proof("ff-l")]
    )
    for _ in range(rng.randrange(2, 12)):
        if proof_depth(p) >= max_depth - 1:
            break
        s = end_sequent(p, "lk")
        q = grow(p, s)
        if q is None:
            continue
        if proof_depth(q) > max_depth:
            continue
        p = q
    return p


def cut_compose(a: Proof, b: Proof) -> Proof:
    f = rand_formula()
    return Proof("cut", premises=(wr(f, a), wl(f, b)))


def image_of(s: Sequent, edge: str):
    from seqcalc.syntax import Unary

    ante = tuple(translate_formula(x, edge) for x in s.ante)
    succ = tuple(translate_formula(x, edge) for x in s.succ)
    if edge in ("lk-clc", "lk-ilc-n", "lk-ilc-v", "inc-ilc"):
        ante = tuple(Unary("!", x) for x in ante)
    if edge in ("lk-inc", "lk-ilc-n", "lk-ilc-v", "clc-ilc"):
        succ = tuple(Unary("?", x) for x in succ)
    return Sequent(ante, succ)


fails = 0
for trial in range(300):
    p = rand_proof()
    if trial % 3 == 2:
        p = cut_compose(p, rand_proof(6))
    rep = check_proof(p, "lk")
    assert rep.ok, f"generator bug: {rep.violation}\n{print_proof(p)}"
    for edge in ("lk-inc", "lk-clc", "lk-ilc-n", "lk-ilc-v"):
        q = translate_proof(p, edge, checked=True)
        rep2 = check_proof(q, EDGES[edge][1])
        if not rep2.ok:
            fails += 1
            print(f"FAIL {trial} {edge}: {rep2.violation}")
            print("  source:", print_sequent(rep.end_sequent))
            if fails > 3:
                raise SystemExit(1)
            continue
        want = image_of(rep.end_sequent, edge)
        if want != rep2.end_sequent:
            fails += 1
            print(f"MISMATCH {trial} {edge}")
            print("  want:", print_sequent(want))
            print("  got: ", print_sequent(rep2.end_sequent))
            if fails > 3:
                raise SystemExit(1)

print(f"done: 300 proofs x 4 edges, {fails} failures")
