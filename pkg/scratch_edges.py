"""Smoke test for the edge translators."""
from seqcalc.calculi.check import check_proof, end_sequent
from seqcalc.calculi.proof import parse_proof, print_proof
from seqcalc.calculi.sequent import Sequent, print_sequent
from seqcalc.syntax import Unary, parse_formula
from seqcalc.translations.edges import EDGES, translate_formula, translate_proof

LEM = "(cr (or-r :i 2 :intro ((~ X) or X) (xr :at 0 (or-r :i 1 :intro ((~ X) or X) (c-imp-r (ff-r (id X)))))))"

# X, X ==> Y |- Y via the shared-context implication left rule
MP = "(c-imp-l (xr :at 0 (wr :intro Y (id X))) (xl :at 0 (wl :intro X (id Y))))"

# a proof exercising and/or/tt/ff/cut in one tree:
#   tt, X and Y |- (X or ff)
BIG = (
    "(cut"
    " (tt-l (and-l :i 1 :intro (X and Y) (id X)))"
    " (or-r :i 1 :intro (X or ff) (id X)))"
)

LJ_PIECE = "(i-imp-r-why (with-l :i 1 :intro (X with Y) (id X)))"  # |- (X with Y) => X
LLJ_PIECE = "(u-imp-r (tensor-l (tensor-r (id X) (id Y))))"  # |- (X tensor Y) -o (X tensor Y)


def image_of(s: Sequent, edge: str) -> Sequent:
    src, tgt = EDGES[edge]
    ante = tuple(translate_formula(f, edge) for f in s.ante)
    succ = tuple(translate_formula(f, edge) for f in s.succ)
    if edge in ("lk-clc",):
        ante = tuple(Unary("!", f) for f in ante)
    if edge in ("lk-inc",):
        succ = tuple(Unary("?", f) for f in succ)
    if edge in ("inc-ilc",):
        ante = tuple(Unary("!", f) for f in ante)
    if edge in ("clc-ilc",):
        succ = tuple(Unary("?", f) for f in succ)
    if edge in ("lk-ilc-n", "lk-ilc-v"):
        ante = tuple(Unary("!", f) for f in ante)
        succ = tuple(Unary("?", f) for f in succ)
    return Sequent(ante, succ)


def try_edge(name: str, text: str, logic: str, edge: str) -> None:
    src_cal, tgt_cal = EDGES[edge]
    p = parse_proof(text, logic)
    rep = check_proof(p, src_cal)
    assert rep.ok, f"{name}: source fails in {src_cal}: {rep.violation}"
    q = translate_proof(p, edge)
    rep2 = check_proof(q, tgt_cal)
    if not rep2.ok:
        print(f"FAIL {name} along {edge}: {rep2.violation}")
        print(print_proof(q))
        return
    want = image_of(rep.end_sequent, edge)
    got = rep2.end_sequent
    if want != got:
        print(f"FAIL {name} along {edge}: end sequent mismatch")
        print("  want:", print_sequent(want))
        print("  got: ", print_sequent(got))
        return
    print(f"ok   {name:8s} {edge:10s} -> {print_sequent(got)}")


for nm, txt in [("lem", LEM), ("mp", MP), ("big", BIG)]:
    for edge in ("lk-inc", "lk-clc", "lk-ilc-n", "lk-ilc-v"):
        try_edge(nm, txt, "cl", edge)

try_edge("lj", LJ_PIECE, "il", "lj-inc")
try_edge("llj", LLJ_PIECE, "ill", "llj-ilc")
