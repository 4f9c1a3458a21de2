import time

from seqcalc.calculi.check import check_proof
from seqcalc.calculi.proof import parse_proof, print_proof
from seqcalc.translations.normalize import commute_check, permutation_normalize
from seqcalc.translations.edges import translate_proof

CASES = {
    "id": "(id X)",
    "orr": "(or-r :i 1 :intro (X or Y) (id X))",
    "wl": "(wl :intro Y (id X))",
    "cl2": "(cl (xl :at 0 (wl :intro X (id X))))",
    "lem": "(cr (or-r :i 2 :intro ((~ X) or X) (xr :at 0 (or-r :i 1 :intro ((~ X) or X) (c-imp-r (ff-r (id X)))))))",
    "mp": "(c-imp-l (xr :at 0 (wr :intro Y (id X))) (xl :at 0 (wl :intro X (id Y))))",
    "cut": "(cut (id X) (id X))",
    "ttl": "(tt-l (id X))",
    "andl": "(and-l :i 1 :intro (X and Y) (id X))",
    "big": "(cut (tt-l (and-l :i 2 :intro (Y and X) (id X))) (or-r :i 1 :intro (X or (ff and Y)) (id X)))",
    "nested-imp": "(c-imp-l (xr :at 0 (wr :intro Z (c-imp-l (xr :at 0 (wr :intro Y (id X))) (xl :at 0 (wl :intro X (id Y)))))) (xl :at 1 (xl :at 0 (wl :intro (X ==> Y) (wl :intro X (id Z))))))",
}

for name, text in CASES.items():
    p = parse_proof(text)
    rep = check_proof(p, "lk")
    assert rep.ok, f"{name}: source does not check: {rep.violation}"
    t0 = time.time()
    try:
        r = commute_check(p)
    except Exception as e:  # noqa: BLE001
        print(f"ERR  {name:<11} {type(e).__name__}: {e}")
        continue
    dt = time.time() - t0
    if r.ok:
        print(f"ok   {name:<11} ({dt:.2f}s)")
    else:
        print(f"FAIL {name:<11} first diff at {r.path}")
        ln = r.left
        rn = r.right
        for k in r.path:
            ln = ln.premises[k]
            rn = rn.premises[k]
        print("  n-route:", print_proof(ln)[:220])
        print("  v-route:", print_proof(rn)[:220])
