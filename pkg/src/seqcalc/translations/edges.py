"""Proof translations along the square of calculi.

Four edges carry proofs between the corner calculi: two unlinearising
maps out of the classical corner (lk-inc and lk-clc) and two that land
in the full exponential calculus (inc-ilc and clc-ilc). The diagonal
edges lk-ilc-n and lk-ilc-v are the literal compositions through the
upper and lower intermediate corner respectively. Two further edges are
plain inclusions: llj-ilc (which desugars the linear arrow) and lj-inc
(identity on rules; plain cut has no image and is rejected).

Every translator is compositional: one clause per source rule, each
emitting a fixed target derivation over the translated premises. The
clauses that need a side derivation (branch selection, implication
left rules, promotion across the square) cut against a closed proof
built from the principal formula alone; those builders are shared with
the proof normalizer, which recognizes their shapes.
"""

from __future__ import annotations

from seqcalc.calculi.check import check_proof, end_sequent
from seqcalc.calculi.permute import (
    move_in_left,
    move_in_right,
    permute_left,
    permute_right,
)
from seqcalc.calculi.proof import Proof
from seqcalc.calculi.sequent import Sequent
from seqcalc.syntax import Binary, Const, Formula, Unary, Var


class TranslationError(Exception):
    pass


# edge name -> (source calculus, target calculus)
EDGES: dict[str, tuple[str, str]] = {
    "lk-inc": ("lk", "inc"),
    "inc-ilc": ("inc", "ilc-iota"),
    "lk-clc": ("lk", "clc"),
    "clc-ilc": ("clc", "ilc-iota"),
    "lk-ilc-n": ("lk", "ilc-iota"),
    "lk-ilc-v": ("lk", "ilc-iota"),
    "llj-ilc": ("llj", "ilc"),
    "lj-inc": ("lj", "inc"),
}


def _why(f: Formula) -> Formula:
    return Unary("?", f)


def _bang(f: Formula) -> Formula:
    return Unary("!", f)


def _arrow(a: Formula, b: Formula) -> Formula:
    # the derived linear implication: (neg a) par b
    return Binary("par", Unary("neg", a), b)


# ---------------------------------------------------------------------------
# formula maps


def _f_lk_inc(f: Formula) -> Formula:
    match f:
        case Var(_):
            return f
        case Const("tt"):
            return _why(Const("top"))
        case Const("ff"):
            return Const("ff")
        case Binary("and", a, b):
            return Binary("with", _why(_f_lk_inc(a)), _why(_f_lk_inc(b)))
        case Binary("or", a, b):
            return Binary("or", _f_lk_inc(a), _f_lk_inc(b))
        case Binary("==>", a, b):
            return Binary("=>", _f_lk_inc(a), _why(_f_lk_inc(b)))
    raise TranslationError(f"lk-inc cannot translate {f!r}")


def _f_inc_ilc(f: Formula) -> Formula:
    match f:
        case Var(_):
            return f
        case Const("top"):
            return f
        case Const("ff"):
            return _bang(Const("bot"))
        case Unary("?", a):
            return _why(_f_inc_ilc(a))
        case Binary("with", a, b):
            return Binary("with", _f_inc_ilc(a), _f_inc_ilc(b))
        case Binary("or", a, b):
            return Binary("plus", _bang(_f_inc_ilc(a)), _bang(_f_inc_ilc(b)))
        case Binary("=>", a, b):
            return _arrow(_bang(_f_inc_ilc(a)), _f_inc_ilc(b))
    raise TranslationError(f"inc-ilc cannot translate {f!r}")


def _f_lk_clc(f: Formula) -> Formula:
    match f:
        case Var(_):
            return f
        case Const("tt"):
            return f
        case Const("ff"):
            return _bang(Const("bot"))
        case Binary("and", a, b):
            return Binary("and", _f_lk_clc(a), _f_lk_clc(b))
        case Binary("or", a, b):
            return Binary("plus", _bang(_f_lk_clc(a)), _bang(_f_lk_clc(b)))
        case Binary("==>", a, b):
            return Binary("->>", _bang(_f_lk_clc(a)), _f_lk_clc(b))
    raise TranslationError(f"lk-clc cannot translate {f!r}")


def _f_clc_ilc(f: Formula) -> Formula:
    match f:
        case Var(_):
            return f
        case Const("tt"):
            return _why(Const("top"))
        case Const("bot"):
            return f
        case Unary("!", a):
            return _bang(_f_clc_ilc(a))
        case Binary("and", a, b):
            return Binary("with", _why(_f_clc_ilc(a)), _why(_f_clc_ilc(b)))
        case Binary("plus", a, b):
            return Binary("plus", _f_clc_ilc(a), _f_clc_ilc(b))
        case Binary("->>", a, b):
            return _arrow(_f_clc_ilc(a), _why(_f_clc_ilc(b)))
    raise TranslationError(f"clc-ilc cannot translate {f!r}")


def _f_llj_ilc(f: Formula) -> Formula:
    match f:
        case Var(_) | Const(_):
            return f
        case Unary("!", a):
            return _bang(_f_llj_ilc(a))
        case Binary("-o", a, b):
            return _arrow(_f_llj_ilc(a), _f_llj_ilc(b))
        case Binary(op, a, b) if op in ("tensor", "with", "plus"):
            return Binary(op, _f_llj_ilc(a), _f_llj_ilc(b))
    raise TranslationError(f"llj-ilc cannot translate {f!r}")


def _f_identity(f: Formula) -> Formula:
    return f


_FORMULA_MAPS = {
    "lk-inc": _f_lk_inc,
    "inc-ilc": _f_inc_ilc,
    "lk-clc": _f_lk_clc,
    "clc-ilc": _f_clc_ilc,
    "llj-ilc": _f_llj_ilc,
    "lj-inc": _f_identity,
}


def translate_formula(f: Formula, edge: str) -> Formula:
    """Map a source-language formula along the named edge."""
    if edge not in EDGES:
        raise TranslationError(f"unknown edge {edge!r}; choose one of {', '.join(EDGES)}")
    if edge == "lk-ilc-n":
        return translate_formula(translate_formula(f, "lk-inc"), "inc-ilc")
    if edge == "lk-ilc-v":
        return translate_formula(translate_formula(f, "lk-clc"), "clc-ilc")
    return _FORMULA_MAPS[edge](f)


# ---------------------------------------------------------------------------
# small proof-building helpers


def _id(f: Formula) -> Proof:
    return Proof("id", formula=f)


def _u(rule: str, p: Proof) -> Proof:
    return Proof(rule, premises=(p,))


def _b(rule: str, p1: Proof, p2: Proof) -> Proof:
    return Proof(rule, premises=(p1, p2))


def _w(rule: str, intro: Formula, p: Proof) -> Proof:
    return Proof(rule, premises=(p,), intro=intro)


def _pick(rule: str, i: int, intro: Formula, p: Proof) -> Proof:
    return Proof(rule, premises=(p,), i=i, intro=intro)


def _xl0(p: Proof) -> Proof:
    return Proof("xl", premises=(p,), at=0)


def _contract_left_pairs(p: Proof, d: int, tail: int, rule: str) -> Proof:
    """Fold an antecedent of shape a(d) ++ a(d) ++ t(tail) down to a ++ t.

    Contraction always acts on the last two antecedent positions, so each
    pair is first walked to the end by exchanges; a final permutation
    restores the original order.
    """
    if d == 0:
        return p
    tags: list[tuple[str, int]] = (
        [("a", i) for i in range(d)]
        + [("b", i) for i in range(d)]
        + [("t", j) for j in range(tail)]
    )
    for i in reversed(range(d)):
        ja = tags.index(("a", i))
        p = move_in_left(p, ja, len(tags) - 1)
        tags.append(tags.pop(ja))
        jb = tags.index(("b", i))
        p = move_in_left(p, jb, len(tags) - 1)
        tags.append(tags.pop(jb))
        p = _u(rule, p)
        tags = tags[:-2] + [("a", i)]
    target = [("a", i) for i in range(d)] + [("t", j) for j in range(tail)]
    return permute_left(p, [tags.index(x) for x in target])


def _contract_right_pairs(p: Proof, g: int, rule: str) -> Proof:
    """Fold a succedent of shape b(g) ++ b(g) down to b; dual helper."""
    if g == 0:
        return p
    tags: list[tuple[str, int]] = [("a", i) for i in range(g)] + [("b", i) for i in range(g)]
    for i in reversed(range(g)):
        jb = tags.index(("b", i))
        p = move_in_right(p, jb, 0)
        tags.insert(0, tags.pop(jb))
        ja = tags.index(("a", i))
        p = move_in_right(p, ja, 0)
        tags.insert(0, tags.pop(ja))
        p = _u(rule, p)
        tags = [("a", i)] + tags[2:]
    target = [("a", i) for i in range(g)]
    return permute_right(p, [tags.index(x) for x in target])


def _block_swap_left(p: Proof, first: int, second: int, tail: int) -> Proof:
    """Reorder an antecedent X(first) ++ Y(second) ++ T(tail) to Y ++ X ++ T."""
    if first == 0 or second == 0:
        return p
    perm = (
        list(range(first, first + second))
        + list(range(first))
        + list(range(first + second, first + second + tail))
    )
    return permute_left(p, perm)


def _block_swap_right(p: Proof, first: int, second: int) -> Proof:
    """Reorder a succedent X(first) ++ Y(second) to Y ++ X."""
    if first == 0 or second == 0:
        return p
    perm = list(range(first, first + second)) + list(range(first))
    return permute_right(p, perm)


# ---------------------------------------------------------------------------
# shared side-derivation builders
#
# The proof normalizer re-renders the images of the classical
# implication left rule, so the block builders take the premise
# images and all context widths as explicit arguments and live here
# where either module can instantiate them. cimpl_inc_block and
# cimpl_clc_block are the one-step images used by the lk-inc and
# lk-clc translators; the normalizer replays the second translation
# stage over them to reproduce the composite images exactly.


def cimpl_inc_block(a: Formula, b: Formula, d: int, g: int, t1: Proof, t2: Proof) -> Proof:
    """Image core of the classical implication left rule under lk-inc.

    a and b are the translated components (b carries its ?-mark), t1
    and t2 the translated premises with context widths d and g. The
    caller moves the principal from position 0 to position d.
    """
    side = _u(
        "why-d",
        _u(
            "i-imp-r-why",
            _u("why-l-why", _xl0(_b("i-imp-l-why", _id(b), _id(a)))),
        ),
    )
    main = _b("i-imp-l-why", _u("why-l-why", t2), t1)
    main = _contract_left_pairs(main, d, 1, "cl")
    main = _contract_right_pairs(main, g, "why-c")
    return _b("cut-why", side, main)


def cimpl_clc_block(a: Formula, b: Formula, d: int, g: int, t1: Proof, t2: Proof) -> Proof:
    """Image core of the classical implication left rule under lk-clc.

    a and b are the translated components (bare; the rule adds the
    marks), t1 and t2 the translated premises with context widths d
    and g. The caller moves the principal from position 0 to d.
    """
    side = _u(
        "cl-imp-r-bang",
        _xl0(_u("bang-r-bang", _b("cl-imp-l-bang", _id(b), _id(_bang(a))))),
    )
    main = _b("cl-imp-l-bang", t2, _u("bang-r-bang", t1))
    main = _contract_left_pairs(main, d, 1, "bang-c")
    main = _contract_right_pairs(main, g, "cr")
    return _b("cut-bang", side, main)


def imp_block_n(
    a: Formula, b: Formula, d: int, theta: int, gamma: int, xi: int, x: Proof, y: Proof
) -> Proof:
    """Implication left block on the route through the single-conclusion corner.

    x proves !D, !b |- G (widths d and gamma) and y proves !T |- a, ?X
    (widths theta and xi); the result proves
    !D, !T, !((neg !a) par b) |- G, ?X by cutting a derivation of
    !((neg !a) par b) |- !((neg !a) par !b) against the premise pairing.
    """
    side = _u(
        "bang-r-why",
        _u(
            "par-r",
            _u(
                "neg-r",
                _xl0(
                    _u(
                        "bang-r-why",
                        _u("bang-d", _b("par-l", _u("neg-l", _id(_bang(a))), _id(b))),
                    )
                ),
            ),
        ),
    )
    main = _u("bang-d", _b("par-l", _u("neg-l", _u("bang-r-why", y)), x))
    main = _block_swap_left(main, theta, d, 1)
    main = _block_swap_right(main, xi, gamma)
    return move_in_left(_b("cut", side, main), 0, d + theta)


def imp_block_v(
    a: Formula, b: Formula, d: int, theta: int, gamma: int, xi: int, x: Proof, y: Proof
) -> Proof:
    """Implication left block on the route through the !-marked corner.

    x proves !D, b |- ?G (widths d and gamma) and y proves T |- ?a, ?X
    (widths theta and xi); the result proves
    !D, T, !((neg a) par ?b) |- ?G, ?X by cutting a derivation of
    !((neg a) par ?b) |- (neg ?a) par ?b against the premise pairing.
    """
    side = _u(
        "par-r",
        _u(
            "neg-r",
            _u(
                "why-l-bang",
                _xl0(_u("bang-d", _b("par-l", _u("neg-l", _id(a)), _id(_why(b))))),
            ),
        ),
    )
    main = _b("par-l", _u("neg-l", y), _u("why-l-bang", x))
    out = move_in_left(_b("cut", side, main), 0, d + theta)
    out = _block_swap_left(out, theta, d, 1)
    return _block_swap_right(out, xi, gamma)


# ---------------------------------------------------------------------------
# per-edge proof translators
#
# Each translator maps one source node given the source end sequents of
# its premises (src) and the already-translated premise proofs (ts).


def _t_lk_inc(node: Proof, src: tuple[Sequent, ...], ts: tuple[Proof, ...]) -> Proof:
    f = _f_lk_inc
    match node.rule:
        case "xl" | "xr":
            return Proof(node.rule, premises=ts, at=node.at)
        case "wl":
            return _w("wl", f(node.intro), ts[0])
        case "wr":
            return _w("why-w", _why(f(node.intro)), ts[0])
        case "cl":
            return _u("cl", ts[0])
        case "cr":
            return _u("why-c", ts[0])
        case "id":
            return _u("why-d", _id(f(node.formula)))
        case "cut":
            return _b("cut-why", ts[0], ts[1])
        case "tt-l":
            return _w("wl", _why(Const("top")), ts[0])
        case "tt-r":
            return _u("why-d", _u("why-d", Proof("top-r")))
        case "ff-l":
            return Proof("ff-l")
        case "ff-r":
            return _w("why-w", _why(Const("ff")), ts[0])
        case "and-l":
            return _pick("with-l", node.i, f(node.intro), _u("why-l-why", ts[0]))
        case "and-r":
            return _u("why-d", _b("with-r-why", ts[0], ts[1]))
        case "or-l":
            return _b("or-l", ts[0], ts[1])
        case "or-r":
            intro = f(node.intro)
            picked = intro.left if node.i == 1 else intro.right
            side = _u("why-d", _pick("or-r-why", node.i, intro, _id(picked)))
            g = len(src[0].succ) - 1
            return move_in_right(_b("cut-why", ts[0], side), g, 0)
        case "c-imp-l":
            imp = f(Binary("==>", src[0].succ[0], src[1].ante[-1]))
            a, b = imp.left, imp.right  # b carries the ?-mark already
            d, g = len(src[0].ante), len(src[0].succ) - 1
            return move_in_left(cimpl_inc_block(a, b, d, g, ts[0], ts[1]), 0, d)
        case "c-imp-r":
            return _u("why-d", _u("i-imp-r-why", ts[0]))
    raise TranslationError(f"lk-inc has no clause for rule {node.rule}")


def _t_inc_ilc(node: Proof, src: tuple[Sequent, ...], ts: tuple[Proof, ...]) -> Proof:
    f = _f_inc_ilc
    match node.rule:
        case "xl" | "xr":
            return Proof(node.rule, premises=ts, at=node.at)
        case "wl":
            return _w("bang-w", _bang(f(node.intro)), ts[0])
        case "why-w":
            return _w("why-w", f(node.intro), ts[0])
        case "cl":
            return _u("bang-c", ts[0])
        case "why-c":
            return _u("why-c", ts[0])
        case "why-d":
            return _u("why-d", ts[0])
        case "id":
            return _u("bang-d", _id(f(node.formula)))
        case "cut-why":
            return _b("cut", _u("bang-r-why", ts[0]), _u("bang-why-l", ts[1]))
        case "top-l":
            return _u("bang-d", _u("top-l", ts[0]))
        case "top-r":
            return Proof("top-r")
        case "ff-l":
            return _u("bang-d", _u("bang-d", Proof("bot-l")))
        case "ff-r-why":
            return _u("bang-r-why", _u("bot-r", ts[0]))
        case "with-l":
            intro = f(node.intro)
            picked = intro.left if node.i == 1 else intro.right
            side = _u("bang-r-why", _u("bang-d", _pick("with-l", node.i, intro, _id(picked))))
            d = len(src[0].ante) - 1
            return move_in_left(_b("cut", side, ts[0]), 0, d)
        case "with-r-why":
            return _b("with-r", ts[0], ts[1])
        case "or-l":
            return _u("bang-d", _b("plus-l", ts[0], ts[1]))
        case "or-r-why":
            return _pick("plus-r", node.i, f(node.intro), _u("bang-r-why", ts[0]))
        case "i-imp-l-why":
            a = f(src[1].succ[0])
            b = f(src[0].ante[-1])
            d, gamma = len(src[0].ante) - 1, len(src[0].succ)
            theta, xi = len(src[1].ante), len(src[1].succ) - 1
            return imp_block_n(a, b, d, theta, gamma, xi, ts[0], ts[1])
        case "i-imp-r-why":
            return _u("par-r", _u("neg-r", ts[0]))
        case "why-l-why":
            return _u("bang-why-l", ts[0])
    raise TranslationError(f"inc-ilc has no clause for rule {node.rule}")


def _t_lk_clc(node: Proof, src: tuple[Sequent, ...], ts: tuple[Proof, ...]) -> Proof:
    f = _f_lk_clc
    match node.rule:
        case "xl" | "xr":
            return Proof(node.rule, premises=ts, at=node.at)
        case "wl":
            return _w("bang-w", _bang(f(node.intro)), ts[0])
        case "wr":
            return _w("wr", f(node.intro), ts[0])
        case "cl":
            return _u("bang-c", ts[0])
        case "cr":
            return _u("cr", ts[0])
        case "id":
            return _u("bang-d", _id(f(node.formula)))
        case "cut":
            return _b("cut-bang", ts[0], ts[1])
        case "tt-l":
            return _w("bang-w", _bang(Const("tt")), ts[0])
        case "tt-r":
            return Proof("tt-r")
        case "ff-l":
            return _u("bang-d", _u("bang-d", Proof("bot-l")))
        case "ff-r":
            return _w("wr", _bang(Const("bot")), ts[0])
        case "and-l":
            intro = f(node.intro)
            picked = intro.left if node.i == 1 else intro.right
            side = _u("bang-d", _pick("and-l-bang", node.i, intro, _id(picked)))
            d = len(src[0].ante) - 1
            return move_in_left(_b("cut-bang", side, ts[0]), 0, d)
        case "and-r":
            return _b("and-r", ts[0], ts[1])
        case "or-l":
            return _u("bang-d", _b("plus-l-bang", ts[0], ts[1]))
        case "or-r":
            return _pick("plus-r", node.i, f(node.intro), _u("bang-r-bang", ts[0]))
        case "c-imp-l":
            a = f(src[0].succ[0])
            b = f(src[1].ante[-1])
            d, g = len(src[0].ante), len(src[0].succ) - 1
            return move_in_left(cimpl_clc_block(a, b, d, g, ts[0], ts[1]), 0, d)
        case "c-imp-r":
            return _u("cl-imp-r-bang", ts[0])
    raise TranslationError(f"lk-clc has no clause for rule {node.rule}")


def _t_clc_ilc(node: Proof, src: tuple[Sequent, ...], ts: tuple[Proof, ...]) -> Proof:
    f = _f_clc_ilc
    match node.rule:
        case "xl" | "xr":
            return Proof(node.rule, premises=ts, at=node.at)
        case "bang-w":
            return _w("bang-w", f(node.intro), ts[0])
        case "wr":
            return _w("why-w", _why(f(node.intro)), ts[0])
        case "bang-c":
            return _u("bang-c", ts[0])
        case "cr":
            return _u("why-c", ts[0])
        case "bang-d":
            return _u("bang-d", ts[0])
        case "id":
            return _u("why-d", _id(f(node.formula)))
        case "cut-bang":
            return _b("cut", _u("bang-r-why", ts[0]), _u("bang-why-l", ts[1]))
        case "tt-l-bang":
            return _u("why-l-bang", _u("top-l", ts[0]))
        case "tt-r":
            return _u("why-d", _u("why-d", Proof("top-r")))
        case "bot-l":
            return Proof("bot-l")
        case "bot-r":
            return _u("why-d", _u("bot-r", ts[0]))
        case "and-l-bang":
            return _pick("with-l", node.i, f(node.intro), _u("why-l-bang", ts[0]))
        case "and-r":
            return _u("why-d", _b("with-r", ts[0], ts[1]))
        case "plus-l-bang":
            return _b("plus-l", ts[0], ts[1])
        case "plus-r":
            intro = f(node.intro)
            picked = intro.left if node.i == 1 else intro.right
            side = _u("why-l-bang", _u("why-d", _pick("plus-r", node.i, intro, _id(picked))))
            g = len(src[0].succ) - 1
            return move_in_right(_b("cut", ts[0], side), g, 0)
        case "cl-imp-l-bang":
            a = f(src[1].succ[0])
            b = f(src[0].ante[-1])
            d, gamma = len(src[0].ante) - 1, len(src[0].succ)
            theta, xi = len(src[1].ante), len(src[1].succ) - 1
            return imp_block_v(a, b, d, theta, gamma, xi, ts[0], ts[1])
        case "cl-imp-r-bang":
            return _u("why-d", _u("par-r", _u("neg-r", ts[0])))
        case "bang-r-bang":
            kappa = _u("bang-why-l", _u("why-d", _id(_bang(f(src[0].succ[0])))))
            g = len(src[0].succ) - 1
            return move_in_right(_b("cut", _u("bang-r-why", ts[0]), kappa), g, 0)
    raise TranslationError(f"clc-ilc has no clause for rule {node.rule}")


def _t_llj_ilc(node: Proof, src: tuple[Sequent, ...], ts: tuple[Proof, ...]) -> Proof:
    f = _f_llj_ilc
    match node.rule:
        case "u-imp-l":
            return _b("par-l", _u("neg-l", ts[0]), ts[1])
        case "u-imp-r":
            return _u("par-r", _u("neg-r", ts[0]))
        case "id":
            return _id(f(node.formula))
        case _:
            intro = f(node.intro) if node.intro is not None else None
            return Proof(
                node.rule,
                premises=ts,
                i=node.i,
                at=node.at,
                n=node.n,
                intro=intro,
            )


def _t_lj_inc(node: Proof, src: tuple[Sequent, ...], ts: tuple[Proof, ...]) -> Proof:
    if node.rule == "cut":
        raise TranslationError(
            "lj-inc embeds only cut-free proofs; eliminate cuts before translating"
        )
    return Proof(
        node.rule,
        premises=ts,
        i=node.i,
        at=node.at,
        n=node.n,
        intro=node.intro,
        formula=node.formula,
        contexts=node.contexts,
    )


_TRANSLATORS = {
    "lk-inc": _t_lk_inc,
    "inc-ilc": _t_inc_ilc,
    "lk-clc": _t_lk_clc,
    "clc-ilc": _t_clc_ilc,
    "llj-ilc": _t_llj_ilc,
    "lj-inc": _t_lj_inc,
}


def _translate_tree(p: Proof, edge: str, source: str, seq_fn=end_sequent) -> Proof:
    # seq_fn lets the normalizer translate trees containing hole
    # leaves; holes pass through untouched and keep their index.
    clause = _TRANSLATORS[edge]

    def walk(node: Proof) -> Proof:
        if node.rule == "hole":
            return Proof("hole", n=node.n)
        src = tuple(seq_fn(q, source) for q in node.premises)
        ts = tuple(walk(q) for q in node.premises)
        return clause(node, src, ts)

    return walk(p)


def translate_proof(p: Proof, edge: str, *, checked: bool = False) -> Proof:
    """Translate a proof along the named edge.

    The source proof must check in the edge's source calculus (pass
    checked=True to skip re-verification). The result checks in the
    target calculus and ends in the image of the source end sequent:
    antecedents !-marked after inc-ilc and clc-ilc, succedents ?-marked
    after lk-inc and clc-ilc, formulas mapped pointwise throughout.
    """
    if edge not in EDGES:
        raise TranslationError(f"unknown edge {edge!r}; choose one of {', '.join(EDGES)}")
    source, _ = EDGES[edge]
    if not checked:
        report = check_proof(p, source)
        if not report.ok:
            v = report.violation
            where = ".".join(str(k) for k in v.path) if v and v.path else "root"
            why = v.message if v else "unknown violation"
            raise TranslationError(f"source proof does not check in {source} (at {where}): {why}")
    if edge == "lk-ilc-n":
        return _translate_tree(_translate_tree(p, "lk-inc", "lk"), "inc-ilc", "inc")
    if edge == "lk-ilc-v":
        return _translate_tree(_translate_tree(p, "lk-clc", "lk"), "clc-ilc", "clc")
    return _translate_tree(p, edge, source)
