"""Structural-rule vocabulary shared by the cut elimination engine.

The three exponential disciplines use different weakening and
contraction rules, and differ in which side of a sequent admits
unrestricted copies.  Everything the engine needs to know about a
calculus beyond its rule table is collected here.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Family:
    """Structural profile of one exponential discipline.

    ``*_any`` flags say whether the named rule accepts arbitrary
    formulas; when False the rule insists on the marked form (! on the
    antecedent, ? on the succedent) and telescopes must check first.
    ``promo_bang_r`` / ``promo_why_l`` name the promotion-style rules
    whose principal matches a plain cut formula of shape !B / ?B, if
    the calculus has one.
    """

    name: str
    ante_w: str
    succ_w: str
    ante_c: str
    succ_c: str
    ante_w_any: bool
    succ_w_any: bool
    ante_c_any: bool
    succ_c_any: bool
    promo_bang_r: str | None
    promo_why_l: str | None


ILC_FAMILY = Family(
    name="ilc",
    ante_w="bang-w", succ_w="why-w", ante_c="bang-c", succ_c="why-c",
    ante_w_any=False, succ_w_any=False, ante_c_any=False, succ_c_any=False,
    promo_bang_r="bang-r-why", promo_why_l="why-l-bang",
)

INC_FAMILY = Family(
    name="inc",
    ante_w="wl", succ_w="why-w", ante_c="cl", succ_c="why-c",
    ante_w_any=True, succ_w_any=False, ante_c_any=True, succ_c_any=False,
    promo_bang_r=None, promo_why_l="why-l-why",
)

CLC_FAMILY = Family(
    name="clc",
    ante_w="bang-w", succ_w="wr", ante_c="bang-c", succ_c="cr",
    ante_w_any=False, succ_w_any=True, ante_c_any=False, succ_c_any=True,
    promo_bang_r="bang-r-bang", promo_why_l=None,
)

_FAMILIES: dict[str, Family] = {
    "ilc": ILC_FAMILY,
    "ilc-delta": ILC_FAMILY,
    "ilc-rho": ILC_FAMILY,
    "inc": INC_FAMILY,
    "inc-rho": INC_FAMILY,
    "clc": CLC_FAMILY,
    "clc-rho": CLC_FAMILY,
}


def family_of(calculus: str) -> Family:
    fam = _FAMILIES.get(calculus)
    if fam is None:
        raise ValueError(f"cut elimination does not cover {calculus!r}")
    return fam


SUPPORTED_CALCULI = frozenset(_FAMILIES)
