"""Explicit exchange chains.

Exchange is an adjacent transposition, so any reordering of a sequent
side is a chain of xl or xr applications. These helpers wrap a proof in
such chains; they never inspect formulas, only positions, so callers
stay in control of which occurrence goes where.
"""

from __future__ import annotations

from seqcalc.calculi.proof import Proof


def _swap_chain(p: Proof, rule: str, swaps: list[int]) -> Proof:
    for at in swaps:
        p = Proof(rule, premises=(p,), at=at)
    return p


def move_in_left(p: Proof, frm: int, to: int) -> Proof:
    """Move the antecedent item at frm to position to, shifting the rest."""
    swaps: list[int] = []
    if to < frm:
        swaps = list(range(frm - 1, to - 1, -1))
    elif to > frm:
        swaps = list(range(frm, to))
    return _swap_chain(p, "xl", swaps)


def move_in_right(p: Proof, frm: int, to: int) -> Proof:
    """Move the succedent item at frm to position to, shifting the rest."""
    swaps: list[int] = []
    if to < frm:
        swaps = list(range(frm - 1, to - 1, -1))
    elif to > frm:
        swaps = list(range(frm, to))
    return _swap_chain(p, "xr", swaps)


def _selection_swaps(perm: list[int]) -> list[int]:
    # bubble each wanted item into place; perm[j] names the current index
    # (in the premise order) of the item that must land at position j
    arr = list(range(len(perm)))
    swaps: list[int] = []
    for j, want in enumerate(perm):
        k = arr.index(want)
        while k > j:
            arr[k - 1], arr[k] = arr[k], arr[k - 1]
            swaps.append(k - 1)
            k -= 1
    return swaps


def permute_left(p: Proof, perm: list[int]) -> Proof:
    """Wrap p in xl nodes so antecedent position j holds old item perm[j]."""
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"not a permutation: {perm}")
    return _swap_chain(p, "xl", _selection_swaps(perm))


def permute_right(p: Proof, perm: list[int]) -> Proof:
    """Wrap p in xr nodes so succedent position j holds old item perm[j]."""
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"not a permutation: {perm}")
    return _swap_chain(p, "xr", _selection_swaps(perm))
