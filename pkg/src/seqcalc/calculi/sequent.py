"""Two-sided sequents with ordered formula lists.

Order matters on both sides: exchange is an explicit rule in every
calculus here, so a sequent is a pair of tuples, not multisets.
"""

from __future__ import annotations

from dataclasses import dataclass

from seqcalc.syntax import Formula, FormulaSyntaxError, parse_formula, print_formula


@dataclass(frozen=True)
class Sequent:
    ante: tuple[Formula, ...]
    succ: tuple[Formula, ...]

    def __str__(self) -> str:
        return print_sequent(self)


def print_sequent(s: Sequent) -> str:
    left = ", ".join(print_formula(f) for f in s.ante)
    right = ", ".join(print_formula(f) for f in s.succ)
    return f"{left} |- {right}".strip()


def _parse_side(text: str, logic: str | None) -> tuple[Formula, ...]:
    # split on top-level commas only
    parts: list[str] = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    if len(parts) == 1 and not parts[0].strip():
        return ()
    return tuple(parse_formula(p.strip(), logic) for p in parts)


def parse_sequent(text: str, logic: str | None = None) -> Sequent:
    """Parse "A, B |- C" style text; either side may be empty."""
    if "|-" not in text:
        raise FormulaSyntaxError("sequent needs a |- separator", 0)
    left, _, right = text.partition("|-")
    return Sequent(_parse_side(left, logic), _parse_side(right, logic))
