"""Proof trees and their on-disk s-expression format.

A proof file holds one tree like

    (cr (or-r :i 2 :intro ((~ X) or X)
        (xr :at 0 (or-r :i 1 :intro ((~ X) or X)
            (c-imp-r (ff-r (id X)))))))

Rule names are lower-kebab identifiers; keyword parameters start with a
colon; remaining parenthesized items are subproofs. `id` and `dist` take
their subject formula positionally, `one-r` and `zero-l` take their two
context lists positionally. Comments run from `;` to end of line.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from seqcalc.syntax import Formula, FormulaSyntaxError, parse_formula, print_formula

RULE_NAMES = (
    "xl", "xr", "wl", "wr", "cl", "cr",
    "bang-w", "why-w", "bang-c", "why-c", "bang-d", "why-d",
    "why-l-bang", "bang-r-why", "bang-why-l", "why-bang-r",
    "id", "cut", "cut-why", "cut-bang",
    "tt-l", "tt-r", "tt-l-bang", "ff-l", "ff-r", "ff-r-why",
    "top-l", "top-r", "bot-l", "bot-r", "one-r", "zero-l",
    "and-l", "and-r", "and-l-bang", "or-l", "or-r", "or-r-why",
    "c-imp-l", "c-imp-r",
    "with-l", "with-r", "with-r-why", "plus-l", "plus-r", "plus-l-bang",
    "tensor-l", "tensor-r", "par-l", "par-r",
    "neg-l", "neg-r", "l-dual-l", "l-dual-r",
    "u-imp-l", "u-imp-r",
    "cl-imp-l-bang", "cl-imp-r-bang", "bang-r-bang",
    "i-imp-l-why", "i-imp-r-why", "why-l-why",
    "dist",
    "cut-l-n", "cut-r-n", "cut-wb", "cut-l-n-wb", "cut-r-n-wb",
    "cut-l-n-why", "cut-r-n-why", "cut-l-n-bang", "cut-r-n-bang",
)

# rule ids match leniently: case folded, hyphens stripped
_CANON = {name.replace("-", ""): name for name in RULE_NAMES}

# rules whose introduced formula cannot be computed from the premises
INTRO_RULES = frozenset({
    "wl", "wr", "bang-w", "why-w",
    "and-l", "or-r", "with-l", "plus-r", "and-l-bang", "or-r-why",
})
BRANCH_RULES = frozenset({"and-l", "or-r", "with-l", "plus-r", "and-l-bang", "or-r-why"})
EXCHANGE_RULES = frozenset({"xl", "xr"})
MULTICUT_RULES = frozenset({
    "cut-l-n", "cut-r-n", "cut-l-n-wb", "cut-r-n-wb",
    "cut-l-n-why", "cut-r-n-why", "cut-l-n-bang", "cut-r-n-bang",
})


class ProofSyntaxError(Exception):
    pass


@dataclass(frozen=True)
class Proof:
    rule: str
    premises: tuple[Proof, ...] = ()
    i: int | None = None
    at: int | None = None
    n: int | None = None
    intro: Formula | None = None
    formula: Formula | None = None
    contexts: tuple[tuple[Formula, ...], tuple[Formula, ...]] | None = None
    split: object = field(default=None, compare=False)

    def with_premises(self, *premises: Proof) -> Proof:
        return replace(self, premises=tuple(premises))


def proof_size(p: Proof) -> int:
    return 1 + sum(proof_size(q) for q in p.premises)


def canonical_rule(name: str) -> str:
    key = name.lower().replace("-", "")
    if key not in _CANON:
        raise ProofSyntaxError(f"unknown rule name {name!r}")
    return _CANON[key]


# ---------------------------------------------------------------------------
# s-expression reader

_Atom = str
_Sexp = "str | list"


def _strip_comments(text: str) -> str:
    lines = []
    for line in text.splitlines():
        cut = line.find(";")
        lines.append(line if cut < 0 else line[:cut])
    return "\n".join(lines)


def _read_sexps(text: str) -> list:
    tokens: list[str] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append(ch)
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append(text[i:j])
            i = j
    stack: list[list] = [[]]
    for tok in tokens:
        if tok == "(":
            new: list = []
            stack[-1].append(new)
            stack.append(new)
        elif tok == ")":
            if len(stack) == 1:
                raise ProofSyntaxError("unbalanced )")
            stack.pop()
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise ProofSyntaxError("unbalanced (")
    return stack[0]


def _sexp_text(e) -> str:
    if isinstance(e, str):
        return e
    return "(" + " ".join(_sexp_text(x) for x in e) + ")"


def _formula_from_sexp(e, logic: str | None) -> Formula:
    text = _sexp_text(e)
    try:
        return parse_formula(text, logic)
    except FormulaSyntaxError:
        # a parenthesized prefix group like (neg X) is not itself a binary
        # form; retry the bare body
        if text.startswith("(") and text.endswith(")"):
            return parse_formula(text[1:-1], logic)
        raise


def _context_from_sexp(e, logic: str | None) -> tuple[Formula, ...]:
    if not isinstance(e, list):
        raise ProofSyntaxError(f"expected a context list, found {e!r}")
    out: list[Formula] = []
    buffer: list = []
    # elements are formula s-exps; consecutive atoms that fail to parse on
    # their own never occur because prefix ops attach to their atom token
    for item in e:
        buffer.append(item)
        try:
            out.append(_formula_from_sexp(buffer[0] if len(buffer) == 1 else buffer, logic))
            buffer = []
        except FormulaSyntaxError:
            continue
    if buffer:
        raise ProofSyntaxError(f"cannot parse context element {_sexp_text(buffer)!r}")
    return tuple(out)


def _interpret(e, logic: str | None) -> Proof:
    if not isinstance(e, list) or not e or not isinstance(e[0], str):
        raise ProofSyntaxError(f"expected a proof node, found {_sexp_text(e)!r}")
    rule = canonical_rule(e[0])
    rest = e[1:]

    if rule in ("id", "dist"):
        if not rest:
            raise ProofSyntaxError(f"{rule} needs a formula")
        f = _formula_from_sexp(rest[0] if len(rest) == 1 else rest, logic)
        return Proof(rule, formula=f)

    if rule in ("one-r", "zero-l"):
        if len(rest) != 2:
            raise ProofSyntaxError(f"{rule} needs two context lists")
        left = _context_from_sexp(rest[0], logic)
        right = _context_from_sexp(rest[1], logic)
        return Proof(rule, contexts=(left, right))

    kwargs: dict = {}
    premises: list[Proof] = []
    idx = 0
    while idx < len(rest):
        item = rest[idx]
        if isinstance(item, str) and item.startswith(":"):
            key = item[1:]
            idx += 1
            if idx >= len(rest):
                raise ProofSyntaxError(f"missing value for :{key}")
            value = rest[idx]
            idx += 1
            if key in ("i", "at", "n"):
                try:
                    kwargs[key] = int(value)
                except (TypeError, ValueError):
                    raise ProofSyntaxError(f":{key} needs an integer, found {_sexp_text(value)!r}")
            elif key == "intro":
                kwargs["intro"] = _formula_from_sexp(value, logic)
            elif key == "split":
                kwargs["split"] = _sexp_text(value)
            else:
                raise ProofSyntaxError(f"unknown parameter :{key}")
        else:
            premises.append(_interpret(item, logic))
            idx += 1
    return Proof(rule, premises=tuple(premises), **kwargs)


def parse_proof(text: str, logic: str | None = None) -> Proof:
    """Parse one proof tree from text (comments allowed)."""
    sexps = _read_sexps(_strip_comments(text))
    if len(sexps) != 1:
        raise ProofSyntaxError(f"expected exactly one proof, found {len(sexps)}")
    return _interpret(sexps[0], logic)


def parse_proof_file(path: str, logic: str | None = None) -> Proof:
    with open(path, encoding="utf-8") as fh:
        return parse_proof(fh.read(), logic)


# ---------------------------------------------------------------------------
# printing

def _context_text(ctx: tuple[Formula, ...]) -> str:
    parts = []
    for f in ctx:
        text = print_formula(f)
        if " " in text and not text.startswith("("):
            text = f"({text})"
        parts.append(text)
    return "(" + " ".join(parts) + ")"


def print_proof(p: Proof, indent: int = 0) -> str:
    pad = "  " * indent
    if p.rule in ("id", "dist"):
        return f"{pad}({p.rule} {print_formula(p.formula)})"
    if p.rule in ("one-r", "zero-l"):
        left, right = p.contexts
        return f"{pad}({p.rule} {_context_text(left)} {_context_text(right)})"
    head = p.rule
    if p.i is not None:
        head += f" :i {p.i}"
    if p.at is not None:
        head += f" :at {p.at}"
    if p.n is not None:
        head += f" :n {p.n}"
    if p.intro is not None:
        text = print_formula(p.intro)
        if " " in text and not text.startswith("("):
            text = f"({text})"
        head += f" :intro {text}"
    if not p.premises:
        return f"{pad}({head})"
    subs = "\n".join(print_proof(q, indent + 1) for q in p.premises)
    return f"{pad}({head}\n{subs})"
