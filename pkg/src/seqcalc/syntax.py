"""Formula syntax shared by every calculus in the family.

Formulas are immutable trees over propositional variables. One node type
covers all seven languages; `in_language` decides membership per logic.
Surface syntax is the fully parenthesized ASCII grammar described in the
README (`(F tensor G)`, `!F`, `neg F`, `X^`, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

UNARY_OPS = ("!", "?", "neg")
BINARY_OPS = ("tensor", "par", "with", "plus", "and", "or", "=>", "==>", "-o", "->>")
CONST_NAMES = ("top", "bot", "1", "0", "tt", "ff")

# Logic identifiers. The "-e" logics extend their base language with
# exponential connectives; "cll-neg" is the negative fragment dual to "il-e".
LOGICS = ("cl", "il", "cll", "ill", "ill-e", "il-e", "cll-neg")


class FormulaError(Exception):
    """Base class for formula-level failures."""


class FormulaSyntaxError(FormulaError):
    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class LanguageError(FormulaError):
    def __init__(self, node: str, logic: str) -> None:
        super().__init__(f"connective {node!r} is not in the {logic} language")
        self.node = node
        self.logic = logic


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class DualVar:
    # X^ : dualized atom, admissible only in cll
    name: str


@dataclass(frozen=True)
class Const:
    name: str  # one of CONST_NAMES


@dataclass(frozen=True)
class Unary:
    op: str  # one of UNARY_OPS
    sub: Formula


@dataclass(frozen=True)
class Binary:
    op: str  # one of BINARY_OPS
    left: Formula
    right: Formula


Formula = Var | DualVar | Const | Unary | Binary


# ---------------------------------------------------------------------------
# language membership

_LANG_TABLE: dict[str, tuple[frozenset[str], frozenset[str], frozenset[str], bool]] = {
    # logic: (constants, unary ops, binary ops, dual variables allowed)
    "cl": (frozenset({"tt", "ff"}), frozenset(), frozenset({"and", "or", "==>"}), False),
    "il": (frozenset({"top", "ff"}), frozenset(), frozenset({"with", "or", "=>"}), False),
    "cll": (
        frozenset({"top", "bot", "1", "0"}),
        frozenset({"!", "?"}),
        frozenset({"tensor", "par", "with", "plus"}),
        True,
    ),
    "ill": (frozenset({"top"}), frozenset({"!"}), frozenset({"tensor", "with", "plus", "-o"}), False),
    "ill-e": (
        frozenset({"top", "bot", "1", "0"}),
        frozenset({"!", "?", "neg"}),
        frozenset({"tensor", "par", "with", "plus"}),
        False,
    ),
    "il-e": (frozenset({"top", "ff"}), frozenset({"?"}), frozenset({"with", "or", "=>"}), False),
    "cll-neg": (frozenset({"tt", "bot"}), frozenset({"!"}), frozenset({"and", "plus", "->>"}), False),
}


def in_language(f: Formula, logic: str) -> bool:
    """True iff every node of f is admissible in the logic's grammar."""
    consts, unaries, binaries, duals = _LANG_TABLE[logic]
    match f:
        case Var():
            return True
        case DualVar():
            return duals
        case Const(name):
            return name in consts
        case Unary(op, sub):
            return op in unaries and in_language(sub, logic)
        case Binary(op, left, right):
            return op in binaries and in_language(left, logic) and in_language(right, logic)
    raise TypeError(f"not a formula: {f!r}")


def _first_offender(f: Formula, logic: str) -> str | None:
    consts, unaries, binaries, duals = _LANG_TABLE[logic]
    match f:
        case Var():
            return None
        case DualVar(name):
            return None if duals else f"{name}^"
        case Const(name):
            return None if name in consts else name
        case Unary(op, sub):
            if op not in unaries:
                return op
            return _first_offender(sub, logic)
        case Binary(op, left, right):
            if op not in binaries:
                return op
            return _first_offender(left, logic) or _first_offender(right, logic)
    return None


# ---------------------------------------------------------------------------
# measures and duality

def rank(f: Formula) -> int:
    """Connective count weighted for the cut-elimination measure.

    Atoms and constants are 0; each unary or binary connective adds 1.
    """
    match f:
        case Var() | DualVar() | Const():
            return 0
        case Unary(_, sub):
            return rank(sub) + 1
        case Binary(_, left, right):
            return rank(left) + rank(right) + 1
    raise TypeError(f"not a formula: {f!r}")


_DUAL_CONST = {"top": "bot", "bot": "top", "1": "0", "0": "1"}
_DUAL_BIN = {"tensor": "par", "par": "tensor", "with": "plus", "plus": "with"}
_DUAL_UN = {"!": "?", "?": "!"}


def linear_dual(f: Formula) -> Formula:
    """The involutive dual of a cll formula (atoms swap with dual atoms)."""
    if not in_language(f, "cll"):
        raise LanguageError(_first_offender(f, "cll") or "?", "cll")
    return _dual(f)


def _dual(f: Formula) -> Formula:
    match f:
        case Var(name):
            return DualVar(name)
        case DualVar(name):
            return Var(name)
        case Const(name):
            return Const(_DUAL_CONST[name])
        case Unary(op, sub):
            return Unary(_DUAL_UN[op], _dual(sub))
        case Binary(op, left, right):
            return Binary(_DUAL_BIN[op], _dual(left), _dual(right))
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformulas of f, f itself included."""
    yield f
    match f:
        case Unary(_, sub):
            yield from subformulas(sub)
        case Binary(_, left, right):
            yield from subformulas(left)
            yield from subformulas(right)


# ---------------------------------------------------------------------------
# printing

def print_formula(f: Formula) -> str:
    match f:
        case Var(name):
            return name
        case DualVar(name):
            return f"{name}^"
        case Const(name):
            return name
        case Unary("neg", sub):
            return f"neg {print_formula(sub)}"
        case Unary(op, sub):
            return f"{op}{print_formula(sub)}"
        case Binary(op, left, right):
            return f"({print_formula(left)} {op} {print_formula(right)})"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# parsing

_WORD_RE = __import__("re").compile(r"[A-Za-z][A-Za-z0-9_]*")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens: list[tuple[str, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()!?^~":
            tokens.append((ch, i))
            i += 1
            continue
        if ch in "10":
            tokens.append((ch, i))
            i += 1
            continue
        if text.startswith("==>", i):
            tokens.append(("==>", i))
            i += 3
            continue
        if text.startswith("=>", i):
            tokens.append(("=>", i))
            i += 2
            continue
        if text.startswith("->>", i):
            tokens.append(("->>", i))
            i += 3
            continue
        if text.startswith("-o", i):
            tokens.append(("-o", i))
            i += 2
            continue
        m = _WORD_RE.match(text, i)
        if m:
            tokens.append((m.group(), i))
            i = m.end()
            continue
        raise FormulaSyntaxError(f"unexpected character {ch!r}", i)
    return tokens


# word tokens that can never be variable names
_RESERVED_WORDS = frozenset({"tensor", "par", "with", "plus", "and", "or", "star", "lstar", "neg"})


class _Parser:
    def __init__(self, tokens: list[tuple[str, int]], logic: str | None) -> None:
        self.tokens = tokens
        self.pos = 0
        self.logic = logic

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def here(self) -> int:
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else -1

    def take(self) -> str:
        if self.pos >= len(self.tokens):
            raise FormulaSyntaxError("unexpected end of input", -1)
        tok = self.tokens[self.pos][0]
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.peek()
        if got != tok:
            raise FormulaSyntaxError(f"expected {tok!r}, found {got!r}", self.here())
        self.take()

    def formula(self) -> Formula:
        tok = self.peek()
        if tok in ("!", "?"):
            self.take()
            return Unary(tok, self.formula())
        if tok == "neg":
            self.take()
            return Unary("neg", self.formula())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", -1)
        if tok == "(":
            return self.parenthesized()
        if tok in ("1", "0") or tok in ("top", "bot", "tt", "ff"):
            self.take()
            return Const(tok)
        if tok in _RESERVED_WORDS:
            raise FormulaSyntaxError(f"{tok!r} is a connective, not a variable", self.here())
        if _WORD_RE.fullmatch(tok):
            self.take()
            if self.peek() == "^":
                self.take()
                return DualVar(tok)
            return Var(tok)
        raise FormulaSyntaxError(f"unexpected token {tok!r}", self.here())

    def parenthesized(self) -> Formula:
        self.expect("(")
        if self.peek() == "~":
            self.take()
            body = self.formula()
            self.expect(")")
            return Binary("==>", body, Const("ff"))
        left = self.formula()
        tok = self.peek()
        if tok == "star":
            self.take()
            self.expect(")")
            return Binary("=>", left, Const("ff"))
        if tok == "lstar":
            self.take()
            self.expect(")")
            return Binary("->>", left, Const("bot"))
        if tok not in BINARY_OPS:
            raise FormulaSyntaxError(f"expected a binary connective, found {tok!r}", self.here())
        op = self.take()
        right = self.formula()
        self.expect(")")
        if op == "-o" and self.logic not in (None, "ill"):
            # up-linear implication is primitive only in ill; elsewhere it
            # abbreviates (neg F par G)
            return Binary("par", Unary("neg", left), right)
        return Binary(op, left, right)


def parse_formula(text: str, logic: str | None = None) -> Formula:
    """Parse ASCII text into a formula.

    With a logic given, sugar expands for that language and membership is
    checked; with None the permissive union grammar is used (`-o` stays
    primitive) and no language check happens.
    """
    if logic is not None and logic not in LOGICS:
        raise ValueError(f"unknown logic {logic!r}")
    parser = _Parser(_tokenize(text), logic)
    f = parser.formula()
    if parser.peek() is not None:
        raise FormulaSyntaxError(f"trailing input {parser.peek()!r}", parser.here())
    if logic is not None:
        bad = _first_offender(f, logic)
        if bad is not None:
            raise LanguageError(bad, logic)
    return f
